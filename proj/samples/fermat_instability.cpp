// Walks through the instability of Syz(X^2,Y^2,Z^2) on the Fermat curve of
// degree 11 in characteristic 5.
#include <iostream>

#include "frobsyz/frobsyz.hpp"

int main() {
    using namespace frobsyz;

    const ParameterChoice choice = find_parameters(5, 2, 8);
    std::cout << "p=5 a=2 d0=8 -> e=" << choice.e << " d=" << choice.d << " k=" << choice.k << '\n';

    const DestabCertificate cert = certify_destabilization(5, 2, choice.d);
    std::cout << "section: (" << cert.section[0] << ", " << cert.section[1] << ", " << cert.section[2] << ")\n";
    std::cout << "bundle degree " << cert.degree << ", slope " << cert.slope << '\n';

    const HNData hn = hn_data(cert);
    std::cout << "HN slopes " << hn.sub_slope << " > " << hn.quotient_slope << ", normalized gap "
              << hn.normalized_gap << '\n';

    auto early = search_destabilization(5, choice.d, 2, 1);
    std::cout << "search up to e=1: " << (early ? "certificate" : "nothing found (inconclusive)") << '\n';

    const TCReport tc = tc_counterexample(5, 1, 2);
    std::cout << "tight closure: " << (tc.verdict == TCVerdict::certified ? "certified" : "inconclusive") << '\n';
    return 0;
}
