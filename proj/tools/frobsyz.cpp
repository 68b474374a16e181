#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "frobsyz/cli.hpp"

namespace {

// "5..12" or "7"
bool parse_range(const std::string& s, std::uint64_t& lo, std::uint64_t& hi) {
    try {
        auto dots = s.find("..");
        std::size_t used = 0;
        if (dots == std::string::npos) {
            lo = hi = std::stoull(s, &used);
            return used == s.size();
        }
        lo = std::stoull(s.substr(0, dots), &used);
        if (used != dots) return false;
        const std::string rest = s.substr(dots + 2);
        hi = std::stoull(rest, &used);
        return used == rest.size() && lo <= hi;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace frobsyz;
    CLI::App app{"Certificates of non-strong-semistability for Syz(X^a,Y^a,Z^a) on Fermat curves"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::uint64_t p = 0, a = 0, b = 0, e = 0, e_max = 0, d_val = 0, d0_val = 0;
    std::int64_t n_lo = 0, n_hi = 0;

    auto* certify = app.add_subcommand("certify", "Explicit destabilizing section (X^k,Y^k,Z^k) at twist dp");
    certify->add_option("--p", p, "prime characteristic")->required();
    certify->add_option("--a", a, "generator exponent")->required();
    auto* opt_d = certify->add_option("--d", d_val, "curve degree");
    auto* opt_d0 = certify->add_option("--d0", d0_val, "lower bound for the curve degree");

    std::uint64_t search_d = 0;
    auto* search = app.add_subcommand("search", "Bounded search for a destabilizing section up to level e_max");
    search->add_option("--p", p)->required();
    search->add_option("--d", search_d, "curve degree (0 = projective plane)")->required();
    search->add_option("--a", a)->required();
    search->add_option("--e-max", e_max)->required();

    std::string p_list, d_range, out_path;
    unsigned threads = 0;
    bool timing = false;
    auto* scan = app.add_subcommand("scan", "Grid of bounded searches written as JSONL");
    scan->add_option("--p", p_list, "comma-separated primes")->required();
    scan->add_option("--d", d_range, "degree range lo..hi")->required();
    scan->add_option("--a", a)->required();
    scan->add_option("--e-max", e_max)->required();
    scan->add_option("--out", out_path, "JSONL output path")->required();
    scan->add_option("--threads", threads, "worker threads (default: FROBSYZ_THREADS or 1)");
    scan->add_flag("--timing", timing, "record elapsed_ms per grid point (output no longer reproducible)");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "Re-check a certificate or scan file without searching");
    verify->add_option("file", verify_path, "JSON or JSONL file, '-' for stdin")->required();

    auto* deviation = app.add_subcommand("deviation", "Normalized HN gap and its lower bound for d = a p^(e-1) + 1");
    deviation->add_option("--p", p)->required();
    deviation->add_option("--a", a)->required();
    deviation->add_option("--e", e)->required();

    auto* tc = app.add_subcommand("tc", "Tight-closure non-membership of (XYZ)^b in (X^2b,Y^2b,Z^2b)^*");
    tc->add_option("--p", p)->required();
    tc->add_option("--b", b)->required();
    tc->add_option("--e", e)->required();

    std::string n_range;
    auto* sections = app.add_subcommand("sections", "Section dimensions of Syz(X^aq,Y^aq,Z^aq)(n) (lower bounds on a curve)");
    sections->add_option("--p", p)->required();
    sections->add_option("--d", search_d)->required();
    sections->add_option("--a", a)->required();
    sections->add_option("--e", e)->default_val(0);
    sections->add_option("--n", n_range, "twist range lo..hi")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        return app.exit(ex) == 0 ? 0 : cli::kUsage;
    }

    try {
        if (*certify) {
            std::optional<std::uint64_t> d, d0;
            if (opt_d->count()) d = d_val;
            if (opt_d0->count()) d0 = d0_val;
            return cli::cmd_certify(p, a, d, d0, std::cout, std::cerr);
        }
        if (*search) return cli::cmd_search(p, search_d, a, e_max, std::cout, std::cerr);
        if (*scan) {
            ScanOptions opt;
            std::stringstream ps(p_list);
            for (std::string tok; std::getline(ps, tok, ',');) opt.primes.push_back(std::stoull(tok));
            if (!parse_range(d_range, opt.d_lo, opt.d_hi)) {
                std::cerr << "bad --d range '" << d_range << "'\n";
                return cli::kUsage;
            }
            opt.a = a;
            opt.e_max = e_max;
            opt.threads = threads ? threads : threads_from_env();
            opt.timing = timing;
            return cli::cmd_scan(opt, out_path, std::cout, std::cerr);
        }
        if (*verify) {
            std::string text;
            if (verify_path == "-") {
                text.assign(std::istreambuf_iterator<char>(std::cin), {});
            } else {
                std::ifstream in(verify_path);
                if (!in) {
                    std::cerr << "cannot read " << verify_path << '\n';
                    return cli::kUsage;
                }
                text.assign(std::istreambuf_iterator<char>(in), {});
            }
            return cli::cmd_verify(text, std::cout, std::cerr);
        }
        if (*deviation) return cli::cmd_deviation(p, a, e, std::cout, std::cerr);
        if (*tc) return cli::cmd_tc(p, b, e, std::cout, std::cerr);
        if (*sections) {
            std::uint64_t lo = 0, hi = 0;
            if (!parse_range(n_range, lo, hi)) {
                std::cerr << "bad --n range '" << n_range << "'\n";
                return cli::kUsage;
            }
            n_lo = static_cast<std::int64_t>(lo);
            n_hi = static_cast<std::int64_t>(hi);
            return cli::cmd_sections(p, search_d, a, e, n_lo, n_hi, std::cout, std::cerr);
        }
    } catch (const std::invalid_argument& ex) {
        std::cerr << ex.what() << '\n';
        return cli::kUsage;
    } catch (const std::out_of_range& ex) {
        std::cerr << "value out of range: " << ex.what() << '\n';
        return cli::kUsage;
    }
    return cli::kUsage;
}
