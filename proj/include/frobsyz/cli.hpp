#ifndef FROBSYZ_CLI_HPP
#define FROBSYZ_CLI_HPP

// Subcommand bodies for the frobsyz tool. Each returns the process exit code:
// 0 success/certified, 1 usage or malformed input, 2 inapplicable/inconclusive
// or a failed verification.

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "scan.hpp"

namespace frobsyz::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInapplicable = 2 };

namespace detail {

inline bool check_prime(std::uint64_t p, std::ostream& err) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
        err << p << " is not prime\n";
        return false;
    }
    return true;
}

inline int inapplicable(const std::string& reason, std::ostream& out, std::ostream& err) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "inapplicable";
    j["reason"] = reason;
    out << j.dump(2) << '\n';
    err << reason << '\n';
    return kInapplicable;
}

}  // namespace detail

inline int cmd_certify(std::uint64_t p, std::uint64_t a, std::optional<std::uint64_t> d,
                       std::optional<std::uint64_t> d0, std::ostream& out, std::ostream& err) {
    if (!detail::check_prime(p, err)) return kUsage;
    if (d.has_value() == d0.has_value()) {
        err << "exactly one of --d and --d0 is required\n";
        return kUsage;
    }
    if (a == 0 || (d && *d == 0) || (d0 && *d0 == 0)) {
        err << "a, d and d0 must be positive\n";
        return kUsage;
    }
    try {
        std::uint64_t degree = d.value_or(0);
        if (d0) degree = find_parameters(p, a, *d0).d;
        Json j = to_json(certify_destabilization(p, a, degree));
        if (d0) j["d0"] = *d0;
        out << j.dump(2) << '\n';
        return kOk;
    } catch (const InapplicableError& ex) {
        return detail::inapplicable(ex.what(), out, err);
    } catch (const OverflowError& ex) {
        return detail::inapplicable(ex.what(), out, err);
    }
}

inline int cmd_search(std::uint64_t p, std::uint64_t d, std::uint64_t a, std::uint64_t e_max, std::ostream& out,
                      std::ostream& err) {
    if (!detail::check_prime(p, err)) return kUsage;
    if (a == 0) {
        err << "a must be positive\n";
        return kUsage;
    }
    try {
        auto cert = search_destabilization(p, d, a, e_max);
        if (cert) {
            out << to_json(*cert).dump(2) << '\n';
            return kOk;
        }
        Json j;
        j["schema"] = kSchemaVersion;
        j["kind"] = "search_result";
        j["p"] = p;
        j["d"] = d;
        j["a"] = a;
        j["e_max"] = e_max;
        j["smooth"] = true;
        j["inconclusive"] = true;
        out << j.dump(2) << '\n';
        return kInapplicable;
    } catch (const InapplicableError& ex) {
        return detail::inapplicable(ex.what(), out, err);
    } catch (const OverflowError& ex) {
        return detail::inapplicable(ex.what(), out, err);
    }
}

/// Writes JSONL to out_path (or `jsonl` when given) and a per-d summary table to `summary`.
inline int cmd_scan(const ScanOptions& opt, const std::string& out_path, std::ostream& summary, std::ostream& err) {
    for (auto p : opt.primes)
        if (!detail::check_prime(p, err)) return kUsage;
    if (opt.a == 0 || opt.d_lo == 0 || opt.d_lo > opt.d_hi) {
        err << "need a >= 1 and 1 <= d_lo <= d_hi\n";
        return kUsage;
    }
    std::ofstream file(out_path, std::ios::out | std::ios::trunc);
    if (!file) {
        err << "cannot open " << out_path << " for writing\n";
        return kUsage;
    }
    const auto counts = run_scan(opt, file);
    if (!file) {
        err << "write to " << out_path << " failed\n";
        return kUsage;
    }
    summary << std::setw(6) << "d" << std::setw(11) << "certified" << std::setw(14) << "inconclusive" << std::setw(9)
            << "skipped" << '\n';
    for (const auto& [d, c] : counts)
        summary << std::setw(6) << d << std::setw(11) << c.certified << std::setw(14) << (c.inconclusive + c.errors)
                << std::setw(9) << c.skipped << '\n';
    return kOk;
}

/// Accepts one JSON document or JSONL (one record per non-empty line).
inline int cmd_verify(const std::string& text, std::ostream& out, std::ostream& err) {
    std::vector<Json> docs;
    try {
        docs.push_back(Json::parse(text));
    } catch (const nlohmann::json::parse_error&) {
        docs.clear();
        std::istringstream in(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                docs.push_back(Json::parse(line));
            } catch (const nlohmann::json::parse_error& ex) {
                err << "malformed JSON on line " << lineno << ": " << ex.what() << '\n';
                return kUsage;
            }
        }
    }
    if (docs.empty()) {
        err << "no JSON input\n";
        return kUsage;
    }
    int code = kOk;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        try {
            VerifyResult r = verify_record(docs[i]);
            if (!r.ok) {
                out << "record " << i + 1 << ": FAIL " << r.failure << '\n';
                code = kInapplicable;
            }
        } catch (const MalformedInput& ex) {
            err << "record " << i + 1 << ": malformed: " << ex.what() << '\n';
            return kUsage;
        }
    }
    if (code == kOk) out << "OK " << docs.size() << (docs.size() == 1 ? " record" : " records") << " verified\n";
    return code;
}

inline int cmd_deviation(std::uint64_t p, std::uint64_t a, std::uint64_t e, std::ostream& out, std::ostream& err) {
    if (!detail::check_prime(p, err)) return kUsage;
    try {
        out << to_json(p, a, e, deviation_lower_bound(p, a, e)).dump(2) << '\n';
        return kOk;
    } catch (const Error& ex) {
        return detail::inapplicable(ex.what(), out, err);
    } catch (const std::invalid_argument& ex) {
        err << ex.what() << '\n';
        return kUsage;
    }
}

inline int cmd_tc(std::uint64_t p, std::uint64_t b, std::uint64_t e, std::ostream& out, std::ostream& err) {
    if (!detail::check_prime(p, err)) return kUsage;
    try {
        const TCReport rep = tc_counterexample(p, b, e);
        out << to_json(rep).dump(2) << '\n';
        return rep.verdict == TCVerdict::certified ? kOk : kInapplicable;
    } catch (const Error& ex) {
        return detail::inapplicable(ex.what(), out, err);
    }
}

/// Dimensions of module syzygies of Syz(X^aq, Y^aq, Z^aq) for twists n_lo..n_hi.
inline int cmd_sections(std::uint64_t p, std::uint64_t d, std::uint64_t a, std::uint64_t e, std::int64_t n_lo,
                        std::int64_t n_hi, std::ostream& out, std::ostream& err) {
    if (!detail::check_prime(p, err)) return kUsage;
    if (a == 0 || n_lo > n_hi) {
        err << "need a >= 1 and n_lo <= n_hi\n";
        return kUsage;
    }
    try {
        const SyzygySpec spec = frobenius_pullback(SyzygySpec::uniform(PrimeField(p), d, a), e);
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
            Json j;
            j["schema"] = kSchemaVersion;
            j["kind"] = "section_dimension";
            j["p"] = p;
            j["d"] = d;
            j["a"] = a;
            j["e"] = e;
            j["twist"] = n;
            j["degree"] = degree_and_slope(SyzygySpec(spec.field, d, spec.exponents, n)).degree;
            j["dimension"] = section_dimension(spec, n);
            j["smooth"] = spec.ring().smooth();
            j["lower_bound"] = spec.on_curve();
            out << j.dump() << '\n';
        }
        return kOk;
    } catch (const Error& ex) {
        return detail::inapplicable(ex.what(), out, err);
    }
}

}  // namespace frobsyz::cli

#endif  // FROBSYZ_CLI_HPP
