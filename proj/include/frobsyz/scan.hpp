#ifndef FROBSYZ_SCAN_HPP
#define FROBSYZ_SCAN_HPP

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "certificate_io.hpp"

namespace frobsyz {

struct ScanOptions {
    std::vector<std::uint64_t> primes;
    std::uint64_t d_lo = 1, d_hi = 1;
    std::uint64_t a = 2;
    std::uint64_t e_max = 1;
    unsigned threads = 1;
    bool timing = false;  // adds elapsed_ms, which makes output run-dependent
};

struct ScanCounts {
    std::size_t certified = 0, inconclusive = 0, skipped = 0, errors = 0;
};

/// Number of scan workers: FROBSYZ_THREADS if set and positive, else 1.
inline unsigned threads_from_env() {
    if (const char* v = std::getenv("FROBSYZ_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(v, &end, 10);
        if (end != v && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return 1;
}

/// One self-contained JSONL record for the grid point (p, d).
inline Json scan_record(std::size_t index, std::uint64_t p, std::uint64_t d, std::uint64_t a, std::uint64_t e_max,
                        bool timing) {
    Json r;
    r["schema"] = kSchemaVersion;
    r["kind"] = "scan_record";
    r["index"] = index;
    r["tool_version"] = kToolVersion;
    r["p"] = p;
    r["d"] = d;
    r["a"] = a;
    r["e_max"] = e_max;
    const auto start = std::chrono::steady_clock::now();
    if (d % p == 0) {
        r["outcome"] = "skipped";
        r["smooth"] = false;
        r["inconclusive"] = true;
    } else {
        try {
            auto cert = search_destabilization(p, d, a, e_max);
            if (cert) {
                r["outcome"] = "certificate";
                const Json body = to_json(*cert);
                for (const auto& [key, value] : body.items())
                    if (key != "schema" && key != "kind") r[key] = value;
            } else {
                r["outcome"] = "none";
                r["smooth"] = true;
                r["inconclusive"] = true;
            }
        } catch (const std::exception& ex) {
            r["outcome"] = "error";
            r["smooth"] = true;
            r["inconclusive"] = true;
            r["error"] = ex.what();
        }
    }
    if (timing)
        r["elapsed_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// Runs the (p, d) grid, p outer and d inner, writing one line per record in grid
/// order as soon as its prefix is complete. Workers may finish out of order; the
/// output is identical for every thread count.
inline std::map<std::uint64_t, ScanCounts> run_scan(const ScanOptions& opt, std::ostream& out) {
    struct Point {
        std::uint64_t p, d;
    };
    std::vector<Point> grid;
    for (auto p : opt.primes) {
        (void)PrimeField(p);
        for (std::uint64_t d = opt.d_lo; d <= opt.d_hi; ++d) grid.push_back({p, d});
    }

    std::vector<std::optional<Json>> done(grid.size());
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            Json rec = scan_record(i, grid[i].p, grid[i].d, opt.a, opt.e_max, opt.timing);
            {
                std::lock_guard lock(mu);
                done[i] = std::move(rec);
            }
            cv.notify_one();
        }
    };

    std::map<std::uint64_t, ScanCounts> counts;
    const unsigned n_threads = std::max(1u, opt.threads);
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        Json rec;
        {
            std::unique_lock lock(mu);
            cv.wait(lock, [&] { return done[i].has_value(); });
            rec = std::move(*done[i]);
            done[i].reset();
        }
        out << rec.dump() << '\n';
        out.flush();
        auto& c = counts[grid[i].d];
        const auto outcome = rec["outcome"].get<std::string>();
        if (outcome == "certificate")
            ++c.certified;
        else if (outcome == "skipped")
            ++c.skipped;
        else if (outcome == "error")
            ++c.errors;
        else
            ++c.inconclusive;
    }
    return counts;
}

}  // namespace frobsyz

#endif  // FROBSYZ_SCAN_HPP
