#pragma once
// Seeded Monte Carlo check of the analytic expectations.
//
// Each sample draws one uniform score s (admissions are perfectly
// correlated: one score decides every school).  The student attends the
// most selective school with threshold <= s; every school also delivers
// news utility -- a gain of (1 - p_i) tau v_i if admitted, a loss of
// -lambda p_i tau v_i if rejected, with p_i = 1 - x_i and v_i = x_i.  Since
// schools below the attended index are all admitted and those above all
// rejected, the news term is a rejected-prefix + admitted-suffix sum,
// precomputed so a sample costs one binary search.
//
// The generator is counter-based: a 64-bit finalizer-mix chain keyed by
// (seed, stream, sample index), so any sample is computable independently.
// Samples are sharded over a fixed number of logical streams; per-stream
// partial sums are reduced in stream order, which makes the result
// bit-identical for any worker count.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "shortlist/model.hpp"

namespace shortlist {

struct SimConfig {
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 42;
    int stream_count = 64;
    int threads = 0;  // 0: SHORTLIST_THREADS env var if set, else hardware concurrency
};

struct SimResult {
    double mean_perceived = 0.0;
    double mean_payoff = 0.0;
    double stderr_perceived = 0.0;
    double stderr_payoff = 0.0;
};

namespace detail {

// 64-bit avalanche (the murmur3 finalizer).
inline std::uint64_t fmix64(std::uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return h;
}

// Uniform double in [0, 1) from (seed, stream, index): two mix rounds with
// odd multipliers keep distinct streams/indices decorrelated.
inline double u01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t h = fmix64(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    h = fmix64(h ^ (0xbf58476d1ce4e5b9ULL * (index + 1)));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline int resolve_thread_count(int requested, int stream_count) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("SHORTLIST_THREADS")) {
            char* end = nullptr;
            const long parsed = std::strtol(env, &end, 10);
            if (end != env && parsed > 0) n = static_cast<int>(parsed);
        }
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return n < stream_count ? n : stream_count;
}

struct StreamSums {
    double sum_full = 0.0, sumsq_full = 0.0;
    double sum_cons = 0.0, sumsq_cons = 0.0;
};

}  // namespace detail

inline SimResult simulate(const Portfolio& pf, const BiasParams& bias, const SimConfig& cfg) {
    if (cfg.samples < 1) throw std::invalid_argument("simulate: samples must be >= 1");
    if (cfg.stream_count < 1) throw std::invalid_argument("simulate: stream_count must be >= 1");
    const std::size_t k = pf.size();

    // Per-school news terms and their prefix/suffix sums.
    std::vector<double> loss_prefix(k + 1), gain_suffix(k + 1);
    loss_prefix[0] = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double x = pf[i];
        loss_prefix[i + 1] = loss_prefix[i] - bias.lambda * bias.tau * x * (1.0 - x);
    }
    gain_suffix[k] = 0.0;
    for (std::size_t i = k; i-- > 0;) {
        const double x = pf[i];
        gain_suffix[i] = gain_suffix[i + 1] + bias.tau * x * x;
    }
    const std::vector<double>& x = pf.schools();

    const std::uint64_t streams = static_cast<std::uint64_t>(cfg.stream_count);
    const std::uint64_t per_stream = cfg.samples / streams;
    const std::uint64_t remainder = cfg.samples % streams;
    std::vector<detail::StreamSums> partial(static_cast<std::size_t>(streams));

    auto run_stream = [&](std::uint64_t s) {
        const std::uint64_t count = per_stream + (s < remainder ? 1 : 0);
        detail::StreamSums acc;
        for (std::uint64_t n = 0; n < count; ++n) {
            const double score = detail::u01(cfg.seed, s, n);
            // first (most selective) index admitted: smallest i with x[i] <= score
            std::size_t lo = 0, hi = k;
            while (lo < hi) {
                const std::size_t mid = lo + (hi - lo) / 2;
                if (x[mid] <= score)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            const double cons = lo < k ? x[lo] : 0.0;
            const double full = cons + loss_prefix[lo] + gain_suffix[lo];
            acc.sum_full += full;
            acc.sumsq_full += full * full;
            acc.sum_cons += cons;
            acc.sumsq_cons += cons * cons;
        }
        partial[static_cast<std::size_t>(s)] = acc;
    };

    const int workers = detail::resolve_thread_count(cfg.threads, cfg.stream_count);
    if (workers <= 1) {
        for (std::uint64_t s = 0; s < streams; ++s) run_stream(s);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t s = next.fetch_add(1); s < streams; s = next.fetch_add(1))
                    run_stream(s);
            });
        for (std::thread& t : pool) t.join();
    }

    // Reduce in stream order (fixed, scheduler-independent).
    double sum_full = 0.0, sumsq_full = 0.0, sum_cons = 0.0, sumsq_cons = 0.0;
    for (const detail::StreamSums& p : partial) {
        sum_full += p.sum_full;
        sumsq_full += p.sumsq_full;
        sum_cons += p.sum_cons;
        sumsq_cons += p.sumsq_cons;
    }

    const double n = static_cast<double>(cfg.samples);
    SimResult res;
    res.mean_perceived = sum_full / n;
    res.mean_payoff = sum_cons / n;
    if (cfg.samples > 1) {
        // unbiased sample variance, clamped against cancellation at tiny variance
        const double var_full =
            std::max(0.0, (sumsq_full - n * res.mean_perceived * res.mean_perceived) / (n - 1.0));
        const double var_cons =
            std::max(0.0, (sumsq_cons - n * res.mean_payoff * res.mean_payoff) / (n - 1.0));
        res.stderr_perceived = std::sqrt(var_full / n);
        res.stderr_payoff = std::sqrt(var_cons / n);
    }
    return res;
}

}  // namespace shortlist
