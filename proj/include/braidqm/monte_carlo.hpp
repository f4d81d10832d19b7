#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>
#include <vector>

#include "braidqm/loop_braid.hpp"
#include "braidqm/quasimorphism.hpp"

namespace braidqm {

struct GGEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;  // sample standard deviation / sqrt(samples_used), scaled like mean
    std::size_t samples_used = 0;
    std::size_t rejected = 0;
    std::uint64_t seed = 0;
};

struct MonteCarloOptions {
    double min_distance = 1e-4;        // configurations with closer points are redrawn
    double max_reject_fraction = 0.1;  // abort beyond this many redraws per sample
    double perturb = 1e-7;             // jitter applied after an ambiguous crossing
    int retries = 3;
    unsigned threads = 1;
};

struct SampleRecord {
    std::size_t index = 0;
    std::size_t word_length = 0;
    double value = 0.0;  // phi(gamma(h^p; x)) / p
};

namespace detail {

template <class Rng>
std::vector<Point> uniform_configuration(Rng& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n) {
        const Point p{u(rng), u(rng)};
        if (p.x * p.x + p.y * p.y < 1.0) pts.push_back(p);
    }
    return pts;
}

inline double min_pairwise_distance(const std::vector<Point>& pts) {
    double best = INFINITY;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::min(best, std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y));
    return best;
}

} // namespace detail

/// Monte-Carlo estimate of the integral over n-point configurations in the
/// disc of phi(gamma(h^p; x)) / p. The mean is pi^n times the sample mean.
inline GGEstimate monte_carlo_phi(const FlowSpec& spec, const QuasiMorphism& phi, int n, std::size_t samples,
                                  std::uint64_t seed, const MonteCarloOptions& opt = {},
                                  std::vector<SampleRecord>* records = nullptr) {
    if (n < 1) throw InvalidInput("monte carlo needs n >= 1");
    if (samples < 1) throw InvalidInput("monte carlo needs at least one sample");
    const std::vector<Point> base = lattice_basepoints(n);
    std::vector<SampleRecord> rec(samples);
    std::vector<std::size_t> rejects(samples, 0);
    const auto reject_cap =
        static_cast<std::size_t>(std::ceil(opt.max_reject_fraction * static_cast<double>(samples)));

    auto one = [&](std::size_t k) {
        auto rng = substream(seed, k);
        std::normal_distribution<double> jitter(0.0, opt.perturb);
        for (;;) {
            if (rejects[k] > reject_cap) return;
            std::vector<Point> x = detail::uniform_configuration(rng, n);
            if (detail::min_pairwise_distance(x) < opt.min_distance) {
                ++rejects[k];
                continue;
            }
            for (int attempt = 0; attempt <= opt.retries; ++attempt) {
                try {
                    const LoopBraid lb = gg_loop_braid(integrate_flow(spec, x), base);
                    rec[k] = {k, lb.word.length(), phi(lb.word) / static_cast<double>(spec.p)};
                    return;
                } catch (const CrossingAmbiguity&) {
                    for (auto& q : x) {
                        q.x += jitter(rng);
                        q.y += jitter(rng);
                    }
                }
            }
            ++rejects[k];
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(samples)));
    if (threads == 1) {
        for (std::size_t k = 0; k < samples; ++k) one(k);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (samples + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t b = t * chunk, e = std::min(samples, b + chunk);
            if (b < e) pool.emplace_back([&one, b, e] {
                for (std::size_t k = b; k < e; ++k) one(k);
            });
        }
    }

    GGEstimate est;
    est.seed = seed;
    est.samples_used = samples;
    for (std::size_t r : rejects) est.rejected += r;
    if (static_cast<double>(est.rejected) > opt.max_reject_fraction * static_cast<double>(samples)) {
        throw NumericalFault("monte carlo: " + std::to_string(est.rejected) + " rejected configurations for " +
                             std::to_string(samples) + " samples");
    }
    double sum = 0.0;
    for (const auto& r : rec) sum += r.value;
    const double mean = sum / static_cast<double>(samples);
    double ss = 0.0;
    for (const auto& r : rec) ss += (r.value - mean) * (r.value - mean);
    const double sd = samples > 1 ? std::sqrt(ss / static_cast<double>(samples - 1)) : 0.0;
    const double vol = std::pow(std::numbers::pi, n);
    est.mean = vol * mean;
    est.stderr_ = vol * sd / std::sqrt(static_cast<double>(samples));
    if (records) *records = std::move(rec);
    return est;
}

inline void write_samples_csv(std::ostream& out, const std::vector<SampleRecord>& records) {
    out << "sample,word_length,value\n";
    out << std::setprecision(17);
    for (const auto& r : records) out << r.index << ',' << r.word_length << ',' << r.value << '\n';
}

} // namespace braidqm
