#pragma once

// Test-sequence generators: radial families, seeded random separated
// sequences, and the close-pairs family showing that a zero/one interpolant
// can exist on a Hoffman-type split of a sequence that is not interpolating.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hoffman.hpp"

namespace diskinterp {

/// lambda_n = 1 - ratio^n, n = 1..count.
[[nodiscard]] inline PointSequence generate_radial(double ratio, std::size_t count) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw domain_error("radial ratio must lie in (0, 1)");
    if (count == 0) throw domain_error("radial family needs at least one point");
    if (!(std::pow(ratio, static_cast<double>(count)) > kInteriorGuard)) {
        throw boundary_guard_error("1 - ratio^count reaches the boundary guard band");
    }
    std::vector<DiskPoint> pts;
    pts.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) pts.emplace_back(1.0 - std::pow(ratio, static_cast<double>(n)));
    return PointSequence(std::move(pts), "radial(" + std::to_string(ratio) + ", " + std::to_string(count) + ")");
}

inline constexpr double kRandomDiskRadius = 0.95;
inline constexpr std::size_t kMaxRejections = 100000;

/// Rejection sampling, uniform on |z| < 0.95, keeping points at
/// pseudohyperbolic distance >= min_sep from all accepted ones.
[[nodiscard]] inline PointSequence generate_separated_random(std::size_t count, double min_sep, std::uint64_t seed) {
    if (count == 0) throw domain_error("random sequence needs at least one point");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<DiskPoint> pts;
    pts.reserve(count);
    std::size_t rejections = 0;
    while (pts.size() < count) {
        const double r = kRandomDiskRadius * std::sqrt(unit(rng));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        const DiskPoint z{std::polar(r, theta)};
        bool ok = true;
        for (const DiskPoint& p : pts) {
            if (pseudohyperbolic_distance(p, z) < min_sep) {
                ok = false;
                break;
            }
        }
        if (ok) {
            pts.push_back(z);
        } else if (++rejections > kMaxRejections) {
            throw packing_failure("could not place " + std::to_string(count) + " points at separation " +
                                  std::to_string(min_sep));
        }
    }
    return PointSequence(std::move(pts), "random(seed=" + std::to_string(seed) + ")");
}

struct CounterexampleSpec {
    std::size_t num_pairs = 4;
    double gap = 0.01;
    double base_radial_ratio = 0.5;
};

struct Counterexample {
    PointSequence sequence;
    Decomposition declared;
};

/// Base points mu_n = 1 - ratio^n with partners mu_n' at pseudohyperbolic
/// distance `gap` further out on the real axis. The pairs sigma_n = {mu_n, mu_n'}
/// are laid out in order; even n (1-based) go to part0, odd n to part1. The
/// split is declared, and (a, b) are fitted on the grid with delta = 2 gap.
[[nodiscard]] inline Counterexample generate_counterexample(const CounterexampleSpec& spec,
                                                            std::size_t resolution = kDefaultGridResolution) {
    if (spec.num_pairs < 2) throw domain_error("counterexample needs at least two pairs");
    if (!(spec.gap > 0.0 && spec.gap <= 0.1)) throw domain_error("gap must lie in (0, 0.1]");
    if (!(spec.base_radial_ratio > 0.0 && spec.base_radial_ratio < 1.0)) {
        throw domain_error("radial ratio must lie in (0, 1)");
    }

    std::vector<DiskPoint> pts;
    std::vector<std::size_t> part0;
    std::vector<std::size_t> part1;
    for (std::size_t n = 1; n <= spec.num_pairs; ++n) {
        const double tail = std::pow(spec.base_radial_ratio, static_cast<double>(n));
        const double mu = 1.0 - tail;
        double partner = (mu + spec.gap) / (1.0 + spec.gap * mu);
        if (!(1.0 - partner > kInteriorGuard) || !(tail > kInteriorGuard)) {
            throw boundary_guard_error("pair " + std::to_string(n) + " reaches the boundary guard band");
        }
        while (pseudohyperbolic_distance(DiskPoint{mu}, DiskPoint{partner}) > spec.gap) {
            partner = std::nextafter(partner, mu);
        }
        auto& part = n % 2 == 0 ? part0 : part1;
        part.push_back(pts.size());
        pts.emplace_back(mu);
        part.push_back(pts.size());
        pts.emplace_back(partner);
    }
    PointSequence seq(std::move(pts), "counterexample(pairs=" + std::to_string(spec.num_pairs) +
                                          ", gap=" + std::to_string(spec.gap) + ")");
    Decomposition dec = fit_decomposition(seq, part0, part1, 2.0 * spec.gap, resolution);
    return {std::move(seq), std::move(dec)};
}

}  // namespace diskinterp
