#pragma once

// delta-Hoffman decompositions of finite sequences. The comparability
// constants (a, b) of the factorization B = B0 B1,
//   a |B0(z)|^{1/b} <= |B1(z)| <= (1/a) |B0(z)|^b,
// are fitted on a grid that avoids every pseudohyperbolic disk D(lambda, delta).

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blaschke.hpp"

namespace diskinterp {

inline constexpr std::size_t kMinGridResolution = 32;
inline constexpr std::size_t kDefaultGridResolution = 128;
inline constexpr std::size_t kExhaustiveLimit = 16;

/// Cap on the sampling radius of the exclusion grid.
inline constexpr double kGridRadiusCap = 0.999;

struct ExclusionGrid {
    std::vector<complex> points;
    double delta = 0.0;
    std::size_t resolution = 0;
    double radius = 0.0;  // half-width of the sampled square
};

/// Regular Cartesian grid over [-R, R]^2, abscissae -R + 2R i / resolution,
/// keeping points with |z| < R that lie outside every D(lambda, delta).
/// R reaches 0.05 beyond the outer edge of the farthest pseudo-disk (capped at
/// 0.999). Doubling the resolution yields a superset of points.
[[nodiscard]] inline ExclusionGrid exclusion_grid(std::span<const DiskPoint> pts, double delta,
                                                  std::size_t resolution = kDefaultGridResolution) {
    if (resolution < kMinGridResolution) throw domain_error("grid resolution must be at least 32");
    if (!(delta > 0.0 && delta < 1.0)) throw domain_error("delta must lie in (0, 1)");

    double reach = 0.0;
    for (const DiskPoint& p : pts) {
        const double r = p.modulus();
        reach = std::max(reach, (r + delta) / (1.0 + delta * r));
    }
    ExclusionGrid grid;
    grid.delta = delta;
    grid.resolution = resolution;
    grid.radius = std::min(kGridRadiusCap, reach + 0.05);

    const double R = grid.radius;
    const double h = 2.0 * R / static_cast<double>(resolution);
    for (std::size_t iy = 0; iy < resolution; ++iy) {
        const double y = -R + h * static_cast<double>(iy);
        for (std::size_t ix = 0; ix < resolution; ++ix) {
            const complex z{-R + h * static_cast<double>(ix), y};
            if (!(std::abs(z) < R)) continue;
            bool outside = true;
            for (const DiskPoint& p : pts) {
                if (std::abs(mobius_transform(p, z)) < delta) {
                    outside = false;
                    break;
                }
            }
            if (outside) grid.points.push_back(z);
        }
    }
    if (grid.points.empty()) {
        throw empty_grid_error("pseudo-disks of radius " + std::to_string(delta) +
                               " cover the sampled region; lower delta");
    }
    return grid;
}
[[nodiscard]] inline ExclusionGrid exclusion_grid(const PointSequence& seq, double delta,
                                                  std::size_t resolution = kDefaultGridResolution) {
    return exclusion_grid(seq.points(), delta, resolution);
}

struct ComparabilityFit {
    double a = 1.0;
    double b = 1.0;
    complex worst_point;
};

namespace detail {

inline constexpr double kDegenerateLog = 1e-14;

inline void check_logs(double l0, double l1) {
    if (!(l0 < -kDegenerateLog && l1 < -kDegenerateLog)) {
        throw degenerate_fit("log-modulus within 1e-14 of zero on the fit grid");
    }
}

// b = max(1, max_g max(L1/L0, L0/L1)); returns b and the argmax index.
inline std::pair<double, std::size_t> fit_exponent(std::span<const double> l0, std::span<const double> l1) {
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t g = 0; g < l0.size(); ++g) {
        const double r = std::max(l1[g] / l0[g], l0[g] / l1[g]);
        if (r > worst) {
            worst = r;
            arg = g;
        }
    }
    return {std::max(1.0, worst), arg};
}

// log a = min_g min(b L1 - L0, b L0 - L1), shaved so the inequality also
// holds after rounding. Symmetric in (L0, L1).
inline double fit_log_scale(std::span<const double> l0, std::span<const double> l1, double b) {
    double best = 0.0;
    double largest = 0.0;
    for (std::size_t g = 0; g < l0.size(); ++g) {
        best = std::min({best, b * l1[g] - l0[g], b * l0[g] - l1[g]});
        largest = std::max({largest, -l0[g], -l1[g]});
    }
    return best - 1e-12 * (1.0 + largest);
}

inline ComparabilityFit fit_from_logs(std::span<const double> l0, std::span<const double> l1,
                                      std::span<const complex> points) {
    for (std::size_t g = 0; g < l0.size(); ++g) check_logs(l0[g], l1[g]);
    const auto [b, arg] = fit_exponent(l0, l1);
    return {std::exp(fit_log_scale(l0, l1, b)), b, points[arg]};
}

inline std::vector<double> log_moduli(std::span<const DiskPoint> pts, std::span<const complex> grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (const complex& z : grid) out.push_back(blaschke_log_modulus(pts, z));
    return out;
}

}  // namespace detail

[[nodiscard]] inline ComparabilityFit comparability_fit(std::span<const DiskPoint> part0,
                                                        std::span<const DiskPoint> part1,
                                                        const ExclusionGrid& grid) {
    if (part0.empty() || part1.empty()) throw domain_error("both parts must be nonempty");
    const auto l0 = detail::log_moduli(part0, grid.points);
    const auto l1 = detail::log_moduli(part1, grid.points);
    return detail::fit_from_logs(l0, l1, grid.points);
}

/// Number of grid points where the sandwich inequality fails for (a, b).
[[nodiscard]] inline std::size_t sandwich_violations(std::span<const DiskPoint> part0,
                                                     std::span<const DiskPoint> part1,
                                                     const ExclusionGrid& grid, double a, double b) {
    std::size_t bad = 0;
    for (const complex& z : grid.points) {
        const double m0 = std::exp(blaschke_log_modulus(part0, z));
        const double m1 = std::exp(blaschke_log_modulus(part1, z));
        if (!(a * std::pow(m0, 1.0 / b) <= m1 && m1 <= std::pow(m0, b) / a)) ++bad;
    }
    return bad;
}

struct Decomposition {
    PointSequence base;
    std::vector<std::size_t> part0;
    std::vector<std::size_t> part1;
    double delta = 0.0;
    double fitted_a = 1.0;
    double fitted_b = 1.0;
    complex worst_point;
    ExclusionGrid grid;

    [[nodiscard]] std::size_t fit_grid_size() const noexcept { return grid.points.size(); }
    [[nodiscard]] PointSequence part0_points() const { return base.subset(part0); }
    [[nodiscard]] PointSequence part1_points() const { return base.subset(part1); }
};

/// Fit (a, b) for a given split of `seq`.
[[nodiscard]] inline Decomposition fit_decomposition(const PointSequence& seq, std::vector<std::size_t> part0,
                                                     std::vector<std::size_t> part1, double delta,
                                                     std::size_t resolution = kDefaultGridResolution) {
    std::vector<bool> seen(seq.size(), false);
    for (const auto* part : {&part0, &part1}) {
        if (part->empty()) throw domain_error("both parts of a decomposition must be nonempty");
        for (std::size_t i : *part) {
            if (i >= seq.size()) throw std::out_of_range("decomposition index out of range");
            if (seen[i]) throw domain_error("index " + std::to_string(i) + " appears twice in the decomposition");
            seen[i] = true;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw domain_error("decomposition does not cover every index");
    }
    std::sort(part0.begin(), part0.end());
    std::sort(part1.begin(), part1.end());

    Decomposition d{seq, std::move(part0), std::move(part1), delta, 1.0, 1.0, {}, exclusion_grid(seq, delta, resolution)};
    const PointSequence p0 = d.part0_points();
    const PointSequence p1 = d.part1_points();
    const ComparabilityFit fit = comparability_fit(p0.points(), p1.points(), d.grid);
    d.fitted_a = fit.a;
    d.fitted_b = fit.b;
    d.worst_point = fit.worst_point;
    return d;
}

namespace detail {

// Objective of the partition search: smaller b first, then larger a.
struct Score {
    double b = std::numeric_limits<double>::infinity();
    double log_a = -std::numeric_limits<double>::infinity();
};

inline constexpr double kTieTolerance = 1e-12;

inline bool same_b(double x, double y) { return std::abs(x - y) <= kTieTolerance * std::max(x, y); }

// Precomputed log|b_{lambda_k}(z_g)| for every point and grid node; part
// sums are maintained incrementally during the search.
class PartitionScorer {
public:
    PartitionScorer(const PointSequence& seq, const ExclusionGrid& grid) : grid_size_(grid.points.size()) {
        rows_.reserve(seq.size());
        total_.assign(grid_size_, 0.0);
        for (const DiskPoint& p : seq) {
            std::vector<double> row;
            row.reserve(grid_size_);
            for (const complex& z : grid.points) {
                const double v = log_mobius_modulus(p, z);
                row.push_back(v);
            }
            for (std::size_t g = 0; g < grid_size_; ++g) total_[g] += row[g];
            rows_.push_back(std::move(row));
        }
        l0_.assign(grid_size_, 0.0);
        l1_.assign(grid_size_, 0.0);
    }

    void toggle(std::size_t k, bool into_part0) {
        const auto& row = rows_[k];
        if (into_part0) {
            for (std::size_t g = 0; g < grid_size_; ++g) l0_[g] += row[g];
        } else {
            for (std::size_t g = 0; g < grid_size_; ++g) l0_[g] -= row[g];
        }
    }

    // b only; a is computed when b ties with the incumbent.
    double exponent() {
        for (std::size_t g = 0; g < grid_size_; ++g) l1_[g] = total_[g] - l0_[g];
        double worst = 1.0;
        for (std::size_t g = 0; g < grid_size_; ++g) {
            worst = std::max({worst, l1_[g] / l0_[g], l0_[g] / l1_[g]});
        }
        return worst;
    }

    double log_scale(double b) const { return fit_log_scale(l0_, l1_, b); }

private:
    std::size_t grid_size_;
    std::vector<std::vector<double>> rows_;
    std::vector<double> total_;
    std::vector<double> l0_;
    std::vector<double> l1_;
};

inline std::vector<std::size_t> indices_of(const std::vector<bool>& in0, bool value) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < in0.size(); ++i) {
        if (in0[i] == value) out.push_back(i);
    }
    return out;
}

// Is `cand` (with b already known) better than `best`? Evaluates log a lazily.
template <class LogScale>
bool improves(double cand_b, const LogScale& log_scale, Score& best, double& cand_log_a) {
    if (!same_b(cand_b, best.b)) {
        if (cand_b < best.b) {
            cand_log_a = log_scale(cand_b);
            return true;
        }
        return false;
    }
    cand_log_a = log_scale(cand_b);
    return cand_log_a > best.log_a;
}

inline std::vector<bool> exhaustive_search(const PointSequence& seq, const ExclusionGrid& grid) {
    const std::size_t n = seq.size();
    PartitionScorer scorer(seq, grid);
    // Index 0 stays in part0: complementary splits score identically and the
    // one containing index 0 is the lexicographically smaller part0.
    std::vector<bool> in0(n, false);
    in0[0] = true;
    scorer.toggle(0, true);

    Score best;
    std::vector<bool> best_in0;
    const std::uint64_t free_bits = n - 1;
    const std::uint64_t count = std::uint64_t{1} << free_bits;
    std::uint64_t prev_gray = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t gray = i ^ (i >> 1);
        if (i > 0) {
            const std::uint64_t changed = gray ^ prev_gray;
            const auto bit = static_cast<std::size_t>(std::countr_zero(changed));
            const std::size_t k = bit + 1;
            in0[k] = !in0[k];
            scorer.toggle(k, in0[k]);
        }
        prev_gray = gray;
        if (gray == count - 1) continue;  // part1 would be empty

        const double b = scorer.exponent();
        double log_a = 0.0;
        const auto log_scale = [&](double bb) { return scorer.log_scale(bb); };
        if (improves(b, log_scale, best, log_a)) {
            best = {b, log_a};
            best_in0 = in0;
        } else if (same_b(b, best.b) && log_a == best.log_a) {
            const auto cand = indices_of(in0, true);
            const auto incumbent = indices_of(best_in0, true);
            if (std::lexicographical_compare(cand.begin(), cand.end(), incumbent.begin(), incumbent.end())) {
                best_in0 = in0;
            }
        }
    }
    return best_in0;
}

inline std::vector<bool> local_search(const PointSequence& seq, const ExclusionGrid& grid) {
    const std::size_t n = seq.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return seq[x].modulus() < seq[y].modulus(); });

    PartitionScorer scorer(seq, grid);
    std::vector<bool> in0(n, false);
    for (std::size_t pos = 0; pos < n; pos += 2) {
        in0[order[pos]] = true;
        scorer.toggle(order[pos], true);
    }
    std::size_t size0 = (n + 1) / 2;

    Score best;
    best.b = scorer.exponent();
    best.log_a = scorer.log_scale(best.b);

    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t k = 0; k < n; ++k) {
            const bool to0 = !in0[k];
            const std::size_t new_size0 = to0 ? size0 + 1 : size0 - 1;
            if (new_size0 == 0 || new_size0 == n) continue;
            scorer.toggle(k, to0);
            const double b = scorer.exponent();
            double log_a = 0.0;
            const auto log_scale = [&](double bb) { return scorer.log_scale(bb); };
            if (improves(b, log_scale, best, log_a)) {
                best = {b, log_a};
                in0[k] = to0;
                size0 = new_size0;
                improved = true;
            } else {
                scorer.toggle(k, !to0);
            }
        }
    }
    if (!in0[0]) in0.flip();
    return in0;
}

}  // namespace detail

/// Search for the split minimizing the fitted b (ties: larger a, then the
/// lexicographically smallest part0). Exhaustive up to `exhaustive_limit`
/// points, first-improvement local search beyond.
[[nodiscard]] inline Decomposition decompose(const PointSequence& seq, double delta,
                                             std::size_t resolution = kDefaultGridResolution,
                                             std::size_t exhaustive_limit = kExhaustiveLimit) {
    if (seq.size() < 2) throw domain_error("decomposition needs at least two points");
    const ExclusionGrid grid = exclusion_grid(seq, delta, resolution);
    const std::vector<bool> in0 = seq.size() <= exhaustive_limit ? detail::exhaustive_search(seq, grid)
                                                                 : detail::local_search(seq, grid);
    return fit_decomposition(seq, detail::indices_of(in0, true), detail::indices_of(in0, false), delta,
                             resolution);
}

/// The decomposition associated with delta = delta0 / 2, delta0 the
/// separation constant.
[[nodiscard]] inline Decomposition corresponding_decomposition(const PointSequence& seq,
                                                               std::size_t resolution = kDefaultGridResolution) {
    if (seq.size() < 2) throw domain_error("decomposition needs at least two points");
    const double sep = separation_constant(seq);
    if (!(sep > 0.0)) throw degenerate_sequence("sequence is not separated");
    return decompose(seq, sep / 2.0, resolution);
}

}  // namespace diskinterp
