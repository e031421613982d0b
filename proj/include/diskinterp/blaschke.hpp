#pragma once

// Finite Blaschke products and the sequence invariants built from them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "disk_geometry.hpp"

namespace diskinterp {

/// Points closer than this (pseudohyperbolically) count as coincident.
inline constexpr double kDistinctness = 1e-9;
inline constexpr std::size_t kDefaultMaxLength = 512;

/// Factors of modulus below this are treated as an exact zero by the log form.
inline constexpr double kZeroCollision = 1e-300;

/// |B_n(lambda_n)| below this makes the weak-interpolation family meaningless.
inline constexpr double kDegenerateCarleson = 1e-12;

/// A finite ordered set of pairwise distinct points inside the disk.
class PointSequence {
public:
    PointSequence() = default;

    explicit PointSequence(std::vector<DiskPoint> points, std::optional<std::string> label = {},
                           std::size_t max_length = kDefaultMaxLength)
        : points_(std::move(points)), label_(std::move(label)) {
        if (points_.empty()) throw domain_error("point sequence is empty");
        if (points_.size() > max_length) {
            throw domain_error("point sequence longer than " + std::to_string(max_length));
        }
        for (std::size_t k = 1; k < points_.size(); ++k) {
            for (std::size_t j = 0; j < k; ++j) {
                if (!(pseudohyperbolic_distance(points_[j], points_[k]) > kDistinctness)) {
                    throw invalid_point(k, "coincides with point " + std::to_string(j));
                }
            }
        }
    }

    /// Validates raw complex values, reporting the first offending index.
    static PointSequence from_values(std::span<const complex> values,
                                     std::optional<std::string> label = {},
                                     std::size_t max_length = kDefaultMaxLength) {
        std::vector<DiskPoint> pts;
        pts.reserve(values.size());
        for (std::size_t k = 0; k < values.size(); ++k) {
            const complex v = values[k];
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw invalid_point(k, "coordinate is not finite");
            }
            if (!(std::abs(v) < 1.0 - kInteriorGuard)) {
                throw invalid_point(k, "not strictly inside the unit disk");
            }
            pts.emplace_back(v);
        }
        return PointSequence(std::move(pts), std::move(label), max_length);
    }

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] const DiskPoint& operator[](std::size_t i) const { return points_[i]; }
    [[nodiscard]] std::span<const DiskPoint> points() const noexcept { return points_; }
    [[nodiscard]] const std::optional<std::string>& label() const noexcept { return label_; }
    [[nodiscard]] auto begin() const noexcept { return points_.begin(); }
    [[nodiscard]] auto end() const noexcept { return points_.end(); }

    /// The sub-sequence picked out by `indices`, in the given order.
    [[nodiscard]] PointSequence subset(std::span<const std::size_t> indices) const {
        std::vector<DiskPoint> pts;
        pts.reserve(indices.size());
        for (std::size_t i : indices) pts.push_back(points_.at(i));
        PointSequence out;
        out.points_ = std::move(pts);
        out.label_ = label_;
        return out;
    }

private:
    std::vector<DiskPoint> points_;
    std::optional<std::string> label_;
};

namespace detail {

// Accumulates a product of Moebius factors as (sum of log-moduli, sum of
// arguments). A factor that vanishes exactly sets `zero`.
struct LogProduct {
    double log_modulus = 0.0;
    double phase = 0.0;
    bool zero = false;

    void multiply(DiskPoint lambda, complex z) {
        const complex f = mobius_transform(lambda, z);
        if (f == complex{0.0, 0.0}) {
            zero = true;
            return;
        }
        log_modulus += log_mobius_modulus(lambda, z);
        phase += std::arg(f);
    }

    [[nodiscard]] complex value() const {
        if (zero) return {0.0, 0.0};
        return std::polar(std::exp(log_modulus), phase);
    }
};

template <class Skip>
LogProduct accumulate(std::span<const DiskPoint> pts, complex z, Skip skip) {
    LogProduct p;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (skip(k)) continue;
        p.multiply(pts[k], z);
        if (p.zero) break;
    }
    return p;
}

}  // namespace detail

/// B(z) = prod_n b_{lambda_n}(z), for |z| <= 1.
[[nodiscard]] inline complex blaschke_eval(std::span<const DiskPoint> pts, complex z) {
    return detail::accumulate(pts, z, [](std::size_t) { return false; }).value();
}
[[nodiscard]] inline complex blaschke_eval(const PointSequence& seq, complex z) {
    return blaschke_eval(seq.points(), z);
}

/// sum_n log|b_{lambda_n}(z)|. Throws zero_collision if z sits on a zero.
[[nodiscard]] inline double blaschke_log_modulus(std::span<const DiskPoint> pts, complex z) {
    double sum = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double lm = log_mobius_modulus(pts[k], z);
        if (!(lm >= std::log(kZeroCollision))) {
            throw zero_collision("evaluation point collides with zero " + std::to_string(k));
        }
        sum += lm;
    }
    return sum;
}
[[nodiscard]] inline double blaschke_log_modulus(const PointSequence& seq, complex z) {
    return blaschke_log_modulus(seq.points(), z);
}

namespace detail {
inline void check_index(const PointSequence& seq, std::size_t n) {
    if (n >= seq.size()) {
        throw std::out_of_range("index " + std::to_string(n) + " out of range for sequence of length " +
                                std::to_string(seq.size()));
    }
}
}  // namespace detail

/// B_n(z) = prod_{k != n} b_{lambda_k}(z).
[[nodiscard]] inline complex blaschke_eval_excluding(const PointSequence& seq, std::size_t n, complex z) {
    detail::check_index(seq, n);
    return detail::accumulate(seq.points(), z, [n](std::size_t k) { return k == n; }).value();
}

/// log|B_n(lambda_n)|; finite because the points are distinct.
[[nodiscard]] inline double log_excluded_at_node(const PointSequence& seq, std::size_t n) {
    detail::check_index(seq, n);
    const complex z = seq[n].value();
    double sum = 0.0;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (k != n) sum += log_mobius_modulus(seq[k], z);
    }
    return sum;
}

/// |B_n(lambda_n)|, never larger than its smallest factor (so that rounding
/// cannot lift it above the separation constant).
[[nodiscard]] inline double excluded_modulus_at_node(const PointSequence& seq, std::size_t n) {
    detail::check_index(seq, n);
    double smallest = 1.0;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (k != n) smallest = std::min(smallest, pseudohyperbolic_distance(seq[k], seq[n]));
    }
    return std::min(std::exp(log_excluded_at_node(seq, n)), smallest);
}

/// min_n |B_n(lambda_n)|; 1 for a singleton.
[[nodiscard]] inline double carleson_constant(const PointSequence& seq) {
    double best = 1.0;
    for (std::size_t n = 0; n < seq.size(); ++n) best = std::min(best, excluded_modulus_at_node(seq, n));
    return best;
}

/// min over unordered pairs of the pseudohyperbolic distance; 1 for a
/// singleton (vacuous).
[[nodiscard]] inline double separation_constant(const PointSequence& seq) {
    double best = 1.0;
    for (std::size_t k = 1; k < seq.size(); ++k) {
        for (std::size_t j = 0; j < k; ++j) best = std::min(best, pseudohyperbolic_distance(seq[j], seq[k]));
    }
    return best;
}

[[nodiscard]] inline double blaschke_sum(const PointSequence& seq) {
    double s = 0.0;
    for (const DiskPoint& p : seq) s += 1.0 - p.modulus();
    return s;
}

struct AnalysisReport {
    std::size_t length = 0;
    double blaschke_sum = 0.0;
    double separation_constant = 1.0;
    double carleson_constant = 1.0;
    std::vector<std::pair<std::size_t, double>> per_point;  // (n, |B_n(lambda_n)|)
};

[[nodiscard]] inline AnalysisReport analyze(const PointSequence& seq) {
    AnalysisReport r;
    r.length = seq.size();
    r.blaschke_sum = blaschke_sum(seq);
    r.separation_constant = separation_constant(seq);
    r.per_point.reserve(seq.size());
    double best = 1.0;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const double v = excluded_modulus_at_node(seq, n);
        r.per_point.emplace_back(n, v);
        best = std::min(best, v);
    }
    r.carleson_constant = best;
    return r;
}

/// phi_n = B_n / B_n(lambda_n): equal to 1 at lambda_n and 0 at the other
/// points. Its sup-norm is 1/|B_n(lambda_n)| because |B_n| = 1 on the circle.
class WeakFamilyMember {
public:
    WeakFamilyMember(std::shared_ptr<const PointSequence> seq, std::size_t n)
        : seq_(std::move(seq)), n_(n), anchor_(blaschke_eval_excluding(*seq_, n_, (*seq_)[n_].value())) {}

    [[nodiscard]] complex operator()(complex z) const { return blaschke_eval_excluding(*seq_, n_, z) / anchor_; }
    [[nodiscard]] double norm() const { return 1.0 / std::abs(anchor_); }
    [[nodiscard]] std::size_t index() const noexcept { return n_; }

private:
    std::shared_ptr<const PointSequence> seq_;
    std::size_t n_;
    complex anchor_;
};

[[nodiscard]] inline std::vector<WeakFamilyMember> weak_interpolation_family(const PointSequence& seq) {
    auto shared = std::make_shared<const PointSequence>(seq);
    std::vector<WeakFamilyMember> family;
    family.reserve(seq.size());
    for (std::size_t n = 0; n < seq.size(); ++n) {
        if (std::exp(log_excluded_at_node(seq, n)) < kDegenerateCarleson) {
            throw degenerate_sequence("|B_n(lambda_n)| below 1e-12 at index " + std::to_string(n));
        }
        family.emplace_back(shared, n);
    }
    return family;
}

}  // namespace diskinterp
