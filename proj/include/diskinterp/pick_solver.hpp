#pragma once

// Minimal-norm bounded analytic interpolation on finitely many nodes:
// Pick-matrix feasibility, bisection on the norm, and a Schur recursion that
// produces an evaluable rational interpolant.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "blaschke.hpp"

namespace diskinterp {

struct PickProblem {
    PointSequence nodes;
    std::vector<complex> targets;

    PickProblem(PointSequence n, std::vector<complex> t) : nodes(std::move(n)), targets(std::move(t)) {
        if (nodes.size() != targets.size()) {
            throw domain_error("pick problem has " + std::to_string(nodes.size()) + " nodes but " +
                               std::to_string(targets.size()) + " targets");
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return targets.size(); }

    [[nodiscard]] double max_target_modulus() const {
        double m = 0.0;
        for (const complex& w : targets) m = std::max(m, std::abs(w));
        return m;
    }
};

using PickMatrix = Eigen::MatrixXcd;

/// Entry (j,k) = (M^2 - w_j conj(w_k)) / (1 - lambda_j conj(lambda_k)).
[[nodiscard]] inline PickMatrix pick_matrix(const PickProblem& problem, double M) {
    const std::size_t n = problem.size();
    PickMatrix P(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const double m2 = M * M;
    for (std::size_t j = 0; j < n; ++j) {
        const complex lj = problem.nodes[j].value();
        const complex wj = problem.targets[j];
        for (std::size_t k = 0; k <= j; ++k) {
            const complex lk = problem.nodes[k].value();
            const complex wk = problem.targets[k];
            const complex e = (m2 - wj * std::conj(wk)) / (1.0 - lj * std::conj(lk));
            const auto jj = static_cast<Eigen::Index>(j);
            const auto kk = static_cast<Eigen::Index>(k);
            P(jj, kk) = e;
            P(kk, jj) = std::conj(e);
        }
        const auto jj = static_cast<Eigen::Index>(j);
        P(jj, jj) = P(jj, jj).real();
    }
    return P;
}

/// max(1, trace / n); the PSD tolerance is measured against this.
[[nodiscard]] inline double trace_scale(const PickMatrix& P) {
    return std::max(1.0, P.trace().real() / static_cast<double>(P.rows()));
}

[[nodiscard]] inline double smallest_eigenvalue(const PickMatrix& P) {
    Eigen::SelfAdjointEigenSolver<PickMatrix> solver(P, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

inline constexpr double kPsdTolerance = 1e-10;

[[nodiscard]] inline bool is_feasible(const PickProblem& problem, double M, double psd_tol = kPsdTolerance) {
    const PickMatrix P = pick_matrix(problem, M);
    return smallest_eigenvalue(P) >= -psd_tol * trace_scale(P);
}

struct MinNormOptions {
    double rel_tol = 1e-10;  // bracket width relative to the upper bracket end
    double psd_tol = kPsdTolerance;
    int max_iterations = 400;
};

/// Norm of sum_j w_j phi_j, where phi_j is the weak-interpolation family;
/// always a feasible norm.
[[nodiscard]] inline double weak_family_bound(const PickProblem& problem) {
    double s = 0.0;
    for (std::size_t j = 0; j < problem.size(); ++j) {
        const double w = std::abs(problem.targets[j]);
        if (w > 0.0) s += w / std::exp(log_excluded_at_node(problem.nodes, j));
    }
    return s;
}

/// Smallest M such that some f with ||f|| <= M interpolates the targets.
[[nodiscard]] inline double min_norm(const PickProblem& problem, const MinNormOptions& opts = {}) {
    double lo = problem.max_target_modulus();
    const double upper = std::max(lo, weak_family_bound(problem));
    if (is_feasible(problem, lo, opts.psd_tol)) return lo;
    if (!is_feasible(problem, upper, opts.psd_tol)) {
        throw bracket_failure("weak-family upper bound " + std::to_string(upper) +
                              " is not Pick-feasible; nodes are numerically degenerate");
    }
    double hi = upper;
    for (int it = 0; it < opts.max_iterations && hi - lo > opts.rel_tol * upper; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (smallest_eigenvalue(pick_matrix(problem, mid)) >= 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

struct SchurStep {
    DiskPoint node;
    complex parameter;
};

/// f(z) = scale * g_0(z) with g_k = (gamma_k + b_k g_{k+1}) / (1 + conj(gamma_k) b_k g_{k+1})
/// and the last g a constant.
struct RationalInterpolant {
    std::vector<SchurStep> schur_steps;
    double scale = 0.0;

    [[nodiscard]] complex operator()(complex z) const {
        if (schur_steps.empty()) return {0.0, 0.0};
        complex g = schur_steps.back().parameter;
        for (std::size_t k = schur_steps.size() - 1; k-- > 0;) {
            const SchurStep& s = schur_steps[k];
            const complex t = mobius_transform(s.node, z) * g;
            g = (s.parameter + t) / (1.0 + std::conj(s.parameter) * t);
        }
        return scale * g;
    }
};

[[nodiscard]] inline complex interpolant_eval(const RationalInterpolant& f, complex z) { return f(z); }

/// Above this a Schur parameter signals that M was too close to the minimal norm.
inline constexpr double kSchurBreakdown = 1.0 + 1e-9;

[[nodiscard]] inline RationalInterpolant construct_interpolant(const PickProblem& problem, double M) {
    RationalInterpolant f;
    f.scale = M;
    if (!(M > 0.0)) {
        if (problem.max_target_modulus() != 0.0) throw domain_error("norm must be positive");
        f.schur_steps.push_back({problem.nodes[0], {0.0, 0.0}});
        return f;
    }
    std::vector<DiskPoint> nodes(problem.nodes.begin(), problem.nodes.end());
    std::vector<complex> values;
    values.reserve(problem.size());
    for (const complex& w : problem.targets) values.push_back(w / M);

    std::size_t first = 0;
    while (true) {
        complex gamma = values[first];
        const double mod = std::abs(gamma);
        if (mod > kSchurBreakdown) {
            throw recursion_breakdown("Schur parameter of modulus " + std::to_string(mod) + " at step " +
                                      std::to_string(first) + "; inflate the norm");
        }
        const bool last = first + 1 == nodes.size();
        if (last || mod >= 1.0) {
            if (mod > 1.0) gamma /= mod;
            f.schur_steps.push_back({nodes[first], gamma});
            break;
        }
        f.schur_steps.push_back({nodes[first], gamma});
        for (std::size_t j = first + 1; j < nodes.size(); ++j) {
            const complex reduced = (values[j] - gamma) / (1.0 - std::conj(gamma) * values[j]);
            values[j] = reduced / mobius_transform(nodes[first], nodes[j].value());
        }
        ++first;
    }
    return f;
}

inline constexpr std::size_t kMinBoundaryGrid = 256;

/// max |fn(e^{i theta})| over `grid` equally spaced angles, refined by a
/// golden-section search around the discrete maximizer down to a bracket of
/// 2^-20 grid steps. A lower bound on the true boundary supremum; it can miss
/// a second peak narrower than the grid spacing.
template <class Fn>
[[nodiscard]] double boundary_sup(const Fn& fn, std::size_t grid) {
    if (grid < kMinBoundaryGrid) throw domain_error("boundary grid must have at least 256 points");
    const double step = 2.0 * std::numbers::pi / static_cast<double>(grid);
    auto mod = [&](double theta) { return std::abs(fn(std::polar(1.0, theta))); };

    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < grid; ++k) {
        const double v = mod(step * static_cast<double>(k));
        if (v > best) {
            best = v;
            arg = k;
        }
    }

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double centre = step * static_cast<double>(arg);
    double a = centre - step;
    double b = centre + step;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = mod(c);
    double fd = mod(d);
    const double stop = std::ldexp(step, -20);
    while (b - a > stop) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = mod(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = mod(d);
        }
    }
    return std::max({best, fc, fd, mod(0.5 * (a + b))});
}

[[nodiscard]] inline double sup_norm_boundary(const RationalInterpolant& f, std::size_t grid) {
    return boundary_sup(f, grid);
}

struct PickSolution {
    double min_norm = 0.0;
    double construction_norm = 0.0;
    RationalInterpolant interpolant;
    double feasibility_margin = 0.0;  // smallest Pick eigenvalue at construction_norm
};

inline constexpr double kConstructionInflation = 1e-4;

/// min_norm, then the Schur construction at min_norm * (1 + inflation).
[[nodiscard]] inline PickSolution solve_pick(const PickProblem& problem, const MinNormOptions& opts = {},
                                             double inflation = kConstructionInflation) {
    PickSolution s;
    s.min_norm = min_norm(problem, opts);
    s.construction_norm = s.min_norm * (1.0 + inflation);
    s.interpolant = construct_interpolant(problem, s.construction_norm);
    s.feasibility_margin = smallest_eigenvalue(pick_matrix(problem, s.construction_norm));
    return s;
}

}  // namespace diskinterp
