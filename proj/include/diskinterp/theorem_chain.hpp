#pragma once

// Numerical walk through the one-function criterion: a separated sequence
// with its corresponding Hoffman split Lambda = Lambda0 u Lambda1 is
// interpolating iff some bounded f has f = 0 on Lambda0 and f = 1 on Lambda1.
// Every inequality of the argument is evaluated at the sequence points.

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "hoffman.hpp"
#include "pick_solver.hpp"

namespace diskinterp {

/// Nodes = all points of the base sequence; targets 0 on part0, 1 on part1.
[[nodiscard]] inline PickProblem zero_one_problem(const Decomposition& dec) {
    if (dec.part0.empty() || dec.part1.empty()) throw domain_error("both parts must be nonempty");
    std::vector<complex> targets(dec.base.size(), complex{0.0, 0.0});
    for (std::size_t i : dec.part1) targets.at(i) = 1.0;
    return PickProblem(dec.base, std::move(targets));
}

/// One checked inequality value >= bound at a sequence point.
struct ChainEntry {
    std::size_t index = 0;
    complex point;
    double value = 0.0;
    double bound = 0.0;
    double margin = 0.0;  // value / bound - 1
    bool pass = false;
};

struct ChainReport {
    bool hypothesis_ok = false;
    std::size_t length = 0;
    double separation_constant = 0.0;
    double delta = 0.0;
    std::vector<std::size_t> part0;
    std::vector<std::size_t> part1;
    double min_norm = std::numeric_limits<double>::quiet_NaN();
    double c = std::numeric_limits<double>::quiet_NaN();
    double eta = std::numeric_limits<double>::quiet_NaN();
    double c_g = std::numeric_limits<double>::quiet_NaN();
    double eta_g = std::numeric_limits<double>::quiet_NaN();
    std::vector<ChainEntry> step_a;  // |B0(mu)| >= eta, mu in Lambda1
    std::vector<ChainEntry> step_b;  // |B1(mu)| >= eta_g, mu in Lambda0
    double fitted_a = std::numeric_limits<double>::quiet_NaN();
    double fitted_b = std::numeric_limits<double>::quiet_NaN();
    std::vector<ChainEntry> step_c;  // |B_{own part \ mu}(mu)| >= (a/delta) eta^{1/b}
    std::vector<ChainEntry> final;   // |B_{Lambda \ mu}(mu)| >= (a/delta) eta^{1+1/b}
    double carleson_direct = 0.0;

    [[nodiscard]] bool hard_steps_pass() const {
        for (const auto* steps : {&step_a, &step_b}) {
            for (const ChainEntry& e : *steps) {
                if (!e.pass) return false;
            }
        }
        return true;
    }
};

struct ChainOptions {
    std::size_t grid_resolution = kDefaultGridResolution;
    std::size_t boundary_grid = 4096;
    double separation_threshold = 1e-6;
    double tolerance = 1e-6;
    MinNormOptions solver;
};

namespace detail {

inline ChainEntry chain_entry(std::size_t index, complex point, double value, double bound, double tol) {
    const double margin = value / bound - 1.0;
    return {index, point, value, bound, margin, margin >= -tol};
}

// |prod over `part` minus `skip` of b_lambda(z)|
inline double partial_modulus(const PointSequence& seq, const std::vector<std::size_t>& part, std::size_t skip,
                              complex z) {
    double log_mod = 0.0;
    for (std::size_t k : part) {
        if (k != skip) log_mod += log_mobius_modulus(seq[k], z);
    }
    return std::exp(log_mod);
}

}  // namespace detail

[[nodiscard]] inline ChainReport verify_theorem_chain(const PointSequence& seq, const ChainOptions& opts = {}) {
    if (seq.size() < 2) throw domain_error("theorem chain needs at least two points");
    ChainReport r;
    r.length = seq.size();
    r.carleson_direct = carleson_constant(seq);
    r.separation_constant = separation_constant(seq);
    if (!(r.separation_constant > opts.separation_threshold)) return r;

    const Decomposition dec = corresponding_decomposition(seq, opts.grid_resolution);
    r.delta = dec.delta;
    r.hypothesis_ok = std::abs(r.delta - r.separation_constant / 2.0) <= 1e-12;
    r.part0 = dec.part0;
    r.part1 = dec.part1;
    r.fitted_a = dec.fitted_a;
    r.fitted_b = dec.fitted_b;
    if (!r.hypothesis_ok) return r;

    const PickSolution sol = solve_pick(zero_one_problem(dec), opts.solver);
    const RationalInterpolant& f = sol.interpolant;
    r.min_norm = sol.min_norm;
    r.c = sup_norm_boundary(f, opts.boundary_grid);
    r.eta = 1.0 / r.c;
    r.c_g = boundary_sup([&f](complex z) { return 1.0 - f(z); }, opts.boundary_grid);
    r.eta_g = 1.0 / r.c_g;

    const std::size_t none = seq.size();
    for (std::size_t mu : dec.part1) {
        const complex z = seq[mu].value();
        r.step_a.push_back(detail::chain_entry(mu, z, detail::partial_modulus(seq, dec.part0, none, z), r.eta,
                                               opts.tolerance));
    }
    for (std::size_t mu : dec.part0) {
        const complex z = seq[mu].value();
        r.step_b.push_back(detail::chain_entry(mu, z, detail::partial_modulus(seq, dec.part1, none, z), r.eta_g,
                                               opts.tolerance));
    }

    const double a_over_delta = r.fitted_a / r.delta;
    const double inv_b = 1.0 / r.fitted_b;
    const auto own_part_check = [&](const std::vector<std::size_t>& own, double eta) {
        for (std::size_t mu : own) {
            const complex z = seq[mu].value();
            r.step_c.push_back(detail::chain_entry(mu, z, detail::partial_modulus(seq, own, mu, z),
                                                   a_over_delta * std::pow(eta, inv_b), opts.tolerance));
        }
    };
    own_part_check(dec.part1, r.eta);
    own_part_check(dec.part0, r.eta_g);

    std::vector<bool> in1(seq.size(), false);
    for (std::size_t i : dec.part1) in1[i] = true;
    for (std::size_t mu = 0; mu < seq.size(); ++mu) {
        const double eta = in1[mu] ? r.eta : r.eta_g;
        r.final.push_back(detail::chain_entry(mu, seq[mu].value(), std::exp(log_excluded_at_node(seq, mu)),
                                              a_over_delta * std::pow(eta, 1.0 + inv_b), opts.tolerance));
    }
    return r;
}

struct TwoFunctionEtas {
    double eta1 = 0.0;  // min over Lambda1 of |B0(mu)|
    double eta2 = 0.0;  // min over Lambda0 of |B1(mu)|
};

/// The pair of Blaschke-product lower bounds that together suffice for the
/// argument; computed straight from the products.
[[nodiscard]] inline TwoFunctionEtas remark_two_functions_check(const Decomposition& dec) {
    if (dec.part0.empty() || dec.part1.empty()) throw domain_error("both parts must be nonempty");
    const std::size_t none = dec.base.size();
    TwoFunctionEtas out{1.0, 1.0};
    for (std::size_t mu : dec.part1) {
        out.eta1 = std::min(out.eta1, detail::partial_modulus(dec.base, dec.part0, none, dec.base[mu].value()));
    }
    for (std::size_t mu : dec.part0) {
        out.eta2 = std::min(out.eta2, detail::partial_modulus(dec.base, dec.part1, none, dec.base[mu].value()));
    }
    return out;
}

}  // namespace diskinterp
