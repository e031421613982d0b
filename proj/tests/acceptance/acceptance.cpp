// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "diskinterp.hpp"
#include "diskinterp/cli.hpp"
#include "diskinterp/io.hpp"
#include "oracle.hpp"

using namespace diskinterp;

namespace {

// Collects failure messages for one criterion.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && failures_.size() < 8) failures_.push_back(what);
        if (!ok) ++failed_;
    }
    [[nodiscard]] bool ok() const { return failed_ == 0; }
    [[nodiscard]] std::size_t checks() const { return checks_; }
    void report(std::ostream& os) const {
        for (const std::string& f : failures_) os << "      " << f << '\n';
        if (failed_ > failures_.size()) os << "      ... " << failed_ - failures_.size() << " more\n";
    }

private:
    std::size_t checks_ = 0;
    std::size_t failed_ = 0;
    std::vector<std::string> failures_;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

PointSequence random_sequence(std::mt19937_64& rng, std::size_t n) {
    while (true) {
        std::vector<complex> v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(oracle::random_point(rng, 0.95));
        try {
            return PointSequence::from_values(v);
        } catch (const invalid_point&) {
        }
    }
}

// ---------------------------------------------------------------------------

void geometry_suite(Check& c) {
    std::mt19937_64 rng(20261019);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> radius(0.01, 0.99);
    for (int i = 0; i < 10000; ++i) {
        const DiskPoint l{oracle::random_point(rng, 0.95)};
        const DiskPoint z{oracle::random_point(rng, 0.95)};
        const DiskPoint w{oracle::random_point(rng, 0.95)};

        const double boundary = std::abs(mobius_transform(l, std::polar(1.0, angle(rng))));
        c.expect(std::abs(boundary - 1.0) < 1e-12, "unimodularity: " + fmt(boundary));

        c.expect(pseudohyperbolic_distance(z, w) == pseudohyperbolic_distance(w, z), "symmetry");

        const double before = pseudohyperbolic_distance(z, w);
        const double after = pseudohyperbolic_distance(DiskPoint{mobius_transform(l, z.value())},
                                                       DiskPoint{mobius_transform(l, w.value())});
        c.expect(std::abs(after - before) < 1e-12, "invariance: " + fmt(after - before));

        const double delta = radius(rng);
        const PseudoDisk disk = pseudo_disk_euclidean(l, delta);
        const double pseudo = std::abs(mobius_transform(l, w.value())) - delta;
        const double euclid = std::abs(w.value() - disk.euclid_center) - disk.euclid_radius;
        if (std::abs(pseudo) > 1e-10 && std::abs(euclid) > 1e-10) {
            c.expect((pseudo < 0.0) == (euclid < 0.0), "disk membership disagreement");
        }
        for (const complex& s : sample_pseudo_circle(l, delta, 8)) {
            c.expect(std::abs(std::abs(mobius_transform(l, s)) - delta) < 1e-10, "circle point off |b| = delta");
        }
    }
}

void blaschke_oracle(Check& c) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const PointSequence s = random_sequence(rng, 2 + static_cast<std::size_t>(i) % 11);
        std::vector<complex> v;
        for (const DiskPoint& p : s) v.push_back(p.value());
        const double carleson = carleson_constant(s);
        const double sep = separation_constant(s);
        const double oc = oracle::carleson(v);
        const double os = oracle::separation(v);
        c.expect(std::abs(carleson - oc) <= 1e-12 * oc, "carleson " + fmt(carleson) + " vs " + fmt(oc));
        c.expect(std::abs(sep - os) <= 1e-12 * os, "separation " + fmt(sep) + " vs " + fmt(os));
        c.expect(carleson <= sep, "carleson > separation");
    }
}

void pick_oracle(Check& c) {
    for (int i = 1; i <= 9; ++i) {
        const double r = 0.1 * i;
        const std::vector<complex> nodes{0.0, r};
        const double m = min_norm(PickProblem(PointSequence::from_values(nodes), {0.0, 1.0}));
        c.expect(std::abs(m - 1.0 / r) <= 1e-7, "min_norm r=" + fmt(r) + ": " + fmt(m));
    }
    const std::vector<complex> origin{0.0};
    c.expect(min_norm(PickProblem(PointSequence::from_values(origin), {1.0})) == 1.0, "constant problem");

    std::mt19937_64 rng(3);
    int solved = 0;
    while (solved < 50) {
        const std::size_t n = 2 + static_cast<std::size_t>(solved) % 7;
        const PointSequence nodes = random_sequence(rng, n);
        if (separation_constant(nodes) < 0.05) continue;
        std::vector<complex> targets;
        for (std::size_t k = 0; k < n; ++k) targets.push_back(oracle::random_point(rng, 1.0));
        const PickProblem p(nodes, targets);
        const PickSolution s = solve_pick(p);
        const PickMatrix P = pick_matrix(p, s.min_norm);
        const double eig = smallest_eigenvalue(P);
        c.expect(std::abs(eig) <= 1e-6 * trace_scale(P), "criticality: eig " + fmt(eig));
        for (std::size_t k = 0; k < n; ++k) {
            const double err = std::abs(s.interpolant(nodes[k].value()) - targets[k]);
            c.expect(err <= 1e-8 * std::max(1.0, s.construction_norm), "target miss " + fmt(err));
        }
        const double sup = sup_norm_boundary(s.interpolant, 4096);
        c.expect(sup <= s.interpolant.scale * (1.0 + 1e-9), "boundary norm " + fmt(sup));
        ++solved;
    }
}

void weak_family(Check& c) {
    const PointSequence s = generate_radial(0.5, 8);
    for (const WeakFamilyMember& phi : weak_interpolation_family(s)) {
        for (std::size_t k = 0; k < s.size(); ++k) {
            const complex expect = k == phi.index() ? 1.0 : 0.0;
            c.expect(std::abs(phi(s[k].value()) - expect) <= 1e-10, "phi(lambda_k) != delta_nk");
        }
        const double target = 1.0 / std::abs(blaschke_eval_excluding(s, phi.index(), s[phi.index()].value()));
        const double sup = boundary_sup(phi, 4096);
        c.expect(std::abs(sup - target) <= 1e-6 * target, "sup " + fmt(sup) + " vs " + fmt(target));
    }
}

const std::vector<std::pair<double, std::size_t>>& radial_configs() {
    static const std::vector<std::pair<double, std::size_t>> configs = [] {
        std::vector<std::pair<double, std::size_t>> v;
        for (double ratio : {0.3, 0.5, 0.7}) {
            for (std::size_t n : {4u, 6u, 8u}) v.emplace_back(ratio, n);
        }
        return v;
    }();
    return configs;
}

void theorem_chain(Check& c) {
    for (const auto& [ratio, n] : radial_configs()) {
        const std::string tag = "radial(" + fmt(ratio) + "," + std::to_string(n) + ")";
        const ChainReport r = verify_theorem_chain(generate_radial(ratio, n));
        c.expect(r.hypothesis_ok, tag + " hypothesis");
        for (const ChainEntry& e : r.step_a) c.expect(e.margin >= -1e-6, tag + " step A margin " + fmt(e.margin));
        for (const ChainEntry& e : r.step_b) c.expect(e.margin >= -1e-6, tag + " step B margin " + fmt(e.margin));
        for (const ChainEntry& sc : r.step_c) {
            if (!sc.pass) continue;
            for (const ChainEntry& f : r.final) {
                if (f.index == sc.index) {
                    c.expect(f.bound <= r.carleson_direct * (1.0 + 1e-6),
                             tag + " final bound " + fmt(f.bound) + " > carleson " + fmt(r.carleson_direct));
                }
            }
        }
    }
}

double brute_force_min_b(const PointSequence& seq, const ExclusionGrid& grid) {
    const std::size_t n = seq.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<std::size_t> p0;
        std::vector<std::size_t> p1;
        for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? p0 : p1).push_back(i);
        const PointSequence s0 = seq.subset(p0);
        const PointSequence s1 = seq.subset(p1);
        best = std::min(best, comparability_fit(s0.points(), s1.points(), grid).b);
    }
    return best;
}

void hoffman_fit(Check& c) {
    for (const auto& [ratio, n] : radial_configs()) {
        const std::string tag = "radial(" + fmt(ratio) + "," + std::to_string(n) + ")";
        const PointSequence s = generate_radial(ratio, n);
        const Decomposition d = corresponding_decomposition(s);
        const PointSequence p0 = d.part0_points();
        const PointSequence p1 = d.part1_points();
        const std::size_t bad = sandwich_violations(p0.points(), p1.points(), d.grid, d.fitted_a, d.fitted_b);
        c.expect(bad == 0, tag + " " + std::to_string(bad) + " sandwich violations");
        c.expect(std::isfinite(d.fitted_b), tag + " b not finite");
        const double best = brute_force_min_b(s, d.grid);
        c.expect(std::abs(d.fitted_b - best) <= 1e-9 * best, tag + " b " + fmt(d.fitted_b) + " vs " + fmt(best));
    }
}

void counterexample(Check& c) {
    double prev_sep = std::numeric_limits<double>::infinity();
    double prev_carleson = std::numeric_limits<double>::infinity();
    double norm_first = 0.0;
    double norm_last = 0.0;
    for (double gap : {0.1, 0.01, 0.001}) {
        const Counterexample ce = generate_counterexample({4, gap, 0.5});
        const double sep = separation_constant(ce.sequence);
        const double carleson = carleson_constant(ce.sequence);
        c.expect(sep <= gap, "separation " + fmt(sep) + " > gap " + fmt(gap));
        c.expect(carleson <= gap, "carleson " + fmt(carleson) + " > gap " + fmt(gap));
        c.expect(sep < prev_sep && carleson < prev_carleson, "not monotone in gap");
        prev_sep = sep;
        prev_carleson = carleson;
        const double m = min_norm(zero_one_problem(ce.declared));
        if (gap == 0.1) norm_first = m;
        norm_last = m;
        std::cout << "      gap " << gap << ": separation " << sep << ", carleson " << carleson
                  << ", zero/one min_norm " << m << '\n';
    }
    c.expect(norm_last <= 2.0 * norm_first, "min_norm " + fmt(norm_last) + " > 2 x " + fmt(norm_first));
}

void cli_contract(Check& c) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "diskinterp_acceptance";
    fs::create_directories(dir);

    // round trip
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PointSequence s = generate_separated_random(1 + seed % 15, 0.05, seed);
        const std::string text = io::to_document(s).dump();
        const PointSequence back = io::parse_document(text);
        bool same = back.size() == s.size();
        for (std::size_t i = 0; same && i < s.size(); ++i) same = back[i].value() == s[i].value();
        c.expect(same, "round trip mismatch");
    }

    const auto write_doc = [&](const std::string& name, const PointSequence& s) {
        const fs::path p = dir / name;
        std::ofstream(p) << io::to_document(s).dump();
        return p.string();
    };
    const std::string bin = DISKINTERP_BIN;
    const auto run_bin = [&](const std::string& args, const std::string& out_name) {
        const std::string out = (dir / out_name).string();
        const int raw = std::system((bin + " " + args + " > " + out + " 2> /dev/null").c_str());
        std::ifstream in(out);
        std::stringstream ss;
        ss << in.rdbuf();
        return std::make_pair(WEXITSTATUS(raw), ss.str());
    };

    const std::string radial = write_doc("radial.json", generate_radial(0.5, 6));
    const auto [code_a, out_a] = run_bin("verify-theorem " + radial, "a.json");
    const auto [code_b, out_b] = run_bin("verify-theorem " + radial, "b.json");
    c.expect(code_a == 0, "verify-theorem radial exit " + std::to_string(code_a));
    c.expect(out_a == out_b && !out_a.empty(), "verify-theorem output not byte-identical");

    const std::vector<complex> pair{0.0, 0.5};
    const auto [code_two, out_two] = run_bin("analyze " + write_doc("two.json", PointSequence::from_values(pair)), "two.out");
    c.expect(code_two == 0, "analyze exit");
    c.expect(std::abs(io::json::parse(out_two)["carleson_constant"].get<double>() - 0.5) < 1e-15, "analyze value");

    const fs::path empty = dir / "empty.json";
    std::ofstream(empty) << R"({"schema_version":1,"points":[]})";
    c.expect(run_bin("analyze " + empty.string(), "e.out").first == 1, "empty document exit");
    c.expect(run_bin("interpolate " + write_doc("t.json", PointSequence::from_values(pair)) + " --targets 0,1,1", "m.out")
                     .first == 64,
             "mismatched targets exit");
    c.expect(run_bin("no-such-command", "u.out").first == 64, "usage exit");

    const Counterexample ce = generate_counterexample({4, 1e-7, 0.5}, 32);
    const auto [code_ce, out_ce] = run_bin("verify-theorem " + write_doc("ce.json", ce.sequence), "ce.out");
    c.expect(code_ce == 1, "counterexample exit " + std::to_string(code_ce));
    c.expect(!io::json::parse(out_ce)["hypothesis_ok"].get<bool>(), "counterexample hypothesis_ok");

    fs::remove_all(dir);
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> criteria{
        {"1 geometry suite (unimodularity, symmetry, invariance, disk agreement)", geometry_suite},
        {"2 Blaschke oracle equivalence (Carleson, separation)", blaschke_oracle},
        {"3 Pick solver analytic oracle, criticality, interpolation", pick_oracle},
        {"4 weak-interpolation family on radial(0.5, 8)", weak_family},
        {"5 one-function chain on radial families (steps A, B, final bound)", theorem_chain},
        {"6 Hoffman fit (zero violations, exhaustive optimum)", hoffman_fit},
        {"7 close-pairs counterexample sweep", counterexample},
        {"8 CLI contract (round trip, determinism, exit codes)", cli_contract},
    };

    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const Criterion& cr : criteria) {
        Check check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %s (%zu checks, %.2fs)\n", check.ok() ? "PASS" : "FAIL", cr.name, check.checks(),
                    secs);
        std::fflush(stdout);
        if (!check.ok()) {
            check.report(std::cout);
            ++failed;
        }
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of %zu criteria passed in %.2fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
                total);
    return failed == 0 ? 0 : 1;
}
