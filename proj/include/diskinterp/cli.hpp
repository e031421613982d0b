#pragma once

// Command-line front end. Commands read a point-set document, run one of the
// library pipelines and write JSON (or CSV for `field`).
//
// Exit codes: 0 success, 1 invalid input or failed hypothesis, 2 numerical
// fault, 64 usage error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "generators.hpp"
#include "io.hpp"
#include "theorem_chain.hpp"

namespace diskinterp::cli {

enum ExitCode : int { kOk = 0, kDomainFailure = 1, kNumericalFault = 2, kUsage = 64 };

/// Usage problem detected after flag parsing (e.g. mismatched target count).
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::size_t grid_resolution = kDefaultGridResolution;
    std::size_t boundary_grid = 4096;
    double psd_tol = kPsdTolerance;
    double bisect_rel_tol = 1e-8;
    std::uint64_t seed = 0;
    std::string output_path;

    void validate() const {
        if (grid_resolution < 32 || grid_resolution > 4096) throw usage_error("grid_resolution must be in [32, 4096]");
        if (boundary_grid < 256 || boundary_grid > 1u << 20) throw usage_error("boundary_grid must be in [256, 1048576]");
        if (!(psd_tol > 0.0) || !(bisect_rel_tol > 0.0)) throw usage_error("tolerances must be positive");
    }

    [[nodiscard]] MinNormOptions solver_options() const {
        MinNormOptions o;
        o.psd_tol = psd_tol;
        o.rel_tol = bisect_rel_tol;
        return o;
    }
};

/// Levels from DISKINTERP_LOG: quiet (default), info, debug.
class Logger {
public:
    explicit Logger(std::ostream& err) : err_(err) {
        if (const char* env = std::getenv("DISKINTERP_LOG")) {
            const std::string v = env;
            level_ = v == "debug" ? 2 : v == "info" ? 1 : 0;
        }
    }
    void info(const std::string& msg) const {
        if (level_ >= 1) err_ << "[info] " << msg << '\n';
    }
    void debug(const std::string& msg) const {
        if (level_ >= 2) err_ << "[debug] " << msg << '\n';
    }

private:
    std::ostream& err_;
    int level_ = 0;
};

namespace detail {

inline PointSequence load_points(const std::string& path) {
    if (path == "-") return io::parse_document(std::cin);
    std::ifstream in(path);
    if (!in) throw io::document_error("cannot open " + path);
    return io::parse_document(in);
}

// "re" or "re:im"
inline complex parse_complex(const std::string& text) {
    const auto colon = text.find(':');
    try {
        std::size_t used = 0;
        if (colon == std::string::npos) {
            const double re = std::stod(text, &used);
            if (used != text.size()) throw usage_error("bad number: " + text);
            return {re, 0.0};
        }
        const std::string a = text.substr(0, colon);
        const std::string b = text.substr(colon + 1);
        std::size_t ua = 0;
        std::size_t ub = 0;
        const double re = std::stod(a, &ua);
        const double im = std::stod(b, &ub);
        if (ua != a.size() || ub != b.size()) throw usage_error("bad complex value: " + text);
        return {re, im};
    } catch (const std::logic_error&) {
        throw usage_error("bad complex value: " + text);
    }
}

inline void apply_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open config file " + path);
    io::json j;
    try {
        j = io::json::parse(in);
    } catch (const io::json::parse_error& e) {
        throw usage_error(std::string("invalid config file: ") + e.what());
    }
    // flags given on the command line win over the file
    const auto take = [&](const char* key, const char* flag, auto& field) {
        if (j.contains(key) && app.count(flag) == 0) field = j[key].get<std::remove_reference_t<decltype(field)>>();
    };
    take("grid_resolution", "--grid-resolution", cfg.grid_resolution);
    take("boundary_grid", "--boundary-grid", cfg.boundary_grid);
    take("psd_tol", "--psd-tol", cfg.psd_tol);
    take("bisect_rel_tol", "--bisect-rel-tol", cfg.bisect_rel_tol);
    take("seed", "--seed", cfg.seed);
    take("output_path", "--output", cfg.output_path);
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw io::document_error("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : fallback_; }

private:
    std::ostream& fallback_;
    std::unique_ptr<std::ofstream> file_;
};

inline void write_field_csv(std::ostream& os, const PointSequence& zeros, std::size_t resolution) {
    os << "x,y,log_modulus\n";
    const double h = 2.0 / static_cast<double>(resolution);
    for (std::size_t iy = 0; iy < resolution; ++iy) {
        const double y = -1.0 + h * static_cast<double>(iy);
        for (std::size_t ix = 0; ix < resolution; ++ix) {
            const complex z{-1.0 + h * static_cast<double>(ix), y};
            if (!(std::abs(z) < 0.999)) continue;
            bool near_zero = false;
            for (const DiskPoint& p : zeros) near_zero = near_zero || std::abs(z - p.value()) < 1e-6;
            const double v = near_zero ? std::numeric_limits<double>::quiet_NaN() : blaschke_log_modulus(zeros, z);
            os << io::format_double(z.real()) << ',' << io::format_double(z.imag()) << ','
               << io::format_double(v) << '\n';
        }
    }
}

}  // namespace detail

/// Parses arguments, runs the selected command and returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Blaschke products, Carleson constants, Pick interpolation and Hoffman decompositions "
                 "of finite sequences in the unit disk",
                 "diskinterp"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags take precedence)");
    app.add_option("--grid-resolution", cfg.grid_resolution, "Cartesian grid resolution for fits and fields");
    app.add_option("--boundary-grid", cfg.boundary_grid, "Boundary samples for sup-norm estimates");
    app.add_option("--psd-tol", cfg.psd_tol, "Pick PSD tolerance relative to trace scale");
    app.add_option("--bisect-rel-tol", cfg.bisect_rel_tol, "Bisection bracket width relative to the upper bound");
    app.add_option("--seed", cfg.seed, "Random seed");
    app.add_option("-o,--output", cfg.output_path, "Output file (default stdout)");

    std::string input;
    auto* analyze = app.add_subcommand("analyze", "Blaschke sum, separation and Carleson constants");
    analyze->add_option("input", input, "Point-set document ('-' for stdin)")->required();

    std::optional<double> delta;
    auto* decompose_cmd = app.add_subcommand("decompose", "delta-Hoffman decomposition (default delta = separation/2)");
    decompose_cmd->add_option("input", input, "Point-set document")->required();
    decompose_cmd->add_option("--delta", delta, "Exclusion radius delta in (0, 1)");

    std::vector<std::string> targets;
    std::string boundary_csv;
    auto* interpolate = app.add_subcommand("interpolate", "Minimal-norm bounded interpolant");
    interpolate->add_option("input", input, "Point-set document")->required();
    interpolate->add_option("--targets", targets, "Target values, 're' or 're:im', comma separated")
        ->required()
        ->delimiter(',');
    interpolate->add_option("--boundary-csv", boundary_csv, "Write the interpolant on the boundary grid");

    auto* verify = app.add_subcommand("verify-theorem", "Evaluate every inequality of the one-function criterion");
    verify->add_option("input", input, "Point-set document")->required();

    std::size_t pairs = 4;
    double gap = 0.01;
    double ratio = 0.5;
    std::vector<double> sweep;
    std::string points_out;
    auto* counter = app.add_subcommand("counterexample", "Close-pairs sequence with a declared even/odd split");
    counter->add_option("--pairs", pairs, "Number of close pairs")->capture_default_str();
    counter->add_option("--gap", gap, "Pseudohyperbolic gap inside each pair")->capture_default_str();
    counter->add_option("--ratio", ratio, "Radial ratio of the base points")->capture_default_str();
    counter->add_option("--gap-sweep", sweep, "Emit one summary row per gap")->delimiter(',');
    counter->add_option("--points-out", points_out, "Write the generated point-set document here");

    std::string which = "B";
    std::vector<std::size_t> part0;
    auto* field = app.add_subcommand("field", "CSV grid of log|B|, log|B0| or log|B1|");
    field->add_option("input", input, "Point-set document")->required();
    field->add_option("--which", which, "B, B0 or B1")->check(CLI::IsMember({"B", "B0", "B1"}));
    field->add_option("--part0", part0, "Indices of part0 (default: corresponding decomposition)")->delimiter(',');

    double radial_ratio = 0.5;
    std::size_t radial_count = 6;
    auto* radial = app.add_subcommand("radial", "Write the radial family 1 - ratio^n as a point-set document");
    radial->add_option("--ratio", radial_ratio)->capture_default_str();
    radial->add_option("--count", radial_count)->capture_default_str();

    std::vector<const char*> argv;
    argv.push_back("diskinterp");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    const Logger log(err);
    try {
        if (!config_path.empty()) detail::apply_config_file(config_path, cfg, app);
        cfg.validate();
        detail::Output sink(cfg.output_path, out);
        std::ostream& os = sink.stream();

        if (*analyze) {
            const PointSequence seq = detail::load_points(input);
            io::write_json(os, io::to_json(diskinterp::analyze(seq), seq));
            return kOk;
        }
        if (*decompose_cmd) {
            const PointSequence seq = detail::load_points(input);
            const double d = delta.value_or(separation_constant(seq) / 2.0);
            log.info("decomposing " + std::to_string(seq.size()) + " points at delta " + std::to_string(d));
            io::write_json(os, io::to_json(decompose(seq, d, cfg.grid_resolution)));
            return kOk;
        }
        if (*interpolate) {
            const PointSequence seq = detail::load_points(input);
            if (targets.size() != seq.size()) {
                throw usage_error(std::to_string(targets.size()) + " targets for " + std::to_string(seq.size()) +
                                  " points");
            }
            std::vector<complex> w;
            for (const std::string& t : targets) w.push_back(detail::parse_complex(t));
            const PickProblem problem(seq, w);
            const PickSolution sol = solve_pick(problem, cfg.solver_options());
            const RationalInterpolant& f = sol.interpolant;

            io::json j;
            j["min_norm"] = io::number(sol.min_norm);
            j["construction_norm"] = io::number(sol.construction_norm);
            j["feasibility_margin"] = io::number(sol.feasibility_margin);
            j["boundary_sup"] = io::number(sup_norm_boundary(f, cfg.boundary_grid));
            io::json res = io::json::array();
            for (std::size_t i = 0; i < seq.size(); ++i) {
                const complex v = f(seq[i].value());
                res.push_back(io::json{{"index", i},
                                       {"target", io::point_json(w[i])},
                                       {"value", io::point_json(v)},
                                       {"abs_error", io::number(std::abs(v - w[i]))}});
            }
            j["residuals"] = std::move(res);
            io::json steps = io::json::array();
            for (const SchurStep& s : f.schur_steps) {
                steps.push_back(io::json{{"node", io::point_json(s.node.value())},
                                         {"parameter", io::point_json(s.parameter)}});
            }
            j["schur_steps"] = std::move(steps);
            j["scale"] = io::number(f.scale);
            io::write_json(os, j);

            if (!boundary_csv.empty()) {
                std::ofstream csv(boundary_csv);
                if (!csv) throw io::document_error("cannot write " + boundary_csv);
                csv << "theta,re,im,modulus\n";
                for (std::size_t k = 0; k < cfg.boundary_grid; ++k) {
                    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                                         static_cast<double>(cfg.boundary_grid);
                    const complex v = f(std::polar(1.0, theta));
                    csv << io::format_double(theta) << ',' << io::format_double(v.real()) << ','
                        << io::format_double(v.imag()) << ',' << io::format_double(std::abs(v)) << '\n';
                }
            }
            return kOk;
        }
        if (*verify) {
            const PointSequence seq = detail::load_points(input);
            ChainOptions opts;
            opts.grid_resolution = cfg.grid_resolution;
            opts.boundary_grid = cfg.boundary_grid;
            opts.solver = cfg.solver_options();
            const ChainReport r = verify_theorem_chain(seq, opts);
            io::write_json(os, io::to_json(r));
            if (!r.hypothesis_ok) {
                err << "hypothesis failed: sequence is not separated above " << opts.separation_threshold << '\n';
                return kDomainFailure;
            }
            if (!r.hard_steps_pass()) {
                err << "numerical fault: a hard step of the chain failed\n";
                return kNumericalFault;
            }
            return kOk;
        }
        if (*counter) {
            if (sweep.empty()) sweep.push_back(gap);
            io::json rows = io::json::array();
            io::json last;
            for (double g : sweep) {
                const Counterexample ce = generate_counterexample({pairs, g, ratio}, cfg.grid_resolution);
                const double min_n = min_norm(zero_one_problem(ce.declared), cfg.solver_options());
                io::json row;
                row["gap"] = io::number(g);
                row["separation_constant"] = io::number(separation_constant(ce.sequence));
                row["carleson_constant"] = io::number(carleson_constant(ce.sequence));
                row["zero_one_min_norm"] = io::number(min_n);
                rows.push_back(row);
                last = io::json{{"points", io::to_document(ce.sequence)},
                                {"decomposition", io::to_json(ce.declared)},
                                {"summary", row}};
                if (!points_out.empty()) {
                    std::ofstream doc(points_out);
                    if (!doc) throw io::document_error("cannot write " + points_out);
                    io::write_json(doc, io::to_document(ce.sequence));
                }
            }
            io::write_json(os, sweep.size() == 1 ? last : io::json{{"rows", rows}});
            return kOk;
        }
        if (*field) {
            const PointSequence seq = detail::load_points(input);
            PointSequence zeros = seq;
            if (which != "B") {
                std::vector<std::size_t> p0 = part0;
                std::vector<std::size_t> p1;
                if (p0.empty()) {
                    const Decomposition d = corresponding_decomposition(seq, cfg.grid_resolution);
                    p0 = d.part0;
                    p1 = d.part1;
                } else {
                    std::vector<bool> in0(seq.size(), false);
                    for (std::size_t i : p0) {
                        if (i >= seq.size()) throw usage_error("part0 index out of range");
                        in0[i] = true;
                    }
                    for (std::size_t i = 0; i < seq.size(); ++i) {
                        if (!in0[i]) p1.push_back(i);
                    }
                    if (p1.empty()) throw usage_error("part0 must leave part1 nonempty");
                }
                zeros = seq.subset(which == "B0" ? p0 : p1);
            }
            detail::write_field_csv(os, zeros, cfg.grid_resolution);
            return kOk;
        }
        if (*radial) {
            io::write_json(os, io::to_document(generate_radial(radial_ratio, radial_count)));
            return kOk;
        }
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const numerical_error& e) {
        err << "numerical fault: " << e.what() << '\n';
        return kNumericalFault;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kDomainFailure;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kDomainFailure;
    }
    return kUsage;
}

}  // namespace diskinterp::cli
