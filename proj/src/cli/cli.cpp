#include "casimir/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "casimir/analysis.hpp"
#include "casimir/errors.hpp"
#include "casimir/fit.hpp"
#include "casimir/integrator.hpp"
#include "casimir/io.hpp"
#include "casimir/kernels.hpp"
#include "casimir/physics_model.hpp"
#include "casimir/sweep.hpp"

namespace casimir::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModelOptions {
    std::optional<std::string> preset;
    std::optional<std::string> config;
    std::optional<double> k;
    std::optional<double> area;
    std::optional<double> x0;
    std::optional<double> rho_s;
    std::optional<double> rho_volume;
    std::optional<double> thickness;
    std::optional<double> c_hat;
};

struct RunOptions {
    std::optional<double> dt;
    std::optional<double> periods;
    std::optional<std::size_t> steps;
    std::optional<double> u0;
    std::optional<double> v0;
    std::string method = "verlet";
};

struct OutputOptions {
    std::optional<std::string> out;
    std::optional<std::string> plot;
    bool json = false;
};

void add_model_options(CLI::App* cmd, ModelOptions& m) {
    cmd->add_option("--preset", m.preset, "Built-in parameter set (paper)");
    cmd->add_option("--config", m.config, "key = value parameter file; flags override it");
    cmd->add_option("--k", m.k, "Spring stiffness, N/m");
    cmd->add_option("--area", m.area, "Plate area, m^2");
    cmd->add_option("--x0", m.x0, "Free spring length / initial gap, m");
    cmd->add_option("--rho-s", m.rho_s, "Surface mass density, kg/m^2");
    cmd->add_option("--rho-volume", m.rho_volume, "Plate volume density, kg/m^3");
    cmd->add_option("--thickness", m.thickness, "Plate thickness, m");
    cmd->add_option("--c-hat", m.c_hat, "Override the dimensionless Casimir coefficient");
}

void add_run_options(CLI::App* cmd, RunOptions& r) {
    cmd->add_option("--dt", r.dt, "Time step in units of t*");
    cmd->add_option("--periods", r.periods, "Run length in unperturbed periods (2 pi t*)");
    cmd->add_option("--steps", r.steps, "Number of steps (overrides --periods)");
    cmd->add_option("--u0", r.u0, "Initial (x - x0) / x0");
    cmd->add_option("--v0", r.v0, "Initial velocity, x0 / t*");
}

/// Flag value, else config file value, else nothing.
class Settings {
public:
    explicit Settings(const std::optional<std::string>& config_path) {
        if (!config_path)
            return;
        std::ifstream in(*config_path);
        if (!in)
            throw UsageError("cannot open config file '" + *config_path + "'");
        try {
            file_ = io::parse_key_value(in);
        } catch (const ParseError& e) {
            throw UsageError(*config_path + ": " + e.what());
        }
        if (!file_.sections.empty())
            throw UsageError(*config_path + ": sections are only allowed in sweep files");
        path_ = *config_path;
    }

    std::optional<double> number(const std::optional<double>& flag, const std::string& key) const {
        if (flag)
            return flag;
        const auto it = file_.globals.values.find(key);
        if (it == file_.globals.values.end())
            return std::nullopt;
        try {
            return io::parse_double(it->second);
        } catch (const DomainError& e) {
            throw UsageError(path_ + ":" + std::to_string(file_.globals.lines.at(key)) + ": " +
                             key + ": " + e.what());
        }
    }

    std::optional<std::string> text(const std::optional<std::string>& flag,
                                    const std::string& key) const {
        if (flag)
            return flag;
        const auto it = file_.globals.values.find(key);
        if (it == file_.globals.values.end())
            return std::nullopt;
        return it->second;
    }

    void reject_unknown(const std::vector<std::string>& known) const {
        for (const auto& [key, value] : file_.globals.values) {
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw UsageError(path_ + ":" + std::to_string(file_.globals.lines.at(key)) +
                                 ": unknown key '" + key + "'");
        }
    }

    const std::string& path() const { return path_; }

private:
    io::KeyValueFile file_;
    std::string path_;
};

const std::vector<std::string> kConfigKeys = {"preset", "k",  "area",  "x0",      "rho_s",
                                              "rho_volume", "thickness", "c_hat", "dt",
                                              "periods", "steps", "u0", "v0"};

struct ResolvedModel {
    Device device;
    std::string rho_s_source;
    std::vector<std::string> warnings;
};

ResolvedModel resolve_model(const ModelOptions& m, const Settings& s) {
    ResolvedModel r;
    const auto preset = s.text(m.preset, "preset");
    const auto k = s.number(m.k, "k");
    const auto area = s.number(m.area, "area");
    const auto x0 = s.number(m.x0, "x0");
    const auto rho_s = s.number(m.rho_s, "rho_s");
    const auto rho_volume = s.number(m.rho_volume, "rho_volume");
    const auto thickness = s.number(m.thickness, "thickness");
    const auto c_hat = s.number(m.c_hat, "c_hat");

    std::optional<PhysicalParams> base;
    if (preset) {
        if (*preset != "paper")
            throw UsageError("unknown preset '" + *preset + "' (available: paper)");
        r.device = preset::paper();
        r.rho_s_source = "preset";
        base = r.device.physical;
    }

    const bool overrides = k || area || x0 || rho_s || rho_volume || thickness;
    if (overrides || !preset) {
        PhysicalParams p = base.value_or(PhysicalParams{});
        if (k)
            p.k = *k;
        if (area)
            p.area = *area;
        if (x0)
            p.x0 = *x0;
        if (!base && (!k || !area || !x0))
            throw UsageError("missing required parameter: --k, --area and --x0 (or --preset)");
        if (rho_s) {
            p.rho_s = *rho_s;
            r.rho_s_source = "rho_s";
        } else if (rho_volume || thickness) {
            if (!rho_volume || !thickness)
                throw UsageError("--rho-volume and --thickness must be given together");
            p.rho_s = surface_density(*rho_volume, *thickness);
            r.rho_s_source = "rho_volume*thickness";
        } else if (!base) {
            p.rho_s = surface_density(preset::copper_density, preset::plate_thickness);
            r.rho_s_source = "default copper plate, 1 um";
        }
        r.device = make_device(p);
        r.device.label = preset ? *preset + "+overrides" : "custom";
    }
    if (c_hat) {
        if (!(*c_hat >= 0.0) || !std::isfinite(*c_hat))
            throw UsageError("--c-hat must be non-negative");
        r.device.scaled.c_hat = *c_hat;
        r.device.label += "+c_hat";
    }
    r.warnings = r.device.physical.validity_warnings();
    return r;
}

SimConfig resolve_run(const RunOptions& ro, const Settings& s, const Device& device) {
    SimConfig cfg;
    cfg.c_hat = device.scaled.c_hat;
    cfg.dt = s.number(ro.dt, "dt").value_or(default_time_step);
    cfg.u0 = s.number(ro.u0, "u0").value_or(0.0);
    cfg.v0 = s.number(ro.v0, "v0").value_or(0.0);
    const auto periods = s.number(ro.periods, "periods");
    std::optional<double> steps;
    if (ro.steps)
        steps = static_cast<double>(*ro.steps);
    else
        steps = s.number(std::nullopt, "steps");
    if (steps) {
        if (!(*steps >= 0.0) || *steps != std::floor(*steps))
            throw UsageError("steps must be a non-negative integer");
        cfg.n_steps = static_cast<std::size_t>(*steps);
    } else {
        if (!(cfg.dt > 0.0))
            throw UsageError("--dt must be positive");
        cfg.n_steps = SimConfig::steps_for_periods(periods.value_or(default_periods), cfg.dt);
    }
    cfg.validate();
    return cfg;
}

Json manifest(const std::string& command, const Settings& s, const std::optional<ResolvedModel>& model,
              const std::vector<std::string>& outputs) {
    Json j;
    j["tool"] = "casimir";
    j["version"] = tool_version;
    j["command"] = command;
    j["config"] = s.path().empty() ? Json(nullptr) : Json(s.path());
    if (model) {
        j["parameters"] = io::to_json(model->device);
        if (!model->rho_s_source.empty())
            j["rho_s_source"] = model->rho_s_source;
        j["warnings"] = model->warnings;
    }
    j["outputs"] = outputs;
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw UsageError("cannot write '" + path + "'");
    os << content;
    if (!os)
        throw UsageError("error writing '" + path + "'");
}

void write_manifest_for(const std::string& output_path, Json m) {
    write_file(output_path + ".manifest.json", m.dump(2) + "\n");
}

void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& content) {
    if (path)
        write_file(*path, content);
    else
        out << content;
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings)
        err << "warning: " << w << "\n";
}

std::vector<std::string> output_list(const OutputOptions& o) {
    std::vector<std::string> v;
    if (o.out)
        v.push_back(*o.out);
    if (o.plot)
        v.push_back(*o.plot);
    return v;
}

// ---- analyze ---------------------------------------------------------------

int cmd_analyze(const ModelOptions& m, const OutputOptions& o, std::ostream& out, std::ostream& err) {
    const Settings s(m.config);
    s.reject_unknown(kConfigKeys);
    const ResolvedModel model = resolve_model(m, s);
    print_warnings(err, model.warnings);

    const EquilibriumReport report = solve_equilibrium(model.device);
    Json doc = io::to_json(report);
    if (report.stable) {
        const HarmonicExpansion h = harmonic_expansion(model.device);
        doc["harmonic"] = {{"v_min", h.v_min}, {"k_eff_hat", h.k_eff_hat}, {"omega_hat", h.omega_hat}};
        try {
            const TurningPoint tp = solve_turning_point(model.device);
            doc["turning_point"] = {{"x_turn", tp.x_turn}, {"margin", tp.margin},
                                    {"displacement", tp.displacement}};
        } catch (const CollapseError&) {
            doc["turning_point"] = nullptr;
        }
    }
    const Json man = manifest("analyze", s, model, output_list(o));
    if (o.out)
        write_manifest_for(*o.out, man);
    doc["manifest"] = man;
    emit(out, o.out, doc.dump(2) + "\n");
    if (!report.stable) {
        err << "pull-in: k = " << model.device.physical.k << " N/m is not above k_crit = "
            << report.k_crit << " N/m\n";
        return exit_unstable;
    }
    return exit_ok;
}

// ---- simulate --------------------------------------------------------------

int cmd_simulate(const ModelOptions& m, const RunOptions& ro, const OutputOptions& o,
                 std::ostream& out, std::ostream& err) {
    const Settings s(m.config);
    s.reject_unknown(kConfigKeys);
    const ResolvedModel model = resolve_model(m, s);
    print_warnings(err, model.warnings);
    const SimConfig cfg = resolve_run(ro, s, model.device);

    Trajectory traj;
    if (ro.method == "verlet")
        traj = verlet_integrate(cfg);
    else if (ro.method == "rk4")
        traj = rk4_integrate(cfg);
    else
        throw UsageError("unknown --method '" + ro.method + "' (verlet, rk4)");

    std::ostringstream csv;
    io::write_trajectory_csv(csv, traj);
    emit(out, o.out, csv.str());
    if (o.plot)
        write_file(*o.plot, io::trajectory_svg(traj));

    Json man = manifest("simulate", s, model, output_list(o));
    man["simulation"] = {{"method", ro.method}, {"dt", cfg.dt},   {"n_steps", cfg.n_steps},
                         {"u0", cfg.u0},        {"v0", cfg.v0},   {"c_hat", cfg.c_hat},
                         {"collapsed", traj.collapsed}};
    if (o.out)
        write_manifest_for(*o.out, man);
    if (o.plot)
        write_manifest_for(*o.plot, man);

    if (traj.collapsed) {
        err << "pull-in: plates touched at tau = "
            << (traj.times.empty() ? 0.0 : traj.times.back()) << "\n";
        return exit_unstable;
    }
    return exit_ok;
}

// ---- fit -------------------------------------------------------------------

int cmd_fit(const std::string& input, const OutputOptions& o, std::ostream& out,
            std::istream& in_default) {
    Trajectory traj;
    try {
        if (input == "-") {
            traj = io::read_trajectory_csv(in_default);
        } else {
            std::ifstream in(input);
            if (!in)
                throw UsageError("cannot open '" + input + "'");
            traj = io::read_trajectory_csv(in);
        }
    } catch (const ParseError& e) {
        throw UsageError(input + ":" + std::to_string(e.line()) + ": " +
                         std::string(e.what()).substr(std::string(e.what()).find(':') + 2));
    }
    const FitResult fit = fit_sinusoid(traj);
    Json doc = io::to_json(fit);
    Json man;
    man["tool"] = "casimir";
    man["version"] = tool_version;
    man["command"] = "fit";
    man["input"] = input;
    man["samples"] = traj.size();
    man["outputs"] = output_list(o);
    if (o.out)
        write_manifest_for(*o.out, man);
    doc["manifest"] = man;
    emit(out, o.out, doc.dump(2) + "\n");
    return exit_ok;
}

// ---- sweep -----------------------------------------------------------------

SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open sweep file '" + path + "'");
    io::KeyValueFile file;
    try {
        file = io::parse_key_value(in);
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
    const auto where = [&](const io::KeyValueSection& sec, const std::string& key) {
        const auto it = sec.lines.find(key);
        return path + ":" + std::to_string(it == sec.lines.end() ? sec.line : it->second) + ": ";
    };
    const auto num = [&](const io::KeyValueSection& sec, const std::string& key) -> std::optional<double> {
        const auto it = sec.values.find(key);
        if (it == sec.values.end())
            return std::nullopt;
        try {
            return io::parse_double(it->second);
        } catch (const DomainError& e) {
            throw UsageError(where(sec, key) + key + ": " + e.what());
        }
    };
    const auto known = [&](const io::KeyValueSection& sec, const std::vector<std::string>& keys) {
        for (const auto& [key, value] : sec.values)
            if (std::find(keys.begin(), keys.end(), key) == keys.end())
                throw UsageError(where(sec, key) + "unknown key '" + key + "'");
    };

    const auto& g = file.globals;
    known(g, {"k", "area", "x0", "rho_s", "rho_volume", "thickness", "simulate", "dt", "periods"});
    SweepSpec spec;
    spec.fixed.k = num(g, "k").value_or(preset::paper_k);
    spec.fixed.area = num(g, "area").value_or(preset::paper_area);
    spec.fixed.x0 = num(g, "x0").value_or(preset::paper_x0);
    if (const auto rs = num(g, "rho_s")) {
        spec.fixed.rho_s = *rs;
    } else {
        spec.fixed.rho_s =
            surface_density(num(g, "rho_volume").value_or(preset::copper_density),
                            num(g, "thickness").value_or(preset::plate_thickness));
    }
    if (const auto it = g.values.find("simulate"); it != g.values.end()) {
        if (it->second == "true" || it->second == "1")
            spec.simulate = true;
        else if (it->second == "false" || it->second == "0")
            spec.simulate = false;
        else
            throw UsageError(where(g, "simulate") + "simulate must be true or false");
    }
    spec.dt = num(g, "dt").value_or(default_time_step);
    spec.periods = num(g, "periods").value_or(default_periods);

    for (const auto& sec : file.sections) {
        std::istringstream words(sec.name);
        std::string kind, name;
        words >> kind >> name;
        if (kind != "axis" || name.empty())
            throw UsageError(path + ":" + std::to_string(sec.line) +
                             ": expected a section named [axis k|area|x0]");
        known(sec, {"min", "max", "count", "spacing"});
        const auto axis = parse_axis(name);
        if (!axis)
            throw UsageError(path + ":" + std::to_string(sec.line) + ": unknown axis '" + name + "'");
        AxisSpec a;
        a.axis = *axis;
        const auto mn = num(sec, "min");
        const auto mx = num(sec, "max");
        const auto count = num(sec, "count");
        if (!mn || !mx || !count)
            throw UsageError(path + ":" + std::to_string(sec.line) + ": axis needs min, max and count");
        if (*count < 2 || *count != std::floor(*count))
            throw UsageError(where(sec, "count") + "count must be an integer >= 2");
        a.min = *mn;
        a.max = *mx;
        a.count = static_cast<std::size_t>(*count);
        if (const auto it = sec.values.find("spacing"); it != sec.values.end()) {
            if (it->second == "log")
                a.spacing = Spacing::log;
            else if (it->second == "linear")
                a.spacing = Spacing::linear;
            else
                throw UsageError(where(sec, "spacing") + "spacing must be linear or log");
        }
        spec.axes.push_back(a);
    }
    try {
        spec.validate();
    } catch (const DomainError& e) {
        throw UsageError(path + ": " + e.what());
    }
    return spec;
}

int cmd_sweep(const std::string& spec_path, unsigned threads, const std::optional<std::string>& boundary_path,
              const OutputOptions& o, std::ostream& out) {
    const SweepSpec spec = load_sweep_spec(spec_path);
    const auto rows = run_sweep(spec, threads);
    emit(out, o.out, sweep_csv(spec, rows));

    std::vector<std::string> outputs = output_list(o);
    if (boundary_path) {
        if (spec.axes.size() != 2)
            throw UsageError("--boundary needs a sweep with exactly two axes");
        std::string csv;
        csv += std::string(axis_name(spec.axes[0].axis)) + "," +
               std::string(axis_name(spec.axes[1].axis)) + "\n";
        for (const auto& p : stability_boundary(spec, rows))
            csv += io::format_double(p.first) + "," + io::format_double(p.second) + "\n";
        write_file(*boundary_path, csv);
        outputs.push_back(*boundary_path);
    }
    Json man;
    man["tool"] = "casimir";
    man["version"] = tool_version;
    man["command"] = "sweep";
    man["spec"] = spec_path;
    man["fixed"] = {{"k", spec.fixed.k},
                    {"area", spec.fixed.area},
                    {"x0", spec.fixed.x0},
                    {"rho_s", spec.fixed.rho_s}};
    man["simulate"] = spec.simulate;
    man["rows"] = rows.size();
    man["outputs"] = outputs;
    for (const auto& path : outputs)
        write_manifest_for(path, man);
    return exit_ok;
}

// ---- paper-repro -----------------------------------------------------------

struct Check {
    std::string name;
    double computed = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    std::string rule; ///< "abs", "rel" or "min"
    bool pass = false;
};

Check check_abs(std::string name, double computed, double reference, double tol) {
    return {std::move(name), computed, reference, tol, "abs", std::abs(computed - reference) <= tol};
}

Check check_rel(std::string name, double computed, double reference, double tol) {
    return {std::move(name), computed, reference, tol, "rel",
            std::abs(computed / reference - 1.0) <= tol};
}

Check check_min(std::string name, double computed, double floor) {
    return {std::move(name), computed, floor, 0.0, "min", computed >= floor};
}

int cmd_paper_repro(const RunOptions& ro, bool json, std::ostream& out) {
    const double dt = ro.dt.value_or(default_time_step);
    if (!(dt > 0.0))
        throw UsageError("--dt must be positive");
    const double periods = ro.periods.value_or(default_periods);

    PhysicalParams copper;
    copper.k = preset::paper_k;
    copper.area = preset::paper_area;
    copper.x0 = preset::paper_x0;
    copper.rho_s = surface_density(preset::copper_density, preset::plate_thickness);
    const DimensionlessParams derived = nondimensionalize(copper);

    const Device paper = preset::paper();
    const EquilibriumReport eq = solve_equilibrium(paper);
    const TurningPoint tp = solve_turning_point(paper);

    SimConfig cfg;
    cfg.c_hat = paper.scaled.c_hat;
    cfg.dt = dt;
    cfg.n_steps = SimConfig::steps_for_periods(periods, dt);
    const Trajectory traj = verlet_integrate(cfg);
    double sim_min = *std::min_element(traj.u.begin(), traj.u.end());
    for (const auto& t : detect_turning_points(traj))
        if (t.kind == TurningKind::minimum)
            sim_min = std::min(sim_min, t.u);
    const FitResult fit = fit_sinusoid(traj);

    std::vector<Check> checks;
    checks.push_back(check_rel("b [1/s^2]", derived.b, 1.121e14, 1e-3));
    checks.push_back(check_rel("c [m^5/s^2]", derived.c_cas, 1.459e-25, 3e-3));
    checks.push_back(check_abs("1 - x_eq/x0", eq.displacement_stable.value_or(NAN), 1.302e-9, 2e-12));
    checks.push_back(check_abs("1 - x_turn/x0 (analytic)", tp.displacement, 2.604e-9, 2e-11));
    checks.push_back(check_abs("1 - x_min/x0 (simulated)", -sim_min, 2.604e-9, 2e-11));
    checks.push_back(check_abs("Amp", fit.amp, 1.302e-9, 0.005e-9));
    checks.push_back(check_abs("omega [1/t*]", fit.omega, 1.000, 0.001));
    checks.push_back(check_min("r^2", fit.r2, 0.9999));
    const bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });

    if (json) {
        Json doc;
        doc["dt"] = dt;
        doc["n_steps"] = cfg.n_steps;
        Json arr = Json::array();
        for (const auto& c : checks)
            arr.push_back({{"name", c.name},
                           {"computed", c.computed},
                           {"reference", c.reference},
                           {"tolerance", c.tolerance},
                           {"rule", c.rule},
                           {"pass", c.pass}});
        doc["checks"] = arr;
        doc["fit"] = io::to_json(fit);
        doc["all_pass"] = all;
        doc["manifest"] = {{"tool", "casimir"},
                           {"version", tool_version},
                           {"command", "paper-repro"},
                           {"parameters", io::to_json(paper)}};
        out << doc.dump(2) << "\n";
    } else {
        out << "preset: c_hat = " << io::format_double(paper.scaled.c_hat)
            << ", dt = " << io::format_double(dt) << ", steps = " << cfg.n_steps << "\n";
        out << std::left << std::setw(28) << "quantity" << std::setw(26) << "computed"
            << std::setw(14) << "reference" << std::setw(14) << "tolerance" << "result\n";
        for (const auto& c : checks) {
            std::ostringstream tol;
            if (c.rule == "min")
                tol << ">= ref";
            else if (c.rule == "rel")
                tol << c.tolerance * 100.0 << " %";
            else
                tol << c.tolerance;
            std::ostringstream ref;
            ref << c.reference;
            out << std::left << std::setw(28) << c.name << std::setw(26)
                << io::format_double(c.computed) << std::setw(14) << ref.str() << std::setw(14)
                << tol.str() << (c.pass ? "PASS" : "FAIL") << "\n";
        }
        out << (all ? "all checks passed\n" : "some checks FAILED\n");
    }
    return all ? exit_ok : exit_check_failed;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Casimir-driven micro-spring oscillator: equilibria, pull-in and dynamics",
                 args.empty() ? "casimir" : args.front()};
    app.require_subcommand(1);
    bool show_isa = false;
    app.add_flag("--isa", show_isa, "Print the active kernel instruction set to stderr");

    ModelOptions analyze_model;
    OutputOptions analyze_out;
    auto* analyze = app.add_subcommand("analyze", "Equilibria, stability and turning point (JSON)");
    add_model_options(analyze, analyze_model);
    analyze->add_option("--out", analyze_out.out, "Write the report here instead of stdout");
    analyze->add_flag("--json", analyze_out.json, "JSON output (always on; accepted for symmetry)");

    ModelOptions sim_model;
    RunOptions sim_run;
    OutputOptions sim_out;
    auto* simulate = app.add_subcommand("simulate", "Integrate the motion and write tau,u,v,energy CSV");
    add_model_options(simulate, sim_model);
    add_run_options(simulate, sim_run);
    simulate->add_option("--method", sim_run.method, "verlet (default) or rk4");
    simulate->add_option("--out", sim_out.out, "CSV path (default stdout)");
    simulate->add_option("--plot", sim_out.plot, "Also write an SVG plot here");

    std::string fit_input;
    OutputOptions fit_out;
    auto* fit = app.add_subcommand("fit", "Fit amp (cos(omega tau) - 1) to a trajectory CSV");
    fit->add_option("trajectory", fit_input, "CSV file from 'simulate' ('-' for stdin)")->required();
    fit->add_option("--out", fit_out.out, "JSON path (default stdout)");
    fit->add_flag("--json", fit_out.json, "JSON output (always on; accepted for symmetry)");

    std::string sweep_spec;
    unsigned sweep_threads = 1;
    std::optional<std::string> sweep_boundary;
    OutputOptions sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Stability map over a (k, area, x0) grid");
    sweep->add_option("spec", sweep_spec, "Sweep file: key = value globals plus [axis NAME] blocks")
        ->required();
    sweep->add_option("--threads", sweep_threads, "Worker threads");
    sweep->add_option("--boundary", sweep_boundary, "Write stability-boundary midpoints (2 axes)");
    sweep->add_option("--out", sweep_out.out, "CSV path (default stdout)");

    RunOptions repro_run;
    bool repro_json = false;
    auto* repro = app.add_subcommand("paper-repro", "Run the built-in preset end to end and compare");
    repro->add_option("--dt", repro_run.dt, "Time step in units of t*");
    repro->add_option("--periods", repro_run.periods, "Run length in periods");
    repro->add_flag("--json", repro_json, "Machine-readable report");

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_input_error;
    }
    if (show_isa)
        err << "kernels: " << kernels::isa_name(kernels::active_isa()) << "\n";

    try {
        if (analyze->parsed())
            return cmd_analyze(analyze_model, analyze_out, out, err);
        if (simulate->parsed())
            return cmd_simulate(sim_model, sim_run, sim_out, out, err);
        if (fit->parsed())
            return cmd_fit(fit_input, fit_out, out, std::cin);
        if (sweep->parsed())
            return cmd_sweep(sweep_spec, sweep_threads, sweep_boundary, sweep_out, out);
        if (repro->parsed())
            return cmd_paper_repro(repro_run, repro_json, out);
    } catch (const UnstableConfigurationError& e) {
        err << "pull-in: " << e.what() << "\n";
        return exit_unstable;
    } catch (const CollapseError& e) {
        err << "pull-in: " << e.what() << "\n";
        return exit_unstable;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    return exit_input_error;
}

} // namespace casimir::cli
