// Copyright 2026 The ftre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ftre: fault-tolerant resource estimation from the command line.
//
//   ftre estimate    --circuit c.qasm --arch preset:DSM-fold@current --error 0.01 --out out/
//   ftre sweep       --circuit synthetic:60x1 --arch DSM --factories 1,5,10 --out out/
//   ftre sensitivity --circuit c.qasm --arch preset:DSM@current --out out/
//   ftre layout      --strategy sandwich --data 20 --factories-t 5 --out out/
//   ftre table       --arch preset:SSM@current --d 11

#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ftre/ftre.hpp"

namespace {

using namespace ftre;

struct CommonFlags {
    std::string circuit;
    std::string arch = "preset:DSM@current";
    double error = 0.01;
    std::string budget = "halving";
    std::optional<std::uint32_t> factories_t;
    std::optional<std::uint32_t> factories_s;
    std::string layout;
    std::optional<int> d;
    std::string folded;
    std::string decoding;
    std::string speeds;
    std::string out = ".";
};

void add_arch_flags(CLI::App *cmd, CommonFlags &f) {
    cmd->add_option("--arch", f.arch, "preset:NAME[-fold][@current|@proposed] or an architecture JSON file");
    cmd->add_option("--factories-t", f.factories_t, "number of T factories");
    cmd->add_option("--factories-s", f.factories_s, "number of S factories (lattice surgery)");
    cmd->add_option("--layout", f.layout, "dense, column, embedded or sandwich");
    cmd->add_option("--d", f.d, "code distance (overrides the budget's choice)");
    cmd->add_option("--folded", f.folded, "on or off");
    cmd->add_option("--decoding", f.decoding, "correlated or standard");
    cmd->add_option("--speeds", f.speeds, "current or proposed");
}

void add_run_flags(CLI::App *cmd, CommonFlags &f) {
    cmd->add_option("--circuit", f.circuit, "QASM file, native JSON file, or synthetic:<qubits>x<steps>")->required();
    cmd->add_option("--error", f.error, "target circuit error in (0, 1)");
    cmd->add_option("--budget", f.budget, "halving or grid");
    cmd->add_option("--out", f.out, "output directory");
    add_arch_flags(cmd, f);
}

SpeedColumn parse_speeds(const std::string &s) {
    if (s == "current") {
        return SpeedColumn::current;
    }
    if (s == "proposed") {
        return SpeedColumn::proposed;
    }
    fail(ErrorKind::config, "--speeds expects current or proposed, got '" + s + "'");
}

bool parse_folded(const std::string &s) {
    if (s == "on" || s == "F") {
        return true;
    }
    if (s == "off" || s == "U") {
        return false;
    }
    fail(ErrorKind::config, "--folded expects on or off, got '" + s + "'");
}

Decoding parse_decoding(const std::string &s) {
    if (s == "correlated" || s == "C") {
        return Decoding::correlated;
    }
    if (s == "standard" || s == "S") {
        return Decoding::standard;
    }
    fail(ErrorKind::config, "--decoding expects correlated or standard, got '" + s + "'");
}

LayoutStrategy parse_layout(const std::string &s) {
    auto l = layout_strategy_from_name(s);
    if (!l) {
        fail(ErrorKind::config, "--layout expects dense, column, embedded or sandwich, got '" + s + "'");
    }
    return *l;
}

BudgetMode parse_budget(const std::string &s) {
    if (s == "halving") {
        return BudgetMode::halving;
    }
    if (s == "grid" || s == "sensitivity") {
        return BudgetMode::grid;
    }
    fail(ErrorKind::config, "--budget expects halving or grid, got '" + s + "'");
}

ArchOverrides overrides_from(const CommonFlags &f) {
    ArchOverrides o;
    if (!f.speeds.empty()) o.speeds = parse_speeds(f.speeds);
    if (!f.folded.empty()) o.folded = parse_folded(f.folded);
    if (!f.decoding.empty()) o.decoding = parse_decoding(f.decoding);
    if (!f.layout.empty()) o.layout = parse_layout(f.layout);
    o.d = f.d;
    o.t_factories = f.factories_t;
    o.s_factories = f.factories_s;
    return o;
}

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::string fmt(const char *format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

void print_summary(const ResourceReport &r) {
    std::cout << "architecture      " << r.architecture << " (" << r.layout_strategy << " layout)\n"
              << "code distance     " << r.d << " (" << r.syndrome_rounds << " syndrome round"
              << (r.syndrome_rounds == 1 ? "" : "s") << ")\n"
              << "factories         T " << r.t_factories << ", S " << r.s_factories << "\n"
              << "logical qubits    " << r.logical_qubits << "\n"
              << "physical qubits   " << r.physical_qubits << "\n"
              << "critical path     " << round_us(to_us(r.critical_path)) << " us ("
              << humanize_seconds(to_us(r.critical_path) * 1e-6) << ")\n"
              << "serial bound      " << round_us(to_us(r.serial)) << " us ("
              << humanize_seconds(to_us(r.serial) * 1e-6) << ")\n"
              << "cultivation share " << fmt("%.4f", r.cultivation_fraction()) << "\n"
              << "budget            eps_rz " << fmt("%.3g", r.budget.eps_rz) << ", eps_m "
              << fmt("%.3g", r.budget.eps_m) << ", eps_l " << fmt("%.3g", r.budget.eps_l) << ", rep "
              << fmt("%g", r.budget.rep) << ", F " << fmt("%.6f", r.budget.fidelity) << "\n"
              << "fingerprint       " << r.fingerprint << "\n";
}

void print_infeasible(const InfeasibleBudget &e) {
    const auto &b = e.best_infeasible();
    std::cerr << "best infeasible point: d " << b.d << ", eps_rz " << fmt("%.3g", b.eps_rz) << ", eps_m "
              << fmt("%.3g", b.eps_m) << ", eps_l " << fmt("%.3g", b.eps_l) << ", F " << fmt("%.9f", b.fidelity)
              << "\n";
}

int cmd_estimate(const CommonFlags &f, bool emit_intermediate) {
    Circuit c = load_circuit(f.circuit);
    ResolvedArch ra = resolve_architecture(f.arch, overrides_from(f));
    PipelineOptions opts;
    opts.target_error = f.error;
    opts.budget_mode = parse_budget(f.budget);
    opts.d_override = ra.d_override;
    PipelineResult res = run_pipeline(c, ra.arch, opts);
    std::filesystem::path out(f.out);
    std::string report = emit_report(res.report);
    validate_report_json(report);
    write_file(out / "report.json", report);
    write_file(out / "breakdown_primitive.csv", breakdown_primitive_csv(res.report));
    write_file(out / "breakdown_physical.csv", breakdown_physical_csv(res.report));
    if (emit_intermediate) {
        write_file(out / "c1.json", emit_native(res.c1));
        write_file(out / "c2.json", emit_native(res.c2));
        write_file(out / "primitive.json", emit_native(res.program.circuit));
    }
    print_summary(res.report);
    return 0;
}

int cmd_sweep(const CommonFlags &f, const std::string &archs, const std::string &factories,
              const std::string &folded, const std::string &decoding, const std::string &speeds, unsigned jobs) {
    Circuit c = load_circuit(f.circuit);
    SweepSpec spec;
    spec.target_error = f.error;
    spec.budget_mode = parse_budget(f.budget);
    spec.base = overrides_from(f);
    spec.architectures = split_list(archs.empty() ? f.arch : archs);
    for (const auto &s : split_list(speeds)) spec.speeds.push_back(parse_speeds(s));
    for (const auto &s : split_list(folded)) spec.folded.push_back(parse_folded(s));
    for (const auto &s : split_list(decoding)) spec.decoding.push_back(parse_decoding(s));
    for (const auto &s : split_list(factories)) {
        try {
            std::size_t used = 0;
            long v = std::stol(s, &used);
            if (used != s.size() || v < 0) {
                throw std::invalid_argument(s);
            }
            spec.factories.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception &) {
            fail(ErrorKind::config, "--factories expects a comma-separated list of counts, got '" + s + "'");
        }
    }
    auto rows = run_sweep(c, spec, jobs);
    std::string csv = sweep_csv(rows);
    write_file(std::filesystem::path(f.out) / "sweep.csv", csv);
    std::cout << csv;
    return 0;
}

int cmd_sensitivity(const CommonFlags &f, const GridSpec &overrides_grid, bool grid_given) {
    Circuit c = load_circuit(f.circuit);
    ResolvedArch ra = resolve_architecture(f.arch, overrides_from(f));
    Circuit c1 = c.level == Level::input ? to_clifford_rz(c) : c;
    auto counts = gate_counts(c1);
    BudgetOptions bopts;
    bopts.folded = ra.arch.folded;
    bopts.extras.t_count = counts.t;
    GridSpec grid = grid_given ? overrides_grid : ra.arch.grid;
    bopts.d_max = grid.d_max;
    GridResult g = sensitivity_grid(counts.rz, counts.clifford, f.error, ra.arch.noise, ra.arch.cultivation,
                                    ra.arch.synthesis, grid, bopts);
    std::string surface = "d,eps_rz,eps_m,rep,fidelity,feasible\n";
    for (const auto &p : g.surface) {
        surface += std::to_string(p.d) + "," + format_double(p.eps_rz) + "," + format_double(p.eps_m) + "," +
                   format_double(p.rep) + "," + format_double(p.fidelity) + "," + (p.feasible ? "1" : "0") + "\n";
    }
    std::string contour = "d,eps_rz,eps_m,rep,fidelity\n";
    for (const auto &p : g.contour) {
        contour += std::to_string(p.d) + "," + format_double(p.eps_rz) + "," + format_double(p.eps_m) + "," +
                   format_double(p.rep) + "," + format_double(p.fidelity) + "\n";
    }
    std::filesystem::path out(f.out);
    write_file(out / "surface.csv", surface);
    write_file(out / "contour.csv", contour);
    nlohmann::json best = budget_json(g.best);
    write_file(out / "best.json", best.dump(2) + "\n");
    std::cout << "best point: d " << g.best.d << ", eps_rz " << fmt("%.3g", g.best.eps_rz) << ", eps_m "
              << fmt("%.3g", g.best.eps_m) << ", rep " << fmt("%g", g.best.rep) << ", F "
              << fmt("%.6f", g.best.fidelity) << "\n"
              << g.surface.size() << " surface points, " << g.contour.size() << " contour points\n";
    return 0;
}

int cmd_layout(const std::string &strategy, std::uint32_t data, std::uint32_t t, std::uint32_t s,
               const std::string &out) {
    LayoutGrid g = generate_layout(parse_layout(strategy), data, t, s);
    std::string text = render_layout(g);
    write_file(std::filesystem::path(out) / "layout.json", emit_layout_json(g));
    std::cout << text;
    return 0;
}

int cmd_table(const CommonFlags &f) {
    ResolvedArch ra = resolve_architecture(f.arch, overrides_from(f));
    int d = ra.d_override.value_or(11);
    std::cout << "primitive times for " << ra.arch.name << " at d = " << d << " (us)\n";
    for (const auto &[kind, recipe] : ra.arch.recipes) {
        if (is_pauli(kind) && kind != GateKind::I) {
            continue;
        }
        std::string name = is_pauli(kind) ? "Pauli" : std::string(gate_name(kind));
        double us = primitive_time(ra.arch, kind, d);
        std::cout << "  " << name << std::string(10 - std::min<std::size_t>(9, name.size()), ' ') << round_us(us)
                  << "  (" << fmt("%.2f", us) << ")\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Fault-tolerant quantum resource estimation"};
    app.require_subcommand(1);

    CommonFlags est_flags;
    bool emit_intermediate = false;
    auto *est = app.add_subcommand("estimate", "estimate resources for one circuit and architecture");
    add_run_flags(est, est_flags);
    est->add_flag("--emit-intermediate", emit_intermediate, "write the C1, C2 and primitive circuits as native JSON");

    CommonFlags sw_flags;
    std::string sw_archs, sw_factories = "10", sw_folded, sw_decoding, sw_speeds;
    unsigned jobs = 1;
    auto *sw = app.add_subcommand("sweep", "evaluate the Cartesian product of parameter axes");
    add_run_flags(sw, sw_flags);
    sw->add_option("--archs", sw_archs, "comma-separated architectures (defaults to --arch)");
    sw->add_option("--factories", sw_factories, "comma-separated T-factory counts");
    sw->add_option("--folded-axis", sw_folded, "comma-separated U/F values");
    sw->add_option("--decoding-axis", sw_decoding, "comma-separated C/S values");
    sw->add_option("--speeds-axis", sw_speeds, "comma-separated current/proposed values");
    sw->add_option("--jobs", jobs, "worker threads");

    CommonFlags sen_flags;
    GridSpec grid;
    auto *sen = app.add_subcommand("sensitivity", "error-budget grid over code distance and synthesis precision");
    add_run_flags(sen, sen_flags);
    sen->add_option("--d-min", grid.d_min, "smallest odd distance");
    sen->add_option("--d-max", grid.d_max, "largest odd distance");
    sen->add_option("--eps-rz-min", grid.eps_rz_min, "smallest synthesis precision");
    sen->add_option("--eps-rz-max", grid.eps_rz_max, "largest synthesis precision");
    sen->add_option("--points-per-decade", grid.points_per_decade, "grid density");

    std::string lay_strategy = "sandwich", lay_out = ".";
    std::uint32_t lay_data = 20, lay_t = 5, lay_s = 0;
    auto *lay = app.add_subcommand("layout", "generate and render a layout");
    lay->add_option("--strategy", lay_strategy, "dense, column, embedded or sandwich");
    lay->add_option("--data", lay_data, "data qubits");
    lay->add_option("--factories-t", lay_t, "T factories");
    lay->add_option("--factories-s", lay_s, "S factories");
    lay->add_option("--out", lay_out, "output directory");

    CommonFlags tab_flags;
    auto *tab = app.add_subcommand("table", "print primitive operation times");
    add_arch_flags(tab, tab_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_code_for(ErrorKind::config);
    }

    try {
        if (*est) {
            return cmd_estimate(est_flags, emit_intermediate);
        }
        if (*sw) {
            if (sw_folded.empty()) sw_folded = sw_flags.folded.empty() ? "U" : sw_flags.folded;
            if (sw_decoding.empty()) sw_decoding = sw_flags.decoding.empty() ? "C" : sw_flags.decoding;
            if (sw_speeds.empty()) sw_speeds = sw_flags.speeds.empty() ? "current" : sw_flags.speeds;
            return cmd_sweep(sw_flags, sw_archs, sw_factories, sw_folded, sw_decoding, sw_speeds, jobs);
        }
        if (*sen) {
            bool grid_given = sen->count("--d-min") + sen->count("--d-max") + sen->count("--eps-rz-min") +
                                  sen->count("--eps-rz-max") + sen->count("--points-per-decade") >
                              0;
            return cmd_sensitivity(sen_flags, grid, grid_given);
        }
        if (*lay) {
            return cmd_layout(lay_strategy, lay_data, lay_t, lay_s, lay_out);
        }
        if (*tab) {
            return cmd_table(tab_flags);
        }
    } catch (const InfeasibleBudget &e) {
        std::cerr << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        print_infeasible(e);
        return exit_code_for(e.kind());
    } catch (const Error &e) {
        std::cerr << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
