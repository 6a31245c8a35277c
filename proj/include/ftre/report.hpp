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

#pragma once

// Resource estimates from a primitive circuit: critical path, serial time, qubit counts,
// and breakdowns by primitive and by physical operation class.

#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ftre/architecture.hpp"
#include "ftre/budget.hpp"
#include "ftre/circuit.hpp"
#include "ftre/primitive_compiler.hpp"
#include "json.hpp"

namespace ftre {

////////////////////////////////////////////////////////////
// Critical path.
////////////////////////////////////////////////////////////

struct CriticalPath {
    Duration length{0};
    /// Node indices from first to last.
    std::vector<std::uint32_t> path;
};

/// Longest weighted path by topological relaxation. Ties prefer the smaller node index both for the
/// final node and for each predecessor.
inline CriticalPath critical_path(const OpDag &dag) {
    const std::size_t n = dag.num_nodes;
    if (dag.durations.size() != n || dag.preds.size() != n) {
        fail(ErrorKind::internal, "malformed dag");
    }
    std::vector<std::vector<std::uint32_t>> succs(n);
    std::vector<std::size_t> indegree(n, 0);
    for (auto [a, b] : dag.edges) {
        succs[a].push_back(b);
        indegree[b]++;
    }
    std::deque<std::uint32_t> ready;
    for (std::uint32_t v = 0; v < n; v++) {
        if (indegree[v] == 0) {
            ready.push_back(v);
        }
    }
    std::vector<Duration> finish(n, Duration{0});
    std::vector<std::int64_t> from(n, -1);
    std::size_t visited = 0;
    while (!ready.empty()) {
        auto v = ready.front();
        ready.pop_front();
        visited++;
        Duration start{0};
        for (auto p : dag.preds[v]) {
            if (from[v] < 0 || finish[p] > start || (finish[p] == start && p < from[v])) {
                start = finish[p];
                from[v] = p;
            }
        }
        finish[v] = start + dag.durations[v];
        for (auto s : succs[v]) {
            if (--indegree[s] == 0) {
                ready.push_back(s);
            }
        }
    }
    if (visited != n) {
        fail(ErrorKind::internal, "dependency graph has a cycle");
    }
    CriticalPath cp;
    if (n == 0) {
        return cp;
    }
    std::uint32_t end = 0;
    for (std::uint32_t v = 1; v < n; v++) {
        if (finish[v] > finish[end]) {
            end = v;
        }
    }
    cp.length = finish[end];
    for (std::int64_t v = end; v >= 0; v = from[static_cast<std::size_t>(v)]) {
        cp.path.push_back(static_cast<std::uint32_t>(v));
    }
    std::reverse(cp.path.begin(), cp.path.end());
    return cp;
}

/// Per-op costs under an architecture. Idle syndrome extraction fills existing gaps and costs nothing.
inline std::vector<PhysCost> op_costs(const Circuit &c, const Architecture &arch, std::optional<double> rep_t) {
    std::vector<PhysCost> costs;
    costs.reserve(c.ops.size());
    std::map<std::tuple<GateKind, std::uint32_t, double, bool>, PhysCost> memo;
    for (const auto &op : c.ops) {
        if (op.idle) {
            costs.emplace_back();
            continue;
        }
        auto key = std::make_tuple(op.kind, op.rounds, op.sites, op.ctrl.has_value());
        auto it = memo.find(key);
        if (it == memo.end()) {
            it = memo.emplace(key, op_cost(arch, op, rep_t)).first;
        }
        costs.push_back(it->second);
    }
    return costs;
}

inline std::vector<Duration> total_durations(const std::vector<PhysCost> &costs) {
    std::vector<Duration> d;
    d.reserve(costs.size());
    for (const auto &c : costs) {
        d.push_back(c.total());
    }
    return d;
}

inline Duration serial_time(const std::vector<Duration> &durations) {
    Duration t{0};
    for (auto d : durations) {
        t += d;
    }
    return t;
}

////////////////////////////////////////////////////////////
// Report.
////////////////////////////////////////////////////////////

struct PrimitiveTally {
    std::size_t count = 0;
    Duration time{0};
    bool operator==(const PrimitiveTally &) const = default;
};

/// Report-level physical classes: A- and Z-moves are combined under Movement.
inline std::string_view report_class(PhysClass c) {
    switch (c) {
        case PhysClass::zmove:
        case PhysClass::amove:
            return "Movement";
        default:
            return phys_class_name(c);
    }
}

inline const std::vector<std::string> &report_classes() {
    static const std::vector<std::string> c{"1Q", "2Q", "Measure", "Reset", "Movement", "Other"};
    return c;
}

struct InputCounts {
    std::uint64_t rz = 0;
    std::uint64_t clifford = 0;
    std::uint64_t t = 0;
};

struct ResourceReport {
    std::string architecture;
    std::string layout_strategy;
    int d = 3;
    int syndrome_rounds = 1;
    std::uint32_t t_factories = 0;
    std::uint32_t s_factories = 0;
    std::uint64_t logical_qubits = 0;
    std::uint64_t physical_qubits = 0;
    Duration critical_path{0};
    Duration serial{0};
    /// Critical-path time per primitive kind.
    std::map<std::string, PrimitiveTally> by_primitive;
    /// Critical-path time per report class.
    std::map<std::string, Duration> by_physical;
    /// All ops in the primitive circuit, per kind.
    std::map<std::string, std::size_t> op_counts;
    BudgetSolution budget;
    InputCounts input;
    std::size_t teleports = 0;
    std::size_t batch_cultivations = 0;
    std::size_t idle_se = 0;
    nlohmann::json config;
    std::string fingerprint;

    /// Share of the critical path spent in cultivation primitives.
    double cultivation_fraction() const {
        if (critical_path.count() == 0) {
            return 0;
        }
        Duration cult{0};
        for (const char *k : {"CultT", "CultS"}) {
            auto it = by_primitive.find(k);
            if (it != by_primitive.end()) {
                cult += it->second.time;
            }
        }
        return static_cast<double>(cult.count()) / static_cast<double>(critical_path.count());
    }
};

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a_hex(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Everything that determines the estimate besides the circuit, echoed into the report.
inline nlohmann::json architecture_config_json(const Architecture &a, const LayoutGrid &layout) {
    nlohmann::json j;
    j["name"] = a.name;
    j["primitive_set"] = a.primitive_set == PrimitiveSet::lattice ? "lattice" : "movement";
    j["speeds"] = {{"1q", a.speeds.t_1q},
                   {"2q", a.speeds.t_2q},
                   {"meas", a.speeds.t_meas},
                   {"reset", a.speeds.t_reset},
                   {"zmove", a.speeds.t_zmove},
                   {"amove",
                    {{"mode", a.speeds.amove.mode == AMoveModel::Mode::fixed ? "fixed" : "formula"},
                     {"fixed_us", a.speeds.amove.fixed_us},
                     {"clamp", a.speeds.amove.clamp},
                     {"min", a.speeds.amove.min_us},
                     {"max", a.speeds.amove.max_us},
                     {"sites_per_patch", a.speeds.amove.sites_per_patch}}}};
    nlohmann::json recipes = nlohmann::json::object();
    for (const auto &[kind, r] : a.recipes) {
        nlohmann::json counts = nlohmann::json::object();
        for (const auto &[c, n] : r.counts) {
            counts[std::string(phys_class_name(c))] = n;
        }
        recipes[std::string(gate_name(kind))] = {{"counts", counts},
                                                 {"se", r.se},
                                                 {"residual_us", r.residual_us},
                                                 {"rep_scaling", r.rep_scaling},
                                                 {"per_round", r.per_round}};
    }
    j["recipes"] = recipes;
    j["capabilities"] = {{"in_place_entangle", a.caps.in_place_entangle},
                         {"in_place_readout", a.caps.in_place_readout},
                         {"movement", a.caps.movement}};
    j["kwargs"] = {{"d", a.d},
                   {"syndrome_rounds", a.syndrome_rounds()},
                   {"folded", a.folded},
                   {"post_op_correction", a.post_op_correction},
                   {"idling_se", a.idling_se},
                   {"se_frequency", a.se_frequency},
                   {"rep_t", a.rep_t},
                   {"rep_s", a.rep_s},
                   {"correction_weight", a.correction_weight}};
    j["synthesis"] = {{"a_t", a.synthesis.a_t},
                      {"a_c", a.synthesis.a_c},
                      {"log_base", a.synthesis.log_base == LogBase::natural ? "natural" : "decimal"}};
    j["noise"] = {{"p", a.noise.p}, {"p_th", a.noise.p_th}, {"prefactor", a.noise.prefactor}};
    nlohmann::json anchors = nlohmann::json::array();
    for (const auto &[eps, rep] : a.cultivation.anchors) {
        anchors.push_back({eps, rep});
    }
    j["cultivation"] = {{"anchors", anchors}, {"folded_divisor", a.cultivation.folded_divisor}};
    j["layout"] = {{"strategy", std::string(layout_strategy_name(layout.strategy()))},
                   {"width", layout.width()},
                   {"height", layout.height()},
                   {"t_factories", layout.count(Role::t_factory)},
                   {"s_factories", layout.count(Role::s_factory)},
                   {"grid", render_layout(layout)}};
    return j;
}

/// Computes the report for a compiled program. rep_t is the cultivation repetition parameter for CultT.
inline ResourceReport build_report(const PrimitiveProgram &prog, const Architecture &arch, const BudgetSolution &budget,
                                   std::optional<double> rep_t, InputCounts input = {}) {
    const Circuit &c = prog.circuit;
    auto costs = op_costs(c, arch, rep_t);
    auto durations = total_durations(costs);
    OpDag dag = build_dag(c, durations);
    CriticalPath cp = critical_path(dag);

    ResourceReport r;
    r.architecture = arch.name;
    r.layout_strategy = std::string(layout_strategy_name(prog.layout.strategy()));
    r.d = arch.d;
    r.syndrome_rounds = arch.syndrome_rounds();
    r.t_factories = static_cast<std::uint32_t>(prog.layout.count(Role::t_factory));
    r.s_factories = static_cast<std::uint32_t>(prog.layout.count(Role::s_factory));
    r.logical_qubits = prog.layout.logical_qubits();
    r.physical_qubits = static_cast<std::uint64_t>(arch.d) * static_cast<std::uint64_t>(arch.d) * r.logical_qubits;
    r.critical_path = cp.length;
    r.serial = serial_time(durations);
    for (const auto &cls : report_classes()) {
        r.by_physical[cls] = Duration{0};
    }
    for (auto v : cp.path) {
        const auto &op = c.ops[v];
        auto &tally = r.by_primitive[std::string(gate_name(op.kind))];
        tally.count++;
        tally.time += durations[v];
        for (auto cls : ALL_PHYS_CLASSES) {
            r.by_physical[std::string(report_class(cls))] += costs[v][cls];
        }
    }
    for (const auto &op : c.ops) {
        r.op_counts[std::string(gate_name(op.kind))]++;
    }
    r.budget = budget;
    r.input = input;
    r.teleports = prog.teleports;
    r.batch_cultivations = prog.batch_cultivations;
    r.idle_se = prog.idle_se;
    r.config = architecture_config_json(arch, prog.layout);
    r.config["rep_t_effective"] = rep_t.value_or(arch.rep_t);
    r.fingerprint = fnv1a_hex(r.config.dump());
    return r;
}

inline nlohmann::json budget_json(const BudgetSolution &b) {
    return {{"d", b.d},           {"eps_rz", b.eps_rz}, {"eps_m", b.eps_m},
            {"eps_l", b.eps_l},   {"rep", b.rep},       {"fidelity", b.fidelity}};
}

inline nlohmann::json report_json(const ResourceReport &r) {
    nlohmann::json j;
    j["schema"] = "ftre-report/1";
    j["architecture"] = r.architecture;
    j["layout_strategy"] = r.layout_strategy;
    j["d"] = r.d;
    j["syndrome_rounds"] = r.syndrome_rounds;
    j["t_factories"] = r.t_factories;
    j["s_factories"] = r.s_factories;
    j["logical_qubits"] = r.logical_qubits;
    j["physical_qubits"] = r.physical_qubits;
    j["critical_path_us"] = to_us(r.critical_path);
    j["serial_us"] = to_us(r.serial);
    j["cultivation_fraction"] = r.cultivation_fraction();
    nlohmann::json bp = nlohmann::json::object();
    for (const auto &[k, t] : r.by_primitive) {
        bp[k] = {{"count", t.count}, {"us", to_us(t.time)}};
    }
    j["by_primitive"] = bp;
    nlohmann::json bph = nlohmann::json::object();
    for (const auto &[k, t] : r.by_physical) {
        bph[k] = to_us(t);
    }
    j["by_physical"] = bph;
    j["op_counts"] = r.op_counts;
    j["budget"] = budget_json(r.budget);
    j["input"] = {{"rz", r.input.rz}, {"clifford", r.input.clifford}, {"t", r.input.t}};
    j["compile"] = {
        {"teleports", r.teleports}, {"batch_cultivations", r.batch_cultivations}, {"idle_se", r.idle_se}};
    j["config"] = r.config;
    j["fingerprint"] = r.fingerprint;
    return j;
}

/// Canonical report text: keys sorted, two-space indent, trailing newline.
inline std::string emit_report(const ResourceReport &r) {
    return report_json(r).dump(2) + "\n";
}

/// Checks a report document against the ftre-report/1 schema and its internal invariants.
inline void validate_report_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &e) {
        fail(ErrorKind::validation, std::string("report is not valid JSON: ") + e.what());
    }
    auto need = [&](const nlohmann::json &obj, const std::string &key, nlohmann::json::value_t type,
                    const std::string &path) -> const nlohmann::json & {
        if (!obj.is_object() || !obj.contains(key)) {
            fail(ErrorKind::validation, path + "." + key + ": missing");
        }
        const auto &v = obj[key];
        bool ok = v.type() == type || (type == nlohmann::json::value_t::number_float && v.is_number()) ||
                  (type == nlohmann::json::value_t::number_unsigned && v.is_number_integer() && v.get<long long>() >= 0);
        if (!ok) {
            fail(ErrorKind::validation, path + "." + key + ": wrong type");
        }
        return v;
    };
    using vt = nlohmann::json::value_t;
    if (need(j, "schema", vt::string, "$").get<std::string>() != "ftre-report/1") {
        fail(ErrorKind::validation, "$.schema: unsupported schema version");
    }
    need(j, "architecture", vt::string, "$");
    need(j, "layout_strategy", vt::string, "$");
    need(j, "fingerprint", vt::string, "$");
    need(j, "config", vt::object, "$");
    auto d = need(j, "d", vt::number_unsigned, "$").get<std::uint64_t>();
    need(j, "syndrome_rounds", vt::number_unsigned, "$");
    need(j, "t_factories", vt::number_unsigned, "$");
    need(j, "s_factories", vt::number_unsigned, "$");
    auto logical = need(j, "logical_qubits", vt::number_unsigned, "$").get<std::uint64_t>();
    auto physical = need(j, "physical_qubits", vt::number_unsigned, "$").get<std::uint64_t>();
    double cp = need(j, "critical_path_us", vt::number_float, "$").get<double>();
    double serial = need(j, "serial_us", vt::number_float, "$").get<double>();
    need(j, "cultivation_fraction", vt::number_float, "$");
    const auto &bp = need(j, "by_primitive", vt::object, "$");
    const auto &bph = need(j, "by_physical", vt::object, "$");
    need(j, "op_counts", vt::object, "$");
    const auto &budget = need(j, "budget", vt::object, "$");
    for (const char *k : {"eps_rz", "eps_m", "eps_l", "rep", "fidelity"}) {
        need(budget, k, vt::number_float, "$.budget");
    }
    need(budget, "d", vt::number_unsigned, "$.budget");
    const auto &input = need(j, "input", vt::object, "$");
    for (const char *k : {"rz", "clifford", "t"}) {
        need(input, k, vt::number_unsigned, "$.input");
    }
    const auto &comp = need(j, "compile", vt::object, "$");
    for (const char *k : {"teleports", "batch_cultivations", "idle_se"}) {
        need(comp, k, vt::number_unsigned, "$.compile");
    }
    if (physical != d * d * logical) {
        fail(ErrorKind::validation, "$.physical_qubits: must equal d^2 * logical_qubits");
    }
    const double tol = 1e-6 * std::max(1.0, cp);
    if (serial + tol < cp) {
        fail(ErrorKind::validation, "$.serial_us: below the critical path");
    }
    double sum_p = 0;
    for (const auto &[k, v] : bp.items()) {
        need(v, "count", vt::number_unsigned, "$.by_primitive." + k);
        sum_p += need(v, "us", vt::number_float, "$.by_primitive." + k).get<double>();
    }
    double sum_c = 0;
    for (const auto &[k, v] : bph.items()) {
        if (!v.is_number()) {
            fail(ErrorKind::validation, "$.by_physical." + k + ": wrong type");
        }
        sum_c += v.get<double>();
    }
    if (std::abs(sum_p - cp) > tol || std::abs(sum_c - cp) > tol) {
        fail(ErrorKind::validation, "$.by_primitive: breakdowns must sum to the critical path");
    }
}

////////////////////////////////////////////////////////////
// CSV plot data.
////////////////////////////////////////////////////////////

inline std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

/// kind,count,us,cumulative_us; largest contributions first, ties by kind name.
inline std::string breakdown_primitive_csv(const ResourceReport &r) {
    std::vector<std::pair<std::string, PrimitiveTally>> rows(r.by_primitive.begin(), r.by_primitive.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) { return a.second.time > b.second.time; });
    std::string out = "kind,count,us,cumulative_us\n";
    Duration cum{0};
    for (const auto &[k, t] : rows) {
        cum += t.time;
        out += k + "," + std::to_string(t.count) + "," + csv_number(to_us(t.time)) + "," + csv_number(to_us(cum)) + "\n";
    }
    return out;
}

/// class,us in a fixed class order.
inline std::string breakdown_physical_csv(const ResourceReport &r) {
    std::string out = "class,us\n";
    for (const auto &cls : report_classes()) {
        auto it = r.by_physical.find(cls);
        out += cls + "," + csv_number(it == r.by_physical.end() ? 0.0 : to_us(it->second)) + "\n";
    }
    return out;
}

}  // namespace ftre
