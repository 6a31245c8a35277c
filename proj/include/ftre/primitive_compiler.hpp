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

// Read-and-replace lowering from Clifford+T to an architecture's primitives, with greedy
// factory scheduling and gate teleportation, followed by the post-op correction, idling
// and movement passes.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ftre/architecture.hpp"
#include "ftre/circuit.hpp"
#include "ftre/layout.hpp"

namespace ftre {

/// A primitive circuit together with the placement it was compiled against.
struct PrimitiveProgram {
    Circuit circuit;
    LayoutGrid layout;
    /// Cell of every primitive-circuit qubit.
    std::vector<Cell> patch_cells;
    std::size_t teleports = 0;
    std::size_t batch_cultivations = 0;
    std::size_t idle_se = 0;
};

enum class FactoryStatus { ready, used };

struct FactoryState {
    Cell cell;
    FactoryKind kind = FactoryKind::t;
    FactoryStatus status = FactoryStatus::used;
    std::optional<std::uint32_t> last_cultivation_op;
};

struct RouteReservation {
    std::vector<Cell> path;
    std::uint32_t start_op = 0;
    std::uint32_t end_op = 0;
};

namespace compile_detail {

/// Used factories stay unavailable until every factory of the kind has been used; then one
/// cultivation op on all of them makes them ready together.
class FactoryPool {
   public:
    FactoryPool(const LayoutGrid &g, const PatchIndex &index, FactoryKind kind) : layout_(&g), kind_(kind) {
        for (Cell c : g.cells_with(factory_role(kind))) {
            states_.push_back({c, kind, FactoryStatus::used, std::nullopt});
            patches_.push_back(index(c));
            busy_.insert(c);
        }
    }

    bool empty() const {
        return states_.empty();
    }
    const std::vector<FactoryState> &states() const {
        return states_;
    }

    /// Picks the nearest ready factory, emitting a batch cultivation into out first if none is ready.
    std::pair<Cell, std::uint32_t> acquire(Cell from, Circuit &out, std::size_t &batches) {
        if (states_.empty()) {
            fail(ErrorKind::config, std::string("the layout has no ") + (kind_ == FactoryKind::t ? "T" : "S") +
                                        " factory for gate teleportation");
        }
        auto pick = nearest_available_factory(*layout_, from, kind_, busy_);
        if (!pick) {
            auto idx = static_cast<std::uint32_t>(out.ops.size());
            out.append(kind_ == FactoryKind::t ? GateKind::CultT : GateKind::CultS, patches_);
            for (auto &s : states_) {
                s.status = FactoryStatus::ready;
                s.last_cultivation_op = idx;
            }
            busy_.clear();
            batches++;
            pick = nearest_available_factory(*layout_, from, kind_, busy_);
        }
        for (std::size_t i = 0; i < states_.size(); i++) {
            if (states_[i].cell == *pick) {
                states_[i].status = FactoryStatus::used;
                busy_.insert(*pick);
                return {*pick, patches_[i]};
            }
        }
        fail(ErrorKind::internal, "factory pool lost track of a factory");
    }

   private:
    const LayoutGrid *layout_;
    FactoryKind kind_;
    std::vector<FactoryState> states_;
    std::vector<std::uint32_t> patches_;
    std::set<Cell> busy_;
};

inline GateKind logical_group(GateKind k) {
    switch (k) {
        case GateKind::Sdg:
            return GateKind::S;
        case GateKind::Tdg:
            return GateKind::T;
        default:
            return k;
    }
}

inline bool tracked_intent(GateKind k) {
    switch (logical_group(k)) {
        case GateKind::H:
        case GateKind::S:
        case GateKind::T:
        case GateKind::CNOT:
        case GateKind::Measure:
        case GateKind::Reset:
            return true;
        default:
            return false;
    }
}

/// Rebuilds a circuit with ops inserted before and after each original op. Inserted and original
/// ctrl fields name original op indices and are remapped to the new positions.
inline Circuit with_insertions(const Circuit &c, const std::vector<std::vector<GateOp>> &before,
                               const std::vector<std::vector<GateOp>> &after) {
    Circuit out(c.num_qubits, c.level);
    out.labels = c.labels;
    std::vector<std::uint32_t> remap(c.ops.size());
    std::size_t extra = 0;
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        extra += before[i].size() + after[i].size();
    }
    out.ops.reserve(c.ops.size() + extra);
    auto push = [&](GateOp op) {
        if (op.ctrl) {
            op.ctrl = remap.at(*op.ctrl);
        }
        out.ops.push_back(std::move(op));
    };
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        for (const auto &op : before[i]) {
            push(op);
        }
        GateOp op = c.ops[i];
        if (op.ctrl) {
            op.ctrl = remap.at(*op.ctrl);
        }
        remap[i] = static_cast<std::uint32_t>(out.ops.size());
        out.ops.push_back(std::move(op));
        for (const auto &a : after[i]) {
            push(a);
        }
    }
    return out;
}

}  // namespace compile_detail

/// Multiset of tracked logical intents (H, S, T, CNOT, Measure, Reset with daggers grouped) of a
/// Clifford+T circuit, keyed by gate name.
inline std::map<std::string, std::size_t> logical_intents_of_input(const Circuit &c2) {
    std::map<std::string, std::size_t> m;
    for (const auto &op : c2.ops) {
        if (compile_detail::tracked_intent(op.kind)) {
            m[std::string(gate_name(compile_detail::logical_group(op.kind)))]++;
        }
    }
    return m;
}

/// The same multiset read from the intent annotations of a primitive circuit.
inline std::map<std::string, std::size_t> logical_intents_of_primitives(const Circuit &prim) {
    std::map<std::string, std::size_t> m;
    for (const auto &op : prim.ops) {
        if (op.intent && compile_detail::tracked_intent(*op.intent)) {
            m[std::string(gate_name(compile_detail::logical_group(*op.intent)))]++;
        }
    }
    return m;
}

/// Lowers a Clifford+T circuit to primitives, before any of the passes. Ops are visited in
/// scheduling-moment order so factory assignment follows the parallel structure of the circuit.
inline PrimitiveProgram lower_to_primitives(const Circuit &c2, const Architecture &arch, const LayoutGrid &layout) {
    using compile_detail::FactoryPool;
    if (c2.level != Level::clifford_t) {
        fail(ErrorKind::validation, "primitive lowering expects a clifford_t circuit");
    }
    const bool lattice = arch.primitive_set == PrimitiveSet::lattice;
    validate_layout(layout, c2.num_qubits, lattice);
    PatchIndex index(layout);

    PrimitiveProgram prog;
    prog.layout = layout;
    prog.patch_cells.resize(index.size());
    for (int r = 0; r < layout.height(); r++) {
        for (int col = 0; col < layout.width(); col++) {
            if (layout.at({r, col}).role != Role::empty) {
                prog.patch_cells[index({r, col})] = {r, col};
            }
        }
    }
    Circuit &out = prog.circuit;
    out = Circuit(index.size(), Level::primitive);
    out.labels.clear();

    FactoryPool t_pool(layout, index, FactoryKind::t);
    FactoryPool s_pool(layout, index, FactoryKind::s);
    std::map<std::pair<Cell, Cell>, std::vector<std::uint32_t>> route_cache;
    auto route = [&](Cell a, Cell b) -> const std::vector<std::uint32_t> & {
        auto key = std::make_pair(a, b);
        auto it = route_cache.find(key);
        if (it == route_cache.end()) {
            std::vector<std::uint32_t> qs{index(a)};
            for (Cell c : route_ancilla_path(layout, a, b)) {
                qs.push_back(index(c));
            }
            qs.push_back(index(b));
            it = route_cache.emplace(key, std::move(qs)).first;
        }
        return it->second;
    };
    const auto rounds = static_cast<std::uint32_t>(arch.syndrome_rounds());

    std::vector<std::optional<std::uint32_t>> remap(c2.ops.size());
    auto emit = [&](GateKind k, std::vector<std::uint32_t> qs, std::optional<GateKind> intent = std::nullopt,
                    std::optional<std::uint32_t> ctrl = std::nullopt) {
        GateOp op = GateOp::make(k, std::move(qs));
        op.intent = intent;
        op.ctrl = ctrl;
        if (k == GateKind::Merge) {
            op.rounds = rounds;
        }
        out.ops.push_back(std::move(op));
        return static_cast<std::uint32_t>(out.ops.size() - 1);
    };
    // Lattice surgery CNOT-like interaction between two patches: routed Merge then Split.
    auto merge_split = [&](Cell a, Cell b, std::optional<GateKind> intent, std::optional<std::uint32_t> ctrl) {
        const auto &qs = route(a, b);
        emit(GateKind::Merge, qs, intent, ctrl);
        emit(GateKind::Split, qs, std::nullopt, ctrl);
    };

    for (std::uint32_t i : moment_order(c2)) {
        const GateOp &op = c2.ops[i];
        std::optional<std::uint32_t> ctrl;
        if (op.ctrl) {
            ctrl = remap[*op.ctrl];
            if (!ctrl) {
                fail(ErrorKind::internal, "classical control precedes its measurement");
            }
        }
        const std::uint32_t q = op.qubits.empty() ? 0 : op.qubits[0];
        switch (op.kind) {
            case GateKind::I:
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z:
                emit(op.kind, op.qubits, std::nullopt, ctrl);
                break;
            case GateKind::H:
                emit(GateKind::H, op.qubits, GateKind::H, ctrl);
                break;
            case GateKind::Measure:
                remap[i] = emit(GateKind::Measure, op.qubits, GateKind::Measure, ctrl);
                break;
            case GateKind::Reset:
                emit(GateKind::Reset, op.qubits, GateKind::Reset, ctrl);
                break;
            case GateKind::S:
            case GateKind::Sdg:
                if (!lattice) {
                    emit(GateKind::S, op.qubits, op.kind, ctrl);
                } else {
                    Cell target = layout.data_cell(q);
                    auto [fs, fs_patch] = s_pool.acquire(target, out, prog.batch_cultivations);
                    merge_split(fs, target, op.kind, ctrl);
                    auto m = emit(GateKind::Measure, {fs_patch}, std::nullopt, ctrl);
                    emit(GateKind::Z, {q}, std::nullopt, m);
                    prog.teleports++;
                }
                break;
            case GateKind::CNOT:
                if (!lattice) {
                    emit(GateKind::CNOT, op.qubits, GateKind::CNOT, ctrl);
                } else {
                    merge_split(layout.data_cell(op.qubits[0]), layout.data_cell(op.qubits[1]), GateKind::CNOT, ctrl);
                }
                break;
            case GateKind::T:
            case GateKind::Tdg: {
                Cell target = layout.data_cell(q);
                auto [ft, ft_patch] = t_pool.acquire(target, out, prog.batch_cultivations);
                prog.teleports++;
                if (!lattice) {
                    emit(GateKind::CNOT, {ft_patch, q}, op.kind, ctrl);
                    auto m = emit(GateKind::Measure, {ft_patch}, std::nullopt, ctrl);
                    emit(GateKind::S, {q}, std::nullopt, m);
                } else {
                    merge_split(ft, target, op.kind, ctrl);
                    auto m1 = emit(GateKind::Measure, {ft_patch}, std::nullopt, ctrl);
                    auto [fs, fs_patch] = s_pool.acquire(target, out, prog.batch_cultivations);
                    merge_split(fs, target, std::nullopt, m1);
                    auto m2 = emit(GateKind::Measure, {fs_patch}, std::nullopt, ctrl);
                    emit(GateKind::Z, {q}, std::nullopt, m2);
                }
                break;
            }
            default:
                fail(ErrorKind::internal,
                     std::string(gate_name(op.kind)) + " is outside the Clifford+T alphabet at primitive lowering");
        }
    }
    return prog;
}

/// Appends an SE op (syndrome_rounds rounds) after every transversal gate (H, S, CNOT).
inline Circuit post_op_correction_pass(const Circuit &c, const Architecture &arch) {
    if (!arch.post_op_correction) {
        return c;
    }
    std::vector<std::vector<GateOp>> before(c.ops.size()), after(c.ops.size());
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        const auto &op = c.ops[i];
        if (op.kind == GateKind::H || op.kind == GateKind::S || op.kind == GateKind::CNOT) {
            GateOp se = GateOp::make(GateKind::SE, op.qubits);
            se.rounds = static_cast<std::uint32_t>(arch.syndrome_rounds());
            se.ctrl = op.ctrl;
            after[i].push_back(std::move(se));
        }
    }
    return compile_detail::with_insertions(c, before, after);
}

/// Inserts an idle-marked SE on each of the first n_data qubits at every scheduling moment (every
/// se_frequency-th) where it has no op, between its first and last op. Idle SE ops are scheduled
/// into existing gaps and carry no time on the critical path.
inline Circuit idling_pass(const Circuit &c, const Architecture &arch, std::uint32_t n_data) {
    if (!arch.idling_se) {
        return c;
    }
    auto level = asap_levels(c);
    std::vector<std::vector<std::uint32_t>> on_qubit(n_data);
    for (std::uint32_t i = 0; i < c.ops.size(); i++) {
        for (auto q : c.ops[i].qubits) {
            if (q < n_data) {
                on_qubit[q].push_back(i);
            }
        }
    }
    std::vector<std::vector<GateOp>> before(c.ops.size()), after(c.ops.size());
    const auto rounds = static_cast<std::uint32_t>(arch.syndrome_rounds());
    for (std::uint32_t q = 0; q < n_data; q++) {
        const auto &ops = on_qubit[q];
        for (std::size_t j = 0; j + 1 < ops.size(); j++) {
            for (std::uint32_t l = level[ops[j]] + 1; l < level[ops[j + 1]]; l++) {
                if (l % arch.se_frequency != 0) {
                    continue;
                }
                GateOp se = GateOp::make(GateKind::SE, {q});
                se.rounds = rounds;
                se.idle = true;
                after[ops[j]].push_back(std::move(se));
            }
        }
    }
    return compile_detail::with_insertions(c, before, after);
}

/// Adds explicit move primitives by capability: without in-place entanglement each CNOT is
/// bracketed by zone moves, otherwise preceded by an AMove across the patches' Manhattan distance;
/// without in-place readout each Measure is preceded by a zone move.
inline Circuit movement_pass(const Circuit &c, const Architecture &arch, const std::vector<Cell> &patch_cells) {
    if (arch.primitive_set != PrimitiveSet::movement || !arch.caps.movement) {
        fail(ErrorKind::config, arch.name + ": the movement pass needs a movement architecture");
    }
    std::vector<std::vector<GateOp>> before(c.ops.size()), after(c.ops.size());
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        const auto &op = c.ops[i];
        auto move = [&](GateKind k) {
            GateOp m = GateOp::make(k, op.qubits);
            m.ctrl = op.ctrl;
            return m;
        };
        if (op.kind == GateKind::CNOT) {
            if (!arch.caps.in_place_entangle) {
                before[i].push_back(move(GateKind::ZMove));
                after[i].push_back(move(GateKind::ZMove));
            } else {
                GateOp m = move(GateKind::AMove);
                m.sites = manhattan(patch_cells.at(op.qubits[0]), patch_cells.at(op.qubits[1]));
                before[i].push_back(std::move(m));
            }
        } else if (op.kind == GateKind::Measure && !arch.caps.in_place_readout) {
            before[i].push_back(move(GateKind::ZMove));
        }
    }
    return compile_detail::with_insertions(c, before, after);
}

/// Full stage-2 compilation: lowering, then post-op correction, idling and movement passes.
inline PrimitiveProgram compile_primitives(const Circuit &c2, const Architecture &arch, const LayoutGrid &layout) {
    PrimitiveProgram prog = lower_to_primitives(c2, arch, layout);
    prog.circuit = post_op_correction_pass(prog.circuit, arch);
    std::size_t before_idle = prog.circuit.ops.size();
    prog.circuit = idling_pass(prog.circuit, arch, c2.num_qubits);
    prog.idle_se = prog.circuit.ops.size() - before_idle;
    if (arch.primitive_set == PrimitiveSet::movement) {
        prog.circuit = movement_pass(prog.circuit, arch, prog.patch_cells);
    }
    return prog;
}

}  // namespace ftre
