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

// Rz -> Clifford+T expansion driven by an empirical gate-count model.
//
// Each Rz at precision eps costs ceil(a_T |log eps|) T gates and ceil(a_C |log eps|)
// Cliffords. The emitted sequence is a placeholder with exactly those counts; only
// counts and single-qubit seriality matter downstream.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "ftre/circuit.hpp"

namespace ftre {

enum class LogBase { natural, decimal };

struct SynthModel {
    double a_t = 5;
    double a_c = 8;
    LogBase log_base = LogBase::natural;

    void check() const {
        if (!(a_t > 0) || !(a_c > 0)) {
            fail(ErrorKind::config, "synthesis coefficients must be positive");
        }
    }

    /// |log eps| in the configured base.
    double abs_log(double eps) const {
        double v = log_base == LogBase::natural ? std::log(eps) : std::log10(eps);
        return std::abs(v);
    }
};

struct SynthCounts {
    std::uint64_t t = 0;
    std::uint64_t clifford = 0;
    bool operator==(const SynthCounts &) const = default;
};

namespace synth_detail {

/// ceil that ignores floating-point noise just above an integer (e.g. 5 * |ln(e^-1)|).
inline std::uint64_t ceil_count(double x) {
    double r = std::round(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) {
        return static_cast<std::uint64_t>(r);
    }
    return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace synth_detail

inline SynthCounts synthesis_counts(const SynthModel &model, double eps_rz) {
    model.check();
    if (!(eps_rz > 0) || eps_rz > 1) {
        fail(ErrorKind::domain, "eps_rz must lie in (0, 1]");
    }
    double l = model.abs_log(eps_rz);
    return {synth_detail::ceil_count(model.a_t * l), synth_detail::ceil_count(model.a_c * l)};
}

/// Replaces one Rz op with a gate list. The placeholder below is the only implementation shipped.
using Synthesizer = std::function<std::vector<GateOp>(const GateOp &rz, double eps_rz)>;

/// Interleaves Clifford and T slots (H, T, S, T, H, T, ...) until both counts are exhausted.
inline std::vector<GateOp> placeholder_sequence(std::uint32_t q, SynthCounts counts) {
    std::vector<GateOp> out;
    out.reserve(counts.t + counts.clifford);
    std::uint64_t t = 0, c = 0;
    bool clifford_turn = true;
    while (t < counts.t || c < counts.clifford) {
        bool take_clifford = c < counts.clifford && (clifford_turn || t >= counts.t);
        if (take_clifford) {
            out.push_back(GateOp::make(c % 2 == 0 ? GateKind::H : GateKind::S, {q}));
            c++;
        } else {
            out.push_back(GateOp::make(GateKind::T, {q}));
            t++;
        }
        clifford_turn = !take_clifford;
    }
    return out;
}

inline Synthesizer placeholder_synthesizer(SynthModel model) {
    return [model](const GateOp &rz, double eps) {
        return placeholder_sequence(rz.qubits[0], synthesis_counts(model, eps));
    };
}

/// C1 -> C2: every Rz replaced by its synthesized sequence; other ops copied.
inline Circuit expand_rz(const Circuit &c, const Synthesizer &synth, double eps_rz) {
    if (c.level != Level::clifford_rz) {
        fail(ErrorKind::validation, "expand_rz expects a clifford_rz circuit");
    }
    Circuit out(c.num_qubits, Level::clifford_t);
    out.labels = c.labels;
    std::vector<std::uint32_t> remap(c.ops.size());
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        GateOp op = c.ops[i];
        if (op.ctrl) {
            op.ctrl = remap[*op.ctrl];
        }
        if (op.kind == GateKind::Rz) {
            for (auto &g : synth(op, eps_rz)) {
                g.ctrl = op.ctrl;
                out.ops.push_back(std::move(g));
            }
        } else {
            out.ops.push_back(std::move(op));
        }
        remap[i] = out.ops.empty() ? 0 : static_cast<std::uint32_t>(out.ops.size() - 1);
    }
    return out;
}

inline Circuit expand_rz(const Circuit &c, const SynthModel &model, double eps_rz) {
    bool has_rz = false;
    for (const auto &op : c.ops) {
        has_rz = has_rz || op.kind == GateKind::Rz;
    }
    if (!has_rz) {
        return expand_rz(c, Synthesizer([](const GateOp &, double) { return std::vector<GateOp>{}; }), eps_rz);
    }
    return expand_rz(c, placeholder_synthesizer(model), eps_rz);
}

}  // namespace ftre
