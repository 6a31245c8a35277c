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

// End-to-end estimation: stage-1 lowering, error budget, Rz synthesis, primitive
// compilation and reporting.

#include <optional>

#include "ftre/architecture.hpp"
#include "ftre/budget.hpp"
#include "ftre/layout.hpp"
#include "ftre/primitive_compiler.hpp"
#include "ftre/report.hpp"
#include "ftre/stage1.hpp"
#include "ftre/synthesis.hpp"

namespace ftre {

enum class BudgetMode { halving, grid };

struct PipelineOptions {
    double target_error = 0.01;
    BudgetMode budget_mode = BudgetMode::halving;
    /// Code distance to use instead of the budget's choice.
    std::optional<int> d_override;
    /// Check that every logical H, S, T, CNOT, Measure and Reset survives lowering.
    bool check_intents = true;
};

struct PipelineResult {
    Circuit c1;
    Circuit c2;
    PrimitiveProgram program;
    BudgetSolution budget;
    std::optional<GridResult> grid;
    ResourceReport report;
};

/// Runs the whole pipeline on a circuit at input, clifford_rz or clifford_t level.
inline PipelineResult run_pipeline(const Circuit &input, Architecture arch, const PipelineOptions &opts = {}) {
    validate(input);
    PipelineResult res;
    switch (input.level) {
        case Level::input:
            res.c1 = to_clifford_rz(input);
            break;
        case Level::clifford_rz:
            res.c1 = input;
            break;
        case Level::clifford_t: {
            res.c1 = input;
            res.c1.level = Level::clifford_rz;
            break;
        }
        case Level::primitive:
            fail(ErrorKind::unsupported, "primitive-level circuits cannot be re-estimated");
    }
    auto counts = gate_counts(res.c1);
    InputCounts in{counts.rz, counts.clifford, counts.t};

    BudgetOptions bopts;
    bopts.d_max = arch.grid.d_max;
    bopts.folded = arch.folded;
    bopts.extras.t_count = counts.t;
    if (opts.budget_mode == BudgetMode::halving) {
        res.budget = solve_halving(in.rz, in.clifford, opts.target_error, arch.noise, arch.cultivation, arch.synthesis,
                                   bopts);
    } else {
        res.grid = sensitivity_grid(in.rz, in.clifford, opts.target_error, arch.noise, arch.cultivation,
                                    arch.synthesis, arch.grid, bopts);
        res.budget = res.grid->best;
    }
    arch.d = opts.d_override.value_or(res.budget.d);
    check_distance(arch.d);

    res.c2 = expand_rz(res.c1, arch.synthesis, res.budget.eps_rz);
    LayoutGrid layout = generate_layout(arch.layout.strategy, res.c2.num_qubits, arch.layout.t_factories,
                                        arch.s_factories());
    res.program = compile_primitives(res.c2, arch, layout);
    if (opts.check_intents &&
        logical_intents_of_input(res.c2) != logical_intents_of_primitives(res.program.circuit)) {
        fail(ErrorKind::internal, "primitive lowering changed the multiset of logical gates");
    }
    std::optional<double> rep_t;
    if (res.budget.rep > 0) {
        rep_t = res.budget.rep;
    }
    res.report = build_report(res.program, arch, res.budget, rep_t, in);
    return res;
}

}  // namespace ftre
