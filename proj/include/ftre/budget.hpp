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

// Error budgeting: logical error rate model, circuit fidelity, and the two
// procedures that pick (d, eps_rz, eps_m), plus the back-of-envelope estimator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <tuple>
#include <utility>
#include <vector>

#include "ftre/circuit.hpp"
#include "ftre/synthesis.hpp"

namespace ftre {

struct NoiseModel {
    double p = 0.001;
    double p_th = 0.0057;
    double prefactor = 0.03;

    void check() const {
        if (!(p > 0 && p < 1) || !(p_th > 0 && p_th < 1) || !(prefactor > 0)) {
            fail(ErrorKind::domain, "noise model requires 0 < p < 1, 0 < p_th < 1, prefactor > 0");
        }
    }
};

inline void check_distance(int d) {
    if (d < 3 || d % 2 == 0) {
        fail(ErrorKind::domain, "code distance must be odd and at least 3, got " + std::to_string(d));
    }
}

/// Logical error rate per logical operation: prefactor * (p / p_th)^((d + 1) / 2).
inline double ler(const NoiseModel &noise, int d) {
    noise.check();
    check_distance(d);
    return noise.prefactor * std::pow(noise.p / noise.p_th, (d + 1) / 2);
}

/// Smallest odd d >= 3 with ler(d) < target.
inline int min_distance(const NoiseModel &noise, double target_ler) {
    noise.check();
    if (!(target_ler > 0)) {
        fail(ErrorKind::domain, "target logical error rate must be positive");
    }
    double r = noise.p / noise.p_th;
    if (r >= 1) {
        if (ler(noise, 3) < target_ler) {
            return 3;
        }
        fail(ErrorKind::domain, "target logical error rate is unreachable at or above threshold");
    }
    // ler(d) < target  <=>  (d + 1) / 2 > log(target / prefactor) / log(r).
    double bound = std::log(target_ler / noise.prefactor) / std::log(r);
    double n = std::max(2.0, std::floor(bound) + 1);
    if (n > 1e6) {
        fail(ErrorKind::domain, "target logical error rate needs an absurd code distance");
    }
    int d = static_cast<int>(2 * n - 1);
    while (ler(noise, d) >= target_ler) {
        d += 2;
    }
    while (d > 3 && ler(noise, d - 2) < target_ler) {
        d -= 2;
    }
    return d;
}

////////////////////////////////////////////////////////////
// Cultivation repetition table.
////////////////////////////////////////////////////////////

struct CultivationTable {
    /// (eps_m, rep) pairs in descending eps_m.
    std::vector<std::pair<double, double>> anchors{{1e-6, 5}, {6.1e-7, 40}, {1e-9, 100}};
    double folded_divisor = 10;

    void check() const {
        if (anchors.empty()) {
            fail(ErrorKind::config, "cultivation table needs at least one anchor");
        }
        for (std::size_t i = 0; i < anchors.size(); i++) {
            if (!(anchors[i].first > 0 && anchors[i].first < 1) || !(anchors[i].second > 0)) {
                fail(ErrorKind::config, "cultivation anchors need eps in (0,1) and positive rep");
            }
            if (i > 0 && (anchors[i].first >= anchors[i - 1].first || anchors[i].second < anchors[i - 1].second)) {
                fail(ErrorKind::config, "cultivation anchors must have descending eps and nondecreasing rep");
            }
        }
        if (!(folded_divisor > 0)) {
            fail(ErrorKind::config, "folded divisor must be positive");
        }
    }
};

/// Rep of the anchor with the largest eps_m not exceeding the request, divided by the folded divisor if folded.
inline double cultivation_rep(const CultivationTable &cult, double eps_m, bool folded) {
    cult.check();
    if (!(eps_m > 0 && eps_m < 1)) {
        fail(ErrorKind::domain, "eps_m must lie in (0, 1)");
    }
    for (const auto &[eps, rep] : cult.anchors) {
        if (eps <= eps_m) {
            return folded ? rep / cult.folded_divisor : rep;
        }
    }
    fail(ErrorKind::domain, "magic-state error below the strongest cultivation anchor is unattainable");
}

////////////////////////////////////////////////////////////
// Circuit fidelity.
////////////////////////////////////////////////////////////

/// Optional terms beyond the base fidelity formula.
struct FidelityExtras {
    /// T gates already present before synthesis; each consumes a magic state.
    std::uint64_t t_count = 0;
    /// Add two Clifford operations per consumed magic state for teleportation corrections.
    bool teleport_overhead = false;
    /// Weight teleportation corrections by 1/2 (random outcomes) instead of 1.
    bool assume_random_corrections = false;
};

namespace budget_detail {

/// exponent * log1p(-eps) with 0 * anything = 0 (eps = 0 contributes nothing, even for infinite exponents).
inline double weighted_log(double exponent, double eps) {
    double lg = std::log1p(-eps);
    if (lg == 0 || exponent == 0) {
        return 0;
    }
    return exponent * lg;
}

}  // namespace budget_detail

/// Natural log of the circuit fidelity.
inline double log_circuit_fidelity(double eps_rz, double eps_m, double eps_l, std::uint64_t k, std::uint64_t l,
                                   const SynthModel &model, const FidelityExtras &extras = {}) {
    using budget_detail::weighted_log;
    for (double e : {eps_rz, eps_m, eps_l}) {
        if (!(e >= 0 && e < 1)) {
            fail(ErrorKind::domain, "error rates must lie in [0, 1)");
        }
    }
    const double kd = static_cast<double>(k);
    const double log_rz = k == 0 ? 0.0 : eps_rz == 0 ? std::numeric_limits<double>::infinity() : model.abs_log(eps_rz);
    const double magic = model.a_t * kd * log_rz + static_cast<double>(extras.t_count);
    double clifford = static_cast<double>(l) + (k == 0 ? 0.0 : model.a_c * log_rz);
    if (extras.teleport_overhead) {
        clifford += 2 * magic * (extras.assume_random_corrections ? 0.5 : 1.0);
    }
    return weighted_log(kd, eps_rz) + weighted_log(magic, eps_m) + weighted_log(clifford, eps_l);
}

inline double circuit_fidelity(double eps_rz, double eps_m, double eps_l, std::uint64_t k, std::uint64_t l,
                               const SynthModel &model, const FidelityExtras &extras = {}) {
    return std::exp(log_circuit_fidelity(eps_rz, eps_m, eps_l, k, l, model, extras));
}

////////////////////////////////////////////////////////////
// Budget solvers.
////////////////////////////////////////////////////////////

struct BudgetSolution {
    int d = 3;
    double eps_rz = 0;
    double eps_m = 0;
    double eps_l = 0;
    double rep = 0;
    double fidelity = 1;
    bool operator==(const BudgetSolution &) const = default;
};

class InfeasibleBudget : public Error {
   public:
    InfeasibleBudget(const std::string &msg, BudgetSolution best)
        : Error(ErrorKind::infeasible_budget, msg), best_(best) {
    }
    /// The highest-fidelity point that was evaluated.
    const BudgetSolution &best_infeasible() const noexcept {
        return best_;
    }

   private:
    BudgetSolution best_;
};

struct BudgetOptions {
    int d_max = 51;
    bool folded = false;
    FidelityExtras extras;
};

/// Halving heuristic: half the budget to synthesis, a quarter to magic states, the rest decides d.
inline BudgetSolution solve_halving(std::uint64_t k, std::uint64_t l, double target_error, const NoiseModel &noise,
                                    const CultivationTable &cult, const SynthModel &model,
                                    const BudgetOptions &opts = {}) {
    noise.check();
    cult.check();
    model.check();
    if (!(target_error > 0 && target_error < 1)) {
        fail(ErrorKind::domain, "target error must lie in (0, 1)");
    }
    BudgetSolution s;
    s.eps_rz = k == 0 ? 0.0 : -std::expm1(std::log1p(-target_error / 2) / static_cast<double>(k));

    // Weak cultivation if it keeps the magic-state factor within a quarter of the budget.
    const double magic_floor = std::log1p(-target_error / 4);
    const double magic_states = (k == 0 ? 0.0 : model.a_t * static_cast<double>(k) * model.abs_log(s.eps_rz)) +
                                static_cast<double>(opts.extras.t_count);
    s.eps_m = cult.anchors.back().first;
    for (const auto &anchor : cult.anchors) {
        if (budget_detail::weighted_log(magic_states, anchor.first) >= magic_floor) {
            s.eps_m = anchor.first;
            break;
        }
    }
    s.rep = cultivation_rep(cult, s.eps_m, opts.folded);

    BudgetSolution best = s;
    best.fidelity = -1;
    for (int d = 3; d <= opts.d_max; d += 2) {
        s.d = d;
        s.eps_l = ler(noise, d);
        s.fidelity = circuit_fidelity(s.eps_rz, s.eps_m, s.eps_l, k, l, model, opts.extras);
        if (s.fidelity >= 1 - target_error) {
            return s;
        }
        if (s.fidelity > best.fidelity) {
            best = s;
        }
    }
    throw InfeasibleBudget("no code distance up to " + std::to_string(opts.d_max) + " meets the error budget", best);
}

struct GridSpec {
    int d_min = 3;
    int d_max = 51;
    double eps_rz_min = 1e-10;
    double eps_rz_max = 1e-2;
    int points_per_decade = 10;
    /// Additional eps_rz values evaluated alongside the log grid.
    std::vector<double> extra_eps_rz;
    /// eps_m candidates; empty means the cultivation anchors.
    std::vector<double> eps_m;

    std::vector<double> eps_rz_values() const {
        if (!(eps_rz_min > 0) || !(eps_rz_max <= 1) || eps_rz_min > eps_rz_max || points_per_decade < 1) {
            fail(ErrorKind::config, "invalid eps_rz grid");
        }
        std::vector<double> out;
        double decades = std::log10(eps_rz_max / eps_rz_min);
        auto n = static_cast<long>(std::llround(decades * points_per_decade));
        for (long i = 0; i <= n; i++) {
            out.push_back(eps_rz_min * std::pow(10.0, static_cast<double>(i) / points_per_decade));
        }
        out.insert(out.end(), extra_eps_rz.begin(), extra_eps_rz.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

struct GridPoint {
    int d = 3;
    double eps_rz = 0;
    double eps_m = 0;
    double rep = 0;
    double fidelity = 0;
    bool feasible = false;
};

struct GridResult {
    BudgetSolution best;
    std::vector<GridPoint> surface;
    /// Per code distance: the feasible point with the largest eps_m.
    std::vector<GridPoint> contour;
};

/// Cost ordering used to pick among feasible points: fewer cultivation repetitions, then smaller d,
/// then a looser synthesis precision.
inline std::tuple<double, int, double> grid_cost(const GridPoint &p, const SynthModel &model) {
    return {p.rep, p.d, p.eps_rz > 0 ? model.abs_log(p.eps_rz) : 0.0};
}

inline GridResult sensitivity_grid(std::uint64_t k, std::uint64_t l, double target_error, const NoiseModel &noise,
                                   const CultivationTable &cult, const SynthModel &model, const GridSpec &grid,
                                   const BudgetOptions &opts = {}) {
    noise.check();
    cult.check();
    model.check();
    if (!(target_error > 0 && target_error < 1)) {
        fail(ErrorKind::domain, "target error must lie in (0, 1)");
    }
    if (grid.d_min % 2 == 0 || grid.d_max % 2 == 0 || grid.d_min < 3 || grid.d_min > grid.d_max) {
        fail(ErrorKind::config, "grid distance range must be odd, >= 3 and nonempty");
    }
    std::vector<double> eps_ms = grid.eps_m;
    if (eps_ms.empty()) {
        for (const auto &a : cult.anchors) {
            eps_ms.push_back(a.first);
        }
    }
    auto eps_rzs = grid.eps_rz_values();
    if (eps_ms.empty() || eps_rzs.empty()) {
        fail(ErrorKind::config, "empty sensitivity grid");
    }

    GridResult out;
    const GridPoint *best = nullptr;
    const GridPoint *best_infeasible = nullptr;
    out.surface.reserve(eps_rzs.size() * eps_ms.size() * static_cast<std::size_t>((grid.d_max - grid.d_min) / 2 + 1));
    for (int d = grid.d_min; d <= grid.d_max; d += 2) {
        double eps_l = ler(noise, d);
        for (double eps_rz : eps_rzs) {
            for (double eps_m : eps_ms) {
                GridPoint p;
                p.d = d;
                p.eps_rz = eps_rz;
                p.eps_m = eps_m;
                p.rep = cultivation_rep(cult, eps_m, opts.folded);
                p.fidelity = circuit_fidelity(eps_rz, eps_m, eps_l, k, l, model, opts.extras);
                p.feasible = p.fidelity >= 1 - target_error;
                out.surface.push_back(p);
            }
        }
    }
    for (const auto &p : out.surface) {
        if (p.feasible) {
            if (best == nullptr || grid_cost(p, model) < grid_cost(*best, model) ||
                (grid_cost(p, model) == grid_cost(*best, model) && p.fidelity > best->fidelity)) {
                best = &p;
            }
        } else if (best_infeasible == nullptr || p.fidelity > best_infeasible->fidelity) {
            best_infeasible = &p;
        }
    }
    for (int d = grid.d_min; d <= grid.d_max; d += 2) {
        const GridPoint *pick = nullptr;
        for (const auto &p : out.surface) {
            if (p.d == d && p.feasible &&
                (pick == nullptr || p.eps_m > pick->eps_m || (p.eps_m == pick->eps_m && p.fidelity > pick->fidelity))) {
                pick = &p;
            }
        }
        if (pick != nullptr) {
            out.contour.push_back(*pick);
        }
    }
    auto to_solution = [&](const GridPoint &p) {
        return BudgetSolution{p.d, p.eps_rz, p.eps_m, ler(noise, p.d), p.rep, p.fidelity};
    };
    if (best == nullptr) {
        throw InfeasibleBudget("no grid point meets the error budget", to_solution(*best_infeasible));
    }
    out.best = to_solution(*best);
    return out;
}

////////////////////////////////////////////////////////////
// Formula-based estimate.
////////////////////////////////////////////////////////////

struct FormulaEstimate {
    std::uint64_t physical_qubits = 0;
    double total_time_s = 0;
};

/// d^2 physical qubits per logical qubit; time = depth * cycles per moment * cycle time * trials.
inline FormulaEstimate formula_estimate(std::uint64_t n_logical, std::uint64_t depth, std::uint64_t cycles_per_moment,
                                        double cycle_time_s, std::uint64_t trials, int d) {
    check_distance(d);
    if (n_logical == 0 || depth == 0 || cycles_per_moment == 0 || !(cycle_time_s > 0) || trials == 0) {
        fail(ErrorKind::domain, "formula estimate inputs must be positive");
    }
    FormulaEstimate e;
    e.physical_qubits = static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d) * n_logical;
    e.total_time_s = static_cast<double>(depth) * static_cast<double>(cycles_per_moment) * cycle_time_s *
                     static_cast<double>(trials);
    return e;
}

/// Human-readable duration, e.g. "312.5 days".
inline std::string humanize_seconds(double s) {
    char buf[64];
    if (s < 1e-3) {
        std::snprintf(buf, sizeof(buf), "%.3g us", s * 1e6);
    } else if (s < 1) {
        std::snprintf(buf, sizeof(buf), "%.3g ms", s * 1e3);
    } else if (s < 3600) {
        std::snprintf(buf, sizeof(buf), "%.3g s", s);
    } else if (s < 86400) {
        std::snprintf(buf, sizeof(buf), "%.3g hours", s / 3600);
    } else if (s < 86400 * 365.25) {
        std::snprintf(buf, sizeof(buf), "%.4g days", s / 86400);
    } else {
        std::snprintf(buf, sizeof(buf), "%.4g years", s / (86400 * 365.25));
    }
    return buf;
}

}  // namespace ftre
