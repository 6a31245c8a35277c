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

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "ftre/pipeline.hpp"
#include "ftre/synthetic.hpp"
#include "oracles.hpp"

namespace ftre {
namespace {

using Edges = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

TEST(CriticalPath, EmptyDag) {
    auto cp = critical_path(make_dag(0, {}, {}));
    EXPECT_EQ(cp.length.count(), 0);
    EXPECT_TRUE(cp.path.empty());
}

TEST(CriticalPath, Chain) {
    auto cp = critical_path(make_dag(3, {{0, 1}, {1, 2}}, {Duration{5}, Duration{7}, Duration{11}}));
    EXPECT_EQ(cp.length.count(), 23);
    EXPECT_EQ(cp.path, (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(CriticalPath, DiamondTakesHeavierBranch) {
    auto cp = critical_path(
        make_dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {Duration{1}, Duration{2}, Duration{9}, Duration{1}}));
    EXPECT_EQ(cp.length.count(), 11);
    EXPECT_EQ(cp.path, (std::vector<std::uint32_t>{0, 2, 3}));
}

TEST(CriticalPath, TiesPreferSmallerIndex) {
    auto cp = critical_path(
        make_dag(4, {{0, 2}, {1, 2}, {2, 3}}, {Duration{4}, Duration{4}, Duration{1}, Duration{0}}));
    EXPECT_EQ(cp.length.count(), 5);
    EXPECT_EQ(cp.path, (std::vector<std::uint32_t>{0, 2}));
}

TEST(CriticalPath, MatchesPathEnumerationOnRandomDags) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; trial++) {
        std::size_t n = 1 + rng() % 12;
        Edges edges;
        double density = static_cast<double>(rng() % 100) / 100.0;
        for (std::uint32_t a = 0; a < n; a++) {
            for (std::uint32_t b = a + 1; b < n; b++) {
                if (static_cast<double>(rng() % 1000) / 1000.0 < density) {
                    edges.emplace_back(a, b);
                }
            }
        }
        std::vector<std::int64_t> w(n);
        std::vector<Duration> dur(n);
        for (std::size_t i = 0; i < n; i++) {
            w[i] = static_cast<std::int64_t>(rng() % 1000000);
            dur[i] = Duration{w[i]};
        }
        OpDag dag = make_dag(n, edges, dur);
        auto cp = critical_path(dag);
        ASSERT_EQ(cp.length.count(), oracle::longest_path_by_enumeration(n, edges, w)) << "trial " << trial;
        std::int64_t sum = 0;
        std::set<std::pair<std::uint32_t, std::uint32_t>> edge_set(edges.begin(), edges.end());
        for (std::size_t i = 0; i < cp.path.size(); i++) {
            sum += w[cp.path[i]];
            if (i > 0) {
                EXPECT_TRUE(edge_set.count({cp.path[i - 1], cp.path[i]}));
            }
        }
        EXPECT_EQ(sum, cp.length.count());
    }
}

TEST(CriticalPath, CycleIsAnInternalError) {
    OpDag dag = make_dag(2, {{0, 1}, {1, 0}}, {Duration{1}, Duration{1}});
    try {
        critical_path(dag);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::internal);
    }
}

TEST(BuildDag, FollowsOperandsAndControls) {
    Circuit c(3, Level::primitive);
    c.append(GateKind::H, {0});
    c.append(GateKind::Measure, {1});
    c.append(GateKind::CNOT, {0, 2});
    c.append(GateKind::X, {2}).ctrl = 1;
    std::vector<Duration> d(4, Duration{1});
    OpDag dag = build_dag(c, d);
    EXPECT_EQ(dag.edges, (Edges{{0, 2}, {1, 3}, {2, 3}}));
}

TEST(BuildDag, RejectsNegativeDurations) {
    Circuit c(1, Level::primitive);
    c.append(GateKind::H, {0});
    std::vector<Duration> d{Duration{-1}};
    EXPECT_THROW(build_dag(c, d), Error);
}

PipelineResult estimate(const std::string &arch, std::uint32_t n = 8, std::uint32_t steps = 1) {
    return run_pipeline(synthetic_trotter(n, steps), preset_from_name(arch));
}

const std::vector<std::string> kArchs{"SSM@current", "MZO@proposed", "DSM-fold@current", "DSNM@current",
                                      "SSOQ@proposed"};

TEST(Report, SerialBoundsCriticalPath) {
    for (const auto &a : kArchs) {
        auto r = estimate(a).report;
        EXPECT_GT(r.critical_path.count(), 0) << a;
        EXPECT_GE(r.serial, r.critical_path) << a;
    }
}

TEST(Report, BreakdownsSumToCriticalPath) {
    for (const auto &a : kArchs) {
        auto r = estimate(a).report;
        Duration by_prim{0}, by_phys{0};
        for (const auto &[k, t] : r.by_primitive) {
            by_prim += t.time;
        }
        for (const auto &[k, t] : r.by_physical) {
            by_phys += t;
        }
        EXPECT_EQ(by_prim, r.critical_path) << a;
        EXPECT_EQ(by_phys, r.critical_path) << a;
        std::set<std::string> classes;
        for (const auto &[k, t] : r.by_physical) {
            classes.insert(k);
        }
        EXPECT_EQ(classes, (std::set<std::string>(report_classes().begin(), report_classes().end())));
    }
}

TEST(Report, QubitAccounting) {
    for (const auto &a : kArchs) {
        auto res = estimate(a);
        const auto &r = res.report;
        EXPECT_EQ(r.logical_qubits, res.program.layout.logical_qubits());
        EXPECT_EQ(r.logical_qubits, res.program.circuit.num_qubits);
        EXPECT_EQ(r.physical_qubits, static_cast<std::uint64_t>(r.d) * r.d * r.logical_qubits);
        EXPECT_EQ(r.d, res.budget.d);
    }
}

TEST(Report, OpCountsCoverEveryOp) {
    auto res = estimate("DSM@current");
    std::size_t total = 0;
    for (const auto &[k, n] : res.report.op_counts) {
        total += n;
    }
    EXPECT_EQ(total, res.program.circuit.ops.size());
}

TEST(Report, CultivationFraction) {
    ResourceReport r;
    EXPECT_EQ(r.cultivation_fraction(), 0);
    r.critical_path = Duration{1000};
    r.by_primitive["CultT"] = {1, Duration{300}};
    r.by_primitive["CultS"] = {1, Duration{200}};
    r.by_primitive["H"] = {1, Duration{500}};
    EXPECT_DOUBLE_EQ(r.cultivation_fraction(), 0.5);
}

TEST(Report, EmittedDocumentValidates) {
    for (const auto &a : kArchs) {
        std::string text = emit_report(estimate(a).report);
        EXPECT_NO_THROW(validate_report_json(text)) << a;
        EXPECT_EQ(text.back(), '\n');
    }
}

TEST(Report, ValidatorCatchesBrokenInvariants) {
    auto j = report_json(estimate("SSM@current").report);
    auto expect_invalid = [](nlohmann::json doc) {
        try {
            validate_report_json(doc.dump());
            ADD_FAILURE() << "accepted " << doc.dump().substr(0, 80);
        } catch (const Error &e) {
            EXPECT_EQ(e.kind(), ErrorKind::validation);
        }
    };
    auto bad = j;
    bad["physical_qubits"] = j["physical_qubits"].get<std::uint64_t>() + 1;
    expect_invalid(bad);
    bad = j;
    bad["serial_us"] = j["critical_path_us"].get<double>() / 2;
    expect_invalid(bad);
    bad = j;
    bad["by_physical"]["Other"] = j["by_physical"]["Other"].get<double>() + 0.01 * j["critical_path_us"].get<double>();
    expect_invalid(bad);
    bad = j;
    bad.erase("fingerprint");
    expect_invalid(bad);
    bad = j;
    bad["schema"] = "ftre-report/2";
    expect_invalid(bad);
    bad = j;
    bad["budget"]["d"] = "eleven";
    expect_invalid(bad);
    EXPECT_THROW(validate_report_json("{"), Error);
}

TEST(Report, DeterministicAndFingerprinted) {
    std::string a = emit_report(estimate("MZO@current").report);
    std::string b = emit_report(estimate("MZO@current").report);
    EXPECT_EQ(a, b);
    auto r1 = estimate("MZO@current").report;
    auto r2 = estimate("MZO@proposed").report;
    EXPECT_NE(r1.fingerprint, r2.fingerprint);
    EXPECT_EQ(r1.fingerprint.size(), 16u);
    EXPECT_EQ(r1.fingerprint, fnv1a_hex(r1.config.dump()));
}

TEST(Report, FnvKnownVectors) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Report, ConfigEchoesArchitecture) {
    auto res = estimate("DSNM@proposed");
    const auto &cfg = res.report.config;
    EXPECT_EQ(cfg["name"], "DSNM@proposed");
    EXPECT_EQ(cfg["primitive_set"], "lattice");
    EXPECT_EQ(cfg["kwargs"]["d"], res.report.d);
    EXPECT_EQ(cfg["kwargs"]["syndrome_rounds"], res.report.d);
    EXPECT_EQ(cfg["layout"]["strategy"], "sandwich");
}

TEST(Csv, PrimitiveBreakdownSortedWithRunningTotal) {
    auto r = estimate("SSM@current").report;
    std::istringstream in(breakdown_primitive_csv(r));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "kind,count,us,cumulative_us");
    double prev = 1e300, cum = 0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::stringstream ls(line);
        for (std::string x; std::getline(ls, x, ',');) {
            f.push_back(x);
        }
        ASSERT_EQ(f.size(), 4u) << line;
        ASSERT_TRUE(r.by_primitive.count(f[0])) << line;
        EXPECT_EQ(std::stoul(f[1]), r.by_primitive.at(f[0]).count);
        double us = std::stod(f[2]);
        EXPECT_LE(us, prev);
        prev = us;
        cum += us;
        EXPECT_NEAR(std::stod(f[3]), cum, 1e-3 * static_cast<double>(rows + 1));
        rows++;
    }
    EXPECT_EQ(rows, r.by_primitive.size());
    EXPECT_NEAR(cum, to_us(r.critical_path), 1e-3 * static_cast<double>(rows));
}

TEST(Csv, PhysicalBreakdownHasFixedClasses) {
    ResourceReport r;
    r.by_physical["2Q"] = from_us(12.5);
    EXPECT_EQ(breakdown_physical_csv(r),
              "class,us\n1Q,0.000\n2Q,12.500\nMeasure,0.000\nReset,0.000\nMovement,0.000\nOther,0.000\n");
}

TEST(OpCosts, IdleSeIsFree) {
    Architecture a = preset_from_name("SSM@current");
    Circuit c(1, Level::primitive);
    c.append(GateKind::SE, {0}).idle = true;
    c.append(GateKind::SE, {0});
    auto costs = op_costs(c, a, std::nullopt);
    EXPECT_EQ(costs[0].total().count(), 0);
    EXPECT_GT(costs[1].total().count(), 0);
}

}  // namespace
}  // namespace ftre
