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

#include <map>
#include <queue>
#include <random>

#include "ftre/layout.hpp"

namespace ftre {
namespace {

const std::vector<LayoutStrategy> kLattice{LayoutStrategy::column, LayoutStrategy::embedded,
                                           LayoutStrategy::sandwich};

template <typename F>
ErrorKind error_kind_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorKind::internal;
}

/// Ancilla-only breadth-first distance (number of ancilla cells) between the patches a and b, or -1.
int ancilla_hops(const LayoutGrid &g, Cell a, Cell b) {
    std::map<Cell, int> dist;
    std::queue<Cell> q;
    const int dr[] = {-1, 1, 0, 0}, dc[] = {0, 0, -1, 1};
    auto adj = [&](Cell c) {
        std::vector<Cell> out;
        for (int k = 0; k < 4; k++) {
            Cell n{c.row + dr[k], c.col + dc[k]};
            if (n.row >= 0 && n.col >= 0 && n.row < g.height() && n.col < g.width()) {
                out.push_back(n);
            }
        }
        return out;
    };
    for (Cell n : adj(a)) {
        if (g.at(n).role == Role::ancilla) {
            dist[n] = 1;
            q.push(n);
        }
    }
    while (!q.empty()) {
        Cell c = q.front();
        q.pop();
        for (Cell n : adj(c)) {
            if (n == b) {
                return dist[c];
            }
            if (g.at(n).role == Role::ancilla && !dist.count(n)) {
                dist[n] = dist[c] + 1;
                q.push(n);
            }
        }
    }
    return -1;
}

TEST(Dense, TwentyDataFiveFactoriesIsFiveByFive) {
    auto g = generate_layout(LayoutStrategy::dense, 20, 5, 0);
    EXPECT_EQ(g.width(), 5);
    EXPECT_EQ(g.height(), 5);
    EXPECT_EQ(g.count(Role::data), 20u);
    EXPECT_EQ(g.count(Role::t_factory), 5u);
    EXPECT_EQ(g.count(Role::empty), 0u);
}

TEST(Dense, NearSquarePacking) {
    for (std::uint32_t n = 1; n < 60; n++) {
        for (std::uint32_t f : {1u, 3u, 10u}) {
            auto g = generate_layout(LayoutStrategy::dense, n, f, f / 2);
            std::uint32_t total = n + f + f / 2;
            auto side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(total)) - 1e-12));
            EXPECT_EQ(g.width(), side);
            EXPECT_EQ(g.height(), (static_cast<int>(total) + side - 1) / side);
            EXPECT_EQ(g.count(Role::ancilla), 0u);
            EXPECT_EQ(g.count(Role::t_factory), f);
            EXPECT_EQ(g.count(Role::s_factory), f / 2);
            EXPECT_EQ(g.logical_qubits(), total);
        }
    }
}

TEST(Column, TwoFactoriesPerDataQubit) {
    auto g = generate_layout(LayoutStrategy::column, 4, 1, 1);
    EXPECT_EQ(g.count(Role::t_factory) + g.count(Role::s_factory), 8u);
    EXPECT_EQ(g.width(), 7);
    for (std::uint32_t n : {1u, 5u, 12u}) {
        auto h = generate_layout(LayoutStrategy::column, n, 3, 0);
        EXPECT_EQ(h.count(Role::t_factory), n);
        EXPECT_EQ(h.count(Role::s_factory), n);
    }
}

TEST(Embedded, FactoryRingAndOverflow) {
    auto g = generate_layout(LayoutStrategy::embedded, 9, 6, 6);
    EXPECT_EQ(g.count(Role::t_factory), 6u);
    EXPECT_EQ(g.count(Role::s_factory), 6u);
    for (Cell c : g.cells_with(Role::t_factory)) {
        bool border = c.row == 0 || c.col == 0 || c.row == g.height() - 1 || c.col == g.width() - 1;
        EXPECT_TRUE(border);
    }
    EXPECT_EQ(error_kind_of([] { generate_layout(LayoutStrategy::embedded, 1, 50, 50); }), ErrorKind::layout);
}

TEST(Sandwich, ExactFactoryCountsAndHighwayAdjacency) {
    for (std::uint32_t n : {1u, 4u, 9u, 30u}) {
        for (std::uint32_t f : {1u, 2u, 7u, 20u}) {
            auto g = generate_layout(LayoutStrategy::sandwich, n, f, f);
            EXPECT_EQ(g.height(), 5);
            EXPECT_EQ(g.count(Role::t_factory), f);
            EXPECT_EQ(g.count(Role::s_factory), f);
            for (Cell c : g.cells_with(Role::data)) {
                bool adjacent = false;
                for (Cell m : {Cell{c.row - 1, c.col}, Cell{c.row + 1, c.col}}) {
                    adjacent = adjacent || (g.in_bounds(m) && g.at(m).role == Role::ancilla);
                }
                EXPECT_TRUE(adjacent);
            }
            // Every pair of data cells is joined through the highway.
            auto data = g.cells_with(Role::data);
            for (std::size_t i = 1; i < data.size(); i++) {
                EXPECT_GT(ancilla_hops(g, data[0], data[i]), 0);
            }
        }
    }
    EXPECT_EQ(error_kind_of([] { generate_layout(LayoutStrategy::sandwich, 3, 0, 0); }), ErrorKind::layout);
}

TEST(Layouts, LatticeInvariantsHold) {
    for (auto s : kLattice) {
        for (std::uint32_t n : {1u, 2u, 7u, 16u}) {
            auto g = generate_layout(s, n, 2, 2);
            EXPECT_NO_THROW(validate_layout(g, n, true));
            for (std::uint32_t q = 0; q < n; q++) {
                EXPECT_EQ(g.at(g.data_cell(q)).role, Role::data);
                EXPECT_EQ(g.at(g.data_cell(q)).qubit, q);
            }
        }
    }
    EXPECT_EQ(error_kind_of([] { generate_layout(LayoutStrategy::dense, 0, 1, 0); }), ErrorKind::layout);
}

TEST(Layouts, ValidatorRejectsBrokenGrids) {
    LayoutGrid g(3, 3, LayoutStrategy::sandwich);
    g.set({1, 1}, Role::data, 0);
    EXPECT_EQ(error_kind_of([&] { validate_layout(g, 1, true); }), ErrorKind::layout);
    EXPECT_EQ(error_kind_of([&] { validate_layout(g, 2, false); }), ErrorKind::layout);
    g.set({0, 1}, Role::ancilla);
    EXPECT_EQ(error_kind_of([&] { validate_layout(g, 1, false); }), ErrorKind::layout);
    EXPECT_NO_THROW(validate_layout(g, 1, true));
}

TEST(Layouts, Deterministic) {
    for (auto s : {LayoutStrategy::dense, LayoutStrategy::column, LayoutStrategy::embedded, LayoutStrategy::sandwich}) {
        EXPECT_EQ(emit_layout_json(generate_layout(s, 11, 4, 3)), emit_layout_json(generate_layout(s, 11, 4, 3)));
    }
}

TEST(Layouts, JsonRoundTrip) {
    for (auto s : {LayoutStrategy::dense, LayoutStrategy::column, LayoutStrategy::embedded, LayoutStrategy::sandwich}) {
        auto g = generate_layout(s, 6, 3, 2);
        auto text = emit_layout_json(g);
        auto back = parse_layout_json(text);
        EXPECT_EQ(render_layout(back), render_layout(g));
        EXPECT_EQ(emit_layout_json(back), text);
    }
    EXPECT_EQ(error_kind_of([] { parse_layout_json("{\"strategy\":\"dense\"}"); }), ErrorKind::parse);
}

TEST(Layouts, RenderGlyphs) {
    auto g = generate_layout(LayoutStrategy::sandwich, 2, 1, 1);
    EXPECT_EQ(render_layout(g), "T \n..\nDD\n..\nS \n");
}

TEST(NearestFactory, SingleFactory) {
    auto g = generate_layout(LayoutStrategy::dense, 3, 1, 0);
    auto f = nearest_available_factory(g, g.data_cell(0), FactoryKind::t, {});
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(g.at(*f).role, Role::t_factory);
}

TEST(NearestFactory, TieGoesToLexicographicallyFirst) {
    LayoutGrid g(3, 3, LayoutStrategy::dense);
    g.set({1, 1}, Role::data, 0);
    g.set({2, 1}, Role::t_factory);
    g.set({1, 0}, Role::t_factory);
    g.set({1, 2}, Role::t_factory);
    auto f = nearest_available_factory(g, {1, 1}, FactoryKind::t, {});
    EXPECT_EQ(*f, (Cell{1, 0}));
    auto f2 = nearest_available_factory(g, {1, 1}, FactoryKind::t, {{1, 0}});
    EXPECT_EQ(*f2, (Cell{1, 2}));
}

TEST(NearestFactory, AllBusyGivesNone) {
    auto g = generate_layout(LayoutStrategy::dense, 2, 2, 0);
    auto fs = g.cells_with(Role::t_factory);
    std::set<Cell> busy(fs.begin(), fs.end());
    EXPECT_FALSE(nearest_available_factory(g, g.data_cell(0), FactoryKind::t, busy).has_value());
    EXPECT_EQ(error_kind_of([&] { nearest_available_factory(g, g.data_cell(0), FactoryKind::s, {}); }),
              ErrorKind::config);
}

TEST(NearestFactory, MatchesExhaustiveScanOnRandomLayouts) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 300; trial++) {
        int w = 2 + static_cast<int>(rng() % 8), h = 2 + static_cast<int>(rng() % 8);
        LayoutGrid g(w, h, LayoutStrategy::dense);
        std::vector<Cell> factories;
        for (int r = 0; r < h; r++) {
            for (int c = 0; c < w; c++) {
                if (rng() % 3 == 0) {
                    g.set({r, c}, Role::t_factory);
                    factories.push_back({r, c});
                }
            }
        }
        if (factories.empty()) {
            continue;
        }
        std::set<Cell> busy;
        for (Cell f : factories) {
            if (rng() % 3 == 0) {
                busy.insert(f);
            }
        }
        Cell from{static_cast<int>(rng() % static_cast<unsigned>(h)), static_cast<int>(rng() % static_cast<unsigned>(w))};
        std::optional<Cell> want;
        for (Cell f : factories) {
            if (busy.count(f)) {
                continue;
            }
            int df = std::abs(f.row - from.row) + std::abs(f.col - from.col);
            if (!want) {
                want = f;
                continue;
            }
            int dw = std::abs(want->row - from.row) + std::abs(want->col - from.col);
            if (df < dw || (df == dw && std::make_pair(f.row, f.col) < std::make_pair(want->row, want->col))) {
                want = f;
            }
        }
        EXPECT_EQ(nearest_available_factory(g, from, FactoryKind::t, busy), want);
    }
}

TEST(Routing, PatchesAcrossOneHighwayCellShareIt) {
    // T above the highway cell that sits above data qubit 0.
    auto g = generate_layout(LayoutStrategy::sandwich, 2, 1, 1);
    Cell t = g.cells_with(Role::t_factory).at(0);
    auto path = route_ancilla_path(g, t, g.data_cell(0));
    ASSERT_EQ(path.size(), 1u);
    EXPECT_EQ(g.at(path[0]).role, Role::ancilla);
    // Side-by-side data patches have no shared ancilla neighbour.
    EXPECT_EQ(route_ancilla_path(g, g.data_cell(0), g.data_cell(1)).size(), 2u);
}

TEST(Routing, PathsAreShortestAndWellFormed) {
    for (auto s : kLattice) {
        auto g = generate_layout(s, 9, 4, 4);
        std::vector<Cell> patches = g.cells_with(Role::data);
        for (Cell f : g.cells_with(Role::t_factory)) {
            patches.push_back(f);
        }
        for (Cell a : patches) {
            for (Cell b : patches) {
                if (a == b) {
                    continue;
                }
                auto path = route_ancilla_path(g, a, b);
                ASSERT_FALSE(path.empty());
                EXPECT_EQ(manhattan(path.front(), a), 1);
                EXPECT_EQ(manhattan(path.back(), b), 1);
                for (std::size_t i = 0; i < path.size(); i++) {
                    EXPECT_EQ(g.at(path[i]).role, Role::ancilla);
                    if (i > 0) {
                        EXPECT_EQ(manhattan(path[i - 1], path[i]), 1);
                    }
                }
                EXPECT_EQ(static_cast<int>(path.size()), ancilla_hops(g, a, b));
                EXPECT_EQ(route_ancilla_path(g, a, b), path);
            }
        }
    }
}

TEST(Routing, NoPathIsARoutingError) {
    LayoutGrid g(3, 1, LayoutStrategy::sandwich);
    g.set({0, 0}, Role::data, 0);
    g.set({0, 2}, Role::data, 1);
    EXPECT_EQ(error_kind_of([&] { route_ancilla_path(g, {0, 0}, {0, 2}); }), ErrorKind::routing);
    EXPECT_EQ(error_kind_of([&] { route_ancilla_path(g, {0, 0}, {0, 0}); }), ErrorKind::routing);
}

TEST(PatchIndex, DataThenFactoriesThenAncilla) {
    auto g = generate_layout(LayoutStrategy::sandwich, 3, 2, 1);
    PatchIndex idx(g);
    for (std::uint32_t q = 0; q < 3; q++) {
        EXPECT_EQ(idx(g.data_cell(q)), q);
    }
    std::uint32_t next = 3;
    for (int r = 0; r < g.height(); r++) {
        for (int c = 0; c < g.width(); c++) {
            Role role = g.at({r, c}).role;
            if (role == Role::t_factory || role == Role::s_factory) {
                EXPECT_EQ(idx({r, c}), next++);
            }
        }
    }
    for (Cell c : g.cells_with(Role::ancilla)) {
        EXPECT_EQ(idx(c), next++);
    }
    EXPECT_EQ(idx.size(), next);
    EXPECT_EQ(static_cast<std::size_t>(idx.size()), g.logical_qubits());
}

}  // namespace
}  // namespace ftre
