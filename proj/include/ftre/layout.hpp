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

// Logical patch layouts: a grid of cells assigned to data qubits, factories and
// ancilla, with Manhattan geometry, factory search and ancilla routing.

#include <cmath>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ftre/architecture.hpp"
#include "json.hpp"

namespace ftre {

struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell &) const = default;
};

inline int manhattan(Cell a, Cell b) {
    return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

enum class Role : std::uint8_t { empty, data, t_factory, s_factory, ancilla };
enum class FactoryKind { t, s };

inline constexpr Role factory_role(FactoryKind k) {
    return k == FactoryKind::t ? Role::t_factory : Role::s_factory;
}

inline constexpr char role_glyph(Role r) {
    switch (r) {
        case Role::empty:
            return ' ';
        case Role::data:
            return 'D';
        case Role::t_factory:
            return 'T';
        case Role::s_factory:
            return 'S';
        case Role::ancilla:
            return '.';
    }
    return '?';
}

struct CellInfo {
    Role role = Role::empty;
    /// Circuit qubit for data cells.
    std::uint32_t qubit = 0;
    bool operator==(const CellInfo &) const = default;
};

class LayoutGrid {
   public:
    LayoutGrid() = default;
    LayoutGrid(int width, int height, LayoutStrategy strategy)
        : width_(width), height_(height), strategy_(strategy), cells_(static_cast<std::size_t>(width * height)) {
    }

    int width() const {
        return width_;
    }
    int height() const {
        return height_;
    }
    LayoutStrategy strategy() const {
        return strategy_;
    }
    bool in_bounds(Cell c) const {
        return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_;
    }
    const CellInfo &at(Cell c) const {
        return cells_.at(index(c));
    }
    CellInfo &at(Cell c) {
        return cells_.at(index(c));
    }
    void set(Cell c, Role role, std::uint32_t qubit = 0) {
        at(c) = CellInfo{role, qubit};
    }

    /// Cells with the given role in row-major order.
    std::vector<Cell> cells_with(Role role) const {
        std::vector<Cell> out;
        for (int r = 0; r < height_; r++) {
            for (int c = 0; c < width_; c++) {
                if (at({r, c}).role == role) {
                    out.push_back({r, c});
                }
            }
        }
        return out;
    }
    std::size_t count(Role role) const {
        std::size_t n = 0;
        for (const auto &c : cells_) {
            n += c.role == role;
        }
        return n;
    }
    std::uint32_t num_data() const {
        return static_cast<std::uint32_t>(count(Role::data));
    }
    /// Non-empty cells: every one is a logical patch.
    std::size_t logical_qubits() const {
        return cells_.size() - count(Role::empty);
    }
    Cell data_cell(std::uint32_t q) const {
        for (int r = 0; r < height_; r++) {
            for (int c = 0; c < width_; c++) {
                const auto &info = at({r, c});
                if (info.role == Role::data && info.qubit == q) {
                    return {r, c};
                }
            }
        }
        fail(ErrorKind::layout, "qubit " + std::to_string(q) + " has no data cell");
    }

    std::vector<Cell> neighbors(Cell c) const {
        std::vector<Cell> out;
        for (Cell n : {Cell{c.row - 1, c.col}, Cell{c.row, c.col - 1}, Cell{c.row, c.col + 1}, Cell{c.row + 1, c.col}}) {
            if (in_bounds(n)) {
                out.push_back(n);
            }
        }
        return out;
    }

    bool operator==(const LayoutGrid &) const = default;

   private:
    std::size_t index(Cell c) const {
        if (!in_bounds(c)) {
            fail(ErrorKind::layout, "cell (" + std::to_string(c.row) + "," + std::to_string(c.col) + ") is off the grid");
        }
        return static_cast<std::size_t>(c.row * width_ + c.col);
    }

    int width_ = 0;
    int height_ = 0;
    LayoutStrategy strategy_ = LayoutStrategy::dense;
    std::vector<CellInfo> cells_;
};

////////////////////////////////////////////////////////////
// Invariants.
////////////////////////////////////////////////////////////

/// Ancilla cells reachable through ancilla adjacency from the given seeds.
inline std::set<Cell> ancilla_component(const LayoutGrid &g, const std::vector<Cell> &seeds) {
    std::set<Cell> seen;
    std::deque<Cell> queue;
    for (Cell s : seeds) {
        if (g.at(s).role == Role::ancilla && seen.insert(s).second) {
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        Cell c = queue.front();
        queue.pop_front();
        for (Cell n : g.neighbors(c)) {
            if (g.at(n).role == Role::ancilla && seen.insert(n).second) {
                queue.push_back(n);
            }
        }
    }
    return seen;
}

/// Throws a layout error unless: qubits 0..n_data-1 each own exactly one data cell; lattice layouts
/// connect every data and factory cell through one ancilla component; movement layouts have no ancilla.
inline void validate_layout(const LayoutGrid &g, std::uint32_t n_data, bool lattice) {
    std::vector<int> seen(n_data, 0);
    for (Cell c : g.cells_with(Role::data)) {
        auto q = g.at(c).qubit;
        if (q >= n_data) {
            fail(ErrorKind::layout, "data cell holds undeclared qubit " + std::to_string(q));
        }
        seen[q]++;
    }
    for (std::uint32_t q = 0; q < n_data; q++) {
        if (seen[q] != 1) {
            fail(ErrorKind::layout, "qubit " + std::to_string(q) + " must own exactly one data cell");
        }
    }
    if (!lattice) {
        if (g.count(Role::ancilla) != 0) {
            fail(ErrorKind::layout, "movement layouts have no ancilla cells");
        }
        return;
    }
    auto touches = [&](Cell c, const std::set<Cell> &comp) {
        for (Cell n : g.neighbors(c)) {
            if (comp.count(n)) {
                return true;
            }
        }
        return false;
    };
    auto data = g.cells_with(Role::data);
    if (data.empty()) {
        return;
    }
    auto comp = ancilla_component(g, g.neighbors(data.front()));
    for (Role r : {Role::data, Role::t_factory, Role::s_factory}) {
        for (Cell c : g.cells_with(r)) {
            if (!touches(c, comp)) {
                fail(ErrorKind::layout, std::string("cell (") + std::to_string(c.row) + "," + std::to_string(c.col) +
                                            ") is not connected to the ancilla network");
            }
        }
    }
}

////////////////////////////////////////////////////////////
// Generation.
////////////////////////////////////////////////////////////

namespace layout_detail {

/// T and S factory roles interleaved (T, S, T, S, ...) with the surplus kind at the end.
inline std::vector<Role> interleaved_factories(std::uint32_t n_t, std::uint32_t n_s) {
    std::vector<Role> out;
    std::uint32_t t = 0, s = 0;
    while (t < n_t || s < n_s) {
        if (t < n_t) {
            out.push_back(Role::t_factory);
            t++;
        }
        if (s < n_s) {
            out.push_back(Role::s_factory);
            s++;
        }
    }
    return out;
}

inline LayoutGrid dense(std::uint32_t n, std::uint32_t n_t, std::uint32_t n_s) {
    std::uint32_t total = n + n_t + n_s;
    auto side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(total))));
    while (side * side < static_cast<int>(total)) {
        side++;
    }
    while (side > 1 && (side - 1) * (side - 1) >= static_cast<int>(total)) {
        side--;
    }
    int height = (static_cast<int>(total) + side - 1) / side;
    LayoutGrid g(side, height, LayoutStrategy::dense);
    std::uint32_t i = 0;
    auto place = [&](Role r, std::uint32_t q) {
        g.set({static_cast<int>(i) / side, static_cast<int>(i) % side}, r, q);
        i++;
    };
    for (std::uint32_t q = 0; q < n; q++) {
        place(Role::data, q);
    }
    for (std::uint32_t f = 0; f < n_t; f++) {
        place(Role::t_factory, 0);
    }
    for (std::uint32_t f = 0; f < n_s; f++) {
        place(Role::s_factory, 0);
    }
    return g;
}

/// Two data columns; each data qubit gets one T factory beside it and one S factory below it.
inline LayoutGrid column(std::uint32_t n) {
    const int pairs = static_cast<int>((n + 1) / 2);
    LayoutGrid g(7, 1 + 2 * pairs, LayoutStrategy::column);
    for (int c = 0; c < 7; c++) {
        g.set({0, c}, Role::ancilla);
    }
    for (int p = 0; p < pairs; p++) {
        int r = 1 + 2 * p;
        for (int c : {0, 3, 6}) {
            g.set({r, c}, Role::ancilla);
        }
        for (int c : {0, 1, 3, 5, 6}) {
            g.set({r + 1, c}, Role::ancilla);
        }
        for (int side = 0; side < 2; side++) {
            auto q = static_cast<std::uint32_t>(2 * p + side);
            if (q >= n) {
                continue;
            }
            int dc = side == 0 ? 2 : 4;
            int fc = side == 0 ? 1 : 5;
            g.set({r, dc}, Role::data, q);
            g.set({r, fc}, Role::t_factory);
            g.set({r + 1, dc}, Role::s_factory);
        }
    }
    return g;
}

/// Data block with ancilla rows between data rows, an ancilla ring, then a factory ring.
inline LayoutGrid embedded(std::uint32_t n, std::uint32_t n_t, std::uint32_t n_s) {
    auto k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (k * k < static_cast<int>(n)) {
        k++;
    }
    int rows = (static_cast<int>(n) + k - 1) / k;
    int width = k + 4;
    int height = 2 * rows + 3;
    LayoutGrid g(width, height, LayoutStrategy::embedded);
    for (int r = 1; r < height - 1; r++) {
        for (int c = 1; c < width - 1; c++) {
            g.set({r, c}, Role::ancilla);
        }
    }
    for (std::uint32_t q = 0; q < n; q++) {
        int r = 2 + 2 * (static_cast<int>(q) / k);
        int c = 2 + static_cast<int>(q) % k;
        g.set({r, c}, Role::data, q);
    }
    std::vector<Cell> ring;
    for (int c = 1; c < width - 1; c++) {
        ring.push_back({0, c});
    }
    for (int r = 1; r < height - 1; r++) {
        ring.push_back({r, width - 1});
    }
    for (int c = width - 2; c >= 1; c--) {
        ring.push_back({height - 1, c});
    }
    for (int r = height - 2; r >= 1; r--) {
        ring.push_back({r, 0});
    }
    auto roles = interleaved_factories(n_t, n_s);
    if (roles.size() > ring.size()) {
        fail(ErrorKind::layout, "embedded layout holds at most " + std::to_string(ring.size()) + " factories for " +
                                    std::to_string(n) + " data qubits");
    }
    for (std::size_t i = 0; i < roles.size(); i++) {
        g.set(ring[i], roles[i]);
    }
    return g;
}

/// Rows: factories, ancilla highway, data, ancilla highway, factories. Factory rows are centered and
/// hold exactly the requested factories; the grid widens only when they outnumber the data.
inline LayoutGrid sandwich(std::uint32_t n, std::uint32_t n_t, std::uint32_t n_s) {
    auto roles = interleaved_factories(n_t, n_s);
    std::vector<Role> top, bottom;
    for (std::size_t i = 0; i < roles.size(); i++) {
        (i % 2 == 0 ? top : bottom).push_back(roles[i]);
    }
    int width = static_cast<int>(std::max<std::size_t>(n, top.size()));
    LayoutGrid g(width, 5, LayoutStrategy::sandwich);
    int data_offset = (width - static_cast<int>(n)) / 2;
    for (int c = 0; c < width; c++) {
        g.set({1, c}, Role::ancilla);
        g.set({3, c}, Role::ancilla);
    }
    for (std::uint32_t q = 0; q < n; q++) {
        g.set({2, data_offset + static_cast<int>(q)}, Role::data, q);
    }
    auto fill = [&](int row, const std::vector<Role> &line) {
        int offset = (width - static_cast<int>(line.size())) / 2;
        for (std::size_t i = 0; i < line.size(); i++) {
            g.set({row, offset + static_cast<int>(i)}, line[i]);
        }
    };
    fill(0, top);
    fill(4, bottom);
    return g;
}

}  // namespace layout_detail

/// Builds a layout. Column ignores the requested counts and places one T and one S factory per data qubit.
inline LayoutGrid generate_layout(LayoutStrategy strategy, std::uint32_t n_data, std::uint32_t n_t,
                                  std::uint32_t n_s) {
    if (n_data == 0) {
        fail(ErrorKind::layout, "a layout needs at least one data qubit");
    }
    constexpr std::uint32_t limit = 1u << 20;
    if (n_data > limit || n_t > limit || n_s > limit) {
        fail(ErrorKind::layout, "layout request is too large");
    }
    const bool lattice = strategy != LayoutStrategy::dense;
    if (lattice && n_t == 0) {
        fail(ErrorKind::layout, std::string(layout_strategy_name(strategy)) + " layout needs at least one T factory");
    }
    LayoutGrid g;
    switch (strategy) {
        case LayoutStrategy::dense:
            g = layout_detail::dense(n_data, n_t, n_s);
            break;
        case LayoutStrategy::column:
            g = layout_detail::column(n_data);
            break;
        case LayoutStrategy::embedded:
            g = layout_detail::embedded(n_data, n_t, n_s);
            break;
        case LayoutStrategy::sandwich:
            g = layout_detail::sandwich(n_data, n_t, n_s);
            break;
    }
    validate_layout(g, n_data, lattice);
    return g;
}

////////////////////////////////////////////////////////////
// Factory search and routing.
////////////////////////////////////////////////////////////

/// Closest factory of the kind whose cell is not busy; ties go to the smaller (row, col).
inline std::optional<Cell> nearest_available_factory(const LayoutGrid &g, Cell from, FactoryKind kind,
                                                     const std::set<Cell> &busy) {
    auto all = g.cells_with(factory_role(kind));
    if (all.empty()) {
        fail(ErrorKind::config, std::string("layout has no ") + (kind == FactoryKind::t ? "T" : "S") + " factory");
    }
    std::optional<Cell> best;
    int best_dist = 0;
    for (Cell c : all) {
        if (busy.count(c)) {
            continue;
        }
        int d = manhattan(from, c);
        if (!best || d < best_dist) {
            best = c;
            best_dist = d;
        }
    }
    return best;
}

/// Shortest ancilla path joining the patches at a and b. The first cell touches a, the last touches b.
/// Breadth-first search expands cells in (row, col) order so the result is deterministic.
inline std::vector<Cell> route_ancilla_path(const LayoutGrid &g, Cell a, Cell b) {
    if (a == b) {
        fail(ErrorKind::routing, "cannot route a patch to itself");
    }
    std::set<Cell> goal;
    for (Cell n : g.neighbors(b)) {
        if (g.at(n).role == Role::ancilla) {
            goal.insert(n);
        }
    }
    std::vector<int> parent(static_cast<std::size_t>(g.width() * g.height()), -2);
    auto idx = [&](Cell c) { return static_cast<std::size_t>(c.row * g.width() + c.col); };
    std::deque<Cell> queue;
    auto starts = g.neighbors(a);
    std::sort(starts.begin(), starts.end());
    for (Cell s : starts) {
        if (g.at(s).role == Role::ancilla && parent[idx(s)] == -2) {
            parent[idx(s)] = -1;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        Cell c = queue.front();
        queue.pop_front();
        if (goal.count(c)) {
            std::vector<Cell> path;
            for (int i = static_cast<int>(idx(c)); i >= 0; i = parent[static_cast<std::size_t>(i)]) {
                path.push_back({i / g.width(), i % g.width()});
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (Cell n : g.neighbors(c)) {
            if (g.at(n).role == Role::ancilla && parent[idx(n)] == -2) {
                parent[idx(n)] = static_cast<int>(idx(c));
                queue.push_back(n);
            }
        }
    }
    fail(ErrorKind::routing, "no ancilla path between (" + std::to_string(a.row) + "," + std::to_string(a.col) +
                                 ") and (" + std::to_string(b.row) + "," + std::to_string(b.col) + ")");
}

/// Maps cells to primitive-circuit qubit indices: data qubits first (by qubit id), then factories, then
/// ancilla, both in row-major order.
class PatchIndex {
   public:
    explicit PatchIndex(const LayoutGrid &g) : width_(g.width()), index_(static_cast<std::size_t>(g.width() * g.height()), -1) {
        std::uint32_t n = g.num_data();
        for (Cell c : g.cells_with(Role::data)) {
            index_[slot(c)] = static_cast<std::int64_t>(g.at(c).qubit);
        }
        std::uint32_t next = n;
        for (int r = 0; r < g.height(); r++) {
            for (int c = 0; c < g.width(); c++) {
                Role role = g.at({r, c}).role;
                if (role == Role::t_factory || role == Role::s_factory) {
                    index_[slot({r, c})] = next++;
                }
            }
        }
        for (Cell c : g.cells_with(Role::ancilla)) {
            index_[slot(c)] = next++;
        }
        total_ = next;
    }
    std::uint32_t operator()(Cell c) const {
        auto v = index_.at(slot(c));
        if (v < 0) {
            fail(ErrorKind::internal, "empty cell has no patch index");
        }
        return static_cast<std::uint32_t>(v);
    }
    std::uint32_t size() const {
        return total_;
    }

   private:
    std::size_t slot(Cell c) const {
        return static_cast<std::size_t>(c.row * width_ + c.col);
    }
    int width_;
    std::vector<std::int64_t> index_;
    std::uint32_t total_ = 0;
};

////////////////////////////////////////////////////////////
// Rendering and files.
////////////////////////////////////////////////////////////

/// One text line per grid row: D data, T and S factories, '.' ancilla, ' ' empty.
inline std::string render_layout(const LayoutGrid &g) {
    std::string out;
    for (int r = 0; r < g.height(); r++) {
        for (int c = 0; c < g.width(); c++) {
            out += role_glyph(g.at({r, c}).role);
        }
        out += '\n';
    }
    return out;
}

inline std::string emit_layout_json(const LayoutGrid &g) {
    nlohmann::json j;
    j["strategy"] = std::string(layout_strategy_name(g.strategy()));
    j["width"] = g.width();
    j["height"] = g.height();
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < g.height(); r++) {
        std::string line;
        for (int c = 0; c < g.width(); c++) {
            line += role_glyph(g.at({r, c}).role);
        }
        rows.push_back(line);
    }
    j["rows"] = rows;
    nlohmann::json data = nlohmann::json::array();
    for (std::uint32_t q = 0; q < g.num_data(); q++) {
        Cell c = g.data_cell(q);
        data.push_back({c.row, c.col});
    }
    j["data"] = data;
    j["logical_qubits"] = g.logical_qubits();
    return j.dump(2) + "\n";
}

inline LayoutGrid parse_layout_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &e) {
        fail(ErrorKind::parse, std::string("layout file is not valid JSON: ") + e.what());
    }
    try {
        auto strategy = layout_strategy_from_name(j.at("strategy").get<std::string>());
        if (!strategy) {
            fail(ErrorKind::parse, "layout file has an unknown strategy");
        }
        int width = j.at("width").get<int>();
        int height = j.at("height").get<int>();
        const auto &rows = j.at("rows");
        if (width <= 0 || height <= 0 || rows.size() != static_cast<std::size_t>(height)) {
            fail(ErrorKind::parse, "layout file dimensions do not match its rows");
        }
        LayoutGrid g(width, height, *strategy);
        for (int r = 0; r < height; r++) {
            auto line = rows[static_cast<std::size_t>(r)].get<std::string>();
            if (line.size() != static_cast<std::size_t>(width)) {
                fail(ErrorKind::parse, "layout row " + std::to_string(r) + " has the wrong width");
            }
            for (int c = 0; c < width; c++) {
                Role role = Role::empty;
                bool ok = false;
                for (Role cand : {Role::empty, Role::data, Role::t_factory, Role::s_factory, Role::ancilla}) {
                    if (role_glyph(cand) == line[static_cast<std::size_t>(c)]) {
                        role = cand;
                        ok = true;
                    }
                }
                if (!ok) {
                    fail(ErrorKind::parse, "layout row " + std::to_string(r) + " has an unknown glyph");
                }
                g.set({r, c}, role == Role::data ? Role::empty : role);
            }
        }
        const auto &data = j.at("data");
        for (std::size_t q = 0; q < data.size(); q++) {
            Cell c{data[q].at(0).get<int>(), data[q].at(1).get<int>()};
            if (!g.in_bounds(c) || rows[static_cast<std::size_t>(c.row)].get<std::string>()[static_cast<std::size_t>(c.col)] != 'D') {
                fail(ErrorKind::parse, "data qubit " + std::to_string(q) + " is not on a D cell");
            }
            g.set(c, Role::data, static_cast<std::uint32_t>(q));
        }
        if (g.count(Role::data) != data.size()) {
            fail(ErrorKind::parse, "layout file has unassigned data cells");
        }
        return g;
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::parse, std::string("malformed layout file: ") + e.what());
    }
}

}  // namespace ftre
