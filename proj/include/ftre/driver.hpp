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

// Command-line plumbing shared by the ftre tool and its tests: file I/O, architecture
// resolution with flag precedence, circuit loading and parameter sweeps.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ftre/architecture.hpp"
#include "ftre/ingest.hpp"
#include "ftre/pipeline.hpp"
#include "ftre/synthetic.hpp"
#include "json.hpp"

namespace ftre {

////////////////////////////////////////////////////////////
// Files.
////////////////////////////////////////////////////////////

inline std::string read_file(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        fail(ErrorKind::io, "cannot read " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path &p, std::string_view text) {
    std::error_code ec;
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size()))) {
        fail(ErrorKind::io, "cannot write " + p.string());
    }
}

////////////////////////////////////////////////////////////
// Circuits.
////////////////////////////////////////////////////////////

/// Loads "synthetic:<qubits>x<steps>", a .qasm file, or a native JSON circuit file.
inline Circuit load_circuit(const std::string &spec) {
    if (spec.rfind("synthetic:", 0) == 0) {
        unsigned n = 0, steps = 0;
        char x = 0;
        std::istringstream ss(spec.substr(10));
        if (!(ss >> n >> x >> steps) || x != 'x' || !ss.eof()) {
            fail(ErrorKind::config, "synthetic circuits are written synthetic:<qubits>x<steps>");
        }
        return synthetic_trotter(n, steps);
    }
    std::string text = read_file(spec);
    std::filesystem::path p(spec);
    if (p.extension() == ".qasm") {
        return parse_qasm(text);
    }
    return parse_native(text);
}

////////////////////////////////////////////////////////////
// Architecture resolution.
////////////////////////////////////////////////////////////

/// Command-line overrides. Each one beats the config file, which beats the preset.
struct ArchOverrides {
    std::optional<SpeedColumn> speeds;
    std::optional<bool> folded;
    std::optional<Decoding> decoding;
    std::optional<int> d;
    std::optional<std::uint32_t> t_factories;
    std::optional<std::uint32_t> s_factories;
    std::optional<LayoutStrategy> layout;
};

struct ResolvedArch {
    Architecture arch;
    /// Distance fixed by the user rather than chosen by the budget.
    std::optional<int> d_override;
    /// The merged configuration document that produced arch.
    nlohmann::json config;
};

namespace driver_detail {

inline std::string with_column(const std::string &base, SpeedColumn col) {
    std::string s = base;
    if (auto at = s.find('@'); at != std::string::npos) {
        s = s.substr(0, at);
    }
    return s + (col == SpeedColumn::current ? "@current" : "@proposed");
}

/// Config document for --arch: "preset:NAME" (looked up in FTRE_CONFIG_DIR first) or a file path.
inline nlohmann::json arch_document(const std::string &arch) {
    auto parse = [](const std::string &text, const std::string &where) {
        try {
            return nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error &e) {
            fail(ErrorKind::config, where + " is not valid JSON: " + e.what());
        }
    };
    if (arch.rfind("preset:", 0) == 0) {
        std::string name = arch.substr(7);
        if (const char *dir = std::getenv("FTRE_CONFIG_DIR"); dir != nullptr && *dir != '\0') {
            std::filesystem::path p = std::filesystem::path(dir) / (name + ".json");
            if (std::filesystem::exists(p)) {
                return parse(read_file(p), p.string());
            }
        }
        return nlohmann::json{{"base", name}};
    }
    if (!std::filesystem::exists(arch)) {
        fail(ErrorKind::config, "architecture '" + arch + "' is neither a preset:NAME nor an existing file");
    }
    return parse(read_file(arch), arch);
}

}  // namespace driver_detail

inline ResolvedArch resolve_architecture(const std::string &arch_spec, const ArchOverrides &o) {
    nlohmann::json doc = driver_detail::arch_document(arch_spec);
    if (!doc.is_object()) {
        fail(ErrorKind::config, "architecture config must be a JSON object");
    }
    if (o.speeds) {
        if (!doc.contains("base") || !doc["base"].is_string()) {
            fail(ErrorKind::config, "--speeds needs an architecture built on a preset base");
        }
        doc["base"] = driver_detail::with_column(doc["base"].get<std::string>(), *o.speeds);
        doc.erase("speeds");
    }
    auto &kw = doc["kwargs"];
    if (!kw.is_object()) {
        kw = nlohmann::json::object();
    }
    if (o.folded) {
        kw["folded"] = *o.folded;
    }
    if (o.decoding) {
        kw["syndrome_rounds"] = *o.decoding == Decoding::standard ? nlohmann::json("d") : nlohmann::json(1);
    }
    if (o.d) {
        kw["d"] = *o.d;
    }
    auto &lay = doc["layout"];
    if (!lay.is_object()) {
        lay = nlohmann::json::object();
    }
    if (o.t_factories) {
        lay["t_factories"] = *o.t_factories;
    }
    if (o.s_factories) {
        lay["s_factories"] = *o.s_factories;
    }
    if (o.layout) {
        lay["strategy"] = std::string(layout_strategy_name(*o.layout));
    }
    ResolvedArch r;
    r.arch = load_architecture(doc.dump());
    if (kw.contains("d")) {
        r.d_override = r.arch.d;
    }
    r.config = doc;
    return r;
}

////////////////////////////////////////////////////////////
// Sweeps.
////////////////////////////////////////////////////////////

struct SweepSpec {
    std::vector<std::string> architectures;
    std::vector<SpeedColumn> speeds;
    std::vector<bool> folded;
    std::vector<Decoding> decoding;
    std::vector<std::uint32_t> factories;
    double target_error = 0.01;
    BudgetMode budget_mode = BudgetMode::halving;
    /// Applied to every point before the axis values.
    ArchOverrides base;
};

struct SweepRow {
    std::string label;
    std::string architecture;
    SpeedColumn speeds = SpeedColumn::current;
    bool folded = false;
    Decoding decoding = Decoding::correlated;
    std::uint32_t t_factories = 0;
    std::uint32_t s_factories = 0;
    std::optional<ResourceReport> report;
    std::string error;
};

/// Row label in the style ARCH-U|F-C|S, e.g. DSM-F-C.
inline std::string sweep_label(const std::string &family, bool folded, Decoding decoding) {
    return family + (folded ? "-F" : "-U") + (decoding == Decoding::correlated ? "-C" : "-S");
}

/// Evaluates the Cartesian product (architecture, speeds, folded, decoding, factories) in that
/// nesting order, on up to jobs threads. A failing point records its error and the sweep continues.
inline std::vector<SweepRow> run_sweep(const Circuit &circuit, const SweepSpec &spec, unsigned jobs = 1) {
    if (spec.architectures.empty() || spec.speeds.empty() || spec.folded.empty() || spec.decoding.empty() ||
        spec.factories.empty()) {
        fail(ErrorKind::config, "every sweep axis needs at least one value");
    }
    std::vector<SweepRow> rows;
    for (const auto &a : spec.architectures) {
        for (auto sp : spec.speeds) {
            for (bool f : spec.folded) {
                for (auto dec : spec.decoding) {
                    for (auto n : spec.factories) {
                        SweepRow row;
                        row.architecture = a;
                        row.speeds = sp;
                        row.folded = f;
                        row.decoding = dec;
                        row.t_factories = n;
                        rows.push_back(row);
                    }
                }
            }
        }
    }
    auto evaluate = [&](SweepRow &row) {
        std::string family = row.architecture;
        if (family.rfind("preset:", 0) == 0) {
            family = family.substr(7);
        }
        for (const char *cut : {"@", "-fold"}) {
            if (auto at = family.find(cut); at != std::string::npos) {
                family = family.substr(0, at);
            }
        }
        row.label = sweep_label(family, row.folded, row.decoding);
        try {
            ArchOverrides o = spec.base;
            o.speeds = row.speeds;
            o.folded = row.folded;
            o.decoding = row.decoding;
            o.t_factories = row.t_factories;
            std::string arch = row.architecture.rfind("preset:", 0) == 0 || std::filesystem::exists(row.architecture)
                                   ? row.architecture
                                   : "preset:" + row.architecture;
            ResolvedArch ra = resolve_architecture(arch, o);
            row.s_factories = ra.arch.s_factories();
            PipelineOptions popts;
            popts.target_error = spec.target_error;
            popts.budget_mode = spec.budget_mode;
            popts.d_override = ra.d_override;
            row.report = run_pipeline(circuit, ra.arch, popts).report;
        } catch (const std::exception &e) {
            row.error = e.what();
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(rows.size())));
    if (jobs == 1) {
        for (auto &row : rows) {
            evaluate(row);
        }
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; t++) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < rows.size(); i = next++) {
                evaluate(rows[i]);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow> &rows) {
    std::string out =
        "label,architecture,speeds,folded,decoding,t_factories,s_factories,d,logical_qubits,physical_qubits,"
        "critical_path_us,serial_us,cultivation_fraction,status,error\n";
    for (const auto &r : rows) {
        out += r.label + "," + r.architecture + "," + (r.speeds == SpeedColumn::current ? "current" : "proposed") +
               "," + (r.folded ? "F" : "U") + "," + (r.decoding == Decoding::correlated ? "C" : "S") + "," +
               std::to_string(r.t_factories) + "," + std::to_string(r.s_factories) + ",";
        if (r.report) {
            const auto &p = *r.report;
            char frac[32];
            std::snprintf(frac, sizeof frac, "%.6f", p.cultivation_fraction());
            out += std::to_string(p.d) + "," + std::to_string(p.logical_qubits) + "," +
                   std::to_string(p.physical_qubits) + "," + csv_number(to_us(p.critical_path)) + "," +
                   csv_number(to_us(p.serial)) + "," + frac + ",ok,\n";
        } else {
            std::string msg = r.error;
            for (auto &ch : msg) {
                if (ch == ',' || ch == '\n' || ch == '"') {
                    ch = ' ';
                }
            }
            out += ",,,,,,error," + msg + "\n";
        }
    }
    return out;
}

}  // namespace ftre
