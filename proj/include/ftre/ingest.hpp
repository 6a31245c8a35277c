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

// Circuit readers and writers: an OpenQASM 2.0 subset and the native JSON format.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ftre/circuit.hpp"
#include "json.hpp"

namespace ftre {

struct ParseDiagnostic {
    enum class Severity { error, warning };
    int line = 0;
    int column = 0;
    std::string message;
    Severity severity = Severity::error;
    /// JSON pointer of the offending element (native format only).
    std::string path;

    std::string str() const {
        std::string where = path.empty() ? std::to_string(line) + ":" + std::to_string(column) : path;
        return where + ": " + (severity == Severity::error ? "error: " : "warning: ") + message;
    }
};

class ParseError : public Error {
   public:
    explicit ParseError(std::vector<ParseDiagnostic> diags)
        : Error(ErrorKind::parse, summarize(diags)), diagnostics_(std::move(diags)) {
    }
    const std::vector<ParseDiagnostic> &diagnostics() const noexcept {
        return diagnostics_;
    }

   private:
    static std::string summarize(const std::vector<ParseDiagnostic> &diags) {
        std::string out;
        for (const auto &d : diags) {
            if (!out.empty()) {
                out += "\n";
            }
            out += d.str();
        }
        return out;
    }
    std::vector<ParseDiagnostic> diagnostics_;
};

/// Shortest decimal text that reads back to exactly the same double.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

////////////////////////////////////////////////////////////
// QASM 2.0 subset.
////////////////////////////////////////////////////////////

namespace qasm_detail {

struct Token {
    enum class Kind { ident, number, string, symbol, arrow, eq, end };
    Kind kind = Kind::end;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
   public:
    explicit Lexer(std::string_view src) : src_(src) {
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                t.kind = Token::Kind::end;
                out.push_back(t);
                return out;
            }
            char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.kind = Token::Kind::ident;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    t.text += advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                t.kind = Token::Kind::number;
                while (pos_ < src_.size() &&
                       (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
                    t.text += advance();
                }
                if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                    t.text += advance();
                    if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                        t.text += advance();
                    }
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                        t.text += advance();
                    }
                }
            } else if (c == '"') {
                t.kind = Token::Kind::string;
                advance();
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                    t.text += advance();
                }
                if (pos_ >= src_.size() || src_[pos_] != '"') {
                    throw ParseError({{t.line, t.column, "unterminated string"}});
                }
                advance();
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                t.kind = Token::Kind::arrow;
                t.text = "->";
                advance();
                advance();
            } else if (c == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
                t.kind = Token::Kind::eq;
                t.text = "==";
                advance();
                advance();
            } else if (std::string_view("()[]{};,+-*/^").find(c) != std::string_view::npos) {
                t.kind = Token::Kind::symbol;
                t.text = std::string(1, advance());
            } else {
                throw ParseError({{t.line, t.column, std::string("unexpected character '") + c + "'"}});
            }
            out.push_back(std::move(t));
        }
    }

   private:
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            line_++;
            col_ = 1;
        } else {
            col_++;
        }
        return c;
    }
    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct Register {
    std::uint32_t offset = 0;
    std::uint32_t size = 0;
};

class Parser {
   public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {
    }

    Circuit run() {
        Circuit c(0, Level::input);
        if (peek_ident("OPENQASM")) {
            next();
            const Token &v = next();
            if (v.kind != Token::Kind::number || v.text != "2.0") {
                error(v, "only OPENQASM 2.0 is supported");
            }
            expect(";");
        }
        while (peek().kind != Token::Kind::end) {
            statement(c);
        }
        return c;
    }

   private:
    [[noreturn]] void error(const Token &t, const std::string &msg) {
        throw ParseError({{t.line, t.column, msg}});
    }
    const Token &peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token &next() {
        const Token &t = peek();
        if (pos_ < toks_.size() - 1) {
            pos_++;
        }
        return t;
    }
    bool peek_symbol(const char *s) const {
        return peek().kind == Token::Kind::symbol && peek().text == s;
    }
    bool peek_ident(const char *s) const {
        return peek().kind == Token::Kind::ident && peek().text == s;
    }
    void expect(const char *s) {
        const Token &t = next();
        if (t.kind != Token::Kind::symbol || t.text != s) {
            error(t, std::string("expected '") + s + "'");
        }
    }
    std::string expect_ident() {
        const Token &t = next();
        if (t.kind != Token::Kind::ident) {
            error(t, "expected identifier");
        }
        return t.text;
    }
    std::uint32_t expect_uint() {
        const Token &t = next();
        if (t.kind != Token::Kind::number || t.text.find_first_not_of("0123456789") != std::string::npos ||
            t.text.size() > 9) {
            error(t, "expected nonnegative integer");
        }
        return static_cast<std::uint32_t>(std::stoul(t.text));
    }

    // expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*; unary := '-' unary | atom
    double expr() {
        double v = term();
        while (peek_symbol("+") || peek_symbol("-")) {
            bool plus = next().text == "+";
            double r = term();
            v = plus ? v + r : v - r;
        }
        return v;
    }
    double term() {
        double v = unary();
        while (peek_symbol("*") || peek_symbol("/")) {
            bool mul = next().text == "*";
            double r = unary();
            v = mul ? v * r : v / r;
        }
        return v;
    }
    double unary() {
        if (peek_symbol("-")) {
            next();
            return -unary();
        }
        if (peek_symbol("+")) {
            next();
            return unary();
        }
        return atom();
    }
    double atom() {
        const Token &t = next();
        if (t.kind == Token::Kind::number) {
            char *end = nullptr;
            double v = std::strtod(t.text.c_str(), &end);
            if (end == nullptr || *end != '\0') {
                error(t, "malformed number '" + t.text + "'");
            }
            return v;
        }
        if (t.kind == Token::Kind::ident && t.text == "pi") {
            return PI_VALUE;
        }
        if (t.kind == Token::Kind::symbol && t.text == "(") {
            double v = expr();
            expect(")");
            return v;
        }
        error(t, "malformed expression");
    }

    /// One operand: either reg[i] (single qubit) or reg (whole register).
    std::vector<std::uint32_t> operand(const std::map<std::string, Register> &regs, const char *what) {
        const Token &t = peek();
        std::string name = expect_ident();
        auto it = regs.find(name);
        if (it == regs.end()) {
            error(t, std::string("undeclared ") + what + " register '" + name + "'");
        }
        if (peek_symbol("[")) {
            next();
            const Token &it_tok = peek();
            auto idx = expect_uint();
            expect("]");
            if (idx >= it->second.size) {
                error(it_tok, "index " + std::to_string(idx) + " out of range for '" + name + "'");
            }
            return {it->second.offset + idx};
        }
        std::vector<std::uint32_t> all;
        for (std::uint32_t i = 0; i < it->second.size; i++) {
            all.push_back(it->second.offset + i);
        }
        return all;
    }

    void declare(std::map<std::string, Register> &regs, std::uint32_t &total, const Token &at) {
        std::string name = expect_ident();
        expect("[");
        auto n = expect_uint();
        expect("]");
        expect(";");
        if (qregs_.count(name) || cregs_.count(name)) {
            error(at, "register '" + name + "' redeclared");
        }
        regs[name] = {total, n};
        total += n;
    }

    void statement(Circuit &c) {
        const Token &head = peek();
        if (head.kind != Token::Kind::ident) {
            error(head, "expected statement");
        }
        const std::string word = head.text;
        if (word == "include") {
            next();
            const Token &f = next();
            if (f.kind != Token::Kind::string || f.text != "qelib1.inc") {
                error(f, "only the standard \"qelib1.inc\" include is accepted");
            }
            expect(";");
            return;
        }
        if (word == "qreg") {
            next();
            declare(qregs_, c.num_qubits, head);
            return;
        }
        if (word == "creg") {
            next();
            std::uint32_t total_bits = num_bits_;
            declare(cregs_, total_bits, head);
            num_bits_ = total_bits;
            last_measure_.resize(num_bits_, -1);
            return;
        }
        if (word == "gate" || word == "opaque") {
            error(head, "gate definitions are not supported");
        }
        if (word == "barrier") {
            next();
            while (!peek_symbol(";") && peek().kind != Token::Kind::end) {
                next();
            }
            expect(";");
            return;
        }
        std::optional<std::uint32_t> ctrl;
        if (word == "if") {
            next();
            expect("(");
            const Token &reg_tok = peek();
            std::string reg = expect_ident();
            auto it = cregs_.find(reg);
            if (it == cregs_.end()) {
                error(reg_tok, "undeclared classical register '" + reg + "'");
            }
            const Token &eq = next();
            if (eq.kind != Token::Kind::eq) {
                error(eq, "expected '=='");
            }
            const Token &val_tok = peek();
            auto val = expect_uint();
            expect(")");
            if (it->second.size != 1 || val != 1) {
                error(val_tok, "only conditions of the form if(c==1) on a one-bit register are supported");
            }
            auto m = last_measure_[it->second.offset];
            if (m < 0) {
                error(reg_tok, "condition on a register that was never measured");
            }
            ctrl = static_cast<std::uint32_t>(m);
            if (peek_ident("measure") || peek_ident("reset") || peek_ident("if") || peek_ident("barrier")) {
                error(peek(), "only gate applications may be classically controlled");
            }
        }
        gate_application(c, ctrl);
    }

    void gate_application(Circuit &c, std::optional<std::uint32_t> ctrl) {
        const Token &head = peek();
        std::string name = expect_ident();
        if (name == "measure") {
            auto qs = operand(qregs_, "quantum");
            const Token &arrow = next();
            if (arrow.kind != Token::Kind::arrow) {
                error(arrow, "expected '->'");
            }
            auto bits = operand(cregs_, "classical");
            expect(";");
            if (qs.size() != bits.size()) {
                error(head, "measure operand sizes differ");
            }
            for (std::size_t i = 0; i < qs.size(); i++) {
                last_measure_[bits[i]] = static_cast<std::int64_t>(c.ops.size());
                c.append(GateKind::Measure, {qs[i]});
            }
            return;
        }
        static const std::map<std::string, GateKind> table{
            {"id", GateKind::I},    {"x", GateKind::X},     {"y", GateKind::Y},    {"z", GateKind::Z},
            {"h", GateKind::H},     {"s", GateKind::S},     {"sdg", GateKind::Sdg}, {"t", GateKind::T},
            {"tdg", GateKind::Tdg}, {"rz", GateKind::Rz},   {"rx", GateKind::Rx},  {"ry", GateKind::Ry},
            {"cx", GateKind::CNOT}, {"CX", GateKind::CNOT}, {"cz", GateKind::CZ},  {"swap", GateKind::SWAP},
            {"ccx", GateKind::Toffoli}, {"reset", GateKind::Reset},
        };
        auto it = table.find(name);
        if (it == table.end()) {
            error(head, "unsupported gate '" + name + "'");
        }
        GateKind kind = it->second;
        std::optional<double> angle;
        if (peek_symbol("(")) {
            next();
            const Token &at = peek();
            angle = expr();
            expect(")");
            if (!std::isfinite(*angle)) {
                error(at, "angle is not finite");
            }
        }
        if (is_rotation(kind) != angle.has_value()) {
            error(head, is_rotation(kind) ? "rotation '" + name + "' needs an angle" : "'" + name + "' takes no angle");
        }
        std::vector<std::vector<std::uint32_t>> args;
        args.push_back(operand(qregs_, "quantum"));
        while (peek_symbol(",")) {
            next();
            args.push_back(operand(qregs_, "quantum"));
        }
        expect(";");
        if (args.size() != gate_arity(kind)) {
            error(head, "'" + name + "' expects " + std::to_string(gate_arity(kind)) + " operand(s)");
        }
        std::size_t width = 1;
        for (const auto &a : args) {
            if (a.size() != 1) {
                if (width != 1 && a.size() != width) {
                    error(head, "register operands have different sizes");
                }
                width = a.size();
            }
        }
        for (std::size_t i = 0; i < width; i++) {
            GateOp op;
            op.kind = kind;
            op.angle = angle;
            op.ctrl = ctrl;
            for (const auto &a : args) {
                op.qubits.push_back(a.size() == 1 ? a[0] : a[i]);
            }
            for (std::size_t x = 0; x < op.qubits.size(); x++) {
                for (std::size_t y = 0; y < x; y++) {
                    if (op.qubits[x] == op.qubits[y]) {
                        error(head, "repeated qubit operand");
                    }
                }
            }
            c.ops.push_back(std::move(op));
        }
    }

    static constexpr double PI_VALUE = 3.141592653589793238462643383279502884;

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::map<std::string, Register> qregs_;
    std::map<std::string, Register> cregs_;
    std::uint32_t num_bits_ = 0;
    std::vector<std::int64_t> last_measure_;
};

}  // namespace qasm_detail

/// Parses the supported OpenQASM 2.0 subset. Throws ParseError with located diagnostics.
inline Circuit parse_qasm(std::string_view source) {
    try {
        qasm_detail::Lexer lexer(source);
        qasm_detail::Parser parser(lexer.run());
        Circuit c = parser.run();
        validate(c);
        return c;
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &e) {
        throw ParseError({{0, 0, e.what()}});
    }
}

/// Writes a circuit as OpenQASM 2.0 with one register "q" and one single-bit register per measurement.
inline std::string emit_qasm(const Circuit &c) {
    validate(c);
    std::ostringstream out;
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out << "qreg q[" << c.num_qubits << "];\n";
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        if (c.ops[i].kind == GateKind::Measure) {
            out << "creg m" << i << "[1];\n";
        }
    }
    static const std::map<GateKind, const char *> names{
        {GateKind::I, "id"},  {GateKind::X, "x"},     {GateKind::Y, "y"},     {GateKind::Z, "z"},
        {GateKind::H, "h"},   {GateKind::S, "s"},     {GateKind::Sdg, "sdg"}, {GateKind::T, "t"},
        {GateKind::Tdg, "tdg"}, {GateKind::Rz, "rz"}, {GateKind::Rx, "rx"},   {GateKind::Ry, "ry"},
        {GateKind::CNOT, "cx"}, {GateKind::CZ, "cz"}, {GateKind::SWAP, "swap"}, {GateKind::Toffoli, "ccx"},
        {GateKind::Reset, "reset"},
    };
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        const auto &op = c.ops[i];
        if (op.ctrl) {
            out << "if(m" << *op.ctrl << "==1) ";
        }
        if (op.kind == GateKind::Measure) {
            out << "measure q[" << op.qubits[0] << "] -> m" << i << "[0];\n";
            continue;
        }
        auto it = names.find(op.kind);
        if (it == names.end()) {
            fail(ErrorKind::unsupported, "QASM output cannot express " + std::string(gate_name(op.kind)));
        }
        out << it->second;
        if (op.angle) {
            out << "(" << format_double(*op.angle) << ")";
        }
        for (std::size_t k = 0; k < op.qubits.size(); k++) {
            out << (k == 0 ? " " : ",") << "q[" << op.qubits[k] << "]";
        }
        out << ";\n";
    }
    return out.str();
}

////////////////////////////////////////////////////////////
// Native JSON.
////////////////////////////////////////////////////////////

/// Canonical native text: keys sorted, angles at 17 significant digits, default-valued fields omitted.
inline std::string emit_native(const Circuit &c) {
    std::string out = "{";
    if (!c.labels.empty()) {
        out += "\"labels\":[";
        for (std::size_t i = 0; i < c.labels.size(); i++) {
            out += (i ? "," : "") + nlohmann::json(c.labels[i]).dump();
        }
        out += "],";
    }
    out += "\"level\":\"" + std::string(level_name(c.level)) + "\",\"ops\":[";
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        const auto &op = c.ops[i];
        out += i ? ",{" : "{";
        if (op.angle) {
            out += "\"angle\":" + format_double(*op.angle) + ",";
        }
        if (op.ctrl) {
            out += "\"ctrl\":" + std::to_string(*op.ctrl) + ",";
        }
        if (op.idle) {
            out += "\"idle\":true,";
        }
        if (op.intent) {
            out += "\"intent\":\"" + std::string(gate_name(*op.intent)) + "\",";
        }
        out += "\"kind\":\"" + std::string(gate_name(op.kind)) + "\",";
        if (!op.matrix.empty()) {
            out += "\"matrix\":[";
            for (std::size_t k = 0; k < op.matrix.size(); k++) {
                out += (k ? ",[" : "[") + format_double(op.matrix[k].real()) + "," +
                       format_double(op.matrix[k].imag()) + "]";
            }
            out += "],";
        }
        out += "\"qubits\":[";
        for (std::size_t k = 0; k < op.qubits.size(); k++) {
            out += (k ? "," : "") + std::to_string(op.qubits[k]);
        }
        out += "]";
        if (op.rounds != 1) {
            out += ",\"rounds\":" + std::to_string(op.rounds);
        }
        if (op.sites != 0) {
            out += ",\"sites\":" + format_double(op.sites);
        }
        out += "}";
    }
    out += "],\"qubits\":" + std::to_string(c.num_qubits) + "}";
    return out;
}

namespace native_detail {

[[noreturn]] inline void schema_error(const std::string &path, const std::string &msg) {
    ParseDiagnostic d;
    d.path = path.empty() ? "/" : path;
    d.message = msg;
    throw ParseError({d});
}

inline std::uint32_t get_uint(const nlohmann::json &j, const std::string &path) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0 || j.get<std::int64_t>() > 0xFFFFFFFFLL) {
        schema_error(path, "expected a nonnegative integer");
    }
    return static_cast<std::uint32_t>(j.get<std::int64_t>());
}

inline double get_double(const nlohmann::json &j, const std::string &path) {
    if (!j.is_number()) {
        schema_error(path, "expected a number");
    }
    double v = j.get<double>();
    if (!std::isfinite(v)) {
        schema_error(path, "expected a finite number");
    }
    return v;
}

inline GateOp parse_op(const nlohmann::json &j, const std::string &path) {
    if (!j.is_object()) {
        schema_error(path, "expected an object");
    }
    GateOp op;
    if (!j.contains("kind") || !j["kind"].is_string()) {
        schema_error(path + "/kind", "missing or non-string gate kind");
    }
    auto kind = gate_from_name(j["kind"].get<std::string>());
    if (!kind) {
        schema_error(path + "/kind", "unknown gate kind '" + j["kind"].get<std::string>() + "'");
    }
    op.kind = *kind;
    if (!j.contains("qubits") || !j["qubits"].is_array()) {
        schema_error(path + "/qubits", "missing qubit list");
    }
    for (std::size_t k = 0; k < j["qubits"].size(); k++) {
        op.qubits.push_back(get_uint(j["qubits"][k], path + "/qubits/" + std::to_string(k)));
    }
    for (const auto &[key, value] : j.items()) {
        const std::string p = path + "/" + key;
        if (key == "kind" || key == "qubits") {
            continue;
        } else if (key == "angle") {
            if (!is_rotation(op.kind)) {
                schema_error(p, "angle is only allowed on Rz, Rx, Ry");
            }
            op.angle = get_double(value, p);
        } else if (key == "ctrl") {
            op.ctrl = get_uint(value, p);
        } else if (key == "idle") {
            if (!value.is_boolean()) {
                schema_error(p, "expected a boolean");
            }
            op.idle = value.get<bool>();
        } else if (key == "intent") {
            auto k = value.is_string() ? gate_from_name(value.get<std::string>()) : std::nullopt;
            if (!k) {
                schema_error(p, "unknown intent gate kind");
            }
            op.intent = *k;
        } else if (key == "matrix") {
            if (!value.is_array()) {
                schema_error(p, "expected an array of [re, im] pairs");
            }
            for (std::size_t k = 0; k < value.size(); k++) {
                const auto &e = value[k];
                std::string ep = p + "/" + std::to_string(k);
                if (!e.is_array() || e.size() != 2) {
                    schema_error(ep, "expected [re, im]");
                }
                op.matrix.emplace_back(get_double(e[0], ep + "/0"), get_double(e[1], ep + "/1"));
            }
        } else if (key == "rounds") {
            op.rounds = get_uint(value, p);
        } else if (key == "sites") {
            op.sites = get_double(value, p);
        } else {
            schema_error(p, "unknown field");
        }
    }
    if (is_rotation(op.kind) && !op.angle) {
        schema_error(path, std::string(gate_name(op.kind)) + " requires an angle");
    }
    return op;
}

}  // namespace native_detail

/// Parses the native JSON circuit format. Schema violations name the JSON pointer of the offending value.
inline Circuit parse_native(std::string_view text) {
    using native_detail::schema_error;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &e) {
        ParseDiagnostic d;
        d.column = static_cast<int>(e.byte);
        d.message = e.what();
        throw ParseError({d});
    } catch (const nlohmann::json::exception &e) {
        ParseDiagnostic d;
        d.message = e.what();
        throw ParseError({d});
    }
    if (!doc.is_object()) {
        schema_error("", "expected a JSON object");
    }
    Circuit c;
    for (const auto &[key, value] : doc.items()) {
        if (key != "qubits" && key != "ops" && key != "level" && key != "labels") {
            schema_error("/" + key, "unknown field");
        }
    }
    if (!doc.contains("qubits")) {
        schema_error("/qubits", "missing qubit count");
    }
    c.num_qubits = native_detail::get_uint(doc["qubits"], "/qubits");
    c.level = Level::input;
    if (doc.contains("level")) {
        auto lvl = doc["level"].is_string() ? level_from_name(doc["level"].get<std::string>()) : std::nullopt;
        if (!lvl) {
            schema_error("/level", "expected one of input, clifford_rz, clifford_t, primitive");
        }
        c.level = *lvl;
    }
    if (doc.contains("labels")) {
        if (!doc["labels"].is_array()) {
            schema_error("/labels", "expected an array of strings");
        }
        for (std::size_t i = 0; i < doc["labels"].size(); i++) {
            if (!doc["labels"][i].is_string()) {
                schema_error("/labels/" + std::to_string(i), "expected a string");
            }
            c.labels.push_back(doc["labels"][i].get<std::string>());
        }
    }
    if (!doc.contains("ops") || !doc["ops"].is_array()) {
        schema_error("/ops", "missing op array");
    }
    for (std::size_t i = 0; i < doc["ops"].size(); i++) {
        c.ops.push_back(native_detail::parse_op(doc["ops"][i], "/ops/" + std::to_string(i)));
    }
    if (!c.labels.empty() && c.labels.size() != c.num_qubits) {
        schema_error("/labels", "label count does not match qubit count");
    }
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        try {
            validate_op(c, i);
        } catch (const Error &e) {
            schema_error("/ops/" + std::to_string(i), e.what());
        }
    }
    return c;
}

}  // namespace ftre
