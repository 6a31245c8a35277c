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

#include "ftre/ingest.hpp"
#include "ftre/linalg.hpp"

namespace ftre {
namespace {

const double kPi = 3.14159265358979323846;

ParseError expect_parse_error(std::string_view src, bool native = false) {
    try {
        if (native) {
            parse_native(src);
        } else {
            parse_qasm(src);
        }
    } catch (const ParseError &e) {
        EXPECT_FALSE(e.diagnostics().empty());
        return e;
    }
    ADD_FAILURE() << "expected a parse error for: " << src;
    return ParseError({});
}

/// Random circuit over the whole QASM-expressible alphabet, with measurement-conditioned gates.
Circuit random_circuit(std::mt19937_64 &rng, std::uint32_t n, int gates) {
    const std::vector<GateKind> one{GateKind::I,  GateKind::X,  GateKind::Y,   GateKind::Z,  GateKind::H,
                                    GateKind::S,  GateKind::Sdg, GateKind::T,  GateKind::Tdg, GateKind::Rz,
                                    GateKind::Rx, GateKind::Ry, GateKind::Reset, GateKind::Measure};
    const std::vector<GateKind> two{GateKind::CNOT, GateKind::CZ, GateKind::SWAP};
    std::uniform_real_distribution<double> angle(-4, 4);
    Circuit c(n);
    std::vector<std::uint32_t> measures;
    for (int i = 0; i < gates; i++) {
        auto q = static_cast<std::uint32_t>(rng() % n);
        auto r = rng() % 10;
        if (r < 2 && n >= 2) {
            auto p = static_cast<std::uint32_t>((q + 1 + rng() % (n - 1)) % n);
            c.append(two[rng() % two.size()], {q, p});
        } else if (r == 2 && n >= 3) {
            c.append(GateKind::Toffoli, {0, 1, 2});
        } else {
            GateKind k = one[rng() % one.size()];
            if (is_rotation(k)) {
                c.append_rotation(k, q, angle(rng));
            } else {
                c.append(k, {q});
            }
        }
        if (c.ops.back().kind == GateKind::Measure) {
            measures.push_back(static_cast<std::uint32_t>(c.ops.size() - 1));
        } else if (!measures.empty() && rng() % 5 == 0 && c.ops.back().qubits.size() == 1 &&
                   c.ops.back().kind != GateKind::Reset) {
            c.ops.back().ctrl = measures[rng() % measures.size()];
        }
    }
    return c;
}

TEST(ParseQasm, RzWithPiExpression) {
    auto c = parse_qasm("OPENQASM 2.0;\nqreg q[1];\nrz(pi/4) q[0];\n");
    ASSERT_EQ(c.ops.size(), 1u);
    EXPECT_EQ(c.ops[0].kind, GateKind::Rz);
    EXPECT_DOUBLE_EQ(*c.ops[0].angle, kPi / 4);
    EXPECT_EQ(c.level, Level::input);
}

TEST(ParseQasm, HeaderIsOptional) {
    auto c = parse_qasm("qreg q[1]; rz(pi/4) q[0];");
    ASSERT_EQ(c.ops.size(), 1u);
    EXPECT_NEAR(*c.ops[0].angle, 0.7853981633974483, 1e-16);
}

TEST(ParseQasm, Cnot) {
    auto c = parse_qasm("qreg q[2]; cx q[0],q[1];");
    ASSERT_EQ(c.ops.size(), 1u);
    EXPECT_EQ(c.ops[0].kind, GateKind::CNOT);
    EXPECT_EQ(c.ops[0].qubits, (std::vector<std::uint32_t>{0, 1}));
}

TEST(ParseQasm, ExpressionArithmetic) {
    auto c = parse_qasm("qreg q[1]; rz(-(pi - 0.5) * 2 / 4 + 1e-1) q[0]; rx(-pi) q[0];");
    ASSERT_EQ(c.ops.size(), 2u);
    EXPECT_DOUBLE_EQ(*c.ops[0].angle, -(kPi - 0.5) * 2 / 4 + 0.1);
    EXPECT_DOUBLE_EQ(*c.ops[1].angle, -kPi);
}

TEST(ParseQasm, RegistersCommentsMeasureResetAndConditions) {
    auto c = parse_qasm(
        "OPENQASM 2.0;\n"
        "include \"qelib1.inc\";\n"
        "// two registers\n"
        "qreg a[2];\nqreg b[1];\ncreg c[1];\n"
        "h a[1];\n"
        "barrier a, b;\n"
        "measure a[1] -> c[0];\n"
        "if(c==1) x b[0];\n"
        "reset a[0];\n");
    EXPECT_EQ(c.num_qubits, 3u);
    ASSERT_EQ(c.ops.size(), 4u);
    EXPECT_EQ(c.ops[0].qubits[0], 1u);
    EXPECT_EQ(c.ops[1].kind, GateKind::Measure);
    EXPECT_EQ(c.ops[2].kind, GateKind::X);
    EXPECT_EQ(c.ops[2].qubits[0], 2u);
    ASSERT_TRUE(c.ops[2].ctrl.has_value());
    EXPECT_EQ(*c.ops[2].ctrl, 1u);
    EXPECT_EQ(c.ops[3].kind, GateKind::Reset);
}

TEST(ParseQasm, RegisterBroadcast) {
    auto c = parse_qasm("qreg q[3]; h q;");
    ASSERT_EQ(c.ops.size(), 3u);
    for (std::uint32_t i = 0; i < 3; i++) {
        EXPECT_EQ(c.ops[i].qubits[0], i);
    }
}

TEST(ParseQasm, GateDefinitionsAreRejectedWithLocation) {
    auto e = expect_parse_error("qreg q[1];\ngate foo a { h a; }\n");
    EXPECT_EQ(e.diagnostics()[0].line, 2);
    EXPECT_GE(e.diagnostics()[0].column, 1);
    EXPECT_EQ(e.kind(), ErrorKind::parse);
}

TEST(ParseQasm, MalformedInputsGiveDiagnostics) {
    expect_parse_error("qreg q[1]; rz(pi/) q[0];");
    expect_parse_error("qreg q[1]; rz(1 q[0];");
    expect_parse_error("qreg q[1]; foo q[0];");
    expect_parse_error("qreg q[1]; h q[3];");
    expect_parse_error("qreg q[1]; h q[0]");
    expect_parse_error("OPENQASM 3.0; qreg q[1];");
    expect_parse_error("qreg q[1]; include \"other.inc\";");
    expect_parse_error("qreg q[2]; creg c[2]; measure q[0] -> c[0]; if(c==1) x q[1];");
    expect_parse_error("qreg q[2]; cx q[0],q[0];");
}

TEST(ParseQasm, RoundTripsFiftyGateCircuit) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; trial++) {
        Circuit c = random_circuit(rng, 4, 50);
        std::string text = emit_qasm(c);
        Circuit back = parse_qasm(text);
        EXPECT_EQ(back.num_qubits, c.num_qubits);
        ASSERT_EQ(back.ops.size(), c.ops.size());
        EXPECT_EQ(back.ops, c.ops);
        EXPECT_EQ(emit_qasm(back), text);
    }
}

TEST(ParseQasm, NeverCrashesOnArbitraryBytes) {
    std::mt19937_64 rng(17);
    const std::string alphabet = "qreg[]();->,.0123456789 pi+-*/\n\"hxzcmeasurtOPENQASM gate if==";
    const std::string seed = "OPENQASM 2.0;\nqreg q[2];\ncreg c[1];\nrz(pi/4) q[0];\ncx q[0],q[1];\n"
                             "measure q[0] -> c[0];\nif(c==1) x q[1];\n";
    for (int trial = 0; trial < 3000; trial++) {
        std::string s;
        if (trial % 2 == 0) {
            auto len = rng() % 80;
            for (std::size_t i = 0; i < len; i++) {
                s += trial % 4 == 0 ? static_cast<char>(rng() % 256) : alphabet[rng() % alphabet.size()];
            }
        } else {
            s = seed;
            for (int m = 0; m < 3; m++) {
                auto pos = rng() % s.size();
                switch (rng() % 3) {
                    case 0:
                        s.erase(pos, 1);
                        break;
                    case 1:
                        s.insert(pos, 1, alphabet[rng() % alphabet.size()]);
                        break;
                    default:
                        s[pos] = static_cast<char>(rng() % 256);
                }
                if (s.empty()) {
                    break;
                }
            }
        }
        try {
            Circuit c = parse_qasm(s);
            EXPECT_NO_THROW(validate(c));
        } catch (const ParseError &e) {
            EXPECT_FALSE(e.diagnostics().empty());
        }
    }
}

TEST(ParseNative, OneCnot) {
    auto c = parse_native(R"({"qubits":2,"ops":[{"kind":"CNOT","qubits":[0,1]}]})");
    ASSERT_EQ(c.ops.size(), 1u);
    EXPECT_EQ(c.ops[0].kind, GateKind::CNOT);
    EXPECT_EQ(c.level, Level::input);
}

TEST(ParseNative, AngleOnHIsASchemaError) {
    auto e = expect_parse_error(R"({"qubits":1,"ops":[{"kind":"H","qubits":[0],"angle":0.5}]})", true);
    EXPECT_EQ(e.diagnostics()[0].path.rfind("/ops/0", 0), 0u) << e.diagnostics()[0].path;
}

TEST(ParseNative, SchemaErrorsNameThePath) {
    auto e1 = expect_parse_error(R"({"qubits":1,"ops":[{"kind":"Q","qubits":[0]}]})", true);
    EXPECT_EQ(e1.diagnostics()[0].path, "/ops/0/kind");
    auto e2 = expect_parse_error(R"({"qubits":"two","ops":[]})", true);
    EXPECT_EQ(e2.diagnostics()[0].path, "/qubits");
    auto e3 = expect_parse_error(R"({"qubits":1,"ops":[{"kind":"H","qubits":[0],"colour":1}]})", true);
    EXPECT_EQ(e3.diagnostics()[0].path.rfind("/ops/0", 0), 0u);
    expect_parse_error(R"({"qubits":1,"level":"weird","ops":[]})", true);
    expect_parse_error("[1,2", true);
}

TEST(EmitNative, EmptyCircuitCanonicalText) {
    EXPECT_EQ(emit_native(Circuit(0)), R"({"level":"input","ops":[],"qubits":0})");
}

TEST(EmitNative, AngleAtFullPrecision) {
    Circuit c(1);
    c.append_rotation(GateKind::Rz, 0, 0.1);
    std::string text = emit_native(c);
    EXPECT_NE(text.find("\"angle\":0.10000000000000001"), std::string::npos) << text;
    EXPECT_EQ(*parse_native(text).ops[0].angle, 0.1);
}

TEST(EmitNative, RandomCircuitsRoundTripByteIdentically) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; trial++) {
        Circuit c = random_circuit(rng, 5, 60);
        if (trial % 3 == 0) {
            c.labels = {"a", "b", "c", "d", "e"};
        }
        std::string text = emit_native(c);
        Circuit back = parse_native(text);
        EXPECT_EQ(back, c);
        EXPECT_EQ(emit_native(back), text);
    }
}

TEST(EmitNative, PrimitiveAnnotationsRoundTrip) {
    Circuit c(3, Level::primitive);
    c.append(GateKind::CultT, {2});
    auto &m = c.append(GateKind::Merge, {2, 1, 0});
    m.rounds = 11;
    m.intent = GateKind::T;
    c.append(GateKind::Measure, {2});
    c.append(GateKind::S, {0}).ctrl = 2;
    auto &se = c.append(GateKind::SE, {0});
    se.idle = true;
    c.append(GateKind::AMove, {0, 1}).sites = 3;
    Circuit back = parse_native(emit_native(c));
    EXPECT_EQ(back, c);
}

TEST(EmitNative, UnitaryMatricesRoundTrip) {
    Circuit c(2);
    auto u = rz_matrix(0.3) * rx_matrix(1.1);
    auto &op = c.append(GateKind::U1Q, {1});
    for (int r = 0; r < 2; r++) {
        for (int k = 0; k < 2; k++) {
            op.matrix.push_back(u(r, k));
        }
    }
    Circuit back = parse_native(emit_native(c));
    EXPECT_EQ(back, c);
}

TEST(ParseNative, NeverCrashesOnMutatedDocuments) {
    std::mt19937_64 rng(29);
    std::string base = emit_native(random_circuit(rng, 3, 10));
    for (int trial = 0; trial < 2000; trial++) {
        std::string s = base;
        for (int m = 0; m < 2; m++) {
            auto pos = rng() % s.size();
            s[pos] = "{}[],:\"0123456789abcdefghijklmnopqrstuvwxyz-."[rng() % 45];
        }
        try {
            Circuit c = parse_native(s);
            EXPECT_NO_THROW(validate(c));
        } catch (const ParseError &e) {
            EXPECT_FALSE(e.diagnostics().empty());
        }
    }
}

}  // namespace
}  // namespace ftre
