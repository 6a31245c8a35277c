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

// Lowering of arbitrary input circuits to Clifford + Rz.
//
// The passes are: multi-qubit gate expansion, two-qubit KAK synthesis (at most
// three CNOTs), single-qubit Euler decomposition and a merge/eject cleanup that
// fuses single-qubit runs and cancels inverse pairs. Exact multiples of pi/4 are
// snapped to {I, Z, S, Sdg, T, Tdg}; everything else stays an Rz.

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "ftre/circuit.hpp"
#include "ftre/linalg.hpp"

namespace ftre {

inline constexpr double SNAP_TOLERANCE = 1e-12;

////////////////////////////////////////////////////////////
// Single-qubit Euler decomposition.
////////////////////////////////////////////////////////////

/// u = e^{i phase} Rz(alpha) Ry(beta) Rz(gamma), beta in [0, pi].
struct EulerZyz {
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
    double phase = 0;

    Unitary2 matrix() const {
        return std::polar(1.0, phase) * rz_matrix(alpha) * ry_matrix(beta) * rz_matrix(gamma);
    }
};

inline double wrap_angle(double a) {
    a = std::remainder(a, 2 * PI);
    if (a <= -PI) {
        a += 2 * PI;
    }
    return a;
}

inline EulerZyz euler_zyz(const Unitary2 &u) {
    if (!is_unitary(u)) {
        fail(ErrorKind::validation, "euler_zyz: matrix is not unitary");
    }
    Unitary2 v = u / std::sqrt(u.determinant());
    double ca = std::abs(v(0, 0));
    double sc = std::abs(v(1, 0));
    EulerZyz e;
    e.beta = 2 * std::atan2(sc, ca);
    double arg_a = std::arg(v(0, 0));
    double arg_c = std::arg(v(1, 0));
    if (sc < 1e-15) {
        e.alpha = 0;
        e.gamma = -2 * arg_a;
    } else if (ca < 1e-15) {
        e.gamma = 0;
        e.alpha = 2 * arg_c;
    } else {
        e.alpha = arg_c - arg_a;
        e.gamma = -arg_a - arg_c;
    }
    e.alpha = wrap_angle(e.alpha);
    e.gamma = wrap_angle(e.gamma);
    Unitary2 r = rz_matrix(e.alpha) * ry_matrix(e.beta) * rz_matrix(e.gamma);
    e.phase = std::arg((r.adjoint() * u).trace());
    return e;
}

////////////////////////////////////////////////////////////
// Two-qubit KAK decomposition.
////////////////////////////////////////////////////////////

/// A decomposition into alternating local layers and CNOT(q0 -> q1):
///   locals[0], CNOT, locals[1], CNOT, ..., locals[n]   (time order)
/// whose product times e^{i phase} equals the input.
struct KakDecomposition {
    std::vector<std::pair<Unitary2, Unitary2>> locals;
    double phase = 0;
    /// Interaction coefficients (x, y, z) of exp(i(x XX + y YY + z ZZ)), reduced into (-pi/4, pi/4].
    std::array<double, 3> coefficients{0, 0, 0};

    std::size_t cnot_count() const {
        return locals.empty() ? 0 : locals.size() - 1;
    }

    Unitary4 matrix() const {
        Unitary4 cx = Unitary4::Zero();
        cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1;
        Unitary4 acc = Unitary4::Identity();
        for (std::size_t i = 0; i < locals.size(); i++) {
            if (i > 0) {
                acc = cx * acc;
            }
            Unitary4 layer = kron(locals[i].first, locals[i].second);
            acc = layer * acc;
        }
        return std::polar(1.0, phase) * acc;
    }
};

namespace kak_detail {

inline Unitary4 magic_basis() {
    const double r = 1 / std::sqrt(2.0);
    const cplx i{0, 1};
    Unitary4 m;
    m << r, 0, 0, r * i,  //
        0, r * i, r, 0,   //
        0, r * i, -r, 0,  //
        r, 0, 0, -r * i;
    return m;
}

inline const std::array<Unitary2, 3> &paulis() {
    static const std::array<Unitary2, 3> p = [] {
        Unitary2 x, y, z;
        x << 0, 1, 1, 0;
        y << 0, cplx(0, -1), cplx(0, 1), 0;
        z << 1, 0, 0, -1;
        return std::array<Unitary2, 3>{x, y, z};
    }();
    return p;
}

/// The 24 single-qubit Cliffords (up to phase), generated from H and S.
inline const std::vector<Unitary2> &clifford_group() {
    static const std::vector<Unitary2> group = [] {
        Unitary2 h, s;
        const double r = 1 / std::sqrt(2.0);
        h << r, r, r, -r;
        s << 1, 0, 0, cplx(0, 1);
        std::vector<Unitary2> out{Unitary2::Identity()};
        for (std::size_t i = 0; i < out.size() && out.size() < 24; i++) {
            for (const auto &g : {h, s}) {
                Unitary2 cand = g * out[i];
                bool seen = false;
                for (const auto &e : out) {
                    if (phase_distance(cand, e) < 1e-9) {
                        seen = true;
                        break;
                    }
                }
                if (!seen) {
                    out.push_back(cand);
                }
            }
        }
        return out;
    }();
    return group;
}

/// Finds a Clifford w with w*from_a*w^dag = +-to_a and (optionally) w*from_b*w^dag = +-to_b.
/// Returns the signs found alongside w.
struct Frame {
    Unitary2 w;
    int sign_a;
    int sign_b;
};

inline Frame find_frame(const Unitary2 &from_a, const Unitary2 &to_a, const Unitary2 *from_b,
                        const Unitary2 *to_b, int want_sign_a = 0) {
    for (const auto &w : clifford_group()) {
        Unitary2 ma = w * from_a * w.adjoint();
        int sa = (ma - to_a).cwiseAbs().maxCoeff() < 1e-9 ? 1 : (ma + to_a).cwiseAbs().maxCoeff() < 1e-9 ? -1 : 0;
        if (sa == 0 || (want_sign_a != 0 && sa != want_sign_a)) {
            continue;
        }
        int sb = 1;
        if (from_b != nullptr) {
            Unitary2 mb = w * (*from_b) * w.adjoint();
            sb = (mb - *to_b).cwiseAbs().maxCoeff() < 1e-9 ? 1 : (mb + *to_b).cwiseAbs().maxCoeff() < 1e-9 ? -1 : 0;
            if (sb == 0) {
                continue;
            }
        }
        return {w, sa, sb};
    }
    fail(ErrorKind::internal, "no Clifford frame found");
}

/// Splits l = g * (a kron b) with a, b in SU(2).
inline std::tuple<Unitary2, Unitary2, cplx> kron_factor(const Unitary4 &l) {
    Eigen::Index ri = 0, ci = 0;
    l.cwiseAbs().maxCoeff(&ri, &ci);
    int a0 = static_cast<int>(ri) / 2, b0 = static_cast<int>(ri) % 2;
    int c0 = static_cast<int>(ci) / 2, d0 = static_cast<int>(ci) % 2;
    Unitary2 a, b;
    for (int x = 0; x < 2; x++) {
        for (int y = 0; y < 2; y++) {
            b(x, y) = l(2 * a0 + x, 2 * c0 + y);
            a(x, y) = l(2 * x + b0, 2 * y + d0);
        }
    }
    a /= std::sqrt(a.determinant());
    b /= std::sqrt(b.determinant());
    cplx g = l(ri, ci) / (a(a0, c0) * b(b0, d0));
    return {a, b, g};
}

/// Interaction layers (time order) realising exp(i(x XX + y YY + z ZZ)) up to global phase.
inline std::vector<std::pair<Unitary2, Unitary2>> interaction_layers(std::array<double, 3> c) {
    const auto &P = paulis();
    auto is_zero = [](double v) { return std::abs(v) < 1e-11; };
    auto is_quarter = [](double v) { return std::abs(std::abs(v) - PI / 4) < 1e-11; };
    int zeros = static_cast<int>(is_zero(c[0])) + is_zero(c[1]) + is_zero(c[2]);
    const Unitary2 id = Unitary2::Identity();

    if (zeros == 3) {
        return {{id, id}};
    }
    if (zeros == 2) {
        int k = !is_zero(c[0]) ? 0 : !is_zero(c[1]) ? 1 : 2;
        if (is_quarter(c[k])) {
            // exp(i pi/4 Z0 X1) ~ (Rz(-pi/2) kron Rx(-pi/2)) CNOT01, framed onto s * P_k P_k.
            int s = c[k] > 0 ? 1 : -1;
            Frame f0 = find_frame(P[2], P[k], nullptr, nullptr, s);
            Frame f1 = find_frame(P[0], P[k], nullptr, nullptr, 1);
            return {
                {f0.w.adjoint(), f1.w.adjoint()},
                {f0.w * rz_matrix(-PI / 2), f1.w * rx_matrix(-PI / 2)},
            };
        }
    }
    if (zeros >= 1) {
        // CNOT01 (Rx(-2a) kron Rz(-2b)) CNOT01 = exp(i(a XX + b ZZ)), framed onto the two live axes.
        int ka = -1, kb = -1;
        for (int k = 0; k < 3; k++) {
            if (!is_zero(c[k])) {
                (ka < 0 ? ka : kb) = k;
            }
        }
        if (kb < 0) {
            kb = ka == 2 ? 0 : 2;
        }
        Frame f = find_frame(P[0], P[ka], &P[2], &P[kb]);
        return {
            {f.w.adjoint(), f.w.adjoint()},
            {rx_matrix(-2 * c[ka]), rz_matrix(-2 * c[kb])},
            {f.w, f.w},
        };
    }
    // Generic three-CNOT network; the two reversed CNOTs are conjugated by H on both qubits.
    Unitary2 h;
    h << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    return {
        {h, h * rz_matrix(-PI / 2)},
        {rz_matrix(PI / 2 - 2 * c[2]) * h, ry_matrix(2 * c[0] - PI / 2) * h},
        {h, h * ry_matrix(PI / 2 - 2 * c[1])},
        {rz_matrix(PI / 2) * h, h},
    };
}

inline bool diagonalizes(const Eigen::Matrix4d &o, const Unitary4 &s) {
    Unitary4 d = o.transpose().cast<cplx>() * s * o.cast<cplx>();
    for (int r = 0; r < 4; r++) {
        for (int col = 0; col < 4; col++) {
            if (r != col && std::abs(d(r, col)) > 1e-9) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace kak_detail

/// Decomposes a two-qubit unitary into at most three CNOTs and local layers.
inline KakDecomposition kak_decompose(const Unitary4 &u) {
    using namespace kak_detail;
    if (!is_unitary(u)) {
        fail(ErrorKind::validation, "kak_decompose: matrix is not unitary");
    }
    const Unitary2 id = Unitary2::Identity();
    KakDecomposition out;

    auto finish = [&](std::vector<std::pair<Unitary2, Unitary2>> layers) {
        out.locals = std::move(layers);
        out.phase = 0;
        Unitary4 rec = out.matrix();
        out.phase = std::arg((rec.adjoint() * u).trace());
        return out;
    };

    // Fast paths: identity, product gates, CNOT itself.
    if (phase_distance(u, Unitary4::Identity()) < 1e-12) {
        return finish({{id, id}});
    }
    {
        auto [a, b, g] = kron_factor(u);
        if ((g * kron(a, b) - u).cwiseAbs().maxCoeff() < 1e-12) {
            return finish({{a, b}});
        }
    }
    {
        GateOp cx = GateOp::make(GateKind::CNOT, {0, 1});
        if (phase_distance(u, two_qubit_matrix(cx)) < 1e-12) {
            out.coefficients = {PI / 4, 0, 0};
            return finish({{id, id}, {id, id}});
        }
    }

    const Unitary4 m = magic_basis();
    Unitary4 us = u / std::pow(u.determinant(), 0.25);
    Unitary4 up = m.adjoint() * us * m;
    Unitary4 s = up.transpose() * up;

    // Re(s) and Im(s) commute; a generic real combination shares their eigenbasis.
    // Retry with a deterministic sequence of mixing weights near degeneracies.
    Eigen::Matrix4d o;
    bool found = false;
    for (double t : {0.5772156649, 1.3247179572, 2.7182818284, 0.3183098862, 4.6692016091, 1.6180339887}) {
        Eigen::Matrix4d mix = s.real() + t * s.imag();
        mix = (mix + mix.transpose()).eval() * 0.5;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(mix);
        o = solver.eigenvectors();
        if (diagonalizes(o, s)) {
            found = true;
            break;
        }
    }
    if (!found) {
        fail(ErrorKind::internal, "kak_decompose: failed to diagonalize symmetric product");
    }
    if (o.determinant() < 0) {
        o.col(0) *= -1;
    }
    Unitary4 d = o.transpose().cast<cplx>() * s * o.cast<cplx>();
    std::array<double, 4> half{};
    Unitary4 delta_inv = Unitary4::Zero();
    for (int j = 0; j < 4; j++) {
        half[j] = std::arg(d(j, j)) / 2;
    }
    auto build_k1 = [&] {
        for (int j = 0; j < 4; j++) {
            delta_inv(j, j) = std::polar(1.0, -half[j]);
        }
        return Unitary4(up * o.cast<cplx>() * delta_inv);
    };
    Unitary4 k1 = build_k1();
    if (k1.determinant().real() < 0) {
        half[0] += PI;
        k1 = build_k1();
    }
    Unitary4 left = m * k1 * m.adjoint();
    Unitary4 right = m * o.transpose().cast<cplx>() * m.adjoint();
    auto [a1, b1, g1] = kron_factor(left);
    auto [a2, b2, g2] = kron_factor(right);

    // Solve half_j = g + x sXX_j + y sYY_j + z sZZ_j.
    const auto &P = paulis();
    Eigen::Matrix4d sys;
    for (int k = 0; k < 3; k++) {
        Unitary4 pp = m.adjoint() * kron(P[k], P[k]) * m;
        for (int j = 0; j < 4; j++) {
            sys(j, 0) = 1;
            sys(j, k + 1) = pp(j, j).real();
        }
    }
    Eigen::Vector4d rhs(half[0], half[1], half[2], half[3]);
    Eigen::Vector4d sol = sys.fullPivLu().solve(rhs);
    std::array<double, 3> c{sol(1), sol(2), sol(3)};

    // Reduce each coefficient into (-pi/4, pi/4]; exp(i n pi/2 PP) = (iPP)^n is local.
    for (int k = 0; k < 3; k++) {
        double n = std::round(c[k] / (PI / 2));
        double r = c[k] - n * PI / 2;
        if (r <= -PI / 4 + 1e-13) {
            r += PI / 2;
            n -= 1;
        }
        c[k] = r;
        if (std::fmod(std::abs(n), 2.0) > 0.5) {
            a2 = P[k] * a2;
            b2 = P[k] * b2;
        }
    }
    out.coefficients = c;

    auto layers = interaction_layers(c);
    layers.front().first = layers.front().first * a2;
    layers.front().second = layers.front().second * b2;
    layers.back().first = a1 * layers.back().first;
    layers.back().second = b1 * layers.back().second;
    finish(std::move(layers));
    if (phase_distance(out.matrix(), u) > 1e-9) {
        fail(ErrorKind::internal, "kak_decompose: reconstruction check failed");
    }
    return out;
}

////////////////////////////////////////////////////////////
// Circuit passes.
////////////////////////////////////////////////////////////

/// Gates realising Rz(theta) up to global phase: a snapped Clifford/T sequence or one Rz.
inline std::vector<GateOp> snap_rz(std::uint32_t q, double theta) {
    double t = wrap_angle(theta);
    double m = std::round(t / (PI / 4));
    std::vector<GateOp> out;
    if (std::abs(t - m * PI / 4) >= SNAP_TOLERANCE) {
        out.push_back(GateOp::rotation(GateKind::Rz, q, t));
        return out;
    }
    int eighth = ((static_cast<int>(m) % 8) + 8) % 8;
    switch (eighth) {
        case 0:
            break;
        case 1:
            out.push_back(GateOp::make(GateKind::T, {q}));
            break;
        case 2:
            out.push_back(GateOp::make(GateKind::S, {q}));
            break;
        case 3:
            out.push_back(GateOp::make(GateKind::S, {q}));
            out.push_back(GateOp::make(GateKind::T, {q}));
            break;
        case 4:
            out.push_back(GateOp::make(GateKind::Z, {q}));
            break;
        case 5:
            out.push_back(GateOp::make(GateKind::Sdg, {q}));
            out.push_back(GateOp::make(GateKind::Tdg, {q}));
            break;
        case 6:
            out.push_back(GateOp::make(GateKind::Sdg, {q}));
            break;
        case 7:
            out.push_back(GateOp::make(GateKind::Tdg, {q}));
            break;
    }
    return out;
}

/// Clifford+Rz gates for an arbitrary single-qubit unitary (time order), at most five gates.
inline std::vector<GateOp> synthesize_single_qubit(std::uint32_t q, const Unitary2 &u) {
    std::vector<GateOp> out;
    if (phase_distance(u, Unitary2::Identity()) < SNAP_TOLERANCE) {
        return out;
    }
    if (std::abs(u(0, 1)) < SNAP_TOLERANCE && std::abs(u(1, 0)) < SNAP_TOLERANCE) {
        return snap_rz(q, std::arg(u(1, 1)) - std::arg(u(0, 0)));
    }
    for (auto k : {GateKind::X, GateKind::Y, GateKind::H}) {
        GateOp g = GateOp::make(k, {q});
        if (phase_distance(u, single_qubit_matrix(g)) < SNAP_TOLERANCE) {
            return {g};
        }
    }
    // u ~ Rz(alpha) S H Rz(beta) H Sdg Rz(gamma) = Rz(alpha + pi/2) H Rz(beta) H Rz(gamma - pi/2).
    EulerZyz e = euler_zyz(u);
    auto append = [&](std::vector<GateOp> gs) { out.insert(out.end(), gs.begin(), gs.end()); };
    append(snap_rz(q, e.gamma - PI / 2));
    out.push_back(GateOp::make(GateKind::H, {q}));
    append(snap_rz(q, e.beta));
    out.push_back(GateOp::make(GateKind::H, {q}));
    append(snap_rz(q, e.alpha + PI / 2));
    return out;
}

/// Expands Toffoli and SWAP into one- and two-qubit gates. Other ops are copied unchanged.
inline Circuit decompose_multiqubit(const Circuit &c) {
    Circuit out(c.num_qubits, c.level);
    out.labels = c.labels;
    std::vector<std::uint32_t> remap(c.ops.size());
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        GateOp op = c.ops[i];
        if (op.ctrl) {
            op.ctrl = remap[*op.ctrl];
        }
        auto emit = [&](GateKind k, std::vector<std::uint32_t> qs) {
            GateOp g = GateOp::make(k, std::move(qs));
            g.ctrl = op.ctrl;
            out.ops.push_back(std::move(g));
        };
        if (op.kind == GateKind::Toffoli) {
            auto a = op.qubits[0], b = op.qubits[1], t = op.qubits[2];
            emit(GateKind::H, {t});
            emit(GateKind::CNOT, {b, t});
            emit(GateKind::Tdg, {t});
            emit(GateKind::CNOT, {a, t});
            emit(GateKind::T, {t});
            emit(GateKind::CNOT, {b, t});
            emit(GateKind::Tdg, {t});
            emit(GateKind::CNOT, {a, t});
            emit(GateKind::T, {b});
            emit(GateKind::T, {t});
            emit(GateKind::H, {t});
            emit(GateKind::CNOT, {a, b});
            emit(GateKind::T, {a});
            emit(GateKind::Tdg, {b});
            emit(GateKind::CNOT, {a, b});
        } else if (op.kind == GateKind::SWAP) {
            auto a = op.qubits[0], b = op.qubits[1];
            emit(GateKind::CNOT, {a, b});
            emit(GateKind::CNOT, {b, a});
            emit(GateKind::CNOT, {a, b});
        } else if (op.qubits.size() > 2 || is_primitive_only(op.kind)) {
            fail(ErrorKind::unsupported, "no decomposition for " + std::string(gate_name(op.kind)));
        } else {
            out.ops.push_back(std::move(op));
        }
        remap[i] = static_cast<std::uint32_t>(out.ops.size() - 1);
    }
    return out;
}

namespace stage1_detail {

inline bool in_clifford_rz_alphabet(GateKind k) {
    switch (k) {
        case GateKind::I:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::Rz:
        case GateKind::CNOT:
        case GateKind::Measure:
        case GateKind::Reset:
            return true;
        default:
            return false;
    }
}

inline bool self_inverse_pair(const GateOp &a, const GateOp &b) {
    if (a.kind != b.kind || a.ctrl || b.ctrl) {
        return false;
    }
    if (a.kind == GateKind::CNOT) {
        return a.qubits == b.qubits;
    }
    if (a.kind == GateKind::CZ || a.kind == GateKind::SWAP) {
        return a.qubits == b.qubits || (a.qubits[0] == b.qubits[1] && a.qubits[1] == b.qubits[0]);
    }
    return false;
}

/// One fuse-and-cancel sweep. Returns true if anything changed.
inline bool merge_eject_sweep(Circuit &c) {
    const std::size_t n = c.ops.size();
    std::vector<std::optional<std::vector<GateOp>>> replacement(n);
    bool changed = false;

    // Fuse maximal runs of unconditioned single-qubit unitaries.
    std::vector<std::vector<std::uint32_t>> run(c.num_qubits);
    auto flush = [&](std::uint32_t q) {
        auto &r = run[q];
        if (r.empty()) {
            return;
        }
        Unitary2 acc = Unitary2::Identity();
        for (auto i : r) {
            acc = single_qubit_matrix(c.ops[i]) * acc;
        }
        auto rep = synthesize_single_qubit(q, acc);
        bool single_snap = r.size() == 1 && c.ops[r[0]].kind == GateKind::Rz &&
                           (rep.size() != 1 || rep[0].kind != GateKind::Rz);
        if (rep.size() < r.size() || single_snap) {
            replacement[r[0]] = std::move(rep);
            for (std::size_t j = 1; j < r.size(); j++) {
                replacement[r[j]] = std::vector<GateOp>{};
            }
            changed = true;
        }
        r.clear();
    };
    for (std::uint32_t i = 0; i < n; i++) {
        const auto &op = c.ops[i];
        if (is_single_qubit_unitary(op.kind) && !op.ctrl) {
            run[op.qubits[0]].push_back(i);
            continue;
        }
        for (auto q : op.qubits) {
            flush(q);
        }
    }
    for (std::uint32_t q = 0; q < c.num_qubits; q++) {
        flush(q);
    }

    // Cancel adjacent self-inverse two-qubit pairs (operating on untouched ops only).
    std::vector<std::int64_t> last(c.num_qubits, -1);
    for (std::uint32_t j = 0; j < n; j++) {
        const auto &op = c.ops[j];
        if (replacement[j].has_value()) {
            for (auto q : op.qubits) {
                last[q] = -2;
            }
            continue;
        }
        if (op.qubits.size() == 2) {
            auto i0 = last[op.qubits[0]], i1 = last[op.qubits[1]];
            if (i0 >= 0 && i0 == i1 && !replacement[i0].has_value() && self_inverse_pair(c.ops[i0], op)) {
                replacement[i0] = std::vector<GateOp>{};
                replacement[j] = std::vector<GateOp>{};
                last[op.qubits[0]] = last[op.qubits[1]] = -2;
                changed = true;
                continue;
            }
        }
        for (auto q : op.qubits) {
            last[q] = j;
        }
    }

    if (!changed) {
        return false;
    }
    std::vector<GateOp> ops;
    ops.reserve(n);
    std::vector<std::uint32_t> remap(n, 0);
    for (std::uint32_t i = 0; i < n; i++) {
        if (replacement[i].has_value()) {
            for (auto &g : *replacement[i]) {
                ops.push_back(std::move(g));
            }
        } else {
            GateOp op = c.ops[i];
            if (op.ctrl) {
                op.ctrl = remap[*op.ctrl];
            }
            ops.push_back(std::move(op));
        }
        remap[i] = ops.empty() ? 0 : static_cast<std::uint32_t>(ops.size() - 1);
    }
    c.ops = std::move(ops);
    return true;
}

}  // namespace stage1_detail

/// Fuses adjacent single-qubit gates, cancels inverse pairs and snaps Clifford angles, to a fixpoint.
/// The circuit unitary is preserved up to global phase and the gate count never grows.
inline Circuit merge_eject(const Circuit &c) {
    for (const auto &op : c.ops) {
        if (op.qubits.size() > 2) {
            fail(ErrorKind::validation, "merge_eject expects one- and two-qubit gates only");
        }
    }
    Circuit out = c;
    for (int iter = 0; iter < 1000; iter++) {
        if (!stage1_detail::merge_eject_sweep(out)) {
            return out;
        }
    }
    fail(ErrorKind::internal, "merge_eject did not converge");
}

/// Lowers an input-level circuit to Clifford + Rz (alphabet H, S, Sdg, X, Y, Z, T, Tdg, CNOT, Rz,
/// Measure, Reset).
inline Circuit to_clifford_rz(const Circuit &input) {
    if (input.level != Level::input) {
        fail(ErrorKind::validation, "to_clifford_rz expects an input-level circuit");
    }
    validate(input);
    Circuit c = decompose_multiqubit(input);

    Circuit lowered(c.num_qubits, Level::input);
    lowered.labels = c.labels;
    std::vector<std::uint32_t> remap(c.ops.size());
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        GateOp op = c.ops[i];
        if (op.ctrl) {
            op.ctrl = remap[*op.ctrl];
        }
        auto emit = [&](GateOp g) {
            g.ctrl = op.ctrl;
            lowered.ops.push_back(std::move(g));
        };
        auto emit_all = [&](const std::vector<GateOp> &gs) {
            for (const auto &g : gs) {
                emit(g);
            }
        };
        const auto q = op.qubits.empty() ? 0u : op.qubits[0];
        switch (op.kind) {
            case GateKind::Rx:
                emit(GateOp::make(GateKind::H, {q}));
                emit(GateOp::rotation(GateKind::Rz, q, *op.angle));
                emit(GateOp::make(GateKind::H, {q}));
                break;
            case GateKind::Ry:
                emit(GateOp::make(GateKind::Sdg, {q}));
                emit(GateOp::make(GateKind::H, {q}));
                emit(GateOp::rotation(GateKind::Rz, q, *op.angle));
                emit(GateOp::make(GateKind::H, {q}));
                emit(GateOp::make(GateKind::S, {q}));
                break;
            case GateKind::U1Q:
                emit_all(synthesize_single_qubit(q, single_qubit_matrix(op)));
                break;
            case GateKind::CZ:
                emit(GateOp::make(GateKind::H, {op.qubits[1]}));
                emit(GateOp::make(GateKind::CNOT, op.qubits));
                emit(GateOp::make(GateKind::H, {op.qubits[1]}));
                break;
            case GateKind::U2Q: {
                auto kak = kak_decompose(two_qubit_matrix(op));
                for (std::size_t layer = 0; layer < kak.locals.size(); layer++) {
                    if (layer > 0) {
                        emit(GateOp::make(GateKind::CNOT, op.qubits));
                    }
                    emit_all(synthesize_single_qubit(op.qubits[0], kak.locals[layer].first));
                    emit_all(synthesize_single_qubit(op.qubits[1], kak.locals[layer].second));
                }
                break;
            }
            default:
                if (!stage1_detail::in_clifford_rz_alphabet(op.kind)) {
                    fail(ErrorKind::unsupported, "cannot lower " + std::string(gate_name(op.kind)));
                }
                if (op.kind == GateKind::Rz && !op.ctrl) {
                    emit_all(snap_rz(q, *op.angle));
                } else {
                    emit(op);
                }
        }
        remap[i] = lowered.ops.empty() ? 0 : static_cast<std::uint32_t>(lowered.ops.size() - 1);
    }
    Circuit out = merge_eject(lowered);
    out.level = Level::clifford_rz;
    return out;
}

}  // namespace ftre
