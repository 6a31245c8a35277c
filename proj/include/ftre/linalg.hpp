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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>
#include <vector>

#include "ftre/circuit.hpp"

namespace ftre {

using cplx = std::complex<double>;
using Unitary2 = Eigen::Matrix2cd;
using Unitary4 = Eigen::Matrix4cd;

inline constexpr double PI = std::numbers::pi;

template <typename M>
bool is_unitary(const M &u, double tol = 1e-10) {
    auto n = u.rows();
    return (u * u.adjoint() - M::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

/// Max-norm distance between a and b after removing the best global phase.
template <typename M>
double phase_distance(const M &a, const std::type_identity_t<M> &b) {
    cplx overlap = (b.adjoint() * a).trace();
    cplx phase = std::abs(overlap) < 1e-300 ? cplx{1, 0} : overlap / std::abs(overlap);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

inline Unitary2 rz_matrix(double theta) {
    Unitary2 m;
    m << std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2);
    return m;
}

inline Unitary2 ry_matrix(double theta) {
    Unitary2 m;
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << c, -s, s, c;
    return m;
}

inline Unitary2 rx_matrix(double theta) {
    Unitary2 m;
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << cplx{c, 0}, cplx{0, -s}, cplx{0, -s}, cplx{c, 0};
    return m;
}

/// Matrix of a single-qubit unitary op. Throws for non-unitary kinds.
inline Unitary2 single_qubit_matrix(const GateOp &op) {
    const double r = 1 / std::sqrt(2.0);
    const cplx i{0, 1};
    Unitary2 m;
    switch (op.kind) {
        case GateKind::I:
            return Unitary2::Identity();
        case GateKind::X:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::Y:
            m << 0, -i, i, 0;
            return m;
        case GateKind::Z:
            m << 1, 0, 0, -1;
            return m;
        case GateKind::H:
            m << r, r, r, -r;
            return m;
        case GateKind::S:
            m << 1, 0, 0, i;
            return m;
        case GateKind::Sdg:
            m << 1, 0, 0, -i;
            return m;
        case GateKind::T:
            m << 1, 0, 0, std::polar(1.0, PI / 4);
            return m;
        case GateKind::Tdg:
            m << 1, 0, 0, std::polar(1.0, -PI / 4);
            return m;
        case GateKind::Rz:
            return rz_matrix(*op.angle);
        case GateKind::Rx:
            return rx_matrix(*op.angle);
        case GateKind::Ry:
            return ry_matrix(*op.angle);
        case GateKind::U1Q:
            m << op.matrix[0], op.matrix[1], op.matrix[2], op.matrix[3];
            return m;
        default:
            fail(ErrorKind::internal, "no single-qubit matrix for " + std::string(gate_name(op.kind)));
    }
}

/// Two-qubit matrix in the (first operand = most significant bit) convention.
inline Unitary4 two_qubit_matrix(const GateOp &op) {
    Unitary4 m = Unitary4::Zero();
    switch (op.kind) {
        case GateKind::CNOT:
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
            return m;
        case GateKind::CZ:
            m(0, 0) = m(1, 1) = m(2, 2) = 1;
            m(3, 3) = -1;
            return m;
        case GateKind::SWAP:
            m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
            return m;
        case GateKind::U2Q:
            for (int r = 0; r < 4; r++) {
                for (int c = 0; c < 4; c++) {
                    m(r, c) = op.matrix[r * 4 + c];
                }
            }
            return m;
        default:
            fail(ErrorKind::internal, "no two-qubit matrix for " + std::string(gate_name(op.kind)));
    }
}

/// a (x) b with a acting on the most significant qubit.
inline Unitary4 kron(const Unitary2 &a, const Unitary2 &b) {
    Unitary4 out;
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
        }
    }
    return out;
}

inline std::vector<cplx> to_row_major(const Eigen::MatrixXcd &m) {
    std::vector<cplx> out;
    out.reserve(m.size());
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            out.push_back(m(r, c));
        }
    }
    return out;
}

}  // namespace ftre
