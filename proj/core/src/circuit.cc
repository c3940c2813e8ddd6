// Copyright 2026 The vqdyn Authors
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

#include "vqdyn/circuit.h"

#include <cmath>
#include <random>

#include "vqdyn/errors.h"

namespace vqdyn {

namespace {

void check_qubits(const Gate &g, int width) {
    auto qs = g.qubits();
    for (size_t i = 0; i < qs.size(); i++) {
        if (qs[i] < 0 || qs[i] >= width) {
            throw ConfigError("gate " + g.str() + " addresses qubit outside width " + std::to_string(width));
        }
        for (size_t j = 0; j < i; j++) {
            if (qs[i] == qs[j]) {
                throw ConfigError("gate " + g.str() + " repeats qubit " + std::to_string(qs[i]));
            }
        }
    }
}

uint64_t bit_of(int q, int width) {
    return uint64_t{1} << (width - 1 - q);
}

uint64_t control_mask(const std::vector<int> &controls, int width) {
    uint64_t m = 0;
    for (int c : controls) {
        m |= bit_of(c, width);
    }
    return m;
}

/// v[i] for i in [0, 2^width) at stride `stride`, u applied on target bit tb.
void apply_1q(cplx *v, ptrdiff_t stride, uint64_t dim, uint64_t tb, uint64_t cm, const Eigen::Matrix2cd &u) {
    const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (uint64_t i = 0; i < dim; i++) {
        if ((i & tb) || (i & cm) != cm) {
            continue;
        }
        cplx &a = v[i * stride];
        cplx &b = v[(i | tb) * stride];
        cplx a0 = a, b0 = b;
        a = u00 * a0 + u01 * b0;
        b = u10 * a0 + u11 * b0;
    }
}

}  // namespace

std::vector<int> Gate::qubits() const {
    std::vector<int> r = controls;
    r.push_back(target);
    return r;
}

Gate Gate::dagger() const {
    Gate g = *this;
    if (g.is_rotation()) {
        g.angle = -g.angle;
    }
    return g;
}

Gate Gate::with_control(int q) const {
    Gate g = *this;
    g.controls.push_back(q);
    return g;
}

std::string Gate::str() const {
    static const char *names[] = {"X", "Y", "Z", "H", "RX", "RY", "RZ"};
    std::string s;
    for (size_t i = 0; i < controls.size(); i++) {
        s += "C";
    }
    s += names[(int)kind];
    if (is_rotation()) {
        s += "(" + std::to_string(angle) + ")";
    }
    s += " ";
    for (int c : controls) {
        s += std::to_string(c) + ",";
    }
    s += std::to_string(target);
    return s;
}

Gate gate_x(int q) {
    return Gate{GateKind::X, q, {}, 0, -1};
}
Gate gate_y(int q) {
    return Gate{GateKind::Y, q, {}, 0, -1};
}
Gate gate_z(int q) {
    return Gate{GateKind::Z, q, {}, 0, -1};
}
Gate gate_h(int q) {
    return Gate{GateKind::H, q, {}, 0, -1};
}
Gate gate_cnot(int control, int target) {
    return Gate{GateKind::X, target, {control}, 0, -1};
}
Gate gate_rx(int q, double angle, int param) {
    return Gate{GateKind::RX, q, {}, angle, param};
}
Gate gate_ry(int q, double angle, int param) {
    return Gate{GateKind::RY, q, {}, angle, param};
}
Gate gate_rz(int q, double angle, int param) {
    return Gate{GateKind::RZ, q, {}, angle, param};
}
Gate gate_crx(int control, int target, double angle, int param) {
    return Gate{GateKind::RX, target, {control}, angle, param};
}

GateKind pauli_kind(char p) {
    switch (p) {
        case 'X':
            return GateKind::X;
        case 'Y':
            return GateKind::Y;
        case 'Z':
            return GateKind::Z;
    }
    throw ConfigError("not a Pauli letter: " + std::string(1, p));
}

std::vector<Gate> pauli_gates(const PauliString &s, const std::vector<int> &controls) {
    std::vector<Gate> r;
    for (int q : s.support()) {
        r.push_back(Gate{pauli_kind(s[q]), q, controls, 0, -1});
    }
    return r;
}

std::vector<Gate> dagger(const std::vector<Gate> &gates) {
    std::vector<Gate> r;
    r.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        r.push_back(it->dagger());
    }
    return r;
}

Eigen::Matrix2cd gate_matrix(GateKind kind, double angle) {
    const cplx I(0, 1);
    double c = std::cos(angle / 2), s = std::sin(angle / 2);
    Eigen::Matrix2cd m;
    switch (kind) {
        case GateKind::X:
            m << 0, 1, 1, 0;
            break;
        case GateKind::Y:
            m << 0, -I, I, 0;
            break;
        case GateKind::Z:
            m << 1, 0, 0, -1;
            break;
        case GateKind::H:
            m << M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2;
            break;
        case GateKind::RX:
            m << c, -I * s, -I * s, c;
            break;
        case GateKind::RY:
            m << c, -s, s, c;
            break;
        case GateKind::RZ:
            m << cplx(c, -s), 0, 0, cplx(c, s);
            break;
    }
    return m;
}

Eigen::MatrixXcd gate_unitary(const Gate &g, int width) {
    size_t dim = size_t{1} << width;
    Eigen::MatrixXcd u(dim, dim);
    for (size_t col = 0; col < dim; col++) {
        StateVector s = StateVector::basis(width, col);
        s.apply(g);
        u.col(col) = s.amplitudes();
    }
    return u;
}

StateVector::StateVector(int width) : width_(width), amps_(Eigen::VectorXcd::Zero(size_t{1} << width)) {
    if (width < 0 || width > 30) {
        throw ConfigError("state width out of range: " + std::to_string(width));
    }
    amps_[0] = 1;
}

StateVector StateVector::basis(int width, uint64_t index) {
    StateVector s(width);
    if (index >= s.dim()) {
        throw ConfigError("basis index out of range");
    }
    s.amps_[0] = 0;
    s.amps_[index] = 1;
    return s;
}

StateVector StateVector::from_amplitudes(Eigen::VectorXcd amps) {
    int w = 0;
    while ((Eigen::Index{1} << w) < amps.size()) {
        w++;
    }
    if ((Eigen::Index{1} << w) != amps.size()) {
        throw ConfigError("amplitude vector length is not a power of two");
    }
    StateVector s(w);
    s.amps_ = std::move(amps);
    return s;
}

void StateVector::apply(const Gate &g) {
    check_qubits(g, width_);
    apply_1q(amps_.data(), 1, dim(), bit_of(g.target, width_), control_mask(g.controls, width_),
             gate_matrix(g.kind, g.angle));
}

void StateVector::apply(const std::vector<Gate> &gates) {
    for (const auto &g : gates) {
        apply(g);
    }
}

void StateVector::apply_matrix(const Eigen::Matrix2cd &u, int target, const std::vector<int> &controls) {
    Gate probe{GateKind::X, target, controls, 0, -1};
    check_qubits(probe, width_);
    apply_1q(amps_.data(), 1, dim(), bit_of(target, width_), control_mask(controls, width_), u);
}

void StateVector::apply_pauli(const PauliString &s) {
    if (s.width() != width_) {
        throw ConfigError("Pauli string width does not match state width");
    }
    uint64_t xm = s.x_mask(), zm = s.z_mask();
    int ny = __builtin_popcountll(xm & zm);
    const cplx phases[4] = {1, cplx(0, 1), -1, cplx(0, -1)};
    Eigen::VectorXcd out(amps_.size());
    for (uint64_t i = 0; i < dim(); i++) {
        int sign = __builtin_popcountll(i & zm) & 1;
        out[i ^ xm] = phases[(ny + 2 * sign) & 3] * amps_[i];
    }
    amps_ = std::move(out);
}

double StateVector::norm() const {
    return amps_.norm();
}

double StateVector::prob0(int q) const {
    uint64_t b = bit_of(q, width_);
    double p = 0;
    for (uint64_t i = 0; i < dim(); i++) {
        if (!(i & b)) {
            p += std::norm(amps_[i]);
        }
    }
    return p;
}

DensityMatrix::DensityMatrix(int width) : width_(width) {
    size_t dim = size_t{1} << width;
    rho_ = Eigen::MatrixXcd::Zero(dim, dim);
    rho_(0, 0) = 1;
}

DensityMatrix::DensityMatrix(const StateVector &s) : width_(s.width()) {
    rho_ = s.amplitudes() * s.amplitudes().adjoint();
}

void DensityMatrix::apply(const Gate &g) {
    check_qubits(g, width_);
    apply_matrix(gate_matrix(g.kind, g.angle), g.target, g.controls);
}

void DensityMatrix::apply(const std::vector<Gate> &gates) {
    for (const auto &g : gates) {
        apply(g);
    }
}

void DensityMatrix::apply_matrix(const Eigen::Matrix2cd &u, int target, const std::vector<int> &controls) {
    uint64_t dim = (uint64_t)rho_.rows();
    uint64_t tb = bit_of(target, width_), cm = control_mask(controls, width_);
    Eigen::Matrix2cd uc = u.conjugate();
    for (uint64_t c = 0; c < dim; c++) {
        apply_1q(&rho_(0, c), 1, dim, tb, cm, u);
    }
    for (uint64_t r = 0; r < dim; r++) {
        apply_1q(&rho_(r, 0), (ptrdiff_t)dim, dim, tb, cm, uc);
    }
}

void DensityMatrix::apply_kraus(int q, const std::vector<Eigen::Matrix2cd> &kraus) {
    if (q < 0 || q >= width_) {
        throw ConfigError("Kraus channel on qubit outside register");
    }
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rho_.rows(), rho_.cols());
    Eigen::MatrixXcd base = rho_;
    for (const auto &k : kraus) {
        rho_ = base;
        apply_matrix(k, q);
        acc += rho_;
    }
    rho_ = std::move(acc);
}

void DensityMatrix::apply_two_qubit_depolarizing(int a, int b, double p) {
    if (p == 0) {
        return;
    }
    static const char letters[4] = {'I', 'X', 'Y', 'Z'};
    Eigen::MatrixXcd base = rho_;
    Eigen::MatrixXcd acc = (1 - p) * base;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            if (i == 0 && j == 0) {
                continue;
            }
            rho_ = base;
            if (i) {
                apply_matrix(gate_matrix(pauli_kind(letters[i])), a);
            }
            if (j) {
                apply_matrix(gate_matrix(pauli_kind(letters[j])), b);
            }
            acc += (p / 15) * rho_;
        }
    }
    rho_ = std::move(acc);
}

double DensityMatrix::trace() const {
    return rho_.trace().real();
}

double DensityMatrix::purity() const {
    return (rho_ * rho_).trace().real();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double DensityMatrix::prob0(int q) const {
    uint64_t b = bit_of(q, width_);
    double p = 0;
    for (Eigen::Index i = 0; i < rho_.rows(); i++) {
        if (!((uint64_t)i & b)) {
            p += rho_(i, i).real();
        }
    }
    return p;
}

Eigen::VectorXd DensityMatrix::probabilities() const {
    return rho_.diagonal().real();
}

Eigen::Matrix2cd DensityMatrix::reduced(int q) const {
    uint64_t b = bit_of(q, width_);
    Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
    for (uint64_t i = 0; i < (uint64_t)rho_.rows(); i++) {
        if (i & b) {
            continue;
        }
        r(0, 0) += rho_(i, i);
        r(0, 1) += rho_(i, i | b);
        r(1, 0) += rho_(i | b, i);
        r(1, 1) += rho_(i | b, i | b);
    }
    return r;
}

cplx inner_product(const StateVector &a, const StateVector &b) {
    if (a.width() != b.width()) {
        throw ConfigError("inner_product: width mismatch");
    }
    return a.amplitudes().dot(b.amplitudes());
}

double expectation(const StateVector &s, const PauliSum &sum) {
    if (!sum.has_real_coefficients(1e-12)) {
        throw ConfigError("expectation: Pauli sum is not Hermitian");
    }
    cplx total = 0;
    for (const auto &t : sum.terms()) {
        StateVector p = s;
        p.apply_pauli(t.string);
        total += t.coefficient * inner_product(s, p);
    }
    if (std::abs(total.imag()) > 1e-10) {
        throw NumericalError("expectation has imaginary residue " + std::to_string(total.imag()));
    }
    return total.real();
}

double expectation(const DensityMatrix &rho, const PauliSum &sum) {
    if (!sum.has_real_coefficients(1e-12)) {
        throw ConfigError("expectation: Pauli sum is not Hermitian");
    }
    Eigen::MatrixXcd op = pauli_to_matrix(sum);
    cplx total = (rho.matrix() * op).trace();
    if (std::abs(total.imag()) > 1e-10) {
        throw NumericalError("expectation has imaginary residue " + std::to_string(total.imag()));
    }
    return total.real();
}

ShotCounts sample_binary(double p0, int64_t shots, uint64_t seed) {
    p0 = std::clamp(p0, 0.0, 1.0);
    if (shots <= 0) {
        return {p0, 1 - p0};
    }
    std::mt19937_64 rng(seed);
    std::binomial_distribution<int64_t> dist(shots, p0);
    int64_t n0 = dist(rng);
    return {(double)n0, (double)(shots - n0)};
}

ShotCounts measure_qubit(const StateVector &s, int q, int64_t shots, uint64_t seed) {
    return sample_binary(s.prob0(q), shots, seed);
}

ShotCounts measure_qubit(const DensityMatrix &rho, int q, int64_t shots, uint64_t seed) {
    return sample_binary(rho.prob0(q), shots, seed);
}

Eigen::VectorXd sample_distribution(const Eigen::VectorXd &probs, int64_t shots, uint64_t seed) {
    if (shots <= 0) {
        return probs;
    }
    std::mt19937_64 rng(seed);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(probs.size());
    int64_t left = shots;
    double mass = 1;
    for (Eigen::Index k = 0; k < probs.size() && left > 0; k++) {
        double p = std::max(0.0, probs[k]);
        int64_t n = left;
        if (k + 1 < probs.size()) {
            double q = mass > 0 ? std::clamp(p / mass, 0.0, 1.0) : 0.0;
            std::binomial_distribution<int64_t> dist(left, q);
            n = dist(rng);
        }
        out[k] = (double)n / (double)shots;
        left -= n;
        mass -= p;
    }
    return out;
}

}  // namespace vqdyn
