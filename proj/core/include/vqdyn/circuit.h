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

#ifndef VQDYN_CIRCUIT_H
#define VQDYN_CIRCUIT_H

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vqdyn/pauli.h"

namespace vqdyn {

using cplx = std::complex<double>;

enum class GateKind { X, Y, Z, H, RX, RY, RZ };

/// A single-target gate with any number of controls. CNOT is a controlled X,
/// CRX a controlled RX. Rotations are R_p(angle) = exp(-i angle p / 2).
struct Gate {
    GateKind kind = GateKind::X;
    int target = 0;
    std::vector<int> controls;
    double angle = 0;
    /// Index into the ansatz parameter vector, -1 for fixed gates.
    int param = -1;

    bool is_rotation() const {
        return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
    }
    /// Qubits touched by the gate, controls first.
    std::vector<int> qubits() const;
    Gate dagger() const;
    Gate with_control(int q) const;
    std::string str() const;

    bool operator==(const Gate &other) const = default;
};

Gate gate_x(int q);
Gate gate_y(int q);
Gate gate_z(int q);
Gate gate_h(int q);
Gate gate_cnot(int control, int target);
Gate gate_rx(int q, double angle, int param = -1);
Gate gate_ry(int q, double angle, int param = -1);
Gate gate_rz(int q, double angle, int param = -1);
Gate gate_crx(int control, int target, double angle, int param = -1);

/// Pauli letter as a gate ('X', 'Y' or 'Z').
GateKind pauli_kind(char p);
/// Non-identity letters of s as gates, each carrying `controls`.
std::vector<Gate> pauli_gates(const PauliString &s, const std::vector<int> &controls = {});

std::vector<Gate> dagger(const std::vector<Gate> &gates);

/// Target-qubit 2x2 matrix of a gate kind.
Eigen::Matrix2cd gate_matrix(GateKind kind, double angle = 0);
/// Full 2^width unitary of a gate (testing and small widths).
Eigen::MatrixXcd gate_unitary(const Gate &g, int width);

/// Pure state on `width` qubits; amplitude bit (width-1-q) is qubit q.
class StateVector {
   public:
    explicit StateVector(int width = 0);
    static StateVector basis(int width, uint64_t index);
    static StateVector from_amplitudes(Eigen::VectorXcd amps);

    int width() const {
        return width_;
    }
    size_t dim() const {
        return (size_t)amps_.size();
    }
    const Eigen::VectorXcd &amplitudes() const {
        return amps_;
    }
    Eigen::VectorXcd &amplitudes() {
        return amps_;
    }
    cplx operator[](size_t i) const {
        return amps_[i];
    }

    void apply(const Gate &g);
    void apply(const std::vector<Gate> &gates);
    /// Applies the 2x2 matrix u on `target` conditioned on every qubit in `controls`.
    void apply_matrix(const Eigen::Matrix2cd &u, int target, const std::vector<int> &controls = {});
    void apply_pauli(const PauliString &s);

    double norm() const;
    /// Marginal probability of reading 0 on qubit q.
    double prob0(int q) const;

   private:
    int width_;
    Eigen::VectorXcd amps_;
};

/// Mixed state on `width` qubits.
class DensityMatrix {
   public:
    explicit DensityMatrix(int width = 0);
    explicit DensityMatrix(const StateVector &s);

    int width() const {
        return width_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return rho_;
    }
    Eigen::MatrixXcd &matrix() {
        return rho_;
    }

    void apply(const Gate &g);
    void apply(const std::vector<Gate> &gates);
    void apply_matrix(const Eigen::Matrix2cd &u, int target, const std::vector<int> &controls = {});
    /// rho -> sum_k K rho K^+ on one qubit.
    void apply_kraus(int q, const std::vector<Eigen::Matrix2cd> &kraus);
    /// rho -> (1-p) rho + p/15 sum_{P != II} P rho P on qubits (a, b).
    void apply_two_qubit_depolarizing(int a, int b, double p);

    double trace() const;
    double purity() const;
    double min_eigenvalue() const;
    double prob0(int q) const;
    /// Diagonal probabilities.
    Eigen::VectorXd probabilities() const;
    /// Reduced 2x2 state of qubit q.
    Eigen::Matrix2cd reduced(int q) const;

   private:
    int width_;
    Eigen::MatrixXcd rho_;
};

/// <a|b>. Throws ConfigError on width mismatch.
cplx inner_product(const StateVector &a, const StateVector &b);

double expectation(const StateVector &s, const PauliSum &sum);
double expectation(const DensityMatrix &rho, const PauliSum &sum);

/// Counts for outcomes 0 and 1. With shots == 0 these are exact probabilities.
struct ShotCounts {
    double n0 = 0;
    double n1 = 0;
};

/// Binomial sample of `shots` draws with P(0) = p0; exact pair when shots == 0.
ShotCounts sample_binary(double p0, int64_t shots, uint64_t seed);
ShotCounts measure_qubit(const StateVector &s, int q, int64_t shots, uint64_t seed);
ShotCounts measure_qubit(const DensityMatrix &rho, int q, int64_t shots, uint64_t seed);
/// Multinomial frequencies of a distribution; returns probs unchanged when shots == 0.
Eigen::VectorXd sample_distribution(const Eigen::VectorXd &probs, int64_t shots, uint64_t seed);

}  // namespace vqdyn

#endif
