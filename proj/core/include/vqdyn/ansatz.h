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

#ifndef VQDYN_ANSATZ_H
#define VQDYN_ANSATZ_H

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "vqdyn/circuit.h"
#include "vqdyn/pauli.h"

namespace vqdyn {

struct GateCensus {
    int x = 0;
    int rx = 0;
    int ry = 0;
    int rz = 0;
    int crx = 0;
    int cnot = 0;
    int total = 0;
};

/// Parameterized circuit acting on |0...0>. Gate angles are placeholders;
/// `bind` fills them from a parameter vector via Gate::param.
struct AnsatzSpec {
    Encoding scheme = Encoding::JWE;
    /// Physical states N (before any null-state padding).
    size_t num_states = 0;
    int num_qubits = 0;
    int num_params = 0;
    std::vector<Gate> gates;
    /// QEE: first gate of the phase block (RZ/CNOT only). JWE: gates.size().
    size_t phase_block_start = 0;
    /// Gate index carrying each parameter.
    std::vector<size_t> param_gate;
    QubitConfigMap map;

    GateCensus census() const;
    std::vector<Gate> bind(const Eigen::VectorXd &theta) const;
    bool is_phase_param(int i) const;
};

AnsatzSpec make_ansatz(Encoding scheme, size_t num_states);

StateVector build_state(const AnsatzSpec &spec, const Eigen::VectorXd &theta);
/// Amplitudes of |q_0>, ..., |q_{N-1}>.
Eigen::VectorXcd encoded_amplitudes(const AnsatzSpec &spec, const StateVector &s);
Eigen::VectorXcd encoded_amplitudes(const AnsatzSpec &spec, const Eigen::VectorXd &theta);

/// Closed-form unary ansatz amplitudes with c_k = (-i)^k.
Eigen::VectorXcd jwe_closed_form(size_t num_states, const Eigen::VectorXd &theta);
/// d amp_k / d theta_i of jwe_closed_form, as an N x L matrix.
Eigen::MatrixXcd jwe_closed_form_jacobian(size_t num_states, const Eigen::VectorXd &theta);
/// Closed-form two-qubit binary ansatz amplitudes over |00>, |01>, |10>, |11>.
Eigen::Vector4cd qee2_closed_form(const Eigen::VectorXd &theta);

/// One term of d|phi>/d theta_i: coefficient times a gate sequence on |0...0>.
struct DerivativeBranch {
    cplx coefficient;
    std::vector<Gate> circuit;
};
std::vector<DerivativeBranch> derivative_branches(const AnsatzSpec &spec, const Eigen::VectorXd &theta, int i);

struct DerivativeState {
    int param = 0;
    std::vector<std::pair<cplx, StateVector>> branches;

    StateVector combined() const;
};
DerivativeState derivative_state(const AnsatzSpec &spec, const Eigen::VectorXd &theta, int i);

/// Full-register amplitudes (the N unary amplitudes for JWE) and their
/// Jacobian. Binary encodings include any null-padding states.
Eigen::VectorXcd register_amplitudes(const AnsatzSpec &spec, const Eigen::VectorXd &theta);
Eigen::MatrixXcd register_jacobian(const AnsatzSpec &spec, const Eigen::VectorXd &theta);

/// Encoded-subspace Jacobian d amp_k / d theta_i (N x L).
Eigen::MatrixXcd encoded_jacobian(const AnsatzSpec &spec, const Eigen::VectorXd &theta);

/// Action of the QEE phase block on each basis input x: output index perm[x]
/// and phase grad.row(x) . theta_phase (theta_phase in param order of the block).
struct PhaseBlockMap {
    std::vector<uint64_t> perm;
    std::vector<int> params;
    Eigen::MatrixXd grad;
};
PhaseBlockMap probe_phase_block(const AnsatzSpec &spec);

/// Binary-encoding start point equivalent to |q_0> (amplitude parameters zero)
/// with every other configuration's phase offset by -pi/2 from |q_0>.
/// Unary encodings return zeros.
Eigen::VectorXd quadrature_phase_seed(const AnsatzSpec &spec);

/// Parameters reproducing `target` (normalized, N entries) up to a global phase.
Eigen::VectorXd fit_initial_params(const AnsatzSpec &spec, const Eigen::VectorXcd &target, uint64_t seed = 1);

/// max_k |amp_k(theta) - e^{i beta} target_k| minimized over beta.
double fit_error(const AnsatzSpec &spec, const Eigen::VectorXd &theta, const Eigen::VectorXcd &target);

}  // namespace vqdyn

#endif
