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

#ifndef VQDYN_MEASURE_H
#define VQDYN_MEASURE_H

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "vqdyn/ansatz.h"
#include "vqdyn/circuit.h"
#include "vqdyn/noise.h"
#include "vqdyn/pauli.h"

namespace vqdyn {

enum class EvalMode { Analytic, ExactCircuit, Sampled, Noisy };
const char *to_string(EvalMode mode);

struct EvalBackend {
    EvalMode mode = EvalMode::Analytic;
    int64_t shots = 0;
    uint64_t seed = 0;
    std::shared_ptr<const NoiseModel> noise;

    static EvalBackend analytic();
    static EvalBackend exact_circuit();
    static EvalBackend sampled(int64_t shots, uint64_t seed);
    static EvalBackend noisy(int64_t shots, uint64_t seed, std::shared_ptr<const NoiseModel> model);

    bool is_exact() const {
        return mode == EvalMode::Analytic || mode == EvalMode::ExactCircuit;
    }
    void validate() const;
};

/// Hadamard test for Re <0| U0^+ UA^+ Uh UB U0 |0> on the system register.
/// The ancilla is the last qubit; the circuit is H(anc), U0, controlled
/// (UB, Uh, UA^+), H(anc), and <Z_anc> = P(0) - P(1).
struct HadamardTest {
    int num_system = 0;
    std::vector<Gate> u0;
    std::vector<Gate> ua;
    std::vector<Gate> uh;
    std::vector<Gate> ub;
    double coefficient = 1;

    int width() const {
        return num_system + 1;
    }
    int ancilla() const {
        return num_system;
    }
    /// Gates of the ancilla-controlled block in application order.
    std::vector<Gate> controlled_block() const;
    std::vector<Gate> circuit() const;
};

enum class TestKind {
    AEntry,   ///< Re <d_i phi | d_j phi>
    Overlap,  ///< Im <d_i phi | phi>
    CEntry,   ///< Im <d_i phi | c T | phi> for one Hamiltonian term
    Energy,   ///< c Re <phi | T | phi> for one Hamiltonian term
};

struct TestQuery {
    TestKind kind = TestKind::Energy;
    int i = -1;
    int j = -1;
};

/// One test per branch combination. Coefficients fold in the derivative
/// factors (and the term weight), so the sum of coefficient (P0 - P1) over the
/// returned tests is the requested quantity.
std::vector<HadamardTest> build_test(
    const TestQuery &query, const AnsatzSpec &spec, const Eigen::VectorXd &theta, const PauliTerm *term = nullptr);

/// coefficient * estimate of Re <...> under the backend. `stream` selects an
/// independent random stream for sampled modes.
double evaluate(const HadamardTest &test, const EvalBackend &backend, uint64_t stream = 0);
double evaluate(const std::vector<HadamardTest> &tests, const EvalBackend &backend, uint64_t stream = 0);

/// Configuration probabilities |<q_k|phi(theta)>|^2, measured under the backend.
Eigen::VectorXd measure_probabilities(
    const AnsatzSpec &spec, const Eigen::VectorXd &theta, const EvalBackend &backend, uint64_t stream = 0);

}  // namespace vqdyn

#endif
