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

#include "vqdyn/measure.h"

#include <cmath>

#include "vqdyn/errors.h"
#include "vqdyn/rng.h"

namespace vqdyn {

namespace {

/// Builds Re <0|A^+ [uh] B|0> with shared leading and trailing gates removed.
HadamardTest strip(int width, std::vector<Gate> bra, std::vector<Gate> ket, std::vector<Gate> uh, double coef) {
    HadamardTest t;
    t.num_system = width;
    t.coefficient = coef;
    size_t p = 0;
    while (p < bra.size() && p < ket.size() && bra[p] == ket[p]) {
        p++;
    }
    t.u0.assign(bra.begin(), bra.begin() + p);
    bra.erase(bra.begin(), bra.begin() + p);
    ket.erase(ket.begin(), ket.begin() + p);
    if (uh.empty()) {
        while (!bra.empty() && !ket.empty() && bra.back() == ket.back()) {
            bra.pop_back();
            ket.pop_back();
        }
    }
    t.ua = std::move(bra);
    t.ub = std::move(ket);
    t.uh = std::move(uh);
    return t;
}

}  // namespace

const char *to_string(EvalMode mode) {
    switch (mode) {
        case EvalMode::Analytic:
            return "analytic";
        case EvalMode::ExactCircuit:
            return "circuit";
        case EvalMode::Sampled:
            return "sampled";
        case EvalMode::Noisy:
            return "noisy";
    }
    return "?";
}

EvalBackend EvalBackend::analytic() {
    return EvalBackend{};
}

EvalBackend EvalBackend::exact_circuit() {
    EvalBackend b;
    b.mode = EvalMode::ExactCircuit;
    return b;
}

EvalBackend EvalBackend::sampled(int64_t shots, uint64_t seed) {
    EvalBackend b;
    b.mode = EvalMode::Sampled;
    b.shots = shots;
    b.seed = seed;
    return b;
}

EvalBackend EvalBackend::noisy(int64_t shots, uint64_t seed, std::shared_ptr<const NoiseModel> model) {
    EvalBackend b;
    b.mode = EvalMode::Noisy;
    b.shots = shots;
    b.seed = seed;
    b.noise = std::move(model);
    return b;
}

void EvalBackend::validate() const {
    if ((mode == EvalMode::Sampled || mode == EvalMode::Noisy) && shots <= 0) {
        throw ConfigError("sampled backends need shots > 0");
    }
    if (mode == EvalMode::Noisy && !noise) {
        throw ConfigError("noisy backend needs a noise model");
    }
}

std::vector<Gate> HadamardTest::controlled_block() const {
    std::vector<Gate> r;
    for (const auto &g : ub) {
        r.push_back(g.with_control(ancilla()));
    }
    for (const auto &g : uh) {
        r.push_back(g.with_control(ancilla()));
    }
    for (const auto &g : dagger(ua)) {
        r.push_back(g.with_control(ancilla()));
    }
    return r;
}

std::vector<Gate> HadamardTest::circuit() const {
    std::vector<Gate> r{gate_h(ancilla())};
    r.insert(r.end(), u0.begin(), u0.end());
    auto c = controlled_block();
    r.insert(r.end(), c.begin(), c.end());
    r.push_back(gate_h(ancilla()));
    return r;
}

std::vector<HadamardTest> build_test(
    const TestQuery &query, const AnsatzSpec &spec, const Eigen::VectorXd &theta, const PauliTerm *term) {
    int L = spec.num_params;
    auto check_index = [&](int i) {
        if (i < 0 || i >= L) {
            throw ConfigError("test parameter index " + std::to_string(i) + " out of range");
        }
    };
    bool needs_term = query.kind == TestKind::CEntry || query.kind == TestKind::Energy;
    if (needs_term != (term != nullptr)) {
        throw ConfigError(needs_term ? "Hamiltonian term required for this test" : "unexpected Hamiltonian term");
    }
    double weight = 1;
    std::vector<Gate> term_gates;
    if (term) {
        if (term->string.width() != spec.num_qubits) {
            throw ConfigError("Hamiltonian term width does not match the ansatz");
        }
        if (std::abs(term->coefficient.imag()) > 1e-12) {
            throw ConfigError("Hamiltonian term coefficient must be real");
        }
        weight = term->coefficient.real();
        term_gates = pauli_gates(term->string);
    }
    auto ansatz = spec.bind(theta);
    std::vector<HadamardTest> out;
    switch (query.kind) {
        case TestKind::AEntry: {
            check_index(query.i);
            check_index(query.j);
            for (const auto &bi : derivative_branches(spec, theta, query.i)) {
                for (const auto &bj : derivative_branches(spec, theta, query.j)) {
                    double c = (std::conj(bi.coefficient) * bj.coefficient).real();
                    out.push_back(strip(spec.num_qubits, bi.circuit, bj.circuit, {}, c));
                }
            }
            break;
        }
        case TestKind::Overlap:
            check_index(query.i);
            for (const auto &bi : derivative_branches(spec, theta, query.i)) {
                out.push_back(strip(spec.num_qubits, bi.circuit, ansatz, {}, std::conj(bi.coefficient).imag()));
            }
            break;
        case TestKind::CEntry:
            check_index(query.i);
            for (const auto &bi : derivative_branches(spec, theta, query.i)) {
                out.push_back(
                    strip(spec.num_qubits, bi.circuit, ansatz, term_gates, weight * std::conj(bi.coefficient).imag()));
            }
            break;
        case TestKind::Energy:
            out.push_back(strip(spec.num_qubits, ansatz, ansatz, term_gates, weight));
            break;
    }
    return out;
}

double evaluate(const HadamardTest &test, const EvalBackend &backend, uint64_t stream) {
    backend.validate();
    switch (backend.mode) {
        case EvalMode::Analytic: {
            StateVector base(test.num_system);
            base.apply(test.u0);
            StateVector bra = base;
            bra.apply(test.ua);
            base.apply(test.ub);
            base.apply(test.uh);
            return test.coefficient * inner_product(bra, base).real();
        }
        case EvalMode::ExactCircuit:
        case EvalMode::Sampled: {
            if (test.ua.empty() && test.ub.empty() && test.uh.empty()) {
                return test.coefficient;
            }
            StateVector s(test.width());
            s.apply(test.circuit());
            int64_t shots = backend.mode == EvalMode::Sampled ? backend.shots : 0;
            auto c = measure_qubit(s, test.ancilla(), shots, derive_seed(backend.seed, stream));
            double total = c.n0 + c.n1;
            return test.coefficient * (c.n0 - c.n1) / total;
        }
        case EvalMode::Noisy: {
            DensityMatrix rho(test.width());
            apply_noisy_gates(rho, test.circuit(), *backend.noise);
            auto c = noisy_readout(rho, test.ancilla(), *backend.noise, backend.shots, derive_seed(backend.seed, stream));
            return test.coefficient * (c.n0 - c.n1) / (c.n0 + c.n1);
        }
    }
    return 0;
}

double evaluate(const std::vector<HadamardTest> &tests, const EvalBackend &backend, uint64_t stream) {
    double s = 0;
    for (size_t k = 0; k < tests.size(); k++) {
        s += evaluate(tests[k], backend, derive_seed(stream, k));
    }
    return s;
}

Eigen::VectorXd measure_probabilities(
    const AnsatzSpec &spec, const Eigen::VectorXd &theta, const EvalBackend &backend, uint64_t stream) {
    backend.validate();
    if (backend.mode == EvalMode::Analytic) {
        return encoded_amplitudes(spec, theta).cwiseAbs2();
    }
    Eigen::VectorXd full;
    if (backend.mode == EvalMode::Noisy) {
        DensityMatrix rho(spec.num_qubits);
        apply_noisy_gates(rho, spec.bind(theta), *backend.noise);
        full = sample_distribution(noisy_distribution(rho, *backend.noise), backend.shots,
                                   derive_seed(backend.seed, stream, 0x9b0b));
    } else {
        StateVector s = build_state(spec, theta);
        full = s.amplitudes().cwiseAbs2();
        if (backend.mode == EvalMode::Sampled) {
            full = sample_distribution(full, backend.shots, derive_seed(backend.seed, stream, 0x9b0b));
        }
    }
    Eigen::VectorXd p(spec.num_states);
    for (size_t k = 0; k < spec.num_states; k++) {
        p[k] = full[spec.map.state_to_index[k]];
    }
    return p;
}

}  // namespace vqdyn
