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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "vqdyn/ansatz.h"
#include "vqdyn/errors.h"

using namespace vqdyn;

namespace {

const cplx kI(0, 1);

Eigen::VectorXd random_theta(int L, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    Eigen::VectorXd t(L);
    for (int i = 0; i < L; i++) {
        t[i] = u(rng);
    }
    return t;
}

Eigen::VectorXcd random_target(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd t(n);
    for (auto &v : t) {
        v = cplx(g(rng), g(rng));
    }
    return t.normalized();
}

struct Case {
    Encoding scheme;
    size_t n;
};

const Case kCases[] = {{Encoding::JWE, 2}, {Encoding::JWE, 4}, {Encoding::JWE, 8}, {Encoding::QEE, 2},
                       {Encoding::QEE, 4}, {Encoding::QEE, 8}, {Encoding::QEE, 16}};

}  // namespace

TEST(ansatz, jwe_census) {
    for (size_t n : {2, 4, 8, 16}) {
        AnsatzSpec s = make_ansatz(Encoding::JWE, n);
        GateCensus c = s.census();
        EXPECT_EQ(s.num_qubits, (int)n);
        EXPECT_EQ(s.num_params, 2 * ((int)n - 1));
        EXPECT_EQ(c.crx, (int)n - 2);
        EXPECT_EQ(c.cnot, (int)n - 1);
        EXPECT_EQ(c.rz, (int)n - 1);
        EXPECT_EQ(c.rx, 1);
        EXPECT_EQ(c.x, 1);
        EXPECT_EQ(c.total, 3 * (int)n - 2);
    }
}

TEST(ansatz, qee_census) {
    for (size_t n : {2, 4, 8, 16}) {
        AnsatzSpec s = make_ansatz(Encoding::QEE, n);
        GateCensus c = s.census();
        int nq = (int)std::log2((double)n);
        EXPECT_EQ(s.num_qubits, nq);
        EXPECT_EQ(s.num_params, 2 * ((int)n - 1));
        EXPECT_EQ(c.ry + c.rz, 2 * ((int)n - 1));
        EXPECT_EQ(c.ry, (int)n - 1);
        EXPECT_EQ(c.cnot, 2 * ((int)n - 1 - nq));
    }
    GateCensus c8 = make_ansatz(Encoding::QEE, 8).census();
    EXPECT_EQ(c8.cnot, 8);
}

TEST(ansatz, zero_parameters_give_ground_configuration) {
    for (const Case &c : kCases) {
        AnsatzSpec s = make_ansatz(c.scheme, c.n);
        StateVector st = build_state(s, Eigen::VectorXd::Zero(s.num_params));
        EXPECT_NEAR(std::abs(st[s.map.state_to_index[0]]), 1.0, 1e-15) << to_string(c.scheme) << c.n;
    }
}

TEST(ansatz, jwe_matches_closed_form) {
    std::mt19937_64 rng(12);
    for (size_t n : {2, 3, 4, 6, 8}) {
        AnsatzSpec s = make_ansatz(Encoding::JWE, n);
        for (int trial = 0; trial < 100; trial++) {
            Eigen::VectorXd th = random_theta(s.num_params, rng);
            StateVector st = build_state(s, th);
            Eigen::VectorXcd amps = encoded_amplitudes(s, st);
            EXPECT_LT((amps - jwe_closed_form(n, th)).cwiseAbs().maxCoeff(), 1e-12);
            // Support only on one-hot strings.
            EXPECT_NEAR(amps.squaredNorm(), 1, 1e-12);
        }
    }
}

TEST(ansatz, qee_two_qubit_closed_form) {
    std::mt19937_64 rng(13);
    AnsatzSpec s = make_ansatz(Encoding::QEE, 4);
    for (int trial = 0; trial < 100; trial++) {
        Eigen::VectorXd th = random_theta(6, rng);
        StateVector st = build_state(s, th);
        EXPECT_LT((st.amplitudes() - qee2_closed_form(th)).cwiseAbs().maxCoeff(), 1e-12);
        cplx a00 = std::exp(kI * (-th[3] - th[4] - th[5]) / 2.0) * std::cos(th[0] / 2) * std::cos((th[1] + th[2]) / 2);
        EXPECT_NEAR(std::abs(st[0] - a00), 0, 1e-12);
    }
}

TEST(ansatz, derivative_branch_structure) {
    AnsatzSpec j = make_ansatz(Encoding::JWE, 4);
    Eigen::VectorXd th = Eigen::VectorXd::Constant(j.num_params, 0.3);
    for (int i = 0; i < j.num_params; i++) {
        auto b = derivative_branches(j, th, i);
        const Gate &g = j.gates[j.param_gate[i]];
        if (g.controls.empty()) {
            ASSERT_EQ(b.size(), 1u);
            EXPECT_EQ(b[0].coefficient, -0.5 * kI);
        } else {
            ASSERT_EQ(b.size(), 2u);
            EXPECT_EQ(b[0].coefficient, -0.25 * kI);
            EXPECT_EQ(b[1].coefficient, 0.25 * kI);
        }
    }
    EXPECT_THROW(derivative_branches(j, th, j.num_params), ConfigError);
}

TEST(ansatz, single_qubit_toy_derivative) {
    AnsatzSpec toy;
    toy.scheme = Encoding::QEE;
    toy.num_states = 2;
    toy.num_qubits = 1;
    toy.num_params = 3;
    toy.gates = {gate_rz(0, 0, 0), gate_rx(0, 0, 1), gate_rz(0, 0, 2)};
    toy.param_gate = {0, 1, 2};
    toy.phase_block_start = 3;
    toy.map = config_map(Encoding::QEE, 2);
    Eigen::VectorXd th(3);
    th << 0.4, -1.1, 2.3;
    auto b = derivative_branches(toy, th, 1);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].coefficient, -0.5 * kI);
    StateVector got(1);
    got.apply(b[0].circuit);
    StateVector want(1);
    want.apply({gate_rz(0, 0.4), gate_rx(0, -1.1), gate_x(0), gate_rz(0, 2.3)});
    EXPECT_LT((got.amplitudes() - want.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ansatz, derivatives_match_finite_differences) {
    std::mt19937_64 rng(14);
    const double h = 1e-5;
    for (const Case &c : kCases) {
        if (c.n > 8) {
            continue;
        }
        AnsatzSpec s = make_ansatz(c.scheme, c.n);
        for (int trial = 0; trial < 5; trial++) {
            Eigen::VectorXd th = random_theta(s.num_params, rng);
            StateVector phi = build_state(s, th);
            for (int i = 0; i < s.num_params; i++) {
                Eigen::VectorXd p = th, m = th;
                p[i] += h;
                m[i] -= h;
                Eigen::VectorXcd fd = (build_state(s, p).amplitudes() - build_state(s, m).amplitudes()) / (2 * h);
                StateVector d = derivative_state(s, th, i).combined();
                EXPECT_LT((d.amplitudes() - fd).cwiseAbs().maxCoeff(), 1e-8) << to_string(c.scheme) << c.n << " i=" << i;
                // <d_i phi|phi> is purely imaginary.
                EXPECT_LT(std::abs(inner_product(d, phi).real()), 1e-12);
            }
        }
    }
}

TEST(ansatz, closed_form_jacobian) {
    std::mt19937_64 rng(15);
    for (size_t n : {2, 4, 8}) {
        AnsatzSpec s = make_ansatz(Encoding::JWE, n);
        Eigen::VectorXd th = random_theta(s.num_params, rng);
        Eigen::MatrixXcd circuit(n, s.num_params);
        for (int i = 0; i < s.num_params; i++) {
            circuit.col(i) = encoded_amplitudes(s, derivative_state(s, th, i).combined());
        }
        EXPECT_LT((jwe_closed_form_jacobian(n, th) - circuit).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(ansatz, full_rank_ray_jacobian) {
    std::mt19937_64 rng(16);
    for (const Case &c : kCases) {
        if (c.n > 8) {
            continue;
        }
        AnsatzSpec s = make_ansatz(c.scheme, c.n);
        int L = s.num_params;
        int rank_failures = 0;
        for (int trial = 0; trial < 100; trial++) {
            Eigen::VectorXd th = random_theta(L, rng);
            Eigen::VectorXcd phi = register_amplitudes(s, th);
            Eigen::MatrixXcd d = register_jacobian(s, th);
            // Horizontal part: remove the component along phi (norm and global phase).
            Eigen::MatrixXcd hz = d - phi * (phi.adjoint() * d);
            Eigen::MatrixXd real(2 * hz.rows(), L);
            real << hz.real(), hz.imag();
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(real);
            auto sv = svd.singularValues();
            if (sv[L - 1] < 1e-8 * sv[0]) {
                rank_failures++;
            }
        }
        EXPECT_EQ(rank_failures, 0) << to_string(c.scheme) << c.n;
    }
}

TEST(ansatz, norm_preserved) {
    std::mt19937_64 rng(17);
    for (const Case &c : kCases) {
        AnsatzSpec s = make_ansatz(c.scheme, c.n);
        Eigen::VectorXd th = random_theta(s.num_params, rng);
        EXPECT_NEAR(encoded_amplitudes(s, th).squaredNorm(), 1, 1e-12);
    }
    EXPECT_THROW(build_state(make_ansatz(Encoding::QEE, 4), Eigen::VectorXd::Zero(5)), ConfigError);
}

TEST(ansatz, quadrature_phase_seed) {
    for (size_t n : {2, 4, 8}) {
        AnsatzSpec s = make_ansatz(Encoding::QEE, n);
        Eigen::VectorXd th = quadrature_phase_seed(s);
        for (int i = 0; i < s.num_params; i++) {
            if (!s.is_phase_param(i)) {
                EXPECT_EQ(th[i], 0.0);
            }
        }
        // Still the ground configuration.
        EXPECT_NEAR(std::abs(encoded_amplitudes(s, th)[0]), 1, 1e-14);
        // Each configuration's phase under the block sits -pi/2 from |q_0>.
        PhaseBlockMap pm = probe_phase_block(s);
        Eigen::VectorXd tp(pm.params.size());
        for (size_t k = 0; k < pm.params.size(); k++) {
            tp[k] = th[pm.params[k]];
        }
        double p0 = pm.grad.row(0).dot(tp);
        for (int x = 1; x < pm.grad.rows(); x++) {
            double rel = pm.grad.row(x).dot(tp) - p0;
            EXPECT_NEAR(std::remainder(rel + M_PI / 2, 2 * M_PI), 0, 1e-10) << n << " x=" << x;
        }
    }
    EXPECT_TRUE(quadrature_phase_seed(make_ansatz(Encoding::JWE, 4)).isZero());
}

TEST(fit, ground_state_gives_zeros) {
    for (const Case &c : kCases) {
        AnsatzSpec s = make_ansatz(c.scheme, c.n);
        Eigen::VectorXcd t = Eigen::VectorXcd::Zero(c.n);
        t[0] = 1;
        EXPECT_TRUE(fit_initial_params(s, t).isZero()) << to_string(c.scheme) << c.n;
    }
}

TEST(fit, excited_two_state) {
    AnsatzSpec s = make_ansatz(Encoding::QEE, 2);
    Eigen::VectorXcd t(2);
    t << 0, 1;
    Eigen::VectorXd th = fit_initial_params(s, t);
    EXPECT_NEAR(std::abs(th[0]), M_PI, 1e-12);
    EXPECT_NEAR(th[1], 0, 1e-12);
}

TEST(fit, equal_amplitudes_and_random_targets) {
    std::mt19937_64 rng(18);
    for (const Case &c : kCases) {
        if (c.n > 8) {
            continue;
        }
        AnsatzSpec s = make_ansatz(c.scheme, c.n);
        Eigen::VectorXcd eq = Eigen::VectorXcd::Constant(c.n, 1 / std::sqrt((double)c.n));
        EXPECT_LT(fit_error(s, fit_initial_params(s, eq), eq), 1e-9) << to_string(c.scheme) << c.n;
        for (int trial = 0; trial < 3; trial++) {
            Eigen::VectorXcd t = random_target(c.n, rng);
            EXPECT_LT(fit_error(s, fit_initial_params(s, t), t), 1e-9) << to_string(c.scheme) << c.n;
        }
    }
    Eigen::VectorXcd bad = Eigen::VectorXcd::Constant(4, 1.0);
    EXPECT_THROW(fit_initial_params(make_ansatz(Encoding::QEE, 4), bad), ConfigError);
}
