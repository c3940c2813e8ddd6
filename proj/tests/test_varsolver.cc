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
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "vqdyn/ansatz.h"
#include "vqdyn/benchmark.h"
#include "vqdyn/errors.h"
#include "vqdyn/model.h"
#include "vqdyn/varsolver.h"

using namespace vqdyn;

namespace {

Eigen::VectorXd random_theta(int L, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    Eigen::VectorXd t(L);
    for (auto &v : t) {
        v = u(rng);
    }
    return t;
}

double max_diff(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double max_rel_percent(const Eigen::VectorXd &p, const Eigen::VectorXd &ref) {
    return ((p - ref).array() / ref.array()).abs().maxCoeff() * 100;
}

MarchConfig short_config(double t_end, Marching scheme = Marching::SOM) {
    MarchConfig c;
    c.t_end = t_end;
    c.scheme = scheme;
    c.record_every = 10;
    return c;
}

}  // namespace

TEST(assemble, circuit_matches_analytic) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> tt(0, 200);
    LaserPulse pulse;
    AtomModel model(preset_basis("h4"));
    for (Encoding scheme : {Encoding::JWE, Encoding::QEE}) {
        AnsatzSpec s = make_ansatz(scheme, 4);
        for (int trial = 0; trial < 100; trial++) {
            Eigen::VectorXd th = random_theta(s.num_params, rng);
            Representation rep = trial % 2 ? Representation::IR : Representation::SR;
            Eigen::MatrixXcd h = model.matrix_at(pulse, tt(rng), rep);
            PauliSum ham = encode(scheme, h);
            bool gpc = trial % 3 != 0;
            auto a = assemble_system(s, th, ham, EvalBackend::analytic(), gpc);
            auto c = assemble_system(s, th, ham, EvalBackend::exact_circuit(), gpc);
            auto d = assemble_system_dense(s, th, h, gpc);
            EXPECT_LT(max_diff(a.M, c.M), 1e-9);
            EXPECT_LT(max_diff(a.V, c.V), 1e-9);
            EXPECT_NEAR(a.energy, c.energy, 1e-9);
            EXPECT_LT(max_diff(a.M, d.M), 1e-12);
            EXPECT_LT(max_diff(a.V, d.V), 1e-12);
        }
    }
}

TEST(assemble, structure) {
    std::mt19937_64 rng(2);
    AtomModel model(preset_basis("h4"));
    LaserPulse pulse;
    for (Encoding scheme : {Encoding::JWE, Encoding::QEE}) {
        AnsatzSpec s = make_ansatz(scheme, 4);
        Eigen::VectorXd th = random_theta(s.num_params, rng);
        Eigen::MatrixXcd h = model.matrix_at(pulse, 50, Representation::SR);
        auto g = assemble_system_dense(s, th, h, true);
        auto n = assemble_system_dense(s, th, h, false);
        EXPECT_LT(max_diff(g.A_real, g.A_real.transpose()), 1e-15);
        EXPECT_LT(max_diff(g.M, g.M.transpose()), 1e-15);
        EXPECT_EQ(n.M, n.A_real);
        EXPECT_EQ(n.V, n.C_imag);
        EXPECT_LT(max_diff(g.M, g.A_real - g.overlaps * g.overlaps.transpose()), 1e-15);
        EXPECT_LT(max_diff(g.V, g.C_imag - g.overlaps * g.energy), 1e-15);
        Eigen::VectorXcd phi = encoded_amplitudes(s, th);
        EXPECT_NEAR(g.energy, phi.dot(h * phi).real(), 1e-13);
        for (int i = 0; i < s.num_params; i++) {
            if (s.gates[s.param_gate[i]].controls.empty()) {
                EXPECT_NEAR(g.A_real(i, i), 0.25, 1e-14);
            }
        }
    }
}

TEST(assemble, ground_state_is_stationary) {
    AtomModel model(preset_basis("h2"));
    LaserPulse off;
    off.E0 = 0;
    AnsatzSpec s = make_ansatz(Encoding::QEE, 2);
    Eigen::MatrixXcd h = model.matrix_at(off, 0, Representation::SR);
    auto sys = assemble_system(s, Eigen::VectorXd::Zero(2), encode(Encoding::QEE, h), EvalBackend::analytic(), true);
    // The phase parameter rotates |0> by a global phase, so C = overlap * energy
    // and only the corrected right-hand side vanishes.
    EXPECT_LT((sys.C_imag - sys.overlaps * sys.energy).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(sys.V.cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(solve_thetadot(sys).cwiseAbs().maxCoeff(), 1e-15);
    auto raw = assemble_system(s, Eigen::VectorXd::Zero(2), encode(Encoding::QEE, h), EvalBackend::analytic(), false);
    EXPECT_GT(raw.V.cwiseAbs().maxCoeff(), 0.1);
}

TEST(solve, identity_and_residual) {
    McLachlanSystem sys;
    sys.M = Eigen::MatrixXd::Identity(3, 3);
    sys.V = Eigen::Vector3d(1, -2, 3);
    SolveInfo info;
    EXPECT_EQ(solve_thetadot(sys, 1e-8, &info), sys.V);
    EXPECT_FALSE(info.regularized);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; trial++) {
        int L = 2 + trial % 12;
        Eigen::MatrixXd b(L, L);
        Eigen::VectorXd v(L);
        for (int i = 0; i < L; i++) {
            v[i] = g(rng);
            for (int j = 0; j < L; j++) {
                b(i, j) = g(rng);
            }
        }
        sys.M = b * b.transpose() + 0.1 * Eigen::MatrixXd::Identity(L, L);
        sys.V = v;
        Eigen::VectorXd x = solve_thetadot(sys, 1e-8, &info);
        EXPECT_FALSE(info.regularized);
        EXPECT_LT((sys.M * x - v).norm(), 1e-10 * v.norm());
    }
}

TEST(solve, tikhonov_bound) {
    McLachlanSystem sys;
    sys.M = Eigen::Vector2d(1, 1e-16).asDiagonal();
    sys.V = Eigen::Vector2d(1, 1);
    SolveInfo info;
    Eigen::VectorXd x = solve_thetadot(sys, 1e-8, &info);
    EXPECT_TRUE(info.regularized);
    EXPECT_GT(info.condition, 1e12);
    EXPECT_TRUE(x.allFinite());
    EXPECT_LE(std::abs(x[1]), sys.V.norm() / 1e-8);
    EXPECT_NEAR(x[0], 1 / (1 + 1e-8), 1e-15);

    sys.M = Eigen::Matrix2d::Zero();
    sys.M(0, 0) = 1;
    sys.M(1, 1) = 0;
    x = solve_thetadot(sys, 1e-8, &info);
    EXPECT_TRUE(x.allFinite());
    sys.M(0, 0) = std::nan("");
    EXPECT_THROW(solve_thetadot(sys), NumericalError);
}

TEST(march_config, validation) {
    MarchConfig c;
    EXPECT_EQ(c.steps(), 20000);
    c.dt = 0.03;
    EXPECT_THROW(c.steps(), ConfigError);
    c.dt = -1;
    EXPECT_THROW(c.validate(), ConfigError);
    c.dt = 0.01;
    c.record_every = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c.record_every = 1;
    c.backend = EvalBackend::sampled(0, 1);
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_EQ(parse_marching("fom"), Marching::FOM);
    EXPECT_EQ(parse_marching("som"), Marching::SOM);
    EXPECT_THROW(parse_marching("rk4"), ConfigError);
}

TEST(march, field_free_interaction_picture_is_frozen) {
    std::mt19937_64 rng(4);
    AtomModel model(preset_basis("h4"));
    LaserPulse off;
    off.E0 = 0;
    for (Encoding scheme : {Encoding::JWE, Encoding::QEE}) {
        AnsatzSpec s = make_ansatz(scheme, 4);
        Eigen::VectorXd th0 = random_theta(s.num_params, rng);
        MarchConfig c = short_config(5);
        c.representation = Representation::IR;
        RunRecord r = march(s, c, th0, model, off);
        ASSERT_FALSE(r.failed) << r.error;
        for (const auto &th : r.theta) {
            EXPECT_EQ(th, th0);
        }
        EXPECT_EQ(r.final_theta, th0);
    }
}

TEST(march, record_shape_and_norm) {
    AtomModel model(preset_basis("h4"));
    LaserPulse pulse;
    AnsatzSpec s = make_ansatz(Encoding::JWE, 4);
    MarchConfig c = short_config(100);
    c.record_every = 7;
    int64_t steps = c.steps();
    int observed = 0;
    RunRecord r = march(s, c, Eigen::VectorXd::Zero(s.num_params), model, pulse, [&](int64_t, double) {
        observed++;
    });
    ASSERT_FALSE(r.failed) << r.error;
    EXPECT_EQ(r.steps_done, steps);
    EXPECT_EQ(observed, steps);
    EXPECT_EQ((int64_t)r.t.size(), steps / 7 + 1);
    EXPECT_EQ(r.t.front(), 0);
    EXPECT_EQ(r.labels.size(), 4u);
    EXPECT_EQ(r.labels[0], "1s");
    EXPECT_NEAR(r.final_t, 100, 1e-9);
    for (size_t k = 0; k < r.t.size(); k++) {
        EXPECT_NEAR(r.norm[k], 1, 1e-8);
        EXPECT_NEAR(r.probs[k].sum(), 1, 1e-8);
        if (k > 0) {
            EXPECT_NEAR(r.t[k] - r.t[k - 1], 7 * c.dt, 1e-9);
        }
    }
    EXPECT_NEAR(r.final_probs.sum(), 1, 1e-8);
}

TEST(march, alpha_tracks_global_phase) {
    // Field-free ground state: the state only picks up exp(-i E_1s t).
    AtomModel model(preset_basis("h2"));
    LaserPulse off;
    off.E0 = 0;
    AnsatzSpec s = make_ansatz(Encoding::QEE, 2);
    MarchConfig c = short_config(10);
    c.seed_phases = false;
    RunRecord r = march(s, c, Eigen::VectorXd::Zero(2), model, off);
    ASSERT_FALSE(r.failed);
    EXPECT_NEAR(r.final_alpha, 0.5 * 10, 1e-9);
}

TEST(march, two_state_benchmark) {
    AtomModel model(preset_basis("h2"));
    LaserPulse pulse;
    AnsatzSpec s = make_ansatz(Encoding::QEE, 2);
    MarchConfig c;
    RunRecord r = march(s, c, Eigen::VectorXd::Zero(2), model, pulse);
    ASSERT_FALSE(r.failed) << r.error;
    Eigen::VectorXd ref = benchmark_probabilities(model, pulse);
    EXPECT_LT(std::abs(r.final_probs[1] - ref[1]) / ref[1], 1e-3);
    // Also against the tabulated value directly.
    EXPECT_LT(std::abs(r.final_probs[1] - 0.00044517) / 0.00044517, 1e-3);
}

TEST(march, four_state_unary) {
    AtomModel model(preset_basis("h4"));
    LaserPulse pulse;
    AnsatzSpec s = make_ansatz(Encoding::JWE, 4);
    RunRecord r = march(s, MarchConfig{}, Eigen::VectorXd::Zero(s.num_params), model, pulse);
    ASSERT_FALSE(r.failed) << r.error;
    // Layout-tolerant threshold.
    EXPECT_LT(max_rel_percent(r.final_probs, benchmark_probabilities(model, pulse)), 0.5);
}

TEST(march, representation_invariance) {
    AtomModel model(preset_basis("h2"));
    LaserPulse pulse;
    for (Encoding scheme : {Encoding::JWE, Encoding::QEE}) {
        AnsatzSpec s = make_ansatz(scheme, 2);
        MarchConfig sr;
        MarchConfig ir;
        ir.representation = Representation::IR;
        RunRecord a = march(s, sr, Eigen::VectorXd::Zero(2), model, pulse);
        RunRecord b = march(s, ir, Eigen::VectorXd::Zero(2), model, pulse);
        ASSERT_FALSE(a.failed || b.failed);
        EXPECT_LT((a.final_probs - b.final_probs).cwiseAbs().maxCoeff(), 1e-3);
    }
}

TEST(march, gpc_and_second_order_help) {
    // Shortened window over the pulse peak keeps the test quick.
    AtomModel model(preset_basis("h4"));
    LaserPulse pulse;
    AnsatzSpec s = make_ansatz(Encoding::JWE, 4);
    TdseOptions ref_opts;
    ref_opts.atol = kReferenceTolerances.atol;
    ref_opts.rtol = kReferenceTolerances.rtol;
    Eigen::VectorXd ref = integrate_tdse(model, pulse, 100, ref_opts).final_state.cwiseAbs2();
    auto run = [&](Marching m, bool gpc, double dt) {
        MarchConfig c = short_config(100, m);
        c.gpc = gpc;
        c.dt = dt;
        c.record_every = 1000;
        RunRecord r = march(s, c, Eigen::VectorXd::Zero(s.num_params), model, pulse);
        EXPECT_FALSE(r.failed) << r.error;
        return max_rel_percent(r.final_probs, ref);
    };
    double som = run(Marching::SOM, true, 1e-2);
    EXPECT_GT(run(Marching::SOM, false, 1e-2), 10 * som);
    EXPECT_GT(run(Marching::FOM, true, 1e-2), 3 * som);
    EXPECT_GT(run(Marching::SOM, true, 1e-1), som);
}

TEST(record, csv_round_trip) {
    AtomModel model(preset_basis("h2"));
    LaserPulse pulse;
    AnsatzSpec s = make_ansatz(Encoding::QEE, 2);
    MarchConfig c = short_config(1);
    RunRecord r = march(s, c, Eigen::VectorXd::Zero(2), model, pulse);
    auto dir = std::filesystem::temp_directory_path() / "vqdyn_record_test";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "run.csv").string();
    write_run_record(r, c, path, R"({"note": "x"})");
    EXPECT_TRUE(std::filesystem::exists(dir / "run_theta.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "run.csv.json"));
    RunTable t = read_run_csv(path);
    ASSERT_EQ(t.t.size(), r.t.size());
    EXPECT_EQ(t.columns[0], "t");
    EXPECT_EQ(t.columns[1], "alpha");
    for (size_t k = 0; k < t.t.size(); k++) {
        EXPECT_NEAR(t.t[k], r.t[k], 1e-14);
        EXPECT_LT((t.probs[k] - r.probs[k]).cwiseAbs().maxCoeff(), 1e-14);
    }
    std::ifstream js(path + ".json");
    std::string text((std::istreambuf_iterator<char>(js)), {});
    EXPECT_NE(text.find("\"note\""), std::string::npos);
    EXPECT_NE(text.find("\"dt\""), std::string::npos);
    std::filesystem::remove_all(dir);
    EXPECT_THROW(read_run_csv((dir / "missing.csv").string()), ConfigError);
}
