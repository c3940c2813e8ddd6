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

#ifndef VQDYN_VARSOLVER_H
#define VQDYN_VARSOLVER_H

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vqdyn/ansatz.h"
#include "vqdyn/measure.h"
#include "vqdyn/model.h"
#include "vqdyn/pauli.h"

namespace vqdyn {

enum class Marching { FOM, SOM };
const char *to_string(Marching m);
Marching parse_marching(const std::string &text);

struct McLachlanSystem {
    Eigen::MatrixXd A_real;
    Eigen::VectorXd C_imag;
    Eigen::MatrixXd M;
    Eigen::VectorXd V;
    bool gpc = true;
    double energy = 0;
    /// Im <d_i phi | phi>; the overlaps themselves are purely imaginary.
    Eigen::VectorXd overlaps;
};

/// Entries from Hadamard tests (or direct inner products for the analytic
/// backend). Test evaluation fans out over `threads` workers (0 = all cores).
McLachlanSystem assemble_system(
    const AnsatzSpec &spec,
    const Eigen::VectorXd &theta,
    const PauliSum &hamiltonian,
    const EvalBackend &backend,
    bool gpc,
    uint64_t stream = 0,
    int threads = 1);

/// Analytic assembly from the configuration-space matrix h (N x N).
McLachlanSystem assemble_system_dense(
    const AnsatzSpec &spec, const Eigen::VectorXd &theta, const Eigen::MatrixXcd &h, bool gpc);

struct SolveInfo {
    bool regularized = false;
    double condition = 1;
};

/// LU solve of M thetadot = V; adds lambda I when the condition estimate of M
/// exceeds cond_limit.
Eigen::VectorXd solve_thetadot(
    const McLachlanSystem &sys, double lambda = 1e-8, SolveInfo *info = nullptr, double cond_limit = 1e12);

struct MarchConfig {
    double dt = 1e-2;
    double t_end = 200;
    Marching scheme = Marching::SOM;
    bool gpc = true;
    EvalBackend backend;
    Representation representation = Representation::SR;
    double lambda = 1e-8;
    int record_every = 100;
    int threads = 1;
    /// Binary encoding started from theta = 0 uses quadrature_phase_seed instead.
    bool seed_phases = true;

    /// Number of steps; throws ConfigError unless t_end is a multiple of dt.
    int64_t steps() const;
    void validate() const;
};

struct RunRecord {
    std::vector<std::string> labels;
    std::vector<double> t;
    std::vector<double> alpha;
    std::vector<Eigen::VectorXd> theta;
    std::vector<Eigen::VectorXd> probs;
    /// Sum of exact configuration probabilities at each record.
    std::vector<double> norm;

    double final_t = 0;
    double final_alpha = 0;
    Eigen::VectorXd final_theta;
    Eigen::VectorXd final_probs;
    int64_t steps_done = 0;
    int64_t regularized_steps = 0;
    bool failed = false;
    std::string error;
};

using MarchObserver = std::function<void(int64_t step, double t)>;

/// Time loop from t = 0 to t_end. Failures stop the loop and are reported in
/// the returned (partial) record.
RunRecord march(
    const AnsatzSpec &spec,
    const MarchConfig &config,
    const Eigen::VectorXd &theta0,
    const AtomModel &model,
    const LaserPulse &pulse,
    const MarchObserver &observer = nullptr);

/// CSV with header t,alpha,P_0,...,P_{N-1}.
void write_run_csv(const RunRecord &rec, std::ostream &out);
/// CSV with header t,theta_0,...
void write_theta_csv(const RunRecord &rec, std::ostream &out);
/// Writes <path>, <stem>_theta.csv and <path>.json. `extra_json` is merged
/// into the metadata object when it parses as a JSON object.
void write_run_record(
    const RunRecord &rec, const MarchConfig &config, const std::string &path, const std::string &extra_json = "");

struct RunTable {
    std::vector<std::string> columns;
    std::vector<double> t;
    std::vector<Eigen::VectorXd> probs;
};
RunTable read_run_csv(const std::string &path);

}  // namespace vqdyn

#endif
