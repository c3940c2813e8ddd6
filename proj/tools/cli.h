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

#ifndef VQDYN_TOOLS_CLI_H
#define VQDYN_TOOLS_CLI_H

#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vqdyn/benchmark.h"
#include "vqdyn/model.h"
#include "vqdyn/varsolver.h"

namespace vqdyn::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Everything a run needs, after flag and config-file merging.
struct ExperimentConfig {
    std::string preset = "h4";
    std::string basis_file;
    LaserPulse pulse;
    std::string encoding = "qee";
    double dt = 1e-2;
    double t_end = 200;
    std::string marching = "som";
    bool gpc = true;
    std::string backend = "analytic";
    int64_t shots = 0;
    uint64_t seed = 1;
    std::string noise_calibration;
    std::string layout;
    std::string representation = "sr";
    std::string out;
    int record_every = 100;
    bool record_every_set = false;
    int threads = 1;
    /// Tikhonov shift used when M is ill conditioned.
    double lambda = 1e-8;
    bool allow_long = false;
    std::string initial;
    std::string stepper = "rkf78";
    double atol = kReferenceTolerances.atol;
    double rtol = kReferenceTolerances.rtol;
    double fourier_L = 100;
    int fourier_n_max = 8;
    int window = 100;
    std::vector<std::string> compare_files;

    BasisSet basis() const;
    /// Normalized initial amplitudes; (1, 0, ...) when none were given.
    Eigen::VectorXcd initial_state(size_t n) const;
    MarchConfig march_config() const;
};

/// Estimated system-assembly evaluations: steps times the number of A entries.
double assembly_estimate(int64_t steps, int num_params);
inline constexpr double kLongRunLimit = 1e7;

/// Trailing moving average over `window` rows; the first window-1 entries
/// average the rows seen so far.
std::vector<double> moving_average(const std::vector<double> &x, int window);

struct DriftSummary {
    /// Per state.
    Eigen::VectorXd sigma;
    Eigen::VectorXd final_deviation;
    Eigen::VectorXd max_ma;
    /// Post-pulse statistics over rows with t > t_after.
    Eigen::VectorXd post_mean;
    Eigen::VectorXd post_max_ma_dev;
    double t_after = 100;
};

/// measured - reference per row and state, with moving averages and the
/// binomial sampling scale sqrt(P (1 - P) / shots) of the reference.
DriftSummary drift_summary(
    const RunRecord &measured, const RunRecord &reference, int64_t shots, int window_rows, double t_after,
    std::vector<std::vector<double>> *deviation_columns = nullptr, std::vector<std::vector<double>> *ma_columns = nullptr);

/// Entry point shared by the vqdyn executable and the tests.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace vqdyn::cli

#endif
