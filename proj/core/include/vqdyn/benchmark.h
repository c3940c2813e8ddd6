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

#ifndef VQDYN_BENCHMARK_H
#define VQDYN_BENCHMARK_H

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vqdyn/model.h"

namespace vqdyn {

enum class Stepper { RKF78, DOPRI5 };

struct TdseOptions {
    double atol = 1e-12;
    double rtol = 1e-6;
    Stepper stepper = Stepper::RKF78;
    Representation representation = Representation::SR;
    /// Initial amplitudes; empty means (1, 0, ..., 0).
    Eigen::VectorXcd c0;
    /// Times at which to record amplitudes (ascending, within [0, t_end]).
    std::vector<double> sample_times;
    /// Steps below this size are treated as underflow.
    double min_step = 1e-12;
};

/// Tolerances used for the bundled golden files and all reference runs.
struct ReferenceTolerances {
    double atol;
    double rtol;
};
inline constexpr ReferenceTolerances kReferenceTolerances{1e-14, 1e-11};

struct AmplitudeSeries {
    std::vector<double> t;
    std::vector<Eigen::VectorXcd> c;
    Eigen::VectorXcd final_state;
    size_t steps = 0;
};

/// Adaptive embedded Runge-Kutta integration of dc/dt = -i h(t) c on [0, t_end].
/// Throws NumericalError on step-size underflow or a diverging norm.
AmplitudeSeries integrate_tdse(
    const AtomModel &model, const LaserPulse &pulse, double t_end, const TdseOptions &opts = {});

using HamiltonianFn = std::function<Eigen::MatrixXcd(double)>;
/// Same integrator for an arbitrary Hamiltonian; returns c(t1).
Eigen::VectorXcd propagate(
    const HamiltonianFn &h, const Eigen::VectorXcd &c0, double t0, double t1, const TdseOptions &opts = {});

/// |c(T)|^2 from (1, 0, ...) with the reference tolerances.
Eigen::VectorXd benchmark_probabilities(
    const AtomModel &model, const LaserPulse &pulse, double t_end = 200, Representation rep = Representation::SR);

struct DeviationReport {
    Eigen::VectorXd p;
    Eigen::VectorXd p_ref;
    /// (p - p_ref) / p_ref * 100.
    Eigen::VectorXd percent;
    double max_abs = 0;
    double mean_abs = 0;
    double min_abs = 0;
};

/// Throws ConfigError on a length mismatch or a non-positive reference entry.
DeviationReport deviation(const Eigen::VectorXd &p, const Eigen::VectorXd &p_ref);

/// Golden file: header "state,P_final", one row per state label.
struct GoldenTable {
    std::vector<std::string> labels;
    Eigen::VectorXd p;
};
void write_golden(const GoldenTable &g, const std::string &path);
GoldenTable read_golden(const std::string &path);
/// "benchmarks/h<N>_omega<w>.csv" relative to the data directory.
std::string golden_name(size_t num_states, double omega);

}  // namespace vqdyn

#endif
