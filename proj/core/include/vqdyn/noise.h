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

#ifndef VQDYN_NOISE_H
#define VQDYN_NOISE_H

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vqdyn/circuit.h"

namespace vqdyn {

struct QubitCalibration {
    double gate_error = 0;
    double readout_error = 0;
    double t1_us = 0;
    double t2_us = 0;
};

struct CouplerCalibration {
    int control = 0;
    int target = 0;
    double gate_error = 0;
    double time_ns = 0;
};

/// Device noise description. Circuit qubit q runs on physical qubit layout[q]
/// (identity when layout is empty).
struct NoiseModel {
    std::map<int, QubitCalibration> qubits;
    std::map<std::pair<int, int>, CouplerCalibration> pairs;
    double single_qubit_gate_time_ns = 35;
    std::vector<int> layout;
    /// Allow gates between uncoupled physical qubits, costed as a SWAP-routed CNOT.
    bool allow_routed_pairs = false;

    int physical(int q) const;
    const QubitCalibration &qubit(int physical_q) const;
    /// Calibration for a physical pair in either orientation.
    const CouplerCalibration *find_pair(int a, int b) const;
    /// Effective (error, time_ns) of one CNOT between circuit qubits a and b.
    std::pair<double, double> cnot_cost(int a, int b) const;

    /// All errors zero and T1 = T2 = infinity on `num_qubits` fully coupled qubits.
    static NoiseModel ideal(int num_qubits);
};

/// Reads the two-section calibration CSV.
NoiseModel parse_calibration(std::istream &in);
NoiseModel load_calibration(const std::string &path);

/// Kraus sets used by the model.
std::vector<Eigen::Matrix2cd> amplitude_damping_kraus(double gamma);
/// Dephasing that multiplies coherences by (1 - p).
std::vector<Eigen::Matrix2cd> phase_damping_kraus(double p);
/// rho -> (1 - p) rho + p tr_q(rho) I/2.
std::vector<Eigen::Matrix2cd> depolarizing_kraus(double p);
/// Amplitude damping then dephasing for a gate of duration t_ns.
std::vector<std::vector<Eigen::Matrix2cd>> thermal_relaxation_kraus(const QubitCalibration &cal, double t_ns);

/// Ideal unitary followed by thermal relaxation on each touched qubit and the
/// gate's depolarizing channel.
void apply_noisy_gate(DensityMatrix &rho, const Gate &g, const NoiseModel &model);
void apply_noisy_gates(DensityMatrix &rho, const std::vector<Gate> &gates, const NoiseModel &model);

/// Symmetric readout confusion applied to exact probabilities, then sampled.
ShotCounts noisy_readout(const DensityMatrix &rho, int q, const NoiseModel &model, int64_t shots, uint64_t seed);
/// Register-wide outcome distribution with per-qubit readout confusion.
Eigen::VectorXd noisy_distribution(const DensityMatrix &rho, const NoiseModel &model);

}  // namespace vqdyn

#endif
