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

#include "vqdyn/noise.h"

#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>

#include "vqdyn/errors.h"

namespace vqdyn {

namespace {

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        size_t a = cell.find_first_not_of(" \t\r");
        size_t b = cell.find_last_not_of(" \t\r");
        out.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
    }
    return out;
}

bool looks_numeric(const std::string &s) {
    if (s.empty()) {
        return false;
    }
    char *end = nullptr;
    std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

double to_double(const std::string &s, int line_no) {
    if (!looks_numeric(s)) {
        throw ConfigError("calibration line " + std::to_string(line_no) + ": '" + s + "' is not a number");
    }
    return std::strtod(s.c_str(), nullptr);
}

void check_probability(double p, const std::string &what, int line_no) {
    if (!(p >= 0 && p <= 1)) {
        throw ConfigError("calibration line " + std::to_string(line_no) + ": " + what + " outside [0, 1]");
    }
}

int cnot_equivalents(const Gate &g) {
    if (g.controls.size() == 1) {
        return g.is_rotation() || g.kind == GateKind::H ? 2 : 1;
    }
    // Per control-target pair for doubly controlled gates.
    return g.is_rotation() || g.kind == GateKind::H ? 4 : 2;
}

}  // namespace

int NoiseModel::physical(int q) const {
    if (layout.empty()) {
        return q;
    }
    if (q < 0 || q >= (int)layout.size()) {
        throw ConfigError("noise layout does not cover circuit qubit " + std::to_string(q));
    }
    return layout[q];
}

const QubitCalibration &NoiseModel::qubit(int physical_q) const {
    auto it = qubits.find(physical_q);
    if (it == qubits.end()) {
        throw ConfigError("noise model has no calibration for qubit " + std::to_string(physical_q));
    }
    return it->second;
}

const CouplerCalibration *NoiseModel::find_pair(int a, int b) const {
    auto it = pairs.find({a, b});
    if (it != pairs.end()) {
        return &it->second;
    }
    it = pairs.find({b, a});
    return it == pairs.end() ? nullptr : &it->second;
}

std::pair<double, double> NoiseModel::cnot_cost(int a, int b) const {
    int pa = physical(a), pb = physical(b);
    if (const auto *c = find_pair(pa, pb)) {
        return {c->gate_error, c->time_ns};
    }
    if (!allow_routed_pairs) {
        throw ConfigError(
            "noise model has no coupler between qubits " + std::to_string(pa) + " and " + std::to_string(pb));
    }
    // Shortest path over the coupling graph; intermediate hops are swapped in and out.
    std::map<int, int> prev;
    std::deque<int> queue{pa};
    prev[pa] = pa;
    while (!queue.empty() && !prev.count(pb)) {
        int u = queue.front();
        queue.pop_front();
        for (const auto &[key, cal] : pairs) {
            int v = key.first == u ? key.second : key.second == u ? key.first : -1;
            if (v >= 0 && !prev.count(v)) {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    if (!prev.count(pb)) {
        throw ConfigError("qubits " + std::to_string(pa) + " and " + std::to_string(pb) + " are not connected");
    }
    std::vector<std::pair<int, int>> path;
    for (int v = pb; v != pa; v = prev[v]) {
        path.push_back({prev[v], v});
    }
    double keep = 1, time = 0;
    for (size_t k = 0; k < path.size(); k++) {
        const auto *c = find_pair(path[k].first, path[k].second);
        int uses = k == 0 ? 1 : 6;
        keep *= std::pow(1 - c->gate_error, uses);
        time += uses * c->time_ns;
    }
    return {1 - keep, time};
}

NoiseModel NoiseModel::ideal(int num_qubits) {
    NoiseModel m;
    double inf = std::numeric_limits<double>::infinity();
    for (int q = 0; q < num_qubits; q++) {
        m.qubits[q] = QubitCalibration{0, 0, inf, inf};
        for (int r = 0; r < num_qubits; r++) {
            if (r != q) {
                m.pairs[{q, r}] = CouplerCalibration{q, r, 0, 0};
            }
        }
    }
    m.single_qubit_gate_time_ns = 0;
    return m;
}

NoiseModel parse_calibration(std::istream &in) {
    NoiseModel m;
    enum { kNone, kQubits, kPairs } section = kNone;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        auto cells = split_csv(line);
        if (cells.empty() || (cells.size() == 1 && cells[0].empty())) {
            continue;
        }
        if (cells[0] == "[qubits]") {
            section = kQubits;
            continue;
        }
        if (cells[0] == "[pairs]") {
            section = kPairs;
            continue;
        }
        if (!looks_numeric(cells[0])) {
            continue;  // column header
        }
        if (section == kQubits) {
            if (cells.size() != 5) {
                throw ConfigError("calibration line " + std::to_string(line_no) + ": expected 5 qubit fields");
            }
            int id = (int)to_double(cells[0], line_no);
            QubitCalibration c{to_double(cells[1], line_no), to_double(cells[2], line_no),
                               to_double(cells[3], line_no), to_double(cells[4], line_no)};
            check_probability(c.gate_error, "gate error", line_no);
            check_probability(c.readout_error, "readout error", line_no);
            if (!(c.t1_us > 0) || !(c.t2_us > 0)) {
                throw ConfigError("calibration line " + std::to_string(line_no) + ": T1 and T2 must be positive");
            }
            if (c.t2_us > 2 * c.t1_us) {
                throw ConfigError("calibration line " + std::to_string(line_no) + ": T2 exceeds 2 T1");
            }
            m.qubits[id] = c;
        } else if (section == kPairs) {
            if (cells.size() != 4) {
                throw ConfigError("calibration line " + std::to_string(line_no) + ": expected 4 pair fields");
            }
            CouplerCalibration c{(int)to_double(cells[0], line_no), (int)to_double(cells[1], line_no),
                                 to_double(cells[2], line_no), to_double(cells[3], line_no)};
            check_probability(c.gate_error, "pair gate error", line_no);
            if (!(c.time_ns > 0)) {
                throw ConfigError("calibration line " + std::to_string(line_no) + ": gate time must be positive");
            }
            m.pairs[{c.control, c.target}] = c;
        } else {
            throw ConfigError("calibration line " + std::to_string(line_no) + ": data outside a section");
        }
    }
    if (m.qubits.empty()) {
        throw ConfigError("calibration file has no [qubits] data");
    }
    for (const auto &[key, c] : m.pairs) {
        if (!m.qubits.count(key.first) || !m.qubits.count(key.second)) {
            throw ConfigError("calibration pair references an unlisted qubit");
        }
    }
    return m;
}

NoiseModel load_calibration(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open calibration file " + path);
    }
    return parse_calibration(in);
}

std::vector<Eigen::Matrix2cd> amplitude_damping_kraus(double gamma) {
    Eigen::Matrix2cd k0, k1;
    k0 << 1, 0, 0, std::sqrt(1 - gamma);
    k1 << 0, std::sqrt(gamma), 0, 0;
    return {k0, k1};
}

std::vector<Eigen::Matrix2cd> phase_damping_kraus(double p) {
    return {std::sqrt(1 - p / 2) * Eigen::Matrix2cd::Identity(), std::sqrt(p / 2) * gate_matrix(GateKind::Z)};
}

std::vector<Eigen::Matrix2cd> depolarizing_kraus(double p) {
    return {
        std::sqrt(1 - 0.75 * p) * Eigen::Matrix2cd::Identity(),
        std::sqrt(p / 4) * gate_matrix(GateKind::X),
        std::sqrt(p / 4) * gate_matrix(GateKind::Y),
        std::sqrt(p / 4) * gate_matrix(GateKind::Z),
    };
}

std::vector<std::vector<Eigen::Matrix2cd>> thermal_relaxation_kraus(const QubitCalibration &cal, double t_ns) {
    double t = t_ns * 1e-3;
    std::vector<std::vector<Eigen::Matrix2cd>> r;
    if (t <= 0) {
        return r;
    }
    if (std::isfinite(cal.t1_us)) {
        r.push_back(amplitude_damping_kraus(1 - std::exp(-t / cal.t1_us)));
    }
    if (std::isfinite(cal.t2_us)) {
        double rate = 1 / cal.t2_us - (std::isfinite(cal.t1_us) ? 0.5 / cal.t1_us : 0.0);
        if (rate > 0) {
            r.push_back(phase_damping_kraus(1 - std::exp(-t * rate)));
        }
    }
    return r;
}

void apply_noisy_gate(DensityMatrix &rho, const Gate &g, const NoiseModel &model) {
    rho.apply(g);
    auto relax = [&](int q, double t_ns) {
        for (const auto &k : thermal_relaxation_kraus(model.qubit(model.physical(q)), t_ns)) {
            rho.apply_kraus(q, k);
        }
    };
    if (g.controls.empty()) {
        relax(g.target, model.single_qubit_gate_time_ns);
        double p = model.qubit(model.physical(g.target)).gate_error;
        if (p > 0) {
            rho.apply_kraus(g.target, depolarizing_kraus(p));
        }
        return;
    }
    if (g.controls.size() > 2) {
        throw ConfigError("noise model supports at most two controls per gate");
    }
    int uses = cnot_equivalents(g);
    std::vector<std::pair<int, int>> links;
    for (int c : g.controls) {
        links.push_back({c, g.target});
    }
    if (g.controls.size() == 2) {
        links.push_back({g.controls[0], g.controls[1]});
    }
    double duration = 0;
    std::vector<double> errors;
    for (const auto &[a, b] : links) {
        auto [p, t] = model.cnot_cost(a, b);
        errors.push_back(1 - std::pow(1 - p, uses));
        duration += uses * t;
    }
    for (int q : g.qubits()) {
        relax(q, duration);
    }
    for (size_t k = 0; k < links.size(); k++) {
        rho.apply_two_qubit_depolarizing(links[k].first, links[k].second, errors[k]);
    }
}

void apply_noisy_gates(DensityMatrix &rho, const std::vector<Gate> &gates, const NoiseModel &model) {
    for (const auto &g : gates) {
        apply_noisy_gate(rho, g, model);
    }
}

ShotCounts noisy_readout(const DensityMatrix &rho, int q, const NoiseModel &model, int64_t shots, uint64_t seed) {
    double eps = model.qubit(model.physical(q)).readout_error;
    double p0 = rho.prob0(q);
    return sample_binary((1 - eps) * p0 + eps * (1 - p0), shots, seed);
}

Eigen::VectorXd noisy_distribution(const DensityMatrix &rho, const NoiseModel &model) {
    Eigen::VectorXd p = rho.probabilities().cwiseMax(0.0);
    int w = rho.width();
    for (int q = 0; q < w; q++) {
        double eps = model.qubit(model.physical(q)).readout_error;
        uint64_t b = uint64_t{1} << (w - 1 - q);
        Eigen::VectorXd next = p;
        for (Eigen::Index x = 0; x < p.size(); x++) {
            next[x] = (1 - eps) * p[x] + eps * p[(uint64_t)x ^ b];
        }
        p = next;
    }
    return p;
}

}  // namespace vqdyn
