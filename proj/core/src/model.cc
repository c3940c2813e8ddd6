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

#include "vqdyn/model.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "vqdyn/data_dir.h"
#include "vqdyn/errors.h"

namespace vqdyn {

namespace {

constexpr const char *kLetters = "spdfghiklmnoqrtuv";

BasisSet from_labels(const std::vector<const char *> &labels) {
    BasisSet b;
    for (const char *s : labels) {
        Orbital o;
        o.n = s[0] - '0';
        o.l = (int)(std::string(kLetters).find(s[1]));
        b.orbitals.push_back(o);
    }
    return b;
}

}  // namespace

std::string Orbital::label() const {
    std::string r = std::to_string(n);
    if (l >= 0 && l < (int)std::string(kLetters).size()) {
        r.push_back(kLetters[l]);
    } else {
        r += "(l=" + std::to_string(l) + ")";
    }
    return r;
}

void Orbital::validate() const {
    if (n < 1 || l < 0 || l >= n) {
        throw ConfigError("invalid orbital n=" + std::to_string(n) + " l=" + std::to_string(l));
    }
    if (m != 0) {
        throw ConfigError("orbital " + label() + " has m=" + std::to_string(m) + "; only m=0 is supported");
    }
}

void BasisSet::validate() const {
    if (orbitals.empty()) {
        throw ConfigError("empty basis set");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto &o : orbitals) {
        o.validate();
        if (!seen.insert({o.n, o.l}).second) {
            throw ConfigError("orbital " + o.label() + " listed twice");
        }
    }
}

std::vector<std::string> preset_names() {
    return {"h2", "h4", "h8", "h16"};
}

BasisSet preset_basis(const std::string &name) {
    auto file = find_data_file("presets/" + name + ".txt");
    if (!file.empty()) {
        return load_basis_file(file.string());
    }
    if (name == "h2") {
        return from_labels({"1s", "2p"});
    }
    if (name == "h4") {
        return from_labels({"1s", "2p", "3s", "3d"});
    }
    if (name == "h8") {
        return from_labels({"1s", "2s", "2p", "3s", "3p", "3d", "4s", "4p"});
    }
    if (name == "h16") {
        return from_labels(
            {"1s", "2s", "2p", "3s", "3p", "3d", "4s", "4p", "4d", "4f", "5s", "5p", "5d", "5f", "5g", "6s"});
    }
    std::string valid;
    for (const auto &p : preset_names()) {
        valid += (valid.empty() ? "" : ", ") + p;
    }
    throw ConfigError("unknown preset '" + name + "' (valid presets: " + valid + ")");
}

BasisSet parse_basis(std::istream &in) {
    BasisSet b;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ss(line);
        Orbital o;
        if (!(ss >> o.n)) {
            continue;
        }
        std::string rest;
        if (!(ss >> o.l) || (ss >> rest)) {
            throw ConfigError("basis line " + std::to_string(line_no) + ": expected 'n l'");
        }
        b.orbitals.push_back(o);
    }
    b.validate();
    return b;
}

BasisSet load_basis_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open basis file " + path);
    }
    return parse_basis(in);
}

void LaserPulse::validate() const {
    if (!(E0 >= 0)) {
        throw ConfigError("pulse amplitude E0 must be >= 0");
    }
    if (!(tau > 0)) {
        throw ConfigError("pulse width tau must be > 0");
    }
}

const char *to_string(Representation rep) {
    return rep == Representation::SR ? "sr" : "ir";
}

Representation parse_representation(const std::string &text) {
    if (text == "sr" || text == "SR") {
        return Representation::SR;
    }
    if (text == "ir" || text == "IR") {
        return Representation::IR;
    }
    throw ConfigError("unknown representation '" + text + "' (expected sr or ir)");
}

double orbital_energy(const Orbital &orb) {
    return -0.5 / ((double)orb.n * orb.n);
}

double dipole_element(const Orbital &a, const Orbital &b) {
    return dipole_exact(a, b).value();
}

double field_at(const LaserPulse &pulse, double t) {
    double u = (t - pulse.t0) / pulse.tau;
    return pulse.E0 * std::exp(-u * u) * std::cos(pulse.omega * t);
}

AtomModel::AtomModel(BasisSet basis, CouplingSign sign) : basis_(std::move(basis)) {
    basis_.validate();
    size_t n = basis_.size();
    energies_.resize(n);
    couplings_ = Eigen::MatrixXd::Zero(n, n);
    for (size_t i = 0; i < n; i++) {
        energies_[i] = orbital_energy(basis_[i]);
        for (size_t j = i + 1; j < n; j++) {
            double z = dipole_element(basis_[i], basis_[j]);
            if (sign == CouplingSign::Magnitude) {
                z = std::abs(z);
            }
            couplings_(i, j) = z;
            couplings_(j, i) = z;
        }
    }
}

Eigen::MatrixXcd AtomModel::matrix_at(const LaserPulse &pulse, double t, Representation rep) const {
    size_t n = size();
    double f = field_at(pulse, t);
    Eigen::MatrixXcd h(n, n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            if (rep == Representation::SR) {
                h(i, j) = f * couplings_(i, j);
            } else {
                double phase = (energies_[i] - energies_[j]) * t;
                h(i, j) = f * couplings_(i, j) * cplx(std::cos(phase), std::sin(phase));
            }
        }
        h(i, i) = rep == Representation::SR ? cplx(energies_[i]) : cplx(0);
    }
    return h;
}

HamiltonianMatrix AtomModel::hamiltonian_at(const LaserPulse &pulse, double t, Representation rep) const {
    return HamiltonianMatrix{matrix_at(pulse, t, rep), t, rep};
}

HamiltonianMatrix hamiltonian_at(
    const BasisSet &basis, const LaserPulse &pulse, double t, Representation rep, CouplingSign sign) {
    return AtomModel(basis, sign).hamiltonian_at(pulse, t, rep);
}

}  // namespace vqdyn
