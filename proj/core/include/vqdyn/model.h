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

#ifndef VQDYN_MODEL_H
#define VQDYN_MODEL_H

#include <complex>
#include <functional>
#include <istream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace vqdyn {

using cplx = std::complex<double>;

/// A hydrogen bound state |n l m> with m fixed to 0.
struct Orbital {
    int n = 1;
    int l = 0;
    int m = 0;

    bool operator==(const Orbital &other) const = default;
    /// Spectroscopic label such as "3d".
    std::string label() const;
    /// Throws ConfigError unless 0 <= l < n and m == 0.
    void validate() const;
};

/// Ordered hydrogen basis. Index 0 is the ground state.
struct BasisSet {
    std::vector<Orbital> orbitals;

    size_t size() const {
        return orbitals.size();
    }
    const Orbital &operator[](size_t k) const {
        return orbitals[k];
    }
    /// Throws ConfigError on invalid or repeated orbitals.
    void validate() const;
};

/// Names accepted by preset_basis.
std::vector<std::string> preset_names();
/// Built-in h2/h4/h8/h16 sets. A file presets/<name>.txt under the data
/// directory takes precedence when present.
BasisSet preset_basis(const std::string &name);
/// Parses "n l" pairs, one per line. '#' starts a comment.
BasisSet parse_basis(std::istream &in);
BasisSet load_basis_file(const std::string &path);

/// Gaussian-enveloped carrier F(t) = E0 exp(-((t - t0) / tau)^2) cos(omega t).
struct LaserPulse {
    double E0 = 0.25;
    double tau = 20.5;
    double t0 = 50.0;
    double omega = 0.06;

    void validate() const;
};

enum class Representation { SR, IR };
const char *to_string(Representation rep);
Representation parse_representation(const std::string &text);

/// How dipole signs enter the Hamiltonian couplings.
enum class CouplingSign {
    Magnitude,  ///< |z_ij|; reproduces the tabulated reference probabilities.
    Signed,     ///< Physical sign of the radial integral.
};

/// c * sqrt(radicand) with c rational and radicand square free.
struct SurdValue {
    boost::multiprecision::cpp_rational coefficient;
    boost::multiprecision::cpp_int radicand = 1;

    double value() const;
    std::string str() const;
};

double orbital_energy(const Orbital &orb);

/// <a|z|b> in atomic units, exact. Zero unless |l_a - l_b| == 1.
SurdValue dipole_exact(const Orbital &a, const Orbital &b);
double dipole_element(const Orbital &a, const Orbital &b);

double field_at(const LaserPulse &pulse, double t);

struct HamiltonianMatrix {
    Eigen::MatrixXcd entries;
    double time = 0;
    Representation representation = Representation::SR;
};

/// Precomputed energies and couplings for a basis.
class AtomModel {
   public:
    explicit AtomModel(BasisSet basis, CouplingSign sign = CouplingSign::Magnitude);

    const BasisSet &basis() const {
        return basis_;
    }
    size_t size() const {
        return basis_.size();
    }
    const Eigen::VectorXd &energies() const {
        return energies_;
    }
    /// Coupling matrix z_ij (symmetric, zero diagonal).
    const Eigen::MatrixXd &couplings() const {
        return couplings_;
    }

    Eigen::MatrixXcd matrix_at(const LaserPulse &pulse, double t, Representation rep) const;
    HamiltonianMatrix hamiltonian_at(const LaserPulse &pulse, double t, Representation rep) const;

   private:
    BasisSet basis_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXd couplings_;
};

HamiltonianMatrix hamiltonian_at(
    const BasisSet &basis,
    const LaserPulse &pulse,
    double t,
    Representation rep,
    CouplingSign sign = CouplingSign::Magnitude);

struct FourierSeries {
    double L = 0;
    double a0 = 0;
    std::vector<double> an;  ///< an[0] is A_1.
    std::vector<double> bn;  ///< bn[0] is B_1.

    /// Partial sum at t.
    double operator()(double t) const;
};

/// A0 = 1/(2L) int f, A_n = 1/L int f cos(n pi t/L), B_n = 1/L int f sin(n pi t/L),
/// all over [-L, L] by adaptive Gauss-Kronrod to absolute tolerance `tol`.
FourierSeries fourier_expand(const std::function<double(double)> &f, double L, int n_max, double tol = 1e-9);

/// The pulse with its envelope centred on t = 0, as used for the series expansion.
std::function<double(double)> centred_pulse(const LaserPulse &pulse);

}  // namespace vqdyn

#endif
