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


// Independent oracles and transcribed reference values shared by the unit
// tests and the acceptance report.

#ifndef VQDYN_TESTS_REFERENCE_DATA_H
#define VQDYN_TESTS_REFERENCE_DATA_H

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vqdyn/model.h"

namespace vqdyn::reference {

inline double gen_laguerre(int k, double alpha, double x) {
    if (k == 0) {
        return 1;
    }
    double prev = 1;
    double cur = 1 + alpha - x;
    for (int j = 1; j < k; j++) {
        double next = ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

inline double factorial(int n) {
    return std::tgamma(n + 1.0);
}

/// Radial function without its exponential factor.
inline double radial_poly(int n, int l, double r) {
    double norm = std::sqrt(std::pow(2.0 / n, 3) * factorial(n - l - 1) / (2.0 * n * factorial(n + l)));
    double x = 2 * r / n;
    return norm * std::pow(x, l) * gen_laguerre(n - l - 1, 2 * l + 1, x);
}

/// Gauss-Laguerre nodes and weights from the Jacobi matrix (Golub-Welsch).
inline void gauss_laguerre(int m, std::vector<double> &x, std::vector<double> &w) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; k++) {
        j(k, k) = 2 * k + 1;
        if (k + 1 < m) {
            j(k, k + 1) = j(k + 1, k) = k + 1;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    x.resize(m);
    w.resize(m);
    for (int k = 0; k < m; k++) {
        x[k] = es.eigenvalues()[k];
        double v = es.eigenvectors()(0, k);
        w[k] = v * v;
    }
}

inline double dipole_oracle(const Orbital &a, const Orbital &b) {
    if (std::abs(a.l - b.l) != 1) {
        return 0;
    }
    static std::vector<double> x, w;
    if (x.empty()) {
        gauss_laguerre(40, x, w);
    }
    double beta = 1.0 / a.n + 1.0 / b.n;
    double radial = 0;
    for (size_t i = 0; i < x.size(); i++) {
        double r = x[i] / beta;
        radial += w[i] * radial_poly(a.n, a.l, r) * radial_poly(b.n, b.l, r) * r * r * r;
    }
    radial /= beta;
    int l = std::min(a.l, b.l);
    double angular = (l + 1) / std::sqrt((2.0 * l + 1) * (2.0 * l + 3));
    return radial * angular;
}

// Transcribed coefficient table for the centred half-cycle pulse, L = 100.
inline constexpr double kTableA[] = {0.0311156, 0.0605599, 0.0546881, 0.0438827, 0.0300882,
                                     0.0171955, 0.0080835, 0.0031056, 0.0009722};

/// Tabulated final probabilities, (N, omega) -> P(T) in basis order.
inline const std::map<std::pair<int, double>, std::vector<double>> &tabulated() {
    static const std::map<std::pair<int, double>, std::vector<double>> t = {
        {{2, 0.06}, {0.99955483, 0.00044517}},
        {{4, 0.06}, {0.96819325, 0.01571505, 0.00074915, 0.01534255}},
        {{8, 0.06},
         {0.46528127, 0.19188919, 0.23518301, 0.06336444, 0.02816392, 0.01412010, 0.00008123, 0.00191683}},
        {{16, 0.06}, {0.47167423, 0.17376639, 0.21398703, 0.06559239, 0.04349100, 0.01784057, 0.00359375, 0.00130138,
                      0.00103995, 0.00203183, 0.00195571, 0.00115603, 0.00043734, 0.00174622, 0.00025562, 0.00013056}},
        {{4, 0.222}, {0.15894029, 0.14928599, 0.03220548, 0.65956825}},
        {{8, 0.222},
         {0.07001227, 0.24131801, 0.24968068, 0.25150509, 0.06442210, 0.10446710, 0.00575194, 0.01284282}},
        {{16, 0.222}, {0.07461280, 0.25160038, 0.27168428, 0.22341135, 0.04831312, 0.06802595, 0.01118176, 0.01117909,
                       0.00285904, 0.00066586, 0.00917148, 0.00066253, 0.01077185, 0.00012968, 0.01563733,
                       0.00009350}},
    };
    return t;
}

}  // namespace vqdyn::reference

#endif
