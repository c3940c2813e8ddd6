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

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vqdyn/errors.h"
#include "vqdyn/model.h"

namespace vqdyn {

namespace {

double integrate(const std::function<double(double)> &g, double a, double b, double tol) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0;
    // Relative target well below tol; the absolute estimate is what gets checked.
    double v = gauss_kronrod<double, 61>::integrate(g, a, b, 20, 1e-14, &err);
    if (!std::isfinite(v) || err > tol) {
        throw NumericalError("Fourier quadrature did not converge (error estimate " + std::to_string(err) + ")");
    }
    return v;
}

}  // namespace

double FourierSeries::operator()(double t) const {
    const double pi = boost::math::constants::pi<double>();
    double s = a0;
    for (size_t k = 0; k < an.size(); k++) {
        double w = (double)(k + 1) * pi * t / L;
        s += an[k] * std::cos(w) + bn[k] * std::sin(w);
    }
    return s;
}

FourierSeries fourier_expand(const std::function<double(double)> &f, double L, int n_max, double tol) {
    if (!(L > 0)) {
        throw ConfigError("Fourier half-interval L must be > 0");
    }
    if (n_max < 0) {
        throw ConfigError("Fourier order must be >= 0");
    }
    const double pi = boost::math::constants::pi<double>();
    FourierSeries s;
    s.L = L;
    s.a0 = integrate(f, -L, L, tol * 2 * L) / (2 * L);
    for (int k = 1; k <= n_max; k++) {
        double w = k * pi / L;
        s.an.push_back(integrate([&](double t) { return f(t) * std::cos(w * t); }, -L, L, tol * L) / L);
        s.bn.push_back(integrate([&](double t) { return f(t) * std::sin(w * t); }, -L, L, tol * L) / L);
    }
    return s;
}

std::function<double(double)> centred_pulse(const LaserPulse &pulse) {
    return [pulse](double t) {
        double u = t / pulse.tau;
        return pulse.E0 * std::exp(-u * u) * std::cos(pulse.omega * t);
    };
}

}  // namespace vqdyn
