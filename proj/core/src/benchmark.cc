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

#include "vqdyn/benchmark.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "vqdyn/errors.h"

namespace vqdyn {

namespace odeint = boost::numeric::odeint;

namespace {

using cplx = std::complex<double>;
using State = std::vector<cplx>;

template <class System>
AmplitudeSeries run(System sys, State c, double t0, double t1, const TdseOptions &opts) {
    if (!(opts.atol > 0) || !(opts.rtol > 0)) {
        throw ConfigError("integrator tolerances must be positive");
    }
    if (!(t1 > t0)) {
        throw ConfigError("integration interval must have positive length");
    }
    std::vector<double> times{t0};
    for (double s : opts.sample_times) {
        if (s < t0 || s > t1) {
            throw ConfigError("sample time outside the integration interval");
        }
        times.push_back(s);
    }
    times.push_back(t1);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    AmplitudeSeries out;
    double last_t = t0;
    auto observer = [&](const State &x, double t) {
        out.t.push_back(t);
        out.c.push_back(Eigen::Map<const Eigen::VectorXcd>(x.data(), (Eigen::Index)x.size()));
        last_t = t;
    };
    double dt0 = std::min(1e-3, (t1 - t0) / 10);
    // Bounds the number of trial steps between observations, which turns a
    // collapsing step size into an error instead of a hang.
    odeint::max_step_checker checker(2000000);
    try {
        if (opts.stepper == Stepper::RKF78) {
            auto stepper = odeint::make_controlled(opts.atol, opts.rtol, odeint::runge_kutta_fehlberg78<State>());
            out.steps =
                odeint::integrate_times(stepper, sys, c, times.begin(), times.end(), dt0, observer, checker);
        } else {
            auto stepper = odeint::make_controlled(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<State>());
            out.steps =
                odeint::integrate_times(stepper, sys, c, times.begin(), times.end(), dt0, observer, checker);
        }
    } catch (const odeint::odeint_error &e) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", last_t);
        throw NumericalError(std::string("TDSE integration failed after t = ") + buf + ": " + e.what());
    }
    for (const auto &v : out.c) {
        if (!v.allFinite()) {
            throw NumericalError("TDSE integration produced non-finite amplitudes");
        }
    }
    out.final_state = out.c.back();
    return out;
}

State initial_state(const TdseOptions &opts, size_t n) {
    State c(n, 0.0);
    if (opts.c0.size() == 0) {
        c[0] = 1;
        return c;
    }
    if ((size_t)opts.c0.size() != n) {
        throw ConfigError("initial amplitude vector has the wrong length");
    }
    for (size_t i = 0; i < n; i++) {
        c[i] = opts.c0[(Eigen::Index)i];
    }
    return c;
}

}  // namespace

AmplitudeSeries integrate_tdse(
    const AtomModel &model, const LaserPulse &pulse, double t_end, const TdseOptions &opts) {
    const size_t n = model.size();
    const Eigen::VectorXd e = model.energies();
    const Eigen::MatrixXd z = model.couplings();
    const bool ir = opts.representation == Representation::IR;
    Eigen::VectorXcd y(n), w(n);
    auto sys = [&](const State &c, State &dc, double t) {
        Eigen::Map<const Eigen::VectorXcd> cv(c.data(), (Eigen::Index)n);
        Eigen::Map<Eigen::VectorXcd> dv(dc.data(), (Eigen::Index)n);
        double f = field_at(pulse, t);
        if (ir) {
            // h~ c = e^{iEt} F z e^{-iEt} c
            for (size_t i = 0; i < n; i++) {
                y[i] = cplx(std::cos(e[i] * t), -std::sin(e[i] * t)) * cv[i];
            }
            w.noalias() = z * y;
            for (size_t i = 0; i < n; i++) {
                dv[i] = cplx(0, -f) * cplx(std::cos(e[i] * t), std::sin(e[i] * t)) * w[i];
            }
        } else {
            w.noalias() = z * cv;
            dv = cplx(0, -1) * (e.cast<cplx>().cwiseProduct(cv) + f * w);
        }
    };
    State c = initial_state(opts, n);
    double norm0 = 0;
    for (const cplx &v : c) {
        norm0 += std::norm(v);
    }
    AmplitudeSeries s = run(sys, std::move(c), 0.0, t_end, opts);
    if (std::abs(s.final_state.squaredNorm() - norm0) > 1e-6) {
        throw NumericalError("TDSE integration lost norm conservation");
    }
    return s;
}

Eigen::VectorXcd propagate(
    const HamiltonianFn &h, const Eigen::VectorXcd &c0, double t0, double t1, const TdseOptions &opts) {
    size_t n = (size_t)c0.size();
    auto sys = [&](const State &c, State &dc, double t) {
        Eigen::Map<const Eigen::VectorXcd> cv(c.data(), (Eigen::Index)n);
        Eigen::Map<Eigen::VectorXcd> dv(dc.data(), (Eigen::Index)n);
        Eigen::MatrixXcd m = h(t);
        dv = cplx(0, -1) * (m * cv);
    };
    State c(c0.data(), c0.data() + n);
    TdseOptions o = opts;
    o.sample_times.clear();
    return run(sys, c, t0, t1, o).final_state;
}

Eigen::VectorXd benchmark_probabilities(
    const AtomModel &model, const LaserPulse &pulse, double t_end, Representation rep) {
    TdseOptions o;
    o.atol = kReferenceTolerances.atol;
    o.rtol = kReferenceTolerances.rtol;
    o.representation = rep;
    return integrate_tdse(model, pulse, t_end, o).final_state.cwiseAbs2();
}

DeviationReport deviation(const Eigen::VectorXd &p, const Eigen::VectorXd &p_ref) {
    if (p.size() != p_ref.size() || p.size() == 0) {
        throw ConfigError("deviation: probability vectors must have equal, nonzero length");
    }
    for (Eigen::Index k = 0; k < p_ref.size(); k++) {
        if (!(p_ref[k] > 0)) {
            throw ConfigError("deviation: benchmark entry " + std::to_string(k) + " is not positive");
        }
    }
    DeviationReport r;
    r.p = p;
    r.p_ref = p_ref;
    r.percent = ((p - p_ref).array() / p_ref.array() * 100).matrix();
    Eigen::ArrayXd a = r.percent.array().abs();
    r.max_abs = a.maxCoeff();
    r.min_abs = a.minCoeff();
    r.mean_abs = a.mean();
    return r;
}

void write_golden(const GoldenTable &g, const std::string &path) {
    std::ofstream f(path);
    if (!f) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    f << "state,P_final\n";
    for (size_t k = 0; k < g.labels.size(); k++) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12e", g.p[(Eigen::Index)k]);
        f << g.labels[k] << ',' << buf << '\n';
    }
}

GoldenTable read_golden(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot open golden file '" + path + "'");
    }
    std::string line;
    if (!std::getline(f, line) || line.rfind("state,P_final", 0) != 0) {
        throw ConfigError("'" + path + "' is not a golden file (expected header state,P_final)");
    }
    GoldenTable g;
    std::vector<double> p;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("malformed golden row '" + line + "' in " + path);
        }
        g.labels.push_back(line.substr(0, comma));
        try {
            p.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception &) {
            throw ConfigError("malformed golden row '" + line + "' in " + path);
        }
    }
    g.p = Eigen::Map<Eigen::VectorXd>(p.data(), (Eigen::Index)p.size());
    return g;
}

std::string golden_name(size_t num_states, double omega) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "benchmarks/h%zu_omega%g.csv", num_states, omega);
    return buf;
}

}  // namespace vqdyn
