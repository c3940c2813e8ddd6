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

#include "vqdyn/ansatz.h"

#include <cmath>
#include <random>

#include "vqdyn/errors.h"

namespace vqdyn {

namespace {

const cplx kI(0, 1);

void add_param_gate(AnsatzSpec &spec, Gate g) {
    if ((int)spec.param_gate.size() <= g.param) {
        spec.param_gate.resize(g.param + 1);
    }
    spec.param_gate[g.param] = spec.gates.size();
    spec.gates.push_back(g);
}

void build_jwe(AnsatzSpec &spec) {
    int n = (int)spec.num_states;
    spec.num_qubits = n;
    spec.num_params = 2 * (n - 1);
    spec.gates.push_back(gate_x(0));
    add_param_gate(spec, gate_rx(1, 0, n - 2));
    spec.gates.push_back(gate_cnot(1, 0));
    add_param_gate(spec, gate_rz(1, 0, 2 * n - 3));
    for (int j = 1; j <= n - 2; j++) {
        add_param_gate(spec, gate_crx(j, j + 1, 0, n - 2 - j));
        spec.gates.push_back(gate_cnot(j + 1, j));
        add_param_gate(spec, gate_rz(j + 1, 0, 2 * n - 3 - j));
    }
    spec.phase_block_start = spec.gates.size();
}

int lowest_bit(uint64_t s) {
    return __builtin_ctzll(s);
}

void build_qee(AnsatzSpec &spec) {
    int nq = qee_qubits(spec.num_states);
    int padded = 1 << nq;
    spec.num_qubits = nq;
    spec.num_params = 2 * (padded - 1);
    if (nq == 1) {
        add_param_gate(spec, gate_ry(0, 0, 0));
        spec.phase_block_start = spec.gates.size();
        add_param_gate(spec, gate_rz(0, 0, 1));
        return;
    }
    if (nq == 2) {
        add_param_gate(spec, gate_ry(0, 0, 0));
        add_param_gate(spec, gate_ry(1, 0, 1));
        spec.gates.push_back(gate_cnot(0, 1));
        add_param_gate(spec, gate_ry(1, 0, 2));
        spec.phase_block_start = spec.gates.size();
        add_param_gate(spec, gate_rz(1, 0, 4));
        spec.gates.push_back(gate_cnot(0, 1));
        add_param_gate(spec, gate_rz(0, 0, 3));
        add_param_gate(spec, gate_rz(1, 0, 5));
        return;
    }
    int p = 0;
    // Amplitude block: a Gray-code RY multiplexor per qubit, last CNOT dropped.
    add_param_gate(spec, gate_ry(0, 0, p++));
    for (int k = 1; k < nq; k++) {
        add_param_gate(spec, gate_ry(k, 0, p++));
        for (uint64_t s = 1; s < (uint64_t{1} << k); s++) {
            spec.gates.push_back(gate_cnot(k - 1 - lowest_bit(s), k));
            add_param_gate(spec, gate_ry(k, 0, p++));
        }
    }
    spec.phase_block_start = spec.gates.size();
    // Phase block: every parity of qubit subsets gets one RZ.
    for (int k = 0; k < nq; k++) {
        add_param_gate(spec, gate_rz(k, 0, p++));
    }
    for (int k = nq - 1; k >= 1; k--) {
        for (uint64_t s = 1; s < (uint64_t{1} << k); s++) {
            spec.gates.push_back(gate_cnot(lowest_bit(s), k));
            add_param_gate(spec, gate_rz(k, 0, p++));
        }
    }
}

/// Amplitudes over the full register for QEE or the encoded set for JWE.
}  // namespace

Eigen::VectorXcd register_amplitudes(const AnsatzSpec &spec, const Eigen::VectorXd &theta) {
    if (spec.scheme == Encoding::JWE) {
        return jwe_closed_form(spec.num_states, theta);
    }
    return build_state(spec, theta).amplitudes();
}

Eigen::MatrixXcd register_jacobian(const AnsatzSpec &spec, const Eigen::VectorXd &theta) {
    if (spec.scheme == Encoding::JWE) {
        return jwe_closed_form_jacobian(spec.num_states, theta);
    }
    Eigen::MatrixXcd j(size_t{1} << spec.num_qubits, spec.num_params);
    for (int i = 0; i < spec.num_params; i++) {
        j.col(i) = derivative_state(spec, theta, i).combined().amplitudes();
    }
    return j;
}

namespace {

Eigen::VectorXcd register_target(const AnsatzSpec &spec, const Eigen::VectorXcd &target) {
    if (spec.scheme == Encoding::JWE) {
        return target;
    }
    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(size_t{1} << spec.num_qubits);
    for (size_t k = 0; k < spec.num_states; k++) {
        t[spec.map.state_to_index[k]] = target[k];
    }
    return t;
}

double register_error(const Eigen::VectorXcd &a, const Eigen::VectorXcd &t) {
    cplx ov = t.dot(a);
    cplx phase = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1);
    return (a - phase * t).cwiseAbs().maxCoeff();
}

Eigen::VectorXd jwe_cascade(const AnsatzSpec &spec, const Eigen::VectorXcd &t) {
    int n = (int)spec.num_states;
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(spec.num_params);
    double rem = 1;
    for (int k = 0; k <= n - 2; k++) {
        int x = n - 1 - k;  // one-based amplitude parameter
        double r = std::abs(t[k]);
        double angle = 0;
        if (rem > 1e-300) {
            angle = 2 * std::acos(std::clamp(r / rem, -1.0, 1.0));
        }
        theta[x - 1] = angle;
        rem *= std::sin(angle / 2);
    }
    std::vector<double> p(n, 0);
    std::vector<bool> defined(n, false);
    int first = -1;
    for (int k = 0; k < n; k++) {
        if (std::abs(t[k]) > 1e-14) {
            p[k] = std::arg(t[k]) - std::arg(std::pow(-kI, k));
            defined[k] = true;
            if (first < 0) {
                first = k;
            }
        }
    }
    if (first < 0) {
        return theta;
    }
    if (!defined[0]) {
        p[0] = p[first];
    }
    for (int k = 1; k < n; k++) {
        if (!defined[k]) {
            p[k] = p[k - 1];
        }
        double d = std::remainder(p[k] - p[k - 1], 2 * M_PI);
        theta[2 * n - 2 - k] = d;  // one-based 2N-1-k
    }
    return theta;
}

/// Sets the phase parameters of a QEE ansatz so the full-register amplitudes
/// match `t` up to a global phase, given already fixed amplitude parameters.
void solve_phases(const AnsatzSpec &spec, const Eigen::VectorXcd &t, Eigen::VectorXd &theta) {
    auto pm = probe_phase_block(spec);
    StateVector amp(spec.num_qubits);
    auto bound = spec.bind(theta);
    for (size_t g = 0; g < spec.phase_block_start; g++) {
        amp.apply(bound[g]);
    }
    std::vector<int> rows;
    for (size_t x = 0; x < amp.dim(); x++) {
        if (std::abs(amp[x]) > 1e-12 && std::abs(t[pm.perm[x]]) > 1e-12) {
            rows.push_back((int)x);
        }
    }
    if (rows.empty()) {
        return;
    }
    int np = (int)pm.params.size();
    Eigen::MatrixXd A(rows.size(), np + 1);
    Eigen::VectorXd b(rows.size());
    for (size_t r = 0; r < rows.size(); r++) {
        int x = rows[r];
        A.row(r).head(np) = pm.grad.row(x);
        A(r, np) = -1;
        double want = std::arg(t[pm.perm[x]]) - std::arg(amp[x]);
        if (r > 0) {
            // Keep right-hand sides close to the first row to avoid 2 pi jumps.
            want = b[0] + std::remainder(want - b[0], 2 * M_PI);
        }
        b[r] = want;
    }
    Eigen::VectorXd sol = A.completeOrthogonalDecomposition().solve(b);
    for (int k = 0; k < np; k++) {
        theta[pm.params[k]] = sol[k];
    }
}

Eigen::VectorXd qee_closed_form_guess(const AnsatzSpec &spec, const Eigen::VectorXcd &t) {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(spec.num_params);
    Eigen::VectorXd r = t.cwiseAbs();
    if (spec.num_qubits == 1) {
        theta[0] = 2 * std::atan2(r[1], r[0]);
    } else if (spec.num_qubits == 2) {
        double u = std::atan2(r[1], r[0]);
        double v = std::atan2(r[3], r[2]);
        theta[0] = 2 * std::atan2(std::hypot(r[2], r[3]), std::hypot(r[0], r[1]));
        theta[1] = u + v;
        theta[2] = u - v;
    } else {
        return theta;
    }
    solve_phases(spec, t, theta);
    return theta;
}

/// Damped least squares on (theta, global phase).
Eigen::VectorXd levenberg_marquardt(const AnsatzSpec &spec, const Eigen::VectorXcd &t, Eigen::VectorXd theta) {
    int L = spec.num_params;
    auto residual = [&](const Eigen::VectorXd &th, double beta) {
        Eigen::VectorXcd d = register_amplitudes(spec, th) - std::polar(1.0, beta) * t;
        Eigen::VectorXd r(2 * d.size());
        r << d.real(), d.imag();
        return r;
    };
    double beta = std::arg(t.dot(register_amplitudes(spec, theta)));
    Eigen::VectorXd r = residual(theta, beta);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    for (int iter = 0; iter < 400 && r.cwiseAbs().maxCoeff() > 1e-13; iter++) {
        Eigen::MatrixXcd jc = register_jacobian(spec, theta);
        Eigen::MatrixXcd full(jc.rows(), L + 1);
        full.leftCols(L) = jc;
        full.col(L) = -kI * std::polar(1.0, beta) * t;
        Eigen::MatrixXd J(2 * jc.rows(), L + 1);
        J << full.real(), full.imag();
        Eigen::MatrixXd JtJ = J.transpose() * J;
        Eigen::VectorXd g = J.transpose() * r;
        bool improved = false;
        for (int tries = 0; tries < 20; tries++) {
            Eigen::MatrixXd A = JtJ;
            A.diagonal().array() += lambda * (1 + JtJ.diagonal().array());
            Eigen::VectorXd step = A.ldlt().solve(-g);
            Eigen::VectorXd th2 = theta + step.head(L);
            double b2 = beta + step[L];
            Eigen::VectorXd r2 = residual(th2, b2);
            double c2 = r2.squaredNorm();
            if (c2 < cost) {
                theta = th2;
                beta = b2;
                r = r2;
                cost = c2;
                lambda = std::max(lambda * 0.3, 1e-15);
                improved = true;
                break;
            }
            lambda *= 10;
        }
        if (!improved) {
            break;
        }
    }
    return theta;
}

}  // namespace

GateCensus AnsatzSpec::census() const {
    GateCensus c;
    for (const auto &g : gates) {
        if (g.controls.empty()) {
            switch (g.kind) {
                case GateKind::X:
                    c.x++;
                    break;
                case GateKind::RX:
                    c.rx++;
                    break;
                case GateKind::RY:
                    c.ry++;
                    break;
                case GateKind::RZ:
                    c.rz++;
                    break;
                default:
                    break;
            }
        } else if (g.kind == GateKind::X) {
            c.cnot++;
        } else if (g.kind == GateKind::RX) {
            c.crx++;
        }
        c.total++;
    }
    return c;
}

std::vector<Gate> AnsatzSpec::bind(const Eigen::VectorXd &theta) const {
    if (theta.size() != num_params) {
        throw ConfigError(
            "parameter vector has length " + std::to_string(theta.size()) + ", expected " +
            std::to_string(num_params));
    }
    std::vector<Gate> r = gates;
    for (auto &g : r) {
        if (g.param >= 0) {
            g.angle = theta[g.param];
        }
    }
    return r;
}

bool AnsatzSpec::is_phase_param(int i) const {
    const Gate &g = gates[param_gate[i]];
    return g.kind == GateKind::RZ;
}

AnsatzSpec make_ansatz(Encoding scheme, size_t num_states) {
    if (num_states < 2) {
        throw ConfigError("ansatz needs at least 2 states");
    }
    if (scheme == Encoding::JWE && num_states > 24) {
        throw ConfigError("unary ansatz limited to 24 states");
    }
    AnsatzSpec spec;
    spec.scheme = scheme;
    spec.num_states = num_states;
    spec.map = config_map(scheme, num_states);
    if (scheme == Encoding::JWE) {
        build_jwe(spec);
    } else {
        build_qee(spec);
    }
    return spec;
}

StateVector build_state(const AnsatzSpec &spec, const Eigen::VectorXd &theta) {
    StateVector s(spec.num_qubits);
    s.apply(spec.bind(theta));
    return s;
}

Eigen::VectorXcd encoded_amplitudes(const AnsatzSpec &spec, const StateVector &s) {
    Eigen::VectorXcd a(spec.num_states);
    for (size_t k = 0; k < spec.num_states; k++) {
        a[k] = s[spec.map.state_to_index[k]];
    }
    return a;
}

Eigen::VectorXcd encoded_amplitudes(const AnsatzSpec &spec, const Eigen::VectorXd &theta) {
    if (spec.scheme == Encoding::JWE) {
        return jwe_closed_form(spec.num_states, theta);
    }
    return encoded_amplitudes(spec, build_state(spec, theta));
}

Eigen::VectorXcd jwe_closed_form(size_t num_states, const Eigen::VectorXd &theta) {
    int n = (int)num_states;
    if (theta.size() != 2 * (n - 1)) {
        throw ConfigError("parameter vector length mismatch");
    }
    // One-based th(x), th(0) = 0.
    auto th = [&](int x) { return x == 0 ? 0.0 : theta[x - 1]; };
    Eigen::VectorXcd a(n);
    for (int k = 0; k < n; k++) {
        double phase = 0;
        for (int x = n; x <= 2 * n - 2 - k; x++) {
            phase -= th(x);
        }
        for (int x = 2 * n - 1 - k; x <= 2 * n - 2; x++) {
            phase += th(x);
        }
        double mag = std::cos(th(n - 1 - k) / 2);
        for (int x = n - k; x <= n - 1; x++) {
            mag *= std::sin(th(x) / 2);
        }
        a[k] = std::pow(-kI, k) * std::polar(1.0, phase / 2) * mag;
    }
    return a;
}

Eigen::MatrixXcd jwe_closed_form_jacobian(size_t num_states, const Eigen::VectorXd &theta) {
    int n = (int)num_states;
    int L = 2 * (n - 1);
    if (theta.size() != L) {
        throw ConfigError("parameter vector length mismatch");
    }
    auto th = [&](int x) { return x == 0 ? 0.0 : theta[x - 1]; };
    Eigen::VectorXcd a = jwe_closed_form(num_states, theta);
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(n, L);
    for (int k = 0; k < n; k++) {
        for (int x = n; x <= 2 * n - 2; x++) {
            double sign = x <= 2 * n - 2 - k ? -0.5 : 0.5;
            j(k, x - 1) = kI * sign * a[k];
        }
        cplx pre = std::pow(-kI, k);
        double phase = 0;
        for (int x = n; x <= 2 * n - 2 - k; x++) {
            phase -= th(x);
        }
        for (int x = 2 * n - 1 - k; x <= 2 * n - 2; x++) {
            phase += th(x);
        }
        pre *= std::polar(1.0, phase / 2);
        int lo = n - k;
        int cx = n - 1 - k;
        for (int y = 1; y <= n - 1; y++) {
            bool in_sin = y >= lo;
            bool in_cos = y == cx;
            if (!in_sin && !in_cos) {
                continue;
            }
            double prod = 1;
            for (int x = lo; x <= n - 1; x++) {
                prod *= x == y ? 0.5 * std::cos(th(x) / 2) : std::sin(th(x) / 2);
            }
            prod *= in_cos ? -0.5 * std::sin(th(cx) / 2) : std::cos(th(cx) / 2);
            j(k, y - 1) = pre * prod;
        }
    }
    return j;
}

Eigen::Vector4cd qee2_closed_form(const Eigen::VectorXd &theta) {
    if (theta.size() != 6) {
        throw ConfigError("two-qubit binary ansatz takes 6 parameters");
    }
    double t1 = theta[0], t2 = theta[1], t3 = theta[2], t4 = theta[3], t5 = theta[4], t6 = theta[5];
    auto e = [](double p) { return std::polar(1.0, p / 2); };
    Eigen::Vector4cd a;
    a[0] = e(-t4 - t5 - t6) * std::cos(t1 / 2) * std::cos((t2 + t3) / 2);
    a[1] = e(-t4 + t5 + t6) * std::cos(t1 / 2) * std::sin((t2 + t3) / 2);
    a[2] = e(t4 + t5 - t6) * std::sin(t1 / 2) * std::cos((t2 - t3) / 2);
    a[3] = e(t4 - t5 + t6) * std::sin(t1 / 2) * std::sin((t2 - t3) / 2);
    return a;
}

std::vector<DerivativeBranch> derivative_branches(const AnsatzSpec &spec, const Eigen::VectorXd &theta, int i) {
    if (i < 0 || i >= spec.num_params) {
        throw ConfigError("derivative parameter index " + std::to_string(i) + " out of range");
    }
    auto bound = spec.bind(theta);
    size_t at = spec.param_gate[i];
    const Gate &g = bound[at];
    GateKind p = g.kind == GateKind::RX ? GateKind::X : g.kind == GateKind::RY ? GateKind::Y : GateKind::Z;
    auto with_insert = [&](std::vector<Gate> extra) {
        std::vector<Gate> c(bound.begin(), bound.begin() + at + 1);
        c.insert(c.end(), extra.begin(), extra.end());
        c.insert(c.end(), bound.begin() + at + 1, bound.end());
        return c;
    };
    Gate pg{p, g.target, {}, 0, -1};
    if (g.controls.empty()) {
        return {{-0.5 * kI, with_insert({pg})}};
    }
    if (g.controls.size() == 1) {
        // |1><1| = (I - Z)/2 on the control.
        return {
            {-0.25 * kI, with_insert({pg})},
            {0.25 * kI, with_insert({pg, gate_z(g.controls[0])})},
        };
    }
    throw ConfigError("derivative of multi-controlled rotation not supported");
}

StateVector DerivativeState::combined() const {
    StateVector s = branches.front().second;
    s.amplitudes() *= branches.front().first;
    for (size_t b = 1; b < branches.size(); b++) {
        s.amplitudes() += branches[b].first * branches[b].second.amplitudes();
    }
    return s;
}

DerivativeState derivative_state(const AnsatzSpec &spec, const Eigen::VectorXd &theta, int i) {
    DerivativeState d;
    d.param = i;
    for (auto &b : derivative_branches(spec, theta, i)) {
        StateVector s(spec.num_qubits);
        s.apply(b.circuit);
        d.branches.emplace_back(b.coefficient, std::move(s));
    }
    return d;
}

Eigen::MatrixXcd encoded_jacobian(const AnsatzSpec &spec, const Eigen::VectorXd &theta) {
    if (spec.scheme == Encoding::JWE) {
        return jwe_closed_form_jacobian(spec.num_states, theta);
    }
    Eigen::MatrixXcd j(spec.num_states, spec.num_params);
    for (int i = 0; i < spec.num_params; i++) {
        j.col(i) = encoded_amplitudes(spec, derivative_state(spec, theta, i).combined());
    }
    return j;
}

PhaseBlockMap probe_phase_block(const AnsatzSpec &spec) {
    if (spec.scheme != Encoding::QEE) {
        throw ConfigError("phase block probing applies to the binary encoding only");
    }
    PhaseBlockMap pm;
    for (size_t g = spec.phase_block_start; g < spec.gates.size(); g++) {
        if (spec.gates[g].param >= 0) {
            pm.params.push_back(spec.gates[g].param);
        }
    }
    size_t dim = size_t{1} << spec.num_qubits;
    pm.perm.resize(dim);
    pm.grad = Eigen::MatrixXd::Zero(dim, pm.params.size());
    auto run = [&](uint64_t x, int unit) {
        StateVector s = StateVector::basis(spec.num_qubits, x);
        for (size_t g = spec.phase_block_start; g < spec.gates.size(); g++) {
            Gate gate = spec.gates[g];
            gate.angle = (unit >= 0 && gate.param == pm.params[unit]) ? 1.0 : 0.0;
            s.apply(gate);
        }
        return s;
    };
    for (uint64_t x = 0; x < dim; x++) {
        StateVector s = run(x, -1);
        Eigen::Index out = 0;
        s.amplitudes().cwiseAbs().maxCoeff(&out);
        pm.perm[x] = (uint64_t)out;
        for (size_t u = 0; u < pm.params.size(); u++) {
            pm.grad(x, u) = std::arg(run(x, (int)u)[out]);
        }
    }
    return pm;
}

Eigen::VectorXd quadrature_phase_seed(const AnsatzSpec &spec) {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(spec.num_params);
    if (spec.scheme != Encoding::QEE) {
        return theta;
    }
    auto pm = probe_phase_block(spec);
    size_t dim = pm.perm.size();
    size_t x0 = 0;  // amplitude block output at zero angles is |0...0>
    int np = (int)pm.params.size();
    Eigen::MatrixXd A(dim - 1, np);
    Eigen::VectorXd b = Eigen::VectorXd::Constant(dim - 1, -M_PI / 2);
    int r = 0;
    for (size_t x = 0; x < dim; x++) {
        if (x == x0) {
            continue;
        }
        A.row(r++) = pm.grad.row(x) - pm.grad.row(x0);
    }
    Eigen::VectorXd sol = A.completeOrthogonalDecomposition().solve(b);
    for (int k = 0; k < np; k++) {
        theta[pm.params[k]] = sol[k];
    }
    return theta;
}

double fit_error(const AnsatzSpec &spec, const Eigen::VectorXd &theta, const Eigen::VectorXcd &target) {
    return register_error(register_amplitudes(spec, theta), register_target(spec, target));
}

Eigen::VectorXd fit_initial_params(const AnsatzSpec &spec, const Eigen::VectorXcd &target, uint64_t seed) {
    if ((size_t)target.size() != spec.num_states) {
        throw ConfigError(
            "target has " + std::to_string(target.size()) + " amplitudes, expected " +
            std::to_string(spec.num_states));
    }
    if (std::abs(target.norm() - 1) > 1e-9) {
        throw ConfigError("target amplitudes are not normalized (norm " + std::to_string(target.norm()) + ")");
    }
    const double tol = 1e-9;
    Eigen::VectorXcd t = register_target(spec, target);
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(spec.num_params);
    if (fit_error(spec, zero, target) < tol) {
        return zero;
    }
    Eigen::VectorXd guess = spec.scheme == Encoding::JWE ? jwe_cascade(spec, target) : qee_closed_form_guess(spec, t);
    if (fit_error(spec, guess, target) < tol) {
        return guess;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-M_PI, M_PI);
    Eigen::VectorXd best = guess;
    double best_err = fit_error(spec, guess, target);
    for (int attempt = 0; attempt <= 50; attempt++) {
        Eigen::VectorXd start = guess;
        if (attempt > 0) {
            for (int i = 0; i < spec.num_params; i++) {
                start[i] = uni(rng);
            }
        }
        Eigen::VectorXd th = levenberg_marquardt(spec, t, start);
        double err = fit_error(spec, th, target);
        if (err < best_err) {
            best = th;
            best_err = err;
        }
        if (best_err < tol) {
            return best;
        }
    }
    throw NumericalError("fit_initial_params: best amplitude error " + std::to_string(best_err) + " exceeds 1e-9");
}

}  // namespace vqdyn
