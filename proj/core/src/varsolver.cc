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

#include "vqdyn/varsolver.h"

#include <cmath>
#include <limits>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "vqdyn/errors.h"
#include "vqdyn/rng.h"

namespace vqdyn {

const char *to_string(Marching m) {
    return m == Marching::FOM ? "fom" : "som";
}

Marching parse_marching(const std::string &text) {
    if (text == "fom") {
        return Marching::FOM;
    }
    if (text == "som") {
        return Marching::SOM;
    }
    throw ConfigError("unknown marching scheme '" + text + "' (expected fom or som)");
}

namespace {

void finish_system(McLachlanSystem &sys) {
    if (sys.gpc) {
        sys.M = sys.A_real - sys.overlaps * sys.overlaps.transpose();
        sys.V = sys.C_imag - sys.overlaps * sys.energy;
    } else {
        sys.M = sys.A_real;
        sys.V = sys.C_imag;
    }
}

struct Slot {
    TestQuery query;
    const PauliTerm *term = nullptr;
};

/// Exact inner products on the full register.
McLachlanSystem assemble_statevector(
    const AnsatzSpec &spec, const Eigen::VectorXd &theta, const PauliSum &hamiltonian, bool gpc) {
    int L = spec.num_params;
    StateVector phi = build_state(spec, theta);
    StateVector hphi(phi.width());
    hphi.amplitudes().setZero();
    for (const PauliTerm &t : hamiltonian.terms()) {
        StateVector p = phi;
        p.apply_pauli(t.string);
        hphi.amplitudes() += t.coefficient * p.amplitudes();
    }
    Eigen::MatrixXcd d(phi.dim(), L);
    for (int i = 0; i < L; i++) {
        d.col(i) = derivative_state(spec, theta, i).combined().amplitudes();
    }
    McLachlanSystem sys;
    sys.gpc = gpc;
    sys.A_real = (d.adjoint() * d).real();
    sys.C_imag = (d.adjoint() * hphi.amplitudes()).imag();
    sys.overlaps = (d.adjoint() * phi.amplitudes()).imag();
    sys.energy = phi.amplitudes().dot(hphi.amplitudes()).real();
    finish_system(sys);
    return sys;
}

}  // namespace

McLachlanSystem assemble_system_dense(
    const AnsatzSpec &spec, const Eigen::VectorXd &theta, const Eigen::MatrixXcd &h, bool gpc) {
    if ((size_t)h.rows() != spec.num_states || (size_t)h.cols() != spec.num_states) {
        throw ConfigError("Hamiltonian size does not match the ansatz");
    }
    Eigen::VectorXcd phi = register_amplitudes(spec, theta);
    Eigen::MatrixXcd d = register_jacobian(spec, theta);
    Eigen::VectorXcd hphi;
    if (spec.scheme == Encoding::JWE) {
        hphi = h * phi;
    } else {
        hphi = Eigen::VectorXcd::Zero(phi.size());
        const auto &ix = spec.map.state_to_index;
        for (size_t a = 0; a < spec.num_states; a++) {
            cplx acc = 0;
            for (size_t b = 0; b < spec.num_states; b++) {
                acc += h(a, b) * phi[ix[b]];
            }
            hphi[ix[a]] = acc;
        }
    }
    McLachlanSystem sys;
    sys.gpc = gpc;
    sys.A_real = (d.adjoint() * d).real();
    sys.C_imag = (d.adjoint() * hphi).imag();
    sys.overlaps = (d.adjoint() * phi).imag();
    sys.energy = phi.dot(hphi).real();
    finish_system(sys);
    return sys;
}

McLachlanSystem assemble_system(
    const AnsatzSpec &spec,
    const Eigen::VectorXd &theta,
    const PauliSum &hamiltonian,
    const EvalBackend &backend,
    bool gpc,
    uint64_t stream,
    int threads) {
    backend.validate();
    if (hamiltonian.width() != spec.num_qubits) {
        throw ConfigError("Hamiltonian width does not match the ansatz register");
    }
    if (!hamiltonian.has_real_coefficients()) {
        throw ConfigError("Hamiltonian must have real Pauli coefficients");
    }
    if (backend.mode == EvalMode::Analytic) {
        return assemble_statevector(spec, theta, hamiltonian, gpc);
    }

    int L = spec.num_params;
    std::vector<PauliTerm> terms = hamiltonian.terms();
    double identity_weight = 0;
    std::vector<const PauliTerm *> active;
    for (const PauliTerm &t : terms) {
        if (t.string.is_identity()) {
            identity_weight += t.coefficient.real();
        } else {
            active.push_back(&t);
        }
    }

    std::vector<Slot> slots;
    for (int i = 0; i < L; i++) {
        for (int j = i; j < L; j++) {
            slots.push_back({{TestKind::AEntry, i, j}, nullptr});
        }
    }
    for (int i = 0; i < L; i++) {
        slots.push_back({{TestKind::Overlap, i, -1}, nullptr});
    }
    for (const PauliTerm *t : active) {
        for (int i = 0; i < L; i++) {
            slots.push_back({{TestKind::CEntry, i, -1}, t});
        }
        slots.push_back({{TestKind::Energy, -1, -1}, t});
    }

    std::vector<double> values(slots.size());
    auto work = [&](const tbb::blocked_range<size_t> &r) {
        for (size_t k = r.begin(); k != r.end(); k++) {
            auto tests = build_test(slots[k].query, spec, theta, slots[k].term);
            values[k] = evaluate(tests, backend, derive_seed(stream, k, 0));
        }
    };
    if (threads == 1) {
        work(tbb::blocked_range<size_t>(0, slots.size()));
    } else {
        int n = threads <= 0 ? tbb::task_arena::automatic : threads;
        tbb::task_arena arena(n);
        arena.execute([&] { tbb::parallel_for(tbb::blocked_range<size_t>(0, slots.size()), work); });
    }

    McLachlanSystem sys;
    sys.gpc = gpc;
    sys.A_real = Eigen::MatrixXd::Zero(L, L);
    sys.C_imag = Eigen::VectorXd::Zero(L);
    sys.overlaps = Eigen::VectorXd::Zero(L);
    sys.energy = identity_weight;
    for (size_t k = 0; k < slots.size(); k++) {
        const TestQuery &q = slots[k].query;
        switch (q.kind) {
            case TestKind::AEntry:
                sys.A_real(q.i, q.j) = values[k];
                sys.A_real(q.j, q.i) = values[k];
                break;
            case TestKind::Overlap:
                sys.overlaps[q.i] = values[k];
                break;
            case TestKind::CEntry:
                sys.C_imag[q.i] += values[k];
                break;
            case TestKind::Energy:
                sys.energy += values[k];
                break;
        }
    }
    // Identity terms: Im <d_i phi| w |phi> = w Im <d_i phi|phi>.
    sys.C_imag += identity_weight * sys.overlaps;
    finish_system(sys);
    return sys;
}

Eigen::VectorXd solve_thetadot(const McLachlanSystem &sys, double lambda, SolveInfo *info, double cond_limit) {
    const Eigen::MatrixXd &m = sys.M;
    if (m.rows() != m.cols() || m.rows() != sys.V.size()) {
        throw ConfigError("inconsistent McLachlan system dimensions");
    }
    if (!m.allFinite() || !sys.V.allFinite()) {
        throw NumericalError("non-finite entries in the McLachlan system");
    }
    // 2-norm condition number from the singular values. The cheap LU rcond()
    // estimate is too loose here: it misses exactly singular systems.
    auto condition = [](const Eigen::MatrixXd &a) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        const auto &s = svd.singularValues();
        if (s.size() == 0) {
            return 1.0;
        }
        double smin = s[s.size() - 1];
        return smin > 0 ? s[0] / smin : std::numeric_limits<double>::infinity();
    };
    SolveInfo local;
    local.condition = condition(m);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    if (local.condition <= cond_limit) {
        lu.compute(m);
    } else {
        Eigen::MatrixXd a = m + lambda * Eigen::MatrixXd::Identity(m.rows(), m.cols());
        local.regularized = true;
        if (!(condition(a) < 1 / std::numeric_limits<double>::epsilon())) {
            throw NumericalError("McLachlan matrix singular after regularization");
        }
        lu.compute(a);
    }
    Eigen::VectorXd x = lu.solve(sys.V);
    if (!x.allFinite()) {
        throw NumericalError("McLachlan solve produced non-finite values");
    }
    if (info) {
        *info = local;
    }
    return x;
}

int64_t MarchConfig::steps() const {
    if (!(dt > 0) || !std::isfinite(dt)) {
        throw ConfigError("dt must be positive");
    }
    if (!(t_end > 0) || !std::isfinite(t_end)) {
        throw ConfigError("t_end must be positive");
    }
    double s = t_end / dt;
    double r = std::round(s);
    if (std::abs(s - r) > 1e-9 * std::max(1.0, r)) {
        throw ConfigError("t_end must be an integer multiple of dt");
    }
    return (int64_t)r;
}

void MarchConfig::validate() const {
    steps();
    if (record_every < 1) {
        throw ConfigError("record_every must be >= 1");
    }
    if (!(lambda > 0)) {
        throw ConfigError("regularization lambda must be positive");
    }
    if (threads < 0) {
        throw ConfigError("threads must be >= 0");
    }
    backend.validate();
}

RunRecord march(
    const AnsatzSpec &spec,
    const MarchConfig &config,
    const Eigen::VectorXd &theta0,
    const AtomModel &model,
    const LaserPulse &pulse,
    const MarchObserver &observer) {
    config.validate();
    if (model.size() != spec.num_states) {
        throw ConfigError("basis size does not match the ansatz");
    }
    if (theta0.size() != spec.num_params) {
        throw ConfigError("initial parameter vector length mismatch");
    }
    const int64_t S = config.steps();
    const double dt = config.dt;

    RunRecord rec;
    for (const Orbital &o : model.basis().orbitals) {
        rec.labels.push_back(o.label());
    }

    Eigen::VectorXd theta = theta0;
    if (spec.scheme == Encoding::QEE && config.seed_phases && theta0.isZero(0)) {
        theta = quadrature_phase_seed(spec);
    }
    double alpha = 0;

    auto record = [&](int64_t step, double t) {
        uint64_t stream = derive_seed(config.backend.seed, (uint64_t)step, 1);
        Eigen::VectorXd exact = encoded_amplitudes(spec, theta).cwiseAbs2();
        Eigen::VectorXd p = config.backend.mode == EvalMode::Analytic
                                ? exact
                                : measure_probabilities(spec, theta, config.backend, stream);
        rec.t.push_back(t);
        rec.alpha.push_back(alpha);
        rec.theta.push_back(theta);
        rec.probs.push_back(p);
        rec.norm.push_back(exact.sum());
    };

    Eigen::VectorXd prev_td;
    double prev_ad = 0;
    int64_t s = 0;
    try {
        for (; s < S; s++) {
            double t = s * dt;
            if (s % config.record_every == 0) {
                record(s, t);
            }
            McLachlanSystem sys;
            if (config.backend.mode == EvalMode::Analytic) {
                sys = assemble_system_dense(spec, theta, model.matrix_at(pulse, t, config.representation), config.gpc);
            } else {
                PauliSum h = encode(spec.scheme, model.matrix_at(pulse, t, config.representation));
                uint64_t stream = derive_seed(config.backend.seed, (uint64_t)s, 0);
                sys = assemble_system(spec, theta, h, config.backend, config.gpc, stream, config.threads);
            }
            SolveInfo info;
            Eigen::VectorXd td = solve_thetadot(sys, config.lambda, &info);
            if (info.regularized) {
                rec.regularized_steps++;
            }
            double ad = sys.overlaps.dot(td) - sys.energy;
            if (config.scheme == Marching::SOM && prev_td.size() > 0) {
                theta += dt * (1.5 * td - 0.5 * prev_td);
                alpha += dt * (1.5 * ad - 0.5 * prev_ad);
            } else {
                theta += dt * td;
                alpha += dt * ad;
            }
            prev_td = td;
            prev_ad = ad;
            if (!theta.allFinite()) {
                throw NumericalError("parameters became non-finite");
            }
            if (observer) {
                observer(s + 1, (s + 1) * dt);
            }
        }
        if (S % config.record_every == 0) {
            record(S, S * dt);
        }
    } catch (const NumericalError &e) {
        rec.failed = true;
        rec.error = std::string(e.what()) + " at step " + std::to_string(s) + " (t = " + std::to_string(s * dt) + ")";
    }
    rec.steps_done = s;
    rec.final_t = s * dt;
    rec.final_alpha = alpha;
    rec.final_theta = theta;
    rec.final_probs = encoded_amplitudes(spec, theta).cwiseAbs2();
    return rec;
}

}  // namespace vqdyn
