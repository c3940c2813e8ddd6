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

#include "cli.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "vqdyn/ansatz.h"
#include "vqdyn/data_dir.h"
#include "vqdyn/errors.h"
#include "vqdyn/noise.h"

namespace vqdyn::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool is_default_pulse_shape(const LaserPulse &p) {
    LaserPulse d;
    return p.E0 == d.E0 && p.tau == d.tau && p.t0 == d.t0;
}

fs::path sibling(const std::string &path, const std::string &suffix) {
    fs::path p(path);
    return p.parent_path() / (p.stem().string() + suffix);
}

std::ofstream open_out(const fs::path &path) {
    std::ofstream f(path);
    if (!f) {
        throw ConfigError("cannot open '" + path.string() + "' for writing");
    }
    return f;
}

std::string fmt_percent(double v) {
    return fmt::format("{:+.3e}", v);
}

/// Reference probabilities for a configuration: the bundled golden file when
/// it describes exactly this run, otherwise a fresh reference integration.
Eigen::VectorXd reference_probabilities(
    const ExperimentConfig &cfg, const AtomModel &model, const Eigen::VectorXcd &c0, std::string *source) {
    bool default_start = std::abs(c0[0]) == 1.0;
    if (cfg.basis_file.empty() && is_default_pulse_shape(cfg.pulse) && cfg.t_end == 200 && default_start) {
        fs::path g = find_data_file(golden_name(model.size(), cfg.pulse.omega));
        if (!g.empty()) {
            GoldenTable table = read_golden(g.string());
            bool labels_match = table.labels.size() == model.size();
            for (size_t k = 0; labels_match && k < model.size(); k++) {
                labels_match = table.labels[k] == model.basis().orbitals[k].label();
            }
            if (labels_match) {
                if (source) {
                    *source = g.string();
                }
                return table.p;
            }
        }
    }
    TdseOptions o;
    o.atol = kReferenceTolerances.atol;
    o.rtol = kReferenceTolerances.rtol;
    o.c0 = c0;
    if (source) {
        *source = "inline";
    }
    return integrate_tdse(model, cfg.pulse, cfg.t_end, o).final_state.cwiseAbs2();
}

void print_deviation_table(
    std::ostream &out, const std::vector<std::string> &labels, const Eigen::VectorXd &p, const Eigen::VectorXd &ref) {
    out << fmt::format("{:<8} {:>16} {:>16} {:>14}\n", "state", "P(T)", "P_B", "deviation %");
    double max_abs = 0;
    double sum_abs = 0;
    int counted = 0;
    for (Eigen::Index k = 0; k < p.size(); k++) {
        std::string dev = "n/a";
        if (ref[k] > 0) {
            double d = (p[k] - ref[k]) / ref[k] * 100;
            dev = fmt_percent(d);
            max_abs = std::max(max_abs, std::abs(d));
            sum_abs += std::abs(d);
            counted++;
        }
        out << fmt::format("{:<8} {:>16.10f} {:>16.10f} {:>14}\n", labels[(size_t)k], p[k], ref[k], dev);
    }
    if (counted > 0) {
        out << fmt::format("max |deviation| = {:.4e} %   mean |deviation| = {:.4e} %\n", max_abs, sum_abs / counted);
    }
}

AnsatzSpec checked_ansatz(const ExperimentConfig &cfg, const BasisSet &basis) {
    Encoding enc = parse_encoding(cfg.encoding);
    if (enc == Encoding::QEE && qee_qubits(basis.size()) > 3 && cfg.backend == "analytic") {
        throw ConfigError(
            "the analytic backend supports the binary encoding up to 3 qubits (8 states); "
            "use --backend circuit for larger bases");
    }
    return make_ansatz(enc, basis.size());
}

void check_long_run(const ExperimentConfig &cfg, int64_t steps, int num_params) {
    double est = assembly_estimate(steps, num_params);
    if (est > kLongRunLimit && !cfg.allow_long) {
        throw ConfigError(fmt::format(
            "estimated {:.3g} system-assembly evaluations exceeds {:.0e}; pass --allow-long to run anyway", est,
            kLongRunLimit));
    }
}

nlohmann::ordered_json run_metadata(const ExperimentConfig &cfg, const AtomModel &model, const Eigen::VectorXd &theta0) {
    nlohmann::ordered_json j;
    j["preset"] = cfg.basis_file.empty() ? cfg.preset : "";
    j["basis_file"] = cfg.basis_file;
    j["pulse"] = {{"E0", cfg.pulse.E0}, {"tau", cfg.pulse.tau}, {"t0", cfg.pulse.t0}, {"omega", cfg.pulse.omega}};
    j["encoding"] = cfg.encoding;
    j["num_states"] = model.size();
    j["initial"] = cfg.initial;
    j["noise_calibration"] = cfg.noise_calibration;
    j["layout"] = cfg.layout;
    j["theta0"] = std::vector<double>(theta0.data(), theta0.data() + theta0.size());
    return j;
}

struct Prepared {
    BasisSet basis;
    AtomModel model;
    AnsatzSpec spec;
    MarchConfig mc;
    Eigen::VectorXcd c0;
    Eigen::VectorXd theta0;
};

Prepared prepare_run(const ExperimentConfig &cfg) {
    BasisSet basis = cfg.basis();
    AtomModel model(basis);
    AnsatzSpec spec = checked_ansatz(cfg, basis);
    MarchConfig mc = cfg.march_config();
    mc.validate();
    check_long_run(cfg, mc.steps(), spec.num_params);
    Eigen::VectorXcd c0 = cfg.initial_state(basis.size());
    Eigen::VectorXd theta0 = fit_initial_params(spec, c0, cfg.seed);
    return Prepared{basis, model, spec, mc, c0, theta0};
}

int finish_failed(const RunRecord &rec, const ExperimentConfig &cfg, std::ostream &err) {
    err << "error: " << rec.error << '\n';
    if (!cfg.out.empty()) {
        err << "partial record written to " << cfg.out << '\n';
    }
    return kExitNumerical;
}

int cmd_bench(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err) {
    BasisSet basis = cfg.basis();
    AtomModel model(basis);
    TdseOptions o;
    o.atol = cfg.atol;
    o.rtol = cfg.rtol;
    if (cfg.stepper == "rkf78") {
        o.stepper = Stepper::RKF78;
    } else if (cfg.stepper == "dopri5") {
        o.stepper = Stepper::DOPRI5;
    } else {
        throw ConfigError("unknown stepper '" + cfg.stepper + "' (expected rkf78 or dopri5)");
    }
    o.representation = parse_representation(cfg.representation);
    o.c0 = cfg.initial_state(basis.size());
    auto t0 = Clock::now();
    AmplitudeSeries s = integrate_tdse(model, cfg.pulse, cfg.t_end, o);
    Eigen::VectorXd p = s.final_state.cwiseAbs2();
    GoldenTable g;
    for (const Orbital &orb : basis.orbitals) {
        g.labels.push_back(orb.label());
    }
    g.p = p;
    for (size_t k = 0; k < g.labels.size(); k++) {
        out << fmt::format("{:<4} {:.8f}\n", g.labels[k], p[(Eigen::Index)k]);
    }
    out << fmt::format("norm drift {:.3e}\n", std::abs(p.sum() - o.c0.squaredNorm()));
    if (!cfg.out.empty()) {
        write_golden(g, cfg.out);
    }
    err << fmt::format("bench: {} steps, {:.3f} s\n", s.steps, seconds_since(t0));
    return kExitOk;
}

int cmd_evolve(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err) {
    Prepared r = prepare_run(cfg);
    auto t0 = Clock::now();
    RunRecord rec = march(r.spec, r.mc, r.theta0, r.model, cfg.pulse);
    double elapsed = seconds_since(t0);
    if (!cfg.out.empty()) {
        auto meta = run_metadata(cfg, r.model, r.theta0);
        write_run_record(rec, r.mc, cfg.out, meta.dump());
    }
    if (rec.failed) {
        return finish_failed(rec, cfg, err);
    }
    std::string source;
    Eigen::VectorXd ref = reference_probabilities(cfg, r.model, r.c0, &source);
    out << fmt::format(
        "{} N={} {} {} dt={:g} steps={} regularized={}\n", to_string(r.spec.scheme), r.spec.num_states,
        to_string(r.mc.scheme), r.mc.gpc ? "gpc" : "no-gpc", r.mc.dt, rec.steps_done, rec.regularized_steps);
    out << "benchmark: " << source << '\n';
    print_deviation_table(out, rec.labels, rec.final_probs, ref);
    err << fmt::format("evolve: {:.3f} s\n", elapsed);
    return kExitOk;
}

int cmd_noisy(ExperimentConfig cfg, std::ostream &out, std::ostream &err) {
    if (cfg.shots <= 0) {
        throw ConfigError("noisy runs need --shots > 0");
    }
    if (!cfg.record_every_set) {
        cfg.record_every = 1;
    }
    cfg.backend = "circuit";
    Prepared r = prepare_run(cfg);

    ExperimentConfig ref_cfg = cfg;
    ref_cfg.backend = "analytic";
    ref_cfg.shots = 0;
    ref_cfg.noise_calibration.clear();
    MarchConfig ref_mc = ref_cfg.march_config();

    auto t0 = Clock::now();
    RunRecord reference = march(r.spec, ref_mc, r.theta0, r.model, cfg.pulse);
    if (reference.failed) {
        return finish_failed(reference, cfg, err);
    }
    RunRecord rec = march(r.spec, r.mc, r.theta0, r.model, cfg.pulse);
    double elapsed = seconds_since(t0);
    if (!cfg.out.empty()) {
        auto meta = run_metadata(cfg, r.model, r.theta0);
        write_run_record(rec, r.mc, cfg.out, meta.dump());
    }
    if (rec.failed) {
        return finish_failed(rec, cfg, err);
    }
    int window_rows = std::max(1, cfg.window / cfg.record_every);
    std::vector<std::vector<double>> dev, ma;
    DriftSummary d = drift_summary(rec, reference, cfg.shots, window_rows, 100, &dev, &ma);
    if (!cfg.out.empty()) {
        auto f = open_out(sibling(cfg.out, "_drift.csv"));
        f << "t";
        for (size_t k = 0; k < dev.size(); k++) {
            f << ",dP_" << k;
        }
        for (size_t k = 0; k < ma.size(); k++) {
            f << ",ma_" << k;
        }
        f << '\n';
        for (size_t row = 0; row < rec.t.size(); row++) {
            f << fmt::format("{}", rec.t[row]);
            for (const auto &c : dev) {
                f << fmt::format(",{}", c[row]);
            }
            for (const auto &c : ma) {
                f << fmt::format(",{}", c[row]);
            }
            f << '\n';
        }
    }
    out << fmt::format(
        "{} N={} {} {} backend={} shots={} seed={} rows={}\n", to_string(r.spec.scheme), r.spec.num_states,
        cfg.representation, cfg.noise_calibration.empty() ? "sampling-only" : "noisy", to_string(r.mc.backend.mode),
        cfg.shots, cfg.seed, rec.t.size());
    out << fmt::format(
        "{:<8} {:>12} {:>12} {:>12} {:>12} {:>12}\n", "state", "sigma", "final dev", "max |MA|", "post mean",
        "post |MA-m|");
    for (Eigen::Index k = 0; k < d.sigma.size(); k++) {
        out << fmt::format(
            "{:<8} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.6f} {:>12.4e}\n", rec.labels[(size_t)k], d.sigma[k],
            d.final_deviation[k], d.max_ma[k], d.post_mean[k], d.post_max_ma_dev[k]);
    }
    err << fmt::format("noisy: {:.3f} s\n", elapsed);
    return kExitOk;
}

int cmd_fourier(const ExperimentConfig &cfg, std::ostream &out) {
    if (cfg.fourier_n_max < 0) {
        throw ConfigError("--n-max must be >= 0");
    }
    if (!(cfg.fourier_L > 0)) {
        throw ConfigError("--L must be positive");
    }
    FourierSeries s = fourier_expand(centred_pulse(cfg.pulse), cfg.fourier_L, cfg.fourier_n_max);
    std::ostringstream table;
    table << "n,A_n,B_n\n";
    table << fmt::format("0,{:.7f},{:.7f}\n", s.a0, 0.0);
    for (size_t n = 0; n < s.an.size(); n++) {
        table << fmt::format("{},{:.7f},{:.7f}\n", n + 1, s.an[n], s.bn[n]);
    }
    out << table.str();
    if (!cfg.out.empty()) {
        auto f = open_out(cfg.out);
        f << table.str();
    }
    return kExitOk;
}

int cmd_compare(const ExperimentConfig &cfg, std::ostream &out) {
    if (cfg.compare_files.size() != 2) {
        throw ConfigError("compare takes exactly two run records: <run.csv> <reference.csv>");
    }
    RunTable a = read_run_csv(cfg.compare_files[0]);
    RunTable b = read_run_csv(cfg.compare_files[1]);
    if (a.columns != b.columns) {
        throw ConfigError("run records have different columns");
    }
    if (a.t.empty() || b.t.empty()) {
        throw ConfigError("run record has no rows");
    }
    double max_diff = 0;
    size_t aligned = 0;
    for (size_t i = 0, j = 0; i < a.t.size() && j < b.t.size();) {
        if (std::abs(a.t[i] - b.t[j]) < 1e-9) {
            max_diff = std::max(max_diff, (a.probs[i] - b.probs[j]).cwiseAbs().maxCoeff());
            aligned++;
            i++;
            j++;
        } else if (a.t[i] < b.t[j]) {
            i++;
        } else {
            j++;
        }
    }
    std::vector<std::string> labels(a.columns.begin() + 2, a.columns.end());
    out << fmt::format("final rows: t={} vs t={}\n", a.t.back(), b.t.back());
    print_deviation_table(out, labels, a.probs.back(), b.probs.back());
    out << fmt::format("aligned rows {}, max |dP| over aligned rows {:.4e}\n", aligned, max_diff);
    if (!cfg.out.empty()) {
        auto f = open_out(cfg.out);
        f << "state,P,P_ref,deviation_percent\n";
        for (size_t k = 0; k < labels.size(); k++) {
            double p = a.probs.back()[(Eigen::Index)k];
            double q = b.probs.back()[(Eigen::Index)k];
            f << fmt::format("{},{},{},{}\n", labels[k], p, q, q > 0 ? fmt::format("{}", (p - q) / q * 100) : "");
        }
    }
    return kExitOk;
}

}  // namespace

BasisSet ExperimentConfig::basis() const {
    BasisSet b = basis_file.empty() ? preset_basis(preset) : load_basis_file(basis_file);
    b.validate();
    return b;
}

Eigen::VectorXcd ExperimentConfig::initial_state(size_t n) const {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero((Eigen::Index)n);
    if (initial.empty()) {
        c[0] = 1;
        return c;
    }
    auto parts = split(initial, ',');
    if (parts.size() != n) {
        throw ConfigError(fmt::format("--initial has {} amplitudes, basis has {} states", parts.size(), n));
    }
    for (size_t k = 0; k < n; k++) {
        try {
            size_t used = 0;
            c[(Eigen::Index)k] = std::stod(parts[k], &used);
            if (used != parts[k].size()) {
                throw std::invalid_argument(parts[k]);
            }
        } catch (const std::exception &) {
            throw ConfigError("bad amplitude '" + parts[k] + "' in --initial");
        }
    }
    double norm = c.norm();
    if (std::abs(norm - 1) > 1e-6) {
        throw ConfigError(fmt::format("--initial amplitudes have norm {:.8f}; expected 1", norm));
    }
    return c / norm;
}

MarchConfig ExperimentConfig::march_config() const {
    MarchConfig m;
    m.dt = dt;
    m.t_end = t_end;
    m.scheme = parse_marching(marching);
    m.gpc = gpc;
    m.representation = parse_representation(representation);
    m.record_every = record_every;
    m.threads = threads;
    m.lambda = lambda;
    if (backend == "analytic") {
        if (shots != 0 || !noise_calibration.empty()) {
            throw ConfigError("--shots and --noise-calibration need --backend circuit");
        }
        m.backend = EvalBackend::analytic();
    } else if (backend == "circuit") {
        if (shots < 0) {
            throw ConfigError("--shots must be >= 0");
        }
        if (!noise_calibration.empty()) {
            auto model = std::make_shared<NoiseModel>(load_calibration(noise_calibration));
            model->allow_routed_pairs = true;
            if (!layout.empty()) {
                for (const auto &q : split(layout, ',')) {
                    try {
                        model->layout.push_back(std::stoi(q));
                    } catch (const std::exception &) {
                        throw ConfigError("bad qubit '" + q + "' in --layout");
                    }
                }
            }
            m.backend = EvalBackend::noisy(shots, seed, model);
        } else if (shots > 0) {
            m.backend = EvalBackend::sampled(shots, seed);
        } else {
            m.backend = EvalBackend::exact_circuit();
        }
    } else {
        throw ConfigError("unknown backend '" + backend + "' (expected analytic or circuit)");
    }
    return m;
}

double assembly_estimate(int64_t steps, int num_params) {
    return (double)steps * num_params * (num_params + 1) / 2.0;
}

std::vector<double> moving_average(const std::vector<double> &x, int window) {
    std::vector<double> out(x.size());
    double acc = 0;
    for (size_t i = 0; i < x.size(); i++) {
        acc += x[i];
        if (i >= (size_t)window) {
            acc -= x[i - window];
        }
        out[i] = acc / (double)std::min(i + 1, (size_t)window);
    }
    return out;
}

DriftSummary drift_summary(
    const RunRecord &measured, const RunRecord &reference, int64_t shots, int window_rows, double t_after,
    std::vector<std::vector<double>> *deviation_columns, std::vector<std::vector<double>> *ma_columns) {
    if (measured.t.size() != reference.t.size() || measured.t.empty()) {
        throw ConfigError("measured and reference records do not align");
    }
    if (shots <= 0 || window_rows < 1) {
        throw ConfigError("drift summary needs shots > 0 and a positive window");
    }
    size_t rows = measured.t.size();
    Eigen::Index n = measured.probs.front().size();
    DriftSummary d;
    d.t_after = t_after;
    d.sigma.resize(n);
    d.final_deviation.resize(n);
    d.max_ma.resize(n);
    d.post_mean.resize(n);
    d.post_max_ma_dev.resize(n);
    if (deviation_columns) {
        deviation_columns->clear();
    }
    if (ma_columns) {
        ma_columns->clear();
    }
    for (Eigen::Index k = 0; k < n; k++) {
        std::vector<double> dev(rows), p(rows);
        double sig = 0;
        for (size_t r = 0; r < rows; r++) {
            dev[r] = measured.probs[r][k] - reference.probs[r][k];
            p[r] = measured.probs[r][k];
            double q = reference.probs[r][k];
            sig = std::max(sig, std::sqrt(std::max(q * (1 - q), 0.0) / (double)shots));
        }
        std::vector<double> ma = moving_average(dev, window_rows);
        d.sigma[k] = sig;
        d.final_deviation[k] = ma.back();
        // Statistics use complete windows only; the first rows average fewer samples.
        size_t first = std::min(rows - 1, (size_t)window_rows - 1);
        double mx = 0;
        for (size_t r = first; r < rows; r++) {
            mx = std::max(mx, std::abs(ma[r]));
        }
        d.max_ma[k] = mx;

        std::vector<double> post;
        for (size_t r = 0; r < rows; r++) {
            if (measured.t[r] > t_after) {
                post.push_back(p[r]);
            }
        }
        double mean = 0;
        double worst = 0;
        if (!post.empty()) {
            for (double v : post) {
                mean += v;
            }
            mean /= (double)post.size();
            std::vector<double> pma = moving_average(post, window_rows);
            for (size_t r = std::min(post.size() - 1, (size_t)window_rows - 1); r < post.size(); r++) {
                worst = std::max(worst, std::abs(pma[r] - mean));
            }
        }
        d.post_mean[k] = mean;
        d.post_max_ma_dev[k] = worst;
        if (deviation_columns) {
            deviation_columns->push_back(dev);
        }
        if (ma_columns) {
            ma_columns->push_back(ma);
        }
    }
    return d;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    ExperimentConfig cfg;
    CLI::App app{"Variational quantum dynamics of a laser-driven hydrogen atom", "vqdyn"};
    app.set_version_flag("--version", std::string(version()));
    app.set_config("--config", "", "TOML file of option values (command-line flags take precedence)");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--preset", cfg.preset, "Built-in basis: " + fmt::format("{}", fmt::join(preset_names(), ", ")))
        ->capture_default_str();
    app.add_option("--basis-file", cfg.basis_file, "Basis file of 'n l' lines (overrides --preset)")
        ->check(CLI::ExistingFile);
    app.add_option("--omega", cfg.pulse.omega, "Carrier frequency (a.u.)")->capture_default_str();
    app.add_option("--e0", cfg.pulse.E0, "Peak field (a.u.)")->capture_default_str();
    app.add_option("--tau", cfg.pulse.tau, "Envelope width (a.u.)")->capture_default_str();
    app.add_option("--t0", cfg.pulse.t0, "Envelope centre (a.u.)")->capture_default_str();
    app.add_option("--encoding", cfg.encoding, "Qubit encoding")
        ->check(CLI::IsMember({"jwe", "qee"}))
        ->capture_default_str();
    app.add_option("--dt", cfg.dt, "Time step")->capture_default_str();
    app.add_option("--t-end", cfg.t_end, "Final time")->capture_default_str();
    app.add_option("--marching", cfg.marching, "Time marching scheme")
        ->check(CLI::IsMember({"fom", "som"}))
        ->capture_default_str();
    app.add_flag("--gpc,!--no-gpc", cfg.gpc, "Global phase correction (default on)");
    app.add_option("--backend", cfg.backend, "Evaluation backend")
        ->check(CLI::IsMember({"analytic", "circuit"}))
        ->capture_default_str();
    app.add_option("--shots", cfg.shots, "Shots per measured quantity (0 = exact)")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--noise-calibration", cfg.noise_calibration, "Device calibration CSV")
        ->check(CLI::ExistingFile);
    app.add_option("--layout", cfg.layout, "Physical qubit of each circuit qubit, comma separated");
    app.add_option("--representation", cfg.representation, "Hamiltonian representation")
        ->check(CLI::IsMember({"sr", "ir"}))
        ->capture_default_str();
    app.add_option("--out", cfg.out, "Output path");
    auto *rec_opt = app.add_option("--record-every", cfg.record_every, "Record every K steps")
                        ->check(CLI::PositiveNumber)
                        ->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads for assembly (0 = all cores)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--lambda", cfg.lambda, "Regularization shift for ill-conditioned steps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--allow-long", cfg.allow_long, "Permit runs beyond the long-run guard");
    app.add_option("--initial", cfg.initial, "Initial real amplitudes, comma separated");

    auto *bench = app.add_subcommand("bench", "Reference TDSE integration");
    bench->add_option("--stepper", cfg.stepper, "rkf78 or dopri5")
        ->check(CLI::IsMember({"rkf78", "dopri5"}))
        ->capture_default_str();
    bench->add_option("--atol", cfg.atol, "Absolute tolerance")->capture_default_str();
    bench->add_option("--rtol", cfg.rtol, "Relative tolerance")->capture_default_str();
    auto *evolve = app.add_subcommand("evolve", "Variational evolution with a deviation report");
    auto *noisy = app.add_subcommand("noisy", "Sampled or noisy circuit evolution with a drift report");
    noisy->add_option("--window", cfg.window, "Moving-average window in steps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto *fourier = app.add_subcommand("fourier", "Fourier coefficients of the centred pulse");
    fourier->add_option("--L", cfg.fourier_L, "Half period")->capture_default_str();
    fourier->add_option("--n-max", cfg.fourier_n_max, "Highest harmonic")->capture_default_str();
    auto *compare = app.add_subcommand("compare", "Deviation table between two run records");
    compare->add_option("files", cfg.compare_files, "<run.csv> <reference.csv>")->expected(2)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }
    cfg.record_every_set = rec_opt->count() > 0;

    try {
        cfg.pulse.validate();
        if (*bench) {
            return cmd_bench(cfg, out, err);
        }
        if (*evolve) {
            return cmd_evolve(cfg, out, err);
        }
        if (*noisy) {
            return cmd_noisy(cfg, out, err);
        }
        if (*fourier) {
            return cmd_fourier(cfg, out);
        }
        if (*compare) {
            return cmd_compare(cfg, out);
        }
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError &e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitConfig;
}

}  // namespace vqdyn::cli
