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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vqdyn/data_dir.h"
#include "vqdyn/errors.h"
#include "vqdyn/varsolver.h"

namespace vqdyn {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::vector<double> to_vec(const Eigen::VectorXd &v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

std::ofstream open_out(const std::string &path) {
    std::ofstream f(path);
    if (!f) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    return f;
}

}  // namespace

void write_run_csv(const RunRecord &rec, std::ostream &out) {
    size_t n = rec.probs.empty() ? (size_t)rec.final_probs.size() : (size_t)rec.probs.front().size();
    out << "t,alpha";
    for (size_t k = 0; k < n; k++) {
        out << ",P_" << k;
    }
    out << '\n';
    for (size_t r = 0; r < rec.t.size(); r++) {
        out << num(rec.t[r]) << ',' << num(rec.alpha[r]);
        for (Eigen::Index k = 0; k < rec.probs[r].size(); k++) {
            out << ',' << num(rec.probs[r][k]);
        }
        out << '\n';
    }
}

void write_theta_csv(const RunRecord &rec, std::ostream &out) {
    size_t L = rec.theta.empty() ? (size_t)rec.final_theta.size() : (size_t)rec.theta.front().size();
    out << "t";
    for (size_t i = 0; i < L; i++) {
        out << ",theta_" << i;
    }
    out << '\n';
    for (size_t r = 0; r < rec.t.size(); r++) {
        out << num(rec.t[r]);
        for (Eigen::Index i = 0; i < rec.theta[r].size(); i++) {
            out << ',' << num(rec.theta[r][i]);
        }
        out << '\n';
    }
}

void write_run_record(
    const RunRecord &rec, const MarchConfig &config, const std::string &path, const std::string &extra_json) {
    namespace fs = std::filesystem;
    fs::path p(path);
    {
        auto f = open_out(path);
        write_run_csv(rec, f);
    }
    fs::path theta_path = p.parent_path() / (p.stem().string() + "_theta.csv");
    {
        auto f = open_out(theta_path.string());
        write_theta_csv(rec, f);
    }

    nlohmann::ordered_json j;
    j["version"] = version();
    j["labels"] = rec.labels;
    j["config"] = {
        {"dt", config.dt},
        {"t_end", config.t_end},
        {"marching", to_string(config.scheme)},
        {"gpc", config.gpc},
        {"backend", to_string(config.backend.mode)},
        {"shots", config.backend.shots},
        {"seed", config.backend.seed},
        {"representation", to_string(config.representation)},
        {"lambda", config.lambda},
        {"record_every", config.record_every},
        {"threads", config.threads},
        {"seed_phases", config.seed_phases},
    };
    j["theta_file"] = theta_path.filename().string();
    j["rows"] = rec.t.size();
    j["steps_done"] = rec.steps_done;
    j["regularized_steps"] = rec.regularized_steps;
    j["failed"] = rec.failed;
    if (rec.failed) {
        j["error"] = rec.error;
    }
    j["final"] = {
        {"t", rec.final_t},
        {"alpha", rec.final_alpha},
        {"theta", to_vec(rec.final_theta)},
        {"P", to_vec(rec.final_probs)},
    };
    if (!extra_json.empty()) {
        auto extra = nlohmann::ordered_json::parse(extra_json, nullptr, false);
        if (extra.is_object()) {
            for (auto it = extra.begin(); it != extra.end(); ++it) {
                j[it.key()] = it.value();
            }
        }
    }
    auto f = open_out(path + ".json");
    f << j.dump(2) << '\n';
}

RunTable read_run_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open run record '" + path + "'");
    }
    RunTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("empty run record '" + path + "'");
    }
    {
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) {
            table.columns.push_back(col);
        }
    }
    if (table.columns.size() < 3 || table.columns[0] != "t" || table.columns[1] != "alpha") {
        throw ConfigError("'" + path + "' is not a run record (expected t,alpha,P_0,...)");
    }
    size_t n = table.columns.size() - 2;
    int lineno = 1;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) {
            try {
                vals.push_back(std::stod(cell));
            } catch (const std::exception &) {
                throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (vals.size() != n + 2) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": wrong column count");
        }
        table.t.push_back(vals[0]);
        Eigen::VectorXd p(n);
        for (size_t k = 0; k < n; k++) {
            p[k] = vals[k + 2];
        }
        table.probs.push_back(p);
    }
    return table;
}

}  // namespace vqdyn
