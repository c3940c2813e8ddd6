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

#include "vqdyn/pauli.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "vqdyn/errors.h"

namespace vqdyn {

namespace {

void require_hermitian(const Eigen::MatrixXcd &h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw ConfigError("Hamiltonian matrix must be square and non-empty");
    }
    double d = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (d > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
        throw ConfigError("Hamiltonian matrix is not Hermitian (max |h - h^+| = " + std::to_string(d) + ")");
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

PauliString::PauliString(std::string ops) : ops_(std::move(ops)) {
    for (char &c : ops_) {
        if (c == '_') {
            c = 'I';
        }
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw ConfigError("invalid Pauli letter '" + std::string(1, c) + "' in " + ops_);
        }
    }
    if (ops_.size() > 63) {
        throw ConfigError("Pauli string wider than 63 qubits");
    }
}

PauliString PauliString::identity(int width) {
    return PauliString(std::string(width, 'I'));
}

bool PauliString::is_identity() const {
    return ops_.find_first_not_of('I') == std::string::npos;
}

std::vector<int> PauliString::support() const {
    std::vector<int> r;
    for (int q = 0; q < width(); q++) {
        if (ops_[q] != 'I') {
            r.push_back(q);
        }
    }
    return r;
}

uint64_t PauliString::x_mask() const {
    uint64_t m = 0;
    int n = width();
    for (int q = 0; q < n; q++) {
        if (ops_[q] == 'X' || ops_[q] == 'Y') {
            m |= uint64_t{1} << (n - 1 - q);
        }
    }
    return m;
}

uint64_t PauliString::z_mask() const {
    uint64_t m = 0;
    int n = width();
    for (int q = 0; q < n; q++) {
        if (ops_[q] == 'Z' || ops_[q] == 'Y') {
            m |= uint64_t{1} << (n - 1 - q);
        }
    }
    return m;
}

void PauliSum::add(cplx coefficient, const PauliString &s) {
    if (width_ == 0 && terms_.empty()) {
        width_ = s.width();
    }
    if (s.width() != width_) {
        throw ConfigError("Pauli string " + s.str() + " does not match sum width " + std::to_string(width_));
    }
    terms_[s.str()] += coefficient;
}

cplx PauliSum::coefficient(const std::string &s) const {
    auto it = terms_.find(PauliString(s).str());
    return it == terms_.end() ? cplx(0) : it->second;
}

PauliSum &PauliSum::canonicalize(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        cplx &c = it->second;
        if (std::abs(c.imag()) < tol) {
            c.imag(0);
        }
        if (std::abs(c.real()) < tol) {
            c.real(0);
        }
        if (std::abs(c) < tol) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    return *this;
}

bool PauliSum::has_real_coefficients(double tol) const {
    for (const auto &[s, c] : terms_) {
        if (std::abs(c.imag()) > tol) {
            return false;
        }
    }
    return true;
}

std::vector<PauliTerm> PauliSum::terms() const {
    std::vector<PauliTerm> r;
    r.reserve(terms_.size());
    for (const auto &[s, c] : terms_) {
        r.push_back({c, PauliString(s)});
    }
    return r;
}

PauliSum PauliSum::operator+(const PauliSum &other) const {
    PauliSum r = *this;
    if (r.width_ == 0) {
        r.width_ = other.width_;
    }
    for (const auto &[s, c] : other.terms_) {
        r.add(c, PauliString(s));
    }
    return r;
}

PauliSum PauliSum::operator*(cplx s) const {
    PauliSum r = *this;
    for (auto &[k, c] : r.terms_) {
        c *= s;
    }
    return r;
}

std::string PauliSum::to_text() const {
    std::string out;
    for (const auto &[s, c] : terms_) {
        out += format_double(c.real());
        if (c.imag() != 0) {
            out += (std::signbit(c.imag()) ? "-" : "+") + format_double(std::abs(c.imag())) + "i";
        }
        out += " " + s + "\n";
    }
    return out;
}

PauliSum PauliSum::from_text(const std::string &text) {
    PauliSum r;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        std::istringstream ls(line);
        std::string coef, ops;
        if (!(ls >> coef)) {
            continue;
        }
        if (!(ls >> ops)) {
            throw ConfigError("Pauli text line " + std::to_string(line_no) + ": missing string");
        }
        double re = 0, im = 0;
        size_t used = 0;
        try {
            re = std::stod(coef, &used);
            if (used < coef.size()) {
                if (coef.back() != 'i') {
                    throw ConfigError("bad coefficient");
                }
                std::string rest = coef.substr(used, coef.size() - used - 1);
                size_t used2 = 0;
                im = std::stod(rest, &used2);
                if (used2 != rest.size()) {
                    throw ConfigError("bad coefficient");
                }
            }
        } catch (const std::exception &) {
            throw ConfigError("Pauli text line " + std::to_string(line_no) + ": bad coefficient '" + coef + "'");
        }
        r.add(cplx(re, im), PauliString(ops));
    }
    return r;
}

const char *to_string(Encoding e) {
    return e == Encoding::JWE ? "jwe" : "qee";
}

Encoding parse_encoding(const std::string &text) {
    if (text == "jwe" || text == "JWE") {
        return Encoding::JWE;
    }
    if (text == "qee" || text == "QEE") {
        return Encoding::QEE;
    }
    throw ConfigError("unknown encoding '" + text + "' (expected jwe or qee)");
}

std::string QubitConfigMap::bits(size_t k) const {
    std::string s(num_qubits, '0');
    for (int q = 0; q < num_qubits; q++) {
        if ((state_to_index[k] >> (num_qubits - 1 - q)) & 1) {
            s[q] = '1';
        }
    }
    return s;
}

int qee_qubits(size_t num_states) {
    int n = 1;
    while ((size_t{1} << n) < num_states) {
        n++;
    }
    return n;
}

QubitConfigMap config_map(Encoding scheme, size_t num_states) {
    QubitConfigMap m;
    m.scheme = scheme;
    if (scheme == Encoding::JWE) {
        m.num_qubits = (int)num_states;
        for (size_t k = 0; k < num_states; k++) {
            m.state_to_index.push_back(uint64_t{1} << (num_states - 1 - k));
        }
    } else {
        m.num_qubits = qee_qubits(num_states);
        for (size_t k = 0; k < num_states; k++) {
            m.state_to_index.push_back(k);
        }
    }
    return m;
}

PauliSum encode_jwe(const Eigen::MatrixXcd &h) {
    require_hermitian(h);
    int n = (int)h.rows();
    PauliSum sum(n);
    cplx trace = 0;
    for (int k = 0; k < n; k++) {
        trace += h(k, k);
        std::string z(n, 'I');
        z[k] = 'Z';
        sum.add(-0.5 * h(k, k), z);
    }
    sum.add(0.5 * trace, std::string(n, 'I'));
    const cplx I(0, 1);
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            cplx sym = 0.25 * (h(i, j) + h(j, i));
            cplx anti = 0.25 * I * (h(i, j) - h(j, i));
            if (std::abs(sym) == 0 && std::abs(anti) == 0) {
                continue;
            }
            std::string base(n, 'I');
            for (int q = i + 1; q < j; q++) {
                base[q] = 'Z';
            }
            auto word = [&](char a, char b) {
                std::string s = base;
                s[i] = a;
                s[j] = b;
                return s;
            };
            sum.add(sym, word('X', 'X'));
            sum.add(sym, word('Y', 'Y'));
            sum.add(anti, word('X', 'Y'));
            sum.add(-anti, word('Y', 'X'));
        }
    }
    return sum.canonicalize();
}

PauliSum encode_qee(const Eigen::MatrixXcd &h) {
    require_hermitian(h);
    int n = (int)h.rows();
    int nq = qee_qubits(n);
    const cplx I(0, 1);
    PauliSum sum(nq);
    // |a><b| on one qubit as two Pauli terms.
    struct Pair {
        char p1;
        cplx c1;
        char p2;
        cplx c2;
    };
    const Pair table[2][2] = {
        {{'I', 0.5, 'Z', 0.5}, {'X', 0.5, 'Y', 0.5 * I}},
        {{'X', 0.5, 'Y', -0.5 * I}, {'I', 0.5, 'Z', -0.5}},
    };
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            if (h(i, j) == cplx(0)) {
                continue;
            }
            for (uint64_t choice = 0; choice < (uint64_t{1} << nq); choice++) {
                std::string s(nq, 'I');
                cplx c = h(i, j);
                for (int q = 0; q < nq; q++) {
                    int bi = (i >> (nq - 1 - q)) & 1;
                    int bj = (j >> (nq - 1 - q)) & 1;
                    const Pair &p = table[bi][bj];
                    if ((choice >> q) & 1) {
                        s[q] = p.p2;
                        c *= p.c2;
                    } else {
                        s[q] = p.p1;
                        c *= p.c1;
                    }
                }
                sum.add(c, s);
            }
        }
    }
    return sum.canonicalize();
}

PauliSum encode(Encoding scheme, const Eigen::MatrixXcd &h) {
    return scheme == Encoding::JWE ? encode_jwe(h) : encode_qee(h);
}

Eigen::MatrixXcd pauli_to_matrix(const PauliSum &sum) {
    int w = sum.width();
    if (w > 16) {
        throw ConfigError("pauli_to_matrix: width " + std::to_string(w) + " exceeds 16 qubits");
    }
    size_t dim = size_t{1} << w;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const cplx phases[4] = {1, cplx(0, 1), -1, cplx(0, -1)};
    for (const auto &t : sum.terms()) {
        uint64_t xm = t.string.x_mask();
        uint64_t zm = t.string.z_mask();
        int ny = __builtin_popcountll(xm & zm);
        for (uint64_t col = 0; col < dim; col++) {
            // P|col> = i^ny (-1)^{popcount(col & zm)} |col ^ xm>.
            int sign = __builtin_popcountll(col & zm) & 1;
            m(col ^ xm, col) += t.coefficient * phases[(ny + 2 * sign) & 3];
        }
    }
    return m;
}

Eigen::MatrixXcd project_to_configs(const Eigen::MatrixXcd &op, const QubitConfigMap &map) {
    size_t n = map.num_states();
    Eigen::MatrixXcd r(n, n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            r(i, j) = op(map.state_to_index[i], map.state_to_index[j]);
        }
    }
    return r;
}

}  // namespace vqdyn
