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

#ifndef VQDYN_PAULI_H
#define VQDYN_PAULI_H

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vqdyn {

using cplx = std::complex<double>;

/// Word over {I,X,Y,Z}; character q acts on qubit q (qubit 0 leftmost).
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::string ops);
    static PauliString identity(int width);

    int width() const {
        return (int)ops_.size();
    }
    char operator[](int q) const {
        return ops_[q];
    }
    const std::string &str() const {
        return ops_;
    }
    bool is_identity() const;
    /// Qubits carrying a non-identity letter.
    std::vector<int> support() const;

    /// Bit (width-1-q) is set when qubit q flips (X or Y).
    uint64_t x_mask() const;
    /// Bit (width-1-q) is set when qubit q has a Z component (Z or Y).
    uint64_t z_mask() const;

    bool operator==(const PauliString &other) const = default;
    auto operator<=>(const PauliString &other) const = default;

   private:
    std::string ops_;
};

struct PauliTerm {
    cplx coefficient;
    PauliString string;
};

/// Weighted Pauli sum. Terms are kept sorted and merged by string.
class PauliSum {
   public:
    explicit PauliSum(int width = 0) : width_(width) {
    }

    int width() const {
        return width_;
    }
    size_t size() const {
        return terms_.size();
    }
    bool empty() const {
        return terms_.empty();
    }

    void add(cplx coefficient, const PauliString &s);
    void add(cplx coefficient, const std::string &s) {
        add(coefficient, PauliString(s));
    }
    /// Coefficient of s, zero when absent.
    cplx coefficient(const std::string &s) const;

    /// Drops |c| < tol and snaps imaginary parts below tol to zero.
    PauliSum &canonicalize(double tol = 1e-14);
    bool has_real_coefficients(double tol = 1e-14) const;

    std::vector<PauliTerm> terms() const;
    const std::map<std::string, cplx> &term_map() const {
        return terms_;
    }

    PauliSum operator+(const PauliSum &other) const;
    PauliSum operator*(cplx s) const;

    /// One term per line: "<real>+<imag>i <string>", or "<real> <string>" when
    /// the imaginary part is zero.
    std::string to_text() const;
    static PauliSum from_text(const std::string &text);

   private:
    int width_;
    std::map<std::string, cplx> terms_;
};

enum class Encoding { JWE, QEE };
const char *to_string(Encoding e);
Encoding parse_encoding(const std::string &text);

/// Configuration index k -> amplitude index of |q_k>. Amplitude bit
/// (width-1-q) is qubit q.
struct QubitConfigMap {
    Encoding scheme = Encoding::JWE;
    int num_qubits = 0;
    std::vector<uint64_t> state_to_index;

    size_t num_states() const {
        return state_to_index.size();
    }
    /// |q_k> as a bit string, qubit 0 first.
    std::string bits(size_t k) const;
};

int qee_qubits(size_t num_states);
QubitConfigMap config_map(Encoding scheme, size_t num_states);

/// Unary encoding; one qubit per state.
PauliSum encode_jwe(const Eigen::MatrixXcd &h);
/// Binary encoding on ceil(log2 N) qubits; missing states are padded with zeros.
PauliSum encode_qee(const Eigen::MatrixXcd &h);
PauliSum encode(Encoding scheme, const Eigen::MatrixXcd &h);

/// Dense 2^width matrix. Width is limited to 16.
Eigen::MatrixXcd pauli_to_matrix(const PauliSum &sum);
/// Restriction of a dense operator to the encoded configurations.
Eigen::MatrixXcd project_to_configs(const Eigen::MatrixXcd &op, const QubitConfigMap &map);

}  // namespace vqdyn

#endif
