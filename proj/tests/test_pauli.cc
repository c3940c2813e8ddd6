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
#include <random>

#include <gtest/gtest.h>

#include "vqdyn/errors.h"
#include "vqdyn/model.h"
#include "vqdyn/pauli.h"

using namespace vqdyn;

namespace {

Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            a(i, j) = cplx(g(rng), g(rng));
        }
    }
    return (a + a.adjoint()) / 2;
}

Eigen::Matrix2cd letter(char c) {
    Eigen::Matrix2cd m;
    switch (c) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, cplx(0, -1), cplx(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m.setIdentity();
    }
    return m;
}

/// Kronecker product with qubit 0 as the most significant factor.
Eigen::MatrixXcd kron_oracle(const std::string &s) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (char c : s) {
        Eigen::Matrix2cd l = letter(c);
        Eigen::MatrixXcd r(m.rows() * 2, m.cols() * 2);
        for (int i = 0; i < m.rows(); i++) {
            for (int j = 0; j < m.cols(); j++) {
                r.block<2, 2>(2 * i, 2 * j) = m(i, j) * l;
            }
        }
        m = r;
    }
    return m;
}

size_t non_identity_terms(const PauliSum &s) {
    size_t n = 0;
    for (const auto &t : s.terms()) {
        n += t.string.is_identity() ? 0 : 1;
    }
    return n;
}

}  // namespace

TEST(pauli_string, parse_and_masks) {
    PauliString p("XYZ_");
    EXPECT_EQ(p.str(), "XYZI");
    EXPECT_EQ(p.width(), 4);
    EXPECT_EQ(p.x_mask(), 0b1100u);
    EXPECT_EQ(p.z_mask(), 0b0110u);
    EXPECT_EQ(p.support(), (std::vector<int>{0, 1, 2}));
    EXPECT_FALSE(p.is_identity());
    EXPECT_TRUE(PauliString::identity(3).is_identity());
    EXPECT_THROW(PauliString("XQ"), ConfigError);
}

TEST(pauli_matrix, single_z_and_kron_oracle) {
    PauliSum z(1);
    z.add(1, "Z");
    Eigen::MatrixXcd m = pauli_to_matrix(z);
    EXPECT_EQ(m, (Eigen::Matrix2cd() << 1, 0, 0, -1).finished());

    std::mt19937_64 rng(3);
    const char letters[] = "IXYZ";
    for (int trial = 0; trial < 50; trial++) {
        int w = 1 + trial % 4;
        std::string s;
        for (int q = 0; q < w; q++) {
            s.push_back(letters[rng() % 4]);
        }
        PauliSum single(w);
        single.add(cplx(0.3, -0.2), s);
        EXPECT_LT((pauli_to_matrix(single) - cplx(0.3, -0.2) * kron_oracle(s)).cwiseAbs().maxCoeff(), 1e-15) << s;
    }
}

TEST(encode_jwe, hydrogen_anchor) {
    AtomModel m(preset_basis("h4"));
    LaserPulse p;
    double t = 44.0;
    double f = field_at(p, t);
    PauliSum s = encode_jwe(m.matrix_at(p, t, Representation::SR));
    const double tol = 1e-14;
    EXPECT_NEAR(s.coefficient("IIII").real(), -53.0 / 144, tol);
    EXPECT_NEAR(s.coefficient("ZIII").real(), 1.0 / 4, tol);
    EXPECT_NEAR(s.coefficient("IZII").real(), 1.0 / 16, tol);
    EXPECT_NEAR(s.coefficient("IIZI").real(), 1.0 / 36, tol);
    EXPECT_NEAR(s.coefficient("IIIZ").real(), 1.0 / 36, tol);
    double c01 = 64 * std::sqrt(2.0) / 243 * f;
    double c12 = 1728 * std::sqrt(6.0) / 15625 * f;
    double c13 = 55296 * std::sqrt(3.0) / 78125 * f;
    EXPECT_NEAR(s.coefficient("XXII").real(), c01, tol);
    EXPECT_NEAR(s.coefficient("YYII").real(), c01, tol);
    EXPECT_NEAR(s.coefficient("IXXI").real(), c12, tol);
    EXPECT_NEAR(s.coefficient("IYYI").real(), c12, tol);
    EXPECT_NEAR(s.coefficient("IXZX").real(), c13, tol);
    EXPECT_NEAR(s.coefficient("IYZY").real(), c13, tol);
    EXPECT_EQ(s.size(), 11u);
    EXPECT_TRUE(s.has_real_coefficients());
}

TEST(encode_qee, hydrogen_anchor) {
    AtomModel m(preset_basis("h4"));
    LaserPulse p;
    double t = 44.0;
    double f = field_at(p, t);
    PauliSum s = encode_qee(m.matrix_at(p, t, Representation::SR));
    const double tol = 1e-14;
    EXPECT_EQ(s.width(), 2);
    EXPECT_NEAR(s.coefficient("II").real(), -53.0 / 288, tol);
    EXPECT_NEAR(s.coefficient("ZI").real(), -37.0 / 288, tol);
    EXPECT_NEAR(s.coefficient("IZ").real(), -3.0 / 32, tol);
    EXPECT_NEAR(s.coefficient("ZZ").real(), -3.0 / 32, tol);
    const Eigen::MatrixXd &z = m.couplings();
    EXPECT_NEAR(s.coefficient("IX").real(), f * z(0, 1) / 2, tol);
    EXPECT_NEAR(s.coefficient("ZX").real(), f * z(0, 1) / 2, tol);
    EXPECT_NEAR(s.coefficient("XX").real(), f * z(1, 2) / 2, tol);
    EXPECT_NEAR(s.coefficient("YY").real(), f * z(1, 2) / 2, tol);
    EXPECT_NEAR(s.coefficient("XI").real(), f * z(1, 3) / 2, tol);
    EXPECT_NEAR(s.coefficient("XZ").real(), -f * z(1, 3) / 2, tol);
    EXPECT_EQ(s.size(), 10u);
}

TEST(encode, dense_term_counts) {
    std::mt19937_64 rng(11);
    Eigen::MatrixXcd h = random_hermitian(4, rng);
    EXPECT_EQ(non_identity_terms(encode_jwe(h)), 28u);
    EXPECT_EQ(non_identity_terms(encode_qee(h)), 15u);
}

TEST(encode, trivial_cases) {
    PauliSum j = encode_jwe(Eigen::MatrixXcd::Identity(2, 2));
    EXPECT_EQ(j.size(), 3u);
    EXPECT_NEAR(j.coefficient("II").real(), 1, 1e-15);
    EXPECT_NEAR(j.coefficient("ZI").real(), -0.5, 1e-15);
    EXPECT_NEAR(j.coefficient("IZ").real(), -0.5, 1e-15);
    PauliSum q = encode_qee(2.5 * Eigen::MatrixXcd::Identity(2, 2));
    EXPECT_EQ(q.size(), 1u);
    EXPECT_NEAR(q.coefficient("I").real(), 2.5, 1e-15);
}

TEST(encode, rejects_non_hermitian) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    h(0, 1) = 1;
    EXPECT_THROW(encode_jwe(h), ConfigError);
    EXPECT_THROW(encode_qee(h), ConfigError);
    EXPECT_THROW(encode_jwe(Eigen::MatrixXcd::Zero(2, 3)), ConfigError);
}

TEST(encode, round_trip_random_hermitian) {
    std::mt19937_64 rng(5);
    for (Encoding e : {Encoding::JWE, Encoding::QEE}) {
        for (int n : {2, 3, 4, 8}) {
            for (int trial = 0; trial < 5; trial++) {
                Eigen::MatrixXcd h = random_hermitian(n, rng);
                PauliSum s = encode(e, h);
                EXPECT_TRUE(s.has_real_coefficients()) << to_string(e) << n;
                Eigen::MatrixXcd back = project_to_configs(pauli_to_matrix(s), config_map(e, n));
                EXPECT_LT((back - h).cwiseAbs().maxCoeff(), 1e-12) << to_string(e) << n;
            }
        }
    }
}

TEST(encode, hydrogen_round_trip_against_full_matrix) {
    AtomModel m(preset_basis("h4"));
    Eigen::MatrixXcd h = m.matrix_at(LaserPulse{}, 50, Representation::SR);
    Eigen::MatrixXcd full = pauli_to_matrix(encode_qee(h));
    EXPECT_LT((full - h).cwiseAbs().maxCoeff(), 1e-13);
    Eigen::MatrixXcd jw = pauli_to_matrix(encode_jwe(h));
    auto map = config_map(Encoding::JWE, 4);
    for (int a = 0; a < 4; a++) {
        for (int b = 0; b < 4; b++) {
            EXPECT_NEAR(std::abs(jw(map.state_to_index[a], map.state_to_index[b]) - h(a, b)), 0, 1e-13);
        }
    }
}

TEST(encode, linearity) {
    std::mt19937_64 rng(9);
    for (Encoding e : {Encoding::JWE, Encoding::QEE}) {
        Eigen::MatrixXcd h1 = random_hermitian(4, rng);
        Eigen::MatrixXcd h2 = random_hermitian(4, rng);
        double a = 0.7, b = -1.3;
        PauliSum lhs = encode(e, a * h1 + b * h2);
        PauliSum rhs = encode(e, h1) * a + encode(e, h2) * b;
        for (const auto &[str, c] : rhs.term_map()) {
            EXPECT_NEAR(std::abs(lhs.coefficient(str) - c), 0, 1e-13) << str;
        }
        for (const auto &[str, c] : lhs.term_map()) {
            EXPECT_NEAR(std::abs(rhs.coefficient(str) - c), 0, 1e-13) << str;
        }
    }
}

TEST(config_map, strings) {
    auto j = config_map(Encoding::JWE, 4);
    EXPECT_EQ(j.num_qubits, 4);
    EXPECT_EQ(j.bits(0), "1000");
    EXPECT_EQ(j.bits(2), "0010");
    EXPECT_EQ(j.state_to_index[1], 0b0100u);
    auto q = config_map(Encoding::QEE, 4);
    EXPECT_EQ(q.num_qubits, 2);
    EXPECT_EQ(q.bits(2), "10");
    EXPECT_EQ(q.state_to_index[3], 3u);
    EXPECT_EQ(qee_qubits(5), 3);
    EXPECT_EQ(qee_qubits(16), 4);
    EXPECT_EQ(parse_encoding("jwe"), Encoding::JWE);
    EXPECT_THROW(parse_encoding("bk"), ConfigError);
}

TEST(pauli_sum, text_round_trip) {
    PauliSum s(3);
    s.add(cplx(0.125, 0), "XIZ");
    s.add(cplx(-1.0 / 3, 0.25), "YYI");
    s.add(cplx(2, 0), "III");
    std::string text = s.to_text();
    EXPECT_NE(text.find("+0.25i YYI"), std::string::npos) << text;
    EXPECT_NE(text.find("0.125 XIZ"), std::string::npos) << text;
    PauliSum back = PauliSum::from_text(text);
    EXPECT_EQ(back.size(), 3u);
    for (const auto &[str, c] : s.term_map()) {
        EXPECT_EQ(back.coefficient(str), c) << str;
    }
    EXPECT_THROW(PauliSum::from_text("1.0x XX\n"), ConfigError);
    EXPECT_THROW(PauliSum::from_text("1.0\n"), ConfigError);
}

TEST(pauli_sum, merge_and_canonicalize) {
    PauliSum s(2);
    s.add(1.0, "XZ");
    s.add(-1.0, "XZ");
    s.add(cplx(0.5, 1e-16), "ZZ");
    s.canonicalize();
    EXPECT_EQ(s.size(), 1u);
    EXPECT_EQ(s.coefficient("ZZ"), cplx(0.5, 0));
    EXPECT_EQ(s.coefficient("XZ"), cplx(0));
}
