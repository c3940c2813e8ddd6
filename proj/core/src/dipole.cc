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
#include <sstream>

#include "vqdyn/errors.h"
#include "vqdyn/model.h"

namespace vqdyn {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

cpp_int factorial(int k) {
    cpp_int r = 1;
    for (int i = 2; i <= k; i++) {
        r *= i;
    }
    return r;
}

cpp_int binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    return factorial(n) / (factorial(k) * factorial(n - k));
}

cpp_rational rpow(const cpp_rational &x, int e) {
    cpp_rational r = 1;
    for (int i = 0; i < e; i++) {
        r *= x;
    }
    return r;
}

/// R_nl(r) = sum_j coef[j] r^(l+j) e^(-r/n), without normalization.
std::vector<cpp_rational> radial_coefficients(int n, int l) {
    int k = n - l - 1;
    int alpha = 2 * l + 1;
    cpp_rational two_over_n(2, n);
    std::vector<cpp_rational> c;
    for (int j = 0; j <= k; j++) {
        cpp_rational term(binomial(k + alpha, k - j), factorial(j));
        if (j % 2) {
            term = -term;
        }
        c.push_back(term * rpow(two_over_n, l + j));
    }
    return c;
}

cpp_rational norm_squared(int n, int l) {
    return rpow(cpp_rational(2, n), 3) * cpp_rational(factorial(n - l - 1), 2 * n * factorial(n + l));
}

/// Splits m = s^2 f with f square free.
void split_square(cpp_int m, cpp_int &s, cpp_int &f) {
    s = 1;
    f = 1;
    for (cpp_int p = 2; p * p <= m; p++) {
        while (m % (p * p) == 0) {
            m /= p * p;
            s *= p;
        }
        if (m % p == 0) {
            m /= p;
            f *= p;
        }
    }
    f *= m;
}

}  // namespace

double SurdValue::value() const {
    return (double)coefficient * std::sqrt((double)radicand);
}

std::string SurdValue::str() const {
    std::ostringstream out;
    cpp_int num = boost::multiprecision::numerator(coefficient);
    cpp_int den = boost::multiprecision::denominator(coefficient);
    out << num;
    if (radicand != 1 && num != 0) {
        out << "*sqrt(" << radicand << ")";
    }
    if (den != 1) {
        out << "/" << den;
    }
    return out.str();
}

SurdValue dipole_exact(const Orbital &a, const Orbital &b) {
    a.validate();
    b.validate();
    SurdValue result;
    result.coefficient = 0;
    if (std::abs(a.l - b.l) != 1) {
        return result;
    }
    int lmin = std::min(a.l, b.l);
    auto ca = radial_coefficients(a.n, a.l);
    auto cb = radial_coefficients(b.n, b.l);
    cpp_rational beta = cpp_rational(1, a.n) + cpp_rational(1, b.n);
    cpp_rational sum = 0;
    for (size_t i = 0; i < ca.size(); i++) {
        for (size_t j = 0; j < cb.size(); j++) {
            int p = a.l + (int)i + b.l + (int)j + 3;
            sum += ca[i] * cb[j] * cpp_rational(factorial(p)) / rpow(beta, p + 1);
        }
    }
    // Angular factor (l+1)/sqrt((2l+1)(2l+3)) and both norms go under one root.
    cpp_rational under = norm_squared(a.n, a.l) * norm_squared(b.n, b.l) /
                         cpp_rational((2 * lmin + 1) * (2 * lmin + 3));
    cpp_int p = boost::multiprecision::numerator(under);
    cpp_int q = boost::multiprecision::denominator(under);
    cpp_int s, f;
    split_square(p * q, s, f);
    result.coefficient = sum * (lmin + 1) * cpp_rational(s, q);
    result.radicand = f;
    return result;
}

}  // namespace vqdyn
