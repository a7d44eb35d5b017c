#pragma once

#include <initializer_list>
#include <random>
#include <utility>

#include "slant/laurent.hpp"
#include "slant/model_space.hpp"

namespace testing {

using slant::Complex;
using slant::LaurentPoly;

inline LaurentPoly poly(std::initializer_list<std::pair<int, Complex>> terms) {
    LaurentPoly::Coefficients c;
    for (const auto& [n, a] : terms) c[n] += a;
    return LaurentPoly(std::move(c));
}

inline LaurentPoly random_poly(std::mt19937_64& rng, int lo, int hi, int terms = 8) {
    std::uniform_int_distribution<int> freq(lo, hi);
    std::normal_distribution<double> g;
    LaurentPoly::Coefficients c;
    for (int t = 0; t < terms; ++t) {
        const double re = g(rng);
        const double im = g(rng);
        c[freq(rng)] += Complex(re, im);
    }
    return LaurentPoly(std::move(c));
}

inline slant::OperatorMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> g;
    slant::OperatorMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double re = g(rng);
            const double im = g(rng);
            m(i, j) = Complex(re, im);
        }
    return m;
}

inline slant::InnerFunction blaschke_ab() { return slant::InnerFunction::blaschke({0.5, -0.3}); }

}  // namespace testing
