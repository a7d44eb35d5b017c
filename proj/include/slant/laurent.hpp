#pragma once

/**
 * @file laurent.hpp
 * @brief Finitely supported Laurent series on the unit circle.
 *
 * A LaurentPoly stores the Fourier coefficients a_n of f(z) = sum a_n z^n,
 * |z| = 1, for finitely many n. All operations are closed on finite supports,
 * so the decimation calculus (W_k, its adjoint z -> z^k, the Riesz
 * projection) is exact up to floating round-off.
 */

#include <complex>
#include <map>
#include <string>

namespace slant {

using Complex = std::complex<double>;

/// Coefficients with modulus below this are dropped after every operation.
inline constexpr double kDropThreshold = 1e-14;

/// Order k >= 1 of the decimation operator.
class DecimationOrder {
public:
    explicit DecimationOrder(int k);
    int value() const noexcept { return k_; }
    friend bool operator==(DecimationOrder, DecimationOrder) = default;

private:
    int k_;
};

class LaurentPoly {
public:
    using Coefficients = std::map<int, Complex>;

    LaurentPoly() = default;
    explicit LaurentPoly(Coefficients coeffs);

    static LaurentPoly monomial(int n, Complex c = 1.0);
    static LaurentPoly constant(Complex c) { return monomial(0, c); }

    const Coefficients& coeffs() const noexcept { return coeffs_; }
    Complex coeff(int n) const;
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Support contained in n >= 0.
    bool is_analytic() const noexcept;
    /// Smallest / largest frequency in the support. Precondition: nonzero.
    int min_frequency() const;
    int max_frequency() const;
    std::size_t support_size() const noexcept { return coeffs_.size(); }

    /// Multiplication by z^m.
    LaurentPoly shifted(int m) const;
    Complex evaluate(Complex z) const;

    LaurentPoly& operator+=(const LaurentPoly& other);
    LaurentPoly& operator-=(const LaurentPoly& other);
    LaurentPoly& operator*=(Complex c);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, Complex c) { return a *= c; }
    friend LaurentPoly operator*(Complex c, LaurentPoly a) { return a *= c; }
    LaurentPoly operator-() const { return *this * Complex(-1.0); }

    /// Exact coefficient-wise equality.
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

    std::string to_string() const;

private:
    void normalize();
    Coefficients coeffs_;
};

/// Convolution of coefficient sequences (pointwise product on the circle).
LaurentPoly laurent_mul(const LaurentPoly& p, const LaurentPoly& q);
inline LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) { return laurent_mul(p, q); }

/// f -> conj(f) on |z| = 1: a_n -> conj(a_{-n}).
LaurentPoly conj_on_circle(const LaurentPoly& p);

/// Riesz projection: keep frequencies n >= 0.
LaurentPoly analytic_project(const LaurentPoly& p);

/// W_k: coefficient at n becomes the old coefficient at k*n.
LaurentPoly decimate(const LaurentPoly& p, DecimationOrder k);

/// W_k^*: f(z) -> f(z^k).
LaurentPoly stretch(const LaurentPoly& p, DecimationOrder k);

/// (S^*)^k on H^2. Throws InvalidInput when p has negative frequencies.
LaurentPoly backward_shift_pow(const LaurentPoly& p, DecimationOrder k);

/// <p, q> = sum_n p_n conj(q_n).
Complex inner_product(const LaurentPoly& p, const LaurentPoly& q);
double norm(const LaurentPoly& p);
/// max_n |p_n - q_n|.
double max_abs_diff(const LaurentPoly& p, const LaurentPoly& q);

}  // namespace slant
