#pragma once

/**
 * @file model_space.hpp
 * @brief Finite-dimensional model spaces K_alpha = H^2 (-) alpha H^2.
 *
 * Two backends:
 *  - alpha = z^N: orthonormal basis 1, z, ..., z^{N-1}, exact.
 *  - alpha a finite Blaschke product with distinct zeros w_0..w_{N-1}:
 *    Takenaka-Malmquist basis
 *        e_j(z) = sqrt(1-|w_j|^2) / (1 - conj(w_j) z) * prod_{i<j} b_{w_i}(z),
 *        b_w(z) = (z - w) / (1 - conj(w) z),
 *    stored as Taylor expansions truncated at order T.
 *
 * Coordinates of an element f of K_alpha are <f, e_j>; operators are
 * matrices with rows indexed by the target basis and columns by the source.
 */

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "slant/laurent.hpp"

namespace slant {

using CoefficientVector = Eigen::VectorXcd;
using OperatorMatrix = Eigen::MatrixXcd;

namespace tolerance {
inline constexpr double kExact = 1e-12;
inline constexpr double kBlaschke = 1e-8;
inline constexpr double kTail = 1e-12;
inline constexpr double kZeroSeparation = 1e-10;
inline constexpr double kUnimodular = 1e-8;
}  // namespace tolerance

/// Monomial z^N or c * prod b_{w_i}(z) with distinct zeros in the open disk.
class InnerFunction {
public:
    static InnerFunction monomial(int degree);
    static InnerFunction blaschke(std::vector<Complex> zeros, Complex constant = 1.0);

    bool is_monomial() const noexcept { return zeros_.empty(); }
    int degree() const noexcept { return degree_; }
    const std::vector<Complex>& zeros() const noexcept { return zeros_; }
    Complex constant() const noexcept { return constant_; }
    /// max |w_i|; 0 for monomials.
    double max_zero_modulus() const noexcept;

    Complex operator()(Complex z) const;
    /// Taylor coefficients 0..order (exact for monomials).
    LaurentPoly taylor(int order) const;

    std::string describe() const;

private:
    InnerFunction(int degree, std::vector<Complex> zeros, Complex constant);
    int degree_ = 1;
    std::vector<Complex> zeros_;
    Complex constant_{1.0, 0.0};
};

/// alpha(z^k). Blaschke zeros become all k-th roots of each zero.
/// Throws InvalidInput for a Blaschke product with a zero at the origin when k > 1.
InnerFunction stretch_inner(const InnerFunction& alpha, DecimationOrder k);

/// max(64, smallest T with rho^{T+1}/(1-rho) <= 1e-12), raised further until the
/// majorant tail of every basis vector is below 1e-12.
int default_truncation(const InnerFunction& alpha);

class ModelSpaceBasis {
public:
    const InnerFunction& inner() const noexcept { return inner_; }
    int dim() const noexcept { return static_cast<int>(vectors_.size()); }
    bool exact() const noexcept { return inner_.is_monomial(); }
    int truncation_order() const noexcept { return truncation_; }
    double tail_bound() const noexcept { return tail_bound_; }
    /// Comparison tolerance appropriate for this backend.
    double tolerance() const noexcept { return exact() ? tolerance::kExact : tolerance::kBlaschke; }

    const LaurentPoly& vector(int j) const { return vectors_.at(static_cast<std::size_t>(j)); }
    const std::vector<LaurentPoly>& vectors() const noexcept { return vectors_; }

    /// Matrix M with C_alpha v = M * conj(v) in basis coordinates.
    const OperatorMatrix& conjugation_matrix() const noexcept { return conjugation_; }
    /// Compressed shift S_alpha = P_alpha M_z restricted to K_alpha.
    const OperatorMatrix& shift() const noexcept { return shift_; }

    OperatorMatrix gram() const;

private:
    friend ModelSpaceBasis make_basis(const InnerFunction&, std::optional<int>);
    explicit ModelSpaceBasis(InnerFunction inner) : inner_(std::move(inner)) {}

    InnerFunction inner_;
    std::vector<LaurentPoly> vectors_;
    int truncation_ = 0;
    double tail_bound_ = 0.0;
    OperatorMatrix conjugation_;
    OperatorMatrix shift_;
};

/// Throws NumericError when an explicit truncation cannot meet the tail bound.
ModelSpaceBasis make_basis(const InnerFunction& alpha, std::optional<int> truncation = std::nullopt);

CoefficientVector project(const ModelSpaceBasis& basis, const LaurentPoly& f);
LaurentPoly reconstruct(const ModelSpaceBasis& basis, const CoefficientVector& v);

/// Coordinates of k^alpha_{w,n} = P_alpha [n! z^n / (1 - conj(w) z)^{n+1}].
CoefficientVector kernel(const ModelSpaceBasis& basis, Complex w, int n);
/// C_alpha k^alpha_{w,n}.
CoefficientVector conjugate_kernel(const ModelSpaceBasis& basis, Complex w, int n);

/// C_alpha f = alpha * conj(z f) on the circle; antilinear.
CoefficientVector conjugation(const ModelSpaceBasis& basis, const CoefficientVector& v);

struct CompressedShift {
    OperatorMatrix shift;
    OperatorMatrix adjoint;
};
CompressedShift compressed_shift(const ModelSpaceBasis& basis);

/// f^{(n)}(w) for an analytic Laurent polynomial.
Complex derivative_at(const LaurentPoly& f, Complex w, int n);

}  // namespace slant
