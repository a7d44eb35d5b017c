#pragma once

/**
 * @file operators.hpp
 * @brief Compressions U = P_beta W_k M_phi restricted to K_alpha, their defect
 *        operators, membership tests, symbol recovery and related constructions.
 *
 * Matrices follow the model-space convention: entry (i, j) = <U e_j^alpha, e_i^beta>.
 * A rank-one operator f (x) g acts as h -> <h, g> f and has matrix f * g^H.
 */

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slant/laurent.hpp"
#include "slant/model_space.hpp"

namespace slant {

/// Source space K_alpha, target space K_beta and the decimation order k, with
/// the bases built once. The basis of K_{beta(z^k)} is built when beta(z^k)
/// is representable (always, except a Blaschke beta with a zero at 0).
class CompressionSpaces {
public:
    CompressionSpaces(const InnerFunction& alpha, const InnerFunction& beta, DecimationOrder k,
                      std::optional<int> truncation = std::nullopt);

    const ModelSpaceBasis& alpha() const noexcept { return alpha_; }
    const ModelSpaceBasis& beta() const noexcept { return beta_; }
    DecimationOrder k() const noexcept { return k_; }
    /// Throws InvalidInput when beta(z^k) has a multiple zero.
    const ModelSpaceBasis& stretched_beta() const;
    bool has_stretched_beta() const noexcept { return stretched_beta_.has_value(); }
    /// Loosest of the two backend tolerances.
    double tolerance() const noexcept { return std::max(alpha_.tolerance(), beta_.tolerance()); }
    bool exact() const noexcept { return alpha_.exact() && beta_.exact(); }
    std::string describe() const;

private:
    ModelSpaceBasis alpha_;
    ModelSpaceBasis beta_;
    DecimationOrder k_;
    std::optional<ModelSpaceBasis> stretched_beta_;
    std::string stretch_error_;
};

/// Which defect operator and which rank-one frame characterize the class.
enum class DefectVariant {
    plain,          ///< U - S_b U (S_a^*)^k,  frames k_0^b and k_{0,j}^a
    conjugated,     ///< U - S_b^* U S_a^k,    frames k~_0^b and k~_{0,j}^a
    mixed_adjoint,  ///< S_b^* U - U (S_a^*)^k, frames k~_0^b and k_{0,j}^a
    mixed_shift,    ///< S_b U - U S_a^k,      frames k_0^b and k~_{0,j}^a
};
inline constexpr DefectVariant kAllVariants[] = {DefectVariant::plain, DefectVariant::conjugated,
                                                 DefectVariant::mixed_adjoint, DefectVariant::mixed_shift};

/// Wire names: t35, c38, c310a, c310b.
std::string_view variant_name(DefectVariant v);
DefectVariant parse_variant(std::string_view name);

// --- builders --------------------------------------------------------------

OperatorMatrix build_compression(const LaurentPoly& phi, const ModelSpaceBasis& alpha,
                                 const ModelSpaceBasis& beta, DecimationOrder k);
OperatorMatrix build_compression(const LaurentPoly& phi, const CompressionSpaces& spaces);

/// A^{alpha,beta}_phi = P_beta M_phi restricted to K_alpha (the k = 1 compression).
OperatorMatrix build_truncated_toeplitz(const LaurentPoly& phi, const ModelSpaceBasis& alpha,
                                        const ModelSpaceBasis& beta);

/// Matrix of W_k : K_{beta(z^k)} -> K_beta.
OperatorMatrix decimation_matrix(const ModelSpaceBasis& stretched_beta, const ModelSpaceBasis& beta,
                                 DecimationOrder k);

// --- defects and membership -------------------------------------------------

OperatorMatrix defect(const OperatorMatrix& u, const CompressionSpaces& spaces, DefectVariant variant);

struct DefectDecomposition {
    DefectVariant variant = DefectVariant::plain;
    CoefficientVector chi;               ///< in K_alpha
    std::vector<CoefficientVector> psis; ///< psi_0..psi_{k-1}, in K_beta
    double residual = 0.0;
};

/// Right-hand side f_beta (x) chi + sum_j psi_j (x) g_j with the variant's frames.
OperatorMatrix assemble(const DefectDecomposition& d, const CompressionSpaces& spaces);

/// Closed-form chi and psi_j of the plain defect of U_phi.
DefectDecomposition defect_from_symbol(const LaurentPoly& phi, const CompressionSpaces& spaces);

inline constexpr double kDefaultMembershipTolerance = 1e-9;

struct MembershipReport {
    bool member = false;
    /// Frobenius norm of the least-squares misfit.
    double residual = 0.0;
    /// Effective threshold: tol * max(1, ||defect||_F).
    double tolerance = 0.0;
    DefectDecomposition decomposition;
    OperatorMatrix op;
};

MembershipReport membership(const OperatorMatrix& u, const CompressionSpaces& spaces, DefectVariant variant,
                            double tol = kDefaultMembershipTolerance);

/// A symbol phi with build_compression(phi) == report.op; throws InvalidInput
/// for non-members and NumericError when the matrix round trip fails.
LaurentPoly recover_symbol(const MembershipReport& report, const CompressionSpaces& spaces);

/// Recovery from a plain decomposition after shifting psi_j(0) to zero.
/// Exposes the normalized pieces for orthogonality checks.
struct RecoveredParts {
    DefectDecomposition normalized;
    LaurentPoly conj_chi;                  ///< conj(chi) on the circle
    std::vector<LaurentPoly> stretched_psi;///< j! psi_j(z^k) conj(z)^j
    LaurentPoly symbol() const;
};
RecoveredParts recover_parts(const DefectDecomposition& plain, const CompressionSpaces& spaces);

// --- symbol classes ---------------------------------------------------------

enum class CanonicalForm {
    analytic,  ///< conj(K_alpha) + K_{beta(z^k)}
    shifted,   ///< conj(K_alpha) + conj(z)^{k-1} K_{beta(z^k)}
};

LaurentPoly canonical_symbol(const LaurentPoly& phi, const CompressionSpaces& spaces, CanonicalForm form);

enum class ZeroClass {
    analytic_tail,  ///< conj(alpha H^2) + beta(z^k) H^2
    shifted_tail,   ///< conj(alpha H^2) + conj(z)^{k-1} beta(z^k) H^2
};

/// Sufficient condition for U_phi = 0: phi lies in the given symbol class.
bool zero_test_sufficient(const LaurentPoly& phi, const CompressionSpaces& spaces, ZeroClass cls);

/// Matrix-level test: the compression of phi vanishes within the backend tolerance.
bool compression_is_zero(const LaurentPoly& phi, const CompressionSpaces& spaces);

// --- conjugation and rank-one operators --------------------------------------

/// C_beta U C_alpha as a matrix.
OperatorMatrix conjugate_operator(const OperatorMatrix& u, const CompressionSpaces& spaces);

struct ConjugatedSymbol {
    OperatorMatrix matrix;
    LaurentPoly symbol;  ///< conj(z^{k-1} alpha phi) beta(z^k)
};
ConjugatedSymbol conjugate_operator(const LaurentPoly& phi, const CompressionSpaces& spaces);

enum class RankOneKind {
    tilde_k,  ///< k~_0^beta (x) k_{0,l}^alpha
    k_tilde,  ///< k_0^beta (x) k~_{0,l}^alpha
};

struct RankOne {
    OperatorMatrix matrix;
    LaurentPoly symbol;
};
RankOne rank_one(const CompressionSpaces& spaces, int l, RankOneKind kind);

/// f (x) g as a matrix: f * g^H.
OperatorMatrix outer(const CoefficientVector& f, const CoefficientVector& g);

/// Frobenius distance scaled by max(1, ||reference||_F).
double relative_distance(const OperatorMatrix& a, const OperatorMatrix& reference);

}  // namespace slant
