#include "slant/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "slant/errors.hpp"
#include "slant/operators.hpp"

namespace slant {

namespace {

using Rng = std::mt19937_64;

struct Context {
    const MenuEntry& entry;
    const CompressionSpaces& spaces;
    const std::optional<ModelSpaceBasis>& stretched_alpha;
    double fault = 0.0;
};

struct Trial {
    double residual = 0.0;
    bool ok = true;
    Json inputs = Json::object();
};

struct Property {
    std::string name;
    std::string anchor;
    /// Tolerance for exact (monomial) spaces and for the Blaschke backend.
    double exact_tol;
    double blaschke_tol;
    std::function<bool(const Context&)> applies;
    std::function<Trial(const Context&, Rng&, double tol)> run;
};

// --- random data -------------------------------------------------------------

Complex gaussian(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

LaurentPoly random_laurent(Rng& rng, int lo, int hi, int terms = 8) {
    std::uniform_int_distribution<int> freq(lo, hi);
    LaurentPoly::Coefficients c;
    for (int t = 0; t < terms; ++t) c[freq(rng)] += gaussian(rng);
    return LaurentPoly(std::move(c));
}

LaurentPoly random_symbol(const CompressionSpaces& s, Rng& rng) {
    return random_laurent(rng, -2 * s.alpha().dim(), 2 * s.k().value() * s.beta().dim());
}

CoefficientVector random_vector(Rng& rng, int n) {
    CoefficientVector v(n);
    for (int i = 0; i < n; ++i) v(i) = gaussian(rng);
    return v;
}

OperatorMatrix random_matrix(Rng& rng, int rows, int cols) {
    OperatorMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = gaussian(rng);
    return m;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Trial within(double residual, double tol, Json inputs = Json::object()) {
    return {residual, residual <= tol, std::move(inputs)};
}

Trial verdict(bool ok, Json inputs = Json::object()) { return {ok ? 0.0 : 1.0, ok, std::move(inputs)}; }

bool universal(const CompressionSpaces& s) { return s.k().value() >= s.alpha().dim() || s.beta().dim() == 1; }

Json symbol_inputs(const LaurentPoly& phi) { return Json{{"symbol", to_json(phi)}}; }
Json matrix_inputs(const OperatorMatrix& u) { return Json{{"matrix", matrix_to_json(u)}}; }

const auto always = [](const Context&) { return true; };

// Taylor series of the inner function, long enough for a Blaschke product to
// be accurate to the truncation tail.
LaurentPoly inner_series(const ModelSpaceBasis& b) {
    const InnerFunction& f = b.inner();
    return f.taylor(f.is_monomial() ? f.degree() + 1 : 2 * b.truncation_order() + 8);
}

// --- registry ----------------------------------------------------------------

std::vector<Property> build_registry() {
    std::vector<Property> reg;
    const double E = tolerance::kExact;
    const double B = tolerance::kBlaschke;

    // Decimation calculus on random Laurent polynomials.
    reg.push_back({"decimation_adjoint_pair", "decimation-adjoint", E, E, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const DecimationOrder k = c.spaces.k();
                       const LaurentPoly p = random_laurent(rng, -12, 12);
                       const LaurentPoly q = random_laurent(rng, -12, 12);
                       double r = std::abs(inner_product(decimate(p, k), q) - inner_product(p, stretch(q, k)));
                       const Complex z = std::polar(1.0, std::uniform_real_distribution<double>(0, 6.283)(rng));
                       r = std::max(r, std::abs(stretch(p, k).evaluate(z) - p.evaluate(std::pow(z, k.value()))));
                       return within(r, tol, Json{{"p", to_json(p)}, {"q", to_json(q)}});
                   }});
    reg.push_back({"stretch_multiplicative", "stretch-multiplicative", E, E, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const DecimationOrder k = c.spaces.k();
                       const LaurentPoly p = random_laurent(rng, -10, 10);
                       const LaurentPoly q = random_laurent(rng, -10, 10);
                       return within(max_abs_diff(stretch(p * q, k), stretch(p, k) * stretch(q, k)), tol,
                                     Json{{"p", to_json(p)}, {"q", to_json(q)}});
                   }});
    reg.push_back({"decimate_stretch_identity", "decimate-stretch-identity", E, E, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const DecimationOrder k = c.spaces.k();
                       const LaurentPoly p = random_laurent(rng, -15, 15, 12);
                       LaurentPoly::Coefficients kept;
                       for (const auto& [n, a] : p.coeffs())
                           if (n % k.value() == 0) kept.emplace(n, a);
                       const double r = std::max(max_abs_diff(decimate(stretch(p, k), k), p),
                                                 max_abs_diff(stretch(decimate(p, k), k), LaurentPoly(kept)));
                       return within(r, tol, Json{{"p", to_json(p)}});
                   }});
    reg.push_back({"decimation_commutes_with_conjugation", "decimation-commutes-with-conjugation", E, E, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const DecimationOrder k = c.spaces.k();
                       const LaurentPoly p = random_laurent(rng, -15, 15, 10);
                       const double r =
                           std::max(max_abs_diff(decimate(conj_on_circle(p), k), conj_on_circle(decimate(p, k))),
                                    max_abs_diff(stretch(conj_on_circle(p), k), conj_on_circle(stretch(p, k))));
                       return within(r, tol, Json{{"p", to_json(p)}});
                   }});
    reg.push_back({"riesz_projection_reduces_decimation", "riesz-projection-reduces-decimation", E, E, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const DecimationOrder k = c.spaces.k();
                       const LaurentPoly p = random_laurent(rng, -15, 15, 10);
                       const double r =
                           std::max(max_abs_diff(analytic_project(decimate(p, k)), decimate(analytic_project(p), k)),
                                    max_abs_diff(analytic_project(stretch(p, k)), stretch(analytic_project(p), k)));
                       return within(r, tol, Json{{"p", to_json(p)}});
                   }});
    reg.push_back({"multiplication_intertwining", "multiplication-intertwining", E, E, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const DecimationOrder k = c.spaces.k();
                       const LaurentPoly phi = random_laurent(rng, -6, 6);
                       const LaurentPoly f = random_laurent(rng, -15, 15, 10);
                       const double r = max_abs_diff(decimate(stretch(phi, k) * f, k), phi * decimate(f, k));
                       return within(r, tol, Json{{"phi", to_json(phi)}, {"f", to_json(f)}});
                   }});
    reg.push_back({"model_projection_intertwining", "model-projection-intertwining", E, B,
                   [](const Context& c) { return c.stretched_alpha.has_value(); },
                   [](const Context& c, Rng& rng, double tol) {
                       const DecimationOrder k = c.spaces.k();
                       const ModelSpaceBasis& a = c.spaces.alpha();
                       const ModelSpaceBasis& ak = *c.stretched_alpha;
                       const LaurentPoly f = random_laurent(rng, -8, 3 * k.value() * a.dim(), 10);
                       const LaurentPoly lhs = reconstruct(a, project(a, decimate(f, k)));
                       const LaurentPoly rhs = decimate(reconstruct(ak, project(ak, f)), k);
                       return within(max_abs_diff(lhs, rhs), tol, Json{{"f", to_json(f)}});
                   }});
    reg.push_back({"stretched_inner_is_inner", "stretched-inner-function", E, B,
                   [](const Context& c) { return c.stretched_alpha.has_value(); },
                   [](const Context& c, Rng& rng, double tol) {
                       const InnerFunction& a = c.spaces.alpha().inner();
                       const InnerFunction& ak = c.stretched_alpha->inner();
                       const double theta = std::uniform_real_distribution<double>(0, 6.283)(rng);
                       const Complex z = std::polar(1.0, theta);
                       const double r = std::max(std::abs(std::abs(ak(z)) - 1.0),
                                                 std::abs(ak(z) - a(std::pow(z, c.spaces.k().value()))));
                       return within(r, tol, Json{{"theta", theta}});
                   }});
    reg.push_back({"backward_shift_power_formula", "backward-shift-power-formula", E, E, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const int k = c.spaces.k().value();
                       const LaurentPoly p = random_laurent(rng, 0, 14, 10);
                       LaurentPoly rhs = p.shifted(-k);
                       for (int j = 0; j < k; ++j) {
                           const LaurentPoly kernel_0j = LaurentPoly::monomial(j, factorial(j));
                           rhs -= (inner_product(p, kernel_0j) / factorial(j)) * LaurentPoly::monomial(j - k);
                       }
                       return within(max_abs_diff(backward_shift_pow(p, c.spaces.k()), rhs), tol,
                                     Json{{"p", to_json(p)}});
                   }});
    reg.push_back({"stretch_backward_shift_identity", "stretch-backward-shift-identity", E, E, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const DecimationOrder k = c.spaces.k();
                       const LaurentPoly f = random_laurent(rng, 0, 14, 10);
                       const LaurentPoly lhs =
                           stretch(f, k) - stretch(backward_shift_pow(f, DecimationOrder(1)), k).shifted(k.value());
                       return within(max_abs_diff(lhs, LaurentPoly::constant(f.coeff(0))), tol,
                                     Json{{"f", to_json(f)}});
                   }});
    reg.push_back({"decimated_monomial_stretch", "decimated-monomial-stretch", E, E, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const DecimationOrder k = c.spaces.k();
                       const LaurentPoly f = random_laurent(rng, -10, 10);
                       double r = 0.0;
                       for (int m = -(k.value() - 1); m < k.value(); ++m) {
                           const LaurentPoly got = decimate(stretch(f, k).shifted(m), k);
                           r = std::max(r, max_abs_diff(got, m == 0 ? f : LaurentPoly{}));
                       }
                       return within(r, tol, Json{{"f", to_json(f)}});
                   }});

    // Model space.
    reg.push_back({"reproducing_kernels", "reproducing-kernels", 1e-8, B, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const ModelSpaceBasis& a = c.spaces.alpha();
                       const CoefficientVector v = random_vector(rng, a.dim());
                       const Complex w = std::polar(std::uniform_real_distribution<double>(0.0, 0.7)(rng),
                                                    std::uniform_real_distribution<double>(0, 6.283)(rng));
                       const LaurentPoly f = reconstruct(a, v);
                       double r = 0.0;
                       for (int n = 0; n <= 2; ++n) {
                           const Complex lhs = kernel(a, w, n).dot(v);  // <f, k> = k^H v
                           r = std::max(r, std::abs(lhs - derivative_at(f, w, n)));
                       }
                       // closed form of the n = 0 kernel
                       const CoefficientVector kw = kernel(a, w, 0);
                       const Complex z = std::polar(0.5, 1.0);
                       const Complex closed =
                           (1.0 - std::conj(a.inner()(w)) * a.inner()(z)) / (1.0 - std::conj(w) * z);
                       r = std::max(r, std::abs(reconstruct(a, kw).evaluate(z) - closed));
                       return within(r, tol, Json{{"w", Json::array({w.real(), w.imag()})}, {"f", to_json(v)}});
                   }});
    reg.push_back({"conjugation_involution", "model-space-conjugation", 1e-10, 1e-10, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const ModelSpaceBasis& a = c.spaces.alpha();
                       const CoefficientVector v = random_vector(rng, a.dim());
                       const CoefficientVector w = random_vector(rng, a.dim());
                       const double scale = std::max(1.0, v.norm() * w.norm());
                       double r = (conjugation(a, conjugation(a, v)) - v).norm() / std::max(1.0, v.norm());
                       // <Cv, Cw> = <w, v>
                       const Complex lhs = conjugation(a, w).dot(conjugation(a, v));
                       r = std::max(r, std::abs(lhs - v.dot(w)) / scale);
                       return within(r, tol, Json{{"v", to_json(v)}, {"w", to_json(w)}});
                   }});
    reg.push_back({"compressed_shift_symmetry", "compressed-shift", 1e-10, 1e-10, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const ModelSpaceBasis& a = c.spaces.alpha();
                       const CompressedShift s = compressed_shift(a);
                       const CoefficientVector v = random_vector(rng, a.dim());
                       // C S C v = S^* v
                       const CoefficientVector csc = conjugation(a, s.shift * conjugation(a, v));
                       double r = (csc - s.adjoint * v).norm() / std::max(1.0, v.norm());
                       const LaurentPoly back = backward_shift_pow(reconstruct(a, v), DecimationOrder(1));
                       r = std::max(r, (project(a, back) - s.adjoint * v).norm() / std::max(1.0, v.norm()));
                       return within(r, tol, Json{{"v", to_json(v)}});
                   }});

    // Matrices of compressions.
    reg.push_back({"compression_matrix_pattern", "compression-matrix-pattern", E, E,
                   [](const Context& c) { return c.spaces.exact(); },
                   [](const Context& c, Rng& rng, double tol) {
                       const LaurentPoly phi = random_symbol(c.spaces, rng);
                       const OperatorMatrix u = build_compression(phi, c.spaces);
                       double r = 0.0;
                       for (int i = 0; i < u.rows(); ++i)
                           for (int j = 0; j < u.cols(); ++j)
                               r = std::max(r, std::abs(u(i, j) - phi.coeff(c.spaces.k().value() * i - j)));
                       return within(r, tol, symbol_inputs(phi));
                   }});
    reg.push_back({"truncated_toeplitz_factorization", "ttoeplitz-factorization", 1e-10, B,
                   [](const Context& c) { return c.spaces.has_stretched_beta(); },
                   [](const Context& c, Rng& rng, double tol) {
                       const LaurentPoly phi = random_symbol(c.spaces, rng);
                       const OperatorMatrix u = build_compression(phi, c.spaces);
                       const ModelSpaceBasis& bk = c.spaces.stretched_beta();
                       const OperatorMatrix f = decimation_matrix(bk, c.spaces.beta(), c.spaces.k()) *
                                                build_truncated_toeplitz(phi, c.spaces.alpha(), bk);
                       return within(relative_distance(f, u), tol, symbol_inputs(phi));
                   }});

    // Zero symbols and canonical symbols.
    reg.push_back({"zero_symbol_analytic_class", "zero-symbol-analytic-class", E, B,
                   [](const Context& c) { return c.spaces.has_stretched_beta(); },
                   [](const Context& c, Rng& rng, double tol) {
                       const LaurentPoly h1 = random_laurent(rng, 0, 4, 4);
                       const LaurentPoly h2 = random_laurent(rng, 0, 4, 4);
                       const LaurentPoly beta_k = stretch(inner_series(c.spaces.beta()), c.spaces.k());
                       const LaurentPoly phi =
                           conj_on_circle(inner_series(c.spaces.alpha()) * h1) + beta_k * h2;
                       const bool in_class = zero_test_sufficient(phi, c.spaces, ZeroClass::analytic_tail);
                       const double r = build_compression(phi, c.spaces).norm() / std::max(1.0, norm(phi));
                       // soundness on a generic symbol as well
                       const LaurentPoly generic = random_symbol(c.spaces, rng);
                       const bool generic_claim = zero_test_sufficient(generic, c.spaces, ZeroClass::analytic_tail);
                       const bool sound = !generic_claim || compression_is_zero(generic, c.spaces);
                       return Trial{r, in_class && r <= tol && sound, symbol_inputs(phi)};
                   }});
    reg.push_back({"zero_symbol_shifted_class", "zero-symbol-shifted-class", E, B,
                   [](const Context& c) { return c.spaces.has_stretched_beta(); },
                   [](const Context& c, Rng& rng, double tol) {
                       const int k = c.spaces.k().value();
                       const LaurentPoly h1 = random_laurent(rng, 0, 4, 4);
                       const LaurentPoly h2 = random_laurent(rng, 0, 4, 4);
                       const LaurentPoly beta_k = stretch(inner_series(c.spaces.beta()), c.spaces.k());
                       const LaurentPoly phi = conj_on_circle(inner_series(c.spaces.alpha()) * h1) +
                                               (beta_k * h2).shifted(-(k - 1));
                       const bool in_class = zero_test_sufficient(phi, c.spaces, ZeroClass::shifted_tail);
                       const double r = build_compression(phi, c.spaces).norm() / std::max(1.0, norm(phi));
                       const LaurentPoly generic = random_symbol(c.spaces, rng);
                       const bool generic_claim = zero_test_sufficient(generic, c.spaces, ZeroClass::shifted_tail);
                       const bool sound = !generic_claim || compression_is_zero(generic, c.spaces);
                       return Trial{r, in_class && r <= tol && sound, symbol_inputs(phi)};
                   }});
    for (const auto form : {CanonicalForm::analytic, CanonicalForm::shifted}) {
        const bool analytic = form == CanonicalForm::analytic;
        reg.push_back({analytic ? "canonical_analytic_symbol" : "canonical_shifted_symbol",
                       analytic ? "canonical-analytic-symbol" : "canonical-shifted-symbol", 1e-9, 1e-9,
                       [](const Context& c) { return c.spaces.has_stretched_beta(); },
                       [form, analytic](const Context& c, Rng& rng, double tol) {
                           const LaurentPoly phi = random_symbol(c.spaces, rng);
                           const LaurentPoly canon = canonical_symbol(phi, c.spaces, form);
                           double r = relative_distance(build_compression(canon, c.spaces),
                                                        build_compression(phi, c.spaces));
                           bool window = true;
                           if (c.spaces.exact() && !canon.is_zero()) {
                               const int m = c.spaces.alpha().dim();
                               const int kn = c.spaces.k().value() * c.spaces.beta().dim();
                               const int k = c.spaces.k().value();
                               // conj(K_alpha) spans [-(m-1), 0]; the shifted part reaches down to -(k-1)
                               const int lo = analytic ? -(m - 1) : -std::max(m - 1, k - 1);
                               const int hi = analytic ? kn - 1 : kn - k;
                               window = canon.min_frequency() >= lo && canon.max_frequency() <= hi;
                           }
                           return Trial{r, r <= tol && window, symbol_inputs(phi)};
                       }});
    }

    // Conjugation.
    reg.push_back({"conjugation_symbol_transform", "conjugation-symbol-transform", 1e-9, 1e-9, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const LaurentPoly phi = random_symbol(c.spaces, rng);
                       const ConjugatedSymbol cs = conjugate_operator(phi, c.spaces);
                       double r = relative_distance(build_compression(cs.symbol, c.spaces), cs.matrix);
                       const OperatorMatrix u = build_compression(phi, c.spaces);
                       r = std::max(r, relative_distance(conjugate_operator(cs.matrix, c.spaces), u));
                       return within(r, tol, symbol_inputs(phi));
                   }});
    reg.push_back({"conjugation_membership_invariance", "conjugation-membership-invariance", 0.0, 0.0, always,
                   [](const Context& c, Rng& rng, double) {
                       const bool from_symbol = std::bernoulli_distribution(0.5)(rng);
                       const OperatorMatrix u =
                           from_symbol ? build_compression(random_symbol(c.spaces, rng), c.spaces)
                                       : random_matrix(rng, c.spaces.beta().dim(), c.spaces.alpha().dim());
                       const bool a = membership(u, c.spaces, DefectVariant::plain).member;
                       const bool b =
                           membership(conjugate_operator(u, c.spaces), c.spaces, DefectVariant::plain).member;
                       return verdict(a == b && (!from_symbol || a), matrix_inputs(u));
                   }});

    // Defect identities and characterization.
    reg.push_back({"defect_closed_form", "defect-closed-form", 1e-10, B, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const LaurentPoly phi = random_symbol(c.spaces, rng);
                       const OperatorMatrix d = defect(build_compression(phi, c.spaces), c.spaces, DefectVariant::plain);
                       const OperatorMatrix a = assemble(defect_from_symbol(phi, c.spaces), c.spaces);
                       return within(relative_distance(a, d), tol, symbol_inputs(phi));
                   }});
    reg.push_back({"defect_construction", "defect-construction", 1e-10, B, always,
                   [](const Context& c, Rng& rng, double tol) {
                       // any chi, psi_j give a defect realized by the symbol built from them
                       DefectDecomposition dec;
                       dec.chi = random_vector(rng, c.spaces.alpha().dim());
                       for (int j = 0; j < c.spaces.k().value(); ++j)
                           dec.psis.push_back(random_vector(rng, c.spaces.beta().dim()));
                       const LaurentPoly phi = recover_parts(dec, c.spaces).symbol();
                       const OperatorMatrix d = defect(build_compression(phi, c.spaces), c.spaces, DefectVariant::plain);
                       return within(relative_distance(d, assemble(dec, c.spaces)), tol, symbol_inputs(phi));
                   }});
    reg.push_back({"defect_characterization", "defect-characterization", 1e-10, B, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const LaurentPoly phi = random_symbol(c.spaces, rng);
                       OperatorMatrix u = build_compression(phi, c.spaces);
                       if (c.fault > 0.0) u(0, 0) += c.fault;
                       const MembershipReport rep = membership(u, c.spaces, DefectVariant::plain);
                       return Trial{rep.residual, rep.member && rep.residual <= tol,
                                    Json{{"symbol", to_json(phi)}, {"matrix", matrix_to_json(u)}}};
                   }});
    reg.push_back({"defect_characterization_negative_control", "defect-characterization", 0.0, 0.0,
                   [](const Context& c) { return !universal(c.spaces); },
                   [](const Context& c, Rng& rng, double) {
                       OperatorMatrix u = build_compression(random_symbol(c.spaces, rng), c.spaces);
                       if (c.spaces.exact()) {
                           u(0, 0) += 1e-3;
                       } else {
                           const OperatorMatrix dir = random_matrix(rng, u.rows(), u.cols());
                           u += 1e-3 * dir / dir.norm();
                       }
                       bool rejected = true;
                       for (DefectVariant v : kAllVariants) rejected = rejected && !membership(u, c.spaces, v).member;
                       return verdict(rejected, matrix_inputs(u));
                   }});
    reg.push_back({"symbol_recovery", "symbol-recovery", 1e-9, 1e-9, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const LaurentPoly phi = random_symbol(c.spaces, rng);
                       const OperatorMatrix u = build_compression(phi, c.spaces);
                       const MembershipReport rep = membership(u, c.spaces, DefectVariant::plain);
                       if (!rep.member) return verdict(false, symbol_inputs(phi));
                       const LaurentPoly rec = recover_parts(rep.decomposition, c.spaces).symbol();
                       return within(relative_distance(build_compression(rec, c.spaces), u), tol, symbol_inputs(phi));
                   }});
    reg.push_back({"orthogonal_symbol_decomposition", "orthogonal-symbol-decomposition", 1e-10, 1e-10, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const LaurentPoly phi = random_symbol(c.spaces, rng);
                       const RecoveredParts parts = recover_parts(defect_from_symbol(phi, c.spaces), c.spaces);
                       std::vector<LaurentPoly> pieces{parts.conj_chi};
                       pieces.insert(pieces.end(), parts.stretched_psi.begin(), parts.stretched_psi.end());
                       double r = 0.0;
                       for (std::size_t i = 0; i < pieces.size(); ++i)
                           for (std::size_t j = i + 1; j < pieces.size(); ++j)
                               r = std::max(r, std::abs(inner_product(pieces[i], pieces[j])) /
                                                   std::max(1.0, norm(pieces[i]) * norm(pieces[j])));
                       const CoefficientVector k0 = kernel(c.spaces.beta(), 0.0, 0);
                       for (const auto& psi : parts.normalized.psis) r = std::max(r, std::abs(k0.dot(psi)));
                       return within(r, tol, symbol_inputs(phi));
                   }});
    reg.push_back({"conjugated_defect_characterization", "conjugated-defect-characterization", 1e-10, B, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const LaurentPoly phi = random_symbol(c.spaces, rng);
                       const MembershipReport rep =
                           membership(build_compression(phi, c.spaces), c.spaces, DefectVariant::conjugated);
                       return Trial{rep.residual, rep.member && rep.residual <= tol, symbol_inputs(phi)};
                   }});
    reg.push_back({"conjugated_symbol_recovery", "conjugated-symbol-recovery", 1e-9, 1e-9, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const LaurentPoly phi = random_symbol(c.spaces, rng);
                       const OperatorMatrix u = build_compression(phi, c.spaces);
                       const MembershipReport rep = membership(u, c.spaces, DefectVariant::conjugated);
                       if (!rep.member) return verdict(false, symbol_inputs(phi));
                       try {
                           const LaurentPoly rec = recover_symbol(rep, c.spaces);
                           return within(relative_distance(build_compression(rec, c.spaces), u), tol,
                                         symbol_inputs(phi));
                       } catch (const NumericError&) {
                           return verdict(false, symbol_inputs(phi));
                       }
                   }});
    reg.push_back({"variant_equivalence", "variant-equivalence", 0.0, 0.0, always,
                   [](const Context& c, Rng& rng, double) {
                       const bool from_symbol = std::bernoulli_distribution(0.5)(rng);
                       const OperatorMatrix u =
                           from_symbol ? build_compression(random_symbol(c.spaces, rng), c.spaces)
                                       : random_matrix(rng, c.spaces.beta().dim(), c.spaces.alpha().dim());
                       int members = 0;
                       bool separated = true;
                       for (DefectVariant v : kAllVariants) {
                           const MembershipReport rep = membership(u, c.spaces, v);
                           members += rep.member ? 1 : 0;
                           if (!rep.member && rep.residual <= 10.0 * rep.tolerance) separated = false;
                       }
                       const bool agree = members == 0 || members == 4;
                       return verdict(agree && separated && (!from_symbol || members == 4), matrix_inputs(u));
                   }});
    reg.push_back({"universality", "universality", 1e-10, B, [](const Context& c) { return universal(c.spaces); },
                   [](const Context& c, Rng& rng, double tol) {
                       const OperatorMatrix u = random_matrix(rng, c.spaces.beta().dim(), c.spaces.alpha().dim());
                       const MembershipReport rep = membership(u, c.spaces, DefectVariant::plain);
                       return Trial{rep.residual, rep.member && rep.residual <= tol, matrix_inputs(u)};
                   }});
    reg.push_back({"rank_one_membership", "rank-one-membership", 1e-10, B, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const int l = std::uniform_int_distribution<int>(0, c.spaces.k().value() - 1)(rng);
                       const RankOneKind kind =
                           std::bernoulli_distribution(0.5)(rng) ? RankOneKind::tilde_k : RankOneKind::k_tilde;
                       const RankOne r1 = rank_one(c.spaces, l, kind);
                       const MembershipReport rep = membership(r1.matrix, c.spaces, DefectVariant::plain);
                       return Trial{rep.residual, rep.member && rep.residual <= tol,
                                    Json{{"l", l}, {"kind", kind == RankOneKind::tilde_k ? "tilde_k" : "k_tilde"}}};
                   }});
    reg.push_back({"rank_one_symbols", "rank-one-symbols", 1e-9, 1e-9, always,
                   [](const Context& c, Rng& rng, double tol) {
                       const int l = std::uniform_int_distribution<int>(0, c.spaces.k().value() - 1)(rng);
                       const RankOneKind kind =
                           std::bernoulli_distribution(0.5)(rng) ? RankOneKind::tilde_k : RankOneKind::k_tilde;
                       const RankOne r1 = rank_one(c.spaces, l, kind);
                       return within(relative_distance(build_compression(r1.symbol, c.spaces), r1.matrix), tol,
                                     Json{{"l", l}, {"kind", kind == RankOneKind::tilde_k ? "tilde_k" : "k_tilde"}});
                   }});
    return reg;
}

const std::vector<Property>& registry() {
    static const std::vector<Property> reg = build_registry();
    return reg;
}

std::string format_residual(double r) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << r;
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

std::string MenuEntry::label() const {
    return "(" + alpha.describe() + ", " + beta.describe() + ", k=" + std::to_string(k) + ")";
}

std::vector<MenuEntry> default_menu() {
    return {
        {InnerFunction::monomial(4), InnerFunction::monomial(3), 2},
        {InnerFunction::monomial(4), InnerFunction::monomial(3), 5},
        {InnerFunction::monomial(3), InnerFunction::monomial(3), 2},
        {InnerFunction::blaschke({0.5, -0.3}), InnerFunction::monomial(3), 2},
    };
}

void SuiteConfig::validate() const {
    if (trials < 1) throw InvalidInput("trials must be >= 1");
    if (menu.empty()) throw InvalidInput("space menu must not be empty");
    for (const auto& e : menu)
        if (e.k < 1) throw InvalidInput("menu entry has k < 1");
    const auto names = registered_properties();
    const auto known = [&](const std::string& name) {
        return std::find(names.begin(), names.end(), name) != names.end();
    };
    for (const auto& name : only)
        if (!known(name)) throw InvalidInput("unknown property '" + name + "'");
    for (const auto& [name, tol] : tolerance_overrides) {
        if (!known(name)) throw InvalidInput("tolerance override for unknown property '" + name + "'");
        if (!(tol >= 0.0)) throw InvalidInput("tolerance override must be nonnegative");
    }
    if (fault_injection < 0.0) throw InvalidInput("fault injection must be nonnegative");
}

bool SuiteReport::all_passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.fails == 0; });
}

const PropertyResult* SuiteReport::find(const std::string& name) const {
    for (const auto& p : properties)
        if (p.name == name) return &p;
    return nullptr;
}

Json SuiteReport::to_json() const {
    Json props = Json::array();
    for (const auto& p : properties) {
        Json j{{"name", p.name},
               {"anchor", p.anchor},
               {"trials", p.trials},
               {"passes", p.passes},
               {"fails", p.fails},
               {"worst_residual", p.worst_residual}};
        j["counterexample"] = p.counterexample ? *p.counterexample : Json(nullptr);
        props.push_back(std::move(j));
    }
    return Json{{"seed", seed},
                {"trials_per_entry", trials_per_entry},
                {"menu", menu},
                {"properties", props},
                {"all_passed", all_passed()}};
}

std::string SuiteReport::to_text() const {
    std::size_t name_w = 8;
    std::size_t anchor_w = 6;
    for (const auto& p : properties) {
        name_w = std::max(name_w, p.name.size());
        anchor_w = std::max(anchor_w, p.anchor.size());
    }
    std::ostringstream os;
    os << "seed " << seed << ", " << trials_per_entry << " trials per menu entry\n";
    for (const auto& m : menu) os << "  menu " << m << "\n";
    os << std::left << std::setw(static_cast<int>(name_w)) << "property" << "  " << std::setw(static_cast<int>(anchor_w))
       << "anchor" << "  " << std::right << std::setw(6) << "trials" << std::setw(6) << "pass" << std::setw(6) << "fail"
       << "  worst\n";
    for (const auto& p : properties) {
        os << std::left << std::setw(static_cast<int>(name_w)) << p.name << "  "
           << std::setw(static_cast<int>(anchor_w)) << p.anchor << "  " << std::right << std::setw(6) << p.trials
           << std::setw(6) << p.passes << std::setw(6) << p.fails << "  " << format_residual(p.worst_residual) << "\n";
    }
    os << (all_passed() ? "ALL PASS" : "FAILURES") << "\n";
    return os.str();
}

SuiteReport run_suite(const SuiteConfig& config) {
    config.validate();
    const auto missing = missing_anchors();
    if (!missing.empty()) throw NumericError("property registry misses anchor '" + missing.front() + "'");

    struct Prepared {
        CompressionSpaces spaces;
        std::optional<ModelSpaceBasis> stretched_alpha;
    };
    std::vector<Prepared> prepared;
    for (const auto& e : config.menu) {
        Prepared p{CompressionSpaces(e.alpha, e.beta, DecimationOrder(e.k)), std::nullopt};
        try {
            p.stretched_alpha.emplace(make_basis(stretch_inner(e.alpha, DecimationOrder(e.k))));
        } catch (const InvalidInput&) {
        }
        prepared.push_back(std::move(p));
    }

    SuiteReport report;
    report.seed = config.seed;
    report.trials_per_entry = config.trials;
    for (const auto& e : config.menu) report.menu.push_back(e.label());

    const auto& reg = registry();
    for (std::size_t pi = 0; pi < reg.size(); ++pi) {
        const Property& prop = reg[pi];
        if (!config.only.empty() && std::find(config.only.begin(), config.only.end(), prop.name) == config.only.end())
            continue;
        PropertyResult res{prop.name, prop.anchor, 0, 0, 0, 0.0, std::nullopt};
        for (std::size_t ei = 0; ei < config.menu.size(); ++ei) {
            const Context ctx{config.menu[ei], prepared[ei].spaces, prepared[ei].stretched_alpha,
                              prop.name == "defect_characterization" ? config.fault_injection : 0.0};
            if (!prop.applies(ctx)) continue;
            double tol = ctx.spaces.exact() ? prop.exact_tol : prop.blaschke_tol;
            if (auto it = config.tolerance_overrides.find(prop.name); it != config.tolerance_overrides.end())
                tol = it->second;

            std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                              static_cast<std::uint32_t>(pi), static_cast<std::uint32_t>(ei)};
            Rng rng(seq);
            for (int t = 0; t < config.trials; ++t) {
                Trial trial;
                try {
                    trial = prop.run(ctx, rng, tol);
                } catch (const std::exception& ex) {
                    trial = Trial{std::numeric_limits<double>::infinity(), false, Json{{"exception", ex.what()}}};
                }
                ++res.trials;
                res.worst_residual = std::max(res.worst_residual, trial.residual);
                if (trial.ok) {
                    ++res.passes;
                } else {
                    ++res.fails;
                    if (!res.counterexample) {
                        Json dump = trial.inputs;
                        dump["menu"] = config.menu[ei].label();
                        dump["alpha"] = slant::to_json(config.menu[ei].alpha);
                        dump["beta"] = slant::to_json(config.menu[ei].beta);
                        dump["k"] = config.menu[ei].k;
                        dump["trial"] = t;
                        dump["residual"] = trial.residual;
                        dump["tolerance"] = tol;
                        res.counterexample = std::move(dump);
                    }
                }
            }
        }
        report.properties.push_back(std::move(res));
    }
    return report;
}

std::vector<std::string> registered_properties() {
    std::vector<std::string> out;
    for (const auto& p : registry()) out.push_back(p.name);
    return out;
}

std::vector<std::string> registered_anchors() {
    std::set<std::string> s;
    for (const auto& p : registry()) s.insert(p.anchor);
    return {s.begin(), s.end()};
}

std::vector<std::string> required_anchors() {
    return {
        "decimation-adjoint",
        "stretch-multiplicative",
        "decimate-stretch-identity",
        "decimation-commutes-with-conjugation",
        "riesz-projection-reduces-decimation",
        "multiplication-intertwining",
        "model-projection-intertwining",
        "stretched-inner-function",
        "compression-matrix-pattern",
        "zero-symbol-analytic-class",
        "canonical-analytic-symbol",
        "ttoeplitz-factorization",
        "conjugation-symbol-transform",
        "conjugation-membership-invariance",
        "zero-symbol-shifted-class",
        "canonical-shifted-symbol",
        "backward-shift-power-formula",
        "stretch-backward-shift-identity",
        "reproducing-kernels",
        "defect-closed-form",
        "decimated-monomial-stretch",
        "defect-construction",
        "defect-characterization",
        "symbol-recovery",
        "orthogonal-symbol-decomposition",
        "conjugated-defect-characterization",
        "conjugated-symbol-recovery",
        "variant-equivalence",
        "universality",
        "rank-one-membership",
        "rank-one-symbols",
    };
}

std::vector<std::string> missing_anchors() {
    const auto have = registered_anchors();
    std::vector<std::string> missing;
    for (const auto& a : required_anchors())
        if (!std::binary_search(have.begin(), have.end(), a)) missing.push_back(a);
    return missing;
}

}  // namespace slant
