#include "slant/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "slant/errors.hpp"

namespace slant {

namespace {

using Series = std::vector<Complex>;

Series series_mul(const Series& a, const Series& b) {
    const std::size_t len = a.size();
    Series out(len, Complex{});
    for (std::size_t i = 0; i < len; ++i) {
        if (a[i] == Complex{}) continue;
        for (std::size_t j = 0; i + j < len; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<double> series_mul(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t len = a.size();
    std::vector<double> out(len, 0.0);
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; i + j < len; ++j) out[i + j] += a[i] * b[j];
    return out;
}

// 1 / (1 - conj(w) z)
Series geometric(Complex w, std::size_t len) {
    Series out(len);
    Complex p = 1.0;
    for (auto& c : out) {
        c = p;
        p *= std::conj(w);
    }
    return out;
}

// (z - w) / (1 - conj(w) z)
Series blaschke_factor(Complex w, std::size_t len) {
    Series out = geometric(w, len);
    Series shifted(len, Complex{});
    for (std::size_t n = 1; n < len; ++n) shifted[n] = out[n - 1];
    for (std::size_t n = 0; n < len; ++n) out[n] = shifted[n] - w * out[n];
    return out;
}

LaurentPoly to_poly(const Series& s) {
    LaurentPoly::Coefficients c;
    for (std::size_t n = 0; n < s.size(); ++n)
        if (s[n] != Complex{}) c.emplace(static_cast<int>(n), s[n]);
    return LaurentPoly(std::move(c));
}

// Termwise majorants |coefficients| of the Takenaka-Malmquist factors.
std::vector<double> abs_geometric(double r, double scale, std::size_t len) {
    std::vector<double> out(len);
    double p = scale;
    for (auto& c : out) {
        c = p;
        p *= r;
    }
    return out;
}

std::vector<double> abs_blaschke_factor(double r, std::size_t len) {
    std::vector<double> out(len, 0.0);
    out[0] = r;
    double p = 1.0 - r * r;
    for (std::size_t n = 1; n < len; ++n) {
        out[n] = p;
        p *= r;
    }
    return out;
}

double geometric_tail(double rho, int truncation) {
    if (rho == 0.0) return 0.0;
    return std::pow(rho, truncation + 1) / (1.0 - rho);
}

// Largest tail sum_{n>T} |e_j,n| over basis vectors, from the majorant series
// evaluated to 4T plus a ratio-test remainder.
double majorant_tail(const InnerFunction& alpha, int truncation) {
    const std::size_t len = static_cast<std::size_t>(4 * truncation + 2);
    std::vector<double> prod(len, 0.0);
    prod[0] = 1.0;
    double worst = 0.0;
    for (Complex w : alpha.zeros()) {
        const double r = std::abs(w);
        const auto vec = series_mul(abs_geometric(r, std::sqrt(1.0 - r * r), len), prod);
        double tail = 0.0;
        for (std::size_t n = static_cast<std::size_t>(truncation) + 1; n < len; ++n) tail += vec[n];
        const double last = vec[len - 1];
        const double prev = vec[len - 2];
        if (last > 0.0) {
            const double ratio = prev > 0.0 ? std::max(r, last / prev) : r;
            tail += ratio < 1.0 ? last * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();
        }
        worst = std::max(worst, tail);
        prod = series_mul(prod, abs_blaschke_factor(r, len));
    }
    return worst;
}

double tail_bound_for(const InnerFunction& alpha, int truncation) {
    return std::max(geometric_tail(alpha.max_zero_modulus(), truncation), majorant_tail(alpha, truncation));
}

}  // namespace

// ---------------------------------------------------------------------------
// InnerFunction

InnerFunction::InnerFunction(int degree, std::vector<Complex> zeros, Complex constant)
    : degree_(degree), zeros_(std::move(zeros)), constant_(constant) {}

InnerFunction InnerFunction::monomial(int degree) {
    if (degree < 1) throw InvalidInput("monomial inner function needs degree >= 1");
    return InnerFunction(degree, {}, 1.0);
}

InnerFunction InnerFunction::blaschke(std::vector<Complex> zeros, Complex constant) {
    if (zeros.empty()) throw InvalidInput("Blaschke product needs at least one zero");
    for (Complex w : zeros)
        if (!(std::abs(w) < 1.0)) throw InvalidInput("Blaschke zero outside the open disk");
    for (std::size_t i = 0; i < zeros.size(); ++i)
        for (std::size_t j = i + 1; j < zeros.size(); ++j)
            if (std::abs(zeros[i] - zeros[j]) <= tolerance::kZeroSeparation)
                throw InvalidInput("Blaschke zeros must be pairwise distinct");
    if (std::abs(std::abs(constant) - 1.0) > tolerance::kUnimodular)
        throw InvalidInput("Blaschke constant must be unimodular");

    const int degree = static_cast<int>(zeros.size());
    InnerFunction f(degree, std::move(zeros), constant);
    for (int s = 0; s < 64; ++s) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * s / 64.0);
        if (std::abs(std::abs(f(z)) - 1.0) > tolerance::kUnimodular)
            throw NumericError("Blaschke product is not unimodular on the circle");
    }
    return f;
}

double InnerFunction::max_zero_modulus() const noexcept {
    double rho = 0.0;
    for (Complex w : zeros_) rho = std::max(rho, std::abs(w));
    return rho;
}

Complex InnerFunction::operator()(Complex z) const {
    if (is_monomial()) return std::pow(z, degree_);
    Complex v = constant_;
    for (Complex w : zeros_) v *= (z - w) / (1.0 - std::conj(w) * z);
    return v;
}

LaurentPoly InnerFunction::taylor(int order) const {
    if (is_monomial()) return order >= degree_ ? LaurentPoly::monomial(degree_) : LaurentPoly{};
    const std::size_t len = static_cast<std::size_t>(order) + 1;
    Series s(len, Complex{});
    s[0] = constant_;
    for (Complex w : zeros_) s = series_mul(s, blaschke_factor(w, len));
    return to_poly(s);
}

std::string InnerFunction::describe() const {
    if (is_monomial()) return "z^" + std::to_string(degree_);
    std::ostringstream os;
    os << "blaschke{";
    for (std::size_t i = 0; i < zeros_.size(); ++i) {
        if (i) os << ", ";
        os << zeros_[i].real();
        if (zeros_[i].imag() != 0.0) os << (zeros_[i].imag() < 0 ? "" : "+") << zeros_[i].imag() << "i";
    }
    os << "}";
    return os.str();
}

InnerFunction stretch_inner(const InnerFunction& alpha, DecimationOrder order) {
    const int k = order.value();
    if (alpha.is_monomial()) return InnerFunction::monomial(alpha.degree() * k);
    if (k == 1) return alpha;
    std::vector<Complex> zeros;
    zeros.reserve(alpha.zeros().size() * static_cast<std::size_t>(k));
    for (Complex w : alpha.zeros()) {
        if (std::abs(w) <= tolerance::kZeroSeparation)
            throw InvalidInput("stretching a Blaschke product with a zero at the origin gives a multiple zero");
        const double r = std::pow(std::abs(w), 1.0 / k);
        const double theta = std::arg(w) / k;
        for (int s = 0; s < k; ++s) zeros.push_back(std::polar(r, theta + 2.0 * std::numbers::pi * s / k));
    }
    return InnerFunction::blaschke(std::move(zeros), alpha.constant());
}

// ---------------------------------------------------------------------------
// ModelSpaceBasis

int default_truncation(const InnerFunction& alpha) {
    if (alpha.is_monomial()) return 0;
    const double rho = alpha.max_zero_modulus();
    int t = 64;
    while (geometric_tail(rho, t) > tolerance::kTail) ++t;
    while (majorant_tail(alpha, t) > tolerance::kTail) t += std::max(8, t / 4);
    return t;
}

OperatorMatrix ModelSpaceBasis::gram() const {
    const int n = dim();
    OperatorMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = inner_product(vector(j), vector(i));
    return g;
}

ModelSpaceBasis make_basis(const InnerFunction& alpha, std::optional<int> truncation) {
    ModelSpaceBasis basis(alpha);
    const int n = alpha.degree();

    if (alpha.is_monomial()) {
        for (int j = 0; j < n; ++j) basis.vectors_.push_back(LaurentPoly::monomial(j));
        basis.conjugation_ = OperatorMatrix::Zero(n, n);
        for (int j = 0; j < n; ++j) basis.conjugation_(j, n - 1 - j) = 1.0;
    } else {
        int t = 0;
        if (truncation) {
            t = *truncation;
            if (t < 1) throw InvalidInput("truncation order must be positive");
            const double bound = tail_bound_for(alpha, t);
            if (bound > tolerance::kTail) {
                std::ostringstream os;
                os << "truncation order " << t << " too small for " << alpha.describe() << ": tail bound "
                   << bound << " exceeds " << tolerance::kTail << " (default would be "
                   << default_truncation(alpha) << ")";
                throw NumericError(os.str());
            }
        } else {
            t = default_truncation(alpha);
        }
        basis.truncation_ = t;
        basis.tail_bound_ = tail_bound_for(alpha, t);

        const std::size_t len = static_cast<std::size_t>(t) + 1;
        Series prod(len, Complex{});
        prod[0] = 1.0;
        for (Complex w : alpha.zeros()) {
            Series e = series_mul(geometric(w, len), prod);
            const double scale = std::sqrt(1.0 - std::norm(w));
            for (auto& c : e) c *= scale;
            basis.vectors_.push_back(to_poly(e));
            prod = series_mul(prod, blaschke_factor(w, len));
        }

        // C e_j = alpha * conj(z e_j); alpha is expanded far enough that every
        // coefficient up to order T of the product is complete.
        const LaurentPoly alpha_series = alpha.taylor(2 * t + 2);
        basis.conjugation_.resize(n, n);
        for (int j = 0; j < n; ++j) {
            const LaurentPoly image = alpha_series * conj_on_circle(basis.vectors_[j]).shifted(-1);
            basis.conjugation_.col(j) = project(basis, image);
        }
    }

    basis.shift_.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) basis.shift_(i, j) = inner_product(basis.vector(j).shifted(1), basis.vector(i));

    const double gram_err = (basis.gram() - OperatorMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (gram_err > 1e-10) throw NumericError("model space basis failed orthonormality check");
    return basis;
}

CoefficientVector project(const ModelSpaceBasis& basis, const LaurentPoly& f) {
    CoefficientVector v(basis.dim());
    for (int j = 0; j < basis.dim(); ++j) v(j) = inner_product(f, basis.vector(j));
    return v;
}

LaurentPoly reconstruct(const ModelSpaceBasis& basis, const CoefficientVector& v) {
    if (v.size() != basis.dim()) throw InvalidInput("coefficient vector length does not match basis dimension");
    LaurentPoly::Coefficients acc;
    for (int j = 0; j < basis.dim(); ++j)
        for (const auto& [n, a] : basis.vector(j).coeffs()) acc[n] += v(j) * a;
    return LaurentPoly(std::move(acc));
}

Complex derivative_at(const LaurentPoly& f, Complex w, int n) {
    if (n < 0) throw InvalidInput("derivative order must be nonnegative");
    Complex sum{};
    for (const auto& [t, a] : f.coeffs()) {
        if (t < n) continue;
        double falling = 1.0;
        for (int s = 0; s < n; ++s) falling *= static_cast<double>(t - s);
        sum += a * falling * std::pow(w, t - n);
    }
    return sum;
}

CoefficientVector kernel(const ModelSpaceBasis& basis, Complex w, int n) {
    if (!(std::abs(w) < 1.0)) throw InvalidInput("kernel point must lie in the open disk");
    if (n < 0) throw InvalidInput("kernel derivative order must be nonnegative");
    // <k_{w,n}^alpha, e_j> = conj(<e_j, k_{w,n}>) = conj(e_j^{(n)}(w))
    CoefficientVector v(basis.dim());
    for (int j = 0; j < basis.dim(); ++j) v(j) = std::conj(derivative_at(basis.vector(j), w, n));
    return v;
}

CoefficientVector conjugation(const ModelSpaceBasis& basis, const CoefficientVector& v) {
    if (v.size() != basis.dim()) throw InvalidInput("coefficient vector length does not match basis dimension");
    return basis.conjugation_matrix() * v.conjugate();
}

CoefficientVector conjugate_kernel(const ModelSpaceBasis& basis, Complex w, int n) {
    return conjugation(basis, kernel(basis, w, n));
}

CompressedShift compressed_shift(const ModelSpaceBasis& basis) {
    return {basis.shift(), basis.shift().adjoint()};
}

}  // namespace slant
