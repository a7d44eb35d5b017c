#include "slant/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "slant/errors.hpp"

namespace slant {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

OperatorMatrix matrix_power(const OperatorMatrix& m, int p) {
    OperatorMatrix r = OperatorMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < p; ++i) r = r * m;
    return r;
}

// Order of Taylor data needed so that truncating an inner function's
// expansion does not affect any entry pairing K_alpha with K_beta.
int effective_order(const ModelSpaceBasis& b) { return b.exact() ? b.dim() : b.truncation_order(); }

int expansion_order(const CompressionSpaces& s, int extra = 0) {
    const int k = s.k().value();
    return k * (effective_order(s.beta()) + 2) + effective_order(s.alpha()) + 2 * k + 8 + std::max(0, extra);
}

int support_span(const LaurentPoly& p) { return p.is_zero() ? 0 : p.max_frequency() - p.min_frequency(); }

LaurentPoly restrict_frequencies(const LaurentPoly& p, int lo, int hi) {
    LaurentPoly::Coefficients out;
    for (const auto& [n, a] : p.coeffs())
        if (n >= lo && n <= hi) out.emplace(n, a);
    return LaurentPoly(std::move(out));
}

LaurentPoly stretched_inner_series(const InnerFunction& beta, DecimationOrder k, int order) {
    return stretch(beta.taylor(order), k);
}

LaurentPoly conj_inner_series(const InnerFunction& alpha, int order) {
    return conj_on_circle(alpha.taylor(order));
}

LaurentPoly project_onto(const ModelSpaceBasis& basis, const LaurentPoly& f) {
    return reconstruct(basis, project(basis, f));
}

void check_dims(const OperatorMatrix& u, const CompressionSpaces& spaces) {
    if (u.rows() != spaces.beta().dim() || u.cols() != spaces.alpha().dim()) {
        std::ostringstream os;
        os << "operator matrix is " << u.rows() << "x" << u.cols() << ", expected " << spaces.beta().dim() << "x"
           << spaces.alpha().dim();
        throw InvalidInput(os.str());
    }
}

struct Frames {
    CoefficientVector target;               // in K_beta
    std::vector<CoefficientVector> source;  // in K_alpha, j = 0..k-1
};

Frames frames_for(const CompressionSpaces& spaces, DefectVariant variant) {
    const bool tilde_target = variant == DefectVariant::conjugated || variant == DefectVariant::mixed_adjoint;
    const bool tilde_source = variant == DefectVariant::conjugated || variant == DefectVariant::mixed_shift;
    Frames f;
    f.target = tilde_target ? conjugate_kernel(spaces.beta(), 0.0, 0) : kernel(spaces.beta(), 0.0, 0);
    for (int j = 0; j < spaces.k().value(); ++j)
        f.source.push_back(tilde_source ? conjugate_kernel(spaces.alpha(), 0.0, j) : kernel(spaces.alpha(), 0.0, j));
    return f;
}

}  // namespace

// ---------------------------------------------------------------------------

CompressionSpaces::CompressionSpaces(const InnerFunction& alpha, const InnerFunction& beta, DecimationOrder k,
                                     std::optional<int> truncation)
    : alpha_(make_basis(alpha, truncation)), beta_(make_basis(beta, truncation)), k_(k) {
    try {
        stretched_beta_.emplace(make_basis(stretch_inner(beta, k)));
    } catch (const InvalidInput& e) {
        stretch_error_ = e.what();
    }
}

const ModelSpaceBasis& CompressionSpaces::stretched_beta() const {
    if (!stretched_beta_) throw InvalidInput(stretch_error_);
    return *stretched_beta_;
}

std::string CompressionSpaces::describe() const {
    return "alpha=" + alpha_.inner().describe() + " beta=" + beta_.inner().describe() +
           " k=" + std::to_string(k_.value());
}

std::string_view variant_name(DefectVariant v) {
    switch (v) {
        case DefectVariant::plain: return "t35";
        case DefectVariant::conjugated: return "c38";
        case DefectVariant::mixed_adjoint: return "c310a";
        case DefectVariant::mixed_shift: return "c310b";
    }
    return "t35";
}

DefectVariant parse_variant(std::string_view name) {
    for (DefectVariant v : kAllVariants)
        if (variant_name(v) == name) return v;
    throw InvalidInput("unknown defect variant '" + std::string(name) + "'");
}

OperatorMatrix outer(const CoefficientVector& f, const CoefficientVector& g) { return f * g.adjoint(); }

double relative_distance(const OperatorMatrix& a, const OperatorMatrix& reference) {
    return (a - reference).norm() / std::max(1.0, reference.norm());
}

// ---------------------------------------------------------------------------
// Builders

OperatorMatrix build_compression(const LaurentPoly& phi, const ModelSpaceBasis& alpha, const ModelSpaceBasis& beta,
                                 DecimationOrder k) {
    OperatorMatrix u(beta.dim(), alpha.dim());
    for (int j = 0; j < alpha.dim(); ++j) {
        const LaurentPoly image = decimate(phi * alpha.vector(j), k);
        for (int i = 0; i < beta.dim(); ++i) u(i, j) = inner_product(image, beta.vector(i));
    }
    return u;
}

OperatorMatrix build_compression(const LaurentPoly& phi, const CompressionSpaces& spaces) {
    return build_compression(phi, spaces.alpha(), spaces.beta(), spaces.k());
}

OperatorMatrix build_truncated_toeplitz(const LaurentPoly& phi, const ModelSpaceBasis& alpha,
                                        const ModelSpaceBasis& beta) {
    return build_compression(phi, alpha, beta, DecimationOrder(1));
}

OperatorMatrix decimation_matrix(const ModelSpaceBasis& stretched_beta, const ModelSpaceBasis& beta,
                                 DecimationOrder k) {
    OperatorMatrix d(beta.dim(), stretched_beta.dim());
    for (int j = 0; j < stretched_beta.dim(); ++j) {
        const LaurentPoly image = decimate(stretched_beta.vector(j), k);
        for (int i = 0; i < beta.dim(); ++i) d(i, j) = inner_product(image, beta.vector(i));
    }
    return d;
}

// ---------------------------------------------------------------------------
// Defects

OperatorMatrix defect(const OperatorMatrix& u, const CompressionSpaces& spaces, DefectVariant variant) {
    check_dims(u, spaces);
    const int k = spaces.k().value();
    const OperatorMatrix& sa = spaces.alpha().shift();
    const OperatorMatrix& sb = spaces.beta().shift();
    switch (variant) {
        case DefectVariant::plain: return u - sb * u * matrix_power(sa.adjoint(), k);
        case DefectVariant::conjugated: return u - sb.adjoint() * u * matrix_power(sa, k);
        case DefectVariant::mixed_adjoint: return sb.adjoint() * u - u * matrix_power(sa.adjoint(), k);
        case DefectVariant::mixed_shift: return sb * u - u * matrix_power(sa, k);
    }
    return u;
}

OperatorMatrix assemble(const DefectDecomposition& d, const CompressionSpaces& spaces) {
    const Frames f = frames_for(spaces, d.variant);
    if (d.chi.size() != spaces.alpha().dim() || d.psis.size() != f.source.size())
        throw InvalidInput("decomposition does not match the spaces");
    OperatorMatrix m = outer(f.target, d.chi);
    for (std::size_t j = 0; j < d.psis.size(); ++j) {
        if (d.psis[j].size() != spaces.beta().dim()) throw InvalidInput("psi has wrong dimension");
        m += outer(d.psis[j], f.source[j]);
    }
    return m;
}

DefectDecomposition defect_from_symbol(const LaurentPoly& phi, const CompressionSpaces& spaces) {
    const int k = spaces.k().value();
    DefectDecomposition d;
    d.variant = DefectVariant::plain;
    d.chi = project(spaces.alpha(), conj_on_circle(phi));
    for (int j = 0; j < k; ++j) {
        const LaurentPoly w = decimate(phi.shifted(-(k - j)), spaces.k());
        d.psis.push_back(spaces.beta().shift() * project(spaces.beta(), w) / factorial(j));
    }
    return d;
}

MembershipReport membership(const OperatorMatrix& u, const CompressionSpaces& spaces, DefectVariant variant,
                            double tol) {
    check_dims(u, spaces);
    if (!(tol > 0.0)) throw InvalidInput("membership tolerance must be positive");

    const int na = spaces.alpha().dim();
    const int nb = spaces.beta().dim();
    const int k = spaces.k().value();
    const OperatorMatrix dm = defect(u, spaces, variant);
    const Frames f = frames_for(spaces, variant);

    // vec(D) column-major; unknowns are conj(chi) followed by psi_0..psi_{k-1}.
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(na * nb, na + k * nb);
    for (int c = 0; c < na; ++c)
        for (int r = 0; r < nb; ++r) b(r + c * nb, c) = f.target(r);
    for (int j = 0; j < k; ++j)
        for (int r = 0; r < nb; ++r)
            for (int c = 0; c < na; ++c) b(r + c * nb, na + j * nb + r) = std::conj(f.source[j](c));

    const Eigen::VectorXcd rhs = dm.reshaped();
    const Eigen::VectorXcd x = b.completeOrthogonalDecomposition().solve(rhs);

    MembershipReport rep;
    rep.residual = (b * x - rhs).norm();
    rep.tolerance = tol * std::max(1.0, dm.norm());
    rep.member = rep.residual <= rep.tolerance;
    rep.decomposition.variant = variant;
    rep.decomposition.residual = rep.residual;
    rep.decomposition.chi = x.head(na).conjugate();
    for (int j = 0; j < k; ++j) rep.decomposition.psis.push_back(x.segment(na + j * nb, nb));
    rep.op = u;
    return rep;
}

// ---------------------------------------------------------------------------
// Recovery

LaurentPoly RecoveredParts::symbol() const {
    LaurentPoly phi = conj_chi;
    for (const auto& p : stretched_psi) phi += p;
    return phi;
}

RecoveredParts recover_parts(const DefectDecomposition& plain, const CompressionSpaces& spaces) {
    if (plain.variant != DefectVariant::plain) throw InvalidInput("recover_parts needs a plain decomposition");
    const int k = spaces.k().value();
    const CoefficientVector k0 = kernel(spaces.beta(), 0.0, 0);
    const double k0_norm2 = k0.squaredNorm();

    RecoveredParts out;
    out.normalized = plain;
    for (int j = 0; j < k; ++j) {
        const Complex at_zero = k0.dot(plain.psis[j]);  // <psi_j, k_0> = psi_j(0)
        out.normalized.psis[j] = plain.psis[j] - (at_zero / k0_norm2) * k0;
        out.normalized.chi += (std::conj(at_zero) / k0_norm2) * kernel(spaces.alpha(), 0.0, j);
    }

    out.conj_chi = conj_on_circle(reconstruct(spaces.alpha(), out.normalized.chi));
    for (int j = 0; j < k; ++j) {
        const LaurentPoly psi = reconstruct(spaces.beta(), out.normalized.psis[j]);
        out.stretched_psi.push_back(factorial(j) * stretch(psi, spaces.k()).shifted(-j));
    }
    return out;
}

namespace {

// phi = beta(z^k) conj(z)^k conj(chi) + conj(alpha) sum_j j! psi_j(z^k) z^{j+1}
LaurentPoly recover_from_conjugated(const DefectDecomposition& d, const CompressionSpaces& spaces) {
    const int k = spaces.k().value();
    const int order = expansion_order(spaces);
    const LaurentPoly beta_k = stretched_inner_series(spaces.beta().inner(), spaces.k(), order);
    const LaurentPoly alpha_bar = conj_inner_series(spaces.alpha().inner(), order);

    LaurentPoly phi = beta_k * conj_on_circle(reconstruct(spaces.alpha(), d.chi)).shifted(-k);
    LaurentPoly sum;
    for (int j = 0; j < k; ++j) {
        const LaurentPoly psi = reconstruct(spaces.beta(), d.psis[j]);
        sum += factorial(j) * stretch(psi, spaces.k()).shifted(j + 1);
    }
    return phi + alpha_bar * sum;
}

}  // namespace

LaurentPoly recover_symbol(const MembershipReport& report, const CompressionSpaces& spaces) {
    if (!report.member) throw InvalidInput("cannot recover a symbol for a non-member");
    check_dims(report.op, spaces);

    LaurentPoly phi;
    switch (report.decomposition.variant) {
        case DefectVariant::plain: phi = recover_parts(report.decomposition, spaces).symbol(); break;
        case DefectVariant::conjugated: phi = recover_from_conjugated(report.decomposition, spaces); break;
        case DefectVariant::mixed_adjoint:
        case DefectVariant::mixed_shift: {
            const MembershipReport plain = membership(report.op, spaces, DefectVariant::plain);
            if (!plain.member) throw NumericError("variants disagree on membership; cannot recover");
            phi = recover_parts(plain.decomposition, spaces).symbol();
            break;
        }
    }

    const double err = relative_distance(build_compression(phi, spaces), report.op);
    if (err > 1e-9) {
        std::ostringstream os;
        os << "recovered symbol misses the operator by " << err;
        throw NumericError(os.str());
    }
    return phi;
}

// ---------------------------------------------------------------------------
// Canonical symbols and zero tests

LaurentPoly canonical_symbol(const LaurentPoly& phi, const CompressionSpaces& spaces, CanonicalForm form) {
    const ModelSpaceBasis& bk = spaces.stretched_beta();
    if (phi.is_zero()) return {};
    const int lo = phi.min_frequency();
    const int hi = phi.max_frequency();
    if (form == CanonicalForm::analytic) {
        const LaurentPoly f = conj_on_circle(restrict_frequencies(phi, lo, 0));
        const LaurentPoly g = restrict_frequencies(phi, 1, hi);
        return conj_on_circle(project_onto(spaces.alpha(), f)) + project_onto(bk, g);
    }
    const int s = spaces.k().value() - 1;
    const LaurentPoly f = conj_on_circle(restrict_frequencies(phi, lo, -s - 1));
    const LaurentPoly g = restrict_frequencies(phi, -s, hi).shifted(s);
    return conj_on_circle(project_onto(spaces.alpha(), f)) + project_onto(bk, g).shifted(-s);
}

namespace {

// Canonical residues of a spanning set of the zero class; phi lies in the class
// exactly when its own residue lies in their span.
std::vector<LaurentPoly> zero_class_generators(const CompressionSpaces& spaces, ZeroClass cls) {
    std::vector<LaurentPoly> gens;
    if (cls == ZeroClass::analytic_tail) {
        const int order = spaces.stretched_beta().exact()
                              ? spaces.stretched_beta().dim()
                              : spaces.stretched_beta().truncation_order() / spaces.k().value() + 4;
        gens.push_back(stretched_inner_series(spaces.beta().inner(), spaces.k(), order));
    } else {
        const int order = effective_order(spaces.alpha()) + spaces.k().value() + 4;
        const LaurentPoly alpha_series = spaces.alpha().inner().taylor(order);
        for (int s = 0; s < spaces.k().value(); ++s) gens.push_back(conj_on_circle(alpha_series.shifted(s)));
    }
    return gens;
}

}  // namespace

bool zero_test_sufficient(const LaurentPoly& phi, const CompressionSpaces& spaces, ZeroClass cls) {
    const CanonicalForm form = cls == ZeroClass::analytic_tail ? CanonicalForm::analytic : CanonicalForm::shifted;
    const LaurentPoly residue = canonical_symbol(phi, spaces, form);
    const double tol = spaces.tolerance() * std::max(1.0, norm(phi));
    if (residue.is_zero()) return true;

    std::vector<LaurentPoly> dirs;
    for (const auto& g : zero_class_generators(spaces, cls)) {
        LaurentPoly d = canonical_symbol(g, spaces, form);
        if (norm(d) > tolerance::kExact) dirs.push_back(std::move(d));
    }
    if (dirs.empty()) return norm(residue) <= tol;

    std::map<int, int> index;
    auto add_support = [&](const LaurentPoly& p) {
        for (const auto& kv : p.coeffs()) index.try_emplace(kv.first, static_cast<int>(index.size()));
    };
    add_support(residue);
    for (const auto& d : dirs) add_support(d);

    const int rows = static_cast<int>(index.size());
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, static_cast<int>(dirs.size()));
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(rows);
    for (std::size_t c = 0; c < dirs.size(); ++c)
        for (const auto& [n, v] : dirs[c].coeffs()) a(index.at(n), static_cast<int>(c)) = v;
    for (const auto& [n, v] : residue.coeffs()) r(index.at(n)) = v;

    const Eigen::VectorXcd x = a.completeOrthogonalDecomposition().solve(r);
    return (a * x - r).norm() <= tol;
}

bool compression_is_zero(const LaurentPoly& phi, const CompressionSpaces& spaces) {
    return build_compression(phi, spaces).norm() <= spaces.tolerance() * std::max(1.0, norm(phi));
}

// ---------------------------------------------------------------------------
// Conjugation and rank-one operators

OperatorMatrix conjugate_operator(const OperatorMatrix& u, const CompressionSpaces& spaces) {
    check_dims(u, spaces);
    // C_b U C_a v = M_b conj(U M_a conj(v)) = M_b conj(U) conj(M_a) v
    return spaces.beta().conjugation_matrix() * u.conjugate() * spaces.alpha().conjugation_matrix().conjugate();
}

ConjugatedSymbol conjugate_operator(const LaurentPoly& phi, const CompressionSpaces& spaces) {
    const int k = spaces.k().value();
    const int order = expansion_order(spaces, support_span(phi));
    const LaurentPoly alpha_series = spaces.alpha().inner().taylor(order);
    const LaurentPoly beta_k = stretched_inner_series(spaces.beta().inner(), spaces.k(), order);

    ConjugatedSymbol out;
    out.matrix = conjugate_operator(build_compression(phi, spaces), spaces);
    out.symbol = conj_on_circle((alpha_series * phi).shifted(k - 1)) * beta_k;
    return out;
}

RankOne rank_one(const CompressionSpaces& spaces, int l, RankOneKind kind) {
    const int k = spaces.k().value();
    if (l < 0 || l >= k) throw InvalidInput("rank-one index l must satisfy 0 <= l < k");
    const int order = expansion_order(spaces);
    RankOne out;
    if (kind == RankOneKind::tilde_k) {
        out.matrix = outer(conjugate_kernel(spaces.beta(), 0.0, 0), kernel(spaces.alpha(), 0.0, l));
        out.symbol = factorial(l) * stretched_inner_series(spaces.beta().inner(), spaces.k(), order).shifted(-(l + k));
    } else {
        out.matrix = outer(kernel(spaces.beta(), 0.0, 0), conjugate_kernel(spaces.alpha(), 0.0, l));
        out.symbol = factorial(l) * conj_inner_series(spaces.alpha().inner(), order).shifted(l + 1);
    }
    return out;
}

}  // namespace slant
