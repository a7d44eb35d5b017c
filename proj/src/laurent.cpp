#include "slant/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slant/errors.hpp"

namespace slant {

DecimationOrder::DecimationOrder(int k) : k_(k) {
    if (k < 1) {
        throw InvalidInput("decimation order must be >= 1, got " + std::to_string(k));
    }
}

LaurentPoly::LaurentPoly(Coefficients coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

LaurentPoly LaurentPoly::monomial(int n, Complex c) { return LaurentPoly(Coefficients{{n, c}}); }

void LaurentPoly::normalize() {
    std::erase_if(coeffs_, [](const auto& kv) { return std::abs(kv.second) < kDropThreshold; });
}

Complex LaurentPoly::coeff(int n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? Complex{} : it->second;
}

bool LaurentPoly::is_analytic() const noexcept { return coeffs_.empty() || coeffs_.begin()->first >= 0; }

int LaurentPoly::min_frequency() const {
    if (coeffs_.empty()) throw InvalidInput("min_frequency of the zero polynomial");
    return coeffs_.begin()->first;
}

int LaurentPoly::max_frequency() const {
    if (coeffs_.empty()) throw InvalidInput("max_frequency of the zero polynomial");
    return coeffs_.rbegin()->first;
}

LaurentPoly LaurentPoly::shifted(int m) const {
    Coefficients out;
    for (const auto& [n, a] : coeffs_) out.emplace(n + m, a);
    LaurentPoly r;
    r.coeffs_ = std::move(out);
    return r;
}

Complex LaurentPoly::evaluate(Complex z) const {
    Complex sum{};
    for (const auto& [n, a] : coeffs_) sum += a * std::pow(z, n);
    return sum;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
    for (const auto& [n, a] : other.coeffs_) coeffs_[n] += a;
    normalize();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
    for (const auto& [n, a] : other.coeffs_) coeffs_[n] -= a;
    normalize();
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex c) {
    for (auto& kv : coeffs_) kv.second *= c;
    normalize();
    return *this;
}

std::string LaurentPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, a] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << a.real() << (a.imag() < 0 ? "" : "+") << a.imag() << "i)";
        if (n != 0) os << "z^" << n;
    }
    return os.str();
}

LaurentPoly laurent_mul(const LaurentPoly& p, const LaurentPoly& q) {
    LaurentPoly::Coefficients out;
    for (const auto& [n, a] : p.coeffs())
        for (const auto& [m, b] : q.coeffs()) out[n + m] += a * b;
    return LaurentPoly(std::move(out));
}

LaurentPoly conj_on_circle(const LaurentPoly& p) {
    LaurentPoly::Coefficients out;
    for (const auto& [n, a] : p.coeffs()) out.emplace(-n, std::conj(a));
    return LaurentPoly(std::move(out));
}

LaurentPoly analytic_project(const LaurentPoly& p) {
    LaurentPoly::Coefficients out(p.coeffs().lower_bound(0), p.coeffs().end());
    return LaurentPoly(std::move(out));
}

LaurentPoly decimate(const LaurentPoly& p, DecimationOrder order) {
    const int k = order.value();
    LaurentPoly::Coefficients out;
    for (const auto& [n, a] : p.coeffs())
        if (n % k == 0) out.emplace(n / k, a);
    return LaurentPoly(std::move(out));
}

LaurentPoly stretch(const LaurentPoly& p, DecimationOrder order) {
    const int k = order.value();
    LaurentPoly::Coefficients out;
    for (const auto& [n, a] : p.coeffs()) out.emplace(k * n, a);
    return LaurentPoly(std::move(out));
}

LaurentPoly backward_shift_pow(const LaurentPoly& p, DecimationOrder order) {
    if (!p.is_analytic()) {
        throw InvalidInput("backward shift needs an analytic input, found frequency " +
                           std::to_string(p.min_frequency()));
    }
    const int k = order.value();
    LaurentPoly::Coefficients out;
    for (const auto& [n, a] : p.coeffs())
        if (n >= k) out.emplace(n - k, a);
    return LaurentPoly(std::move(out));
}

Complex inner_product(const LaurentPoly& p, const LaurentPoly& q) {
    Complex sum{};
    auto it = p.coeffs().begin();
    auto jt = q.coeffs().begin();
    while (it != p.coeffs().end() && jt != q.coeffs().end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            sum += it->second * std::conj(jt->second);
            ++it;
            ++jt;
        }
    }
    return sum;
}

double norm(const LaurentPoly& p) {
    double s = 0.0;
    for (const auto& kv : p.coeffs()) s += std::norm(kv.second);
    return std::sqrt(s);
}

double max_abs_diff(const LaurentPoly& p, const LaurentPoly& q) {
    double worst = 0.0;
    for (const auto& [n, a] : p.coeffs()) worst = std::max(worst, std::abs(a - q.coeff(n)));
    for (const auto& [n, b] : q.coeffs())
        if (!p.coeffs().contains(n)) worst = std::max(worst, std::abs(b));
    return worst;
}

}  // namespace slant
