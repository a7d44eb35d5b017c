#include "slant/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

#include "slant/errors.hpp"

namespace slant {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw InvalidInput("schema violation: " + what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) schema_error(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
    return *it;
}

double number(const Json& j, const char* what) {
    if (!j.is_number()) schema_error(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) schema_error(std::string(what) + " must be finite");
    return v;
}

Complex pair_value(const Json& j) {
    if (!j.is_array() || j.size() != 2) schema_error("complex entries are [re, im] pairs");
    return {number(j[0], "re"), number(j[1], "im")};
}

Complex object_value(const Json& j) { return {number(field(j, "re"), "re"), number(field(j, "im"), "im")}; }

Json complex_object(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

void write(std::ostringstream& os, const Json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent >= 0) os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',';
                first = false;
                newline(depth + 1);
                os << Json(it.key()).dump() << (indent >= 0 ? ": " : ":");
                write(os, it.value(), indent, depth + 1);
            }
            newline(depth);
            os << '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            // Scalar arrays stay on one line.
            const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
            os << '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) os << (flat && indent >= 0 ? ", " : ",");
                first = false;
                if (!flat) newline(depth + 1);
                write(os, e, indent, depth + 1);
            }
            if (!flat) newline(depth);
            os << ']';
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                os << "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            std::string s(buf);
            if (s.find_first_of(".eE") == std::string::npos) s += ".0";
            os << s;
            return;
        }
        default: os << j.dump();
    }
}

}  // namespace

Json to_json(const LaurentPoly& p) {
    Json arr = Json::array();
    for (const auto& [n, a] : p.coeffs()) arr.push_back(Json{{"n", n}, {"re", a.real()}, {"im", a.imag()}});
    return Json{{"coeffs", arr}};
}

LaurentPoly laurent_from_json(const Json& j) {
    const Json& arr = field(j, "coeffs");
    if (!arr.is_array()) schema_error("'coeffs' must be an array");
    LaurentPoly::Coefficients c;
    for (const auto& e : arr) {
        const Json& n = field(e, "n");
        if (!n.is_number_integer()) schema_error("'n' must be an integer");
        const int freq = n.get<int>();
        if (!c.emplace(freq, object_value(e)).second) schema_error("duplicate frequency " + std::to_string(freq));
    }
    return LaurentPoly(std::move(c));
}

Json to_json(const InnerFunction& f) {
    if (f.is_monomial()) return Json{{"type", "monomial"}, {"degree", f.degree()}};
    Json zeros = Json::array();
    for (Complex w : f.zeros()) zeros.push_back(complex_object(w));
    return Json{{"type", "blaschke"}, {"zeros", zeros}, {"constant", complex_object(f.constant())}};
}

InnerFunction inner_from_json(const Json& j) {
    const Json& type = field(j, "type");
    if (!type.is_string()) schema_error("'type' must be a string");
    if (type == "monomial") {
        const Json& d = field(j, "degree");
        if (!d.is_number_integer()) schema_error("'degree' must be an integer");
        return InnerFunction::monomial(d.get<int>());
    }
    if (type == "blaschke") {
        const Json& zs = field(j, "zeros");
        if (!zs.is_array()) schema_error("'zeros' must be an array");
        std::vector<Complex> zeros;
        for (const auto& z : zs) zeros.push_back(object_value(z));
        Complex c = 1.0;
        if (j.contains("constant")) c = object_value(j.at("constant"));
        return InnerFunction::blaschke(std::move(zeros), c);
    }
    schema_error("unknown inner function type '" + type.get<std::string>() + "'");
}

InnerFunction parse_inner(const std::string& text) {
    static const std::regex shorthand(R"(\s*z(\^(\d+))?\s*)");
    std::smatch m;
    if (std::regex_match(text, m, shorthand)) return InnerFunction::monomial(m[2].matched ? std::stoi(m[2]) : 1);
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("inner function is neither z^N nor JSON: ") + e.what());
    }
    return inner_from_json(j);
}

Json to_json(const CoefficientVector& v) {
    Json coords = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) coords.push_back(Json::array({v(i).real(), v(i).imag()}));
    return Json{{"coords", coords}};
}

CoefficientVector coefficient_vector_from_json(const Json& j) {
    const Json& coords = field(j, "coords");
    if (!coords.is_array()) schema_error("'coords' must be an array");
    CoefficientVector v(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Eigen::Index>(i)) = pair_value(coords[i]);
    return v;
}

Json matrix_to_json(const OperatorMatrix& m) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

OperatorMatrix matrix_from_json(const Json& j) {
    const Json& rows = field(j, "rows");
    const Json& cols = field(j, "cols");
    const Json& data = field(j, "data");
    if (!rows.is_number_integer() || !cols.is_number_integer()) schema_error("'rows'/'cols' must be integers");
    const auto r = rows.get<long long>();
    const auto c = cols.get<long long>();
    if (r < 1 || c < 1) schema_error("matrix dimensions must be positive");
    if (!data.is_array() || static_cast<long long>(data.size()) != r * c) schema_error("'data' must hold rows*cols entries");
    OperatorMatrix m(r, c);
    for (long long i = 0; i < r; ++i)
        for (long long k = 0; k < c; ++k) m(i, k) = pair_value(data[static_cast<std::size_t>(i * c + k)]);
    return m;
}

Json to_json(const MembershipReport& r) {
    Json psis = Json::array();
    for (const auto& p : r.decomposition.psis) psis.push_back(to_json(p));
    return Json{{"member", r.member},
                {"residual", r.residual},
                {"variant", std::string(variant_name(r.decomposition.variant))},
                {"chi", to_json(r.decomposition.chi)},
                {"psis", psis},
                {"tolerance", r.tolerance}};
}

std::string dump(const Json& j, int indent) {
    std::ostringstream os;
    write(os, j, indent, 0);
    return os.str();
}

}  // namespace slant
