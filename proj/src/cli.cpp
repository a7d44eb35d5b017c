#include "slant/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "slant/errors.hpp"
#include "slant/json_io.hpp"
#include "slant/operators.hpp"
#include "slant/verify.hpp"

namespace slant::cli {

namespace {

struct Options {
    int k = 1;
    std::string alpha;
    std::string beta;
    std::string symbol;
    std::string matrix;
    std::string variant = "t35";
    double tol = kDefaultMembershipTolerance;
    std::optional<int> truncation;
    std::uint64_t seed = 0;
    int trials = 50;
    std::string format = "json";
    std::string which;
    int l = 0;
    std::string kind;
};

struct Output {
    Output(std::string text, int code = kOk, std::string diagnostic = {})
        : text(std::move(text)), code(code), diagnostic(std::move(diagnostic)) {}
    std::string text;
    int code;
    std::string diagnostic;
};

// --- input -------------------------------------------------------------------

bool looks_inline(const std::string& arg) {
    const auto pos = arg.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && (arg[pos] == '{' || arg[pos] == '[');
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(what + " is not valid JSON: " + e.what());
    }
}

/// Inline JSON or a path to a JSON file.
Json load_json(const std::string& arg, const std::string& what) {
    return parse_json(looks_inline(arg) ? arg : read_file(arg), what);
}

InnerFunction load_inner(const std::string& arg) {
    static const std::regex shorthand(R"(\s*z(\^\d+)?\s*)");
    if (std::regex_match(arg, shorthand) || looks_inline(arg)) return parse_inner(arg);
    return inner_from_json(parse_json(read_file(arg), "inner function"));
}

LaurentPoly load_symbol(const Options& o) { return laurent_from_json(load_json(o.symbol, "symbol")); }
OperatorMatrix load_matrix(const Options& o) { return matrix_from_json(load_json(o.matrix, "matrix")); }

CompressionSpaces load_spaces(const Options& o) {
    return CompressionSpaces(load_inner(o.alpha), load_inner(o.beta), DecimationOrder(o.k), o.truncation);
}

// --- text rendering ------------------------------------------------------------

std::string format_complex(Complex c) {
    char buf[64];
    // + 0.0 turns negative zeros positive
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", c.real() + 0.0, c.imag() + 0.0);
    return buf;
}

std::string matrix_text(const OperatorMatrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols() << "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "  " : "") << format_complex(m(i, j));
        os << "\n";
    }
    return os.str();
}

std::string vector_text(const CoefficientVector& v) {
    std::ostringstream os;
    os << "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << format_complex(v(i));
    os << "]";
    return os.str();
}

bool text_mode(const Options& o) { return o.format == "text"; }

std::string emit(const Options& o, const Json& j, const std::string& text) {
    return text_mode(o) ? text : dump(j, 2) + "\n";
}

// --- subcommands -------------------------------------------------------------

Output cmd_build(const Options& o) {
    const OperatorMatrix u = build_compression(load_symbol(o), load_spaces(o));
    return {emit(o, matrix_to_json(u), matrix_text(u))};
}

Output cmd_ttoeplitz(const Options& o) {
    const ModelSpaceBasis a = make_basis(load_inner(o.alpha), o.truncation);
    const ModelSpaceBasis b = make_basis(load_inner(o.beta), o.truncation);
    const OperatorMatrix u = build_truncated_toeplitz(load_symbol(o), a, b);
    return {emit(o, matrix_to_json(u), matrix_text(u))};
}

std::string membership_text(const MembershipReport& r) {
    std::ostringstream os;
    os << "member: " << (r.member ? "yes" : "no") << "\n"
       << "variant: " << variant_name(r.decomposition.variant) << "\n"
       << "residual: " << r.residual << "\n"
       << "tolerance: " << r.tolerance << "\n";
    if (r.member) {
        os << "chi: " << vector_text(r.decomposition.chi) << "\n";
        for (std::size_t j = 0; j < r.decomposition.psis.size(); ++j)
            os << "psi_" << j << ": " << vector_text(r.decomposition.psis[j]) << "\n";
    }
    return os.str();
}

Output cmd_membership(const Options& o) {
    const CompressionSpaces spaces = load_spaces(o);
    const MembershipReport r = membership(load_matrix(o), spaces, parse_variant(o.variant), o.tol);
    return {emit(o, to_json(r), membership_text(r)), r.member ? kOk : kNegative};
}

Output cmd_recover(const Options& o) {
    const CompressionSpaces spaces = load_spaces(o);
    const MembershipReport r = membership(load_matrix(o), spaces, parse_variant(o.variant), o.tol);
    if (!r.member) {
        std::ostringstream os;
        os << "not a member (residual " << r.residual << " > " << r.tolerance << "); no symbol exists\n";
        return {"", kNegative, os.str()};
    }
    const LaurentPoly phi = recover_symbol(r, spaces);
    return {emit(o, to_json(phi), phi.to_string() + "\n")};
}

Output cmd_canonical(const Options& o) {
    const CanonicalForm form = o.which == "second" ? CanonicalForm::shifted : CanonicalForm::analytic;
    const LaurentPoly phi = canonical_symbol(load_symbol(o), load_spaces(o), form);
    return {emit(o, to_json(phi), phi.to_string() + "\n")};
}

Output cmd_iszero(const Options& o) {
    const CompressionSpaces spaces = load_spaces(o);
    const LaurentPoly phi = load_symbol(o);
    bool zero = false;
    std::string test = "matrix";
    if (o.which.empty()) {
        zero = compression_is_zero(phi, spaces);
    } else {
        test = o.which;
        zero = zero_test_sufficient(phi, spaces, o.which == "p27" ? ZeroClass::shifted_tail : ZeroClass::analytic_tail);
    }
    const Json j{{"zero", zero}, {"test", test}};
    return {emit(o, j, std::string("zero: ") + (zero ? "yes" : "no") + " (" + test + " test)\n"),
            zero ? kOk : kNegative};
}

Output cmd_conjugate(const Options& o) {
    const CompressionSpaces spaces = load_spaces(o);
    if (!o.matrix.empty()) {
        const OperatorMatrix c = conjugate_operator(load_matrix(o), spaces);
        return {emit(o, matrix_to_json(c), matrix_text(c))};
    }
    const ConjugatedSymbol cs = conjugate_operator(load_symbol(o), spaces);
    const Json j{{"matrix", matrix_to_json(cs.matrix)}, {"symbol", to_json(cs.symbol)}};
    return {emit(o, j, "symbol: " + cs.symbol.to_string() + "\n" + matrix_text(cs.matrix))};
}

Output cmd_rankone(const Options& o) {
    const RankOneKind kind = o.kind == "k_tilde" ? RankOneKind::k_tilde : RankOneKind::tilde_k;
    const RankOne r = rank_one(load_spaces(o), o.l, kind);
    const Json j{{"matrix", matrix_to_json(r.matrix)}, {"symbol", to_json(r.symbol)}};
    return {emit(o, j, "symbol: " + r.symbol.to_string() + "\n" + matrix_text(r.matrix))};
}

Output cmd_verify(const Options& o) {
    SuiteConfig config;
    config.seed = o.seed;
    config.trials = o.trials;
    const SuiteReport report = run_suite(config);
    return {emit(o, report.to_json(), report.to_text()), report.all_passed() ? kOk : kNegative};
}

Json basis_info(const ModelSpaceBasis& b) {
    Json j{{"inner", to_json(b.inner())}, {"dim", b.dim()}, {"exact", b.exact()}, {"tolerance", b.tolerance()}};
    if (!b.exact()) {
        j["truncation"] = b.truncation_order();
        j["tail_bound"] = b.tail_bound();
    }
    return j;
}

std::string basis_text(const std::string& label, const ModelSpaceBasis& b) {
    std::ostringstream os;
    os << label << ": " << b.inner().describe() << ", dim " << b.dim();
    if (b.exact())
        os << ", exact";
    else
        os << ", truncation " << b.truncation_order() << ", tail bound " << b.tail_bound();
    os << "\n";
    return os.str();
}

Output cmd_info(const Options& o) {
    if (o.beta.empty()) {
        const ModelSpaceBasis a = make_basis(load_inner(o.alpha), o.truncation);
        return {emit(o, Json{{"alpha", basis_info(a)}}, basis_text("alpha", a))};
    }
    const CompressionSpaces s = load_spaces(o);
    Json j{{"alpha", basis_info(s.alpha())}, {"beta", basis_info(s.beta())}, {"k", o.k},
           {"universal", o.k >= s.alpha().dim() || s.beta().dim() == 1}};
    std::string text = basis_text("alpha", s.alpha()) + basis_text("beta", s.beta()) + "k: " + std::to_string(o.k) +
                       "\n";
    if (s.has_stretched_beta()) {
        j["stretched_beta"] = basis_info(s.stretched_beta());
        text += basis_text("beta(z^k)", s.stretched_beta());
    }
    return {emit(o, j, text)};
}

// --- option wiring ---------------------------------------------------------------

struct Flags {
    CLI::App* app;
    Options& o;

    Flags& spaces(bool with_k = true) {
        if (with_k) app->add_option("--k", o.k, "decimation order")->required();
        app->add_option("--alpha", o.alpha, "source inner function: z^N, JSON, or JSON file")->required();
        app->add_option("--beta", o.beta, "target inner function: z^N, JSON, or JSON file")->required();
        return truncation();
    }
    Flags& truncation() {
        app->add_option("--truncation", o.truncation, "Taylor truncation order for Blaschke bases");
        return *this;
    }
    Flags& symbol(bool required = true) {
        auto* opt = app->add_option("--symbol", o.symbol, "Laurent polynomial: inline JSON or file");
        if (required) opt->required();
        return *this;
    }
    Flags& matrix(bool required = true) {
        auto* opt = app->add_option("--matrix", o.matrix, "operator matrix: JSON file or inline JSON");
        if (required) opt->required();
        return *this;
    }
    Flags& membership() {
        app->add_option("--variant", o.variant, "defect variant")
            ->check(CLI::IsMember({"t35", "c38", "c310a", "c310b"}));
        app->add_option("--tol", o.tol, "relative membership tolerance")->check(CLI::PositiveNumber);
        return *this;
    }
    Flags& format() {
        app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
        return *this;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compressions of slant Toeplitz operators to model spaces", "slantc"};
    app.require_subcommand(1);
    Options o;

    using Handler = Output (*)(const Options&);
    std::vector<std::pair<CLI::App*, Handler>> commands;
    const auto add = [&](const char* name, const char* help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        commands.emplace_back(sub, h);
        return Flags{sub, o};
    };

    add("build", "matrix of the compression of a symbol", cmd_build).spaces().symbol().format();
    add("ttoeplitz", "matrix of the truncated Toeplitz operator P_beta M_phi", cmd_ttoeplitz)
        .spaces(false)
        .symbol()
        .format();
    add("membership", "test a matrix against the defect characterization", cmd_membership)
        .spaces()
        .matrix()
        .membership()
        .format();
    add("recover", "recover a symbol for a member matrix", cmd_recover).spaces().matrix().membership().format();
    {
        auto f = add("canonical", "canonical symbol with the same compression", cmd_canonical).spaces().symbol();
        f.app->add_option("--which", o.which, "first: analytic split, second: shifted split")
            ->check(CLI::IsMember({"first", "second"}));
        f.format();
    }
    {
        auto f = add("iszero", "decide whether the compression vanishes", cmd_iszero).spaces().symbol();
        f.app->add_option("--which", o.which, "sufficient symbol-class test; omit for the matrix test")
            ->check(CLI::IsMember({"p22", "p27"}));
        f.format();
    }
    {
        auto f = add("conjugate", "sandwich by the model-space conjugations", cmd_conjugate)
                     .spaces()
                     .symbol(false)
                     .matrix(false);
        f.app->get_option("--symbol")->excludes(f.app->get_option("--matrix"));
        f.format();
    }
    {
        auto f = add("rankone", "rank-one member and its symbol", cmd_rankone).spaces();
        f.app->add_option("--l", o.l, "kernel derivative order, 0 <= l < k")->required();
        f.app->add_option("--kind", o.kind, "which factor carries the conjugate kernel")
            ->required()
            ->check(CLI::IsMember({"tilde_k", "k_tilde"}));
        f.format();
    }
    {
        auto f = add("verify", "run the seeded property suite", cmd_verify);
        f.app->add_option("--seed", o.seed, "random seed");
        f.app->add_option("--trials", o.trials, "trials per property and menu entry");
        f.format();
    }
    {
        auto f = add("info", "describe model-space bases", cmd_info);
        f.app->add_option("--alpha", o.alpha, "inner function")->required();
        f.app->add_option("--beta", o.beta, "second inner function");
        f.app->add_option("--k", o.k, "decimation order");
        f.truncation().format();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    for (const auto& [sub, handler] : commands) {
        if (!sub->parsed()) continue;
        try {
            if (sub->get_name() == "conjugate" && o.symbol.empty() == o.matrix.empty())
                throw InvalidInput("conjugate takes exactly one of --symbol and --matrix");
            if (sub->get_name() == "info" && o.beta.empty() && sub->count("--k") > 0)
                throw InvalidInput("--k requires --beta");
            const Output result = handler(o);
            out << result.text;
            err << result.diagnostic;
            return result.code;
        } catch (const InvalidInput& e) {
            err << "error: " << e.what() << "\n";
            return kUsage;
        } catch (const Json::exception& e) {
            err << "error: " << e.what() << "\n";
            return kUsage;
        } catch (const NumericError& e) {
            err << "numeric error: " << e.what() << "\n";
            return kNumeric;
        } catch (const std::exception& e) {
            err << "numeric error: " << e.what() << "\n";
            return kNumeric;
        }
    }
    err << "error: no subcommand\n";
    return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace slant::cli
