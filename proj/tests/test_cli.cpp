#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "slant/cli.hpp"
#include "slant/json_io.hpp"

using namespace slant;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result slantc(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("slantc-test-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

const std::string z5 = R"({"coeffs":[{"n":5,"re":1,"im":0}]})";
const std::string blaschke = R"({"type":"blaschke","zeros":[{"re":0.5,"im":0},{"re":-0.3,"im":0}]})";

}  // namespace

TEST_CASE("build of z^5 is the zero matrix") {
    const Result r = slantc({"build", "--k", "2", "--alpha", "z^4", "--beta", "z^3", "--symbol", z5});
    CHECK(r.code == cli::kOk);
    const OperatorMatrix m = matrix_from_json(Json::parse(r.out));
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 4);
    CHECK(m.isZero(0.0));
}

TEST_CASE("every matrix is a member for k = 5") {
    TempDir dir;
    std::mt19937_64 rng(51);
    for (int t = 0; t < 5; ++t) {
        const std::string file = dir.write("M.json", dump(matrix_to_json(testing::random_matrix(rng, 3, 4))));
        const Result r = slantc({"membership", "--k", "5", "--alpha", "z^4", "--beta", "z^3", "--matrix", file});
        CHECK(r.code == cli::kOk);
        const Json j = Json::parse(r.out);
        CHECK(j["member"] == true);
        for (const char* key : {"member", "residual", "variant", "chi", "psis", "tolerance"}) CHECK(j.contains(key));
        CHECK(j["psis"].size() == 5);
    }
}

TEST_CASE("non-members exit with 1") {
    const std::string m = R"({"rows":3,"cols":4,"data":[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})";
    for (const char* v : {"t35", "c38", "c310a", "c310b"}) {
        const Result r =
            slantc({"membership", "--k", "2", "--alpha", "z^4", "--beta", "z^3", "--matrix", m, "--variant", v});
        CHECK(r.code == cli::kNegative);
        CHECK(Json::parse(r.out)["member"] == false);
        CHECK(Json::parse(r.out)["variant"] == v);
    }
    const Result rec = slantc({"recover", "--k", "2", "--alpha", "z^4", "--beta", "z^3", "--matrix", m});
    CHECK(rec.code == cli::kNegative);
    CHECK(rec.out.empty());
    CHECK_FALSE(rec.err.empty());
}

TEST_CASE("build, recover, build round trip through files") {
    TempDir dir;
    std::mt19937_64 rng(52);
    for (const std::string& alpha : {std::string("z^4"), blaschke}) {
        for (const char* variant : {"t35", "c38", "c310a", "c310b"}) {
            const std::string sym = dir.write("phi.json", dump(to_json(testing::random_poly(rng, -8, 12))));
            const std::vector<std::string> spaces{"--k", "2", "--alpha", alpha, "--beta", "z^3"};
            auto with = [&](std::vector<std::string> head, std::vector<std::string> tail) {
                head.insert(head.end(), spaces.begin(), spaces.end());
                head.insert(head.end(), tail.begin(), tail.end());
                return head;
            };
            const Result b1 = slantc(with({"build"}, {"--symbol", sym}));
            REQUIRE(b1.code == 0);
            const std::string mfile = dir.write("M.json", b1.out);
            const Result rec = slantc(with({"recover"}, {"--matrix", mfile, "--variant", variant}));
            REQUIRE(rec.code == 0);
            const std::string sfile = dir.write("S.json", rec.out);
            const Result b2 = slantc(with({"build"}, {"--symbol", sfile}));
            REQUIRE(b2.code == 0);
            const OperatorMatrix m1 = matrix_from_json(Json::parse(b1.out));
            const OperatorMatrix m2 = matrix_from_json(Json::parse(b2.out));
            CHECK(relative_distance(m2, m1) < 1e-9);
        }
    }
}

TEST_CASE("other subcommands") {
    const std::vector<std::string> sp{"--k", "2", "--alpha", "z^4", "--beta", "z^3"};
    auto cmd = [&](std::vector<std::string> head, std::vector<std::string> tail = {}) {
        head.insert(head.end(), sp.begin(), sp.end());
        head.insert(head.end(), tail.begin(), tail.end());
        return slantc(head);
    };
    const std::string z4 = R"({"coeffs":[{"n":4,"re":1,"im":0}]})";

    Result r = cmd({"iszero"}, {"--symbol", z5});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["zero"] == true);
    r = cmd({"iszero"}, {"--symbol", z5, "--which", "p22"});
    CHECK(r.code == 1);
    r = cmd({"iszero"}, {"--symbol", z4});
    CHECK(r.code == 1);

    r = cmd({"canonical"}, {"--symbol", R"({"coeffs":[{"n":-5,"re":1,"im":0},{"n":1,"re":1,"im":0}]})"});
    CHECK(r.code == 0);
    CHECK(max_abs_diff(laurent_from_json(Json::parse(r.out)), LaurentPoly::monomial(1)) < 1e-14);
    CHECK(cmd({"canonical"}, {"--symbol", z4, "--which", "second"}).code == 0);

    r = cmd({"conjugate"}, {"--symbol", z4});
    CHECK(r.code == 0);
    CHECK(max_abs_diff(laurent_from_json(Json::parse(r.out)["symbol"]), LaurentPoly::monomial(-3)) < 1e-14);
    const std::string m = dump(Json::parse(r.out)["matrix"]);
    r = cmd({"conjugate"}, {"--matrix", m});
    CHECK(r.code == 0);
    CHECK(matrix_from_json(Json::parse(r.out))(2, 0) == Complex(1.0));

    r = cmd({"rankone"}, {"--l", "1", "--kind", "k_tilde"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out).contains("symbol"));
    CHECK(cmd({"rankone"}, {"--l", "2", "--kind", "k_tilde"}).code == cli::kUsage);

    r = slantc({"ttoeplitz", "--alpha", "z^2", "--beta", "z^2", "--symbol", R"({"coeffs":[{"n":1,"re":1,"im":0}]})"});
    CHECK(r.code == 0);
    CHECK(matrix_from_json(Json::parse(r.out))(1, 0) == Complex(1.0));

    r = slantc({"info", "--alpha", blaschke, "--beta", "z^3", "--k", "2"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["alpha"]["dim"] == 2);
    CHECK(Json::parse(r.out)["universal"] == true);
}

TEST_CASE("verify is byte-identical for a fixed seed") {
    const Result a = slantc({"verify", "--seed", "7", "--trials", "5"});
    const Result b = slantc({"verify", "--seed", "7", "--trials", "5"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(Json::parse(a.out)["all_passed"] == true);
    CHECK(slantc({"verify", "--trials", "0"}).code == cli::kUsage);
}

TEST_CASE("usage errors leave stdout empty") {
    TempDir dir;
    const std::vector<std::vector<std::string>> bad{
        {},
        {"build", "--k", "2", "--alpha", "z^4"},
        {"build", "--k", "2", "--alpha", "z^4", "--beta", "z^3", "--symbol", "/no/such/file.json"},
        {"build", "--k", "2", "--alpha", "z^4", "--beta", "z^3", "--symbol", "{not json"},
        {"build", "--k", "2", "--alpha", "z^4", "--beta", "z^3", "--symbol", R"({"coeffs":[{"n":1,"re":1}]})"},
        {"build", "--k", "0", "--alpha", "z^4", "--beta", "z^3", "--symbol", z5},
        {"build", "--k", "2", "--alpha", "y^4", "--beta", "z^3", "--symbol", z5},
        {"build", "--k", "2", "--alpha", "z^4", "--beta", "z^3", "--symbol", z5, "--format", "xml"},
        {"build", "--k", "2", "--alpha", "z^4", "--beta", "z^3", "--symbol", z5, "--variant", "t35"},
        {"membership", "--k", "2", "--alpha", "z^4", "--beta", "z^3", "--matrix", R"({"rows":1,"cols":1,"data":[[1,0]]})"},
        {"membership", "--k", "2", "--alpha", "z^4", "--beta", "z^3", "--matrix", "{}", "--variant", "t36"},
        {"conjugate", "--k", "2", "--alpha", "z^4", "--beta", "z^3"},
        {"conjugate", "--k", "2", "--alpha", "z^4", "--beta", "z^3", "--symbol", z5, "--matrix", "{}"},
        {"frobnicate"},
        {"build", "ttoeplitz"},
    };
    for (const auto& args : bad) {
        const Result r = slantc(args);
        CAPTURE(args.size());
        CHECK(r.code == cli::kUsage);
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
    }
}

TEST_CASE("numeric errors exit with 3") {
    const Result r = slantc({"build", "--k", "2", "--alpha", R"({"type":"blaschke","zeros":[{"re":0.9,"im":0}]})",
                             "--beta", "z^3", "--symbol", z5, "--truncation", "10"});
    CHECK(r.code == cli::kNumeric);
    CHECK(r.out.empty());
}

TEST_CASE("help") {
    const Result r = slantc({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("membership") != std::string::npos);
}
