#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alg/cli.hpp"
#include "alg/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace alg;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto p = fs::temp_directory_path() / ("alg_test_io_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(std::vector<std::string> args, std::string* err_text = nullptr)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (err_text) *err_text = err.str();
    return code;
}

} // namespace

TEST_CASE("sha256 and number formatting")
{
    CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(INFINITY) == "inf");
    CHECK(io::format_double(-INFINITY) == "-inf");
    CHECK(io::format_double(NAN) == "nan");
    CHECK(io::number(NAN) == "nan");
    CHECK(io::number(2.5) == 2.5);
}

TEST_CASE("spectrum round trip")
{
    const auto s = make_spectrum({{0, 1}, {4 * pi * pi, 4}, {8 * pi * pi, 4}}, 2.5, false);
    const auto back = io::spectrum_from_json(io::spectrum_to_json(s));
    REQUIRE(back.eigenvalues.size() == 3);
    CHECK(back.eigenvalues[1].mu == s.eigenvalues[1].mu);
    CHECK(back.eigenvalues[2].multiplicity == 4);
    CHECK(back.volume == 2.5);
    CHECK_FALSE(back.b1_zero);
    CHECK(io::spectrum_hash(back) == io::spectrum_hash(s));
    auto j = io::spectrum_to_json(s);
    j["eigenvalues"][1][1] = 0;
    CHECK_THROWS(io::spectrum_from_json(j));
}

TEST_CASE("field round trip")
{
    const auto basis = std::make_shared<const FlatTorusBasis>(std::vector<double>{1, 2}, 4 * pi * pi * 1.2);
    const auto g = make_grid(1, 50, 33);
    SpectralField f(basis, g);
    VectorXcd v(g->size());
    for (int i = 0; i < g->size(); ++i) v(i) = {std::exp(-g->node(i)), 1 / g->node(i) / 3};
    f.set(basis->mode(2, 1), v);
    f.set(basis->mode(-1, 0), v * 0.7);
    const auto j = io::field_to_json(f);
    const auto back = io::field_from_json(j);
    CHECK(back.modes().size() == 2);
    CHECK(back.values(basis->mode(2, 1)) == v);
    CHECK(back.values(basis->mode(-1, 0)) == v * 0.7);
    CHECK(io::field_to_json(back).dump() == j.dump());
}

TEST_CASE("csv")
{
    io::Csv c({"a", "b"});
    c.row({"1", "2"}).row({"x", "y"});
    CHECK(c.str() == "a,b\n1,2\nx,y\n");
    CHECK_THROWS(c.row({"1"}));
}

TEST_CASE("manifest lists artifacts with hashes")
{
    const auto dir = scratch("manifest");
    io::Manifest m(dir, "demo");
    m.write("b.txt", "abc");
    m.write("a.txt", "");
    const auto text = m.finish({{"x", 1}}, true);
    const auto j = io::json::parse(text);
    CHECK(j["schema_version"] == 1);
    CHECK(j["command"] == "demo");
    CHECK(j["passed"] == true);
    REQUIRE(j["artifacts"].size() == 2);
    CHECK(j["artifacts"][0]["path"] == "a.txt");
    CHECK(j["artifacts"][1]["sha256"] == io::sha256_hex("abc"));
    CHECK(j["artifacts"][1]["bytes"] == 3);
    CHECK(slurp(dir / "manifest.json") == text);
    fs::remove_all(dir);
}

TEST_CASE("cli usage errors")
{
    CHECK(run({}) == 2);
    CHECK(run({"enumerate", "--no-such-flag"}) == 2);
    CHECK(run({"frobnicate"}) == 2);
    CHECK(run({"enumerate", "--table", "7"}) == 2);
}

TEST_CASE("cli enumerate writes artifacts")
{
    const auto dir = scratch("enumerate");
    REQUIRE(run({"--out", dir.string(), "enumerate", "--audit"}) == 0);
    CHECK(fs::exists(dir / "census.csv"));
    const auto summary = io::json::parse(slurp(dir / "summary.json"));
    CHECK(summary["passed"] == true);
    const auto man = io::json::parse(slurp(dir / "manifest.json"));
    for (const auto& a : man["artifacts"])
        CHECK(a["sha256"] == io::sha256_hex(slurp(dir / a["path"].get<std::string>())));
    fs::remove_all(dir);
}

TEST_CASE("cli domain error writes an error record")
{
    const auto dir = scratch("error");
    std::string err;
    CHECK(run({"--out", dir.string(), "bootstrap", "--beta", "-1"}, &err) == 1);
    const auto rec = io::json::parse(slurp(dir / "error.json"));
    CHECK(rec["module"] == "decay_bootstrap");
    CHECK(err.find("decay_bootstrap") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli output directory from the environment")
{
    const auto env = scratch("env");
    const auto flag = scratch("flag");
    ::setenv("ALG_OUT_DIR", env.string().c_str(), 1);
    CHECK(run({"enumerate", "--table", "3"}) == 0);
    CHECK(fs::exists(env / "manifest.json"));
    CHECK(run({"--out", flag.string(), "enumerate", "--table", "3"}) == 0);
    CHECK(fs::exists(flag / "manifest.json"));
    ::unsetenv("ALG_OUT_DIR");
    CHECK(slurp(env / "census.csv") == slurp(flag / "census.csv"));
    fs::remove_all(env);
    fs::remove_all(flag);
}
