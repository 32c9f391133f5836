#include "sphcap/cli.hpp"
#include "sphcap/error.hpp"
#include "sphcap/io.hpp"
#include "sphcap/shapes.hpp"
#include "sphcap/svg.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

using namespace sphcap;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

// Fresh scratch directory per test case.
struct Scratch {
    fs::path dir;
    Scratch()
    {
        dir = fs::temp_directory_path() / ("sphcap_test_" + std::to_string(std::rand()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path);
    return nlohmann::json::parse(in);
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("polygon JSON round trip")
{
    const MultiPolygon p = generate(default_spec("two-disks-asym"));
    const MultiPolygon back = polygon_from_json(polygon_to_json(p));
    CHECK(back.rings == p.rings);
}

TEST_CASE("polygon JSON errors")
{
    auto kind = [](const char* text) {
        try {
            polygon_from_json(nlohmann::json::parse(text));
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Io;
    };
    CHECK(kind(R"({"ring": []})") == ErrorKind::MalformedInput);
    CHECK(kind(R"({"rings": [[[0, 0], [1, "a"], [1, 1]]]})") == ErrorKind::MalformedInput);
    CHECK(kind(R"({"rings": [[[0, 0], [1, 1], [1, 0], [0, 1]]]})") == ErrorKind::SelfIntersection);
    try {
        load_polygon_file("/nonexistent/poly.json");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
}

TEST_CASE("sig9 keeps nine significant digits")
{
    CHECK(sig9(std::numbers::pi) == 3.14159265);
    CHECK(sig9(0.0) == 0.0);
    CHECK(std::isinf(sig9(INFINITY)));
}

TEST_CASE("verify on the half-disk writes a saturated report")
{
    Scratch tmp;
    const auto r = cli({"verify", "--preset", "half-disk", "--window", "0:2", "--json", tmp / "out.json"});
    CHECK(r.code == kExitOk);
    const auto j = read_json(tmp / "out.json");
    CHECK(std::abs(j["slack_main"].get<double>()) < 0.02);
    CHECK(j["P_Fv"].get<double>() == Approx(std::numbers::pi + 4).epsilon(5e-3));
    CHECK(j["finding"].get<bool>());
    CHECK_FALSE(j["violation"].get<bool>());
    for (const char* key : {"window", "P_E", "gamma_measure", "tv_bound", "estim_bound", "jensen_bound",
                            "disconnected_flag", "strict_hint", "grid", "tolerances", "resolution", "source"})
        CHECK(j.contains(key));
    CHECK(r.out.find("FINDING perimeter_increase") != std::string::npos);
}

TEST_CASE("windows reaching infinity")
{
    Scratch tmp;
    CHECK(cli({"verify", "--preset", "disk", "--window", "0:inf", "--json", tmp / "w.json"}).code == kExitOk);
    CHECK(read_json(tmp / "w.json")["window"]["hi"] == "inf");
    CHECK(cli({"verify", "--preset", "disk", "--window", "0-2"}).code == kExitInputError);
    CHECK(cli({"verify", "--preset", "disk", "--window", "2:1"}).code == kExitInputError);
}

TEST_CASE("highdim prints the closed form")
{
    const auto r = cli({"highdim", "--N", "3", "--alpha", "2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("lateral_E = 3\n") != std::string::npos);
    CHECK(r.out.find("lateral_F = 3.16227766") != std::string::npos);
    CHECK(r.out.find("increased = true") != std::string::npos);
    CHECK(cli({"highdim", "--N", "2", "--alpha", "2"}).code == kExitInputError);
}

TEST_CASE("input errors exit with status 2")
{
    CHECK(cli({"slice", "--preset", "disk", "--r", "-1"}).code == kExitInputError);
    CHECK(cli({"slice", "--r", "1"}).code == kExitInputError);
    CHECK(cli({"slice", "--preset", "disk", "--input", "x.json", "--r", "0.5"}).code == kExitInputError);
    CHECK(cli({"verify", "--preset", "disk", "--samples", "4"}).code == kExitInputError);
    CHECK(cli({"verify", "--preset", "hexagon"}).code == kExitInputError);
    CHECK(cli({"verify", "--preset", "disk", "--distance", "3"}).code == kExitInputError);
    CHECK(cli({"verify", "--preset", "two-disks", "--radius", "3"}).code == kExitInputError);
    CHECK(cli({"verify", "--input", "/nonexistent.json"}).code == kExitInputError);
    CHECK(cli({}).code == kExitInputError);
    CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("slice reports arcs")
{
    const auto r = cli({"slice", "--preset", "disk", "--center-x", "2", "--n", "4096", "--r", "2"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["kind"] == "partial");
    CHECK(j["arc_count"] == 1);
    CHECK(j["v"].get<double>() == Approx(4.0 * std::acos(7.0 / 8.0)).epsilon(1e-5));
    CHECK(j["p"] == 2);
}

TEST_CASE("shape, load and verify give the in-memory report")
{
    Scratch tmp;
    REQUIRE(cli({"shape", "--preset", "tentacle", "--out", tmp / "t.json"}).code == kExitOk);
    REQUIRE(cli({"verify", "--input", tmp / "t.json", "--json", tmp / "a.json"}).code == kExitOk);
    REQUIRE(cli({"verify", "--preset", "tentacle", "--json", tmp / "b.json"}).code == kExitOk);
    auto a = read_json(tmp / "a.json");
    auto b = read_json(tmp / "b.json");
    a.erase("source");
    b.erase("source");
    CHECK(a == b);
}

TEST_CASE("profile CSV feeds rearrange")
{
    Scratch tmp;
    REQUIRE(cli({"profile", "--preset", "half-disk", "--csv", tmp / "p.csv"}).code == kExitOk);
    CHECK(slurp(tmp / "p.csv").rfind("r,v,theta,arc_count,p\n", 0) == 0);
    const auto r = cli({"rearrange", "--profile", tmp / "p.csv", "--window", "0:2", "--out", tmp / "f.json"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("perimeter_rearranged 7.14") != std::string::npos);
    const MultiPolygon f = load_polygon_file(tmp / "f.json");
    CHECK(perimeter(f) == Approx(std::numbers::pi + 4).epsilon(5e-3));
}

TEST_CASE("render writes an SVG with both panels")
{
    Scratch tmp;
    REQUIRE(cli({"render", "--preset", "half-disk", "--out", tmp / "h.svg"}).code == kExitOk);
    const std::string svg = slurp(tmp / "h.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find(">E<") != std::string::npos);
    CHECK(svg.find(">F_v<") != std::string::npos);
    CHECK(cli({"render", "--preset", "disk", "--out", "/nonexistent/dir/x.svg"}).code == kExitInputError);
}

TEST_CASE("the installed binary maps errors to exit codes")
{
    const std::string bin = SPHCAP_CLI_PATH;
    const int bad = std::system((bin + " slice --preset disk --r -1 2>/dev/null").c_str());
    REQUIRE(WIFEXITED(bad));
    CHECK(WEXITSTATUS(bad) == 2);
    const int ok = std::system((bin + " highdim --N 3 --alpha 2 >/dev/null").c_str());
    REQUIRE(WIFEXITED(ok));
    CHECK(WEXITSTATUS(ok) == 0);
}
