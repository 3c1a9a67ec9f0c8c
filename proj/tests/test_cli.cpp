#include "hwl/cli.hpp"
#include "hwl/report.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hwl;

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("hwl_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("bad flags exit 2 with usage") {
    const auto r = call({"sieve", "--bogus"});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("sieve") != std::string::npos);
    CHECK(call({}).code == kExitConfig);
    CHECK(call({"sieve", "--format", "xml"}).code == kExitConfig);
    CHECK(call({"sieve", "--N", "1000", "--eta", "-1"}).code == kExitConfig);
    CHECK(call({"forms", "--k", "13"}).code == kExitConfig);
}

TEST_CASE("sieve report and prime table cache") {
    const fs::path dir = scratch("sieve");
    const auto a = call({"sieve", "--N", "100000", "--j", "2", "--cache-dir", dir.string()});
    REQUIRE(a.code == kExitOk);
    const Json j = Json::parse(a.out);
    CHECK(j["sieve"]["prime_count"] == 9592);
    CHECK(j["sieve"]["cache"] == "miss");
    CHECK(fs::exists(dir / "primes_100001.bin"));
    const auto b = call({"sieve", "--N", "100000", "--j", "2", "--cache-dir", dir.string()});
    CHECK(Json::parse(b.out)["sieve"]["cache"] == "hit");
    CHECK(Json::parse(b.out)["sieve"]["window_moments"] == j["sieve"]["window_moments"]);
    fs::remove_all(dir);
}

TEST_CASE("petersson output and tolerance failure") {
    const auto r = call({"petersson", "--k", "12", "--m", "2", "--n", "3", "--digits", "30", "--tolerance", "1e-15"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["config"]["m"] == 2);
    CHECK(j.contains("window_convention"));
    CHECK(j["geometric_side"]["k"] == 12);
    const auto bad = call({"petersson", "--k", "12", "--c-max", "3", "--tolerance", "1e-20"});
    CHECK(bad.code == kExitPrecision);
    CHECK(bad.err.find("c_max") != std::string::npos);
}

TEST_CASE("config file with flag override") {
    const fs::path dir = scratch("config");
    const fs::path cfg = dir / "run.json";
    std::ofstream(cfg) << R"({"k": 16, "m": 2, "n": 2, "digits": 30, "tolerance": 1e-12})";
    const auto r = call({"petersson", "--config", cfg.string(), "--m", "3"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["config"]["k"] == 16);
    CHECK(j["config"]["m"] == 3);
    CHECK(j["config"]["n"] == 2);
    std::ofstream(dir / "bad.json") << R"({"k": 16, "mystery": 1})";
    CHECK(call({"petersson", "--config", (dir / "bad.json").string()}).code == kExitConfig);
    fs::remove_all(dir);
}

TEST_CASE("output is deterministic and csv has a header") {
    const fs::path dir = scratch("det");
    const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
    REQUIRE(call({"gallagher", "--N", "5000", "--eta", "0.5", "1", "--j", "3", "--output", a}).code == kExitOk);
    REQUIRE(call({"gallagher", "--N", "5000", "--eta", "0.5", "1", "--j", "3", "--output", b}).code == kExitOk);
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    // Identical apart from the recorded output path.
    Json ja = Json::parse(sa.str()), jb = Json::parse(sb.str());
    CHECK(ja["config"]["output"] != jb["config"]["output"]);
    ja["config"].erase("output");
    jb["config"].erase("output");
    CHECK(ja.dump() == jb.dump());
    CHECK(call({"gallagher", "--N", "5000", "--j", "3"}).out == call({"gallagher", "--N", "5000", "--j", "3"}).out);
    const auto csv = call({"forms", "--k", "24", "--n-max", "10", "--format", "csv"});
    REQUIRE(csv.code == kExitOk);
    CHECK(csv.out.rfind("# config:", 0) == 0);
    const auto numeric = call({"forms", "--k", "48", "--n-max", "12", "--format", "csv", "--digits", "30"});
    CHECK(numeric.code == kExitOk);
    fs::remove_all(dir);
}

TEST_CASE("forms import flags a corrupted file") {
    const fs::path dir = scratch("import");
    std::ofstream(dir / "bad.csv") << "# k=12\nn,a\n1,1\n2,-25\n3,252\n4,-1472\n";
    const auto r = call({"forms", "--k", "12", "--import", (dir / "bad.csv").string()});
    CHECK(r.code == kExitFailed);
    CHECK(Json::parse(r.out)["forms"]["import"]["accepted"] == false);
    fs::remove_all(dir);
}

TEST_CASE("verify --quick") {
    const auto r = call({"verify", "--quick"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("cache directory from the environment, flag wins") {
    const fs::path env_dir = scratch("env"), flag_dir = scratch("flag");
    ::setenv("HWL_CACHE_DIR", env_dir.c_str(), 1);
    CHECK(call({"sieve", "--N", "2000"}).code == kExitOk);
    CHECK(fs::exists(env_dir / "primes_2001.bin"));
    CHECK(call({"sieve", "--N", "3000", "--cache-dir", flag_dir.string()}).code == kExitOk);
    CHECK(fs::exists(flag_dir / "primes_3001.bin"));
    CHECK_FALSE(fs::exists(env_dir / "primes_3001.bin"));
    ::unsetenv("HWL_CACHE_DIR");
    fs::remove_all(env_dir);
    fs::remove_all(flag_dir);
}
