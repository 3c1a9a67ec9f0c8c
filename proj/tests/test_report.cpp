#include "hwl/errors.hpp"
#include "hwl/experiments.hpp"
#include "hwl/petersson.hpp"
#include "hwl/report.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace hwl;

TEST_CASE("config round trip (random configs)") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 30; ++t) {
        RunConfig c;
        c.subcommand = t % 2 ? "gallagher" : "petersson";
        c.N = 2 + rng() % 100000;
        c.eta = {0.1 * static_cast<double>(1 + rng() % 30), 0.5};
        c.k = 12 + 2 * static_cast<int>(rng() % 100);
        c.j_max = 1 + rng() % 3;
        c.digits = 15 + static_cast<int>(rng() % 100);
        c.tolerance = 1e-25 * static_cast<double>(1 + rng() % 9);
        c.cache_dir = "/tmp/c" + std::to_string(rng() % 10);
        c.format = t % 3 ? "json" : "csv";
        c.threads = 1 + static_cast<int>(rng() % 4);
        c.plot_data = rng() % 2;
        c.m = 1 + rng() % 50;
        c.n = 1 + rng() % 50;
        c.c_max = rng() % 1000;
        const Json j = to_json(c);
        const RunConfig back = config_from_json(j);
        CHECK(to_json(back).dump() == j.dump());
        CHECK(config_from_json(Json::parse(j.dump())).tolerance == c.tolerance);
    }
}

TEST_CASE("config rejects unknown keys and wrong types") {
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"N": 100, "bogus": 1})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"N": "many"})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::parse("[1, 2]")), ConfigError);
    const RunConfig c = config_from_json(Json::parse(R"({"k": 24})"));
    CHECK(c.k == 24);
    CHECK(c.N == RunConfig{}.N);
}

TEST_CASE("reports are deterministic") {
    RunConfig c;
    c.subcommand = "second-moment";
    auto render = [&] {
        const auto r = harmonic_second_moment(1000, 15, 1.0, 1e-20, 40);
        Json j = report_header(c);
        j["second_moment"] = to_json(r);
        return j.dump(2);
    };
    const std::string a = render(), b = render();
    CHECK(a == b);
    CHECK(a.find("window_convention") != std::string::npos);
    CHECK(a.find("\"precision\"") != std::string::npos);
}

TEST_CASE("CSV carries the configuration header") {
    RunConfig c;
    c.subcommand = "gallagher";
    std::ostringstream out;
    write_csv_header(out, c);
    write_csv(out, gallagher_report(500, {1.0}, 2));
    const std::string s = out.str();
    CHECK(s.rfind("# ", 0) == 0);
    CHECK(s.find(kWindowConvention) != std::string::npos);
    std::istringstream in(s);
    std::string line;
    std::size_t data = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') ++data;
    CHECK(data == 3);  // column header plus j = 1, 2
}
