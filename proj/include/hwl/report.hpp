#pragma once

// JSON and CSV emission. Reports are deterministic: no timestamps, fixed key
// order, reals printed to the configured number of digits.

#include "hwl/eigenforms.hpp"
#include "hwl/experiments.hpp"
#include "hwl/petersson.hpp"
#include "hwl/primes.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hwl {

using Json = nlohmann::ordered_json;

struct RunConfig {
    std::string subcommand;
    std::uint64_t N = 1000;
    std::vector<double> eta{1.0};
    int k = 12;
    unsigned j_max = 2;
    int digits = 60;
    double tolerance = 1e-20;
    std::string cache_dir;
    std::string format = "json";
    int threads = 1;
    bool plot_data = false;
    bool quick = false;
    std::string output;  // empty: stdout
    // petersson
    std::uint64_t m = 1;
    std::uint64_t n = 1;
    std::uint64_t c_max = 0;
    // forms
    std::uint64_t n_max = 30;
    std::string import_path;
};

Json to_json(const RunConfig& config);
/// Reads the keys produced by to_json; unknown keys and wrong types throw ConfigError.
RunConfig config_from_json(const Json& j, RunConfig base = {});

/// {"config", "window_convention", "precision"} shared by every report.
Json report_header(const RunConfig& config);

Json to_json(const GeometricSideValue& v);
Json to_json(const HarmonicWeights& w, int digits);
Json to_json(const SecondMomentReport& r);
Json to_json(const LargeWeightReport& t);
Json to_json(const GallagherTable& t);
Json to_json(const IdentityReport& r);
Json eigenform_json(const Eigenform& f, std::uint64_t n_max, int digits);

/// Header lines "# key: value" followed by a table.
void write_csv_header(std::ostream& out, const RunConfig& config);
void write_csv(std::ostream& out, const GallagherTable& t);
void write_csv(std::ostream& out, const SecondMomentReport& r);
void write_csv(std::ostream& out, const GeometricSideValue& v);
/// (eta, moment) series, one row per eta and j.
void write_plot_data(std::ostream& out, const GallagherTable& t);

}  // namespace hwl
