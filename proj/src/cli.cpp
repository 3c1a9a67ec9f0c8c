#include "hwl/cli.hpp"

#include "hwl/acceptance.hpp"
#include "hwl/eigenforms.hpp"
#include "hwl/errors.hpp"
#include "hwl/experiments.hpp"
#include "hwl/modforms.hpp"
#include "hwl/petersson.hpp"
#include "hwl/primes.hpp"
#include "hwl/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

namespace hwl {

namespace {

namespace fs = std::filesystem;

// Where report text goes: --output file or the given stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw ConfigError("cannot write " + path);
            out_ = file_.get();
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_;
};

void emit_json(std::ostream& out, const RunConfig& cfg, const std::string& key, const Json& body) {
    Json j = report_header(cfg);
    j[key] = body;
    out << j.dump(2) << "\n";
}

std::string plot_path(const RunConfig& cfg) { return cfg.output.empty() ? "" : cfg.output + ".plot.csv"; }

void check_common(const RunConfig& c) {
    if (c.format != "json" && c.format != "csv") throw ConfigError("--format must be json or csv");
    if (c.threads < 1) throw ConfigError("--threads must be at least 1");
    if (c.digits < 15 || c.digits > 2000) throw ConfigError("--digits must lie in [15, 2000]");
    if (!(c.tolerance > 0)) throw ConfigError("--tolerance must be positive");
    if (c.eta.empty()) throw ConfigError("--eta needs at least one value");
    for (double e : c.eta)
        if (!(e > 0) || !std::isfinite(e)) throw ConfigError("--eta values must be positive");
}

int cmd_sieve(const RunConfig& c, std::ostream& out) {
    if (c.N < 2) throw ConfigError("--N must be at least 2");
    PrimeTable table;
    const std::string cache = c.cache_dir.empty() ? "" : (fs::path(c.cache_dir) / ("primes_" + std::to_string(c.N + 1) + ".bin")).string();
    bool loaded = false;
    if (!cache.empty() && fs::exists(cache)) {
        try {
            table = load_prime_table(cache);
            loaded = table.lo() == 0 && table.hi() == c.N + 1;
        } catch (const std::exception&) {
            loaded = false;
        }
    }
    if (!loaded) {
        table = sieve_range(0, c.N + 1, c.threads);
        if (!cache.empty()) {
            fs::create_directories(c.cache_dir);
            save_prime_table(cache, table);
        }
    }
    const double y = c.eta.front() * std::log(static_cast<double>(c.N));
    const WindowSeries series = window_counts(table, c.N, y, c.threads);
    Sink sink(c.output, out);
    if (c.format == "csv") {
        write_csv_header(sink.stream(), c);
        write_window_csv(sink.stream(), series);
        return kExitOk;
    }
    Json body;
    body["N"] = c.N;
    body["y"] = y;
    body["width"] = series.width;
    std::uint64_t pi = 0;
    for (std::uint64_t m = 2; m <= c.N; ++m) pi += table.is_prime(m) ? 1 : 0;
    body["prime_count"] = pi;
    Json moments = Json::array();
    for (unsigned j = 1; j <= c.j_max; ++j) moments.push_back({{"j", j}, {"sum", window_moment(series, j).get_str()}});
    body["window_moments"] = moments;
    body["cache"] = cache.empty() ? "disabled" : (loaded ? "hit" : "miss");
    emit_json(sink.stream(), c, "sieve", body);
    return kExitOk;
}

int cmd_gallagher(const RunConfig& c, std::ostream& out) {
    const auto table = gallagher_report(c.N, c.eta, c.j_max, c.threads);
    Sink sink(c.output, out);
    if (c.format == "csv") {
        write_csv_header(sink.stream(), c);
        write_csv(sink.stream(), table);
    } else {
        emit_json(sink.stream(), c, "gallagher", to_json(table));
    }
    if (c.plot_data) {
        Sink plot(plot_path(c), out);
        write_plot_data(plot.stream(), table);
    }
    return kExitOk;
}

int cmd_forms(const RunConfig& c, std::ostream& out) {
    const int d = dim_cusp(c.k);
    const std::size_t M = std::max<std::size_t>(c.n_max, std::max(5 * d, 9)) + 1;
    const auto forms = eigenforms(c.k, M, c.digits, c.cache_dir);
    Json body;
    body["k"] = c.k;
    body["dimension"] = d;
    Json arr = Json::array();
    for (const auto& f : forms) arr.push_back(eigenform_json(f, c.n_max, c.digits));
    body["forms"] = arr;
    int code = kExitOk;
    if (!c.import_path.empty()) {
        ImportReport best;
        std::string best_label;
        bool have = false;
        for (const auto& f : forms) {
            auto rep = import_eigenvalues(c.import_path, c.k, &f);
            if (!have || rep.mismatches.size() < best.mismatches.size()) {
                best = rep;
                best_label = f.label();
                have = true;
            }
        }
        if (!have) best = import_eigenvalues(c.import_path, c.k, nullptr);
        Json imp;
        imp["path"] = c.import_path;
        imp["accepted"] = best.accepted;
        imp["rows"] = best.rows;
        imp["compared_with"] = best_label;
        imp["relation_violations"] = best.relation_violations;
        imp["multiplicativity_violations"] = best.multiplicativity_violations;
        Json mm = Json::array();
        for (const auto& m : best.mismatches) mm.push_back({{"n", m.n}, {"expected", m.expected}, {"found", m.found}});
        imp["mismatches"] = mm;
        body["import"] = imp;
        if (!best.accepted) code = kExitFailed;
    }
    Sink sink(c.output, out);
    if (c.format == "csv") {
        write_csv_header(sink.stream(), c);
        for (const auto& f : forms) {
            sink.stream() << "# form " << f.label() << "\n";
            const std::uint64_t n_max = std::min<std::uint64_t>(c.n_max, f.precision());
            if (f.exact()) {
                write_eigenvalues_csv(sink.stream(), f, n_max);
            } else {
                // Numeric forms: decimal a(n), not importable as exact data.
                sink.stream() << "n,a(n)\n";
                const mpfr_bits bits = bits_for_digits(c.digits);
                for (std::uint64_t n = 1; n <= n_max; ++n)
                    sink.stream() << n << "," << f.a(n, bits).str(c.digits) << "\n";
            }
        }
    } else {
        emit_json(sink.stream(), c, "forms", body);
    }
    return code;
}

int cmd_petersson(const RunConfig& c, std::ostream& out) {
    const auto v = geometric_side(c.m, c.n, c.k, c.c_max, c.digits, c.tolerance);
    Sink sink(c.output, out);
    if (c.format == "csv") {
        write_csv_header(sink.stream(), c);
        write_csv(sink.stream(), v);
    } else {
        emit_json(sink.stream(), c, "geometric_side", to_json(v));
    }
    return kExitOk;
}

int cmd_second_moment(const RunConfig& c, bool per_form, std::ostream& out) {
    Json body = Json::array();
    std::vector<LargeWeightReport> reports;
    std::vector<SecondMomentReport> per;
    if (per_form) {
        const auto forms = eigenforms(c.k, c.N * c.N + 1, c.digits, c.cache_dir);
        for (double eta : c.eta)
            for (const auto& f : forms) {
                per.push_back(per_form_second_moment(f, c.N, eta, c.digits));
                body.push_back(to_json(per.back()));
            }
    } else {
        PeterssonEvaluator::Options opt;
        opt.digits = c.digits;
        opt.tolerance = c.tolerance;
        opt.threads = c.threads;
        PeterssonEvaluator ev(opt);
        for (double eta : c.eta) {
            reports.push_back(large_weight_report(c.k, c.N, eta, ev));
            body.push_back(to_json(reports.back()));
        }
    }
    Sink sink(c.output, out);
    if (c.format == "csv") {
        write_csv_header(sink.stream(), c);
        for (const auto& r : per) write_csv(sink.stream(), r);
        for (const auto& t : reports) write_csv(sink.stream(), t.moment);
    } else {
        emit_json(sink.stream(), c, "second_moment", body);
    }
    if (c.plot_data) {
        Sink plot(plot_path(c), out);
        plot.stream() << "eta,moment_over_N,unconditional,conjectural\n";
        for (const auto& t : reports)
            plot.stream() << t.moment.eta << ',' << t.normalized_total.str(17) << ',' << t.unconditional_target << ','
                          << t.conjectural_target << "\n";
        for (const auto& r : per)
            plot.stream() << r.eta << ',' << (r.total / static_cast<long>(r.N)).str(17) << ','
                          << (r.exact_prime_square_moment.get_d() + r.exact_prime_first_moment.get_d()) /
                                 static_cast<double>(r.N)
                          << ',' << r.eta * r.eta + 2 * r.eta << "\n";
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& c, const std::vector<int>& only, std::ostream& out) {
    AcceptanceOptions opt;
    opt.quick = c.quick;
    opt.threads = c.threads;
    opt.cache_dir = c.cache_dir;
    opt.only = only;
    opt.on_result = [&](const CriterionResult& r) { out << format_result(r) << std::endl; };
    const auto results = run_acceptance(opt);
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    out << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? kExitOk : kExitFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Harmonic weights, Hecke eigenvalues and primes in short windows", "hwl"};
    app.require_subcommand(1, 1);
    RunConfig cfg;
    std::string config_path;
    std::vector<int> only;
    bool per_form = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--N", cfg.N, "upper end of n");
        sub->add_option("--eta", cfg.eta, "window scale(s); y = eta log N")->expected(1, -1);
        sub->add_option("--k", cfg.k, "weight");
        sub->add_option("--j", cfg.j_max, "largest moment");
        sub->add_option("--digits", cfg.digits, "working decimal digits");
        sub->add_option("--tolerance", cfg.tolerance, "absolute tolerance for geometric sides");
        sub->add_option("--cache-dir", cfg.cache_dir, "cache directory (else $HWL_CACHE_DIR)");
        sub->add_option("--format", cfg.format, "json or csv");
        sub->add_option("--threads", cfg.threads, "worker threads");
        sub->add_flag("--plot-data", cfg.plot_data, "also emit an (eta, moment) series");
        sub->add_option("--config", config_path, "JSON config file; flags override it");
        sub->add_option("--output", cfg.output, "report file (default stdout)");
    };
    auto* sieve = app.add_subcommand("sieve", "window counts and moments");
    auto* gallagher = app.add_subcommand("gallagher", "window moments against Poisson and Hardy-Littlewood");
    auto* forms = app.add_subcommand("forms", "Hecke eigenforms and eigenvalue import");
    auto* petersson = app.add_subcommand("petersson", "geometric side H[m,n]");
    auto* second = app.add_subcommand("second-moment", "second moment of the prime window sums");
    auto* verify = app.add_subcommand("verify", "acceptance suite");
    for (auto* s : {sieve, gallagher, forms, petersson, second, verify}) common(s);
    forms->add_option("--n-max", cfg.n_max, "coefficients to print");
    forms->add_option("--import", cfg.import_path, "eigenvalue CSV to validate");
    petersson->add_option("--m", cfg.m, "first index");
    petersson->add_option("--n", cfg.n, "second index");
    petersson->add_option("--c-max", cfg.c_max, "largest modulus (0: from tolerance)");
    second->add_flag("--per-form", per_form, "exact per-form sums over every eigenform of weight k");
    verify->add_flag("--quick", cfg.quick, "exact-identity checks only");
    verify->add_option("--only", only, "criterion ids");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitConfig;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        auto given = [&](const char* name) {
            const CLI::Option* o = chosen->get_option_no_throw(name);
            return o && o->count() > 0;
        };
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot read config " + config_path);
            Json j;
            try {
                j = Json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("config is not valid JSON: ") + e.what());
            }
            // File values first, then re-apply flags given on the command line.
            RunConfig from_file = config_from_json(j, RunConfig{});
            RunConfig flags = cfg;
            cfg = from_file;
            if (given("--N")) cfg.N = flags.N;
            if (given("--eta")) cfg.eta = flags.eta;
            if (given("--k")) cfg.k = flags.k;
            if (given("--j")) cfg.j_max = flags.j_max;
            if (given("--digits")) cfg.digits = flags.digits;
            if (given("--tolerance")) cfg.tolerance = flags.tolerance;
            if (given("--cache-dir")) cfg.cache_dir = flags.cache_dir;
            if (given("--format")) cfg.format = flags.format;
            if (given("--threads")) cfg.threads = flags.threads;
            if (given("--plot-data")) cfg.plot_data = flags.plot_data;
            if (given("--output")) cfg.output = flags.output;
            if (given("--n-max")) cfg.n_max = flags.n_max;
            if (given("--import")) cfg.import_path = flags.import_path;
            if (given("--m")) cfg.m = flags.m;
            if (given("--n")) cfg.n = flags.n;
            if (given("--c-max")) cfg.c_max = flags.c_max;
            if (given("--quick")) cfg.quick = flags.quick;
        }
        cfg.subcommand = chosen->get_name();
        if (const char* env = std::getenv("HWL_CACHE_DIR"); env && *env && !given("--cache-dir"))
            cfg.cache_dir = env;
        check_common(cfg);
        if (cfg.subcommand == "sieve") return cmd_sieve(cfg, out);
        if (cfg.subcommand == "gallagher") return cmd_gallagher(cfg, out);
        if (cfg.subcommand == "forms") return cmd_forms(cfg, out);
        if (cfg.subcommand == "petersson") return cmd_petersson(cfg, out);
        if (cfg.subcommand == "second-moment") return cmd_second_moment(cfg, per_form, out);
        return cmd_verify(cfg, only, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PrecisionError& e) {
        err << "precision error: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailed;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace hwl
