#include "hwl/report.hpp"

#include "hwl/errors.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace hwl {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

template <class T>
T get_as(const Json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

}  // namespace

Json to_json(const RunConfig& c) {
    Json j;
    j["subcommand"] = c.subcommand;
    j["N"] = c.N;
    j["eta"] = c.eta;
    j["k"] = c.k;
    j["j_max"] = c.j_max;
    j["digits"] = c.digits;
    j["tolerance"] = c.tolerance;
    j["cache_dir"] = c.cache_dir;
    j["format"] = c.format;
    j["threads"] = c.threads;
    j["plot_data"] = c.plot_data;
    j["quick"] = c.quick;
    j["output"] = c.output;
    j["m"] = c.m;
    j["n"] = c.n;
    j["c_max"] = c.c_max;
    j["n_max"] = c.n_max;
    j["import_path"] = c.import_path;
    return j;
}

RunConfig config_from_json(const Json& j, RunConfig c) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key == "subcommand") c.subcommand = get_as<std::string>(j, "subcommand");
        else if (key == "N") c.N = get_as<std::uint64_t>(j, "N");
        else if (key == "eta") {
            c.eta = j.at("eta").is_array() ? get_as<std::vector<double>>(j, "eta")
                                           : std::vector<double>{get_as<double>(j, "eta")};
        } else if (key == "k") c.k = get_as<int>(j, "k");
        else if (key == "j_max") c.j_max = get_as<unsigned>(j, "j_max");
        else if (key == "digits") c.digits = get_as<int>(j, "digits");
        else if (key == "tolerance") c.tolerance = get_as<double>(j, "tolerance");
        else if (key == "cache_dir") c.cache_dir = get_as<std::string>(j, "cache_dir");
        else if (key == "format") c.format = get_as<std::string>(j, "format");
        else if (key == "threads") c.threads = get_as<int>(j, "threads");
        else if (key == "plot_data") c.plot_data = get_as<bool>(j, "plot_data");
        else if (key == "quick") c.quick = get_as<bool>(j, "quick");
        else if (key == "output") c.output = get_as<std::string>(j, "output");
        else if (key == "m") c.m = get_as<std::uint64_t>(j, "m");
        else if (key == "n") c.n = get_as<std::uint64_t>(j, "n");
        else if (key == "c_max") c.c_max = get_as<std::uint64_t>(j, "c_max");
        else if (key == "n_max") c.n_max = get_as<std::uint64_t>(j, "n_max");
        else if (key == "import_path") c.import_path = get_as<std::string>(j, "import_path");
        else throw ConfigError("unknown config key '" + key + "'");
    }
    return c;
}

Json report_header(const RunConfig& c) {
    Json j;
    j["config"] = to_json(c);
    j["window_convention"] = kWindowConvention;
    j["precision"] = {{"digits", c.digits}, {"bits", bits_for_digits(c.digits)}, {"tolerance", c.tolerance}};
    return j;
}

Json to_json(const GeometricSideValue& v) {
    Json j;
    j["m"] = v.m;
    j["n"] = v.n;
    j["k"] = v.k;
    j["value"] = v.value.str(v.digits);
    j["tail_bound"] = v.tail_bound;
    j["estimated_error"] = v.estimated_error;
    j["certified"] = v.certified;
    j["c_max"] = v.c_max;
    j["terms_evaluated"] = v.terms_evaluated;
    j["digits"] = v.digits;
    j["tolerance"] = v.tolerance;
    return j;
}

Json to_json(const HarmonicWeights& w, int digits) {
    Json j;
    j["k"] = w.k;
    Json forms = Json::array();
    for (std::size_t i = 0; i < w.labels.size(); ++i)
        forms.push_back({{"label", w.labels[i]}, {"weight", w.weights[i].str(digits)}});
    j["weights"] = forms;
    j["fit_pairs"] = w.fit_pairs;
    j["held_out"] = w.held_out;
    j["residual"] = w.residual.str(6);
    j["condition"] = w.condition;
    return j;
}

Json to_json(const SecondMomentReport& r) {
    const int d = r.digits;
    Json j;
    j["mode"] = r.mode;
    if (!r.label.empty()) j["label"] = r.label;
    j["k"] = r.k;
    j["N"] = r.N;
    j["eta"] = r.eta;
    j["y"] = num(r.y);
    j["width"] = r.width;
    j["window_convention"] = r.window_convention;
    j["digits"] = d;
    j["total"] = r.total.str(d);
    j["diagonal"] = r.diagonal.str(d);
    j["off_diagonal"] = r.off_diagonal.str(d);
    j["exact_prime_square_moment"] = r.exact_prime_square_moment.get_str();
    j["exact_prime_first_moment"] = r.exact_prime_first_moment.get_str();
    j["pair_incidences"] = r.pair_incidences.get_str();
    j["pair_tuple_sum"] = r.pair_tuple_sum.get_str();
    j["prediction_conjectural"] = r.prediction_conjectural;
    if (r.mode == "per-form") {
        j["routes"] = {{"direct", r.route_direct.str(d)},
                       {"split", r.route_split.str(d)},
                       {"hecke_expanded", r.route_hecke.str(d)},
                       {"max_discrepancy", r.route_discrepancy},
                       {"exact_field_arithmetic", r.routes_exact}};
    } else {
        j["h11"] = r.h11.str(d);
        j["diagonal_ratio"] = r.diagonal_ratio.str(20);
        j["diagonal_delta"] = r.diagonal_delta;
        j["correction"] = r.correction.str(20);
        j["certified_tail"] = r.certified_tail;
        j["estimated_error"] = r.estimated_error;
        Json budget = Json::array();
        for (const auto& b : r.error_budget)
            budget.push_back({{"term", b.name}, {"value", b.value}, {"bound", b.bound}, {"certified", b.certified}});
        j["error_budget"] = budget;
        j["trace_formula_constant"] = kTraceFormulaConstant;
        j["distinct_h_values"] = r.distinct_h_values;
        j["cache_hits"] = r.cache_hits;
        j["cache_misses"] = r.cache_misses;
        j["regime"] = r.in_regime ? "k >= N^2" : "outside the k >= N^2 regime";
    }
    return j;
}

Json to_json(const LargeWeightReport& t) {
    Json j;
    j["moment"] = to_json(t.moment);
    j["normalized_total"] = t.normalized_total.str(20);
    j["unconditional"] = {{"target", t.unconditional_target},
                          {"discrepancy", t.discrepancy_unconditional},
                          {"correction_budget", t.correction_budget},
                          {"certified_part", t.certified_part},
                          {"heuristic_part", t.heuristic_part},
                          {"within_budget", t.within_budget}};
    j["conjectural"] = {{"label", "Hardy-Littlewood / Poisson (conjectural)"},
                        {"target", t.conjectural_target},
                        {"discrepancy", t.discrepancy_conjectural}};
    j["regime"] = t.in_regime ? "k >= N^2" : "outside the k >= N^2 regime";
    return j;
}

Json to_json(const GallagherTable& t) {
    Json j;
    j["N"] = t.N;
    j["j_max"] = t.j_max;
    j["hl_p_max"] = t.hl_p_max;
    j["window_convention"] = t.window_convention;
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"eta", r.eta},
                        {"j", r.j},
                        {"y", num(r.y)},
                        {"width", r.width},
                        {"moment", r.moment.get_str()},
                        {"empirical", r.empirical},
                        {"gallagher", r.gallagher},
                        {"relative_error", r.relative_error},
                        {"identity", r.identity_exact ? "exact" : "MISMATCH"},
                        {"hl_conjectural", r.hl_conjectural},
                        {"hl_tail", r.hl_tail}});
    }
    j["rows"] = rows;
    return j;
}

Json to_json(const IdentityReport& r) {
    Json j;
    j["N"] = r.N;
    j["y"] = num(r.y);
    j["j"] = r.j;
    j["max_offset"] = r.max_offset;
    j["lhs"] = r.lhs.get_str();
    j["rhs"] = r.rhs.get_str();
    j["equal"] = r.equal;
    j["first_mismatch_r"] = r.first_mismatch_r;
    return j;
}

Json eigenform_json(const Eigenform& f, std::uint64_t n_max, int digits) {
    Json j;
    j["label"] = f.label();
    j["k"] = f.weight();
    j["exact"] = f.exact();
    Json rows = Json::array();
    const mpfr_bits bits = bits_for_digits(digits) + 16;
    for (std::uint64_t n = 1; n <= n_max && n <= f.precision(); ++n) {
        Json row{{"n", n}};
        if (f.exact()) row["a"] = f.a_exact(n).str();
        row["a_real"] = f.a(n, bits).str(digits);
        row["lambda"] = f.lambda(n, bits).str(digits);
        rows.push_back(row);
    }
    j["coefficients"] = rows;
    return j;
}

void write_csv_header(std::ostream& out, const RunConfig& c) {
    out << "# config: " << to_json(c).dump() << "\n";
    out << "# window_convention: " << kWindowConvention << "\n";
    out << "# precision: digits=" << c.digits << " bits=" << bits_for_digits(c.digits) << " tolerance=" << num(c.tolerance)
        << "\n";
}

void write_csv(std::ostream& out, const GallagherTable& t) {
    out << "eta,j,y,width,moment,empirical,gallagher,relative_error,identity,hl_conjectural,hl_tail\n";
    for (const auto& r : t.rows) {
        out << num(r.eta) << ',' << r.j << ',' << num(r.y) << ',' << r.width << ',' << r.moment.get_str() << ','
            << num(r.empirical) << ',' << num(r.gallagher) << ',' << num(r.relative_error) << ','
            << (r.identity_exact ? "exact" : "MISMATCH") << ',' << num(r.hl_conjectural) << ',' << num(r.hl_tail) << "\n";
    }
}

void write_csv(std::ostream& out, const SecondMomentReport& r) {
    // Flatten the JSON report into quantity,value rows.
    out << "quantity,value\n";
    const Json j = to_json(r);
    for (const auto& [key, value] : j.items()) {
        if (value.is_structured()) {
            if (value.is_object()) {
                for (const auto& [k2, v2] : value.items())
                    out << key << '.' << k2 << ',' << (v2.is_string() ? v2.get<std::string>() : v2.dump()) << "\n";
            } else {
                for (const auto& item : value)
                    out << key << '.' << item.value("term", "") << ',' << item.value("value", 0.0) << "\n";
            }
            continue;
        }
        out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
}

void write_csv(std::ostream& out, const GeometricSideValue& v) {
    out << "m,n,k,value,tail_bound,estimated_error,certified,c_max,terms_evaluated\n";
    out << v.m << ',' << v.n << ',' << v.k << ',' << v.value.str(v.digits) << ',' << num(v.tail_bound) << ','
        << num(v.estimated_error) << ',' << (v.certified ? 1 : 0) << ',' << v.c_max << ',' << v.terms_evaluated << "\n";
}

void write_plot_data(std::ostream& out, const GallagherTable& t) {
    out << "eta,j,empirical,gallagher\n";
    for (const auto& r : t.rows)
        out << num(r.eta) << ',' << r.j << ',' << num(r.empirical) << ',' << num(r.gallagher) << "\n";
}

}  // namespace hwl
