// adseq command-line front end: config ingestion, experiment
// orchestration, bound/empirical comparison reports, plot-ready CSV/JSON
// emission. All numerics go through the shared library's C interface.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adseq.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPower = 3;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void bail(int code, const std::string& message) {
    throw CliError{code, message};
}

void check(adseq_status st) {
    if (st == ADSEQ_OK) return;
    const int code = st == ADSEQ_ERR_QUADRATURE ? kExitPower : kExitConfig;
    bail(code, adseq_last_error());
}

std::string take_string(adseq_status st, char* owned) {
    check(st);
    std::string out(owned);
    adseq_string_free(owned);
    return out;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bail(kExitConfig, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Collected outputs for the run manifest; files are recorded once fully
// written.
struct OutputSink {
    fs::path dir;
    std::vector<std::string> written;

    void write(const std::string& name, const std::string& content) {
        fs::create_directories(dir);
        const fs::path path = dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) bail(kExitConfig, "cannot write " + path.string());
        out << content;
        out.close();
        written.push_back(path.string());
    }
};

void write_manifest(OutputSink& sink, const std::string& command, const std::string& config_path,
                    const std::string& config_text, double wall_seconds) {
    json m;
    m["command"] = command;
    m["config_path"] = config_path;
    if (!config_text.empty()) {
        char hex[17];
        check(adseq_config_hash(config_text.c_str(), hex));
        m["config_hash"] = std::string(hex);
    } else {
        m["config_hash"] = "";
    }
    m["artifact_version"] = adseq_version();
    m["wall_clock_seconds"] = wall_seconds;
    m["outputs"] = sink.written;
    sink.write("manifest.json", m.dump(2) + "\n");
}

// --set a.b.c=value overrides one config leaf; the value parses as a JSON
// literal first and falls back to a plain string.
void apply_overrides(json& cfg, const std::vector<std::string>& sets) {
    for (const std::string& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) bail(kExitConfig, "--set expects key.path=value");
        std::string path = "/" + s.substr(0, eq);
        for (auto& ch : path)
            if (ch == '.') ch = '/';
        const std::string raw = s.substr(eq + 1);
        json value = json::parse(raw, nullptr, false);
        if (value.is_discarded()) value = raw;
        cfg[json::json_pointer(path)] = value;
    }
}

json load_config(const std::string& path, const std::vector<std::string>& sets,
                 std::uint32_t threads, std::optional<std::uint64_t> seed) {
    json cfg;
    if (!path.empty()) {
        cfg = json::parse(read_file(path), nullptr, false);
        if (cfg.is_discarded()) bail(kExitConfig, "malformed JSON config: " + path);
    } else {
        cfg = json::object();
    }
    apply_overrides(cfg, sets);
    if (threads > 0) cfg["sim"]["threads"] = threads;
    if (seed) cfg["sim"]["seed"] = *seed;
    return cfg;
}

// ---- regimes ----------------------------------------------------------------

json regime_rows(double gamma, double b, const std::vector<double>& ps) {
    json rows = json::array();
    for (double p : ps) {
        adseq_regime r;
        check(adseq_regime_predict(gamma, b, p, &r));
        json row;
        row["gamma"] = gamma;
        row["b"] = b;
        row["p"] = p;
        row["moment_exponent"] = r.moment_exponent;
        row["log_factor"] = r.log_factor != 0;
        if (r.holder_delta >= 0.0) row["holder_delta"] = r.holder_delta;
        row["ld_p"] = r.ld_p;
        json conds;
        for (const char* kind :
             {"weak_moment", "weak_moment_vanishing", "strong_moment", "longrun_variance"}) {
            int holds = 0;
            double margin = 0.0, critical = 0.0;
            check(adseq_check_condition(kind, gamma, b, p, 0, &holds, &margin, &critical));
            conds[kind] = {{"holds", holds != 0}, {"margin", margin}, {"critical_p", critical}};
        }
        row["conditions"] = std::move(conds);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string regimes_csv(const json& rows) {
    std::string out =
        "gamma,b,p,moment_exponent,log_factor,holder_delta,ld_p,weak_moment,strong_moment,"
        "longrun_variance\n";
    for (const auto& r : rows) {
        std::ostringstream os;
        os << r["gamma"].get<double>() << ',' << r["b"].get<double>() << ','
           << r["p"].get<double>() << ',' << r["moment_exponent"].get<double>() << ','
           << (r["log_factor"].get<bool>() ? 1 : 0) << ','
           << (r.contains("holder_delta") ? std::to_string(r["holder_delta"].get<double>())
                                          : std::string("none"))
           << ',' << r["ld_p"].get<double>() << ','
           << (r["conditions"]["weak_moment"]["holds"].get<bool>() ? 1 : 0) << ','
           << (r["conditions"]["strong_moment"]["holds"].get<bool>() ? 1 : 0) << ','
           << (r["conditions"]["longrun_variance"]["holds"].get<bool>() ? 1 : 0) << '\n';
        out += os.str();
    }
    return out;
}

// ---- verify helpers -----------------------------------------------------------

struct FitResult {
    double exponent = 0.0;
    double std_error = 0.0;
};

FitResult fit_rows(const json& rows, const std::string& statistic, double param) {
    std::vector<double> ns, est, se;
    for (const auto& r : rows) {
        if (r["statistic"] != statistic) continue;
        if (std::abs(r["param"].get<double>() - param) > 1e-12) continue;
        if (r["flags"].get<std::string>().find("low-power") != std::string::npos) continue;
        if (!(r["estimate"].get<double>() > 0.0)) continue;
        ns.push_back(static_cast<double>(r["n"].get<std::uint64_t>()));
        est.push_back(r["estimate"].get<double>());
        se.push_back(r["stderr"].get<double>());
    }
    if (ns.size() < 3) bail(kExitPower, "fewer than 3 usable points for " + statistic);
    FitResult out;
    double logc = 0.0;
    check(adseq_scaling_fit(ns.data(), est.data(), se.data(), ns.size(), 0, &out.exponent,
                            &out.std_error, &logc));
    return out;
}

json verdict_row(const std::string& key, double fitted, double predicted, double tolerance,
                 bool one_sided = false) {
    json row;
    row["key"] = key;
    row["fitted"] = fitted;
    row["predicted"] = predicted;
    row["abs_diff"] = std::abs(fitted - predicted);
    row["tolerance"] = tolerance;
    row["pass"] = one_sided ? fitted <= predicted + tolerance
                            : std::abs(fitted - predicted) <= tolerance;
    return row;
}

std::string verdicts_csv(const json& rows) {
    std::string out = "key,fitted,predicted,abs_diff,tolerance,pass\n";
    for (const auto& r : rows) {
        std::ostringstream os;
        os << r["key"].get<std::string>() << ',' << r["fitted"].get<double>() << ','
           << r["predicted"].get<double>() << ',' << r["abs_diff"].get<double>() << ','
           << r["tolerance"].get<double>() << ',' << (r["pass"].get<bool>() ? 1 : 0) << '\n';
        out += os.str();
    }
    return out;
}

json run_experiment_json(const json& cfg, const char* stats) {
    adseq_experiment* exp = nullptr;
    check(adseq_experiment_run_json(cfg.dump().c_str(), stats, &exp));
    char* owned_csv = nullptr;
    const adseq_status st_csv = adseq_experiment_csv(exp, &owned_csv);
    std::string csv;
    try {
        csv = take_string(st_csv, owned_csv);
    } catch (...) {
        adseq_experiment_free(exp);
        throw;
    }
    char* owned_json = nullptr;
    const adseq_status st_json = adseq_experiment_json(exp, &owned_json);
    std::string jtext;
    try {
        jtext = take_string(st_json, owned_json);
    } catch (...) {
        adseq_experiment_free(exp);
        throw;
    }
    adseq_experiment_free(exp);
    json out = json::parse(jtext);
    out["csv"] = std::move(csv);
    return out;
}

double meta_number(const json& doc, const std::string& key, const char* what) {
    if (!doc.contains("meta") || !doc["meta"].contains(key))
        bail(kExitConfig, std::string("missing meta field: ") + what);
    return std::stod(doc["meta"][key].get<std::string>());
}

// ---- subcommand bodies -----------------------------------------------------------

int cmd_simulate(const json& cfg, const std::string& config_path, const std::string& stats,
                 OutputSink& sink, const std::chrono::steady_clock::time_point& start) {
    json res = run_experiment_json(cfg, stats.empty() ? nullptr : stats.c_str());
    const std::string csv = res["csv"].get<std::string>();
    res.erase("csv");
    sink.write("empirical.csv", csv);
    sink.write("empirical.json", res.dump() + "\n");

    // statistical-power gate: tails requested but nothing measurable
    bool any_tail = false, any_usable = false;
    for (const auto& r : res["rows"]) {
        if (r["statistic"] != "tail") continue;
        any_tail = true;
        if (r["flags"].get<std::string>().find("low-power") == std::string::npos)
            any_usable = true;
    }
    write_manifest(sink, "simulate", config_path, cfg.dump(),
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    if (any_tail && !any_usable) {
        std::cerr << "simulate: every tail cell is low-power at the configured x grid\n";
        return kExitPower;
    }
    return kExitOk;
}

int cmd_bounds(const json& cfg, const std::string& config_path, OutputSink& sink,
               const std::chrono::steady_clock::time_point& start) {
    char* owned = nullptr;
    const adseq_status st = adseq_bounds_evaluate_json(cfg.dump().c_str(), &owned);
    const std::string report = take_string(st, owned);
    sink.write("bounds.json", report + "\n");

    // flat CSV for plotting
    const json rep = json::parse(report);
    std::string csv = "op,n,p,x,term,value,quad_error,divergent\n";
    for (const auto& row : rep["rows"]) {
        if (row.contains("skipped")) continue;
        const std::string op = row["op"].get<std::string>();
        const std::string n =
            row.contains("n") ? std::to_string(row["n"].get<std::uint64_t>()) : "";
        std::ostringstream pp, xx;
        if (row.contains("p")) pp << row["p"].get<double>();
        if (row.contains("x")) xx << row["x"].get<double>();
        for (const auto& [name, term] : row["terms"].items()) {
            std::ostringstream os;
            os << op << ',' << n << ',' << pp.str() << ',' << xx.str() << ',' << name << ','
               << term["value"].get<double>() << ',' << term["quad_error"].get<double>() << ','
               << (term["divergent"].get<bool>() ? 1 : 0) << '\n';
            csv += os.str();
        }
    }
    sink.write("bounds.csv", csv);
    write_manifest(sink, "bounds", config_path, cfg.dump(),
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return kExitOk;
}

int cmd_regimes(const json& cfg, const std::string& config_path, OutputSink& sink,
                std::optional<double> gamma, std::optional<double> b, std::optional<double> p,
                const std::chrono::steady_clock::time_point& start) {
    double g = 0.0, bb = b.value_or(0.0);
    if (gamma) {
        g = *gamma;
    } else if (cfg.contains("alpha") && cfg["alpha"].contains("gamma")) {
        g = cfg["alpha"]["gamma"].get<double>();
    } else if (cfg.contains("map") && cfg["map"].contains("gamma")) {
        g = cfg["map"]["gamma"].get<double>();
    } else {
        bail(kExitConfig, "regimes: give --gamma or a config with alpha/map gamma");
    }
    if (!b && cfg.contains("quantile")) bb = cfg["quantile"].value("b", 0.0);
    std::vector<double> ps;
    if (p) ps.push_back(*p);
    if (ps.empty() && cfg.contains("bounds")) {
        for (const auto& v : cfg["bounds"].value("p_list", json::array()))
            ps.push_back(v.get<double>());
        if (ps.empty() && cfg["bounds"].contains("p"))
            ps.push_back(cfg["bounds"]["p"].get<double>());
    }
    if (ps.empty()) ps.push_back(2.0);

    const json rows = regime_rows(g, bb, ps);
    for (const auto& r : rows) {
        std::cout << "gamma=" << r["gamma"].get<double>() << " b=" << r["b"].get<double>()
                  << " p=" << r["p"].get<double>()
                  << " exponent=" << r["moment_exponent"].get<double>()
                  << (r["log_factor"].get<bool>() ? " (x ln n)" : "") << " delta="
                  << (r.contains("holder_delta") ? std::to_string(r["holder_delta"].get<double>())
                                                 : std::string("none"))
                  << " ld_p=" << r["ld_p"].get<double>() << "\n";
    }
    json doc;
    doc["rows"] = rows;
    sink.write("regimes.json", doc.dump() + "\n");
    sink.write("regimes.csv", regimes_csv(rows));
    write_manifest(sink, "regimes", config_path, cfg.dump(),
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return kExitOk;
}

int cmd_verify(const json& cfg, const std::string& config_path, const std::string& target,
               OutputSink& sink, const std::chrono::steady_clock::time_point& start) {
    const json vcfg = cfg.value("verify", json::object());
    const double tolerance = vcfg.value("tolerance", 0.15);
    const double ks_threshold = vcfg.value("ks_threshold", 0.05);
    const double tail_slack = vcfg.value("tail_slope_slack", 0.5);
    const double hip_ratio_max = vcfg.value("hip_ratio_max", 1.5);

    const char* stats = target == "moments" ? "moments"
                        : target == "tails" ? "tails"
                        : target == "clt"   ? "clt"
                        : target == "hip"   ? "hip"
                                            : nullptr;
    if (!stats) bail(kExitConfig, "verify: unknown target '" + target + "'");
    json res = run_experiment_json(cfg, stats);
    res.erase("csv");
    const double gamma = meta_number(res, "gamma", "gamma (a map source is required)");
    const double b = meta_number(res, "b", "b tag");

    json verdicts = json::array();
    json doc_extra = json::object();
    if (target == "moments") {
        const json sim = cfg.value("sim", json::object());
        for (const auto& pj : sim.value("p_list", json::array({2.0}))) {
            const double p = pj.get<double>();
            adseq_regime r;
            check(adseq_regime_predict(gamma, b, p, &r));
            const FitResult fit = fit_rows(res["rows"], "moment", p);
            json row = verdict_row("moment_exponent:p=" + std::to_string(p), fit.exponent,
                                   r.moment_exponent, tolerance);
            row["fit_stderr"] = fit.std_error;
            if (r.log_factor != 0) row["note"] = "boundary case: n log n predicted";
            verdicts.push_back(std::move(row));
        }
    } else if (target == "tails") {
        adseq_regime r;
        check(adseq_regime_predict(gamma, b, 2.0, &r));
        bool any = false;
        const json sim = cfg.value("sim", json::object());
        for (const auto& xj : sim.value("x_grid", json::array())) {
            const double x = xj.get<double>();
            try {
                const FitResult fit = fit_rows(res["rows"], "tail", x);
                json row = verdict_row("tail_slope:x=" + std::to_string(x), fit.exponent,
                                       -(r.ld_p - 1.0), tail_slack, true);
                row["fit_stderr"] = fit.std_error;
                verdicts.push_back(std::move(row));
                any = true;
            } catch (const CliError&) {
                // level out of statistical reach at this replica count
            }
        }
        if (!any) bail(kExitPower, "verify tails: no x level has 3 usable points");
        // Map-sum tails inherit the chain-side bound at half the level, so
        // the reported bound values are evaluated at x/2.
        if (cfg.contains("alpha") && cfg.contains("quantile")) {
            json bcfg;
            bcfg["alpha"] = cfg["alpha"];
            if (cfg.contains("alpha2")) bcfg["alpha2"] = cfg["alpha2"];
            bcfg["quantile"] = cfg["quantile"];
            json half_x = json::array();
            for (const auto& xj : sim.value("x_grid", json::array()))
                half_x.push_back(xj.get<double>() / 2.0);
            bcfg["bounds"] = {{"n_grid", sim.value("n_grid", json::array())},
                              {"x_grid", half_x},
                              {"p", r.ld_p}};
            char* owned = nullptr;
            const adseq_status st = adseq_bounds_evaluate_json(bcfg.dump().c_str(), &owned);
            const json rep = json::parse(take_string(st, owned));
            json bound_rows = json::array();
            for (const auto& row : rep["rows"]) {
                if (row.value("op", "") != "large_deviation" || row.contains("skipped")) continue;
                bound_rows.push_back({{"n", row["n"]},
                                      {"x_over_2", row["x"]},
                                      {"bound", row["total"]},
                                      {"variant", row["variant"]}});
            }
            doc_extra["bound_rows_at_half_level"] = std::move(bound_rows);
        }
    } else if (target == "clt") {
        int holds = 0;
        double margin = 0.0, critical = 0.0;
        check(adseq_check_condition("longrun_variance", gamma, b, 2.0, 0, &holds, &margin,
                                    &critical));
        verdicts.push_back(verdict_row("longrun_variance_condition", holds ? 1.0 : 0.0, 1.0, 0.0));
        double ks = 0.0;
        std::uint64_t top_n = 0;
        for (const auto& r2 : res["rows"])
            if (r2["statistic"] == "ks_normal" && r2["n"].get<std::uint64_t>() > top_n) {
                top_n = r2["n"].get<std::uint64_t>();
                ks = r2["estimate"].get<double>();
            }
        verdicts.push_back(
            verdict_row("ks_normal:n=" + std::to_string(top_n), ks, 0.0, ks_threshold, true));
    } else { // hip
        adseq_regime r;
        check(adseq_regime_predict(gamma, b, 2.0, &r));
        const json sim = cfg.value("sim", json::object());
        const double beta = sim.value("holder_beta", 0.2);
        if (r.holder_delta < 0.0 || beta >= r.holder_delta)
            std::cerr << "warning: holder_beta " << beta
                      << " is not below the predicted tightness exponent\n";
        std::vector<std::pair<std::uint64_t, double>> q95;
        for (const auto& r2 : res["rows"])
            if (r2["statistic"] == "holder_q95")
                q95.emplace_back(r2["n"].get<std::uint64_t>(), r2["estimate"].get<double>());
        if (q95.size() < 2) bail(kExitConfig, "verify hip: need at least two n values");
        std::sort(q95.begin(), q95.end());
        const double lo = q95[q95.size() - 2].second, hi = q95.back().second;
        const double ratio = hi > lo ? hi / lo : lo / hi;
        verdicts.push_back(verdict_row("holder_q95_ratio", ratio, 1.0, hip_ratio_max - 1.0));
    }

    json doc;
    doc["target"] = target;
    doc["meta"] = res["meta"];
    doc["verdicts"] = verdicts;
    doc.update(doc_extra);
    sink.write("verify_" + target + ".json", doc.dump() + "\n");
    sink.write("verify_" + target + ".csv", verdicts_csv(verdicts));
    write_manifest(sink, "verify " + target, config_path, cfg.dump(),
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return kExitOk;
}

int cmd_report(const std::string& empirical_path, const std::string& predicted_path,
               double tolerance, OutputSink& sink,
               const std::chrono::steady_clock::time_point& start) {
    const json empirical = json::parse(read_file(empirical_path), nullptr, false);
    const json predicted = json::parse(read_file(predicted_path), nullptr, false);
    if (empirical.is_discarded() || predicted.is_discarded())
        bail(kExitConfig, "report: malformed input JSON");
    if (!empirical.contains("rows") || empirical["rows"].empty())
        bail(kExitConfig, "report: empty empirical set");
    const double gamma = meta_number(empirical, "gamma", "gamma");
    const double b = meta_number(empirical, "b", "b");

    std::vector<double> ps;
    for (const auto& r : empirical["rows"])
        if (r["statistic"] == "moment") {
            const double p = r["param"].get<double>();
            if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
        }
    if (ps.empty()) bail(kExitConfig, "report: no moment rows in the empirical set");

    json verdicts = json::array();
    const json predicted_rows = predicted.value("rows", json::array());
    for (double p : ps) {
        const json* match = nullptr;
        for (const auto& row : predicted_rows) {
            if (std::abs(row["gamma"].get<double>() - gamma) < 1e-9 &&
                std::abs(row["b"].get<double>() - b) < 1e-9 &&
                std::abs(row["p"].get<double>() - p) < 1e-9)
                match = &row;
        }
        if (!match)
            bail(kExitConfig, "report: no predicted row matches the empirical (gamma, b, p) key");
        const FitResult fit = fit_rows(empirical["rows"], "moment", p);
        json row = verdict_row("moment_exponent:p=" + std::to_string(p), fit.exponent,
                               (*match)["moment_exponent"].get<double>(), tolerance);
        row["fit_stderr"] = fit.std_error;
        verdicts.push_back(std::move(row));
    }

    json doc;
    doc["empirical_meta"] = empirical["meta"];
    doc["tolerance"] = tolerance;
    doc["verdicts"] = verdicts;
    sink.write("report.json", doc.dump() + "\n");
    sink.write("report.csv", verdicts_csv(verdicts));
    write_manifest(sink, "report", empirical_path, "",
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deviation/moment bound evaluation and Monte Carlo verification for "
                 "alpha-dependent sequences and intermittent interval maps"};
    app.set_version_flag("--version", adseq_version());
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", stats, verify_target;
    std::vector<std::string> sets;
    std::uint32_t threads = 0;
    std::optional<std::uint64_t> seed;
    std::optional<double> gamma, b, p;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory (default: out)");
    app.add_option("--threads", threads, "worker threads (default: ADSEQ_THREADS, then hardware)");
    app.add_option("--seed", seed, "override sim.seed");
    app.add_option("--set", sets, "override a config leaf, e.g. --set sim.replicas=500");

    auto* sim = app.add_subcommand("simulate", "run orbits and reduce the requested statistics");
    sim->add_option("--stats", stats, "comma list: moments,tails,clt,hip (default from config)");
    auto* bounds = app.add_subcommand("bounds", "evaluate the bound right-hand sides over grids");
    auto* regimes = app.add_subcommand("regimes", "print predicted regimes and condition checks");
    regimes->add_option("--gamma", gamma, "map parameter");
    regimes->add_option("--b", b, "quantile-tag exponent");
    regimes->add_option("--p", p, "moment order");
    auto* verify = app.add_subcommand("verify", "empirical vs predicted comparison");
    verify->add_option("target", verify_target, "moments | tails | clt | hip")->required();
    auto* report = app.add_subcommand("report", "merge empirical and predicted files");
    std::string empirical_path, predicted_path;
    double tolerance = 0.15;
    report->add_option("--empirical", empirical_path, "empirical.json from simulate")->required();
    report->add_option("--predicted", predicted_path, "regimes.json from regimes")->required();
    report->add_option("--tolerance", tolerance, "pass/fail tolerance on exponents");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion") return app.exit(e);
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        OutputSink sink{fs::path(out_dir), {}};
        if (report->parsed())
            return cmd_report(empirical_path, predicted_path, tolerance, sink, start);
        const json cfg = load_config(config_path, sets, threads, seed);
        if (sim->parsed()) return cmd_simulate(cfg, config_path, stats, sink, start);
        if (bounds->parsed()) return cmd_bounds(cfg, config_path, sink, start);
        if (regimes->parsed()) return cmd_regimes(cfg, config_path, sink, gamma, b, p, start);
        return cmd_verify(cfg, config_path, verify_target, sink, start);
    } catch (const CliError& e) {
        std::cerr << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }
}
