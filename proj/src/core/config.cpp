#include "core/config.hpp"

#include <cstdint>
#include <cstdio>

#include <json.hpp>

#include "core/errors.hpp"

namespace adseq {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config: malformed JSON");
    return j;
}

double get_num(const json& j, const char* key, std::optional<double> dflt = std::nullopt) {
    if (!j.contains(key)) {
        if (dflt) return *dflt;
        throw ConfigError(std::string("config: missing field '") + key + "'");
    }
    if (!j[key].is_number()) throw ConfigError(std::string("config: '") + key + "' must be a number");
    return j[key].get<double>();
}

std::uint64_t get_u64(const json& j, const char* key, std::optional<std::uint64_t> dflt) {
    if (!j.contains(key)) {
        if (dflt) return *dflt;
        throw ConfigError(std::string("config: missing field '") + key + "'");
    }
    if (!j[key].is_number_unsigned() && !j[key].is_number_integer())
        throw ConfigError(std::string("config: '") + key + "' must be an integer");
    return j[key].get<std::uint64_t>();
}

TailFunction tail_from(const json& j) {
    const std::string kind = j.value("kind", "bounded");
    if (kind == "power_law")
        return TailFunction::power_law(get_num(j, "exponent"), get_num(j, "scale", 1.0),
                                       get_num(j, "threshold", 0.0));
    if (kind == "bounded") return TailFunction::bounded(get_num(j, "bound", 1.0));
    if (kind == "tabulated") {
        std::vector<std::pair<double, double>> table;
        for (const auto& row : j.at("table"))
            table.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        return TailFunction::tabulated(std::move(table));
    }
    throw ConfigError("config: unknown tail kind '" + kind + "'");
}

Observable observable_from(const json& j) {
    const std::string kind = j.value("kind", "indicator");
    Observable f;
    if (kind == "neutral_singularity") {
        f = Observable::neutral_singularity(get_num(j, "s"));
    } else if (kind == "boundary_singularity") {
        f = Observable::boundary_singularity(get_num(j, "s"));
    } else if (kind == "indicator") {
        f = Observable::indicator(get_num(j, "lo", 0.5), get_num(j, "hi", 1.0));
    } else if (kind == "bv") {
        f = Observable::bv(get_num(j, "m1"), get_num(j, "m2"));
    } else if (kind == "piecewise_monotone") {
        std::vector<PiecewiseBranch> branches;
        for (const auto& bj : j.at("branches")) {
            PiecewiseBranch br;
            const std::string bk = bj.value("kind", "constant");
            br.lo = get_num(bj, "lo");
            br.hi = get_num(bj, "hi");
            if (bk == "constant") {
                br.kind = PiecewiseBranch::Kind::Constant;
                br.a = get_num(bj, "a");
            } else if (bk == "affine") {
                br.kind = PiecewiseBranch::Kind::Affine;
                br.a = get_num(bj, "a");
                br.b = get_num(bj, "b");
            } else if (bk == "pole_left") {
                br.kind = PiecewiseBranch::Kind::PoleLeft;
                br.a = get_num(bj, "a");
                br.s = get_num(bj, "s");
            } else if (bk == "pole_right") {
                br.kind = PiecewiseBranch::Kind::PoleRight;
                br.a = get_num(bj, "a");
                br.s = get_num(bj, "s");
            } else {
                throw ConfigError("config: unknown branch kind '" + bk + "'");
            }
            branches.push_back(br);
        }
        f = Observable::piecewise_monotone(std::move(branches), tail_from(j.at("tail")));
    } else {
        throw ConfigError("config: unknown observable kind '" + kind + "'");
    }
    if (j.contains("center")) {
        f.center = {get_num(j["center"], "value"), get_num(j["center"], "stderr", 0.0)};
        f.validate();
    }
    return f;
}

MapSpec map_from(const json& j) {
    const std::string kind = j.value("kind", "lsv");
    if (kind == "lsv") return MapSpec::lsv(get_num(j, "gamma"));
    if (kind == "gpm") {
        std::vector<double> bp;
        for (const auto& v : j.at("breakpoints")) bp.push_back(v.get<double>());
        return MapSpec::piecewise_gpm(get_num(j, "gamma"), std::move(bp));
    }
    throw ConfigError("config: unknown map kind '" + kind + "'");
}

AlphaModel alpha_from(const json& j) {
    const std::string kind = j.value("kind", "power_law");
    if (kind == "power_law")
        return AlphaModel::power_law(get_num(j, "scale", 1.0), get_num(j, "gamma"));
    if (kind == "explicit") {
        std::vector<double> values;
        for (const auto& v : j.at("values")) values.push_back(v.get<double>());
        AlphaModel::TailRule rule = AlphaModel::TailRule::Zero;
        double ts = 0.0, tg = 0.5;
        if (j.contains("tail")) {
            const auto& tj = j["tail"];
            const std::string rn = tj.value("rule", "zero");
            if (rn == "power_law") {
                rule = AlphaModel::TailRule::PowerLaw;
                ts = get_num(tj, "scale", 1.0);
                tg = get_num(tj, "gamma");
            } else if (rn != "zero") {
                throw ConfigError("config: unknown alpha tail rule '" + rn + "'");
            }
        }
        return AlphaModel::explicit_seq(std::move(values), rule, ts, tg);
    }
    throw ConfigError("config: unknown alpha kind '" + kind + "'");
}

QuantileModel quantile_from(const json& j) {
    const std::string kind = j.value("kind", "power_law");
    if (kind == "power_law") {
        std::optional<double> eps;
        if (j.contains("eps_q")) eps = get_num(j, "eps_q");
        return QuantileModel::power_law(get_num(j, "scale", 1.0), get_num(j, "b", 0.0), eps);
    }
    if (kind == "tabulated") {
        std::vector<std::pair<double, double>> table;
        for (const auto& row : j.at("table"))
            table.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        return QuantileModel::tabulated(std::move(table));
    }
    throw ConfigError("config: unknown quantile kind '" + kind + "'");
}

} // namespace

std::string canonical_config(const std::string& json_text) {
    return parse_or_throw(json_text).dump();
}

std::string config_hash_hex(const std::string& json_text) {
    const std::string canon = canonical_config(json_text);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

SimConfig sim_config_from_json(const std::string& json_text) {
    const json root = parse_or_throw(json_text);
    SimConfig cfg;
    const json sim = root.value("sim", json::object());

    const std::string source = sim.value("source", "map");
    if (source == "map") {
        cfg.source.kind = SourceSpec::Kind::Map;
        if (!root.contains("map")) throw ConfigError("config: map section required");
        cfg.source.map = map_from(root["map"]);
        if (!root.contains("observable"))
            throw ConfigError("config: observable section required");
        cfg.source.observable = observable_from(root["observable"]);
    } else if (source == "mdep" || source == "rademacher") {
        cfg.source.kind = SourceSpec::Kind::MDep;
        cfg.source.sign_map = source == "rademacher" || sim.value("sign_map", false);
        cfg.source.weights.clear();
        for (const auto& w : sim.value("weights", json::array({1.0})))
            cfg.source.weights.push_back(w.get<double>());
    } else {
        throw ConfigError("config: unknown source '" + source + "'");
    }

    cfg.n_grid.clear();
    for (const auto& v : sim.value("n_grid", json::array({1024})))
        cfg.n_grid.push_back(v.get<std::uint64_t>());
    cfg.replicas = static_cast<std::uint32_t>(get_u64(sim, "replicas", 200));
    cfg.seed = get_u64(sim, "seed", 1);
    cfg.burn_in = get_u64(sim, "burn_in", 10000);
    cfg.p_list.clear();
    for (const auto& v : sim.value("p_list", json::array({2.0})))
        cfg.p_list.push_back(v.get<double>());
    cfg.x_grid.clear();
    for (const auto& v : sim.value("x_grid", json::array()))
        cfg.x_grid.push_back(v.get<double>());
    cfg.holder_beta = get_num(sim, "holder_beta", 0.2);
    cfg.center_budget = get_u64(sim, "center_budget", 10000000);
    cfg.sigma_orbit_length = get_u64(sim, "sigma_orbit_length", 1000000);
    cfg.sigma_bandwidth = static_cast<std::uint32_t>(get_u64(sim, "sigma_bandwidth", 0));
    cfg.threads = static_cast<std::uint32_t>(get_u64(sim, "threads", 0));
    cfg.validate();
    return cfg;
}

unsigned stats_mask_from_json(const std::string& json_text) {
    const json root = parse_or_throw(json_text);
    const json sim = root.value("sim", json::object());
    if (!sim.contains("stats")) return kMoments;
    unsigned mask = 0;
    for (const auto& v : sim["stats"]) {
        const std::string s = v.get<std::string>();
        if (s == "moments") mask |= kMoments;
        else if (s == "tails") mask |= kTails;
        else if (s == "clt") mask |= kClt;
        else if (s == "hip") mask |= kHip;
        else throw ConfigError("config: unknown statistic family '" + s + "'");
    }
    return mask == 0 ? kMoments : mask;
}

BoundInputs bound_inputs_from_json(const std::string& json_text) {
    const json root = parse_or_throw(json_text);
    BoundInputs in;
    if (!root.contains("alpha")) throw ConfigError("config: alpha section required");
    in.alpha1 = alpha_from(root["alpha"]);
    in.alpha2 = root.contains("alpha2") ? alpha_from(root["alpha2"]) : in.alpha1;
    if (!root.contains("quantile")) throw ConfigError("config: quantile section required");
    in.q = quantile_from(root["quantile"]);
    const json b = root.value("bounds", json::object());
    in.n = get_u64(b, "n", 1024);
    in.p = get_num(b, "p", 2.0);
    if (b.contains("r")) in.r = get_num(b, "r");
    if (b.contains("beta")) in.beta = get_num(b, "beta");
    if (b.contains("a")) in.a = get_num(b, "a");
    if (b.contains("c")) in.c = get_num(b, "c");
    in.use_majorant = b.value("use_majorant", false);
    in.force_quadrature = b.value("mode", "auto") == "quadrature";
    return in;
}

namespace {

json report_to_json(const BoundReport& rep) {
    json out;
    out["op"] = rep.op;
    json terms = json::object();
    for (const auto& t : rep.terms) {
        terms[t.name] = {{"value", t.value},
                         {"quad_error", t.quad_error},
                         {"divergent", t.divergent}};
    }
    out["terms"] = std::move(terms);
    out["total"] = rep.total;
    json diag = json::object();
    for (const auto& [k, v] : rep.diagnostics) diag[k] = v;
    out["diagnostics"] = std::move(diag);
    out["constants_omitted"] = rep.constants_omitted;
    return out;
}

} // namespace

std::string evaluate_bounds_json(const std::string& json_text) {
    const json root = parse_or_throw(json_text);
    BoundInputs base = bound_inputs_from_json(json_text);
    const json b = root.value("bounds", json::object());

    std::vector<std::uint64_t> n_grid;
    for (const auto& v : b.value("n_grid", json::array())) n_grid.push_back(v.get<std::uint64_t>());
    if (n_grid.empty()) n_grid.push_back(base.n);
    std::vector<double> x_grid;
    for (const auto& v : b.value("x_grid", json::array())) x_grid.push_back(v.get<double>());
    std::vector<double> p_list;
    for (const auto& v : b.value("p_list", json::array())) p_list.push_back(v.get<double>());
    if (p_list.empty()) p_list.push_back(base.p);

    json rows = json::array();
    for (std::uint64_t n : n_grid) {
        for (double p : p_list) {
            BoundInputs in = base;
            in.n = n;
            in.p = p;
            // moment bound
            if (p >= 2.0) {
                json row;
                row["n"] = n;
                row["p"] = p;
                try {
                    row.update(report_to_json(rosenthal_bound(in)));
                } catch (const ConfigError& e) {
                    row["op"] = "rosenthal";
                    row["skipped"] = e.what();
                }
                rows.push_back(std::move(row));
            }
            for (double x : x_grid) {
                {
                    json row;
                    row["n"] = n;
                    row["p"] = p;
                    row["x"] = x;
                    try {
                        row.update(report_to_json(deviation_bound(in, x)));
                    } catch (const ConfigError& e) {
                        row["op"] = "deviation";
                        row["skipped"] = e.what();
                    }
                    rows.push_back(std::move(row));
                }
                const LdVariant variant = p > 2.0   ? LdVariant::Pointwise
                                          : p == 2.0 ? LdVariant::PointwiseP2
                                                     : LdVariant::PointwiseLowP;
                json row;
                row["n"] = n;
                row["p"] = p;
                row["x"] = x;
                row["variant"] = p > 2.0 ? "pointwise" : p == 2.0 ? "pointwise-p2" : "pointwise-low-p";
                try {
                    row.update(report_to_json(large_deviation_bound(in, x, variant)));
                } catch (const ConfigError& e) {
                    row["op"] = "large_deviation";
                    row["skipped"] = e.what();
                }
                rows.push_back(std::move(row));
            }
        }
    }

    json out;
    out["config_hash"] = config_hash_hex(json_text);
    out["rows"] = std::move(rows);
    return out.dump();
}

std::string observable_to_json(const Observable& f) {
    json j;
    j["kind"] = f.label();
    switch (f.kind) {
        case Observable::Kind::NeutralSingularity:
        case Observable::Kind::BoundarySingularity:
            j["s"] = f.s;
            break;
        case Observable::Kind::Indicator:
            j["lo"] = f.lo;
            j["hi"] = f.hi;
            break;
        case Observable::Kind::BV:
            j["m1"] = f.m1;
            j["m2"] = f.m2;
            break;
        case Observable::Kind::PiecewiseMonotone: {
            json branches = json::array();
            for (const auto& br : f.branches) {
                json bj;
                bj["lo"] = br.lo;
                bj["hi"] = br.hi;
                switch (br.kind) {
                    case PiecewiseBranch::Kind::Constant:
                        bj["kind"] = "constant";
                        bj["a"] = br.a;
                        break;
                    case PiecewiseBranch::Kind::Affine:
                        bj["kind"] = "affine";
                        bj["a"] = br.a;
                        bj["b"] = br.b;
                        break;
                    case PiecewiseBranch::Kind::PoleLeft:
                        bj["kind"] = "pole_left";
                        bj["a"] = br.a;
                        bj["s"] = br.s;
                        break;
                    case PiecewiseBranch::Kind::PoleRight:
                        bj["kind"] = "pole_right";
                        bj["a"] = br.a;
                        bj["s"] = br.s;
                        break;
                }
                branches.push_back(std::move(bj));
            }
            j["branches"] = std::move(branches);
            json tj;
            switch (f.tail.kind) {
                case TailFunction::Kind::PowerLaw:
                    tj["kind"] = "power_law";
                    tj["exponent"] = f.tail.exponent;
                    tj["scale"] = f.tail.scale;
                    tj["threshold"] = f.tail.threshold;
                    break;
                case TailFunction::Kind::Bounded:
                    tj["kind"] = "bounded";
                    tj["bound"] = f.tail.bound;
                    break;
                case TailFunction::Kind::Tabulated: {
                    tj["kind"] = "tabulated";
                    json table = json::array();
                    for (const auto& [t, h] : f.tail.table) table.push_back({t, h});
                    tj["table"] = std::move(table);
                    break;
                }
            }
            j["tail"] = std::move(tj);
            break;
        }
    }
    if (f.center) j["center"] = {{"value", f.center->first}, {"stderr", f.center->second}};
    return j.dump();
}

Observable observable_from_json(const std::string& json_text) {
    return observable_from(parse_or_throw(json_text));
}

AlphaModel alpha_from_json(const std::string& json_text) {
    return alpha_from(parse_or_throw(json_text));
}

QuantileModel quantile_from_json(const std::string& json_text) {
    return quantile_from(parse_or_throw(json_text));
}

} // namespace adseq
