#include "adseq.h"

#include <cstring>
#include <new>
#include <string>

#include "core/bounds.hpp"
#include "core/config.hpp"
#include "core/dynamics.hpp"
#include "core/errors.hpp"
#include "core/montecarlo.hpp"
#include "core/stats.hpp"

using namespace adseq;

struct adseq_map {
    MapSpec spec;
};
struct adseq_observable {
    Observable f;
};
struct adseq_alpha {
    AlphaModel m;
};
struct adseq_quantile {
    QuantileModel q;
};
struct adseq_experiment {
    EmpiricalResult result;
};

namespace {

thread_local std::string g_last_error;

adseq_status fail(adseq_status code, const char* what) {
    g_last_error = what ? what : "";
    return code;
}

template <typename Fn>
adseq_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        return fail(ADSEQ_ERR_CONFIG, e.what());
    } catch (const DomainError& e) {
        return fail(ADSEQ_ERR_DOMAIN, e.what());
    } catch (const QuadratureError& e) {
        return fail(ADSEQ_ERR_QUADRATURE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ADSEQ_ERR_NOMEM, "out of memory");
    } catch (const std::exception& e) {
        return fail(ADSEQ_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ADSEQ_ERR_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

#define ADSEQ_REQUIRE(cond) \
    do { \
        if (!(cond)) return fail(ADSEQ_ERR_INVALID_ARGUMENT, "null argument"); \
    } while (0)

extern "C" {

const char* adseq_version(void) { return "0.1.0"; }

const char* adseq_last_error(void) { return g_last_error.c_str(); }

void adseq_string_free(char* s) { delete[] s; }

adseq_status adseq_config_canonical(const char* json_text, char** out) {
    ADSEQ_REQUIRE(json_text && out);
    return guarded([&] {
        *out = dup_string(canonical_config(json_text));
        return ADSEQ_OK;
    });
}

adseq_status adseq_config_hash(const char* json_text, char out_hex[17]) {
    ADSEQ_REQUIRE(json_text && out_hex);
    return guarded([&] {
        const std::string h = config_hash_hex(json_text);
        std::memcpy(out_hex, h.c_str(), 17);
        return ADSEQ_OK;
    });
}

adseq_status adseq_map_create_lsv(double gamma, adseq_map** out) {
    ADSEQ_REQUIRE(out != nullptr);
    return guarded([&] {
        *out = new adseq_map{MapSpec::lsv(gamma)};
        return ADSEQ_OK;
    });
}

adseq_status adseq_map_create_json(const char* json_text, adseq_map** out) {
    ADSEQ_REQUIRE(json_text && out);
    return guarded([&] {
        const std::string wrapped = std::string("{\"map\":") + json_text +
                                    ",\"observable\":{\"kind\":\"indicator\"},\"sim\":{"
                                    "\"replicas\":100}}";
        *out = new adseq_map{sim_config_from_json(wrapped).source.map};
        return ADSEQ_OK;
    });
}

void adseq_map_free(adseq_map* m) { delete m; }

adseq_status adseq_map_step(const adseq_map* m, double x, double* out) {
    ADSEQ_REQUIRE(m && out);
    return guarded([&] {
        *out = map_step(x, m->spec);
        return ADSEQ_OK;
    });
}

adseq_status adseq_orbit_generate(const adseq_map* m, uint64_t seed, uint32_t replica,
                                  int use_initial, double initial_point, uint64_t burn_in,
                                  uint64_t length, double* out) {
    ADSEQ_REQUIRE(m && out);
    return guarded([&] {
        OrbitConfig cfg;
        cfg.seed = seed;
        cfg.replica_index = replica;
        cfg.burn_in = burn_in;
        cfg.length = length;
        if (use_initial) cfg.initial_point = initial_point;
        generate_orbit_into(cfg, m->spec, out);
        return ADSEQ_OK;
    });
}

adseq_status adseq_mdep_sequence(uint64_t seed, uint32_t replica, const double* weights,
                                 size_t n_weights, uint64_t length, double* out) {
    ADSEQ_REQUIRE(weights && out && n_weights > 0);
    return guarded([&] {
        OrbitConfig cfg;
        cfg.seed = seed;
        cfg.replica_index = replica;
        cfg.burn_in = 0;
        cfg.length = length;
        mdep_sequence_into(cfg, std::vector<double>(weights, weights + n_weights), out);
        return ADSEQ_OK;
    });
}

adseq_status adseq_observable_create_json(const char* json_text, adseq_observable** out) {
    ADSEQ_REQUIRE(json_text && out);
    return guarded([&] {
        *out = new adseq_observable{observable_from_json(json_text)};
        return ADSEQ_OK;
    });
}

void adseq_observable_free(adseq_observable* f) { delete f; }

adseq_status adseq_observable_eval(const adseq_observable* f, double x, double* out) {
    ADSEQ_REQUIRE(f && out);
    return guarded([&] {
        *out = f->f.eval(x);
        return ADSEQ_OK;
    });
}

adseq_status adseq_observable_quantile(const adseq_observable* f, double gamma,
                                       adseq_quantile** out) {
    ADSEQ_REQUIRE(f && out);
    return guarded([&] {
        *out = new adseq_quantile{quantile_params(f->f, gamma)};
        return ADSEQ_OK;
    });
}

adseq_status adseq_estimate_center(const adseq_observable* f, const adseq_map* m,
                                   uint64_t budget, uint64_t seed, double* mean,
                                   double* std_error) {
    ADSEQ_REQUIRE(f && m && mean && std_error);
    return guarded([&] {
        const CenterEstimate ce = estimate_center(f->f, m->spec, budget, seed);
        *mean = ce.mean;
        *std_error = ce.std_error;
        return ADSEQ_OK;
    });
}

adseq_status adseq_alpha_create_power_law(double scale, double gamma, adseq_alpha** out) {
    ADSEQ_REQUIRE(out != nullptr);
    return guarded([&] {
        *out = new adseq_alpha{AlphaModel::power_law(scale, gamma)};
        return ADSEQ_OK;
    });
}

adseq_status adseq_alpha_create_json(const char* json_text, adseq_alpha** out) {
    ADSEQ_REQUIRE(json_text && out);
    return guarded([&] {
        *out = new adseq_alpha{alpha_from_json(json_text)};
        return ADSEQ_OK;
    });
}

void adseq_alpha_free(adseq_alpha* a) { delete a; }

adseq_status adseq_alpha_eval(const adseq_alpha* a, uint64_t n, double* out) {
    ADSEQ_REQUIRE(a && out);
    return guarded([&] {
        *out = a->m.value(n);
        return ADSEQ_OK;
    });
}

adseq_status adseq_alpha_inverse(const adseq_alpha* a, double u, uint64_t cap, uint64_t* out) {
    ADSEQ_REQUIRE(a && out);
    return guarded([&] {
        *out = a->m.inverse(u, cap == 0 ? std::nullopt : std::optional<uint64_t>(cap));
        return ADSEQ_OK;
    });
}

adseq_status adseq_quantile_create_power_law(double scale, double b, double eps_q,
                                             adseq_quantile** out) {
    ADSEQ_REQUIRE(out != nullptr);
    return guarded([&] {
        *out = new adseq_quantile{QuantileModel::power_law(
            scale, b, eps_q > 0.0 ? std::optional<double>(eps_q) : std::nullopt)};
        return ADSEQ_OK;
    });
}

adseq_status adseq_quantile_create_json(const char* json_text, adseq_quantile** out) {
    ADSEQ_REQUIRE(json_text && out);
    return guarded([&] {
        *out = new adseq_quantile{quantile_from_json(json_text)};
        return ADSEQ_OK;
    });
}

void adseq_quantile_free(adseq_quantile* q) { delete q; }

adseq_status adseq_quantile_eval(const adseq_quantile* q, double u, double* out) {
    ADSEQ_REQUIRE(q && out);
    return guarded([&] {
        *out = q->q.eval(u);
        return ADSEQ_OK;
    });
}

adseq_status adseq_tail_quantile_json(const char* tail_json, double u, double* out) {
    ADSEQ_REQUIRE(tail_json && out);
    return guarded([&] {
        // reuse the observable parser by wrapping the tail into a
        // piecewise-monotone shell
        const std::string wrapped =
            std::string(
                "{\"kind\":\"piecewise_monotone\",\"branches\":[{\"kind\":\"constant\","
                "\"lo\":0,\"hi\":1,\"a\":1}],\"tail\":") +
            tail_json + "}";
        const Observable f = observable_from_json(wrapped);
        *out = quantile_from_tail(f.tail, u);
        return ADSEQ_OK;
    });
}

adseq_status adseq_r_eval(const adseq_alpha* a2, const adseq_quantile* q, uint64_t n, double u,
                          int capped, double* out) {
    ADSEQ_REQUIRE(a2 && q && out);
    return guarded([&] {
        BoundInputs in;
        in.alpha1 = a2->m;
        in.alpha2 = a2->m;
        in.q = q->q;
        in.n = n == 0 ? 1 : n;
        *out = r_eval(in, u, capped != 0);
        return ADSEQ_OK;
    });
}

adseq_status adseq_r_inverse(const adseq_alpha* a2, const adseq_quantile* q, uint64_t n,
                             double x, double* out) {
    ADSEQ_REQUIRE(a2 && q && out);
    return guarded([&] {
        BoundInputs in;
        in.alpha1 = a2->m;
        in.alpha2 = a2->m;
        in.q = q->q;
        in.n = n == 0 ? 1 : n;
        *out = r_inverse(in, x);
        return ADSEQ_OK;
    });
}

adseq_status adseq_bounds_evaluate_json(const char* config_json, char** report_json) {
    ADSEQ_REQUIRE(config_json && report_json);
    return guarded([&] {
        *report_json = dup_string(evaluate_bounds_json(config_json));
        return ADSEQ_OK;
    });
}

adseq_status adseq_regime_predict(double gamma, double b, double p, adseq_regime* out) {
    ADSEQ_REQUIRE(out != nullptr);
    return guarded([&] {
        const RegimePrediction r = regime_predict(gamma, b, p);
        out->moment_exponent = r.moment_exponent;
        out->log_factor = r.log_factor ? 1 : 0;
        out->holder_delta = r.holder_delta ? *r.holder_delta : -1.0;
        out->ld_p = r.ld_p;
        return ADSEQ_OK;
    });
}

adseq_status adseq_check_condition(const char* kind, double gamma, double b, double p,
                                   int eps_vanishing, int* holds, double* margin,
                                   double* critical_p) {
    ADSEQ_REQUIRE(kind && holds && margin && critical_p);
    return guarded([&] {
        ConditionKind ck;
        const std::string k = kind;
        if (k == "weak_moment") ck = ConditionKind::WeakMoment;
        else if (k == "weak_moment_vanishing") ck = ConditionKind::WeakMomentVanishing;
        else if (k == "strong_moment") ck = ConditionKind::StrongMoment;
        else if (k == "longrun_variance") ck = ConditionKind::LongRunVariance;
        else throw ConfigError("unknown condition kind '" + k + "'");
        const AlphaModel a2 = AlphaModel::power_law(1.0, gamma);
        const QuantileModel q = QuantileModel::power_law(
            1.0, b, eps_vanishing && b > 0.0 ? std::optional<double>(1.0) : std::nullopt);
        // b == 0 with a vanishing factor still decides the boundary rule
        ConditionResult res = check_condition(a2, q, p, ck);
        if (eps_vanishing && b == 0.0 && ck == ConditionKind::WeakMomentVanishing &&
            p == res.critical_p)
            res.holds = true;
        *holds = res.holds ? 1 : 0;
        *margin = res.margin;
        *critical_p = res.critical_p;
        return ADSEQ_OK;
    });
}

adseq_status adseq_experiment_run_json(const char* config_json, const char* stats,
                                       adseq_experiment** out) {
    ADSEQ_REQUIRE(config_json && out);
    return guarded([&] {
        const SimConfig cfg = sim_config_from_json(config_json);
        unsigned mask = 0;
        if (stats && *stats) {
            const std::string list = stats;
            std::size_t pos = 0;
            while (pos < list.size()) {
                std::size_t comma = list.find(',', pos);
                if (comma == std::string::npos) comma = list.size();
                const std::string tok = list.substr(pos, comma - pos);
                if (tok == "moments") mask |= kMoments;
                else if (tok == "tails") mask |= kTails;
                else if (tok == "clt") mask |= kClt;
                else if (tok == "hip") mask |= kHip;
                else throw ConfigError("unknown statistic family '" + tok + "'");
                pos = comma + 1;
            }
        } else {
            mask = stats_mask_from_json(config_json);
        }
        EmpiricalResult res = run_experiment(cfg, mask);
        res.meta["config_hash"] = config_hash_hex(config_json);
        *out = new adseq_experiment{std::move(res)};
        return ADSEQ_OK;
    });
}

void adseq_experiment_free(adseq_experiment* e) { delete e; }

adseq_status adseq_experiment_csv(const adseq_experiment* e, char** out) {
    ADSEQ_REQUIRE(e && out);
    return guarded([&] {
        *out = dup_string(e->result.to_csv());
        return ADSEQ_OK;
    });
}

adseq_status adseq_experiment_json(const adseq_experiment* e, char** out) {
    ADSEQ_REQUIRE(e && out);
    return guarded([&] {
        *out = dup_string(e->result.to_json());
        return ADSEQ_OK;
    });
}

adseq_status adseq_sigma2(const double* series, size_t len, uint32_t bandwidth,
                          double* estimate, double* std_error, uint32_t* used_bandwidth) {
    ADSEQ_REQUIRE(series && estimate && std_error);
    return guarded([&] {
        const Sigma2Estimate r = sigma2_estimate(std::span<const double>(series, len), bandwidth);
        *estimate = r.value;
        *std_error = r.std_error;
        if (used_bandwidth) *used_bandwidth = r.bandwidth;
        return ADSEQ_OK;
    });
}

adseq_status adseq_scaling_fit(const double* n_values, const double* estimates,
                               const double* std_errors, size_t count, int with_log,
                               double* exponent, double* exp_std_error, double* log_coef) {
    ADSEQ_REQUIRE(n_values && estimates && exponent && exp_std_error);
    return guarded([&] {
        std::vector<ScalingPoint> pts(count);
        for (size_t i = 0; i < count; ++i) {
            pts[i].n = n_values[i];
            pts[i].estimate = estimates[i];
            pts[i].std_error = std_errors ? std_errors[i] : 0.0;
        }
        const ScalingFit fit = scaling_fit(pts, with_log != 0);
        *exponent = fit.exponent;
        *exp_std_error = fit.std_error;
        if (log_coef) *log_coef = fit.log_coefficient ? *fit.log_coefficient : 0.0;
        return ADSEQ_OK;
    });
}

adseq_status adseq_holder_norm(const double* ts, const double* fs, size_t count, double beta,
                               double* seminorm, double* norm, int* approximate) {
    ADSEQ_REQUIRE(ts && fs && seminorm && norm);
    return guarded([&] {
        const HolderNorm h = holder_norm(std::span<const double>(ts, count),
                                         std::span<const double>(fs, count), beta);
        *seminorm = h.seminorm;
        *norm = h.norm;
        if (approximate) *approximate = h.approximate ? 1 : 0;
        return ADSEQ_OK;
    });
}

adseq_status adseq_ks_normal(const double* samples, size_t count, double sigma, double* out) {
    ADSEQ_REQUIRE(samples && out);
    return guarded([&] {
        *out = ks_normal(std::span<const double>(samples, count), sigma);
        return ADSEQ_OK;
    });
}

} // extern "C"
