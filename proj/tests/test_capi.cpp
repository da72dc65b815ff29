#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "adseq.h"

TEST_CASE("version and error plumbing") {
    CHECK(adseq_version() != nullptr);
    double out = 0.0;
    CHECK(adseq_map_step(nullptr, 0.5, &out) == ADSEQ_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(adseq_last_error()) > 0);
}

TEST_CASE("map lifecycle and evaluation") {
    adseq_map* m = nullptr;
    REQUIRE(adseq_map_create_lsv(0.5, &m) == ADSEQ_OK);
    double y = 0.0;
    CHECK(adseq_map_step(m, 0.75, &y) == ADSEQ_OK);
    CHECK(y == 0.5);
    CHECK(adseq_map_step(m, 1.5, &y) == ADSEQ_ERR_DOMAIN);
    adseq_map_free(m);
    CHECK(adseq_map_create_lsv(1.5, &m) == ADSEQ_ERR_CONFIG);

    REQUIRE(adseq_map_create_json("{\"kind\":\"gpm\",\"gamma\":0.5,"
                                  "\"breakpoints\":[0.0,0.3,1.0]}",
                                  &m) == ADSEQ_OK);
    CHECK(adseq_map_step(m, 0.65, &y) == ADSEQ_OK);
    CHECK(y == doctest::Approx(0.5));
    adseq_map_free(m);
}

TEST_CASE("orbit and mdep buffers") {
    adseq_map* m = nullptr;
    REQUIRE(adseq_map_create_lsv(0.25, &m) == ADSEQ_OK);
    std::vector<double> orbit(1000);
    REQUIRE(adseq_orbit_generate(m, 12, 0, 0, 0.0, 100, orbit.size(), orbit.data()) == ADSEQ_OK);
    for (double v : orbit) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
    std::vector<double> again(1000);
    REQUIRE(adseq_orbit_generate(m, 12, 0, 0, 0.0, 100, again.size(), again.data()) == ADSEQ_OK);
    CHECK(orbit == again);
    adseq_map_free(m);

    std::vector<double> xs(100);
    const double w[2] = {1.0, -1.0};
    CHECK(adseq_mdep_sequence(3, 0, w, 2, xs.size(), xs.data()) == ADSEQ_OK);
    CHECK(adseq_mdep_sequence(3, 0, nullptr, 2, xs.size(), xs.data()) ==
          ADSEQ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("observable, quantile tag, and center estimate") {
    adseq_observable* f = nullptr;
    REQUIRE(adseq_observable_create_json("{\"kind\":\"neutral_singularity\",\"s\":0.25}", &f) ==
            ADSEQ_OK);
    double y = 0.0;
    CHECK(adseq_observable_eval(f, 0.0625, &y) == ADSEQ_OK);
    CHECK(y == doctest::Approx(2.0));
    CHECK(adseq_observable_eval(f, 0.0, &y) == ADSEQ_ERR_DOMAIN);

    adseq_quantile* q = nullptr;
    REQUIRE(adseq_observable_quantile(f, 0.25, &q) == ADSEQ_OK);
    double qv = 0.0;
    CHECK(adseq_quantile_eval(q, 0.125, &qv) == ADSEQ_OK);
    CHECK(qv == doctest::Approx(std::pow(0.125, -1.0 / 3.0)));
    adseq_quantile_free(q);
    CHECK(adseq_observable_quantile(f, 0.8, &q) == ADSEQ_ERR_DOMAIN); // s >= 1 - gamma
    adseq_observable_free(f);

    REQUIRE(adseq_observable_create_json("{\"kind\":\"indicator\",\"lo\":0.5,\"hi\":1.0}", &f) ==
            ADSEQ_OK);
    adseq_map* m = nullptr;
    REQUIRE(adseq_map_create_lsv(0.25, &m) == ADSEQ_OK);
    double mean = 0.0, se = 0.0;
    CHECK(adseq_estimate_center(f, m, 500000, 9, &mean, &se) == ADSEQ_OK);
    CHECK(mean > 0.3);
    CHECK(mean < 0.5);
    CHECK(se > 0.0);
    adseq_map_free(m);
    adseq_observable_free(f);
}

TEST_CASE("alpha handles and inverse") {
    adseq_alpha* a = nullptr;
    REQUIRE(adseq_alpha_create_power_law(1.0, 0.25, &a) == ADSEQ_OK);
    double v = 0.0;
    CHECK(adseq_alpha_eval(a, 8, &v) == ADSEQ_OK);
    CHECK(v == doctest::Approx(1.0 / 512.0));
    uint64_t inv = 0;
    CHECK(adseq_alpha_inverse(a, 0.001, 0, &inv) == ADSEQ_OK);
    CHECK(inv == 10);
    CHECK(adseq_alpha_inverse(a, 0.001, 4, &inv) == ADSEQ_OK);
    CHECK(inv == 4);
    CHECK(adseq_alpha_inverse(a, 0.0, 0, &inv) == ADSEQ_ERR_DOMAIN);
    adseq_alpha_free(a);
}

TEST_CASE("tail quantile and R machinery through the C surface") {
    double q = 0.0;
    CHECK(adseq_tail_quantile_json("{\"kind\":\"power_law\",\"exponent\":2.0}", 0.25, &q) ==
          ADSEQ_OK);
    CHECK(q == doctest::Approx(2.0));

    adseq_alpha* a = nullptr;
    adseq_quantile* qm = nullptr;
    REQUIRE(adseq_alpha_create_power_law(1.0, 0.25, &a) == ADSEQ_OK);
    REQUIRE(adseq_quantile_create_power_law(1.0, 0.0, 0.0, &qm) == ADSEQ_OK);
    double r = 0.0;
    CHECK(adseq_r_eval(a, qm, 4, 0.125, 1, &r) == ADSEQ_OK);
    CHECK(r == 2.0);
    double level = 0.0;
    CHECK(adseq_r_inverse(a, qm, 4, 2.0, &level) == ADSEQ_OK);
    CHECK(level == doctest::Approx(0.125).epsilon(1e-9));
    adseq_quantile_free(qm);
    adseq_alpha_free(a);
}

TEST_CASE("regime and condition surface") {
    adseq_regime r;
    REQUIRE(adseq_regime_predict(0.25, 0.0, 2.0, &r) == ADSEQ_OK);
    CHECK(r.moment_exponent == 1.0);
    CHECK(r.log_factor == 0);
    CHECK(r.holder_delta == doctest::Approx(0.25));
    CHECK(r.ld_p == doctest::Approx(4.0));

    int holds = 0;
    double margin = 0.0, critical = 0.0;
    REQUIRE(adseq_check_condition("weak_moment", 0.25, 0.0, 4.0, 0, &holds, &margin, &critical) ==
            ADSEQ_OK);
    CHECK(holds == 1);
    CHECK(critical == doctest::Approx(4.0));
    CHECK(adseq_check_condition("nonsense", 0.25, 0.0, 4.0, 0, &holds, &margin, &critical) ==
          ADSEQ_ERR_CONFIG);
}

TEST_CASE("bounds report and config utilities") {
    const char* cfg =
        "{\"alpha\":{\"kind\":\"power_law\",\"scale\":1.0,\"gamma\":0.25},"
        "\"quantile\":{\"kind\":\"power_law\",\"scale\":0.0,\"b\":0.0},"
        "\"bounds\":{\"n\":16,\"p\":2.0,\"x_grid\":[1.0]}}";
    char* report = nullptr;
    REQUIRE(adseq_bounds_evaluate_json(cfg, &report) == ADSEQ_OK);
    std::string rep(report);
    adseq_string_free(report);
    CHECK(rep.find("\"rosenthal.term1\"") != std::string::npos);
    CHECK(rep.find("\"deviation.term4\"") != std::string::npos);
    CHECK(rep.find("\"constants_omitted\":true") != std::string::npos);

    char* canon = nullptr;
    REQUIRE(adseq_config_canonical("{\"b\":2,\"a\":1}", &canon) == ADSEQ_OK);
    CHECK(std::string(canon) == "{\"a\":1,\"b\":2}");
    char* canon2 = nullptr;
    REQUIRE(adseq_config_canonical(canon, &canon2) == ADSEQ_OK);
    CHECK(std::string(canon) == std::string(canon2)); // canonical form is a fixed point
    adseq_string_free(canon);
    adseq_string_free(canon2);

    char hex[17], hex2[17];
    REQUIRE(adseq_config_hash("{\"b\":2,\"a\":1}", hex) == ADSEQ_OK);
    REQUIRE(adseq_config_hash("{\"a\":1,  \"b\": 2}", hex2) == ADSEQ_OK);
    CHECK(std::string(hex) == std::string(hex2)); // whitespace-insensitive
    CHECK(std::strlen(hex) == 16);
    CHECK(adseq_config_canonical("{oops", &canon) == ADSEQ_ERR_CONFIG);
}

TEST_CASE("experiment handle: run, serialize, free") {
    const char* cfg =
        "{\"sim\":{\"source\":\"rademacher\",\"weights\":[1.0],\"n_grid\":[64,128,256],"
        "\"replicas\":200,\"seed\":6,\"p_list\":[2.0],\"x_grid\":[1.0]}}";
    adseq_experiment* e = nullptr;
    REQUIRE(adseq_experiment_run_json(cfg, "moments,tails", &e) == ADSEQ_OK);
    char* csv = nullptr;
    REQUIRE(adseq_experiment_csv(e, &csv) == ADSEQ_OK);
    std::string text(csv);
    adseq_string_free(csv);
    CHECK(text.rfind("n,statistic,", 0) == 0);
    CHECK(text.find("moment") != std::string::npos);
    CHECK(text.find("tail") != std::string::npos);
    char* js = nullptr;
    REQUIRE(adseq_experiment_json(e, &js) == ADSEQ_OK);
    std::string jtext(js);
    adseq_string_free(js);
    CHECK(jtext.find("\"config_hash\"") != std::string::npos);
    adseq_experiment_free(e);

    CHECK(adseq_experiment_run_json("{oops", nullptr, &e) == ADSEQ_ERR_CONFIG);
    CHECK(adseq_experiment_run_json(cfg, "bogus", &e) == ADSEQ_ERR_CONFIG);
}

TEST_CASE("statistics helpers through the C surface") {
    std::vector<double> xs(200000);
    const double w[1] = {1.0};
    REQUIRE(adseq_mdep_sequence(8, 0, w, 1, xs.size(), xs.data()) == ADSEQ_OK);
    double est = 0.0, se = 0.0;
    uint32_t bw = 0;
    REQUIRE(adseq_sigma2(xs.data(), xs.size(), 0, &est, &se, &bw) == ADSEQ_OK);
    CHECK(std::abs(est - 1.0) < 3.0 * se);
    CHECK(bw > 0);

    const double ns[4] = {64, 256, 1024, 4096};
    double est4[4], se4[4];
    for (int i = 0; i < 4; ++i) {
        est4[i] = 2.0 * std::pow(ns[i], 1.25);
        se4[i] = 0.0;
    }
    double expo = 0.0, ese = 0.0, lc = 0.0;
    REQUIRE(adseq_scaling_fit(ns, est4, se4, 4, 0, &expo, &ese, &lc) == ADSEQ_OK);
    CHECK(expo == doctest::Approx(1.25).epsilon(1e-10));

    const double ts[3] = {0.0, 0.5, 1.0};
    const double fs[3] = {0.0, 0.5, 1.0};
    double semi = 0.0, norm = 0.0;
    int approx = 0;
    REQUIRE(adseq_holder_norm(ts, fs, 3, 0.5, &semi, &norm, &approx) == ADSEQ_OK);
    CHECK(semi == doctest::Approx(1.0));
    CHECK(approx == 0);

    std::vector<double> zeros(500, 0.0);
    double d = 0.0;
    REQUIRE(adseq_ks_normal(zeros.data(), zeros.size(), 1.0, &d) == ADSEQ_OK);
    CHECK(d == doctest::Approx(0.5));
}
