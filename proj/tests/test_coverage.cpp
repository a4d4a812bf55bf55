#include <doctest.h>

#include <cmath>

#include "uavnet/coverage.hpp"
#include "uavnet/geometry.hpp"

using namespace uavnet;

TEST_CASE("gain thresholds") {
    ChannelConfig ch = default_config().channel;
    ch.theta = 1.0;
    ch.eta_l = 1.0;
    ch.rho_u = 1.0;
    CHECK(gain_threshold_los(1.0, ch) == doctest::Approx(1.0));
    const ChannelConfig def = default_config().channel;
    CHECK(gain_threshold_los(60.0, def) ==
          doctest::Approx(1.0 * 1.0 * (1.0 / 0.2) * std::pow(60.0, 2.1)).epsilon(1e-12));
    double prev = 0.0;
    for (double r = 10.0; r < 500.0; r += 10.0) {
        const double g = gain_threshold_nlos(r, def);
        CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("alzer coefficient branches") {
    CHECK(alzer_beta2(1) == 1.0);
    CHECK(alzer_beta2(3) == doctest::Approx(std::pow(6.0, -1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("near-zero threshold saturates the hotspot components") {
    Config cfg = default_config();
    cfg.channel.theta = 1e-9;
    CoverageOptions opt;
    opt.outer_samples = 256;
    const CoverageReport rep = coverage(cfg, opt);
    CHECK(rep.uo_los + rep.uo_nlos == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("empty fields kill the away-branch components") {
    Config cfg = default_config();
    CoverageOptions opt;
    opt.outer_samples = 128;
    opt.override_p_a = 1e-300;   // no available UAVs
    opt.override_p_c_a = 1e-300; // no active stations
    opt.override_p_crs_a = 0.0;  // the typical station serves nothing
    const CoverageReport rep = coverage(cfg, opt);
    CHECK(rep.up_los == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.up_nlos == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.cs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.cc == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("inactive typical station removes the cs component") {
    Config cfg = default_config();
    CoverageOptions opt;
    opt.outer_samples = 256;
    opt.override_p_crs_a = 0.0;
    const CoverageReport rep = coverage(cfg, opt);
    CHECK(rep.cs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.cc > 0.0);
}

TEST_CASE("assembly identity recombines the stored components") {
    Config cfg = default_config();
    CoverageOptions opt;
    opt.outer_samples = 512;
    const CoverageReport rep = coverage(cfg, opt);
    const double rebuilt = rep.p_a * (rep.uo_los + rep.uo_nlos) +
                           (1.0 - rep.p_a) * (rep.up_los + rep.up_nlos + rep.cs + rep.cc);
    CHECK(rep.p_cov_total == doctest::Approx(rebuilt).epsilon(1e-9));
    for (double v : {rep.uo_los, rep.uo_nlos, rep.up_los, rep.up_nlos, rep.cs, rep.cc,
                     rep.p_cov_total}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("deterministic under a fixed sample budget") {
    Config cfg = default_config();
    CoverageOptions opt;
    opt.outer_samples = 256;
    const CoverageReport a = coverage(cfg, opt);
    const CoverageReport b = coverage(cfg, opt);
    CHECK(a.p_cov_total == b.p_cov_total);
    CHECK(a.up_los == b.up_los);
    CHECK(a.cs == b.cs);
}

TEST_CASE("unit gamma shape makes both methods coincide") {
    Config cfg = default_config();
    cfg.channel.m_l = 1;  // every fading term becomes exponential
    CoverageOptions alzer;
    alzer.outer_samples = 256;
    alzer.method = CoverageMethod::Alzer;
    CoverageOptions exact = alzer;
    exact.method = CoverageMethod::ExactDerivative;
    const CoverageReport a = coverage(cfg, alzer);
    const CoverageReport e = coverage(cfg, exact);
    CHECK(std::abs(a.uo_los - e.uo_los) < 1e-9);
    CHECK(std::abs(a.uo_nlos - e.uo_nlos) < 1e-9);
    CHECK(std::abs(a.up_los - e.up_los) < 1e-9);
    CHECK(std::abs(a.up_nlos - e.up_nlos) < 1e-9);
    CHECK(std::abs(a.p_cov_total - e.p_cov_total) < 1e-9);
}

TEST_CASE("methods stay close at the default shape") {
    Config cfg = default_config();
    CoverageOptions alzer;
    alzer.outer_samples = 512;
    CoverageOptions exact = alzer;
    exact.method = CoverageMethod::ExactDerivative;
    const CoverageReport a = coverage(cfg, alzer);
    const CoverageReport e = coverage(cfg, exact);
    CHECK(std::abs(a.p_cov_total - e.p_cov_total) < 0.02);
}
