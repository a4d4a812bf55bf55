#include <doctest.h>

#include <cmath>

#include "uavnet/channel.hpp"
#include "uavnet/geometry.hpp"

using namespace uavnet;

TEST_CASE("los probability endpoints and monotonicity") {
    const Config cfg = default_config();
    const double h = cfg.net.h;
    // Straight overhead: 90 degrees of elevation.
    const double at_h = 1.0 / (1.0 + 25.27 * std::exp(-0.5 * (90.0 - 25.27)));
    CHECK(los_probability(h, cfg.channel, h) == doctest::Approx(at_h).epsilon(1e-12));
    CHECK(los_probability(h, cfg.channel, h) == doctest::Approx(1.0).epsilon(1e-10));
    // Horizon limit.
    const double far = 1.0 / (1.0 + 25.27 * std::exp(25.27 * 0.5));
    CHECK(los_probability(1e9, cfg.channel, h) == doctest::Approx(far).epsilon(1e-6));
    double prev = 2.0;
    for (double r = h; r < 2000.0; r += 5.0) {
        const double p = los_probability(r, cfg.channel, h);
        CHECK(p <= prev + 1e-15);
        prev = p;
    }
    CHECK_THROWS(los_probability(h - 1.0, cfg.channel, h));
}

TEST_CASE("void integral table tracks direct quadrature") {
    const Config cfg = default_config();
    const LosVoidIntegrals voids(cfg.channel, cfg.net.h);
    for (double z : {5.0, 60.0, 127.0, 300.0, 1500.0, 2e4, 1e6}) {
        const double direct = LosVoidIntegrals::v_los_direct(z, cfg.channel, cfg.net.h);
        CHECK(voids.v_los(z) == doctest::Approx(direct).epsilon(1e-7));
        CHECK(voids.v_nlos(z) == doctest::Approx(0.5 * z * z - direct).epsilon(1e-7));
    }
}

TEST_CASE("exclusion distances: symmetric channel degenerates to identity") {
    Config cfg = default_config();
    cfg.channel.eta_n = cfg.channel.eta_l = 3.0;
    cfg.channel.alpha_n = cfg.channel.alpha_l = 3.0;
    const double h = cfg.net.h;
    for (double r : {70.0, 150.0, 400.0}) {
        const ExclusionDistances d = exclusion_distances(r, cfg.channel, h);
        CHECK(d.d_l == doctest::Approx(r).epsilon(1e-12));
        CHECK(d.d_n == doctest::Approx(std::max(h, r)).epsilon(1e-12));
    }
}

TEST_CASE("exclusion distances at the default channel") {
    const Config cfg = default_config();
    const double h = cfg.net.h;
    // NLoS rival of a LoS server at 100 m: floored at the altitude.
    const ExclusionDistances d100 = exclusion_distances(100.0, cfg.channel, h);
    CHECK(d100.d_n ==
          doctest::Approx(std::max(60.0, std::pow(100.0, 0.25) * std::pow(100.0, 2.1 / 4.0)))
              .epsilon(1e-12));
    CHECK(d100.d_n == doctest::Approx(60.0));
    CHECK(std::pow(100.0, 0.25) * std::pow(100.0, 2.1 / 4.0) == doctest::Approx(35.48).epsilon(1e-3));

    // LoS rival of an NLoS server at 200 m, scripted recomputation.
    const ExclusionDistances d200 = exclusion_distances(200.0, cfg.channel, h);
    const double expect = std::pow(1.0 / 100.0, 1.0 / 2.1) * std::pow(200.0, 4.0 / 2.1);
    CHECK(d200.d_l == doctest::Approx(expect).epsilon(1e-12));

    // Station-exclusion orientation flag.
    const ExclusionDistances printed =
        exclusion_distances(200.0, cfg.channel, h, StationExclusionForm::AsPrinted);
    const ExclusionDistances consistent =
        exclusion_distances(200.0, cfg.channel, h, StationExclusionForm::PowerConsistent);
    CHECK(printed.big_d_n ==
          doctest::Approx(std::pow(100.0, 0.25) * std::pow(200.0, 1.0)).epsilon(1e-12));
    CHECK(consistent.big_d_n ==
          doctest::Approx(std::pow(100.0, -0.25) * std::pow(200.0, 1.0)).epsilon(1e-12));
    // eta_l = 1: the LoS case is orientation-free.
    CHECK(printed.big_d_l == doctest::Approx(consistent.big_d_l).epsilon(1e-15));

    // Power consistency of the consistent form: a station at exactly
    // big_d_n delivers the NLoS server's mean power.
    const double r = 200.0;
    const double nlos_power = cfg.channel.eta_n * cfg.channel.rho_u * std::pow(r, -cfg.channel.alpha_n);
    const double station_power = cfg.channel.rho_u * std::pow(consistent.big_d_n, -cfg.channel.alpha_t);
    CHECK(station_power == doctest::Approx(nlos_power).epsilon(1e-10));
}

TEST_CASE("association factor limits") {
    const Config cfg = default_config();
    const LosVoidIntegrals voids(cfg.channel, cfg.net.h);
    // Empty rival field: UAV candidates win their UAV comparisons surely.
    const AssociationProbabilities empty =
        association_probabilities(100.0, 400.0, 600.0, 0.0, cfg.channel, cfg.net, voids);
    CHECK(empty.a_los ==
          doctest::Approx((1.0 - user_station_distance_cdf(
                               exclusion_distances(100.0, cfg.channel, cfg.net.h).big_d_l, 400.0,
                               cfg.net.r_c)) *
                          (1.0 - user_station_distance_cdf(
                               exclusion_distances(100.0, cfg.channel, cfg.net.h).big_d_l, 600.0,
                               cfg.net.r_c)))
              .epsilon(1e-9));

    // Station candidate at vanishing distance: the D-hat floors at h keep
    // the UAV voids finite, probabilities stay in range.
    const AssociationProbabilities near =
        association_probabilities(1e-6, 400.0, 600.0, 4e-6, cfg.channel, cfg.net, voids);
    CHECK(near.a_cs > 0.0);
    CHECK(near.a_cs <= 1.0);

    // Each factor is within [0,1] and products too, across a grid.
    for (double r : {70.0, 120.0, 300.0, 900.0}) {
        const AssociationProbabilities a =
            association_probabilities(r, 500.0, 700.0, 4e-6, cfg.channel, cfg.net, voids);
        for (double v : {a.a_los, a.a_nlos, a.a_cs, a.a_cc, a.a_los_n, a.a_nlos_n, a.a_cc_n}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        // Inactive-case products drop one survival factor, so they dominate.
        CHECK(a.a_los_n >= a.a_los - 1e-15);
        CHECK(a.a_nlos_n >= a.a_nlos - 1e-15);
        CHECK(a.a_cc_n >= a.a_cc - 1e-15);
    }
}

TEST_CASE("association factors decrease in the rival density") {
    const Config cfg = default_config();
    const LosVoidIntegrals voids(cfg.channel, cfg.net.h);
    double prev_los = 1.0, prev_cs = 1.0;
    for (double lam : {1e-7, 1e-6, 4e-6, 1e-5}) {
        const AssociationProbabilities a =
            association_probabilities(150.0, 500.0, 700.0, lam, cfg.channel, cfg.net, voids);
        CHECK(a.a_los <= prev_los + 1e-15);
        CHECK(a.a_cs <= prev_cs + 1e-15);
        prev_los = a.a_los;
        prev_cs = a.a_cs;
    }
}
