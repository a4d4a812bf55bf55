#include <doctest.h>

#include <cmath>

#include "uavnet/laplace.hpp"
#include "uavnet/quad.hpp"
#include "uavnet/sim.hpp"

using namespace uavnet;

namespace {

struct Fixture {
    Config cfg = default_config();
    double lambda_u = 4e-6;   // an available-UAV field
    double lambda_c = 4e-7;   // an active-station field
    InterferenceLaplace lap{cfg.channel, cfg.net.h, lambda_u, lambda_c};
};

// Campbell mean of the interference outside the case's exclusion zones.
double campbell_mean(const Fixture& f, const ServingCase& sc) {
    const auto ex = f.lap.exclusions(sc);
    const ChannelConfig& ch = f.cfg.channel;
    const double h = f.cfg.net.h;
    QuadOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-9;
    auto uav = [&](bool los, double lo) {
        return 2.0 * M_PI * f.lambda_u *
               integrate_to_inf(
                   [&](double z) {
                       const double p = los_probability_ground(z, ch, h);
                       const double eta = los ? ch.eta_l : ch.eta_n;
                       const double alpha = los ? ch.alpha_l : ch.alpha_n;
                       return (los ? p : 1.0 - p) * z * eta * ch.rho_u *
                              std::pow(z * z + h * h, -alpha / 2.0);
                   },
                   lo, opt);
    };
    const double stations =
        2.0 * M_PI * f.lambda_c *
        integrate_to_inf(
            [&](double z) { return ch.rho_u * std::pow(z, 1.0 - ch.alpha_t); },
            std::max(ex.station_ground, 1e-6), opt);
    return uav(true, ex.los_ground) + uav(false, ex.nlos_ground) + stations;
}

}  // namespace

TEST_CASE("laplace transform basic identities") {
    Fixture f;
    const ServingCase hotspot{ServingKind::HotspotUav, true, 0.0, 0.0, 0.0};
    CHECK(f.lap.laplace(0.0, hotspot) == 1.0);
    CHECK(f.lap.laplace_noise(0.0, hotspot, 1e-9) == 1.0);

    // No interferers at all.
    InterferenceLaplace none(f.cfg.channel, f.cfg.net.h, 0.0, 0.0);
    for (double s : {1.0, 1e4, 1e8}) {
        CHECK(none.laplace(s, hotspot) == doctest::Approx(1.0).epsilon(1e-12));
    }

    // Noise factoring.
    const double s = 3e5;
    CHECK(f.lap.laplace_noise(s, hotspot, 1e-9) ==
          doctest::Approx(std::exp(-s * 1e-9) * f.lap.laplace(s, hotspot)).epsilon(1e-12));
    CHECK(f.lap.laplace_noise(s, hotspot, 0.0) ==
          doctest::Approx(f.lap.laplace(s, hotspot)).epsilon(1e-12));
}

TEST_CASE("laplace transform is decreasing, bounded and log-convex in s") {
    Fixture f;
    const ServingCase sc{ServingKind::LosUav, true, 150.0, 0.0, 0.0};
    double prev = 1.0 + 1e-12;
    std::vector<double> logs;
    for (double s = 1e3; s <= 1e8; s *= 2.0) {
        const double v = f.lap.laplace(s, sc);
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
        CHECK(v < prev);
        prev = v;
        logs.push_back(std::log(v));
    }
    // log L is convex on the geometric grid.
    for (std::size_t i = 1; i + 1 < logs.size(); ++i) {
        CHECK(logs[i] <= 0.5 * (logs[i - 1] + logs[i + 1]) + 1e-9);
    }
}

TEST_CASE("larger exclusion zones never decrease the transform") {
    Fixture f;
    const double s = 1e6;
    const ServingCase near{ServingKind::LosUav, true, 100.0, 0.0, 0.0};
    const ServingCase far{ServingKind::LosUav, true, 240.0, 0.0, 0.0};
    CHECK(f.lap.laplace(s, far) >= f.lap.laplace(s, near));

    const ServingCase st_small{ServingKind::Station, true, 50.0, 50.0, 700.0};
    const ServingCase st_large{ServingKind::Station, true, 50.0, 900.0, 700.0};
    CHECK(f.lap.laplace(s, st_large) >= f.lap.laplace(s, st_small));
}

TEST_CASE("derivative identities") {
    Fixture f;
    const ServingCase sc{ServingKind::LosUav, true, 150.0, 0.0, 0.0};
    const double sigma2 = f.cfg.channel.sigma2;

    // Order zero is the transform itself.
    CHECK(f.lap.derivative(0, 2e5, sc, sigma2) ==
          doctest::Approx(f.lap.laplace_noise(2e5, sc, sigma2)).epsilon(1e-12));

    // First derivative at s=0 is minus the mean of noise plus interference.
    const double d1 = f.lap.derivative(1, 0.0, sc, sigma2);
    CHECK(d1 == doctest::Approx(-(sigma2 + campbell_mean(f, sc))).epsilon(1e-6));

    // Higher orders against central finite differences.
    for (int k : {1, 2}) {
        const double s = 4e5;
        const double step = s * 1e-4;
        auto fk = [&](double x) { return f.lap.derivative(k - 1, x, sc, sigma2); };
        const double fd = (fk(s + step) - fk(s - step)) / (2.0 * step);
        CHECK(f.lap.derivative(k, s, sc, sigma2) == doctest::Approx(fd).epsilon(1e-3));
    }

    // Complete monotonicity: derivative signs alternate on a grid.
    for (double s : {1e4, 1e5, 1e6}) {
        for (int k = 0; k <= 3; ++k) {
            const double v = f.lap.derivative(k, s, sc, sigma2);
            CHECK((k % 2 == 0 ? v : -v) >= 0.0);
        }
    }
}

TEST_CASE("monte carlo realizations agree with the transform") {
    Fixture f;
    struct Probe {
        ServingCase sc;
        double s;
    };
    const std::vector<Probe> probes = {
        {{ServingKind::HotspotUav, true, 0.0, 0.0, 0.0}, 1e6},
        {{ServingKind::LosUav, true, 150.0, 0.0, 0.0}, 3e6},
        {{ServingKind::Station, true, 300.0, 300.0, 800.0}, 1e7},
    };
    for (const auto& p : probes) {
        const double analytic = f.lap.laplace(p.s, p.sc);
        const SimEstimate est = estimate_laplace(p.s, p.sc, f.lambda_u, f.lambda_c, f.cfg.channel,
                                                 f.cfg.net.h, 40000, 31);
        CHECK(std::abs(est.estimate - analytic) / analytic < 0.02);
    }
    // s = 0: unit mass with zero spread.
    const SimEstimate zero = estimate_laplace(0.0, probes[0].sc, f.lambda_u, f.lambda_c,
                                              f.cfg.channel, f.cfg.net.h, 100, 5);
    CHECK(zero.estimate == 1.0);
    CHECK(zero.half_width_95 == 0.0);
}
