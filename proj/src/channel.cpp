#include "uavnet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uavnet/geometry.hpp"

namespace uavnet {

namespace {
constexpr double kRadToDeg = 180.0 / M_PI;
}

double los_probability(double r, const ChannelConfig& ch, double h) {
    if (r < h) throw std::invalid_argument("los_probability: r < h has no elevation angle");
    const double angle_deg = kRadToDeg * std::asin(std::min(1.0, h / r));
    return 1.0 / (1.0 + ch.env_A * std::exp(-ch.env_B * (angle_deg - ch.env_A)));
}

double los_probability_ground(double z, const ChannelConfig& ch, double h) {
    const double angle_deg = kRadToDeg * std::atan2(h, z);
    return 1.0 / (1.0 + ch.env_A * std::exp(-ch.env_B * (angle_deg - ch.env_A)));
}

ExclusionDistances exclusion_distances(double r, const ChannelConfig& ch, double h,
                                       StationExclusionForm form) {
    ExclusionDistances d;
    d.d_l = std::pow(ch.eta_l / ch.eta_n, 1.0 / ch.alpha_l) * std::pow(r, ch.alpha_n / ch.alpha_l);
    d.d_n = std::max(h, std::pow(ch.eta_n / ch.eta_l, 1.0 / ch.alpha_n) *
                            std::pow(r, ch.alpha_l / ch.alpha_n));
    const double sign = form == StationExclusionForm::AsPrinted ? 1.0 : -1.0;
    d.big_d_l = std::pow(ch.eta_l, sign / ch.alpha_t) * std::pow(r, ch.alpha_l / ch.alpha_t);
    d.big_d_n = std::pow(ch.eta_n, sign / ch.alpha_t) * std::pow(r, ch.alpha_n / ch.alpha_t);
    d.hat_d_l = std::max(h, std::pow(ch.eta_l, 1.0 / ch.alpha_l) * std::pow(r, ch.alpha_t / ch.alpha_l));
    d.hat_d_n = std::max(h, std::pow(ch.eta_n, 1.0 / ch.alpha_n) * std::pow(r, ch.alpha_t / ch.alpha_n));
    return d;
}

LosVoidIntegrals::LosVoidIntegrals(const ChannelConfig& ch, double h, double z_max)
    : z_max_(z_max) {
    p_los_far_ = 1.0 / (1.0 + ch.env_A * std::exp(ch.env_A * ch.env_B));
    auto integrand = [&ch, h](double z) { return z * los_probability_ground(z, ch, h); };

    std::vector<double> knots;
    // Dense where the LoS transition lives, log-graded beyond.
    const double dense_hi = std::max(20.0 * h, 1200.0);
    for (double z = 0.0; z < dense_hi; z += dense_hi / 256.0) knots.push_back(z);
    double z = dense_hi;
    while (z < z_max) {
        knots.push_back(z);
        z *= 1.07;
    }
    knots.push_back(z_max);

    std::vector<double> cum(knots.size(), 0.0);
    for (std::size_t i = 1; i < knots.size(); ++i) {
        cum[i] = cum[i - 1] + gauss16(integrand, knots[i - 1], knots[i]);
    }
    table_ = Pchip(std::move(knots), std::move(cum));
}

double LosVoidIntegrals::v_los(double z) const {
    if (z <= 0.0) return 0.0;
    if (z > z_max_) {
        // Far tail: P_l has flattened to its horizon value.
        return table_(z_max_) + 0.5 * p_los_far_ * (z * z - z_max_ * z_max_);
    }
    return table_(z);
}

double LosVoidIntegrals::v_los_direct(double z, const ChannelConfig& ch, double h) {
    if (z <= 0.0) return 0.0;
    auto integrand = [&ch, h](double t) { return t * los_probability_ground(t, ch, h); };
    QuadOptions opt;
    opt.abs_tol = 1e-10;
    opt.rel_tol = 1e-9;
    return integrate(integrand, 0.0, z, opt);
}

namespace {

double horizontal(double dist3d, double h) {
    const double s = dist3d * dist3d - h * h;
    return s > 0.0 ? std::sqrt(s) : 0.0;
}

}  // namespace

AssociationProbabilities association_probabilities(
    double r, double r_s, double r_c_dist, double lambda_u_avail,
    const ChannelConfig& ch, const NetworkConfig& net, const LosVoidIntegrals& voids,
    StationExclusionForm form) {
    const double h = net.h;
    const double rc = net.r_c;
    const ExclusionDistances ex = exclusion_distances(r, ch, h, form);
    const double two_pi_lu = 2.0 * M_PI * lambda_u_avail;

    AssociationProbabilities a;

    // UAV-served candidates: void of the winning rival type plus both
    // station candidates being farther than the power-equivalent distance.
    const double beats_nlos = std::exp(-two_pi_lu * voids.v_nlos(horizontal(ex.d_n, h)));
    const double beats_los = std::exp(-two_pi_lu * voids.v_los(horizontal(ex.d_l, h)));
    const double los_vs_cs = 1.0 - user_station_distance_cdf(ex.big_d_l, r_s, rc);
    const double los_vs_cc = 1.0 - user_station_distance_cdf(ex.big_d_l, r_c_dist, rc);
    const double nlos_vs_cs = 1.0 - user_station_distance_cdf(ex.big_d_n, r_s, rc);
    const double nlos_vs_cc = 1.0 - user_station_distance_cdf(ex.big_d_n, r_c_dist, rc);

    a.a_los = beats_nlos * los_vs_cs * los_vs_cc;
    a.a_nlos = beats_los * nlos_vs_cs * nlos_vs_cc;
    a.a_los_n = beats_nlos * los_vs_cc;
    a.a_nlos_n = beats_los * nlos_vs_cc;

    // Station-served candidates.
    const double st_beats_los = std::exp(-two_pi_lu * voids.v_los(horizontal(ex.hat_d_l, h)));
    const double st_beats_nlos = std::exp(-two_pi_lu * voids.v_nlos(horizontal(ex.hat_d_n, h)));
    a.a_cs = st_beats_los * st_beats_nlos * (1.0 - user_station_distance_cdf(r, r_c_dist, rc));
    a.a_cc = st_beats_los * st_beats_nlos * (1.0 - user_station_distance_cdf(r, r_s, rc));
    a.a_cc_n = st_beats_los * st_beats_nlos;
    return a;
}

}  // namespace uavnet
