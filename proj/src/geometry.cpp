#include "uavnet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uavnet/quad.hpp"

namespace uavnet {

double CellCountPmf::mean() const {
    double m = 0.0;
    for (std::size_t n = 0; n < probabilities.size(); ++n) m += n * probabilities[n];
    return m;
}

CellCountPmf cell_count_pmf(const NetworkConfig& net, double tol) {
    if (!(tol > 0.0 && tol <= 1e-3)) {
        throw std::invalid_argument("cell_count_pmf: tol must be in (0, 1e-3]");
    }
    const double a = net.pv_fit_a;
    const double b = net.pv_fit_b;
    const double ratio = net.ratio;
    const double log_b = std::log(b);
    const double log_ratio = std::log(ratio);
    const double log_b_ratio = std::log(b + ratio);
    const double lg_a = std::lgamma(a);

    CellCountPmf pmf;
    double cum = 0.0;
    constexpr int kMaxN = 200000;
    for (int n = 0; n <= kMaxN; ++n) {
        const double log_p = std::lgamma(a + n + 1.0) - lg_a + a * log_b - std::lgamma(n + 1.0) +
                             n * log_ratio - (a + n + 1.0) * log_b_ratio;
        const double p = std::exp(log_p);
        pmf.probabilities.push_back(p);
        cum += p;
        if (cum >= 1.0 - tol) break;
    }
    pmf.truncation_n_max = static_cast<int>(pmf.probabilities.size()) - 1;
    pmf.tail_mass = std::max(0.0, 1.0 - cum);
    return pmf;
}

double first_contact_pdf(double lambda, double r) {
    if (r < 0.0) return 0.0;
    return 2.0 * M_PI * lambda * r * std::exp(-M_PI * lambda * r * r);
}

double first_contact_cdf(double lambda, double r) {
    if (r <= 0.0) return 0.0;
    return -std::expm1(-M_PI * lambda * r * r);
}

double hotspot_uav_pdf(double r, const NetworkConfig& net) {
    const double hi = std::sqrt(net.r_c * net.r_c + net.h * net.h);
    if (r < net.h || r > hi) return 0.0;
    return 2.0 * r / (net.r_c * net.r_c);
}

double hotspot_uav_cdf(double r, const NetworkConfig& net) {
    const double hi = std::sqrt(net.r_c * net.r_c + net.h * net.h);
    if (r <= net.h) return 0.0;
    if (r >= hi) return 1.0;
    return (r * r - net.h * net.h) / (net.r_c * net.r_c);
}

namespace {

double nearest_thinned_exponent(double r, double lambda, const ChannelConfig& ch, double h,
                                bool los) {
    const double u2 = r * r - h * h;
    if (u2 <= 0.0) return 0.0;
    auto integrand = [&ch, h, los](double z) {
        const double p = los_probability_ground(z, ch, h);
        return z * (los ? p : 1.0 - p);
    };
    QuadOptions opt;
    opt.abs_tol = 1e-8;
    opt.rel_tol = 1e-6;
    return 2.0 * M_PI * lambda * integrate(integrand, 0.0, std::sqrt(u2), opt);
}

}  // namespace

double nearest_los_pdf(double r, double lambda_u_avail, const ChannelConfig& ch, double h) {
    if (r < h) return 0.0;
    const double p = los_probability(r, ch, h);
    return 2.0 * M_PI * lambda_u_avail * p * r *
           std::exp(-nearest_thinned_exponent(r, lambda_u_avail, ch, h, true));
}

double nearest_nlos_pdf(double r, double lambda_u_avail, const ChannelConfig& ch, double h) {
    if (r < h) return 0.0;
    const double p = 1.0 - los_probability(r, ch, h);
    return 2.0 * M_PI * lambda_u_avail * p * r *
           std::exp(-nearest_thinned_exponent(r, lambda_u_avail, ch, h, false));
}

double nearest_los_ccdf(double r, double lambda_u_avail, const ChannelConfig& ch, double h) {
    if (r <= h) return 1.0;
    return std::exp(-nearest_thinned_exponent(r, lambda_u_avail, ch, h, true));
}

double nearest_nlos_ccdf(double r, double lambda_u_avail, const ChannelConfig& ch, double h) {
    if (r <= h) return 1.0;
    return std::exp(-nearest_thinned_exponent(r, lambda_u_avail, ch, h, false));
}

double nearest_active_station_pdf(double r, double r_s, double lambda_c_active) {
    if (r < r_s) return 0.0;
    return 2.0 * M_PI * lambda_c_active * r *
           std::exp(-M_PI * lambda_c_active * (r * r - r_s * r_s));
}

double nearest_active_station_cdf(double r, double r_s, double lambda_c_active) {
    if (r <= r_s) return 0.0;
    return -std::expm1(-M_PI * lambda_c_active * (r * r - r_s * r_s));
}

namespace {

// arccos of the lens opening angle; the argument is clamped against
// floating-point spill at the support endpoints.
double arc_term(double x, double center_dist, double r_c) {
    const double denom = 2.0 * center_dist * x;
    if (denom <= 0.0) return 0.0;
    double arg = (x * x - r_c * r_c + center_dist * center_dist) / denom;
    arg = std::clamp(arg, -1.0, 1.0);
    return std::acos(arg);
}

}  // namespace

double user_station_distance_pdf(double r, double center_dist, double r_c) {
    if (r <= 0.0) return 0.0;
    if (center_dist < r_c) {
        if (r < r_c - center_dist) return 2.0 * r / (r_c * r_c);
        if (r < r_c + center_dist) return 2.0 * r / (M_PI * r_c * r_c) * arc_term(r, center_dist, r_c);
        return 0.0;
    }
    if (r > center_dist - r_c && r < center_dist + r_c) {
        return 2.0 * r / (M_PI * r_c * r_c) * arc_term(r, center_dist, r_c);
    }
    return 0.0;
}

double user_station_distance_cdf(double r, double center_dist, double r_c) {
    if (r <= 0.0) return 0.0;
    if (r >= center_dist + r_c) return 1.0;
    QuadOptions opt;
    opt.abs_tol = 1e-10;
    opt.rel_tol = 1e-8;
    opt.max_depth = 24;
    auto arc_integrand = [center_dist, r_c](double x) {
        return 2.0 * x * arc_term(x, center_dist, r_c);
    };
    if (center_dist < r_c) {
        const double knee = r_c - center_dist;
        if (r <= knee) return r * r / (r_c * r_c);
        return knee * knee / (r_c * r_c) +
               integrate(arc_integrand, knee, r, opt) / (M_PI * r_c * r_c);
    }
    const double lo = center_dist - r_c;
    if (r <= lo) return 0.0;
    return integrate(arc_integrand, lo, r, opt) / (M_PI * r_c * r_c);
}

}  // namespace uavnet
