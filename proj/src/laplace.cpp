#include "uavnet/laplace.hpp"

#include <cmath>
#include <stdexcept>

#include "uavnet/quad.hpp"

namespace uavnet {

namespace {

double ground_of(double dist3d, double h) {
    const double s = dist3d * dist3d - h * h;
    return s > 0.0 ? std::sqrt(s) : 0.0;
}

}  // namespace

InterferenceLaplace::InterferenceLaplace(const ChannelConfig& ch, double h, double lambda_u_avail,
                                         double lambda_c_active, StationExclusionForm form)
    : ch_(ch), h_(h), lambda_u_(lambda_u_avail), lambda_c_(lambda_c_active), form_(form) {}

InterferenceLaplace::Exclusions InterferenceLaplace::exclusions(const ServingCase& sc) const {
    Exclusions ex;
    switch (sc.kind) {
        case ServingKind::HotspotUav:
            break;
        case ServingKind::LosUav: {
            const ExclusionDistances d = exclusion_distances(sc.r, ch_, h_, form_);
            ex.nlos_ground = ground_of(d.d_n, h_);
            ex.los_ground = ground_of(sc.r, h_);
            ex.station_ground = d.big_d_l;
            break;
        }
        case ServingKind::NlosUav: {
            const ExclusionDistances d = exclusion_distances(sc.r, ch_, h_, form_);
            ex.nlos_ground = ground_of(sc.r, h_);
            ex.los_ground = ground_of(d.d_l, h_);
            ex.station_ground = d.big_d_n;
            break;
        }
        case ServingKind::Station: {
            const ExclusionDistances d = exclusion_distances(sc.r, ch_, h_, form_);
            ex.nlos_ground = ground_of(d.hat_d_n, h_);
            ex.los_ground = ground_of(d.hat_d_l, h_);
            ex.station_ground = sc.station_active ? std::min(sc.r_su, sc.r_cu) : sc.r_cu;
            break;
        }
    }
    return ex;
}

// One thinned-UAV PGFL exponent (or a derivative of it in s). The gain MGF
// bracket for Nakagami-m interferers is (1 + s w / m)^-m with
// w = eta rho (z^2+h^2)^(-alpha/2).
double InterferenceLaplace::uav_field_log(double s, double lower, bool los,
                                          int deriv_order) const {
    if (lambda_u_ <= 0.0) return 0.0;
    const double eta = los ? ch_.eta_l : ch_.eta_n;
    const double alpha = los ? ch_.alpha_l : ch_.alpha_n;
    const int m = los ? ch_.m_l : ch_.m_n;
    const double md = static_cast<double>(m);
    auto integrand = [&](double z) {
        const double w = eta * ch_.rho_u * std::pow(z * z + h_ * h_, -0.5 * alpha);
        const double base = 1.0 + s * w / md;
        const double p = los_probability_ground(z, ch_, h_);
        const double weight = z * (los ? p : 1.0 - p);
        switch (deriv_order) {
            case 0:
                return (1.0 - std::pow(base, -md)) * weight;
            case 1:
                return w * std::pow(base, -md - 1.0) * weight;
            case 2:
                return -(md + 1.0) / md * w * w * std::pow(base, -md - 2.0) * weight;
            default:
                return (md + 1.0) * (md + 2.0) / (md * md) * w * w * w *
                       std::pow(base, -md - 3.0) * weight;
        }
    };
    QuadOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-7;
    return -2.0 * M_PI * lambda_u_ * integrate_to_inf(integrand, lower, opt);
}

// Active-station exponent; interferer fading is unit-mean exponential.
double InterferenceLaplace::station_field_log(double s, double lower, int deriv_order) const {
    if (lambda_c_ <= 0.0) return 0.0;
    if (deriv_order == 0 && s <= 0.0) return 0.0;
    const double rho = ch_.rho_u;
    if (deriv_order == 0 && std::abs(ch_.alpha_t - 4.0) < 1e-12) {
        if (s <= 0.0) return 0.0;
        const double sq = std::sqrt(s * rho);
        const double angle = M_PI / 2.0 - std::atan(lower * lower / sq);
        return -2.0 * M_PI * lambda_c_ * 0.5 * sq * angle;
    }
    auto integrand = [&](double z) {
        const double w = rho * std::pow(z, -ch_.alpha_t);
        const double base = 1.0 + s * w;
        switch (deriv_order) {
            case 0:
                return (1.0 - 1.0 / base) * z;
            case 1:
                return w / (base * base) * z;
            case 2:
                return -2.0 * w * w / (base * base * base) * z;
            default:
                return 6.0 * w * w * w / (base * base * base * base) * z;
        }
    };
    QuadOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-7;
    const double lo = std::max(lower, 1e-9);
    return -2.0 * M_PI * lambda_c_ * integrate_to_inf(integrand, lo, opt);
}

double InterferenceLaplace::log_laplace(double s, const ServingCase& sc) const {
    if (s < 0.0) throw std::invalid_argument("log_laplace: s must be >= 0");
    if (s == 0.0) return 0.0;
    const Exclusions ex = exclusions(sc);
    return uav_field_log(s, ex.nlos_ground, false, 0) + uav_field_log(s, ex.los_ground, true, 0) +
           station_field_log(s, ex.station_ground, 0);
}

double InterferenceLaplace::log_uav_fields(double s, const ServingCase& sc) const {
    if (s <= 0.0) return 0.0;
    const Exclusions ex = exclusions(sc);
    return uav_field_log(s, ex.nlos_ground, false, 0) + uav_field_log(s, ex.los_ground, true, 0);
}

double InterferenceLaplace::log_station_field(double s, double station_exclusion_ground) const {
    if (s <= 0.0) return 0.0;
    return station_field_log(s, station_exclusion_ground, 0);
}

double InterferenceLaplace::laplace(double s, const ServingCase& sc) const {
    return std::exp(log_laplace(s, sc));
}

double InterferenceLaplace::laplace_noise(double s, const ServingCase& sc, double sigma2) const {
    if (s < 0.0) throw std::invalid_argument("laplace_noise: s must be >= 0");
    if (s == 0.0) return 1.0;
    return std::exp(-s * sigma2 + log_laplace(s, sc));
}

double InterferenceLaplace::log_derivative(int k, double s, const ServingCase& sc,
                                           double sigma2) const {
    if (k < 0 || k > 3) throw std::invalid_argument("log_derivative: order must be 0..3");
    if (k == 0) return -s * sigma2 + log_laplace(s, sc);
    const Exclusions ex = exclusions(sc);
    double value = uav_field_log(s, ex.nlos_ground, false, k) +
                   uav_field_log(s, ex.los_ground, true, k) +
                   station_field_log(s, ex.station_ground, k);
    if (k == 1) value -= sigma2;
    return value;
}

double InterferenceLaplace::derivative(int k, double s, const ServingCase& sc,
                                       double sigma2) const {
    const double l0 = laplace_noise(s, sc, sigma2);
    if (k == 0) return l0;
    const double t1 = log_derivative(1, s, sc, sigma2);
    if (k == 1) return t1 * l0;
    const double t2 = log_derivative(2, s, sc, sigma2);
    if (k == 2) return (t2 + t1 * t1) * l0;
    const double t3 = log_derivative(3, s, sc, sigma2);
    if (k == 3) return (t3 + 3.0 * t1 * t2 + t1 * t1 * t1) * l0;
    throw std::invalid_argument("derivative: order must be 0..3");
}

double laplace_interference(double s, const ServingCase& sc, double lambda_u_avail,
                            double lambda_c_active, const ChannelConfig& ch, double h) {
    return InterferenceLaplace(ch, h, lambda_u_avail, lambda_c_active).laplace(s, sc);
}

double laplace_noise_plus_interference(double s, const ServingCase& sc, double lambda_u_avail,
                                       double lambda_c_active, const ChannelConfig& ch, double h,
                                       double sigma2) {
    return InterferenceLaplace(ch, h, lambda_u_avail, lambda_c_active)
        .laplace_noise(s, sc, sigma2);
}

double laplace_derivative(int k, double s, const ServingCase& sc, double lambda_u_avail,
                          double lambda_c_active, const ChannelConfig& ch, double h,
                          double sigma2) {
    return InterferenceLaplace(ch, h, lambda_u_avail, lambda_c_active)
        .derivative(k, s, sc, sigma2);
}

}  // namespace uavnet
