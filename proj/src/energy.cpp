#include "uavnet/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "uavnet/quad.hpp"

namespace uavnet {

double blade_power(double v, const RotorParams& rotor) {
    if (!(v > 0.0)) throw std::invalid_argument("blade_power: v must be > 0");
    const double profile = rotor.p_0 * (1.0 + 3.0 * v * v / (rotor.u_tip * rotor.u_tip));
    const double induced = rotor.p_i * rotor.v_0 / v;
    const double parasite = 0.5 * rotor.d_0 * rotor.rho_air * rotor.rotor_solidity_s *
                            rotor.rotor_area_A * v * v * v;
    return profile + induced + parasite;
}

double optimal_velocity(const RotorParams& rotor, double v_lo, double v_hi) {
    auto energy_per_meter = [&rotor](double v) {
        const double p = blade_power(v, rotor);
        if (!std::isfinite(p)) throw std::runtime_error("optimal_velocity: non-finite power");
        return p / v;
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = v_lo, b = v_hi;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = energy_per_meter(x1);
    double f2 = energy_per_meter(x2);
    while (b - a > 1e-4) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = energy_per_meter(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = energy_per_meter(x2);
        }
    }
    return 0.5 * (a + b);
}

double service_time(double r_s, const EnergyConfig& energy) {
    return (energy.b_max - 2.0 * energy.p_m * r_s / energy.v - 2.0 * energy.e_l) / energy.p_s;
}

EnergyProfile expected_profile(const NetworkConfig& net, const EnergyConfig& energy) {
    EnergyProfile p;
    p.t_land = 2.0 * std::sqrt(2.0 * net.h / energy.a_ave);
    p.v_max = std::sqrt(2.0 * net.h * energy.a_ave);
    p.e_l = energy.e_l;
    p.expected_r_s = 1.0 / (2.0 * std::sqrt(net.lambda_c));
    p.t_tra_expected = p.expected_r_s / energy.v;
    p.t_se_expected = service_time(p.expected_r_s, energy);
    if (!(p.t_se_expected > 0.0)) {
        throw ConfigError(
            "configuration error: expected service time is not positive "
            "(battery too small for the station density)");
    }
    return p;
}

double landing_energy_estimate(const RotorParams& rotor, double h, double a_ave,
                               bool integrand_times_t, double v_floor) {
    const double t_end = std::sqrt(2.0 * h / a_ave);
    const double v_max = std::sqrt(2.0 * h * a_ave);
    auto power_at = [&](double v) { return blade_power(std::max(v, v_floor), rotor); };
    auto accel_leg = [&](double t) {
        const double w = integrand_times_t ? t : 1.0;
        return power_at(a_ave * t) * w;
    };
    auto decel_leg = [&](double t) {
        const double w = integrand_times_t ? t : 1.0;
        return power_at(v_max - a_ave * t) * w;
    };
    return integrate(accel_leg, 0.0, t_end) + integrate(decel_leg, 0.0, t_end);
}

}  // namespace uavnet
