#pragma once

#include "uavnet/config.hpp"

namespace uavnet {

// Time/energy budget quantities shared by the queueing and availability math.
struct EnergyProfile {
    double t_land = 0.0;          // one landing-or-takeoff event [s]
    double v_max = 0.0;           // peak vertical speed while landing [m/s]
    double e_l = 0.0;             // energy per landing-or-takeoff event [J]
    double expected_r_s = 0.0;    // mean distance to the nearest station [m]
    double t_tra_expected = 0.0;  // mean one-way travel time [s]
    double t_se_expected = 0.0;   // mean hover-service time per cycle [s]
};

// Propulsion power of a rotary-wing UAV at forward speed v > 0.
double blade_power(double v, const RotorParams& rotor);

// Speed minimizing energy per meter traveled, i.e. blade_power(v)/v, found
// by golden-section search to 1e-4 m/s on (0, v_hi].
double optimal_velocity(const RotorParams& rotor, double v_lo = 0.01, double v_hi = 80.0);

// Hover-service time budget left after a round trip of one-way length r_s.
// May be negative when the trip alone exhausts the battery.
double service_time(double r_s, const EnergyConfig& energy);

// Expected cycle quantities under the first-contact distance law.
// Throws ConfigError if the expected service time is not positive.
EnergyProfile expected_profile(const NetworkConfig& net, const EnergyConfig& energy);

// Numerical evaluation of the landing/takeoff energy integral from the blade
// model, for cross-checking the configured e_l. Two readings of the
// integrand are supported ("t dt" as printed and plain "dt"); both diverge
// at the zero-speed endpoints when p_i > 0, so the speed is floored at
// v_floor. Diagnostic only; never overrides the configured value.
double landing_energy_estimate(const RotorParams& rotor, double h, double a_ave,
                               bool integrand_times_t, double v_floor = 0.1);

}  // namespace uavnet
