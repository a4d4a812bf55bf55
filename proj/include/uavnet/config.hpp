#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace uavnet {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Spatial layout: station/UAV densities, cluster geometry, cell-area fit.
struct NetworkConfig {
    double lambda_c = 0.0;   // charging-station density [1/m^2]
    double ratio = 0.0;      // lambda_u / lambda_c
    double lambda_u = 0.0;   // UAV density [1/m^2], always ratio * lambda_c
    int capacity_c = 1;      // simultaneous charging slots per station
    double pv_fit_a = 0.0;   // gamma fit, shape
    double pv_fit_b = 0.0;   // gamma fit, rate
    double r_c = 0.0;        // hotspot disk radius [m]
    double h = 0.0;          // UAV altitude [m]
};

// Rotary-wing propulsion model; only needed when deriving the traveling
// power instead of taking it from the config.
struct RotorParams {
    double p_0 = 0.0;               // blade profile power [W]
    double p_i = 0.0;               // induced power [W]
    double u_tip = 0.0;             // rotor tip speed [m/s]
    double v_0 = 0.0;               // mean induced velocity in hover [m/s]
    double d_0 = 0.0;               // fuselage drag ratio
    double rho_air = 0.0;           // air density [kg/m^3]
    double rotor_solidity_s = 0.0;  // rotor solidity
    double rotor_area_A = 0.0;      // rotor disc area [m^2]
};

struct EnergyConfig {
    double b_max = 0.0;   // battery energy [J]
    double p_m = 0.0;     // traveling power [W]
    double p_s = 0.0;     // service/hover power [W]
    double e_l = 0.0;     // energy per landing-or-takeoff event [J]
    double v = 0.0;       // travel velocity [m/s]
    double a_ave = 0.0;   // landing/takeoff acceleration [m/s^2]
    double t_ch = 0.0;    // charging slot duration [s]
    std::optional<RotorParams> rotor;
};

struct ChannelConfig {
    double env_A = 0.0;    // LoS environment constant A
    double env_B = 0.0;    // LoS environment constant B
    double eta_l = 1.0;    // LoS mean additional loss, linear
    double eta_n = 1.0;    // NLoS mean additional loss, linear
    double alpha_l = 0.0;  // LoS path-loss exponent
    double alpha_n = 0.0;  // NLoS path-loss exponent
    double alpha_t = 0.0;  // terrestrial (station) path-loss exponent
    int m_l = 1;           // LoS Nakagami shape
    int m_n = 1;           // NLoS Nakagami shape
    double rho_u = 0.0;    // transmit power [W]
    double theta = 1.0;    // SINR threshold, linear
    double sigma2 = 0.0;   // noise power [W]
};

struct Config {
    NetworkConfig net;
    EnergyConfig energy;
    ChannelConfig channel;
};

// Throws ConfigError naming the offending field if any invariant fails.
void validate(const Config& cfg);

// Default parameter set used throughout the experiments (SI units; the
// density ratio defaults to 10 and the station capacity to 3).
Config default_config();

// Line-oriented `key = value` file; '#' starts a comment. Keys are the SI
// field names; the suffixed variants *_db, *_wh and *_min convert from dB,
// watt-hours and minutes on load. Unknown or duplicate keys are errors.
Config load_config(const std::string& path);

// Writes SI keys at full precision so that load(save(cfg)) round-trips
// bit-identically.
void save_config(const Config& cfg, const std::string& path);

}  // namespace uavnet
