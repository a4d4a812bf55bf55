#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavnet/config.hpp"
#include "uavnet/energy.hpp"
#include "uavnet/laplace.hpp"

namespace uavnet {

struct SimScenario {
    double window_radius = 0.0;  // 0 selects max(5/sqrt(pi*lambda_c), 3500) m
    int warmup_slots = 120;
    int measure_slots = 480;
    int replications = 1000;
    std::uint64_t seed = 1;
    bool collect_coverage = true;

    // How continuous away-times map onto the slotted queue clock.
    // StochasticRound preserves the mean away time and keeps return phases
    // spread out; Ceil books every partial slot as a full one, which locks
    // identical UAVs into fixed rotation patterns.
    enum class Quantization { StochasticRound, Ceil };
    Quantization quantization = Quantization::StochasticRound;
};

struct SimEstimate {
    std::string metric;
    double estimate = 0.0;
    int replications = 0;
    double half_width_95 = 0.0;
    std::uint64_t seed = 0;
};

struct SimReport {
    std::vector<SimEstimate> estimates;
    const SimEstimate& get(const std::string& metric) const;
    bool has(const std::string& metric) const;
};

// Full-system oracle: PPP fields, Voronoi assignment, slotted charging
// queues, energy budgets, fading and SINR. Emits (among others):
//   availability              mean per-cycle service fraction of the typical UAV
//   availability_time_fraction   time-share variant of the same
//   coverage                  SINR >= theta at a snapshot user
//   coverage_given_available / coverage_given_unavailable
//   active_station_fraction   share of interior stations holding >= 1 UAV
//   typical_station_occupied_others    >= 1 competitor at the typical station
//   p_r_census                typical UAV at its station given unavailable
//   mean_waiting_slots        typical UAV queue wait per visit
//   share_up_los ... share_none        association census given unavailable
SimReport simulate_network(const SimScenario& scenario, const Config& cfg);

// Slot-by-slot simulation of exactly the chain solve_queue solves.
// Returns the normalized occupancy histogram over 0..n_uavs-1 others.
std::vector<double> simulate_queue_chain(int n_uavs, int capacity, const EnergyConfig& energy,
                                         const EnergyProfile& profile, long slots,
                                         std::uint64_t seed);

// Empirical mean of exp(-s I) over PPP realizations honoring the serving
// case's exclusion geometry.
SimEstimate estimate_laplace(double s, const ServingCase& sc, double lambda_u_avail,
                             double lambda_c_active, const ChannelConfig& ch, double h,
                             int realizations, std::uint64_t seed, double window_radius = 6000.0);

// Association census against the analytical candidate set: nearest LoS and
// NLoS available UAV, the typical station (active with probability p_crs_a)
// and the nearest other active station. Shares returned in the order
// {up_los, up_nlos, cs, cc, none}.
std::vector<double> association_census(const Config& cfg, double lambda_u_avail,
                                       double lambda_c_active, double p_crs_a, int realizations,
                                       std::uint64_t seed, double window_radius = 6000.0);

}  // namespace uavnet
