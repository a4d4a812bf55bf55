#pragma once

#include <vector>

#include "uavnet/config.hpp"
#include "uavnet/energy.hpp"
#include "uavnet/geometry.hpp"

namespace uavnet {

// Stationary solution of the slotted charging queue conditioned on a cell
// with n_uavs UAVs in total; the occupancy states count the other
// n_uavs - 1 UAVs that compete with the conditioned-on one.
struct QueueSolution {
    int n_uavs = 0;
    int capacity = 0;
    std::vector<double> p_occupancy;   // n = 0 .. n_uavs-1 others present
    std::vector<double> p_state;       // waiting states i = 0 .. i_max
    std::vector<double> arrival_probs; // per-slot arrival probability by state
    double p_empty = 0.0;              // no other UAV at the station

    int i_max() const { return static_cast<int>(p_state.size()) - 1; }
};

// Long-run fraction of a cycle a competing UAV spends at the station when
// the queue sits in waiting state i.
double arrival_probability(int i, const EnergyConfig& energy, const EnergyProfile& profile);

QueueSolution solve_queue(int n_uavs, int capacity, const EnergyConfig& energy,
                          const EnergyProfile& profile);

struct ActivityProbabilities {
    double p_c_a = 0.0;    // a station holds at least one UAV
    double p_crs_a = 0.0;  // the typical station is active given the typical UAV is away
    double p_r = 0.0;      // the typical UAV is at its station given it is unavailable
};

// How the per-cell conditional quantities are mixed over the cell-count
// distribution. OthersFromPmf reads the distribution as the law of the
// competing UAVs around the conditioned-on one (cell total = n + 1);
// the TotalFromPmf variants read it as the law of the cell total including
// it, and differ in how the empty-cell term enters the availability mixture.
enum class CellMixture {
    OthersFromPmf,
    TotalFromPmfRenormalized,
    TotalFromPmfN0Available,
};

constexpr CellMixture kDefaultCellMixture = CellMixture::OthersFromPmf;

ActivityProbabilities activity_probabilities(const NetworkConfig& net, const EnergyConfig& energy,
                                             const EnergyProfile& profile, const CellCountPmf& pmf,
                                             CellMixture mixture = kDefaultCellMixture);

}  // namespace uavnet
