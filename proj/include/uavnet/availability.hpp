#pragma once

#include <utility>
#include <vector>

#include "uavnet/queueing.hpp"

namespace uavnet {

struct AvailabilityReport {
    // (pmf index n, conditional availability at that index) pairs, in the
    // population reading of the chosen mixture.
    std::vector<std::pair<int, double>> conditional;
    double p_a = 0.0;
    // Conditional availability with all waiting mass forced to state 0.
    std::vector<std::pair<int, double>> max_achievable;
    int truncation_n_max = 0;
    double tail_mass = 0.0;
    CellMixture mixture = kDefaultCellMixture;
};

// Fraction of time the conditioned-on UAV spends hovering in service, for
// the queue solution of its cell.
double conditional_availability(const QueueSolution& queue, const NetworkConfig& net,
                                const EnergyConfig& energy, const EnergyProfile& profile);

// Ceiling with zero waiting time.
double max_achievable_availability(const NetworkConfig& net, const EnergyConfig& energy,
                                   const EnergyProfile& profile);

AvailabilityReport availability(const NetworkConfig& net, const EnergyConfig& energy,
                                const EnergyProfile& profile, const CellCountPmf& pmf,
                                CellMixture mixture = kDefaultCellMixture);

}  // namespace uavnet
