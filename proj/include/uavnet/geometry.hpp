#pragma once

#include <vector>

#include "uavnet/channel.hpp"
#include "uavnet/config.hpp"

namespace uavnet {

// Distribution of the number of UAVs associated with the typical cell,
// truncated once the accumulated mass reaches 1 - tol.
struct CellCountPmf {
    std::vector<double> probabilities;  // index n = 0, 1, ...
    int truncation_n_max = 0;
    double tail_mass = 0.0;

    double mean() const;
};

CellCountPmf cell_count_pmf(const NetworkConfig& net, double tol = 1e-8);

// Nearest-point distance of a PPP of the given density.
double first_contact_pdf(double lambda, double r);
double first_contact_cdf(double lambda, double r);

// 3-D distance from a uniform disk user to the UAV above the disk center.
double hotspot_uav_pdf(double r, const NetworkConfig& net);
double hotspot_uav_cdf(double r, const NetworkConfig& net);

// 3-D distance to the nearest available LoS / NLoS UAV. The inner area
// integral runs by adaptive quadrature.
double nearest_los_pdf(double r, double lambda_u_avail, const ChannelConfig& ch, double h);
double nearest_nlos_pdf(double r, double lambda_u_avail, const ChannelConfig& ch, double h);
double nearest_los_ccdf(double r, double lambda_u_avail, const ChannelConfig& ch, double h);
double nearest_nlos_ccdf(double r, double lambda_u_avail, const ChannelConfig& ch, double h);

// Nearest active station beyond an inner radius r_s.
double nearest_active_station_pdf(double r, double r_s, double lambda_c_active);
double nearest_active_station_cdf(double r, double r_s, double lambda_c_active);

// Distance from a user uniform in a disk of radius r_c to a point at
// distance center_dist from the disk center.
double user_station_distance_pdf(double r, double center_dist, double r_c);
double user_station_distance_cdf(double r, double center_dist, double r_c);

}  // namespace uavnet
