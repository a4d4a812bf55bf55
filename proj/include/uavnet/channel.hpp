#pragma once

#include <vector>

#include "uavnet/config.hpp"
#include "uavnet/quad.hpp"

namespace uavnet {

// Probability of a line-of-sight link to a UAV at 3-D distance r >= h.
double los_probability(double r, const ChannelConfig& ch, double h);

// Same, parameterized by the ground-projected distance z >= 0.
double los_probability_ground(double z, const ChannelConfig& ch, double h);

// Orientation of the station-rival exclusion distance D_{l,n}. The printed
// form carries eta^{+1/alpha_t}; equating mean received powers gives
// eta^{-1/alpha_t}. With eta_l = 1 only the NLoS case differs.
enum class StationExclusionForm { AsPrinted, PowerConsistent };

// Minimum distances a rival of each type must keep for a given server not to
// be out-powered, from pairwise mean-received-power comparisons.
struct ExclusionDistances {
    double d_l = 0.0;      // LoS rival vs NLoS server, 3-D [m]
    double d_n = 0.0;      // NLoS rival vs LoS server, 3-D [m]
    double big_d_l = 0.0;  // station rival vs LoS server, ground [m]
    double big_d_n = 0.0;  // station rival vs NLoS server, ground [m]
    double hat_d_l = 0.0;  // LoS rival vs station server, 3-D [m]
    double hat_d_n = 0.0;  // NLoS rival vs station server, 3-D [m]
};

ExclusionDistances exclusion_distances(double r, const ChannelConfig& ch, double h,
                                       StationExclusionForm form = StationExclusionForm::PowerConsistent);

// Cumulative LoS-weighted area integrals V_l(z) = int_0^z t P_l(t') dt and
// the NLoS complement z^2/2 - V_l(z). These appear in every void
// probability and nearest-distance law, so they are tabulated once per
// channel; evaluation is interpolated to ~1e-9 relative accuracy.
class LosVoidIntegrals {
  public:
    LosVoidIntegrals(const ChannelConfig& ch, double h, double z_max = 3e7);
    double v_los(double z) const;
    double v_nlos(double z) const { return 0.5 * z * z - v_los(z); }
    double z_max() const { return z_max_; }

    // Direct adaptive quadrature of the same integral, for cross-checks.
    static double v_los_direct(double z, const ChannelConfig& ch, double h);

  private:
    double z_max_;
    double p_los_far_;
    Pchip table_;
};

// Per-candidate association probabilities at serving distance r, given the
// conditioning distances to the typical and nearest-other-active stations.
// The *_n fields are the candidate set when the typical station is inactive.
struct AssociationProbabilities {
    double a_los = 0.0;
    double a_nlos = 0.0;
    double a_cs = 0.0;
    double a_cc = 0.0;
    double a_los_n = 0.0;
    double a_nlos_n = 0.0;
    double a_cc_n = 0.0;
};

AssociationProbabilities association_probabilities(
    double r, double r_s, double r_c_dist, double lambda_u_avail,
    const ChannelConfig& ch, const NetworkConfig& net, const LosVoidIntegrals& voids,
    StationExclusionForm form = StationExclusionForm::PowerConsistent);

}  // namespace uavnet
