#pragma once

#include "uavnet/channel.hpp"
#include "uavnet/config.hpp"

namespace uavnet {

enum class ServingKind { HotspotUav, LosUav, NlosUav, Station };

// Identifies which point the user is served by and the realized conditioning
// distances that set the interference exclusion zones.
struct ServingCase {
    ServingKind kind = ServingKind::HotspotUav;
    bool station_active = true;  // typical station state; only station-served cases use it
    double r = 0.0;              // serving distance [m]
    double r_su = 0.0;           // user to typical station [m]
    double r_cu = 0.0;           // user to nearest other active station [m]
};

// Laplace transform of the aggregate interference under the PGFL of the
// thinned UAV and active-station fields, with per-case exclusion radii.
class InterferenceLaplace {
  public:
    InterferenceLaplace(const ChannelConfig& ch, double h, double lambda_u_avail,
                        double lambda_c_active,
                        StationExclusionForm form = StationExclusionForm::PowerConsistent);

    // log L_I(s | case); always <= 0.
    double log_laplace(double s, const ServingCase& sc) const;
    double laplace(double s, const ServingCase& sc) const;
    double laplace_noise(double s, const ServingCase& sc, double sigma2) const;

    // k-th derivative of log L_{sigma^2+I}; k in 0..3.
    double log_derivative(int k, double s, const ServingCase& sc, double sigma2) const;
    // k-th derivative of L_{sigma^2+I} itself, via the cumulant recurrence.
    double derivative(int k, double s, const ServingCase& sc, double sigma2) const;

    // Exclusion lower limits (ground-projected for the UAV fields).
    struct Exclusions {
        double nlos_ground = 0.0;
        double los_ground = 0.0;
        double station_ground = 0.0;
    };
    Exclusions exclusions(const ServingCase& sc) const;

    // Split exponents, for callers that mix the station exclusion radius
    // over conditioning samples while reusing the UAV part.
    double log_uav_fields(double s, const ServingCase& sc) const;
    double log_station_field(double s, double station_exclusion_ground) const;

    double lambda_u_avail() const { return lambda_u_; }
    double lambda_c_active() const { return lambda_c_; }

  private:
    double uav_field_log(double s, double lower, bool los, int deriv_order) const;
    double station_field_log(double s, double lower, int deriv_order) const;

    ChannelConfig ch_;
    double h_;
    double lambda_u_;
    double lambda_c_;
    StationExclusionForm form_;
};

// Free-function forms of the module operations.
double laplace_interference(double s, const ServingCase& sc, double lambda_u_avail,
                            double lambda_c_active, const ChannelConfig& ch, double h);
double laplace_noise_plus_interference(double s, const ServingCase& sc, double lambda_u_avail,
                                       double lambda_c_active, const ChannelConfig& ch, double h,
                                       double sigma2);
double laplace_derivative(int k, double s, const ServingCase& sc, double lambda_u_avail,
                          double lambda_c_active, const ChannelConfig& ch, double h,
                          double sigma2);

}  // namespace uavnet
