#pragma once

#include <cstdint>
#include <optional>

#include "uavnet/availability.hpp"
#include "uavnet/laplace.hpp"

namespace uavnet {

enum class CoverageMethod { Alzer, ExactDerivative };

struct CoverageOptions {
    CoverageMethod method = CoverageMethod::Alzer;
    CellMixture mixture = kDefaultCellMixture;
    StationExclusionForm exclusion_form = StationExclusionForm::PowerConsistent;
    int outer_samples = 4096;       // low-discrepancy points for the distance expectations
    double serving_ccdf_cut = 1e-9; // truncate serving-distance integrals past this tail

    // Test hooks: pin upstream probabilities instead of deriving them.
    std::optional<double> override_p_a;
    std::optional<double> override_p_c_a;
    std::optional<double> override_p_crs_a;
};

struct CoverageReport {
    double p_cov_total = 0.0;
    // Conditional components: uo_* given the hotspot UAV serves, the rest
    // given it is away. The total recombines them with p_a.
    double uo_los = 0.0, uo_nlos = 0.0;
    double up_los = 0.0, up_nlos = 0.0, cs = 0.0, cc = 0.0;
    double p_a = 0.0;
    CoverageMethod method = CoverageMethod::Alzer;

    // Integration diagnostics.
    double p_c_a = 0.0, p_crs_a = 0.0;
    double lambda_u_avail = 0.0, lambda_c_active = 0.0;
    int outer_samples = 0;
    double r_hi_los = 0.0, r_hi_nlos = 0.0;
};

CoverageReport coverage(const Config& cfg, const CoverageOptions& opt = {});

// Unconditional association shares when the hotspot UAV is away; the same
// integrals as the coverage components with the SINR factor dropped.
struct AssociationShares {
    double up_los = 0.0, up_nlos = 0.0, cs = 0.0, cc = 0.0;
};

AssociationShares analytic_association_shares(const Config& cfg, double lambda_u_avail,
                                              double lambda_c_active, double p_crs_a,
                                              const CoverageOptions& opt = {});

double gain_threshold_los(double r, const ChannelConfig& ch);
double gain_threshold_nlos(double r, const ChannelConfig& ch);

// (m!)^(-1/m) branch of the gamma-CDF bound coefficient for m > 1, 1 otherwise.
double alzer_beta2(int m);

}  // namespace uavnet
