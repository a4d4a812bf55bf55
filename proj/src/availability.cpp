#include "uavnet/availability.hpp"

#include <cmath>
#include <stdexcept>

#include "uavnet/quad.hpp"

namespace uavnet {

namespace {

// The per-cycle availability ratio at station distance x and waiting state i
// is (a1 - a2 x)/(a3(i) + a4 x); its expectation over the first-contact law
// reduces to a one-dimensional integral over the ratio value y.
struct RatioCoeffs {
    double a1, a2, a4, land_term;
    const NetworkConfig* net;
    const EnergyConfig* energy;

    double a3(int i) const {
        return energy->v * (energy->b_max - 2.0 * energy->e_l +
                            energy->p_s * energy->t_ch * (1.0 + i) + land_term);
    }
};

RatioCoeffs make_coeffs(const NetworkConfig& net, const EnergyConfig& energy) {
    RatioCoeffs c;
    c.a1 = energy.v * (energy.b_max - 2.0 * energy.e_l);
    c.a2 = 2.0 * energy.p_m;
    c.a4 = 2.0 * (energy.p_s - energy.p_m);
    c.land_term = 4.0 * energy.p_s * std::sqrt(2.0 * net.h / energy.a_ave);
    c.net = &net;
    c.energy = &energy;
    return c;
}

double state_term(const RatioCoeffs& c, int i) {
    if (!(c.a4 > 0.0)) {
        throw ConfigError("unsupported configuration: p_s must exceed p_m for the availability integral");
    }
    const double a3 = c.a3(i);
    const double y_hi = c.a1 / a3;
    // a5 as printed is (2 p_m a1 - a2 a1) / (...) which vanishes identically.
    const double y_lo = std::max(0.0, (2.0 * c.energy->p_m * c.a1 - c.a2 * c.a1) /
                                          (2.0 * c.energy->p_m * a3 + c.a4 * c.a1));
    const double lambda_c = c.net->lambda_c;
    auto integrand = [&](double y) {
        const double radius = (c.a1 - a3 * y) / (c.a2 + c.a4 * y);
        return -std::expm1(-lambda_c * M_PI * radius * radius);
    };
    QuadOptions opt;
    opt.abs_tol = 1e-8;
    opt.rel_tol = 1e-8;
    return integrate(integrand, y_lo, y_hi, opt);
}

}  // namespace

double conditional_availability(const QueueSolution& queue, const NetworkConfig& net,
                                const EnergyConfig& energy, const EnergyProfile& profile) {
    (void)profile;
    const RatioCoeffs c = make_coeffs(net, energy);
    double acc = 0.0;
    for (int i = 0; i <= queue.i_max(); ++i) {
        const double w = queue.p_state[static_cast<std::size_t>(i)];
        if (w <= 0.0) continue;
        acc += w * state_term(c, i);
    }
    return acc;
}

double max_achievable_availability(const NetworkConfig& net, const EnergyConfig& energy,
                                   const EnergyProfile& profile) {
    (void)profile;
    const RatioCoeffs c = make_coeffs(net, energy);
    return state_term(c, 0);
}

AvailabilityReport availability(const NetworkConfig& net, const EnergyConfig& energy,
                                const EnergyProfile& profile, const CellCountPmf& pmf,
                                CellMixture mixture) {
    AvailabilityReport rep;
    rep.mixture = mixture;
    rep.truncation_n_max = pmf.truncation_n_max;
    rep.tail_mass = pmf.tail_mass;
    const double ceiling = max_achievable_availability(net, energy, profile);

    double acc = 0.0;
    double norm = 0.0;
    for (int n = 0; n <= pmf.truncation_n_max; ++n) {
        const double w = pmf.probabilities[static_cast<std::size_t>(n)];
        double cond = 0.0;
        switch (mixture) {
            case CellMixture::OthersFromPmf: {
                // Cell holds n competitors plus the conditioned-on UAV.
                const QueueSolution q = solve_queue(n + 1, net.capacity_c, energy, profile);
                cond = conditional_availability(q, net, energy, profile);
                acc += w * cond;
                norm += w;
                break;
            }
            case CellMixture::TotalFromPmfRenormalized: {
                if (n == 0) continue;  // no cell total below one UAV
                const QueueSolution q = solve_queue(n, net.capacity_c, energy, profile);
                cond = conditional_availability(q, net, energy, profile);
                acc += w * cond;
                norm += w;
                break;
            }
            case CellMixture::TotalFromPmfN0Available: {
                if (n == 0) {
                    cond = 1.0;
                    acc += w;
                    norm += w;
                    break;
                }
                const QueueSolution q = solve_queue(n, net.capacity_c, energy, profile);
                cond = conditional_availability(q, net, energy, profile);
                acc += w * cond;
                norm += w;
                break;
            }
        }
        rep.conditional.emplace_back(n, cond);
        rep.max_achievable.emplace_back(n, ceiling);
    }
    rep.p_a = mixture == CellMixture::TotalFromPmfRenormalized ? acc / norm : acc;
    return rep;
}

}  // namespace uavnet
