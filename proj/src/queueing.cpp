#include "uavnet/queueing.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uavnet/quad.hpp"

namespace uavnet {

double arrival_probability(int i, const EnergyConfig& energy, const EnergyProfile& profile) {
    if (i < 0) throw std::invalid_argument("arrival_probability: i must be >= 0");
    const double at_station = energy.t_ch + i * energy.t_ch;
    const double away =
        2.0 * profile.t_land + 2.0 * profile.t_tra_expected + profile.t_se_expected;
    return at_station / (at_station + away);
}

namespace {

// Binomial pmf over k = 0..m via the multiplicative recurrence.
void binomial_pmf(int m, double p, std::vector<double>& out) {
    out.assign(static_cast<std::size_t>(m) + 1, 0.0);
    if (m == 0) {
        out[0] = 1.0;
        return;
    }
    if (p <= 0.0) {
        out[0] = 1.0;
        return;
    }
    if (p >= 1.0) {
        out[static_cast<std::size_t>(m)] = 1.0;
        return;
    }
    const double q = 1.0 - p;
    double term = std::pow(q, m);
    if (term > 0.0) {
        out[0] = term;
        for (int k = 0; k < m; ++k) {
            term *= static_cast<double>(m - k) / (k + 1) * (p / q);
            out[static_cast<std::size_t>(k) + 1] = term;
        }
    } else {
        // Underflowed start; build in log space.
        const double lp = std::log(p), lq = std::log(q);
        for (int k = 0; k <= m; ++k) {
            const double lv = std::lgamma(m + 1.0) - std::lgamma(k + 1.0) -
                              std::lgamma(m - k + 1.0) + k * lp + (m - k) * lq;
            out[static_cast<std::size_t>(k)] = std::exp(lv);
        }
    }
}

}  // namespace

QueueSolution solve_queue(int n_uavs, int capacity, const EnergyConfig& energy,
                          const EnergyProfile& profile) {
    if (n_uavs < 1) throw std::invalid_argument("solve_queue: n_uavs must be >= 1");
    if (capacity < 1) throw std::invalid_argument("solve_queue: capacity must be >= 1");

    QueueSolution sol;
    sol.n_uavs = n_uavs;
    sol.capacity = capacity;
    const int i_max = n_uavs / capacity;
    sol.arrival_probs.resize(static_cast<std::size_t>(i_max) + 1);
    for (int i = 0; i <= i_max; ++i) {
        sol.arrival_probs[static_cast<std::size_t>(i)] = arrival_probability(i, energy, profile);
    }

    const int states = n_uavs;  // occupancy of the other n_uavs-1 UAVs: 0..n_uavs-1
    if (states == 1) {
        sol.p_occupancy = {1.0};
        sol.p_state.assign(static_cast<std::size_t>(i_max) + 1, 0.0);
        sol.p_state[0] = 1.0;
        sol.p_empty = 1.0;
        return sol;
    }

    // Transition kernel: from occupancy n1 the queue serves up to `capacity`
    // UAVs per slot, counting arrivals that land on a free charger within the
    // same slot, so n2 = max(0, n1 - c + k) with k binomial arrivals among
    // the absent ones.
    Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(states, states);
    std::vector<double> binom;
    for (int n1 = 0; n1 < states; ++n1) {
        const int i1 = n1 / capacity;
        const int absent = (n_uavs - 1) - n1;
        const double p = arrival_probability(i1, energy, profile);
        binomial_pmf(absent, p, binom);
        for (int k = 0; k <= absent; ++k) {
            const int n2 = std::max(0, n1 - capacity + k);
            kernel(n1, n2) += binom[static_cast<std::size_t>(k)];
        }
    }

    Eigen::MatrixXd a = kernel.transpose() - Eigen::MatrixXd::Identity(states, states);
    a.row(states - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(states);
    rhs(states - 1) = 1.0;
    Eigen::VectorXd pi = a.partialPivLu().solve(rhs);

    double residual = 0.0;
    Eigen::VectorXd back = kernel.transpose() * pi;
    for (int n = 0; n < states; ++n) residual = std::max(residual, std::abs(back(n) - pi(n)));
    if (!std::isfinite(residual) || residual > 1e-9) {
        throw std::runtime_error("solve_queue: stationary solve residual " + std::to_string(residual));
    }

    sol.p_occupancy.resize(static_cast<std::size_t>(states));
    double total = 0.0;
    for (int n = 0; n < states; ++n) {
        sol.p_occupancy[static_cast<std::size_t>(n)] = std::max(0.0, pi(n));
        total += sol.p_occupancy[static_cast<std::size_t>(n)];
    }
    for (auto& v : sol.p_occupancy) v /= total;

    sol.p_state.assign(static_cast<std::size_t>(i_max) + 1, 0.0);
    for (int n = 0; n < states; ++n) {
        sol.p_state[static_cast<std::size_t>(n / capacity)] +=
            sol.p_occupancy[static_cast<std::size_t>(n)];
    }
    sol.p_empty = sol.p_occupancy[0];
    return sol;
}

namespace {

// E over the first-contact distance of the fraction of unavailable time the
// conditioned-on UAV spends at the station in waiting state i.
double at_station_fraction_given_state(int i, double lambda_c, const EnergyConfig& energy,
                                       const EnergyProfile& profile) {
    const double t_w = i * energy.t_ch;
    auto integrand = [&](double x) {
        const double num = t_w + energy.t_ch;
        const double den = 2.0 * profile.t_land + 2.0 * x / energy.v + t_w + energy.t_ch;
        return first_contact_pdf(lambda_c, x) * num / den;
    };
    QuadOptions opt;
    opt.abs_tol = 1e-10;
    opt.rel_tol = 1e-8;
    return integrate_to_inf(integrand, 0.0, opt);
}

}  // namespace

ActivityProbabilities activity_probabilities(const NetworkConfig& net, const EnergyConfig& energy,
                                             const EnergyProfile& profile, const CellCountPmf& pmf,
                                             CellMixture mixture) {
    const int n_max = pmf.truncation_n_max;

    // Population of competing UAVs at the station for pmf index n.
    auto population_of = [&](int n) {
        return mixture == CellMixture::OthersFromPmf ? n : n - 1;
    };

    double p_s00 = 0.0;
    std::vector<double> state_mix;  // mixed waiting-state distribution
    double state_norm = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double w = pmf.probabilities[static_cast<std::size_t>(n)];
        const int pop = population_of(n);
        if (pop <= 0) {
            p_s00 += w;  // no competitors: the station never holds another UAV
            if (mixture == CellMixture::OthersFromPmf) {
                if (state_mix.empty()) state_mix.assign(1, 0.0);
                state_mix[0] += w;
                state_norm += w;
            }
            continue;
        }
        const QueueSolution sol = solve_queue(pop + 1, net.capacity_c, energy, profile);
        p_s00 += w * sol.p_empty;
        if (state_mix.size() < sol.p_state.size()) state_mix.resize(sol.p_state.size(), 0.0);
        for (std::size_t i = 0; i < sol.p_state.size(); ++i) state_mix[i] += w * sol.p_state[i];
        state_norm += w;
    }

    ActivityProbabilities act;
    act.p_c_a = 1.0 - p_s00;

    double p_r = 0.0;
    for (std::size_t i = 0; i < state_mix.size(); ++i) {
        if (state_mix[i] <= 0.0) continue;
        p_r += state_mix[i] / state_norm *
               at_station_fraction_given_state(static_cast<int>(i), net.lambda_c, energy, profile);
    }
    act.p_r = p_r;
    act.p_crs_a = 1.0 - p_s00 * (1.0 - p_r);
    return act;
}

}  // namespace uavnet
