#include <doctest.h>

#include <cmath>
#include <numeric>

#include "uavnet/queueing.hpp"
#include "uavnet/sim.hpp"

using namespace uavnet;

namespace {

struct Fixture {
    Config cfg = default_config();
    EnergyProfile profile = expected_profile(cfg.net, cfg.energy);
};

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    double tv = 0.0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        tv += std::abs(x - y);
    }
    return 0.5 * tv;
}

}  // namespace

TEST_CASE("arrival probability values and limits") {
    Fixture f;
    // 300 / (300 + 2*12.17 + 2*38.3 + 1706.6), all from the default budget.
    const double away = 2.0 * f.profile.t_land + 2.0 * f.profile.t_tra_expected +
                        f.profile.t_se_expected;
    CHECK(arrival_probability(0, f.cfg.energy, f.profile) ==
          doctest::Approx(300.0 / (300.0 + away)).epsilon(1e-12));
    CHECK(arrival_probability(0, f.cfg.energy, f.profile) == doctest::Approx(0.1424).epsilon(1e-3));

    // Long waits dominate the cycle.
    CHECK(arrival_probability(100000, f.cfg.energy, f.profile) > 0.999);

    // Vanishing charge slot at i=0 drives the probability to zero.
    Config quick = f.cfg;
    quick.energy.t_ch = 1e-9;
    CHECK(arrival_probability(0, quick.energy, f.profile) < 1e-11);
}

TEST_CASE("queue solution degenerate cases") {
    Fixture f;
    for (int c : {1, 2, 5}) {
        const QueueSolution q = solve_queue(1, c, f.cfg.energy, f.profile);
        REQUIRE(q.p_occupancy.size() == 1);
        CHECK(q.p_occupancy[0] == doctest::Approx(1.0));
        CHECK(q.p_state[0] == doctest::Approx(1.0));
        CHECK(q.p_empty == doctest::Approx(1.0));
    }
    // Population within capacity: every arrival is served the same slot.
    for (int n : {2, 3, 4}) {
        const QueueSolution q = solve_queue(n, 4, f.cfg.energy, f.profile);
        CHECK(q.p_state[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("stationarity, normalization and state aggregation") {
    Fixture f;
    for (int n : {3, 6, 9, 14}) {
        for (int c : {1, 2, 3}) {
            const QueueSolution q = solve_queue(n, c, f.cfg.energy, f.profile);
            const double sum =
                std::accumulate(q.p_occupancy.begin(), q.p_occupancy.end(), 0.0);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
            const double state_sum = std::accumulate(q.p_state.begin(), q.p_state.end(), 0.0);
            CHECK(state_sum == doctest::Approx(1.0).epsilon(1e-10));
            for (double p : q.p_occupancy) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
            }
            // p_state aggregates occupancies in capacity-sized blocks.
            for (int i = 0; i <= q.i_max(); ++i) {
                double block = 0.0;
                for (int occ = i * c; occ < (i + 1) * c && occ < n; ++occ) {
                    block += q.p_occupancy[occ];
                }
                CHECK(q.p_state[i] == doctest::Approx(block).epsilon(1e-12));
            }
            CHECK(q.p_empty == doctest::Approx(q.p_occupancy[0]));
        }
    }
}

TEST_CASE("kernel fixed point holds to solver tolerance") {
    Fixture f;
    const int n = 8, c = 2;
    const QueueSolution q = solve_queue(n, c, f.cfg.energy, f.profile);
    // Rebuild the kernel action on the stationary vector.
    std::vector<double> next(q.p_occupancy.size(), 0.0);
    for (int n1 = 0; n1 < n; ++n1) {
        const int absent = (n - 1) - n1;
        const double p = arrival_probability(n1 / c, f.cfg.energy, f.profile);
        // Binomial over arrivals.
        for (int k = 0; k <= absent; ++k) {
            double binom = 1.0;
            for (int j = 1; j <= k; ++j) binom *= static_cast<double>(absent - k + j) / j;
            const double prob = binom * std::pow(p, k) * std::pow(1.0 - p, absent - k);
            next[static_cast<std::size_t>(std::max(0, n1 - c + k))] +=
                prob * q.p_occupancy[static_cast<std::size_t>(n1)];
        }
    }
    for (std::size_t i = 0; i < next.size(); ++i) {
        CHECK(std::abs(next[i] - q.p_occupancy[i]) < 1e-10);
    }
}

TEST_CASE("chain simulation agrees with the linear solve") {
    Fixture f;
    const QueueSolution q = solve_queue(6, 2, f.cfg.energy, f.profile);
    const std::vector<double> hist =
        simulate_queue_chain(6, 2, f.cfg.energy, f.profile, 1000000, 99);
    CHECK(total_variation(q.p_occupancy, hist) < 0.01);
}

TEST_CASE("more capacity never increases the waiting mass") {
    Fixture f;
    for (int n : {4, 8, 12}) {
        double prev_wait = 1e9;
        for (int c = 1; c <= 5; ++c) {
            const QueueSolution q = solve_queue(n, c, f.cfg.energy, f.profile);
            double waiting = 0.0;
            for (int i = 1; i <= q.i_max(); ++i) waiting += q.p_state[static_cast<std::size_t>(i)];
            CHECK(waiting <= prev_wait + 1e-12);
            prev_wait = waiting;
        }
    }
}

TEST_CASE("activity probabilities: limits and ranges") {
    Fixture f;

    // Vanishing density ratio: almost-surely empty cells, inactive stations.
    Config sparse = f.cfg;
    sparse.net.ratio = 1e-9;
    sparse.net.lambda_u = sparse.net.ratio * sparse.net.lambda_c;
    const CellCountPmf pmf0 = cell_count_pmf(sparse.net);
    const ActivityProbabilities sparse_act =
        activity_probabilities(sparse.net, sparse.energy, f.profile, pmf0,
                               CellMixture::TotalFromPmfRenormalized);
    CHECK(sparse_act.p_c_a < 1e-6);

    // Vanishing charge slot: the conditioned UAV spends its unavailable
    // time traveling, never at the station.
    Config quick = f.cfg;
    quick.energy.t_ch = 1e-6;
    const EnergyProfile qp = expected_profile(quick.net, quick.energy);
    const CellCountPmf pmfq = cell_count_pmf(quick.net);
    const ActivityProbabilities quick_act =
        activity_probabilities(quick.net, quick.energy, qp, pmfq);
    CHECK(quick_act.p_r < 1e-6);

    // Default point: everything is a probability and the typical-station
    // activity accounts for the conditioned UAV's own presence.
    const CellCountPmf pmf = cell_count_pmf(f.cfg.net);
    for (CellMixture mix : {CellMixture::OthersFromPmf, CellMixture::TotalFromPmfRenormalized}) {
        const ActivityProbabilities act =
            activity_probabilities(f.cfg.net, f.cfg.energy, f.profile, pmf, mix);
        CHECK(act.p_c_a >= 0.0);
        CHECK(act.p_c_a <= 1.0);
        CHECK(act.p_r >= 0.0);
        CHECK(act.p_r <= 1.0);
        CHECK(act.p_crs_a >= 0.0);
        CHECK(act.p_crs_a <= 1.0);
        CHECK(act.p_crs_a == doctest::Approx(1.0 - (1.0 - act.p_c_a) * (1.0 - act.p_r)));
    }
}
