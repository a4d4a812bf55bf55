#include "uavnet/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "uavnet/channel.hpp"
#include "uavnet/rng.hpp"

namespace uavnet {

const SimEstimate& SimReport::get(const std::string& metric) const {
    for (const auto& e : estimates) {
        if (e.metric == metric) return e;
    }
    throw std::out_of_range("SimReport: no metric " + metric);
}

bool SimReport::has(const std::string& metric) const {
    for (const auto& e : estimates) {
        if (e.metric == metric) return true;
    }
    return false;
}

namespace {

struct Welford {
    long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }
    double half_width() const {
        if (n < 2) return 0.0;
        return 1.96 * std::sqrt(m2 / (n - 1) / n);
    }
};

struct RatioCounter {
    long hits = 0;
    long trials = 0;
    void add(bool hit) {
        ++trials;
        hits += hit ? 1 : 0;
    }
    double mean() const { return trials == 0 ? 0.0 : static_cast<double>(hits) / trials; }
    double half_width() const {
        if (trials == 0) return 0.0;
        const double p = mean();
        return 1.96 * std::sqrt(p * (1.0 - p) / trials);
    }
};

struct Uav {
    double x = 0.0, y = 0.0;
    int station = -1;
    double dist = 0.0;        // to its station [m]
    double t_se = 0.0;        // continuous serve time [s]
    double away = 0.0;        // continuous off-station time [s]
    double depart_time = 0.0; // continuous time of the last station departure [s]
    int arrival_slot = -1;    // boundary at which it joined the queue
    bool at_station = false;
};

struct Station {
    double x = 0.0, y = 0.0;
    std::deque<int> queue;
    std::vector<int> charging;
};

int draw_away_slots(double away, double t_ch, SimScenario::Quantization q, Rng& rng) {
    const double slots = away / t_ch;
    if (q == SimScenario::Quantization::Ceil) {
        return std::max(1, static_cast<int>(std::ceil(slots)));
    }
    const double fl = std::floor(slots);
    const int base = static_cast<int>(fl);
    return std::max(1, base + (rng.bernoulli(slots - fl) ? 1 : 0));
}

}  // namespace

SimReport simulate_network(const SimScenario& scenario, const Config& cfg) {
    validate(cfg);
    const double guard = 5.0 / std::sqrt(M_PI * cfg.net.lambda_c);
    const double window =
        scenario.window_radius > 0.0 ? scenario.window_radius : std::max(guard, 3500.0);
    if (window < guard) {
        throw std::invalid_argument("simulate_network: window_radius below the edge-effect guard");
    }
    if (scenario.replications < 1) {
        throw std::invalid_argument("simulate_network: replications must be >= 1");
    }

    const EnergyProfile profile = expected_profile(cfg.net, cfg.energy);
    const double t_ch = cfg.energy.t_ch;
    const double t_land = profile.t_land;
    const int c = cfg.net.capacity_c;
    const int total_slots = scenario.warmup_slots + scenario.measure_slots;
    const int snap_slot = scenario.warmup_slots + scenario.measure_slots / 2;
    const double snap_time = (snap_slot + 0.37) * t_ch;

    Welford availability, availability_tf, waiting_slots;
    Welford active_fraction, typical_occupied_others;
    RatioCounter coverage, coverage_uo, coverage_ubar, p_r_census;
    RatioCounter share_up_los, share_up_nlos, share_cs, share_cc, share_none;

    std::vector<Uav> uavs;
    std::vector<Station> stations;
    std::vector<std::vector<int>> arrivals;

    for (int rep = 0; rep < scenario.replications; ++rep) {
        Rng rng_field(scenario.seed, {static_cast<std::uint64_t>(rep), 1});
        Rng rng_queue(scenario.seed, {static_cast<std::uint64_t>(rep), 2});
        Rng rng_snap(scenario.seed, {static_cast<std::uint64_t>(rep), 3});

        // Station and UAV fields; the typical UAV sits at the origin.
        stations.clear();
        int n_st = 0;
        while (n_st == 0) n_st = rng_field.poisson(cfg.net.lambda_c * M_PI * window * window);
        stations.resize(n_st);
        for (auto& st : stations) rng_field.uniform_in_disk(window, st.x, st.y);

        const int n_other = rng_field.poisson(cfg.net.lambda_u * M_PI * window * window);
        uavs.assign(1 + n_other, Uav{});
        for (int i = 1; i <= n_other; ++i) rng_field.uniform_in_disk(window, uavs[i].x, uavs[i].y);

        for (auto& u : uavs) {
            double best = 1e300;
            for (int s = 0; s < n_st; ++s) {
                const double dx = u.x - stations[s].x;
                const double dy = u.y - stations[s].y;
                const double d2 = dx * dx + dy * dy;
                if (d2 < best) {
                    best = d2;
                    u.station = s;
                }
            }
            u.dist = std::sqrt(best);
            u.t_se = std::max(0.0, service_time(u.dist, cfg.energy));
            u.away = 2.0 * t_land + 2.0 * u.dist / cfg.energy.v + u.t_se;
        }

        // Start each UAV at a uniformly random point of its off-station leg.
        arrivals.assign(static_cast<std::size_t>(total_slots) + 1, {});
        for (int i = 0; i < static_cast<int>(uavs.size()); ++i) {
            auto& u = uavs[i];
            const double remaining = u.away * rng_queue.uniform();
            const int slot = draw_away_slots(remaining, t_ch, scenario.quantization, rng_queue);
            u.depart_time = remaining - u.away;
            if (slot <= total_slots) {
                arrivals[static_cast<std::size_t>(slot)].push_back(i);
            }
        }

        double typical_wait_sum = 0.0;
        double typical_ratio_sum = 0.0;
        long typical_visits = 0;
        long active_count = 0, interior_count_total = 0;
        long typical_occ_count = 0, occ_samples = 0;

        std::vector<char> at_snapshot_station(uavs.size(), 0);
        bool snapshot_taken = false;

        for (int b = 0; b <= total_slots; ++b) {
            // Charged UAVs leave and schedule their next arrival.
            for (auto& st : stations) {
                for (int uid : st.charging) {
                    auto& u = uavs[static_cast<std::size_t>(uid)];
                    u.depart_time = b * t_ch;
                    u.at_station = false;
                    const int back =
                        b + draw_away_slots(u.away, t_ch, scenario.quantization, rng_queue);
                    if (back <= total_slots) {
                        arrivals[static_cast<std::size_t>(back)].push_back(uid);
                    }
                }
                st.charging.clear();
            }
            // This boundary's arrivals join their FIFO queues.
            for (int uid : arrivals[static_cast<std::size_t>(b)]) {
                auto& u = uavs[static_cast<std::size_t>(uid)];
                u.arrival_slot = b;
                u.at_station = true;
                stations[static_cast<std::size_t>(u.station)].queue.push_back(uid);
            }
            // Admissions: the chargers all freed above, take up to c.
            for (auto& st : stations) {
                while (static_cast<int>(st.charging.size()) < c && !st.queue.empty()) {
                    const int uid = st.queue.front();
                    st.queue.pop_front();
                    st.charging.push_back(uid);
                    auto& u = uavs[static_cast<std::size_t>(uid)];
                    if (uid == 0 && b >= scenario.warmup_slots) {
                        const double waited = b - u.arrival_slot;
                        typical_wait_sum += waited;
                        typical_ratio_sum +=
                            u.t_se > 0.0 ? u.t_se / (u.away + t_ch + waited * t_ch) : 0.0;
                        ++typical_visits;
                    }
                }
            }

            if (b >= scenario.warmup_slots && b < total_slots) {
                const int typ_station = uavs[0].station;
                ++occ_samples;
                bool others_present = false;
                const auto& ts = stations[static_cast<std::size_t>(typ_station)];
                for (int uid : ts.charging) others_present |= uid != 0;
                for (int uid : ts.queue) others_present |= uid != 0;
                typical_occ_count += others_present ? 1 : 0;
                for (int s = 0; s < n_st; ++s) {
                    const auto& st = stations[static_cast<std::size_t>(s)];
                    const double rad2 = st.x * st.x + st.y * st.y;
                    if (rad2 > 0.25 * window * window) continue;
                    ++interior_count_total;
                    active_count += (!st.charging.empty() || !st.queue.empty()) ? 1 : 0;
                }
            }
            if (b == snap_slot && scenario.collect_coverage) {
                for (std::size_t i = 0; i < uavs.size(); ++i) {
                    at_snapshot_station[i] = 0;
                }
                for (const auto& st : stations) {
                    for (int uid : st.charging) at_snapshot_station[static_cast<std::size_t>(uid)] = 1;
                    for (int uid : st.queue) at_snapshot_station[static_cast<std::size_t>(uid)] = 1;
                }
                snapshot_taken = true;

                // Who is serving at the snapshot instant.
                auto serving_phase = [&](const Uav& u) {
                    const double tau = snap_time - u.depart_time;
                    const double start = t_land + u.dist / cfg.energy.v;
                    return tau >= start && tau < start + u.t_se;
                };
                std::vector<char> available(uavs.size(), 0);
                for (std::size_t i = 0; i < uavs.size(); ++i) {
                    available[i] = !at_snapshot_station[i] && serving_phase(uavs[i]) ? 1 : 0;
                }
                std::vector<char> station_active(stations.size(), 0);
                for (std::size_t s = 0; s < stations.size(); ++s) {
                    station_active[s] =
                        (!stations[s].charging.empty() || !stations[s].queue.empty()) ? 1 : 0;
                }

                double ux, uy;
                rng_snap.uniform_in_disk(cfg.net.r_c, ux, uy);

                const bool typical_avail = available[0] != 0;
                if (!typical_avail) {
                    p_r_census.add(at_snapshot_station[0] != 0);
                }

                // Realized LoS states and mean powers for every available UAV.
                struct Cand {
                    double mean_power;
                    double dist3;
                    bool los;
                };
                std::vector<Cand> uav_cands(uavs.size());
                const double h = cfg.net.h;
                for (std::size_t i = 0; i < uavs.size(); ++i) {
                    if (!available[i]) continue;
                    const double dx = uavs[i].x - ux, dy = uavs[i].y - uy;
                    const double d3 = std::sqrt(dx * dx + dy * dy + h * h);
                    const bool los = rng_snap.bernoulli(los_probability(d3, cfg.channel, h));
                    const double eta = los ? cfg.channel.eta_l : cfg.channel.eta_n;
                    const double alpha = los ? cfg.channel.alpha_l : cfg.channel.alpha_n;
                    uav_cands[i] = {eta * cfg.channel.rho_u * std::pow(d3, -alpha), d3, los};
                }

                int best_uav = -1, best_station = -1;
                double best_power = -1.0;
                if (typical_avail) {
                    best_uav = 0;
                } else {
                    for (std::size_t i = 0; i < uavs.size(); ++i) {
                        if (!available[i]) continue;
                        if (uav_cands[i].mean_power > best_power) {
                            best_power = uav_cands[i].mean_power;
                            best_uav = static_cast<int>(i);
                        }
                    }
                    for (std::size_t s = 0; s < stations.size(); ++s) {
                        if (!station_active[s]) continue;
                        const double dx = stations[s].x - ux, dy = stations[s].y - uy;
                        const double dg = std::max(1e-3, std::sqrt(dx * dx + dy * dy));
                        const double p = cfg.channel.rho_u * std::pow(dg, -cfg.channel.alpha_t);
                        if (p > best_power) {
                            best_power = p;
                            best_uav = -1;
                            best_station = static_cast<int>(s);
                        }
                    }
                }

                if (!typical_avail) {
                    const int typ_station = uavs[0].station;
                    if (best_uav >= 0) {
                        (uav_cands[static_cast<std::size_t>(best_uav)].los ? share_up_los
                                                                           : share_up_nlos)
                            .add(true);
                        share_cs.add(false);
                        share_cc.add(false);
                        share_none.add(false);
                    } else if (best_station >= 0) {
                        share_up_los.add(false);
                        share_up_nlos.add(false);
                        share_cs.add(best_station == typ_station);
                        share_cc.add(best_station != typ_station);
                        share_none.add(false);
                    } else {
                        share_up_los.add(false);
                        share_up_nlos.add(false);
                        share_cs.add(false);
                        share_cc.add(false);
                        share_none.add(true);
                    }
                }

                bool covered = false;
                if (best_uav >= 0 || best_station >= 0) {
                    double signal = 0.0;
                    double interference = 0.0;
                    for (std::size_t i = 0; i < uavs.size(); ++i) {
                        if (!available[i]) continue;
                        const auto& cand = uav_cands[i];
                        const int m = cand.los ? cfg.channel.m_l : cfg.channel.m_n;
                        const double p = cand.mean_power * rng_snap.nakagami_power_gain(m);
                        if (static_cast<int>(i) == best_uav) {
                            signal = p;
                        } else {
                            interference += p;
                        }
                    }
                    for (std::size_t s = 0; s < stations.size(); ++s) {
                        if (!station_active[s]) continue;
                        const double dx = stations[s].x - ux, dy = stations[s].y - uy;
                        const double dg = std::max(1e-3, std::sqrt(dx * dx + dy * dy));
                        const double p = cfg.channel.rho_u * std::pow(dg, -cfg.channel.alpha_t) *
                                         rng_snap.exponential(1.0);
                        if (static_cast<int>(s) == best_station) {
                            signal = p;
                        } else {
                            interference += p;
                        }
                    }
                    if (!std::isfinite(signal) || !std::isfinite(interference)) {
                        throw std::runtime_error("simulate_network: non-finite SINR");
                    }
                    covered = signal >= cfg.channel.theta * (cfg.channel.sigma2 + interference);
                }
                coverage.add(covered);
                (typical_avail ? coverage_uo : coverage_ubar).add(covered);
            }
        }
        (void)snapshot_taken;

        if (typical_visits > 0) {
            const auto& u0 = uavs[0];
            const double mean_wait = typical_wait_sum / typical_visits * t_ch;
            const double cycle = u0.away + t_ch;
            availability.add(typical_ratio_sum / typical_visits);
            availability_tf.add(u0.t_se > 0.0 ? u0.t_se / (cycle + mean_wait) : 0.0);
            waiting_slots.add(typical_wait_sum / typical_visits);
        }
        if (occ_samples > 0) {
            typical_occupied_others.add(static_cast<double>(typical_occ_count) / occ_samples);
        }
        if (interior_count_total > 0) {
            active_fraction.add(static_cast<double>(active_count) / interior_count_total);
        }
    }

    SimReport report;
    auto push_welford = [&](const std::string& name, const Welford& w) {
        report.estimates.push_back(
            {name, w.mean, static_cast<int>(w.n), w.half_width(), scenario.seed});
    };
    auto push_ratio = [&](const std::string& name, const RatioCounter& r) {
        report.estimates.push_back(
            {name, r.mean(), static_cast<int>(r.trials), r.half_width(), scenario.seed});
    };
    push_welford("availability", availability);
    push_welford("availability_time_fraction", availability_tf);
    push_welford("mean_waiting_slots", waiting_slots);
    push_welford("active_station_fraction", active_fraction);
    push_welford("typical_station_occupied_others", typical_occupied_others);
    if (scenario.collect_coverage) {
        push_ratio("coverage", coverage);
        push_ratio("coverage_given_available", coverage_uo);
        push_ratio("coverage_given_unavailable", coverage_ubar);
        push_ratio("p_r_census", p_r_census);
        push_ratio("share_up_los", share_up_los);
        push_ratio("share_up_nlos", share_up_nlos);
        push_ratio("share_cs", share_cs);
        push_ratio("share_cc", share_cc);
        push_ratio("share_none", share_none);
    }
    return report;
}

std::vector<double> simulate_queue_chain(int n_uavs, int capacity, const EnergyConfig& energy,
                                         const EnergyProfile& profile, long slots,
                                         std::uint64_t seed) {
    if (n_uavs < 1 || capacity < 1) {
        throw std::invalid_argument("simulate_queue_chain: need n_uavs >= 1, capacity >= 1");
    }
    Rng rng(seed, {0xabcdULL});
    std::vector<long> hist(static_cast<std::size_t>(n_uavs), 0);
    // Arrival probabilities per waiting state.
    std::vector<double> p_ch(static_cast<std::size_t>(n_uavs / capacity) + 2);
    for (std::size_t i = 0; i < p_ch.size(); ++i) {
        p_ch[i] = arrival_probability(static_cast<int>(i), energy, profile);
    }

    int n = 0;
    const long warmup = 1000;
    for (long t = 0; t < warmup + slots; ++t) {
        const int absent = (n_uavs - 1) - n;
        const int i1 = n / capacity;
        const int k = rng.binomial(absent, p_ch[static_cast<std::size_t>(i1)]);
        const int next = std::max(0, n - capacity + k);
        if (next + std::min(capacity, n + k) != n + k) {
            throw std::runtime_error("simulate_queue_chain: arrival/departure count mismatch");
        }
        n = next;
        if (t >= warmup) ++hist[static_cast<std::size_t>(n)];
    }
    std::vector<double> out(hist.size());
    for (std::size_t i = 0; i < hist.size(); ++i) {
        out[i] = static_cast<double>(hist[i]) / static_cast<double>(slots);
    }
    return out;
}

SimEstimate estimate_laplace(double s, const ServingCase& sc, double lambda_u_avail,
                             double lambda_c_active, const ChannelConfig& ch, double h,
                             int realizations, std::uint64_t seed, double window_radius) {
    InterferenceLaplace lap(ch, h, lambda_u_avail, lambda_c_active);
    const InterferenceLaplace::Exclusions ex = lap.exclusions(sc);
    Welford acc;
    for (int rep = 0; rep < realizations; ++rep) {
        Rng rng(seed, {static_cast<std::uint64_t>(rep), 7});
        double interference = 0.0;
        const int n_u = rng.poisson(lambda_u_avail * M_PI * window_radius * window_radius);
        for (int i = 0; i < n_u; ++i) {
            const double z = window_radius * std::sqrt(rng.uniform());
            const bool los = rng.bernoulli(los_probability_ground(z, ch, h));
            if (los && z < ex.los_ground) continue;
            if (!los && z < ex.nlos_ground) continue;
            const double eta = los ? ch.eta_l : ch.eta_n;
            const double alpha = los ? ch.alpha_l : ch.alpha_n;
            const int m = los ? ch.m_l : ch.m_n;
            interference += eta * ch.rho_u * std::pow(z * z + h * h, -0.5 * alpha) *
                            rng.nakagami_power_gain(m);
        }
        const int n_c = rng.poisson(lambda_c_active * M_PI * window_radius * window_radius);
        for (int i = 0; i < n_c; ++i) {
            const double z = window_radius * std::sqrt(rng.uniform());
            if (z < ex.station_ground) continue;
            interference += ch.rho_u * std::pow(std::max(z, 1e-3), -ch.alpha_t) * rng.exponential(1.0);
        }
        acc.add(std::exp(-s * interference));
    }
    return {"laplace", acc.mean, static_cast<int>(acc.n), acc.half_width(), seed};
}

std::vector<double> association_census(const Config& cfg, double lambda_u_avail,
                                       double lambda_c_active, double p_crs_a, int realizations,
                                       std::uint64_t seed, double window_radius) {
    const ChannelConfig& ch = cfg.channel;
    const double h = cfg.net.h;
    long counts[5] = {0, 0, 0, 0, 0};
    for (int rep = 0; rep < realizations; ++rep) {
        Rng rng(seed, {static_cast<std::uint64_t>(rep), 11});
        // Typical station at its first-contact distance, other active
        // stations beyond it, the user uniform in the origin hotspot.
        const double r_s = std::sqrt(-std::log(1.0 - rng.uniform()) / (M_PI * cfg.net.lambda_c));
        double ux, uy;
        rng.uniform_in_disk(cfg.net.r_c, ux, uy);
        const bool cs_active = rng.bernoulli(p_crs_a);

        // Nearest other active station to the ORIGIN in the annulus.
        double r_c_dist = 1e300;
        double cx = 0.0, cy = 0.0;
        const double area = M_PI * (window_radius * window_radius - r_s * r_s);
        const int n_act = rng.poisson(std::max(0.0, lambda_c_active * area));
        for (int i = 0; i < n_act; ++i) {
            const double rr = std::sqrt(r_s * r_s + rng.uniform() * (window_radius * window_radius -
                                                                     r_s * r_s));
            const double phi = 2.0 * M_PI * rng.uniform();
            if (rr < r_c_dist) {
                r_c_dist = rr;
                cx = rr * std::cos(phi);
                cy = rr * std::sin(phi);
            }
        }

        // Available UAV field with LoS states relative to the user.
        double best_los = 1e300, best_nlos = 1e300;
        const int n_u = rng.poisson(lambda_u_avail * M_PI * window_radius * window_radius);
        for (int i = 0; i < n_u; ++i) {
            double x, y;
            rng.uniform_in_disk(window_radius, x, y);
            const double dx = x - ux, dy = y - uy;
            const double d3 = std::sqrt(dx * dx + dy * dy + h * h);
            if (rng.bernoulli(los_probability(d3, ch, h))) {
                best_los = std::min(best_los, d3);
            } else {
                best_nlos = std::min(best_nlos, d3);
            }
        }

        double p_best = -1.0;
        int winner = 4;  // none
        if (best_los < 1e299) {
            p_best = ch.eta_l * ch.rho_u * std::pow(best_los, -ch.alpha_l);
            winner = 0;
        }
        if (best_nlos < 1e299) {
            const double p = ch.eta_n * ch.rho_u * std::pow(best_nlos, -ch.alpha_n);
            if (p > p_best) {
                p_best = p;
                winner = 1;
            }
        }
        if (cs_active) {
            const double d = std::max(1e-3, std::hypot(r_s - ux, uy));
            const double p = ch.rho_u * std::pow(d, -ch.alpha_t);
            if (p > p_best) {
                p_best = p;
                winner = 2;
            }
        }
        if (r_c_dist < 1e299) {
            const double d = std::max(1e-3, std::hypot(cx - ux, cy - uy));
            const double p = ch.rho_u * std::pow(d, -ch.alpha_t);
            if (p > p_best) {
                p_best = p;
                winner = 3;
            }
        }
        ++counts[winner];
    }
    std::vector<double> shares(5);
    for (int i = 0; i < 5; ++i) shares[i] = static_cast<double>(counts[i]) / realizations;
    return shares;
}

}  // namespace uavnet
