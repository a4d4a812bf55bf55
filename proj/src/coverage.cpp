#include "uavnet/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <memory>
#include <stdexcept>
#include <vector>

#include "uavnet/geometry.hpp"
#include "uavnet/quad.hpp"
#include "uavnet/rng.hpp"

namespace uavnet {

double gain_threshold_los(double r, const ChannelConfig& ch) {
    return ch.theta / (ch.eta_l * ch.rho_u) * std::pow(r, ch.alpha_l);
}

double gain_threshold_nlos(double r, const ChannelConfig& ch) {
    return ch.theta / (ch.eta_n * ch.rho_u) * std::pow(r, ch.alpha_n);
}

double alzer_beta2(int m) {
    if (m <= 1) return 1.0;
    return std::pow(std::tgamma(m + 1.0), -1.0 / m);
}

namespace {

double binom_coeff(int m, int k) {
    double v = 1.0;
    for (int j = 1; j <= k; ++j) v *= static_cast<double>(m - k + j) / j;
    return v;
}

// Conditioning-distance sample set and the per-sample user-to-station CDF
// curves, tabulated on a shared uniform grid so every later evaluation is a
// lookup.
class SampleSet {
  public:
    SampleSet(const Config& cfg, double lambda_c_active, int count)
        : r_c_(cfg.net.r_c), dx_(cfg.net.r_c / 24.0) {
        const double lambda_c = cfg.net.lambda_c;
        r_s_.resize(count);
        r_c_dist_.resize(count);
        r_su_.resize(count);
        r_cu_.resize(count);
        Halton halton(6);
        double u[6];
        for (int i = 0; i < count; ++i) {
            halton.point(static_cast<std::uint64_t>(i) + 1, u);
            const double rs = std::sqrt(-std::log1p(-u[0]) / (M_PI * lambda_c));
            double rc;
            if (lambda_c_active > 1e-30) {
                rc = std::sqrt(rs * rs - std::log1p(-u[1]) / (M_PI * lambda_c_active));
            } else {
                rc = 1e12;
            }
            r_s_[i] = rs;
            r_c_dist_[i] = rc;
            r_su_[i] = user_point_distance(rs, u[2], u[3]);
            r_cu_[i] = user_point_distance(rc, u[4], u[5]);
        }
        build_curves();
    }

    int size() const { return static_cast<int>(r_s_.size()); }
    double r_s(int i) const { return r_s_[i]; }
    double r_c_dist(int i) const { return r_c_dist_[i]; }
    double r_su(int i) const { return r_su_[i]; }
    double r_cu(int i) const { return r_cu_[i]; }
    double max_r_s() const { return *std::max_element(r_s_.begin(), r_s_.end()); }
    double max_r_c_finite() const {
        double m = 0.0;
        for (double v : r_c_dist_) {
            if (v < 1e11) m = std::max(m, v);
        }
        return m;
    }

    // Conditional CDF of the user distance to the typical / other station.
    double cdf_su(int i, double x) const { return eval_curve(su_curves_[i], r_s_[i], x); }
    double cdf_cu(int i, double x) const { return eval_curve(cu_curves_[i], r_c_dist_[i], x); }

  private:
    struct Curve {
        int j0 = 0;                  // grid index of the band start
        std::vector<float> values;   // CDF at grid points j0, j0+1, ...
    };

    double user_point_distance(double center, double u_radius, double u_angle) const {
        const double w = r_c_ * std::sqrt(u_radius);
        const double phi = 2.0 * M_PI * u_angle;
        const double x = center - w * std::cos(phi);
        const double y = w * std::sin(phi);
        return std::sqrt(x * x + y * y);
    }

    Curve make_curve(double center) const {
        Curve c;
        if (center > 1e11) return c;  // effectively at infinity: CDF stays 0
        const double lo = std::max(0.0, center - r_c_);
        const double hi = center + r_c_;
        c.j0 = static_cast<int>(std::floor(lo / dx_));
        const int j1 = static_cast<int>(std::ceil(hi / dx_)) + 1;
        c.values.resize(j1 - c.j0 + 1);
        double acc = 0.0;
        double prev_x = c.j0 * dx_;
        c.values[0] = 0.0f;
        for (int j = 1; j < static_cast<int>(c.values.size()); ++j) {
            const double x = (c.j0 + j) * dx_;
            acc += gauss16([&](double t) { return user_station_distance_pdf(t, center, r_c_); },
                           prev_x, x);
            c.values[j] = static_cast<float>(std::min(1.0, acc));
            prev_x = x;
        }
        return c;
    }

    double eval_curve(const Curve& c, double center, double x) const {
        if (c.values.empty()) return 0.0;  // infinite center
        if (x >= center + r_c_) return 1.0;
        const double pos = x / dx_ - c.j0;
        if (pos <= 0.0) return 0.0;
        const int j = static_cast<int>(pos);
        if (j + 1 >= static_cast<int>(c.values.size())) return c.values.back();
        const double frac = pos - j;
        return (1.0 - frac) * c.values[j] + frac * c.values[j + 1];
    }

    void build_curves() {
        su_curves_.reserve(r_s_.size());
        cu_curves_.reserve(r_s_.size());
        for (std::size_t i = 0; i < r_s_.size(); ++i) {
            su_curves_.push_back(make_curve(r_s_[i]));
            cu_curves_.push_back(make_curve(r_c_dist_[i]));
        }
    }

    double r_c_;
    double dx_;
    std::vector<double> r_s_, r_c_dist_, r_su_, r_cu_;
    std::vector<Curve> su_curves_, cu_curves_;
};

struct Pieces {
    std::vector<double> cuts;
    double integrate_all(const std::function<double(double)>& f, const QuadOptions& opt) const {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) acc += integrate(f, cuts[i], cuts[i + 1], opt);
        return acc;
    }
};

Pieces make_pieces(double lo, double hi, std::initializer_list<double> interior) {
    Pieces p;
    p.cuts.push_back(lo);
    for (double c : interior) {
        if (c > lo && c < hi) p.cuts.push_back(c);
    }
    p.cuts.push_back(hi);
    return p;
}

class Evaluator {
  public:
    Evaluator(const Config& cfg, const CoverageOptions& opt)
        : cfg_(cfg),
          opt_(opt),
          profile_(expected_profile(cfg.net, cfg.energy)),
          pmf_(cell_count_pmf(cfg.net)),
          voids_(cfg.channel, cfg.net.h) {
        const bool all_pinned =
            opt_.override_p_a && opt_.override_p_c_a && opt_.override_p_crs_a;
        if (all_pinned) {
            p_a_ = *opt_.override_p_a;
            p_c_a_ = *opt_.override_p_c_a;
            p_crs_a_ = *opt_.override_p_crs_a;
        } else {
            const AvailabilityReport rep =
                availability(cfg_.net, cfg_.energy, profile_, pmf_, opt_.mixture);
            p_a_ = opt_.override_p_a.value_or(rep.p_a);
            const ActivityProbabilities act =
                activity_probabilities(cfg_.net, cfg_.energy, profile_, pmf_, opt_.mixture);
            p_c_a_ = opt_.override_p_c_a.value_or(act.p_c_a);
            p_crs_a_ = opt_.override_p_crs_a.value_or(act.p_crs_a);
        }
        lambda_u_avail_ = p_a_ * cfg_.net.lambda_u;
        lambda_c_active_ = p_c_a_ * cfg_.net.lambda_c;
        lap_ = std::make_unique<InterferenceLaplace>(cfg_.channel, cfg_.net.h, lambda_u_avail_,
                                                     lambda_c_active_, opt_.exclusion_form);
        samples_ = std::make_unique<SampleSet>(cfg_, lambda_c_active_, opt_.outer_samples);
    }

    CoverageReport run(bool with_sinr) {
        CoverageReport rep;
        rep.method = opt_.method;
        rep.p_a = p_a_;
        rep.p_c_a = p_c_a_;
        rep.p_crs_a = p_crs_a_;
        rep.lambda_u_avail = lambda_u_avail_;
        rep.lambda_c_active = lambda_c_active_;
        rep.outer_samples = samples_->size();

        if (with_sinr) {
            hotspot_components(rep.uo_los, rep.uo_nlos);
        }
        nearest_uav_component(true, with_sinr, rep.up_los, rep.r_hi_los);
        nearest_uav_component(false, with_sinr, rep.up_nlos, rep.r_hi_nlos);
        station_components(with_sinr, rep.cs, rep.cc);
        rep.p_cov_total = p_a_ * (rep.uo_los + rep.uo_nlos) +
                          (1.0 - p_a_) * (rep.up_los + rep.up_nlos + rep.cs + rep.cc);
        return rep;
    }

  private:
    // Sum over the gamma-fading order, either through the CDF bound or the
    // exact Laplace derivatives.
    double fading_sum(double g, int m, const ServingCase& sc) const {
        const double sigma2 = cfg_.channel.sigma2;
        if (opt_.method == CoverageMethod::Alzer) {
            const double b2 = alzer_beta2(m);
            double acc = 0.0;
            for (int k = 1; k <= m; ++k) {
                const double term = binom_coeff(m, k) * lap_->laplace_noise(k * b2 * m * g, sc, sigma2);
                acc += (k % 2 == 1) ? term : -term;
            }
            return acc;
        }
        const double s = m * g;
        double acc = 0.0;
        double pow_term = 1.0;  // (-m g)^k / k!
        for (int k = 0; k < m; ++k) {
            if (k > 0) pow_term *= -s / k;
            acc += pow_term * lap_->derivative(k, s, sc, sigma2);
        }
        return acc;
    }

    void hotspot_components(double& out_los, double& out_nlos) {
        const double h = cfg_.net.h;
        const double rc = cfg_.net.r_c;
        const double hi = std::sqrt(h * h + rc * rc);
        QuadOptions opt;
        opt.abs_tol = 1e-9;
        opt.rel_tol = 1e-6;
        ServingCase sc{ServingKind::HotspotUav, true, 0.0, 0.0, 0.0};
        auto make_integrand = [&](bool los) {
            return [&, los](double r) {
                const double p_l = los_probability(r, cfg_.channel, h);
                const double weight = (los ? p_l : 1.0 - p_l) * 2.0 * r / (rc * rc);
                if (weight <= 0.0) return 0.0;
                const double g = los ? gain_threshold_los(r, cfg_.channel)
                                     : gain_threshold_nlos(r, cfg_.channel);
                const int m = los ? cfg_.channel.m_l : cfg_.channel.m_n;
                return weight * fading_sum(g, m, sc);
            };
        };
        out_los = integrate(make_integrand(true), h, hi, opt);
        out_nlos = integrate(make_integrand(false), h, hi, opt);
    }

    // Mean over samples of the product of station-candidate survival factors
    // evaluated at the power-equivalent distance x.
    double survival_active(double x) const {
        const int n = samples_->size();
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double su = 1.0 - samples_->cdf_su(i, x);
            if (su <= 0.0) continue;
            acc += su * (1.0 - samples_->cdf_cu(i, x));
        }
        return acc / n;
    }

    double survival_inactive(double x) const {
        const int n = samples_->size();
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += 1.0 - samples_->cdf_cu(i, x);
        return acc / n;
    }

    void nearest_uav_component(bool los, bool with_sinr, double& out, double& r_hi_out) {
        out = 0.0;
        const double h = cfg_.net.h;
        if (lambda_u_avail_ <= 0.0) {
            r_hi_out = h;
            return;
        }
        const double two_pi_lu = 2.0 * M_PI * lambda_u_avail_;
        const double log_cut = -std::log(opt_.serving_ccdf_cut);

        // Truncate where the nearest-candidate CCDF or the station-survival
        // weight has died.
        auto void_at = [&](double r) {
            const double u = std::sqrt(std::max(0.0, r * r - h * h));
            return two_pi_lu * (los ? voids_.v_los(u) : voids_.v_nlos(u));
        };
        double r_hi = invert_monotone([&](double r) { return void_at(r); }, log_cut, h, 5e7);
        // Beyond the farthest station-survival band every station candidate
        // wins surely; only applicable while the active-station field exists.
        if (lambda_c_active_ > 1e-30) {
            const double x_top = samples_->max_r_c_finite() + cfg_.net.r_c + 1.0;
            auto big_d = [&](double r) {
                const ExclusionDistances ex =
                    exclusion_distances(r, cfg_.channel, h, opt_.exclusion_form);
                return los ? ex.big_d_l : ex.big_d_n;
            };
            if (big_d(r_hi) > x_top) {
                r_hi = invert_monotone([&](double r) { return big_d(r); }, x_top, h, r_hi);
            }
        }
        r_hi_out = r_hi;

        const int m = los ? cfg_.channel.m_l : cfg_.channel.m_n;
        QuadOptions opt;
        opt.abs_tol = 1e-9;
        opt.rel_tol = 1e-6;
        auto integrand = [&](double r) {
            const double p_l = los_probability(r, cfg_.channel, h);
            const double p_type = los ? p_l : 1.0 - p_l;
            const double u = std::sqrt(std::max(0.0, r * r - h * h));
            const double f = two_pi_lu * p_type * r *
                             std::exp(-two_pi_lu * (los ? voids_.v_los(u) : voids_.v_nlos(u)));
            if (f <= 0.0) return 0.0;
            const ExclusionDistances ex =
                exclusion_distances(r, cfg_.channel, h, opt_.exclusion_form);
            const double rival_ground =
                std::sqrt(std::max(0.0, (los ? ex.d_n * ex.d_n : ex.d_l * ex.d_l) - h * h));
            const double beats_rival =
                std::exp(-two_pi_lu * (los ? voids_.v_nlos(rival_ground) : voids_.v_los(rival_ground)));
            const double x = los ? ex.big_d_l : ex.big_d_n;
            const double weight =
                beats_rival * (p_crs_a_ * survival_active(x) +
                               (1.0 - p_crs_a_) * survival_inactive(x));
            if (weight <= 0.0) return 0.0;
            double sinr_term = 1.0;
            if (with_sinr) {
                ServingCase sc{los ? ServingKind::LosUav : ServingKind::NlosUav, true, r, 0.0, 0.0};
                const double g = los ? gain_threshold_los(r, cfg_.channel)
                                     : gain_threshold_nlos(r, cfg_.channel);
                sinr_term = fading_sum(g, m, sc);
            }
            return f * weight * sinr_term;
        };
        const Pieces pieces = make_pieces(
            h, r_hi, {h + 60.0, h + 200.0, 500.0, 1200.0, 3000.0, 1e4, 3e4, 1e5, 1e6});
        out = pieces.integrate_all(integrand, opt);
    }

    void station_components(bool with_sinr, double& out_cs, double& out_cc) {
        out_cs = 0.0;
        out_cc = 0.0;
        const double h = cfg_.net.h;
        const double rc = cfg_.net.r_c;
        const double theta_over_rho = cfg_.channel.theta / cfg_.channel.rho_u;
        const double sigma2 = cfg_.channel.sigma2;
        const int n = samples_->size();
        const double two_pi_lu = 2.0 * M_PI * lambda_u_avail_;

        auto uav_and_voids = [&](double r, double& log_uav, double& st_beats) {
            const ExclusionDistances ex =
                exclusion_distances(r, cfg_.channel, h, opt_.exclusion_form);
            const double gl = std::sqrt(std::max(0.0, ex.hat_d_l * ex.hat_d_l - h * h));
            const double gn = std::sqrt(std::max(0.0, ex.hat_d_n * ex.hat_d_n - h * h));
            st_beats = std::exp(-two_pi_lu * (voids_.v_los(gl) + voids_.v_nlos(gn)));
            if (with_sinr) {
                ServingCase sc{ServingKind::Station, true, r, r, r};
                log_uav = lap_->log_uav_fields(theta_over_rho * std::pow(r, cfg_.channel.alpha_t), sc);
            } else {
                log_uav = 0.0;
            }
        };

        QuadOptions opt;
        opt.abs_tol = 1e-9;
        opt.rel_tol = 1e-6;

        auto cs_integrand = [&](double r) {
            double log_uav, st_beats;
            uav_and_voids(r, log_uav, st_beats);
            if (st_beats <= 0.0) return 0.0;
            const double s = theta_over_rho * std::pow(r, cfg_.channel.alpha_t);
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                const double f = user_station_distance_pdf(r, samples_->r_s(i), rc);
                if (f <= 0.0) continue;
                const double cc_survive = 1.0 - samples_->cdf_cu(i, r);
                if (cc_survive <= 0.0) continue;
                double st_term = 1.0;
                if (with_sinr) {
                    st_term = std::exp(lap_->log_station_field(s, std::min(r, samples_->r_cu(i))));
                }
                acc += f * cc_survive * st_term;
            }
            if (acc <= 0.0) return 0.0;
            const double noise = with_sinr ? std::exp(-s * sigma2 + log_uav) : 1.0;
            return st_beats * noise * acc / n;
        };

        auto cc_integrand = [&](double r) {
            double log_uav, st_beats;
            uav_and_voids(r, log_uav, st_beats);
            if (st_beats <= 0.0) return 0.0;
            const double s = theta_over_rho * std::pow(r, cfg_.channel.alpha_t);
            double acc_active = 0.0;
            double acc_inactive = 0.0;
            for (int i = 0; i < n; ++i) {
                const double f = user_station_distance_pdf(r, samples_->r_c_dist(i), rc);
                if (f <= 0.0) continue;
                acc_inactive += f;
                const double cs_survive = 1.0 - samples_->cdf_su(i, r);
                if (cs_survive <= 0.0) continue;
                double st_term = 1.0;
                if (with_sinr) {
                    st_term = std::exp(lap_->log_station_field(s, std::min(r, samples_->r_su(i))));
                }
                acc_active += f * cs_survive * st_term;
            }
            const double st_inactive =
                with_sinr ? std::exp(lap_->log_station_field(s, r)) : 1.0;
            const double mixed =
                p_crs_a_ * acc_active + (1.0 - p_crs_a_) * st_inactive * acc_inactive;
            if (mixed <= 0.0) return 0.0;
            const double noise = with_sinr ? std::exp(-s * sigma2 + log_uav) : 1.0;
            return st_beats * noise * mixed / n;
        };

        const double hi_cs = samples_->max_r_s() + rc;
        const double hi_cc = samples_->max_r_c_finite() + rc;
        if (hi_cs > 0.0) {
            Pieces p;
            for (double x = 0.0; x < hi_cs; x += rc / 2.0) p.cuts.push_back(x);
            p.cuts.push_back(hi_cs);
            out_cs = p_crs_a_ * p.integrate_all(cs_integrand, opt);
        }
        if (hi_cc > 0.0) {
            Pieces p;
            for (double x = 0.0; x < hi_cc; x += rc / 2.0) p.cuts.push_back(x);
            p.cuts.push_back(hi_cc);
            out_cc = p.integrate_all(cc_integrand, opt);
        }
    }

  public:
    const Config cfg_;
    const CoverageOptions opt_;
    EnergyProfile profile_;
    CellCountPmf pmf_;
    LosVoidIntegrals voids_;
    double p_a_ = 0.0, p_c_a_ = 0.0, p_crs_a_ = 0.0;
    double lambda_u_avail_ = 0.0, lambda_c_active_ = 0.0;
    std::unique_ptr<InterferenceLaplace> lap_;
    std::unique_ptr<SampleSet> samples_;
};

}  // namespace

CoverageReport coverage(const Config& cfg, const CoverageOptions& opt) {
    validate(cfg);
    Evaluator ev(cfg, opt);
    return ev.run(true);
}

AssociationShares analytic_association_shares(const Config& cfg, double lambda_u_avail,
                                              double lambda_c_active, double p_crs_a,
                                              const CoverageOptions& opt) {
    validate(cfg);
    CoverageOptions local = opt;
    local.override_p_a = lambda_u_avail / cfg.net.lambda_u;
    local.override_p_c_a = lambda_c_active / cfg.net.lambda_c;
    local.override_p_crs_a = p_crs_a;
    Evaluator ev(cfg, local);
    const CoverageReport rep = ev.run(false);
    AssociationShares shares;
    shares.up_los = rep.up_los;
    shares.up_nlos = rep.up_nlos;
    shares.cs = rep.cs;
    shares.cc = rep.cc;
    return shares;
}

}  // namespace uavnet
