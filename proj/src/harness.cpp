#include "uavnet/harness.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "uavnet/availability.hpp"
#include "uavnet/sim.hpp"

namespace uavnet {

namespace {

constexpr const char* kHeader =
    "axis,value,p_a,p_cov,uo_los,uo_nlos,up_los,up_nlos,cs,cc,sim_p_a,sim_p_cov,sim_hw,seed";

struct Row {
    std::string axis;
    double value = 0.0;
    std::optional<double> p_a, p_cov, uo_los, uo_nlos, up_los, up_nlos, cs, cc;
    std::optional<double> sim_p_a, sim_p_cov, sim_hw;
    std::optional<std::uint64_t> seed;
};

std::string cell(const std::optional<double>& v) {
    if (!v) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", *v);
    return buf;
}

void write_rows(const std::string& path, const Config& cfg, const RunOptions& opt,
                const std::vector<Row>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << "# uavnet results\n";
    out << "# lambda_c=" << cfg.net.lambda_c << " ratio=" << cfg.net.ratio
        << " capacity_c=" << cfg.net.capacity_c << " r_c=" << cfg.net.r_c << " h=" << cfg.net.h
        << "\n";
    out << "# b_max=" << cfg.energy.b_max << " p_m=" << cfg.energy.p_m << " p_s=" << cfg.energy.p_s
        << " e_l=" << cfg.energy.e_l << " v=" << cfg.energy.v << " t_ch=" << cfg.energy.t_ch
        << "\n";
    out << "# theta=" << cfg.channel.theta << " rho_u=" << cfg.channel.rho_u
        << " sigma2=" << cfg.channel.sigma2 << " method="
        << (opt.method == CoverageMethod::Alzer ? "alzer" : "exact") << "\n";
    out << kHeader << "\n";
    for (const auto& r : rows) {
        char vbuf[40];
        std::snprintf(vbuf, sizeof(vbuf), "%.10g", r.value);
        out << r.axis << ',' << vbuf << ',' << cell(r.p_a) << ',' << cell(r.p_cov) << ','
            << cell(r.uo_los) << ',' << cell(r.uo_nlos) << ',' << cell(r.up_los) << ','
            << cell(r.up_nlos) << ',' << cell(r.cs) << ',' << cell(r.cc) << ','
            << cell(r.sim_p_a) << ',' << cell(r.sim_p_cov) << ',' << cell(r.sim_hw) << ',';
        if (r.seed) out << *r.seed;
        out << "\n";
    }
}

int worker_count(const RunOptions& opt) {
    if (opt.workers > 0) return opt.workers;
    if (const char* env = std::getenv("UAVNET_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

Config apply_axis(const Config& base, SweepSpec::Axis axis, double value) {
    Config cfg = base;
    switch (axis) {
        case SweepSpec::Axis::Ratio:
            cfg.net.ratio = value;
            cfg.net.lambda_u = cfg.net.ratio * cfg.net.lambda_c;
            break;
        case SweepSpec::Axis::Capacity:
            cfg.net.capacity_c = static_cast<int>(value);
            break;
        case SweepSpec::Axis::Theta:
            cfg.channel.theta = value;
            break;
    }
    validate(cfg);
    return cfg;
}

std::string axis_name(SweepSpec::Axis axis) {
    switch (axis) {
        case SweepSpec::Axis::Ratio:
            return "ratio";
        case SweepSpec::Axis::Capacity:
            return "capacity";
        case SweepSpec::Axis::Theta:
            return "theta";
    }
    return "?";
}

Row evaluate_point(const std::string& axis_label, SweepSpec::Axis axis, double value,
                   const Config& base, const RunOptions& opt) {
    const Config cfg = apply_axis(base, axis, value);
    Row row;
    row.axis = axis_label;
    row.value = value;
    if (opt.mode != RunMode::Simulation) {
        CoverageOptions copt;
        copt.method = opt.method;
        copt.mixture = opt.mixture;
        copt.outer_samples = opt.outer_samples;
        const CoverageReport rep = coverage(cfg, copt);
        row.p_a = rep.p_a;
        row.p_cov = rep.p_cov_total;
        row.uo_los = rep.uo_los;
        row.uo_nlos = rep.uo_nlos;
        row.up_los = rep.up_los;
        row.up_nlos = rep.up_nlos;
        row.cs = rep.cs;
        row.cc = rep.cc;
    }
    if (opt.mode != RunMode::Analytic) {
        SimScenario sc;
        sc.replications = opt.replications;
        sc.seed = opt.seed;
        const SimReport rep = simulate_network(sc, cfg);
        row.sim_p_a = rep.get("availability").estimate;
        row.sim_p_cov = rep.get("coverage").estimate;
        row.sim_hw = std::max(rep.get("availability").half_width_95,
                              rep.get("coverage").half_width_95);
        row.seed = opt.seed;
    }
    return row;
}

struct Point {
    std::string label;
    double value = 0.0;
    Config base;
};

// Worker-pool dispatch; output rows keep the input order no matter which
// worker finishes first.
std::vector<Row> evaluate_points(const std::vector<Point>& points, SweepSpec::Axis axis,
                                 const RunOptions& opt) {
    std::vector<Row> rows(points.size());
    const int workers = worker_count(opt);
    std::size_t next = 0;
    std::mutex mtx;
    auto run = [&]() {
        for (;;) {
            std::size_t idx;
            {
                std::lock_guard<std::mutex> lock(mtx);
                if (next >= points.size()) return;
                idx = next++;
            }
            rows[idx] = evaluate_point(points[idx].label, axis, points[idx].value,
                                       points[idx].base, opt);
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    return rows;
}

}  // namespace

SweepSpec parse_sweep(const std::string& text) {
    SweepSpec spec;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("sweep: expected axis=lo:hi:step");
    const std::string axis = text.substr(0, eq);
    if (axis == "ratio") {
        spec.axis = SweepSpec::Axis::Ratio;
    } else if (axis == "capacity") {
        spec.axis = SweepSpec::Axis::Capacity;
    } else if (axis == "theta") {
        spec.axis = SweepSpec::Axis::Theta;
    } else {
        throw std::invalid_argument("sweep: unknown axis '" + axis + "'");
    }
    const std::string range = text.substr(eq + 1);
    double lo = 0.0, hi = 0.0, step = 0.0;
    if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3) {
        throw std::invalid_argument("sweep: expected lo:hi:step, got '" + range + "'");
    }
    if (step <= 0.0 || hi < lo) throw std::invalid_argument("sweep: need step > 0 and hi >= lo");
    for (double v = lo; v <= hi + 1e-12 * std::max(1.0, std::abs(hi)); v += step) {
        spec.values.push_back(v);
    }
    if (spec.values.empty()) throw std::invalid_argument("sweep: empty value list");
    return spec;
}

void run_sweep(const SweepSpec& spec, const Config& cfg, const RunOptions& opt) {
    if (spec.values.empty()) throw std::invalid_argument("run_sweep: empty value list");
    RunOptions local = opt;
    local.mode = spec.mode;
    std::vector<Point> points;
    for (double v : spec.values) points.push_back({axis_name(spec.axis), v, cfg});
    const std::vector<Row> rows = evaluate_points(points, spec.axis, local);
    write_rows(spec.out_path, cfg, local, rows);
}

void run_figure(const std::string& figure_id, const Config& cfg, const RunOptions& opt,
                const std::string& out_path) {
    std::vector<Row> rows;
    if (figure_id == "fig2") {
        // Conditional availability and its zero-waiting ceiling vs capacity.
        const EnergyProfile profile = expected_profile(cfg.net, cfg.energy);
        const double ceiling = max_achievable_availability(cfg.net, cfg.energy, profile);
        for (int n : {4, 8, 12, 16, 20}) {
            for (int c = 1; c <= 6; ++c) {
                Config pt = cfg;
                pt.net.capacity_c = c;
                const QueueSolution q = solve_queue(n, c, pt.energy, profile);
                Row row;
                row.axis = "capacity(N=" + std::to_string(n) + ")";
                row.value = c;
                row.p_a = conditional_availability(q, pt.net, pt.energy, profile);
                rows.push_back(row);
            }
            for (int c = 1; c <= 6; ++c) {
                Row row;
                row.axis = "capacity(N=" + std::to_string(n) + ",ceiling)";
                row.value = c;
                row.p_a = ceiling;
                rows.push_back(row);
            }
        }
        write_rows(out_path, cfg, opt, rows);
        return;
    }

    std::vector<Point> points;
    SweepSpec::Axis axis;
    if (figure_id == "fig3" || figure_id == "fig5") {
        axis = SweepSpec::Axis::Ratio;
        for (int c = 1; c <= 6; ++c) {
            Config base = cfg;
            base.net.capacity_c = c;
            for (int ratio = 1; ratio <= 20; ++ratio) {
                points.push_back({"ratio(c=" + std::to_string(c) + ")",
                                  static_cast<double>(ratio), base});
            }
        }
    } else if (figure_id == "fig4") {
        axis = SweepSpec::Axis::Capacity;
        for (double ratio : {5.0, 10.0, 20.0}) {
            Config base = cfg;
            base.net.ratio = ratio;
            base.net.lambda_u = ratio * base.net.lambda_c;
            char label[48];
            std::snprintf(label, sizeof(label), "capacity(ratio=%g)", ratio);
            for (int c = 1; c <= 6; ++c) {
                points.push_back({label, static_cast<double>(c), base});
            }
        }
    } else {
        throw std::invalid_argument("run_figure: unknown figure id '" + figure_id + "'");
    }

    RunOptions local = opt;
    if (figure_id == "fig3") {
        // Availability-only figure: skip the coverage integrals.
        rows.resize(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Config pt = apply_axis(points[i].base, axis, points[i].value);
            Row row;
            row.axis = points[i].label;
            row.value = points[i].value;
            const EnergyProfile profile = expected_profile(pt.net, pt.energy);
            const CellCountPmf pmf = cell_count_pmf(pt.net);
            row.p_a = availability(pt.net, pt.energy, profile, pmf, opt.mixture).p_a;
            if (opt.mode != RunMode::Analytic) {
                SimScenario sc;
                sc.replications = opt.replications;
                sc.seed = opt.seed;
                sc.collect_coverage = false;
                const SimReport rep = simulate_network(sc, pt);
                row.sim_p_a = rep.get("availability").estimate;
                row.sim_hw = rep.get("availability").half_width_95;
                row.seed = opt.seed;
            }
            rows[i] = row;
        }
        write_rows(out_path, cfg, local, rows);
        return;
    }

    const std::vector<Row> out_rows = evaluate_points(points, axis, local);
    write_rows(out_path, cfg, local, out_rows);
}

}  // namespace uavnet
