#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "uavnet/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"availability and coverage analysis of a UAV network with finite-capacity charging stations"};

    std::string config_path;
    std::string figure;
    std::string sweep_text;
    std::string mode = "analytic";
    std::string method = "alzer";
    std::string out_path = "out.csv";
    int capacity = 0;
    double ratio = 0.0;
    int replications = 2000;
    std::uint64_t seed = 1;
    int samples = 4096;

    app.add_option("--config", config_path, "configuration file (key = value lines)");
    app.add_option("--figure", figure, "one of fig2, fig3, fig4, fig5");
    app.add_option("--sweep", sweep_text, "axis=lo:hi:step with axis in {ratio,capacity,theta}");
    app.add_option("--capacity", capacity, "override charging-station capacity");
    app.add_option("--ratio", ratio, "override UAV / station density ratio");
    app.add_option("--mode", mode, "analytic | sim | both")
        ->check(CLI::IsMember({"analytic", "sim", "both"}));
    app.add_option("--replications", replications, "Monte Carlo replications");
    app.add_option("--seed", seed, "root RNG seed");
    app.add_option("--out", out_path, "output CSV path");
    app.add_option("--method", method, "alzer | exact")
        ->check(CLI::IsMember({"alzer", "exact"}));
    app.add_option("--samples", samples, "outer-expectation sample count");

    CLI11_PARSE(app, argc, argv);

    try {
        uavnet::Config cfg =
            config_path.empty() ? uavnet::default_config() : uavnet::load_config(config_path);
        if (capacity > 0) cfg.net.capacity_c = capacity;
        if (ratio > 0.0) {
            cfg.net.ratio = ratio;
            cfg.net.lambda_u = ratio * cfg.net.lambda_c;
        }
        uavnet::validate(cfg);

        uavnet::RunOptions opt;
        opt.mode = mode == "analytic" ? uavnet::RunMode::Analytic
                   : mode == "sim"    ? uavnet::RunMode::Simulation
                                      : uavnet::RunMode::Both;
        opt.seed = seed;
        opt.replications = replications;
        opt.method = method == "alzer" ? uavnet::CoverageMethod::Alzer
                                       : uavnet::CoverageMethod::ExactDerivative;
        opt.outer_samples = samples;

        if (!figure.empty()) {
            uavnet::run_figure(figure, cfg, opt, out_path);
        } else if (!sweep_text.empty()) {
            uavnet::SweepSpec spec = uavnet::parse_sweep(sweep_text);
            spec.mode = opt.mode;
            spec.out_path = out_path;
            uavnet::run_sweep(spec, cfg, opt);
        } else {
            std::fprintf(stderr, "nothing to do: pass --figure or --sweep\n");
            return 2;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
