#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavnet/config.hpp"
#include "uavnet/coverage.hpp"

namespace uavnet {

enum class RunMode { Analytic, Simulation, Both };

struct SweepSpec {
    enum class Axis { Ratio, Capacity, Theta } axis = Axis::Ratio;
    std::vector<double> values;
    RunMode mode = RunMode::Analytic;
    std::string out_path;
};

// Parses "ratio=1:20:1" or "capacity=1:6:1" style ranges.
SweepSpec parse_sweep(const std::string& text);

struct RunOptions {
    RunMode mode = RunMode::Analytic;
    std::uint64_t seed = 1;
    int replications = 2000;
    CoverageMethod method = CoverageMethod::Alzer;
    CellMixture mixture = kDefaultCellMixture;
    int outer_samples = 4096;
    int workers = 0;  // 0: UAVNET_WORKERS env or hardware concurrency
};

// One row per swept value; the fixed column schema is
// axis,value,p_a,p_cov,uo_los,uo_nlos,up_los,up_nlus... see write docs.
void run_sweep(const SweepSpec& spec, const Config& cfg, const RunOptions& opt);

// Reproduces the experiment layouts: fig2 conditional availability vs
// capacity, fig3 availability vs density ratio, fig4 coverage vs capacity,
// fig5 coverage vs density ratio.
void run_figure(const std::string& figure_id, const Config& cfg, const RunOptions& opt,
                const std::string& out_path);

}  // namespace uavnet
