#pragma once

#include <cstdint>
#include <vector>

#include "qdev/metrics.hpp"

namespace qdev {

enum class SeesawSign { Positive, Negative };

struct SeesawConfig {
    int n = 3;
    int dim = 2;
    int restarts = 20;
    int max_iters = 100;
    double improvement_tol = 1e-7;
    double solver_tol = 1e-9;
    std::uint64_t seed = 0;
    SeesawSign sign = SeesawSign::Positive;
};

struct SeesawResult {
    PreparationSet best_preps;
    double best_value = 0.0;          // exact (sign-adjusted) deviation of best_preps
    std::vector<double> trace;        // best-so-far per accepted iteration, best restart
    int restarts_used = 0;
};

struct FrontierPoint {
    double kappa = 0.0;
    double avg_set = 0.0;
    double avg_pairwise = 0.0;
    double deviation = 0.0;
    int restarts_used = 0;
};

// Restarted alternating search for extremal deviation. States are proposed
// from the linearization at the current optimizing measurements and accepted
// only when the exactly re-evaluated objective improves.
SeesawResult seesaw_deviation(const SeesawConfig& config);

// General weighted objective w_pair * avg_pairwise + w_set * avg_set; the
// deviation searches are (1,-1) and (-1,1).
SeesawResult seesaw_weighted(const SeesawConfig& config, double w_pair, double w_set);

// Scalarized frontier: per kappa, maximize avg_pairwise - kappa*avg_set and
// the converse; each solution is re-evaluated exactly. Output sorted by
// avg_set.
std::vector<FrontierPoint> frontier_sweep(int n, int dim, const std::vector<double>& kappa_grid,
                                          const SeesawConfig& config);

std::vector<double> default_kappa_grid();

// Best Positive-sign deviation per n in [n_min, n_max].
std::vector<std::pair<int, double>> deviation_scaling(int n_min, int n_max, int dim,
                                                      const SeesawConfig& config);

}  // namespace qdev
