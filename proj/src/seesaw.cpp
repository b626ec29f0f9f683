#include "qdev/seesaw.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qdev/rng.hpp"

namespace qdev {

namespace {

struct Evaluation {
    double avg_pairwise = 0.0;
    double avg_set = 0.0;
    double objective = 0.0;
    std::vector<Povm> pair_povms;    // over pairs (i<j), lexicographic
    std::vector<Povm> subset_povms;  // for m = 1..n-1
};

// Exact evaluation at fixed preparations: closed-form Helstrom pairs and the
// subset SDPs, both of which also hand back optimizing measurements.
Evaluation evaluate(const PreparationSet& preps, double w_pair, double w_set, double tol) {
    const int n = preps.n();
    Evaluation ev;
    double pair_sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            pair_sum += helstrom_pair(preps.states[i], preps.states[j]);
            ev.pair_povms.push_back(helstrom_povm(preps.states[i], preps.states[j]));
        }
    ev.avg_pairwise = pair_sum / (n * (n - 1) / 2);

    double set_sum = 0.0;
    for (int m = 1; m <= n - 1; ++m) {
        const auto sdp = build_measurement_sdp(preps, subset_coefficients(n, m));
        SolverResult res = solve_measurement_sdp(sdp, tol);
        if (res.status != SolverStatus::Optimal)
            throw Error("subset SDP failed during see-saw evaluation");
        set_sum += res.value;
        ev.subset_povms.push_back(std::move(res.povm));
    }
    ev.avg_set = set_sum / (n - 1);
    ev.objective = w_pair * ev.avg_pairwise + w_set * ev.avg_set;
    return ev;
}

// Per-state operators of the linearized pairwise term at fixed pair POVMs:
// w * avg_pairwise(preps) = sum_x tr(rho_x a_x) with the POVMs held fixed.
std::vector<Mat> pairwise_ops(int n, int d, const std::vector<Povm>& pair_povms, double w) {
    std::vector<Mat> a(n, Mat::Zero(d, d));
    const double pair_w = w / (2.0 * (n * (n - 1) / 2));
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            a[i] += pair_w * pair_povms[p].elements[0];
            a[j] += pair_w * pair_povms[p].elements[1];
            ++p;
        }
    return a;
}

// Same for the subset term at fixed subset POVMs.
std::vector<Mat> subset_ops(int n, int d, const std::vector<Povm>& subset_povms, double w) {
    std::vector<Mat> a(n, Mat::Zero(d, d));
    const double set_w = w / (static_cast<double>(n - 1) * n);
    for (int m = 1; m <= n - 1; ++m) {
        const auto subsets = lexicographic_subsets(n, m);
        const Povm& povm = subset_povms[m - 1];
        for (size_t s = 0; s < subsets.size(); ++s)
            for (int x : subsets[s]) a[x] += set_w * povm.elements[s];
    }
    return a;
}

// Exact value and optimizing POVMs of one of the two averaged terms.
struct TermEval {
    double value = 0.0;
    std::vector<Povm> povms;
};

TermEval eval_pairwise_term(const PreparationSet& preps) {
    const int n = preps.n();
    TermEval t;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            t.value += helstrom_pair(preps.states[i], preps.states[j]);
            t.povms.push_back(helstrom_povm(preps.states[i], preps.states[j]));
        }
    t.value /= n * (n - 1) / 2;
    return t;
}

TermEval eval_subset_term(const PreparationSet& preps, double tol) {
    const int n = preps.n();
    TermEval t;
    for (int m = 1; m <= n - 1; ++m) {
        const auto sdp = build_measurement_sdp(preps, subset_coefficients(n, m));
        SolverResult res = solve_measurement_sdp(sdp, tol);
        if (res.status != SolverStatus::Optimal)
            throw Error("subset SDP failed during see-saw evaluation");
        t.value += res.value;
        t.povms.push_back(std::move(res.povm));
    }
    t.value /= n - 1;
    return t;
}

PreparationSet top_projectors(const std::vector<Mat>& ops) {
    PreparationSet next;
    for (const Mat& g : ops) {
        Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (g + g.adjoint().eval())));
        const Vec top = es.eigenvectors().col(g.rows() - 1);  // eigenvalues ascending
        next.states.push_back(DensityOperator{top * top.adjoint()});
    }
    return next;
}

// Orthonormal Hermitian basis element k of dimension d (k < d*d).
Mat herm_basis(int d, int k) {
    Mat e = Mat::Zero(d, d);
    if (k < d) {
        e(k, k) = 1.0;
        return e;
    }
    int idx = d;
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            if (idx == k) {
                e(i, j) = s;
                e(j, i) = s;
                return e;
            }
            if (idx + 1 == k) {
                e(i, j) = Cplx(0.0, -s);
                e(j, i) = Cplx(0.0, s);
                return e;
            }
            idx += 2;
        }
    throw SizeMismatch("hermitian basis index out of range");
}

// Exact surrogate maximization, subset term kept exact via its dual:
//   max over states  sum_x tr(rho_x a_x) + (w_neg/(n-1)) sum_m tr(Y_m)
//   s.t. Y_m >= (1/n) sum_{x in S} rho_x for every m-subset S.
// (w_neg <= 0, so the Y part realizes w_neg * avg_set at the optimum.)
PreparationSet surrogate_states_subset(int n, int d, const std::vector<Mat>& a, double w_neg,
                                       double tol) {
    BlockSdp sdp;
    // blocks 0..n-1: states; n..2n-2: Y_m; then one slack per (m, S)
    for (int x = 0; x < n; ++x) {
        sdp.block_dims.push_back(d);
        sdp.objective.push_back(a[x]);
    }
    for (int m = 1; m <= n - 1; ++m) {
        sdp.block_dims.push_back(d);
        sdp.objective.push_back(w_neg / (n - 1) * Mat::Identity(d, d));
    }
    for (int x = 0; x < n; ++x) {
        BlockSdp::Constraint con;
        con.terms.emplace_back(x, Mat::Identity(d, d));
        con.rhs = 1.0;
        sdp.constraints.push_back(std::move(con));
    }
    for (int m = 1; m <= n - 1; ++m) {
        const int y_block = n + m - 1;
        for (const auto& subset : lexicographic_subsets(n, m)) {
            const int slack = static_cast<int>(sdp.block_dims.size());
            sdp.block_dims.push_back(d);
            sdp.objective.push_back(Mat::Zero(d, d));
            for (int k = 0; k < d * d; ++k) {
                const Mat e = herm_basis(d, k);
                BlockSdp::Constraint con;
                con.terms.emplace_back(y_block, e);
                for (int x : subset) con.terms.emplace_back(x, Mat(-e / n));
                con.terms.emplace_back(slack, Mat(-e));
                sdp.constraints.push_back(std::move(con));
            }
        }
    }
    BlockSdpResult res = solve_block_sdp(sdp, tol);
    if (res.status != SolverStatus::Optimal)
        throw Error("surrogate SDP failed during see-saw state step");
    PreparationSet next;
    for (int x = 0; x < n; ++x) {
        Mat rho = res.blocks[x];
        next.states.push_back(DensityOperator{rho / rho.trace().real()});
    }
    return next;
}

// Same with the pairwise term kept exact via trace-norm splittings:
//   max  sum_x tr(rho_x a_x) + (w_neg/(4C)) sum_{i<j} tr(P_ij + Q_ij)
//   s.t. rho_i - rho_j = P_ij - Q_ij, P, Q >= 0,   C = n(n-1)/2.
PreparationSet surrogate_states_pairwise(int n, int d, const std::vector<Mat>& a, double w_neg,
                                         double tol) {
    const int pairs = n * (n - 1) / 2;
    BlockSdp sdp;
    for (int x = 0; x < n; ++x) {
        sdp.block_dims.push_back(d);
        sdp.objective.push_back(a[x]);
    }
    for (int x = 0; x < n; ++x) {
        BlockSdp::Constraint con;
        con.terms.emplace_back(x, Mat::Identity(d, d));
        con.rhs = 1.0;
        sdp.constraints.push_back(std::move(con));
    }
    const Mat split_obj = w_neg / (4.0 * pairs) * Mat::Identity(d, d);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const int p_block = static_cast<int>(sdp.block_dims.size());
            sdp.block_dims.push_back(d);
            sdp.objective.push_back(split_obj);
            sdp.block_dims.push_back(d);
            sdp.objective.push_back(split_obj);
            for (int k = 0; k < d * d; ++k) {
                const Mat e = herm_basis(d, k);
                BlockSdp::Constraint con;
                con.terms.emplace_back(i, e);
                con.terms.emplace_back(j, Mat(-e));
                con.terms.emplace_back(p_block, Mat(-e));
                con.terms.emplace_back(p_block + 1, e);
                sdp.constraints.push_back(std::move(con));
            }
        }
    BlockSdpResult res = solve_block_sdp(sdp, tol);
    if (res.status != SolverStatus::Optimal)
        throw Error("surrogate SDP failed during see-saw state step");
    PreparationSet next;
    for (int x = 0; x < n; ++x) {
        Mat rho = res.blocks[x];
        next.states.push_back(DensityOperator{rho / rho.trace().real()});
    }
    return next;
}

struct RestartOutcome {
    PreparationSet preps;
    double objective = 0.0;
    std::vector<double> trace;
    bool ok = false;
};

// One restart of the alternating search. The objective is a difference of
// convex functions of the states (each averaged term is a max over fixed
// measurements), so the state step uses the standard convex-concave scheme:
// linearize the positively weighted term at its current optimizing
// measurements and keep the negatively weighted term exact. The resulting
// concave surrogate minorizes the objective and touches it at the current
// states, so each exact surrogate maximization (one small SDP) can only move
// up; the loop stops at a stationary configuration.
RestartOutcome run_restart(const SeesawConfig& config, double w_pair, double w_set,
                           std::uint64_t seed) {
    const bool pair_positive = w_pair > 0.0;
    const double w_pos = pair_positive ? w_pair : w_set;
    const double w_neg = pair_positive ? w_set : w_pair;  // <= 0

    RestartOutcome out;
    PreparationSet preps;
    TermEval pos, neg;
    try {
        for (int x = 0; x < config.n; ++x)
            preps.states.push_back(haar_random_pure(config.dim, derive_seed(seed, x)));
        pos = pair_positive ? eval_pairwise_term(preps)
                            : eval_subset_term(preps, config.solver_tol);
        neg = pair_positive ? eval_subset_term(preps, config.solver_tol)
                            : eval_pairwise_term(preps);
    } catch (const Error&) {
        out.ok = false;
        return out;
    }
    out.ok = true;
    out.preps = preps;
    out.objective = w_pos * pos.value + w_neg * neg.value;
    out.trace.push_back(out.objective);

    // a failed state step ends the restart but keeps the progress made so far
    try {
        for (int it = 0; it < config.max_iters; ++it) {
            const std::vector<Mat> a =
                pair_positive ? pairwise_ops(preps.n(), preps.dim(), pos.povms, w_pos)
                              : subset_ops(preps.n(), preps.dim(), pos.povms, w_pos);

            PreparationSet sigma;
            if (w_neg == 0.0) {
                // no exact term left: the surrogate is linear and its maximizer
                // is the top-eigenvector projector of each a_x
                sigma = top_projectors(a);
            } else if (pair_positive) {
                sigma = surrogate_states_subset(config.n, config.dim, a, w_neg,
                                                config.solver_tol);
            } else {
                sigma = surrogate_states_pairwise(config.n, config.dim, a, w_neg,
                                                  config.solver_tol);
            }

            // exact re-evaluation gates acceptance
            TermEval cand_pos = pair_positive ? eval_pairwise_term(sigma)
                                              : eval_subset_term(sigma, config.solver_tol);
            TermEval cand_neg = pair_positive ? eval_subset_term(sigma, config.solver_tol)
                                              : eval_pairwise_term(sigma);
            const double exact = w_pos * cand_pos.value + w_neg * cand_neg.value;
            if (exact < out.objective + config.improvement_tol) break;
            preps = std::move(sigma);
            pos = std::move(cand_pos);
            neg = std::move(cand_neg);
            out.preps = preps;
            out.objective = exact;
            out.trace.push_back(exact);
        }
    } catch (const Error&) {
    }
    return out;
}

}  // namespace

SeesawResult seesaw_weighted(const SeesawConfig& config, double w_pair, double w_set) {
    std::vector<RestartOutcome> outcomes(config.restarts);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < config.restarts; ++r)
        outcomes[r] = run_restart(config, w_pair, w_set, derive_seed(config.seed, 1000 + r));

    SeesawResult res;
    int best = -1;
    for (int r = 0; r < config.restarts; ++r) {
        if (!outcomes[r].ok) continue;
        ++res.restarts_used;
        if (best < 0 || outcomes[r].objective > outcomes[best].objective) best = r;
    }
    if (best < 0) throw Error("all see-saw restarts failed");
    res.best_preps = outcomes[best].preps;
    res.best_value = outcomes[best].objective;
    res.trace = outcomes[best].trace;
    return res;
}

SeesawResult seesaw_deviation(const SeesawConfig& config) {
    if (config.sign == SeesawSign::Positive) return seesaw_weighted(config, 1.0, -1.0);
    return seesaw_weighted(config, -1.0, 1.0);
}

std::vector<double> default_kappa_grid() {
    std::vector<double> grid{0.0};
    const double lo = 0.05, hi = 20.0;
    const int count = 21;
    for (int i = 0; i < count; ++i)
        grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    return grid;
}

std::vector<FrontierPoint> frontier_sweep(int n, int dim, const std::vector<double>& kappa_grid,
                                          const SeesawConfig& config) {
    if (kappa_grid.empty()) throw SizeMismatch("kappa grid is empty");
    SeesawConfig local = config;
    local.n = n;
    local.dim = dim;
    std::vector<FrontierPoint> points;
    std::uint64_t task = 0;
    for (double kappa : kappa_grid) {
        for (int orient = 0; orient < 2; ++orient) {
            SeesawConfig task_cfg = local;
            task_cfg.seed = derive_seed(config.seed, 7000 + task++);
            const double w_pair = orient == 0 ? 1.0 : -kappa;
            const double w_set = orient == 0 ? -kappa : 1.0;
            try {
                const SeesawResult res = seesaw_weighted(task_cfg, w_pair, w_set);
                const Evaluation ev =
                    evaluate(res.best_preps, w_pair, w_set, config.solver_tol);
                FrontierPoint pt;
                pt.kappa = kappa;
                pt.avg_set = ev.avg_set;
                pt.avg_pairwise = ev.avg_pairwise;
                pt.deviation = ev.avg_pairwise - ev.avg_set;
                pt.restarts_used = res.restarts_used;
                points.push_back(pt);
            } catch (const Error&) {
                // failed point recorded by omission; sweep continues
            }
        }
    }
    std::sort(points.begin(), points.end(),
              [](const FrontierPoint& a, const FrontierPoint& b) { return a.avg_set < b.avg_set; });
    return points;
}

std::vector<std::pair<int, double>> deviation_scaling(int n_min, int n_max, int dim,
                                                      const SeesawConfig& config) {
    std::vector<std::pair<int, double>> out;
    for (int n = n_min; n <= n_max; ++n) {
        SeesawConfig cfg = config;
        cfg.n = n;
        cfg.dim = dim;
        cfg.sign = SeesawSign::Positive;
        cfg.seed = derive_seed(config.seed, 9000 + static_cast<std::uint64_t>(n));
        try {
            out.emplace_back(n, seesaw_deviation(cfg).best_value);
        } catch (const Error&) {
            // per-n failure recorded as NaN
            out.emplace_back(n, std::numeric_limits<double>::quiet_NaN());
        }
    }
    return out;
}

}  // namespace qdev
