#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "qdev/metrics.hpp"

namespace qdev {

struct OnticSpace {
    int size = 1;  // number of ontic states lambda
};

/// A probability distribution over the ontic space.
struct EpistemicState {
    Eigen::VectorXd probs;
};

struct EpistemicEnsemble {
    OnticSpace space;
    std::vector<EpistemicState> mus;
    int n() const { return static_cast<int>(mus.size()); }
    int L() const { return space.size; }
};

/// Conditional outcome distribution xi[k][lambda]; nonnegative, sums to 1
/// over k for every lambda.
struct ResponseScheme {
    std::vector<Eigen::VectorXd> xi;  // K rows of length L
};

// Exact optimum of the not-fine-tuned property: sum over lambda of
// max_k sum_x c[k][x] mu_x(lambda). Ties break toward the lowest outcome index.
std::pair<double, ResponseScheme> optimal_realist_value(const EpistemicEnsemble& ens,
                                                        const CoefficientTable& coeffs);

// Success metric of an explicit response scheme (no optimization).
double response_scheme_value(const EpistemicEnsemble& ens, const CoefficientTable& coeffs,
                             const ResponseScheme& scheme);

// Sum of the m largest entries.
double top_m_sum(const Eigen::VectorXd& values, int m);

// lhs = sum_{i<j} max(u_i,u_j); rhs = sum_{m=1}^{n-1} top_m_sum(u, m).
std::pair<double, double> lemma_identity_check(const Eigen::VectorXd& values);

// Exact realist metrics via pointwise-max sums (no SDP). OpenMP-parallel over
// blocks of lambda with a fixed blocked reduction, so results are
// run-to-run deterministic.
MetricsReport realist_metrics(const EpistemicEnsemble& ens);

// Plain serial loop kept as the reference implementation for tests and the
// benchmark.
MetricsReport realist_metrics_serial(const EpistemicEnsemble& ens);

// d-levelled classical communication value; the message alphabet is the ontic
// space. Identical to optimal_realist_value on the same data.
double classical_channel_value(const EpistemicEnsemble& encodings, const CoefficientTable& coeffs);

// |avg_pairwise - avg_set| of realist_metrics; zero for every valid ensemble
// up to floating point.
double equality_audit(const EpistemicEnsemble& ens);

// Dirichlet(1,..,1) ensemble for property tests.
EpistemicEnsemble random_ensemble(int n, int L, std::uint64_t seed);

// Exhaustive maximum over all K^L deterministic response schemes. Independent
// cross-check of optimal_realist_value; only feasible for small K and L.
double brute_force_realist_value(const EpistemicEnsemble& ens, const CoefficientTable& coeffs);

}  // namespace qdev
