#pragma once

#include <utility>
#include <vector>

#include "qdev/sdp.hpp"

namespace qdev {

/// All operational distinguishability figures of one preparation set.
struct MetricsReport {
    int n = 0;
    int dim = 0;
    std::vector<double> pairwise;       // over pairs (i<j), lexicographic
    double avg_pairwise = 0.0;          // mean of pairwise
    std::vector<double> subset;         // D_{n,m} for m = 1..n-1
    double avg_set = 0.0;               // mean of subset
    double deviation = 0.0;             // avg_pairwise - avg_set
    std::vector<CertificateReport> certificates;
};

// Coefficient table for the m-subset guessing game: K = C(n,m) outcomes
// labelled by the m-subsets of [n] in lexicographic order, c = 1/n when the
// input index belongs to the outcome subset.
CoefficientTable subset_coefficients(int n, int m);

// Helstrom game for a pair: two outcomes, c[k][x] = delta_{k,x}/2.
CoefficientTable helstrom_coefficients();

// The m-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> lexicographic_subsets(int n, int m);

std::pair<double, SolverResult> subset_distinguishability(const PreparationSet& preps, int m,
                                                          double tol = 1e-9);

double average_set_distinguishability(const PreparationSet& preps, double tol = 1e-9);

// Mean Helstrom value over all pairs; each closed-form value is cross-checked
// against the SDP within 1e-6 (OracleMismatch otherwise).
double average_pairwise_distinguishability(const PreparationSet& preps, double tol = 1e-9);

MetricsReport deviation(const PreparationSet& preps, double tol = 1e-9);

}  // namespace qdev
