#include "qdev/metrics.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace qdev {

std::vector<std::vector<int>> lexicographic_subsets(int n, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(m);
    for (int i = 0; i < m; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = m - 1;
        while (i >= 0 && cur[i] == n - m + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < m; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

namespace {

std::string subset_label(const std::vector<int>& s) {
    std::string label = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) label += ",";
        label += std::to_string(s[i] + 1);
    }
    return label + "}";
}

}  // namespace

CoefficientTable subset_coefficients(int n, int m) {
    if (m < 1 || m > n - 1) throw BadM("m must satisfy 1 <= m <= n-1");
    CoefficientTable t;
    t.n = n;
    const double w = 1.0 / n;
    for (const auto& s : lexicographic_subsets(n, m)) {
        t.outcome_labels.push_back(subset_label(s));
        std::vector<double> row(n, 0.0);
        for (int x : s) row[x] = w;
        t.c.push_back(std::move(row));
    }
    return t;
}

CoefficientTable helstrom_coefficients() {
    CoefficientTable t;
    t.n = 2;
    t.outcome_labels = {"1", "2"};
    t.c = {{0.5, 0.0}, {0.0, 0.5}};
    return t;
}

std::pair<double, SolverResult> subset_distinguishability(const PreparationSet& preps, int m,
                                                          double tol) {
    const auto sdp = build_measurement_sdp(preps, subset_coefficients(preps.n(), m));
    SolverResult res = solve_measurement_sdp(sdp, tol);
    if (res.status != SolverStatus::Optimal)
        throw Error(std::string("subset distinguishability solve failed: ") +
                    to_string(res.status));
    return {res.value, std::move(res)};
}

double average_set_distinguishability(const PreparationSet& preps, double tol) {
    const int n = preps.n();
    double sum = 0.0;
    for (int m = 1; m <= n - 1; ++m) sum += subset_distinguishability(preps, m, tol).first;
    return sum / (n - 1);
}

double average_pairwise_distinguishability(const PreparationSet& preps, double tol) {
    const int n = preps.n();
    double sum = 0.0;
    int pairs = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double closed = helstrom_pair(preps.states[i], preps.states[j]);
            PreparationSet pair;
            pair.states = {preps.states[i], preps.states[j]};
            const auto sdp = build_measurement_sdp(pair, helstrom_coefficients());
            const SolverResult res = solve_measurement_sdp(sdp, tol);
            if (res.status != SolverStatus::Optimal || std::abs(res.value - closed) > 1e-6)
                throw OracleMismatch("SDP pairwise value disagrees with Helstrom closed form");
            sum += closed;
            ++pairs;
        }
    return sum / pairs;
}

MetricsReport deviation(const PreparationSet& preps, double tol) {
    const int n = preps.n();
    MetricsReport rep;
    rep.n = n;
    rep.dim = preps.dim();

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double closed = helstrom_pair(preps.states[i], preps.states[j]);
            PreparationSet pair;
            pair.states = {preps.states[i], preps.states[j]};
            const auto sdp = build_measurement_sdp(pair, helstrom_coefficients());
            const SolverResult res = solve_measurement_sdp(sdp, tol);
            if (res.status != SolverStatus::Optimal || std::abs(res.value - closed) > 1e-6)
                throw OracleMismatch("SDP pairwise value disagrees with Helstrom closed form");
            rep.certificates.push_back(verify_certificate(res, sdp, 1e-7));
            rep.pairwise.push_back(closed);
        }
    rep.avg_pairwise =
        std::accumulate(rep.pairwise.begin(), rep.pairwise.end(), 0.0) / rep.pairwise.size();

    for (int m = 1; m <= n - 1; ++m) {
        const auto sdp = build_measurement_sdp(preps, subset_coefficients(n, m));
        SolverResult res = solve_measurement_sdp(sdp, tol);
        if (res.status != SolverStatus::Optimal)
            throw Error(std::string("subset distinguishability solve failed: ") +
                        to_string(res.status));
        rep.certificates.push_back(verify_certificate(res, sdp, 1e-7));
        rep.subset.push_back(res.value);
    }
    rep.avg_set =
        std::accumulate(rep.subset.begin(), rep.subset.end(), 0.0) / rep.subset.size();
    rep.deviation = rep.avg_pairwise - rep.avg_set;
    return rep;
}

}  // namespace qdev
