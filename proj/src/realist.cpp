#include "qdev/realist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qdev/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qdev {

namespace {

// Neumaier compensated accumulator.
struct CompSum {
    double s = 0.0;
    double c = 0.0;
    void add(double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

void check_ensemble(const EpistemicEnsemble& ens) {
    if (ens.n() < 1) throw SizeMismatch("ensemble is empty");
    for (const auto& mu : ens.mus)
        if (mu.probs.size() != ens.L())
            throw SizeMismatch("epistemic state length does not match ontic space");
}

// Per-lambda contributions of one block of ontic states: pairwise maxima and
// the top-m partial sums, compensated within the block.
struct BlockAccum {
    std::vector<CompSum> pairwise;  // C(n,2)
    std::vector<CompSum> subset;    // n-1
};

BlockAccum metrics_block(const EpistemicEnsemble& ens, int lo, int hi) {
    const int n = ens.n();
    BlockAccum acc;
    acc.pairwise.resize(n * (n - 1) / 2);
    acc.subset.resize(n - 1);
    std::vector<double> u(n), sorted(n);
    for (int lam = lo; lam < hi; ++lam) {
        for (int x = 0; x < n; ++x) u[x] = ens.mus[x].probs(lam);
        int p = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) acc.pairwise[p++].add(std::max(u[i], u[j]));
        sorted = u;
        std::sort(sorted.begin(), sorted.end(), std::greater<double>());
        double prefix = 0.0;
        for (int m = 1; m <= n - 1; ++m) {
            prefix += sorted[m - 1];
            acc.subset[m - 1].add(prefix);
        }
    }
    return acc;
}

MetricsReport assemble_report(const EpistemicEnsemble& ens, const std::vector<BlockAccum>& blocks) {
    const int n = ens.n();
    MetricsReport rep;
    rep.n = n;
    rep.dim = ens.L();
    const int npairs = n * (n - 1) / 2;
    rep.pairwise.assign(npairs, 0.0);
    rep.subset.assign(n - 1, 0.0);
    for (int p = 0; p < npairs; ++p) {
        CompSum total;
        for (const auto& b : blocks) total.add(b.pairwise[p].value());
        rep.pairwise[p] = 0.5 * total.value();
    }
    for (int m = 0; m < n - 1; ++m) {
        CompSum total;
        for (const auto& b : blocks) total.add(b.subset[m].value());
        rep.subset[m] = total.value() / n;
    }
    rep.avg_pairwise =
        std::accumulate(rep.pairwise.begin(), rep.pairwise.end(), 0.0) / rep.pairwise.size();
    rep.avg_set = std::accumulate(rep.subset.begin(), rep.subset.end(), 0.0) / rep.subset.size();
    rep.deviation = rep.avg_pairwise - rep.avg_set;
    return rep;
}

}  // namespace

std::pair<double, ResponseScheme> optimal_realist_value(const EpistemicEnsemble& ens,
                                                        const CoefficientTable& coeffs) {
    check_ensemble(ens);
    if (coeffs.n != ens.n()) throw SizeMismatch("coefficient table n does not match ensemble");
    const int big_k = coeffs.outcomes();
    const int L = ens.L();
    ResponseScheme scheme;
    scheme.xi.assign(big_k, Eigen::VectorXd::Zero(L));
    CompSum total;
    for (int lam = 0; lam < L; ++lam) {
        double best = -std::numeric_limits<double>::infinity();
        int best_k = 0;
        for (int k = 0; k < big_k; ++k) {
            double score = 0.0;
            for (int x = 0; x < coeffs.n; ++x) score += coeffs.c[k][x] * ens.mus[x].probs(lam);
            if (score > best) {
                best = score;
                best_k = k;
            }
        }
        scheme.xi[best_k](lam) = 1.0;
        total.add(best);
    }
    return {total.value(), std::move(scheme)};
}

double response_scheme_value(const EpistemicEnsemble& ens, const CoefficientTable& coeffs,
                             const ResponseScheme& scheme) {
    check_ensemble(ens);
    if (coeffs.n != ens.n()) throw SizeMismatch("coefficient table n does not match ensemble");
    CompSum total;
    for (int lam = 0; lam < ens.L(); ++lam)
        for (int k = 0; k < coeffs.outcomes(); ++k) {
            double score = 0.0;
            for (int x = 0; x < coeffs.n; ++x) score += coeffs.c[k][x] * ens.mus[x].probs(lam);
            total.add(score * scheme.xi[k](lam));
        }
    return total.value();
}

double top_m_sum(const Eigen::VectorXd& values, int m) {
    if (m < 1 || m > values.size()) throw BadM("m out of range for top_m_sum");
    std::vector<double> v(values.data(), values.data() + values.size());
    std::nth_element(v.begin(), v.begin() + (m - 1), v.end(), std::greater<double>());
    CompSum s;
    for (int i = 0; i < m; ++i) s.add(v[i]);
    return s.value();
}

std::pair<double, double> lemma_identity_check(const Eigen::VectorXd& values) {
    const int n = static_cast<int>(values.size());
    CompSum lhs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) lhs.add(std::max(values(i), values(j)));
    CompSum rhs;
    for (int m = 1; m <= n - 1; ++m) rhs.add(top_m_sum(values, m));
    return {lhs.value(), rhs.value()};
}

MetricsReport realist_metrics(const EpistemicEnsemble& ens) {
    check_ensemble(ens);
    const int L = ens.L();
    // Fixed block count keeps the reduction order independent of the thread
    // count; each block is combined serially afterwards.
    const int nblocks = std::min(L, 64);
    std::vector<BlockAccum> blocks(nblocks);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nblocks; ++b) {
        const int lo = static_cast<int>(static_cast<long long>(L) * b / nblocks);
        const int hi = static_cast<int>(static_cast<long long>(L) * (b + 1) / nblocks);
        blocks[b] = metrics_block(ens, lo, hi);
    }
    return assemble_report(ens, blocks);
}

MetricsReport realist_metrics_serial(const EpistemicEnsemble& ens) {
    check_ensemble(ens);
    std::vector<BlockAccum> blocks{metrics_block(ens, 0, ens.L())};
    return assemble_report(ens, blocks);
}

double classical_channel_value(const EpistemicEnsemble& encodings,
                               const CoefficientTable& coeffs) {
    // The message is the state of reality; the optimal decoder is the
    // pointwise-max response scheme.
    return optimal_realist_value(encodings, coeffs).first;
}

double equality_audit(const EpistemicEnsemble& ens) {
    const MetricsReport rep = realist_metrics(ens);
    return std::abs(rep.avg_pairwise - rep.avg_set);
}

double brute_force_realist_value(const EpistemicEnsemble& ens, const CoefficientTable& coeffs) {
    check_ensemble(ens);
    if (coeffs.n != ens.n()) throw SizeMismatch("coefficient table n does not match ensemble");
    const int big_k = coeffs.outcomes();
    const int L = ens.L();
    double total_assignments = std::pow(static_cast<double>(big_k), L);
    if (total_assignments > 2e7) throw Error("brute-force enumeration too large");

    // score[k][lam] = sum_x c[k][x] mu_x(lam)
    std::vector<std::vector<double>> score(big_k, std::vector<double>(L, 0.0));
    for (int k = 0; k < big_k; ++k)
        for (int lam = 0; lam < L; ++lam)
            for (int x = 0; x < coeffs.n; ++x)
                score[k][lam] += coeffs.c[k][x] * ens.mus[x].probs(lam);

    std::vector<int> assign(L, 0);
    double best = -std::numeric_limits<double>::infinity();
    while (true) {
        double v = 0.0;
        for (int lam = 0; lam < L; ++lam) v += score[assign[lam]][lam];
        best = std::max(best, v);
        int pos = L - 1;
        while (pos >= 0 && assign[pos] == big_k - 1) assign[pos--] = 0;
        if (pos < 0) break;
        ++assign[pos];
    }
    return best;
}

EpistemicEnsemble random_ensemble(int n, int L, std::uint64_t seed) {
    auto eng = make_engine(seed);
    std::exponential_distribution<double> expo(1.0);
    EpistemicEnsemble ens;
    ens.space.size = L;
    for (int x = 0; x < n; ++x) {
        Eigen::VectorXd p(L);
        for (int lam = 0; lam < L; ++lam) p(lam) = expo(eng);
        p /= p.sum();
        ens.mus.push_back(EpistemicState{p});
    }
    return ens;
}

}  // namespace qdev
