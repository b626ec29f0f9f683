// Command-line front end: metrics for user-supplied or exemplar state sets,
// random scans, see-saw searches, realist property verification, and plotting.

#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "qdev/io.hpp"
#include "qdev/rng.hpp"
#include "qdev/svg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitContract = 4;

using qdev::Json;

struct ManifestWriter {
    std::string command;
    Json config = Json::object();
    std::string path;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void write() const {
        Json j{{"command", command},
               {"config", config},
               {"version", kVersion},
               {"duration_seconds",
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
               {"outputs", outputs}};
        qdev::write_file(path, j.dump(2) + "\n");
    }
};

void emit_error(const std::string& message, int code) {
    std::cerr << Json{{"error", message}, {"exit", code}}.dump() << "\n";
}

void emit(const std::string& content, const std::string& out_path, ManifestWriter& manifest) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        qdev::write_file(out_path, content);
        manifest.outputs.push_back(out_path);
    }
}

int run_metrics(const std::string& exemplar, const std::string& input, double tol,
                const std::string& out, ManifestWriter& manifest) {
    qdev::PreparationSet preps;
    if (!exemplar.empty()) {
        if (exemplar == "trine")
            preps = qdev::trine_states();
        else if (exemplar == "tetra")
            preps = qdev::tetrahedron_states();
        else {
            emit_error("unknown exemplar: " + exemplar, kExitInput);
            return kExitInput;
        }
    } else if (!input.empty()) {
        try {
            preps = qdev::preparation_set_from_json(Json::parse(qdev::read_file(input)));
        } catch (const std::exception& e) {
            emit_error(e.what(), kExitInput);
            return kExitInput;
        }
    } else {
        emit_error("metrics requires --exemplar or --input", kExitInput);
        return kExitInput;
    }

    try {
        const qdev::MetricsReport rep = qdev::deviation(preps, tol);
        emit(qdev::metrics_report_to_json(rep).dump(2) + "\n", out, manifest);
    } catch (const qdev::Error& e) {
        emit_error(e.what(), kExitSolver);
        return kExitSolver;
    }
    return 0;
}

int run_scan(int n, int dim, int samples, const std::string& measure, std::uint64_t seed,
             double tol, const std::string& out, ManifestWriter& manifest) {
    if (samples < 1 || n < 2 || dim < 2 || (measure != "pure" && measure != "mixed")) {
        emit_error("invalid scan parameters", kExitInput);
        return kExitInput;
    }
    std::vector<std::string> rows(samples);
    std::vector<int> failed(samples, 0);
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < samples; ++s) {
        try {
            qdev::PreparationSet preps;
            for (int x = 0; x < n; ++x) {
                const std::uint64_t st_seed =
                    qdev::derive_seed(seed, static_cast<std::uint64_t>(s) * 1000 + x);
                preps.states.push_back(measure == "pure" ? qdev::haar_random_pure(dim, st_seed)
                                                         : qdev::hs_random_mixed(dim, st_seed));
            }
            const qdev::MetricsReport rep = qdev::deviation(preps, tol);
            rows[s] = std::to_string(s) + "," + qdev::format_double(rep.avg_set) + "," +
                      qdev::format_double(rep.avg_pairwise) + "," +
                      qdev::format_double(rep.deviation) + "\n";
        } catch (const std::exception&) {
            failed[s] = 1;
        }
    }
    std::string csv = "sample_id,avg_set,avg_pairwise,deviation\n";
    int nfailed = 0;
    for (int s = 0; s < samples; ++s) {
        if (failed[s]) {
            ++nfailed;
            continue;
        }
        csv += rows[s];
    }
    if (nfailed > 0) std::cerr << "scan: " << nfailed << " samples skipped (solver failure)\n";
    emit(csv, out, manifest);
    return 0;
}

int run_seesaw(const qdev::SeesawConfig& cfg, const std::string& out,
               const std::string& states_out, ManifestWriter& manifest) {
    try {
        const qdev::SeesawResult res = qdev::seesaw_deviation(cfg);
        // consistency check against the full metrics path
        const qdev::MetricsReport rep = qdev::deviation(res.best_preps, cfg.solver_tol);
        const double signed_dev =
            cfg.sign == qdev::SeesawSign::Positive ? rep.deviation : -rep.deviation;
        Json j{{"n", cfg.n},
               {"dim", cfg.dim},
               {"sign", cfg.sign == qdev::SeesawSign::Positive ? "pos" : "neg"},
               {"best_value", res.best_value},
               {"deviation_check", signed_dev},
               {"trace", res.trace},
               {"restarts_used", res.restarts_used}};
        emit(j.dump(2) + "\n", out, manifest);
        if (!states_out.empty()) {
            qdev::write_file(states_out,
                             qdev::preparation_set_to_json(res.best_preps).dump(2) + "\n");
            manifest.outputs.push_back(states_out);
        }
    } catch (const qdev::Error& e) {
        emit_error(e.what(), kExitSolver);
        return kExitSolver;
    }
    return 0;
}

int run_verify(int samples, std::uint64_t seed, bool brute_force, const std::string& out,
               ManifestWriter& manifest) {
    if (samples < 1) {
        emit_error("verify requires samples >= 1", kExitInput);
        return kExitInput;
    }
    double max_equality_residual = 0.0;
    for (int s = 0; s < samples; ++s) {
        const std::uint64_t sub = qdev::derive_seed(seed, s);
        const int n = 2 + static_cast<int>(sub % 5);             // 2..6
        const int L = 2 + static_cast<int>((sub >> 8) % 11);     // 2..12
        const auto ens = qdev::random_ensemble(n, L, qdev::derive_seed(seed, 100000 + s));
        max_equality_residual = std::max(max_equality_residual, qdev::equality_audit(ens));
    }

    double max_lemma_residual = 0.0;
    auto eng = qdev::make_engine(qdev::derive_seed(seed, 424242));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> pick_n(2, 10);
    for (int s = 0; s < samples; ++s) {
        const int n = pick_n(eng);
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = gauss(eng);
        if (s % 3 == 0 && n >= 2) v(n - 1) = v(0);  // force ties
        const auto [lhs, rhs] = qdev::lemma_identity_check(v);
        const double scale = std::max(1.0, std::abs(lhs));
        max_lemma_residual = std::max(max_lemma_residual, std::abs(lhs - rhs) / scale);
    }

    bool oracle_agreement = true;
    double max_oracle_gap = 0.0;
    if (brute_force) {
        for (int s = 0; s < 20; ++s) {
            const std::uint64_t sub = qdev::derive_seed(seed, 777000 + s);
            const int n = 2 + static_cast<int>(sub % 4);          // 2..5
            const int L = 2 + static_cast<int>((sub >> 8) % 5);   // 2..6
            const auto ens = qdev::random_ensemble(n, L, qdev::derive_seed(seed, 888000 + s));
            for (int m = 1; m <= n - 1; ++m) {
                const auto coeffs = qdev::subset_coefficients(n, m);
                if (coeffs.outcomes() > 6) continue;
                const double exact = qdev::optimal_realist_value(ens, coeffs).first;
                const double brute = qdev::brute_force_realist_value(ens, coeffs);
                const double gap = std::abs(exact - brute);
                max_oracle_gap = std::max(max_oracle_gap, gap);
                if (gap > 1e-12) oracle_agreement = false;
            }
        }
    }

    const bool ok = max_equality_residual <= 1e-12 * 6 && max_lemma_residual <= 1e-10 &&
                    oracle_agreement;
    Json j{{"samples", samples},
           {"max_equality_residual", max_equality_residual},
           {"max_lemma_residual", max_lemma_residual},
           {"brute_force_checked", brute_force},
           {"oracle_agreement", oracle_agreement},
           {"max_oracle_gap", max_oracle_gap},
           {"ok", ok}};
    emit(j.dump(2) + "\n", out, manifest);
    if (!ok) {
        emit_error("realist property contract violated", kExitContract);
        return kExitContract;
    }
    return 0;
}

int run_plot(const std::string& in, const std::string& out, const std::string& kind,
             ManifestWriter& manifest) {
    try {
        const qdev::CsvTable table = qdev::parse_csv(qdev::read_file(in));
        const std::string svg = kind == "bars" ? qdev::bars_svg(table) : qdev::scatter_svg(table);
        emit(svg, out, manifest);
    } catch (const std::exception& e) {
        emit_error(e.what(), kExitInput);
        return kExitInput;
    }
    return 0;
}

int run_frontier(int n, int dim, const qdev::SeesawConfig& cfg, const std::string& out,
                 ManifestWriter& manifest) {
    try {
        const auto points = qdev::frontier_sweep(n, dim, qdev::default_kappa_grid(), cfg);
        emit(qdev::frontier_csv(points), out, manifest);
    } catch (const qdev::Error& e) {
        emit_error(e.what(), kExitSolver);
        return kExitSolver;
    }
    return 0;
}

int run_scaling(int n_min, int n_max, int dim, const qdev::SeesawConfig& cfg,
                const std::string& out, ManifestWriter& manifest) {
    if (n_min < 3 || n_max > 8 || n_min > n_max) {
        emit_error("scaling requires 3 <= n-min <= n-max <= 8", kExitInput);
        return kExitInput;
    }
    try {
        const auto values = qdev::deviation_scaling(n_min, n_max, dim, cfg);
        std::string csv = "n,deviation_lb\n";
        for (const auto& [n, v] : values)
            csv += std::to_string(n) + "," + qdev::format_double(v) + "\n";
        emit(csv, out, manifest);
    } catch (const qdev::Error& e) {
        emit_error(e.what(), kExitSolver);
        return kExitSolver;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Operational distinguishability metrics, realist audits and see-saw searches"};
    app.require_subcommand(1);

    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::string out, manifest_path;

    // metrics
    auto* metrics = app.add_subcommand("metrics", "Metrics report for a preparation set");
    std::string exemplar, input;
    metrics->add_option("--exemplar", exemplar, "trine or tetra");
    metrics->add_option("--input", input, "states JSON file");
    metrics->add_option("--tol", tol);
    metrics->add_option("--out", out);
    metrics->add_option("--manifest", manifest_path);

    // scan
    auto* scan = app.add_subcommand("scan", "Random-sample scan of the deviation");
    int n = 3, dim = 2, samples = 100;
    std::string measure = "pure";
    scan->add_option("--n", n);
    scan->add_option("--dim", dim);
    scan->add_option("--samples", samples);
    scan->add_option("--measure", measure, "pure or mixed");
    scan->add_option("--seed", seed);
    scan->add_option("--tol", tol);
    scan->add_option("--out", out);
    scan->add_option("--manifest", manifest_path);

    // seesaw
    auto* seesaw = app.add_subcommand("seesaw", "Restarted see-saw search for extremal deviation");
    std::string sign = "pos", states_out;
    int restarts = 20, iters = 100;
    seesaw->add_option("--n", n);
    seesaw->add_option("--dim", dim);
    seesaw->add_option("--sign", sign, "pos or neg");
    seesaw->add_option("--restarts", restarts);
    seesaw->add_option("--iters", iters);
    seesaw->add_option("--seed", seed);
    seesaw->add_option("--tol", tol);
    seesaw->add_option("--out", out);
    seesaw->add_option("--states-out", states_out);
    seesaw->add_option("--manifest", manifest_path);

    // verify
    auto* verify = app.add_subcommand("verify", "Realist equality / identity property suite");
    bool brute = true;
    verify->add_option("--samples", samples);
    verify->add_option("--seed", seed);
    verify->add_flag("--brute-force,!--no-brute-force", brute);
    verify->add_option("--out", out);
    verify->add_option("--manifest", manifest_path);

    // plot
    auto* plot = app.add_subcommand("plot", "Render a CSV as SVG");
    std::string in_path, kind = "scatter";
    plot->add_option("--in", in_path)->required();
    plot->add_option("--out", out)->required();
    plot->add_option("--kind", kind, "scatter or bars");
    plot->add_option("--manifest", manifest_path);

    // frontier
    auto* frontier = app.add_subcommand("frontier", "Scalarized distinguishability frontier");
    frontier->add_option("--n", n);
    frontier->add_option("--dim", dim);
    frontier->add_option("--restarts", restarts);
    frontier->add_option("--iters", iters);
    frontier->add_option("--seed", seed);
    frontier->add_option("--tol", tol);
    frontier->add_option("--out", out);
    frontier->add_option("--manifest", manifest_path);

    // scaling
    auto* scaling = app.add_subcommand("scaling", "Best deviation lower bound per n");
    int n_min = 3, n_max = 5;
    scaling->add_option("--n-min", n_min);
    scaling->add_option("--n-max", n_max);
    scaling->add_option("--dim", dim);
    scaling->add_option("--restarts", restarts);
    scaling->add_option("--iters", iters);
    scaling->add_option("--seed", seed);
    scaling->add_option("--tol", tol);
    scaling->add_option("--out", out);
    scaling->add_option("--manifest", manifest_path);

    CLI11_PARSE(app, argc, argv);

    auto* sub = app.get_subcommands().front();
    ManifestWriter manifest;
    manifest.command = sub->get_name();
    manifest.path = manifest_path.empty() ? sub->get_name() + ".manifest.json" : manifest_path;
    manifest.config = Json{{"tol", tol}, {"seed", seed}};

    qdev::SeesawConfig cfg;
    cfg.n = n;
    cfg.dim = dim;
    cfg.restarts = restarts;
    cfg.max_iters = iters;
    cfg.solver_tol = tol;
    cfg.seed = seed;
    cfg.sign = sign == "neg" ? qdev::SeesawSign::Negative : qdev::SeesawSign::Positive;

    int rc = 0;
    if (sub == metrics) {
        manifest.config.update(Json{{"exemplar", exemplar}, {"input", input}});
        rc = run_metrics(exemplar, input, tol, out, manifest);
    } else if (sub == scan) {
        manifest.config.update(
            Json{{"n", n}, {"dim", dim}, {"samples", samples}, {"measure", measure}});
        rc = run_scan(n, dim, samples, measure, seed, tol, out, manifest);
    } else if (sub == seesaw) {
        manifest.config.update(
            Json{{"n", n}, {"dim", dim}, {"sign", sign}, {"restarts", restarts}, {"iters", iters}});
        rc = run_seesaw(cfg, out, states_out, manifest);
    } else if (sub == verify) {
        manifest.config.update(Json{{"samples", samples}, {"brute_force", brute}});
        rc = run_verify(samples, seed, brute, out, manifest);
    } else if (sub == plot) {
        manifest.config.update(Json{{"in", in_path}, {"kind", kind}});
        rc = run_plot(in_path, out, kind, manifest);
    } else if (sub == frontier) {
        manifest.config.update(
            Json{{"n", n}, {"dim", dim}, {"restarts", restarts}, {"iters", iters}});
        rc = run_frontier(n, dim, cfg, out, manifest);
    } else if (sub == scaling) {
        manifest.config.update(Json{{"n_min", n_min},
                                    {"n_max", n_max},
                                    {"dim", dim},
                                    {"restarts", restarts},
                                    {"iters", iters}});
        rc = run_scaling(n_min, n_max, dim, cfg, out, manifest);
    }

    try {
        manifest.write();
    } catch (const std::exception& e) {
        std::cerr << "warning: could not write manifest: " << e.what() << "\n";
    }
    return rc;
}
