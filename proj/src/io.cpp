#include "qdev/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qdev {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json preparation_set_to_json(const PreparationSet& preps) {
    Json states = Json::array();
    for (const auto& st : preps.states) {
        Json rows = Json::array();
        for (int i = 0; i < st.dim(); ++i) {
            Json row = Json::array();
            for (int j = 0; j < st.dim(); ++j)
                row.push_back({st.matrix(i, j).real(), st.matrix(i, j).imag()});
            rows.push_back(row);
        }
        states.push_back(rows);
    }
    return Json{{"dim", preps.dim()}, {"states", states}};
}

PreparationSet preparation_set_from_json(const Json& j, double tol) {
    if (!j.contains("dim") || !j.contains("states"))
        throw Error("states JSON must contain 'dim' and 'states'");
    const int d = j.at("dim").get<int>();
    PreparationSet preps;
    for (const auto& rows : j.at("states")) {
        if (static_cast<int>(rows.size()) != d) throw Error("state row count does not match dim");
        Mat m(d, d);
        for (int i = 0; i < d; ++i) {
            const auto& row = rows.at(i);
            if (static_cast<int>(row.size()) != d)
                throw Error("state column count does not match dim");
            for (int k = 0; k < d; ++k) {
                const auto& entry = row.at(k);
                if (entry.size() != 2) throw Error("matrix entries must be [re, im] pairs");
                m(i, k) = Cplx(entry.at(0).get<double>(), entry.at(1).get<double>());
            }
        }
        preps.states.push_back(validate_density(m, tol));
    }
    if (preps.n() < 2) throw Error("states file must contain at least two states");
    return preps;
}

Json ensemble_to_json(const EpistemicEnsemble& ens) {
    Json mus = Json::array();
    for (const auto& mu : ens.mus) {
        Json row = Json::array();
        for (int i = 0; i < mu.probs.size(); ++i) row.push_back(mu.probs(i));
        mus.push_back(row);
    }
    return Json{{"L", ens.L()}, {"mus", mus}};
}

EpistemicEnsemble ensemble_from_json(const Json& j) {
    if (!j.contains("L") || !j.contains("mus"))
        throw Error("ensemble JSON must contain 'L' and 'mus'");
    EpistemicEnsemble ens;
    ens.space.size = j.at("L").get<int>();
    for (const auto& row : j.at("mus")) {
        if (static_cast<int>(row.size()) != ens.space.size)
            throw Error("epistemic state length does not match L");
        Eigen::VectorXd p(ens.space.size);
        double sum = 0.0;
        for (int i = 0; i < ens.space.size; ++i) {
            p(i) = row.at(i).get<double>();
            if (p(i) < 0.0) throw Error("epistemic state has negative probability");
            sum += p(i);
        }
        if (std::abs(sum - 1.0) > 1e-9) throw Error("epistemic state does not sum to 1");
        ens.mus.push_back(EpistemicState{p});
    }
    return ens;
}

Json metrics_report_to_json(const MetricsReport& rep) {
    return Json{{"n", rep.n},
                {"dim", rep.dim},
                {"pairwise", rep.pairwise},
                {"avg_pairwise", rep.avg_pairwise},
                {"subset", rep.subset},
                {"avg_set", rep.avg_set},
                {"deviation", rep.deviation}};
}

std::string frontier_csv(const std::vector<FrontierPoint>& points) {
    std::ostringstream os;
    os << "kappa,avg_set,avg_pairwise,deviation,restarts_used\n";
    for (const auto& p : points)
        os << format_double(p.kappa) << ',' << format_double(p.avg_set) << ','
           << format_double(p.avg_pairwise) << ',' << format_double(p.deviation) << ','
           << p.restarts_used << '\n';
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace qdev
