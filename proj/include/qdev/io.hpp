#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "qdev/realist.hpp"
#include "qdev/seesaw.hpp"

namespace qdev {

using Json = nlohmann::json;

// States file: {"dim": d, "states": [ [[ [re,im], ... ] ... ] ... ]}.
Json preparation_set_to_json(const PreparationSet& preps);
PreparationSet preparation_set_from_json(const Json& j, double tol = 1e-8);

// Ensemble file: {"L": L, "mus": [[p_1..p_L], ...]}.
Json ensemble_to_json(const EpistemicEnsemble& ens);
EpistemicEnsemble ensemble_from_json(const Json& j);

// Field names fixed by the report contract.
Json metrics_report_to_json(const MetricsReport& rep);

// 17 significant digits; round-trips exactly through decimal.
std::string format_double(double v);

std::string frontier_csv(const std::vector<FrontierPoint>& points);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace qdev
