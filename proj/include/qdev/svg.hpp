#pragma once

#include <string>
#include <vector>

namespace qdev {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    int column(const std::string& name) const;  // -1 when absent
};

CsvTable parse_csv(const std::string& text);

// Scatter of (avg_set, avg_pairwise) with the identity diagonal drawn as a
// single line element.
std::string scatter_svg(const CsvTable& table);

// Bar chart of the last column against the first (deviation vs n).
std::string bars_svg(const CsvTable& table);

}  // namespace qdev
