#include "qdev/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdev/errors.hpp"

namespace qdev {

int CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (first) {
            table.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        for (const auto& c : cells) {
            try {
                row.push_back(std::stod(c));
            } catch (const std::exception&) {
                throw Error("malformed CSV cell: " + c);
            }
        }
        if (row.size() != table.header.size()) throw Error("CSV row width mismatch");
        table.rows.push_back(std::move(row));
    }
    if (first) throw Error("CSV has no header");
    if (table.rows.empty()) throw Error("CSV has no data rows");
    return table;
}

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 640;
constexpr int kMargin = 60;

double scale(double v, double lo, double hi, double out_lo, double out_hi) {
    if (hi <= lo) return 0.5 * (out_lo + out_hi);
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
}

}  // namespace

std::string scatter_svg(const CsvTable& table) {
    const int cx = table.column("avg_set");
    const int cy = table.column("avg_pairwise");
    if (cx < 0 || cy < 0) throw Error("scatter CSV needs avg_set and avg_pairwise columns");

    double lo = 1e300, hi = -1e300;
    for (const auto& r : table.rows) {
        lo = std::min({lo, r[cx], r[cy]});
        hi = std::max({hi, r[cx], r[cy]});
    }
    const double pad = 0.05 * std::max(hi - lo, 1e-6);
    lo -= pad;
    hi += pad;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\">\n";
    svg << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
        << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    // identity diagonal (the equality satisfied by empirically complete models)
    svg << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
        << kWidth - kMargin << "\" y2=\"" << kMargin << "\" stroke=\"black\"/>\n";
    for (const auto& r : table.rows) {
        const double px = scale(r[cx], lo, hi, kMargin, kWidth - kMargin);
        const double py = scale(r[cy], lo, hi, kHeight - kMargin, kMargin);
        svg << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"3\" fill=\"green\"/>\n";
    }
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15
        << "\" text-anchor=\"middle\">avg_set</text>\n";
    svg << "<text x=\"15\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
        << kHeight / 2 << ")\">avg_pairwise</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

std::string bars_svg(const CsvTable& table) {
    if (table.header.size() < 2) throw Error("bars CSV needs at least two columns");
    const int cx = 0;
    const int cy = static_cast<int>(table.header.size()) - 1;
    double hi = 0.0;
    for (const auto& r : table.rows) hi = std::max(hi, r[cy]);
    if (hi <= 0.0) hi = 1.0;

    const int bars = static_cast<int>(table.rows.size());
    const double slot = static_cast<double>(kWidth - 2 * kMargin) / bars;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\">\n";
    for (int i = 0; i < bars; ++i) {
        const double h = scale(table.rows[i][cy], 0.0, hi, 0.0, kHeight - 2 * kMargin);
        const double x = kMargin + i * slot + 0.15 * slot;
        const double y = kHeight - kMargin - h;
        svg << "<rect class=\"bar\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << 0.7 * slot
            << "\" height=\"" << h << "\" fill=\"orange\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x + 0.35 * slot << "\" y=\"" << kHeight - kMargin + 20
            << "\" text-anchor=\"middle\">" << table.rows[i][cx] << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace qdev
