#include "sgm/csvio.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "sgm/errors.hpp"

namespace sgm {

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim whitespace and a possible trailing \r
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::size_t used = 0;
    try {
        out = std::stod(s, &used);
    } catch (...) {
        return false;
    }
    return used == s.size();
}

} // namespace

CsvTable ingest_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);

    std::vector<std::vector<double>> rows;
    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    bool saw_any = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_row(line);
        if (!saw_any) {
            saw_any = true;
            width = cells.size();
            double tmp;
            bool numeric = true;
            for (const auto& c : cells) {
                if (!parse_double(c, tmp)) {
                    numeric = false;
                    break;
                }
            }
            if (!numeric) {
                table.column_names = cells;
                continue;
            }
        }
        if (cells.size() != width) {
            throw ParseError(path + ": row " + std::to_string(lineno) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(width));
        }
        std::vector<double> row(width);
        for (std::size_t c = 0; c < width; ++c) {
            double v;
            if (!parse_double(cells[c], v)) {
                throw ParseError(path + ": non-numeric cell at row " + std::to_string(lineno) +
                                 ", column " + std::to_string(c + 1) + " ('" + cells[c] + "')");
            }
            if (!std::isfinite(v)) {
                throw ParseError(path + ": non-finite cell at row " + std::to_string(lineno) +
                                 ", column " + std::to_string(c + 1));
            }
            row[c] = v;
        }
        rows.push_back(std::move(row));
    }

    if (rows.size() < 4) {
        throw ParseError(path + ": need at least 4 data rows, got " +
                         std::to_string(rows.size()));
    }
    if (width < 3) {
        throw ParseError(path + ": need at least 3 columns, got " + std::to_string(width));
    }

    table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return table;
}

void write_csv(const std::string& path, const Eigen::MatrixXd& values,
               const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << std::setprecision(12);
    if (!header.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            out << (c ? "," : "") << header[c];
        }
        out << '\n';
    }
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            out << (c ? "," : "") << values(r, c);
        }
        out << '\n';
    }
}

} // namespace sgm
