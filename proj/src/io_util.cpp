// SPDX-License-Identifier: Apache-2.0

#include "io_util.hpp"

#include "luc/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace luc::detail {

std::string format17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path + "' failed");
}

nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_csv(const std::string& path, const DenseMatrix& m, const std::vector<std::string>& header)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    if (!header.empty()) out << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format17(m(i, j));
        out << '\n';
    }
    if (!out) throw IoError("write to '" + path + "' failed");
}

DenseMatrix read_csv(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str()) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (rows.empty()) continue; // header
            throw IoError(path + ": non-numeric cell");
        }
        if (!rows.empty() && row.size() != rows.front().size()) throw IoError(path + ": ragged rows");
        rows.push_back(std::move(row));
    }
    DenseMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

nlohmann::json matrix_to_json(const DenseMatrix& m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return rows;
}

DenseMatrix matrix_from_json(const nlohmann::json& j)
{
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j.at(0).size() : 0;
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j.at(i).size() != cols) throw IoError("ragged matrix in JSON");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<double>();
    }
    return m;
}

} // namespace luc::detail
