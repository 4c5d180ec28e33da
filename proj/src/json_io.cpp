#include "shs/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace shs {

json matrix_to_json(const CMat& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            data.push_back({m(i, k).real(), m(i, k).imag()});
    j["data"] = std::move(data);
    return j;
}

CMat matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
        !j.contains("data"))
        throw ParseError("matrix object needs rows, cols and data fields");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw ParseError("matrix rows/cols must be integers");
    const auto rows = j["rows"].get<Eigen::Index>();
    const auto cols = j["cols"].get<Eigen::Index>();
    if (rows < 1 || cols < 1)
        throw ParseError("matrix dimensions must be at least 1x1");
    const auto& data = j["data"];
    if (!data.is_array() ||
        data.size() != static_cast<std::size_t>(rows * cols)) {
        std::ostringstream os;
        os << "matrix data must hold exactly rows*cols = " << rows * cols
           << " entries, got " << (data.is_array() ? data.size() : 0);
        throw ParseError(os.str());
    }
    CMat m(rows, cols);
    std::size_t idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index k = 0; k < cols; ++k, ++idx) {
            const auto& cell = data[idx];
            if (!cell.is_array() || cell.size() != 2 ||
                !cell[0].is_number() || !cell[1].is_number()) {
                std::ostringstream os;
                os << "matrix entry " << idx << " must be a [re, im] pair";
                throw ParseError(os.str());
            }
            const double re = cell[0].get<double>();
            const double im = cell[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im)) {
                std::ostringstream os;
                os << "matrix entry " << idx << " is not finite";
                throw ParseError(os.str());
            }
            m(i, k) = cplx(re, im);
        }
    }
    return m;
}

json grid_to_json(const std::vector<CMat>& grid, int d) {
    json rows = json::array();
    for (int i = 0; i < d; ++i) {
        json row = json::array();
        for (int k = 0; k < d; ++k)
            row.push_back(matrix_to_json(grid[static_cast<std::size_t>(i) * d + k]));
        rows.push_back(std::move(row));
    }
    json j;
    j["d"] = d;
    j["entries"] = std::move(rows);
    return j;
}

std::vector<CMat> grid_from_json(const json& j, int& d_out) {
    if (!j.is_object() || !j.contains("d") || !j.contains("entries"))
        throw ParseError("grid object needs d and entries fields");
    const int d = j["d"].get<int>();
    if (d < 1) throw ParseError("grid dimension d must be at least 1");
    const auto& entries = j["entries"];
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(d))
        throw ParseError("grid entries must hold exactly d rows");
    std::vector<CMat> grid;
    grid.reserve(static_cast<std::size_t>(d) * d);
    for (const auto& row : entries) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
            throw ParseError("grid rows must each hold exactly d matrices");
        for (const auto& cell : row) grid.push_back(matrix_from_json(cell));
    }
    d_out = d;
    return grid;
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::ostringstream os;
        os << "invalid JSON at byte " << e.byte << ": " << e.what();
        throw ParseError(os.str());
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        std::ostringstream os;
        os << path << ": invalid JSON at byte " << e.byte << ": " << e.what();
        throw ParseError(os.str());
    }
}

} // namespace shs
