#pragma once

// JSON matrix files:
//
//   {
//     "format":  "weylsep-matrix-v1",
//     "dims":    [dA, dB],                 // subsystem dimensions, product = D
//     "entries": [[re, im], [re, im], ...] // D*D pairs, row-major
//   }
//
// Unknown top-level keys are ignored. Numbers are written in shortest
// round-trip form.

#include "weylsep/error.hpp"
#include "weylsep/linalg.hpp"

#include "json.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace weylsep {

inline constexpr const char* matrix_format_tag = "weylsep-matrix-v1";

struct MatrixFile {
    std::vector<int> dims;
    ComplexMatrix matrix;
};

inline nlohmann::json matrix_entries_json(const ComplexMatrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
    return entries;
}

inline nlohmann::json to_json(const MatrixFile& file) {
    nlohmann::json j;
    j["format"] = matrix_format_tag;
    j["dims"] = file.dims;
    j["entries"] = matrix_entries_json(file.matrix);
    return j;
}

inline MatrixFile matrix_file_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("matrix file: top level must be a JSON object");
    if (!j.contains("format") || !j["format"].is_string() || j["format"].get<std::string>() != matrix_format_tag) {
        throw ParseError(std::string("matrix file: \"format\" must be \"") + matrix_format_tag + "\"");
    }
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty()) {
        throw ParseError("matrix file: \"dims\" must be a non-empty array of positive integers");
    }
    MatrixFile out;
    long long total = 1;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer() || d.get<long long>() < 1 || d.get<long long>() > 4096) {
            throw ParseError("matrix file: \"dims\" must be a non-empty array of positive integers");
        }
        out.dims.push_back(d.get<int>());
        total *= d.get<long long>();
    }
    if (total > 4096) throw ParseError("matrix file: composite dimension too large");
    if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError("matrix file: missing \"entries\" array");
    const auto& entries = j["entries"];
    if (static_cast<long long>(entries.size()) != total * total) {
        throw ParseError("matrix file: expected " + std::to_string(total * total) + " entries for dims product " +
                         std::to_string(total) + ", got " + std::to_string(entries.size()));
    }
    out.matrix.resize(total, total);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw ParseError("matrix file: entry " + std::to_string(k) + " must be a [re, im] pair of numbers");
        }
        out.matrix(static_cast<Eigen::Index>(k) / total, static_cast<Eigen::Index>(k) % total) = {e[0].get<double>(), e[1].get<double>()};
    }
    return out;
}

inline MatrixFile parse_matrix_file(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("matrix file: invalid JSON: ") + e.what());
    }
    return matrix_file_from_json(j);
}

inline MatrixFile read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_matrix_file(in);
}

inline DensityMatrix load_state(const std::string& path) {
    MatrixFile file = read_matrix_file(path);
    return validate_density(std::move(file.matrix), std::move(file.dims));
}

inline void write_matrix_file(const std::string& path, const MatrixFile& file) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << to_json(file).dump(2) << '\n';
}

} // namespace weylsep
