// Copyright 2026 The qchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "qchan/channels.hpp"
#include "qchan/info.hpp"
#include "qchan/matrix.hpp"
#include "qchan/semigroup.hpp"

namespace qchan {

using Json = nlohmann::json;

/// Raised on malformed input documents; callers map it to a data-error exit.
class CodecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ------------------------------- matrices -----------------------------------

/// Matrix encoding used across all file formats:
/// {"dim": n, "entries": [[re, im], ...]} with row-major entries.
inline Json matrix_to_json(const ComplexMatrix& m) {
    Json entries = Json::array();
    for (const Complex& v : m.entries()) entries.push_back({v.real(), v.imag()});
    return Json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
        throw CodecError("matrix: expected an object with \"dim\" and \"entries\"");
    }
    if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
        throw CodecError("matrix: \"dim\" must be a positive integer");
    }
    const std::size_t n = j["dim"].get<std::size_t>();
    const Json& entries = j["entries"];
    if (!entries.is_array() || entries.size() != n * n) {
        throw CodecError("matrix: entries.length must equal dim^2");
    }
    ComplexMatrix m(n);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const Json& e = entries[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw CodecError("matrix: each entry must be a [re, im] pair");
        }
        m(k / n, k % n) = Complex(e[0].get<double>(), e[1].get<double>());
    }
    if (!has_finite_entries(m)) throw CodecError("matrix: entries must be finite");
    return m;
}

// ------------------------------- channels -----------------------------------

inline Json channel_to_json(const Channel& ch) {
    if (const auto* kc = std::get_if<KrausChannel>(&ch)) {
        Json ops = Json::array();
        for (const ComplexMatrix& v : kc->ops()) ops.push_back(matrix_to_json(v));
        return Json{{"type", "kraus"}, {"dim", kc->dim()}, {"ops", std::move(ops)}};
    }
    if (const auto* hc = std::get_if<HolevoChannel>(&ch)) {
        Json povm = Json::array(), densities = Json::array();
        for (const ComplexMatrix& f : hc->povm()) povm.push_back(matrix_to_json(f));
        for (const DensityMatrix& r : hc->densities()) densities.push_back(matrix_to_json(r.mat()));
        return Json{{"type", "holevo"}, {"povm", std::move(povm)}, {"densities", std::move(densities)}};
    }
    // The wire format carries a partition, so only coordinate pinchings are
    // serializable. That loses no expressiveness: a general projection set
    // can always be absorbed into the unitary.
    const auto& pc = std::get<PreconditionerChannel>(ch);
    Json partition = Json::array();
    for (const ComplexMatrix& p : pc.pinching().projections.projections) {
        Json block = Json::array();
        for (std::size_t i = 0; i < pc.dim(); ++i) {
            for (std::size_t j = 0; j < pc.dim(); ++j) {
                const double expected = i == j && std::abs(p(i, i).real() - 1.0) < 0.5 ? 1.0 : 0.0;
                if (std::abs(p(i, j) - Complex(expected)) > 1e-12) {
                    throw CodecError(
                        "preconditioner channel: only coordinate partitions are serializable");
                }
            }
            if (std::abs(p(i, i).real() - 1.0) < 0.5) block.push_back(i);
        }
        partition.push_back(std::move(block));
    }
    return Json{{"type", "preconditioner"},
                {"unitary", matrix_to_json(pc.unitary())},
                {"partition", std::move(partition)}};
}

inline Channel channel_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        throw CodecError("channel: expected an object with a \"type\" string");
    }
    const std::string type = j["type"].get<std::string>();
    if (type == "kraus") {
        if (!j.contains("dim") || !j.contains("ops") || !j["ops"].is_array()) {
            throw CodecError("kraus channel: expected \"dim\" and an \"ops\" array");
        }
        const std::size_t n = j["dim"].is_number_unsigned() ? j["dim"].get<std::size_t>() : 0;
        std::vector<ComplexMatrix> ops;
        for (const Json& op : j["ops"]) ops.push_back(matrix_from_json(op));
        return KrausChannel(n, std::move(ops));
    }
    if (type == "holevo") {
        if (!j.contains("povm") || !j.contains("densities") || !j["povm"].is_array() ||
            !j["densities"].is_array()) {
            throw CodecError("holevo channel: expected \"povm\" and \"densities\" arrays");
        }
        std::vector<ComplexMatrix> povm;
        for (const Json& f : j["povm"]) povm.push_back(matrix_from_json(f));
        std::vector<DensityMatrix> densities;
        for (const Json& r : j["densities"]) densities.emplace_back(matrix_from_json(r));
        return HolevoChannel(std::move(povm), std::move(densities));
    }
    if (type == "preconditioner") {
        if (!j.contains("unitary") || !j.contains("partition") || !j["partition"].is_array()) {
            throw CodecError("preconditioner channel: expected \"unitary\" and a \"partition\" array");
        }
        std::vector<std::vector<std::size_t>> partition;
        for (const Json& block : j["partition"]) {
            if (!block.is_array()) throw CodecError("preconditioner channel: partition blocks must be arrays");
            std::vector<std::size_t> indices;
            for (const Json& idx : block) {
                if (!idx.is_number_unsigned()) {
                    throw CodecError("preconditioner channel: partition indices must be nonnegative integers");
                }
                indices.push_back(idx.get<std::size_t>());
            }
            partition.push_back(std::move(indices));
        }
        const ComplexMatrix u = matrix_from_json(j["unitary"]);
        return PreconditionerChannel(u, block_projections(u.dim(), partition));
    }
    throw CodecError("channel: unknown type \"" + type + "\"");
}

// --------------------------- stochastic matrices -----------------------------

/// {"size": r, "entries": [[row 0...], ...]}.
inline Json stochastic_to_json(const StochasticMatrix& a) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.size; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < a.size; ++j) row.push_back(a(i, j));
        rows.push_back(std::move(row));
    }
    return Json{{"size", a.size}, {"entries", std::move(rows)}};
}

inline StochasticMatrix stochastic_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("size") || !j.contains("entries") ||
        !j["size"].is_number_unsigned()) {
        throw CodecError("stochastic matrix: expected \"size\" and \"entries\"");
    }
    const std::size_t r = j["size"].get<std::size_t>();
    const Json& rows = j["entries"];
    if (!rows.is_array() || rows.size() != r) throw CodecError("stochastic matrix: wrong row count");
    StochasticMatrix a{r, std::vector<double>(r * r)};
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != r) {
            throw CodecError("stochastic matrix: wrong row length");
        }
        for (std::size_t jj = 0; jj < r; ++jj) {
            if (!rows[i][jj].is_number()) throw CodecError("stochastic matrix: entries must be numbers");
            a(i, jj) = rows[i][jj].get<double>();
        }
    }
    return a;
}

// ---------------------------------- codes ------------------------------------

/// {"block_length": n, "states": [matrix...], "observable": [matrix...]}.
inline Json code_to_json(const Code& code) {
    Json states = Json::array(), observable = Json::array();
    for (const DensityMatrix& s : code.states) states.push_back(matrix_to_json(s.mat()));
    for (const ComplexMatrix& m : code.observable) observable.push_back(matrix_to_json(m));
    return Json{{"block_length", code.block_length},
                {"states", std::move(states)},
                {"observable", std::move(observable)}};
}

inline Code code_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("block_length") || !j.contains("states") ||
        !j.contains("observable") || !j["block_length"].is_number_unsigned() ||
        !j["states"].is_array() || !j["observable"].is_array()) {
        throw CodecError("code: expected \"block_length\", \"states\" and \"observable\"");
    }
    Code code;
    code.block_length = j["block_length"].get<std::size_t>();
    for (const Json& s : j["states"]) code.states.emplace_back(matrix_from_json(s));
    for (const Json& m : j["observable"]) code.observable.push_back(matrix_from_json(m));
    validate_code(code);
    return code;
}

// ------------------------------- isometries ----------------------------------

/// Rectangular Stinespring output: {"dim": n, "env_dim": d, "entries": [[re,
/// im], ...]} with (d*n) x n entries row-major.
inline Json isometry_to_json(const StinespringIsometry& v) {
    Json entries = Json::array();
    for (const Complex& e : v.entries) entries.push_back({e.real(), e.imag()});
    return Json{{"dim", v.sys_dim}, {"env_dim", v.env_dim}, {"entries", std::move(entries)}};
}

// ---------------------------------- files ------------------------------------

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CodecError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw CodecError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline Channel channel_from_file(const std::string& path) {
    return channel_from_json(read_json_file(path));
}

}  // namespace qchan
