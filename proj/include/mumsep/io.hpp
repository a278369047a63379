// Copyright 2026 The mumsep Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/// \file io.hpp
/// State files (JSON), criterion records (JSON) and scan tables (CSV).
///
/// State file:
///   {"d1": 3, "d2": 3, "matrix": [[re, im], ...]}
/// with (d1*d2)^2 entries in row-major order.
///
/// Scan CSV:
///   param,lhs,rhs,violated
///   <rows, 12 significant digits, violated as 0/1>
///   threshold,<value|none>

#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "mumsep/criteria.hpp"
#include "mumsep/error.hpp"
#include "mumsep/linalg.hpp"
#include "mumsep/oracle.hpp"

namespace mumsep {

using Json = nlohmann::json;

/// Locale-independent equivalent of "%.12g".
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

inline Json state_to_json(const BipartiteState& s) {
    Json entries = Json::array();
    const ComplexMatrix& m = s.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    return Json{{"d1", s.d1()}, {"d2", s.d2()}, {"matrix", std::move(entries)}};
}

inline std::string serialize_state(const BipartiteState& s) { return state_to_json(s).dump(1) + "\n"; }

/// Parses and validates a state document. Throws ParseError on schema
/// problems and the density-matrix error kinds on invalid matrices.
inline BipartiteState state_from_json(const Json& j) {
    auto fail = [](const std::string& why) { throw Error(ErrorKind::ParseError, why); };
    if (!j.is_object()) fail("state file must be a JSON object");
    for (const char* key : {"d1", "d2", "matrix"})
        if (!j.contains(key)) fail(std::string("state file lacks field '") + key + "'");
    if (!j["d1"].is_number_integer() || !j["d2"].is_number_integer()) fail("d1 and d2 must be integers");
    const int d1 = j["d1"].get<int>(), d2 = j["d2"].get<int>();
    if (d1 < 1 || d2 < 1 || d1 * d2 > 64) fail("d1, d2 must be positive with d1*d2 <= 64");
    const Json& entries = j["matrix"];
    const int n = d1 * d2;
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(n) * n) {
        std::ostringstream os;
        os << "matrix must hold " << n * n << " entries";
        fail(os.str());
    }
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Json& e = entries[static_cast<std::size_t>(i * n + k)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                fail("matrix entries must be [re, im] number pairs");
            m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    return BipartiteState(d1, d2, m);
}

inline BipartiteState parse_state(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
    }
    return state_from_json(j);
}

inline BipartiteState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read state file '" + path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_state(text);
}

inline void save_state(const BipartiteState& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write state file '" + path + "'");
    out << serialize_state(s);
}

inline Json report_to_json(const CriterionReport& r) {
    Json params{{"d1", r.params.d1}, {"d2", r.params.d2}, {"m1", r.params.m1}, {"m2", r.params.m2}};
    if (r.params.kappa1) params["kappa1"] = *r.params.kappa1;
    if (r.params.kappa2) params["kappa2"] = *r.params.kappa2;
    if (r.params.alpha1) params["alpha1"] = *r.params.alpha1;
    if (r.params.alpha2) params["alpha2"] = *r.params.alpha2;
    return Json{{"criterion", std::string(to_string(r.id))},
                {"lhs", r.lhs},
                {"rhs", r.rhs},
                {"violated", r.violated},
                {"reconstructed", r.reconstructed},
                {"params", std::move(params)}};
}

inline void write_scan_csv(std::ostream& os, const ScanResult& r) {
    os << "param,lhs,rhs,violated\n";
    for (const auto& p : r.grid)
        os << format_number(p.param) << ',' << format_number(p.lhs) << ',' << format_number(p.rhs) << ','
           << (p.violated ? 1 : 0) << '\n';
    os << "threshold," << (r.threshold ? format_number(*r.threshold) : std::string("none")) << '\n';
}

}  // namespace mumsep
