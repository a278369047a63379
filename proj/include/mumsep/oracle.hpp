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

/// \file oracle.hpp
/// Independent entanglement checks (PPT, realignment) and the threshold
/// scanner over one-parameter state families.

#include <algorithm>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "mumsep/criteria.hpp"
#include "mumsep/error.hpp"
#include "mumsep/linalg.hpp"
#include "mumsep/states.hpp"

namespace mumsep {

/// Transpose on the second tensor factor.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, int d1, int d2) {
    if (m.rows() != d1 * d2 || m.cols() != d1 * d2)
        throw Error(ErrorKind::DimensionMismatch, "operator does not split as d1 x d2");
    ComplexMatrix out(m.rows(), m.cols());
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j)
            for (int k = 0; k < d1; ++k)
                for (int l = 0; l < d2; ++l) out(i * d2 + j, k * d2 + l) = m(i * d2 + l, k * d2 + j);
    return out;
}

/// Below -1e-9 the state is NPT and therefore entangled.
inline double ppt_min_eigenvalue(const BipartiteState& s) {
    return min_eigenvalue(partial_transpose(s.matrix(), s.d1(), s.d2()));
}

/// R(rho): entry <i|<j|rho|k>|l> goes to row (i,k), column (j,l).
inline ComplexMatrix realign(const ComplexMatrix& m, int d1, int d2) {
    if (m.rows() != d1 * d2 || m.cols() != d1 * d2)
        throw Error(ErrorKind::DimensionMismatch, "operator does not split as d1 x d2");
    ComplexMatrix r(d1 * d1, d2 * d2);
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j)
            for (int k = 0; k < d1; ++k)
                for (int l = 0; l < d2; ++l) r(i * d1 + k, j * d2 + l) = m(i * d2 + j, k * d2 + l);
    return r;
}

/// Trace norm of the realigned state; above 1 + 1e-10 the state is entangled.
inline double ccnr_value(const BipartiteState& s) { return trace_norm(realign(s.matrix(), s.d1(), s.d2())); }

// ---------------------------------------------------------------------------
// Threshold scans
// ---------------------------------------------------------------------------

enum class FamilyId { NoisyTiles, Werner };

inline std::string_view to_string(FamilyId f) { return f == FamilyId::NoisyTiles ? "noisy_tiles" : "werner"; }

inline std::optional<FamilyId> parse_family(std::string_view s) {
    if (s == "noisy_tiles") return FamilyId::NoisyTiles;
    if (s == "werner") return FamilyId::Werner;
    return std::nullopt;
}

/// A one-parameter family of bipartite states on a closed interval.
struct StateFamily {
    FamilyId id = FamilyId::NoisyTiles;
    int d = 3;
    double lo = 0.0;
    double hi = 1.0;

    int d1() const { return id == FamilyId::NoisyTiles ? 3 : d; }
    int d2() const { return d1(); }

    BipartiteState at(double param) const {
        if (id == FamilyId::NoisyTiles) return with_white_noise(bennett_tiles(), param);
        return werner(d, param);
    }
};

inline StateFamily noisy_tiles_family() { return {FamilyId::NoisyTiles, 3, 0.0, 1.0}; }
inline StateFamily werner_family(int d) { return {FamilyId::Werner, d, -1.0, 1.0}; }

using CriterionEvaluator = std::function<CriterionReport(const BipartiteState&)>;

struct ScanPoint {
    double param = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool violated = false;
};

/// Which end of the scan interval the detected region touches.
enum class DetectionSide { None, Low, High };

inline std::string_view to_string(DetectionSide s) {
    switch (s) {
        case DetectionSide::None: return "none";
        case DetectionSide::Low: return "low";
        case DetectionSide::High: return "high";
    }
    return "none";
}

struct ScanResult {
    FamilyId family{};
    std::string criterion;
    std::vector<ScanPoint> grid;
    /// Midpoint of the refined bracket, present only for a single boundary.
    std::optional<double> threshold;
    std::optional<std::pair<double, double>> bracket;
    DetectionSide direction = DetectionSide::None;
    /// Empty, "MultipleBoundaries" or "AllDetected".
    std::string note;
};

struct ScanOptions {
    int grid = 200;
    double tol = 1e-4;
    /// Grid points are independent; results do not depend on this.
    unsigned threads = 1;
};

/// Evaluates the criterion on a uniform grid over [lo, hi] (both ends
/// included). A single verdict flip is refined by bisection to width <= tol.
inline ScanResult threshold_scan(const StateFamily& family, const CriterionEvaluator& criterion, double lo,
                                 double hi, ScanOptions opt = {}, std::string criterion_name = {}) {
    if (opt.grid < 16) throw Error(ErrorKind::InvalidArgument, "scan grid must have at least 16 points");
    if (!(opt.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "scan tolerance must be positive");
    if (!(lo < hi) || lo < family.lo || hi > family.hi) {
        std::ostringstream os;
        os << "scan interval [" << lo << ", " << hi << "] not inside [" << family.lo << ", " << family.hi << "]";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }

    ScanResult result;
    result.family = family.id;
    result.criterion = std::move(criterion_name);
    const auto n = static_cast<std::size_t>(opt.grid);
    result.grid.resize(n);

    auto param_at = [&](std::size_t k) {
        return k + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    };
    auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const double x = param_at(k);
            const CriterionReport r = criterion(family.at(x));
            result.grid[k] = ScanPoint{x, r.lhs, r.rhs, r.violated};
        }
    };

    const unsigned workers = std::clamp<unsigned>(opt.threads, 1u, static_cast<unsigned>(n));
    if (workers == 1) {
        eval_range(0, n);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    eval_range(std::min(n, w * chunk), std::min(n, (w + 1) * chunk));
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::vector<std::size_t> flips;
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (result.grid[k].violated != result.grid[k + 1].violated) flips.push_back(k);

    if (flips.empty()) {
        if (result.grid.front().violated) result.note = "AllDetected";
        return result;
    }
    if (flips.size() > 1) {
        result.note = "MultipleBoundaries";
        return result;
    }

    const std::size_t k = flips.front();
    double a = result.grid[k].param, b = result.grid[k + 1].param;
    const bool verdict_a = result.grid[k].violated;
    while (b - a > opt.tol) {
        const double mid = 0.5 * (a + b);
        if (criterion(family.at(mid)).violated == verdict_a)
            a = mid;
        else
            b = mid;
    }
    result.bracket = std::make_pair(a, b);
    result.threshold = 0.5 * (a + b);
    result.direction = result.grid.back().violated ? DetectionSide::High : DetectionSide::Low;
    return result;
}

}  // namespace mumsep
