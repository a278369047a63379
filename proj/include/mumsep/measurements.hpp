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

/// \file measurements.hpp
/// Complete sets of mutually unbiased measurements (MUMs) and general
/// symmetric informationally complete POVMs (GSIC-POVMs) in any dimension.
///
/// Both constructions start from the generalized Gell-Mann basis {G_k} of
/// traceless Hermitian operators with Tr(G_a G_b) = delta_ab.
///
/// MUMs: the basis is cut into d+1 consecutive groups of d-1 operators
/// G_{n,b}. With F_b = sum_n G_{n,b},
///   F_n^(b) = F_b - (d + sqrt d) G_{n,b}   (n < d),   F_d^(b) = (1 + sqrt d) F_b,
///   P_n^(b) = I/d + t F_n^(b).
/// GSIC: with F = sum_k G_k,
///   H_k = F - d(d+1) G_k   (k < d^2),   H_{d^2} = (d+1) F,
///   M_k = I/d^2 + t H_k.
/// The scale t is never taken from a closed form. For a requested purity it
/// is found by bisection on the computed Tr(P^2), and the largest feasible t
/// by bisection on the minimum eigenvalue.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "mumsep/error.hpp"
#include "mumsep/linalg.hpp"

namespace mumsep {

/// Either an explicit kappa/alpha value or the largest value keeping every
/// element positive semidefinite.
struct ParameterChoice {
    std::optional<double> value;

    static ParameterChoice max() { return {}; }
    static ParameterChoice of(double v) { return {v}; }
    bool is_max() const { return !value.has_value(); }
};

struct OperatorBasis {
    int dim = 0;
    std::vector<ComplexMatrix> ops;
};

/// m measurements of d elements each; blocks[b][n] is P_{n+1}^{(b+1)}.
struct MumSet {
    int dim = 0;
    double kappa = 0.0;
    double scale = 0.0;
    std::vector<std::vector<ComplexMatrix>> blocks;

    int count() const { return static_cast<int>(blocks.size()); }

    /// The first m measurements; still a valid (incomplete) MUM set.
    MumSet prefix(int m) const {
        if (m < 1 || m > count()) {
            std::ostringstream os;
            os << "prefix length " << m << " outside [1, " << count() << "]";
            throw Error(ErrorKind::InvalidArgument, os.str());
        }
        MumSet out{dim, kappa, scale, {}};
        out.blocks.assign(blocks.begin(), blocks.begin() + m);
        return out;
    }
};

struct GsicPovm {
    int dim = 0;
    double alpha = 0.0;
    double scale = 0.0;
    std::vector<ComplexMatrix> ops;
};

/// X_i or Y_j of the flattened measurement family, i = b*d + n (0-based).
struct MeasurementFamily {
    int dim = 0;
    std::vector<ComplexMatrix> ops;

    int size() const { return static_cast<int>(ops.size()); }
};

struct MumVerification {
    double max_trace_deviation = 0.0;
    double max_overlap_deviation = 0.0;
    double max_completeness_deviation = 0.0;
    double min_eigenvalue = 0.0;
    double kappa = 0.0;

    bool passed() const {
        return max_trace_deviation < 1e-10 && max_overlap_deviation < 1e-10 &&
               max_completeness_deviation < 1e-10 && min_eigenvalue >= -1e-9;
    }
};

struct GsicVerification {
    double max_purity_deviation = 0.0;
    double max_overlap_deviation = 0.0;
    double completeness_deviation = 0.0;
    double min_eigenvalue = 0.0;
    double alpha = 0.0;

    bool passed() const {
        return max_purity_deviation < 1e-10 && max_overlap_deviation < 1e-10 &&
               completeness_deviation < 1e-10 && min_eigenvalue >= -1e-9;
    }
};

// ---------------------------------------------------------------------------

/// Generalized Gell-Mann basis normalized to Tr(G_a G_b) = delta_ab.
/// Order: symmetric (j<k lexicographic), antisymmetric (same), diagonal.
inline OperatorBasis gell_mann_basis(int d) {
    if (d < 2) throw Error(ErrorKind::InvalidArgument, "Gell-Mann basis needs d >= 2");
    const double r2 = 1.0 / std::sqrt(2.0);
    OperatorBasis basis{d, {}};
    basis.ops.reserve(static_cast<std::size_t>(d * d - 1));
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix g = ComplexMatrix::Zero(d, d);
            g(j, k) = g(k, j) = r2;
            basis.ops.push_back(std::move(g));
        }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix g = ComplexMatrix::Zero(d, d);
            g(j, k) = Complex(0.0, -r2);
            g(k, j) = Complex(0.0, r2);
            basis.ops.push_back(std::move(g));
        }
    for (int l = 1; l < d; ++l) {
        ComplexMatrix g = ComplexMatrix::Zero(d, d);
        const double c = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int a = 0; a < l; ++a) g(a, a) = c;
        g(l, l) = -l * c;
        basis.ops.push_back(std::move(g));
    }
    return basis;
}

namespace detail {

inline double hs_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    // Tr(AB) for Hermitian A, B is real.
    return (a.cwiseProduct(b.transpose())).sum().real();
}

/// Traceless directions F_n^(b), grouped by measurement.
inline std::vector<std::vector<ComplexMatrix>> mum_directions(int d) {
    const OperatorBasis basis = gell_mann_basis(d);
    const double sd = std::sqrt(static_cast<double>(d));
    std::vector<std::vector<ComplexMatrix>> out;
    out.reserve(static_cast<std::size_t>(d + 1));
    for (int b = 0; b <= d; ++b) {
        ComplexMatrix f = ComplexMatrix::Zero(d, d);
        for (int n = 0; n < d - 1; ++n) f += basis.ops[static_cast<std::size_t>(b * (d - 1) + n)];
        std::vector<ComplexMatrix> block;
        block.reserve(static_cast<std::size_t>(d));
        for (int n = 0; n < d - 1; ++n)
            block.push_back(f - (d + sd) * basis.ops[static_cast<std::size_t>(b * (d - 1) + n)]);
        block.push_back((1.0 + sd) * f);
        out.push_back(std::move(block));
    }
    return out;
}

inline std::vector<ComplexMatrix> gsic_directions(int d) {
    const OperatorBasis basis = gell_mann_basis(d);
    ComplexMatrix f = ComplexMatrix::Zero(d, d);
    for (const auto& g : basis.ops) f += g;
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(d * d));
    for (const auto& g : basis.ops) out.push_back(f - static_cast<double>(d * (d + 1)) * g);
    out.push_back(static_cast<double>(d + 1) * f);
    return out;
}

inline double min_eigenvalue_at(const std::vector<ComplexMatrix>& dirs, double base, double t) {
    double lmin = std::numeric_limits<double>::infinity();
    for (const auto& h : dirs) {
        const int d = static_cast<int>(h.rows());
        const ComplexMatrix op = base * ComplexMatrix::Identity(d, d) + t * h;
        lmin = std::min(lmin, min_eigenvalue(op));
    }
    return lmin;
}

/// Largest t with base*I + t*H >= 0 for every direction H. 60 bisection steps.
inline double max_feasible_scale(const std::vector<ComplexMatrix>& dirs, double base) {
    double lo = 0.0, hi = 1.0;
    while (min_eigenvalue_at(dirs, base, hi) >= 0.0) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (min_eigenvalue_at(dirs, base, mid) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

/// Tr((base*I + t*H)^2) for one representative direction.
inline double purity_at(const ComplexMatrix& h, double base, double t) {
    const int d = static_cast<int>(h.rows());
    const ComplexMatrix op = base * ComplexMatrix::Identity(d, d) + t * h;
    return hs_product(op, op);
}

/// Solves purity_at(h, base, t) = target on [0, t_max]; purity is increasing in t.
inline double scale_for_purity(const ComplexMatrix& h, double base, double t_max, double target) {
    double lo = 0.0, hi = t_max;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (purity_at(h, base, mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return std::abs(purity_at(h, base, lo) - target) <= std::abs(purity_at(h, base, hi) - target) ? lo : hi;
}

}  // namespace detail

/// Largest efficiency parameter reachable by the construction in dimension d.
inline double mum_kappa_max(int d) {
    const auto dirs = detail::mum_directions(d);
    std::vector<ComplexMatrix> flat;
    for (const auto& blk : dirs) flat.insert(flat.end(), blk.begin(), blk.end());
    const double t = detail::max_feasible_scale(flat, 1.0 / d);
    return detail::purity_at(flat.front(), 1.0 / d, t);
}

inline double gsic_alpha_max(int d) {
    const auto dirs = detail::gsic_directions(d);
    const double base = 1.0 / (static_cast<double>(d) * d);
    return detail::purity_at(dirs.front(), base, detail::max_feasible_scale(dirs, base));
}

/// Complete set of d+1 MUMs with the requested efficiency parameter.
/// Throws KappaInfeasible when kappa <= 1/d or kappa > kappa_max(d).
inline MumSet build_mums(int d, ParameterChoice kappa = ParameterChoice::max()) {
    if (d < 2) throw Error(ErrorKind::InvalidArgument, "MUMs need d >= 2");
    const auto dirs = detail::mum_directions(d);
    std::vector<ComplexMatrix> flat;
    for (const auto& blk : dirs) flat.insert(flat.end(), blk.begin(), blk.end());

    const double base = 1.0 / d;
    const double t_max = detail::max_feasible_scale(flat, base);
    const double kappa_max = detail::purity_at(flat.front(), base, t_max);

    double t = t_max;
    if (!kappa.is_max()) {
        const double k = *kappa.value;
        if (!(k > base) || !(k <= kappa_max + 1e-12)) {
            std::ostringstream os;
            os.precision(12);
            os << "kappa " << k << " outside (1/" << d << ", " << kappa_max << "]; kappa_max=" << kappa_max;
            throw Error(ErrorKind::KappaInfeasible, os.str());
        }
        t = detail::scale_for_purity(flat.front(), base, t_max, k);
    }

    MumSet set{d, 0.0, t, {}};
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    for (const auto& blk : dirs) {
        std::vector<ComplexMatrix> ops;
        ops.reserve(blk.size());
        for (const auto& h : blk) ops.push_back(base * id + t * h);
        set.blocks.push_back(std::move(ops));
    }
    set.kappa = detail::hs_product(set.blocks[0][0], set.blocks[0][0]);
    return set;
}

/// GSIC-POVM with the requested purity parameter.
/// Throws AlphaInfeasible when alpha <= 1/d^3 or alpha > alpha_max(d).
inline GsicPovm build_gsic(int d, ParameterChoice alpha = ParameterChoice::max()) {
    if (d < 2) throw Error(ErrorKind::InvalidArgument, "GSIC-POVMs need d >= 2");
    const auto dirs = detail::gsic_directions(d);
    const double base = 1.0 / (static_cast<double>(d) * d);
    const double t_max = detail::max_feasible_scale(dirs, base);
    const double alpha_max = detail::purity_at(dirs.front(), base, t_max);
    const double alpha_min = base / d;

    double t = t_max;
    if (!alpha.is_max()) {
        const double a = *alpha.value;
        if (!(a > alpha_min) || !(a <= alpha_max + 1e-12)) {
            std::ostringstream os;
            os.precision(12);
            os << "alpha " << a << " outside (" << alpha_min << ", " << alpha_max << "]";
            throw Error(ErrorKind::AlphaInfeasible, os.str());
        }
        t = detail::scale_for_purity(dirs.front(), base, t_max, a);
    }

    GsicPovm g{d, 0.0, t, {}};
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    g.ops.reserve(dirs.size());
    for (const auto& h : dirs) g.ops.push_back(base * id + t * h);
    g.alpha = detail::hs_product(g.ops[0], g.ops[0]);
    return g;
}

/// Recomputes every defining condition of the set from scratch.
inline MumVerification verify_mums(const MumSet& s) {
    MumVerification r;
    r.kappa = s.kappa;
    r.min_eigenvalue = std::numeric_limits<double>::infinity();
    const int d = s.dim;
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const double off_block = (1.0 - s.kappa) / (d - 1);
    for (int b = 0; b < s.count(); ++b) {
        ComplexMatrix sum = ComplexMatrix::Zero(d, d);
        for (int n = 0; n < d; ++n) {
            const ComplexMatrix& p = s.blocks[b][n];
            sum += p;
            r.max_trace_deviation = std::max(r.max_trace_deviation, std::abs(p.trace() - Complex(1.0)));
            r.min_eigenvalue = std::min(r.min_eigenvalue, min_eigenvalue(p));
            for (int b2 = 0; b2 < s.count(); ++b2)
                for (int n2 = 0; n2 < d; ++n2) {
                    const double expected = b != b2 ? 1.0 / d : (n == n2 ? s.kappa : off_block);
                    const Complex ov = (p * s.blocks[b2][n2]).trace();
                    r.max_overlap_deviation = std::max(r.max_overlap_deviation, std::abs(ov - Complex(expected)));
                }
        }
        r.max_completeness_deviation = std::max(r.max_completeness_deviation, (sum - id).cwiseAbs().maxCoeff());
    }
    return r;
}

inline GsicVerification verify_gsic(const GsicPovm& g) {
    GsicVerification r;
    r.alpha = g.alpha;
    r.min_eigenvalue = std::numeric_limits<double>::infinity();
    const int d = g.dim;
    const double off = (1.0 - d * g.alpha) / (d * (static_cast<double>(d) * d - 1.0));
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < g.ops.size(); ++i) {
        sum += g.ops[i];
        r.min_eigenvalue = std::min(r.min_eigenvalue, min_eigenvalue(g.ops[i]));
        for (std::size_t j = 0; j < g.ops.size(); ++j) {
            const Complex ov = (g.ops[i] * g.ops[j]).trace();
            if (i == j)
                r.max_purity_deviation = std::max(r.max_purity_deviation, std::abs(ov - Complex(g.alpha)));
            else
                r.max_overlap_deviation = std::max(r.max_overlap_deviation, std::abs(ov - Complex(off)));
        }
    }
    r.completeness_deviation = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    return r;
}

/// X_i = P_n^(b) with i = b*d + n (0-based).
inline MeasurementFamily flatten(const MumSet& s) {
    MeasurementFamily f{s.dim, {}};
    f.ops.reserve(static_cast<std::size_t>(s.dim * s.count()));
    for (const auto& blk : s.blocks) f.ops.insert(f.ops.end(), blk.begin(), blk.end());
    return f;
}

inline MeasurementFamily flatten(const GsicPovm& g) { return MeasurementFamily{g.dim, g.ops}; }

}  // namespace mumsep
