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

/// \file criteria.hpp
/// Measurement-based separability criteria.
///
/// Every criterion is a necessary condition for separability of the form
/// lhs <= rhs. A report with violated == true certifies entanglement; a
/// non-violation says nothing.
///
///   mum_tracenorm   ||M(X,Y)(rho)||_tr <= sqrt((m1-1)/d1 + k1 - sum_i Tr(X_i rho_A)^2)
///                                        * sqrt((m2-1)/d2 + k2 - sum_j Tr(Y_j rho_B)^2)
///   mum_diagonal    sum_i |w_ii| <= same rhs
///   mum_liu         sum_i Tr(X_{p_i} (x) Y_{q_i} rho)
///                       <= sqrt((m-1)/d1 + k1) sqrt((m-1)/d2 + k2)
///   gsic_tracenorm  ||M(P,Q)(rho)||_tr <= sqrt((a1 d1^2 + 1)/(d1(d1+1)) - sum_i Tr(P_i rho_A)^2)
///                                         * (same for the second party)
///   gsic_diagonal   sum_i |w_ii| <= same rhs (reconstructed baseline)
///
/// with w_ij = Tr(X_i (x) Y_j (rho - rho_A (x) rho_B)).

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mumsep/error.hpp"
#include "mumsep/linalg.hpp"
#include "mumsep/measurements.hpp"

namespace mumsep {

enum class CriterionId { MumTraceNorm, MumDiagonal, MumLiu, GsicTraceNorm, GsicDiagonal };

inline constexpr CriterionId kAllCriteria[] = {CriterionId::MumTraceNorm, CriterionId::MumDiagonal,
                                               CriterionId::MumLiu, CriterionId::GsicTraceNorm,
                                               CriterionId::GsicDiagonal};

inline std::string_view to_string(CriterionId id) {
    switch (id) {
        case CriterionId::MumTraceNorm: return "mum_tracenorm";
        case CriterionId::MumDiagonal: return "mum_diagonal";
        case CriterionId::MumLiu: return "mum_liu";
        case CriterionId::GsicTraceNorm: return "gsic_tracenorm";
        case CriterionId::GsicDiagonal: return "gsic_diagonal";
    }
    return "unknown";
}

inline std::optional<CriterionId> parse_criterion(std::string_view s) {
    for (CriterionId id : kAllCriteria)
        if (to_string(id) == s) return id;
    return std::nullopt;
}

inline bool uses_gsic(CriterionId id) {
    return id == CriterionId::GsicTraceNorm || id == CriterionId::GsicDiagonal;
}

struct CriterionParams {
    int d1 = 0;
    int d2 = 0;
    int m1 = 0;
    int m2 = 0;
    std::optional<double> kappa1, kappa2;
    std::optional<double> alpha1, alpha2;
};

struct CriterionReport {
    CriterionId id{};
    double lhs = 0.0;
    double rhs = 0.0;
    bool violated = false;
    CriterionParams params;
    /// Set for gsic_diagonal, whose inequality is a reconstructed baseline.
    bool reconstructed = false;
};

/// Strict-inequality margin of the violated flag.
inline constexpr double kViolationMargin = 1e-12;
/// Radicands in [-kRadicandSlack, 0) clamp to 0; below that is an error.
inline constexpr double kRadicandSlack = 1e-10;
/// Imaginary parts of w_ij above this reject the measurement family.
inline constexpr double kImaginaryResidueLimit = 1e-8;

struct CorrelationMatrix {
    RealMatrix values;
    double max_imag_residue = 0.0;
};

/// Indices (0-based) of the Liu sub-matrix: block i of rows holds
/// rows[i*d + l] in [i*d1, (i+1)*d1), likewise for columns with d2.
struct LiuSelection {
    int d = 0;
    int m = 0;
    std::vector<int> rows;
    std::vector<int> cols;
};

// ---------------------------------------------------------------------------

/// Matrix of Tr((X_i (x) Y_j) op) for an arbitrary operator on C^dx (x) C^dy.
inline ComplexMatrix expectation_matrix(const ComplexMatrix& op, const MeasurementFamily& x,
                                        const MeasurementFamily& y) {
    const int d1 = x.dim, d2 = y.dim;
    if (op.rows() != d1 * d2 || op.cols() != d1 * d2)
        throw Error(ErrorKind::DimensionMismatch, "operator does not match measurement dimensions");
    ComplexMatrix out(x.size(), y.size());
    ComplexMatrix z(d2, d2);
    for (int i = 0; i < x.size(); ++i) {
        // z = Tr_A((X_i (x) I) op)
        const ComplexMatrix& xi = x.ops[static_cast<std::size_t>(i)];
        z.setZero();
        for (int a = 0; a < d1; ++a)
            for (int c = 0; c < d1; ++c) {
                const Complex coeff = xi(c, a);
                if (coeff == Complex(0.0)) continue;
                z += coeff * op.block(a * d2, c * d2, d2, d2);
            }
        for (int j = 0; j < y.size(); ++j)
            out(i, j) = (y.ops[static_cast<std::size_t>(j)].cwiseProduct(z.transpose())).sum();
    }
    return out;
}

/// w_ij = Tr(X_i (x) Y_j (rho - rho_A (x) rho_B)), realified after checking
/// the imaginary parts.
inline CorrelationMatrix correlation_matrix(const BipartiteState& s, const MeasurementFamily& x,
                                            const MeasurementFamily& y) {
    if (x.dim != s.d1() || y.dim != s.d2()) {
        std::ostringstream os;
        os << "measurement dimensions " << x.dim << "x" << y.dim << " do not match state " << s.d1() << "x"
           << s.d2();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    const ComplexMatrix& rho = s.matrix();
    const ComplexMatrix ra = partial_trace(rho, s.d1(), s.d2(), Subsystem::First);
    const ComplexMatrix rb = partial_trace(rho, s.d1(), s.d2(), Subsystem::Second);
    const ComplexMatrix w = expectation_matrix(rho - kron(ra, rb), x, y);

    CorrelationMatrix out{w.real(), w.imag().cwiseAbs().maxCoeff()};
    if (out.max_imag_residue > kImaginaryResidueLimit) {
        std::ostringstream os;
        os << "correlation entries have imaginary part " << out.max_imag_residue
           << "; measurement family is not Hermitian";
        throw Error(ErrorKind::ImaginaryResidue, os.str());
    }
    return out;
}

namespace detail {

inline double sum_squared_probabilities(const MeasurementFamily& f, const ComplexMatrix& rho) {
    double acc = 0.0;
    for (const auto& op : f.ops) {
        const double p = (op.cwiseProduct(rho.transpose())).sum().real();
        acc += p * p;
    }
    return acc;
}

inline double checked_sqrt(double radicand, std::string_view side) {
    if (radicand >= 0.0) return std::sqrt(radicand);
    if (radicand >= -kRadicandSlack) return 0.0;
    std::ostringstream os;
    os << side << " radicand " << radicand << " is negative; measurement set is inconsistent";
    throw Error(ErrorKind::RadicandNegative, os.str());
}

inline CriterionReport make_report(CriterionId id, double lhs, double rhs, CriterionParams params) {
    CriterionReport r;
    r.id = id;
    r.lhs = lhs;
    r.rhs = rhs;
    r.violated = lhs > rhs + kViolationMargin;
    r.params = std::move(params);
    r.reconstructed = id == CriterionId::GsicDiagonal;
    return r;
}

inline double diagonal_abs_sum(const RealMatrix& w) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < std::min(w.rows(), w.cols()); ++i) acc += std::abs(w(i, i));
    return acc;
}

inline double mum_rhs(const BipartiteState& s, const MumSet& xm, const MumSet& ym, const MeasurementFamily& x,
                      const MeasurementFamily& y) {
    const ComplexMatrix ra = partial_trace(s.matrix(), s.d1(), s.d2(), Subsystem::First);
    const ComplexMatrix rb = partial_trace(s.matrix(), s.d1(), s.d2(), Subsystem::Second);
    const double cx = (xm.count() - 1.0) / xm.dim + xm.kappa - sum_squared_probabilities(x, ra);
    const double cy = (ym.count() - 1.0) / ym.dim + ym.kappa - sum_squared_probabilities(y, rb);
    return checked_sqrt(cx, "first") * checked_sqrt(cy, "second");
}

inline double gsic_rhs(const BipartiteState& s, const GsicPovm& p, const GsicPovm& q, const MeasurementFamily& x,
                       const MeasurementFamily& y) {
    const ComplexMatrix ra = partial_trace(s.matrix(), s.d1(), s.d2(), Subsystem::First);
    const ComplexMatrix rb = partial_trace(s.matrix(), s.d1(), s.d2(), Subsystem::Second);
    const double d1 = p.dim, d2 = q.dim;
    const double cx = (p.alpha * d1 * d1 + 1.0) / (d1 * (d1 + 1.0)) - sum_squared_probabilities(x, ra);
    const double cy = (q.alpha * d2 * d2 + 1.0) / (d2 * (d2 + 1.0)) - sum_squared_probabilities(y, rb);
    return checked_sqrt(cx, "first") * checked_sqrt(cy, "second");
}

inline CriterionParams mum_params(const MumSet& xm, const MumSet& ym) {
    CriterionParams p;
    p.d1 = xm.dim;
    p.d2 = ym.dim;
    p.m1 = xm.count();
    p.m2 = ym.count();
    p.kappa1 = xm.kappa;
    p.kappa2 = ym.kappa;
    return p;
}

inline CriterionParams gsic_params(const GsicPovm& a, const GsicPovm& b) {
    CriterionParams p;
    p.d1 = a.dim;
    p.d2 = b.dim;
    p.m1 = a.dim * a.dim;
    p.m2 = b.dim * b.dim;
    p.alpha1 = a.alpha;
    p.alpha2 = b.alpha;
    return p;
}

inline void require_dims(const BipartiteState& s, int dx, int dy) {
    if (dx != s.d1() || dy != s.d2()) {
        std::ostringstream os;
        os << "measurements on " << dx << "x" << dy << " cannot act on a " << s.d1() << "x" << s.d2() << " state";
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

}  // namespace detail

inline CriterionReport criterion_mum_tracenorm(const BipartiteState& s, const MumSet& xm, const MumSet& ym) {
    detail::require_dims(s, xm.dim, ym.dim);
    const MeasurementFamily x = flatten(xm), y = flatten(ym);
    const double lhs = trace_norm(correlation_matrix(s, x, y).values);
    return detail::make_report(CriterionId::MumTraceNorm, lhs, detail::mum_rhs(s, xm, ym, x, y),
                               detail::mum_params(xm, ym));
}

inline CriterionReport criterion_mum_diagonal(const BipartiteState& s, const MumSet& xm, const MumSet& ym) {
    detail::require_dims(s, xm.dim, ym.dim);
    if (xm.dim != ym.dim || xm.count() != ym.count())
        throw Error(ErrorKind::UnequalDimensions, "diagonal criterion needs equal dimensions and set sizes");
    const MeasurementFamily x = flatten(xm), y = flatten(ym);
    const double lhs = detail::diagonal_abs_sum(correlation_matrix(s, x, y).values);
    return detail::make_report(CriterionId::MumDiagonal, lhs, detail::mum_rhs(s, xm, ym, x, y),
                               detail::mum_params(xm, ym));
}

/// First d operators of each measurement block on both sides.
inline LiuSelection default_liu_selection(int d1, int d2, int m) {
    LiuSelection sel{std::min(d1, d2), m, {}, {}};
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < sel.d; ++l) {
            sel.rows.push_back(i * d1 + l);
            sel.cols.push_back(i * d2 + l);
        }
    return sel;
}

inline void validate_liu_selection(const LiuSelection& sel, int d1, int d2, int m) {
    auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidSelection, why); };
    if (sel.d != std::min(d1, d2)) fail("selection block size must equal min(d1, d2)");
    if (sel.m != m) fail("selection measurement count does not match the MUM sets");
    const auto n = static_cast<std::size_t>(sel.m * sel.d);
    if (sel.rows.size() != n || sel.cols.size() != n) fail("selection must contain m*d row and column indices");
    for (int i = 0; i < sel.m; ++i) {
        std::vector<int> rs, cs;
        for (int l = 0; l < sel.d; ++l) {
            const int p = sel.rows[static_cast<std::size_t>(i * sel.d + l)];
            const int q = sel.cols[static_cast<std::size_t>(i * sel.d + l)];
            if (p < i * d1 || p >= (i + 1) * d1 || q < i * d2 || q >= (i + 1) * d2) {
                std::ostringstream os;
                os << "index pair (" << p << ", " << q << ") lies outside measurement block " << i;
                fail(os.str());
            }
            rs.push_back(p);
            cs.push_back(q);
        }
        std::sort(rs.begin(), rs.end());
        std::sort(cs.begin(), cs.end());
        if (std::adjacent_find(rs.begin(), rs.end()) != rs.end() || std::adjacent_find(cs.begin(), cs.end()) != cs.end())
            fail("selection indices within a block must be distinct");
    }
}

/// Tr(G) = sum_i Tr(X_{p_i} (x) Y_{q_i} rho); uses rho itself, not the
/// marginal-subtracted operator.
inline CriterionReport criterion_mum_liu(const BipartiteState& s, const MumSet& xm, const MumSet& ym,
                                         const LiuSelection& sel) {
    detail::require_dims(s, xm.dim, ym.dim);
    if (xm.count() != ym.count()) throw Error(ErrorKind::InvalidSelection, "Liu criterion needs m1 == m2");
    validate_liu_selection(sel, s.d1(), s.d2(), xm.count());
    const MeasurementFamily x = flatten(xm), y = flatten(ym);
    double lhs = 0.0;
    for (std::size_t k = 0; k < sel.rows.size(); ++k) {
        const ComplexMatrix op = kron(x.ops[static_cast<std::size_t>(sel.rows[k])],
                                      y.ops[static_cast<std::size_t>(sel.cols[k])]);
        lhs += (op.cwiseProduct(s.matrix().transpose())).sum().real();
    }
    const double m = xm.count();
    const double rhs = std::sqrt((m - 1.0) / xm.dim + xm.kappa) * std::sqrt((m - 1.0) / ym.dim + ym.kappa);
    return detail::make_report(CriterionId::MumLiu, lhs, rhs, detail::mum_params(xm, ym));
}

inline CriterionReport criterion_mum_liu(const BipartiteState& s, const MumSet& xm, const MumSet& ym) {
    return criterion_mum_liu(s, xm, ym, default_liu_selection(s.d1(), s.d2(), xm.count()));
}

inline CriterionReport criterion_gsic_tracenorm(const BipartiteState& s, const GsicPovm& p, const GsicPovm& q) {
    detail::require_dims(s, p.dim, q.dim);
    const MeasurementFamily x = flatten(p), y = flatten(q);
    const double lhs = trace_norm(correlation_matrix(s, x, y).values);
    return detail::make_report(CriterionId::GsicTraceNorm, lhs, detail::gsic_rhs(s, p, q, x, y),
                               detail::gsic_params(p, q));
}

inline CriterionReport criterion_gsic_diagonal(const BipartiteState& s, const GsicPovm& p, const GsicPovm& q) {
    detail::require_dims(s, p.dim, q.dim);
    if (p.dim != q.dim) throw Error(ErrorKind::UnequalDimensions, "diagonal criterion needs d1 == d2");
    const MeasurementFamily x = flatten(p), y = flatten(q);
    const double lhs = detail::diagonal_abs_sum(correlation_matrix(s, x, y).values);
    return detail::make_report(CriterionId::GsicDiagonal, lhs, detail::gsic_rhs(s, p, q, x, y),
                               detail::gsic_params(p, q));
}

// ---------------------------------------------------------------------------

/// Measurement sets for both parties, built once and reused across states.
struct MeasurementSetup {
    std::optional<MumSet> mum1, mum2;
    std::optional<GsicPovm> gsic1, gsic2;
};

/// Complete MUM sets (optionally truncated to m blocks) and GSIC-POVMs for
/// a d1 x d2 system. kappa/alpha apply to both parties.
inline MeasurementSetup make_setup(int d1, int d2, ParameterChoice kappa = ParameterChoice::max(),
                                   ParameterChoice alpha = ParameterChoice::max(), std::optional<int> m = {},
                                   bool with_mum = true, bool with_gsic = true) {
    MeasurementSetup setup;
    if (with_mum) {
        MumSet a = build_mums(d1, kappa);
        MumSet b = d2 == d1 ? a : build_mums(d2, kappa);
        if (m) {
            a = a.prefix(*m);
            b = b.prefix(*m);
        }
        setup.mum1 = std::move(a);
        setup.mum2 = std::move(b);
    }
    if (with_gsic) {
        GsicPovm a = build_gsic(d1, alpha);
        setup.gsic2 = d2 == d1 ? a : build_gsic(d2, alpha);
        setup.gsic1 = std::move(a);
    }
    return setup;
}

inline CriterionReport evaluate(CriterionId id, const BipartiteState& s, const MeasurementSetup& setup) {
    const bool need_gsic = uses_gsic(id);
    if (need_gsic ? !(setup.gsic1 && setup.gsic2) : !(setup.mum1 && setup.mum2))
        throw Error(ErrorKind::InvalidArgument, "measurement setup lacks the sets this criterion needs");
    switch (id) {
        case CriterionId::MumTraceNorm: return criterion_mum_tracenorm(s, *setup.mum1, *setup.mum2);
        case CriterionId::MumDiagonal: return criterion_mum_diagonal(s, *setup.mum1, *setup.mum2);
        case CriterionId::MumLiu: {
            // needs m1 == m2; unequal complete sets are cut to the common count
            const int m = std::min(setup.mum1->count(), setup.mum2->count());
            return criterion_mum_liu(s, setup.mum1->prefix(m), setup.mum2->prefix(m));
        }
        case CriterionId::GsicTraceNorm: return criterion_gsic_tracenorm(s, *setup.gsic1, *setup.gsic2);
        case CriterionId::GsicDiagonal: return criterion_gsic_diagonal(s, *setup.gsic1, *setup.gsic2);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown criterion");
}

}  // namespace mumsep
