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

/// \file linalg.hpp
/// Dense complex-matrix kernel: Kronecker products, partial traces, trace
/// norms and density-matrix validation.
///
/// Index convention used everywhere in the library: the pair (i, j) of a
/// d1 x d2 bipartite system maps to the flat index i * d2 + j, so the first
/// tensor factor is the slow index. Matrices are Eigen column-major in
/// memory, but every serialized form is row-major.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mumsep/error.hpp"

namespace mumsep {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-9;
}  // namespace tol

enum class Subsystem { First, Second };

// ---------------------------------------------------------------------------
// Basic primitives
// ---------------------------------------------------------------------------

template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    Result out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

/// Partial trace of any square operator on C^d1 (x) C^d2. Not restricted to
/// states; the swap operator and differences of states go through here too.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, int d1, int d2, Subsystem keep) {
    if (d1 < 1 || d2 < 1 || m.rows() != d1 * d2 || m.cols() != d1 * d2) {
        std::ostringstream os;
        os << "operator of size " << m.rows() << "x" << m.cols() << " does not split as " << d1
           << "x" << d2;
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    if (keep == Subsystem::First) {
        ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
        for (int i = 0; i < d1; ++i)
            for (int k = 0; k < d1; ++k)
                for (int j = 0; j < d2; ++j) out(i, k) += m(i * d2 + j, k * d2 + j);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
    for (int j = 0; j < d2; ++j)
        for (int l = 0; l < d2; ++l)
            for (int i = 0; i < d1; ++i) out(j, l) += m(i * d2 + j, i * d2 + l);
    return out;
}

template <typename Derived>
RealVector singular_values(const Eigen::MatrixBase<Derived>& a) {
    using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (a.size() == 0) return RealVector();
    Eigen::JacobiSVD<Plain> svd(a.eval());
    return svd.singularValues();
}

/// Sum of singular values.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& a) {
    return singular_values(a).sum();
}

/// Largest singular value.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& a) {
    const RealVector s = singular_values(a);
    return s.size() == 0 ? 0.0 : s.maxCoeff();
}

inline double hermitian_deviation(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Ascending eigenvalues of the Hermitian part of m.
inline RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
    const ComplexMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eigenvalues(m).minCoeff(); }

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

class DensityMatrix;
DensityMatrix validate_state(const ComplexMatrix& m, double tol_psd = tol::psd);

/// A Hermitian, unit-trace, positive semidefinite matrix. Only obtainable
/// through validate_state, so holding one is proof the checks passed.
class DensityMatrix {
public:
    int dim() const { return static_cast<int>(mat_.rows()); }
    const ComplexMatrix& matrix() const { return mat_; }

private:
    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
    friend DensityMatrix validate_state(const ComplexMatrix&, double);

    ComplexMatrix mat_;
};

/// First violated density-matrix invariant, if any.
struct StateDefect {
    ErrorKind kind;
    double deviation;
    std::string message;
};

inline std::optional<StateDefect> check_state(const ComplexMatrix& m, double tol_psd = tol::psd) {
    auto defect = [](ErrorKind k, double dev, const std::string& what) {
        std::ostringstream os;
        os.precision(6);
        os << what << " (deviation " << std::scientific << dev << ")";
        return StateDefect{k, dev, os.str()};
    };
    if (m.rows() == 0 || m.rows() != m.cols())
        return defect(ErrorKind::NotSquare, 0.0, "matrix is not square and non-empty");
    const double herm = hermitian_deviation(m);
    if (!(herm <= tol::hermitian))
        return defect(ErrorKind::NotHermitian, herm, "max |m - m^H| entry exceeds 1e-10");
    const double tr = std::abs(m.trace() - Complex(1.0, 0.0));
    if (!(tr <= tol::trace)) return defect(ErrorKind::TraceNotOne, tr, "|Tr(m) - 1| exceeds 1e-10");
    const double lmin = min_eigenvalue(m);
    if (!(lmin >= -tol_psd))
        return defect(ErrorKind::NotPSD, -lmin, "minimum eigenvalue is negative");
    return std::nullopt;
}

/// Returns the matrix as a DensityMatrix, or throws the first failed
/// invariant (NotSquare, NotHermitian, TraceNotOne, NotPSD).
inline DensityMatrix validate_state(const ComplexMatrix& m, double tol_psd) {
    if (auto d = check_state(m, tol_psd)) throw Error(d->kind, d->message);
    return DensityMatrix(m);
}

/// A density matrix on C^d1 (x) C^d2.
class BipartiteState {
public:
    BipartiteState(int d1, int d2, DensityMatrix state) : d1_(d1), d2_(d2), state_(std::move(state)) {
        if (d1 < 1 || d2 < 1 || state_.dim() != d1 * d2) {
            std::ostringstream os;
            os << "state of dimension " << state_.dim() << " is not " << d1 << "x" << d2;
            throw Error(ErrorKind::DimensionMismatch, os.str());
        }
    }

    BipartiteState(int d1, int d2, const ComplexMatrix& m) : BipartiteState(d1, d2, validate_state(m)) {}

    int d1() const { return d1_; }
    int d2() const { return d2_; }
    int dim() const { return state_.dim(); }
    const DensityMatrix& state() const { return state_; }
    const ComplexMatrix& matrix() const { return state_.matrix(); }

private:
    int d1_;
    int d2_;
    DensityMatrix state_;
};

inline DensityMatrix partial_trace(const BipartiteState& s, Subsystem keep) {
    return validate_state(partial_trace(s.matrix(), s.d1(), s.d2(), keep));
}

inline BipartiteState product_state(const DensityMatrix& a, const DensityMatrix& b) {
    return BipartiteState(a.dim(), b.dim(), kron(a.matrix(), b.matrix()));
}

/// Convex combination sum_k p_k rho_k^A (x) rho_k^B.
class SeparableEnsemble {
public:
    SeparableEnsemble(std::vector<double> weights, std::vector<DensityMatrix> factors_a,
                      std::vector<DensityMatrix> factors_b)
        : weights_(std::move(weights)), a_(std::move(factors_a)), b_(std::move(factors_b)) {
        if (weights_.empty() || weights_.size() != a_.size() || weights_.size() != b_.size())
            throw Error(ErrorKind::InvalidArgument, "ensemble lists must be non-empty and of equal length");
        double total = 0.0;
        for (double p : weights_) {
            if (!(p > 0.0)) throw Error(ErrorKind::InvalidArgument, "ensemble weights must be positive");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw Error(ErrorKind::InvalidArgument, "ensemble weights must sum to 1");
        for (std::size_t k = 1; k < a_.size(); ++k)
            if (a_[k].dim() != a_[0].dim() || b_[k].dim() != b_[0].dim())
                throw Error(ErrorKind::DimensionMismatch, "ensemble factors must share dimensions");
    }

    std::size_t size() const { return weights_.size(); }
    int d1() const { return a_.front().dim(); }
    int d2() const { return b_.front().dim(); }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<DensityMatrix>& factors_a() const { return a_; }
    const std::vector<DensityMatrix>& factors_b() const { return b_; }

    ComplexMatrix mix_matrix() const {
        ComplexMatrix out = ComplexMatrix::Zero(d1() * d2(), d1() * d2());
        for (std::size_t k = 0; k < size(); ++k) out += weights_[k] * kron(a_[k].matrix(), b_[k].matrix());
        return out;
    }

    BipartiteState mix() const { return BipartiteState(d1(), d2(), mix_matrix()); }

private:
    std::vector<double> weights_;
    std::vector<DensityMatrix> a_;
    std::vector<DensityMatrix> b_;
};

}  // namespace mumsep
