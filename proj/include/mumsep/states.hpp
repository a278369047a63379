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

/// \file states.hpp
/// Reference states (tiles bound-entangled state, Werner states, white-noise
/// mixtures) and seeded random state generators.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string_view>
#include <vector>

#include "mumsep/error.hpp"
#include "mumsep/linalg.hpp"

namespace mumsep {

/// Flip operator sum_{ij} |ij><ji| on C^d (x) C^d.
inline ComplexMatrix swap_operator(int d) {
    ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
    return s;
}

/// The five orthonormal product vectors of the 3x3 tiles basis.
inline std::array<ComplexVector, 5> tiles_vectors() {
    auto ket = [](std::initializer_list<double> c) {
        ComplexVector v(3);
        int k = 0;
        for (double x : c) v(k++) = x;
        return v;
    };
    const double r2 = 1.0 / std::sqrt(2.0);
    const ComplexVector e0 = ket({1, 0, 0}), e1 = ket({0, 1, 0}), e2 = ket({0, 0, 1});
    const ComplexVector all = e0 + e1 + e2;
    return {
        kron(e0, (e0 - e1) * r2),
        kron((e0 - e1) * r2, e2),
        kron(e2, (e1 - e2) * r2),
        kron((e1 - e2) * r2, e0),
        kron(all, all) / 3.0,
    };
}

/// (I_9 - sum_i |eta_i><eta_i|) / 4: PPT yet entangled.
inline BipartiteState bennett_tiles() {
    ComplexMatrix proj = ComplexMatrix::Zero(9, 9);
    for (const auto& v : tiles_vectors()) proj += v * v.adjoint();
    return BipartiteState(3, 3, (ComplexMatrix::Identity(9, 9) - proj) / 4.0);
}

/// (1-p) I/(d1 d2) + p s.
inline BipartiteState with_white_noise(const BipartiteState& s, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "noise parameter p=" << p << " outside [0, 1]";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
    const int n = s.dim();
    return BipartiteState(s.d1(), s.d2(), (1.0 - p) / n * ComplexMatrix::Identity(n, n) + p * s.matrix());
}

/// Werner state ((d - r) I + (d r - 1) swap) / (d^3 - d), with Tr(swap rho) = r.
inline BipartiteState werner(int d, double r) {
    if (d < 2) throw Error(ErrorKind::InvalidArgument, "Werner state needs d >= 2");
    if (!(r >= -1.0 && r <= 1.0)) {
        std::ostringstream os;
        os << "Werner parameter r=" << r << " outside [-1, 1]";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
    const double norm = static_cast<double>(d) * d * d - d;
    const ComplexMatrix m = ((d - r) * ComplexMatrix::Identity(d * d, d * d) + (d * r - 1.0) * swap_operator(d)) / norm;
    return BipartiteState(d, d, m);
}

// ---------------------------------------------------------------------------
// Random states
// ---------------------------------------------------------------------------

/// All sampling draws from std::mt19937_64 seeded with the caller's seed.
using Rng = std::mt19937_64;
inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

inline ComplexMatrix random_gaussian_matrix(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = Complex(re, im);
        }
    return m;
}

/// Unitarily invariant random unit vector.
inline ComplexVector random_unit_vector(int d, Rng& rng) {
    ComplexVector v = random_gaussian_matrix(d, 1, rng);
    return v / v.norm();
}

inline DensityMatrix random_pure(int d, Rng& rng) {
    const ComplexVector v = random_unit_vector(d, rng);
    return validate_state(v * v.adjoint());
}

/// A A^H / Tr(A A^H) with a Gaussian square A.
inline DensityMatrix random_density(int d, Rng& rng) {
    const ComplexMatrix a = random_gaussian_matrix(d, d, rng);
    ComplexMatrix m = a * a.adjoint();
    m /= m.trace().real();
    m = (m + m.adjoint()) / 2.0;
    return validate_state(m);
}

/// Convex mix of `terms` random pure product states with random weights.
inline SeparableEnsemble random_separable(int d1, int d2, int terms, Rng& rng) {
    if (terms < 1) throw Error(ErrorKind::InvalidArgument, "separable mixture needs terms >= 1");
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::vector<double> w(static_cast<std::size_t>(terms));
    double total = 0.0;
    for (auto& x : w) total += (x = unif(rng));
    for (auto& x : w) x /= total;
    // last weight absorbs rounding
    double check = 0.0;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) check += w[k];
    w.back() = 1.0 - check;

    std::vector<DensityMatrix> a, b;
    for (int k = 0; k < terms; ++k) {
        a.push_back(random_pure(d1, rng));
        b.push_back(random_pure(d2, rng));
    }
    return SeparableEnsemble(std::move(w), std::move(a), std::move(b));
}

enum class SampleKind { Pure, Density, ProductPure, SeparableMixture };

/// Seeded bipartite sample of the given kind. Deterministic per seed.
inline BipartiteState sample_state(SampleKind kind, int d1, int d2, std::uint64_t seed, int terms = 4) {
    if (d1 < 1 || d2 < 1) throw Error(ErrorKind::InvalidArgument, "dimensions must be positive");
    Rng rng(seed);
    switch (kind) {
        case SampleKind::Pure: return BipartiteState(d1, d2, random_pure(d1 * d2, rng));
        case SampleKind::Density: return BipartiteState(d1, d2, random_density(d1 * d2, rng));
        case SampleKind::ProductPure: {
            const DensityMatrix a = random_pure(d1, rng);
            return product_state(a, random_pure(d2, rng));
        }
        case SampleKind::SeparableMixture: return random_separable(d1, d2, terms, rng).mix();
    }
    throw Error(ErrorKind::InvalidArgument, "unknown sample kind");
}

}  // namespace mumsep
