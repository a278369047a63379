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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "mumsep/mumsep.hpp"
#include "test_support.hpp"

using namespace mumsep;
using mumsep::testing::expectation;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

const MeasurementSetup& setup3() {
    static const MeasurementSetup s = make_setup(3, 3);
    return s;
}

ScanResult scan(const StateFamily& fam, CriterionId id) {
    const CriterionEvaluator eval = [id](const BipartiteState& s) { return evaluate(id, s, setup3()); };
    return threshold_scan(fam, eval, fam.lo, fam.hi, ScanOptions{}, std::string(to_string(id)));
}

std::string show(const std::optional<double>& t) { return t ? format_number(*t) : std::string("none"); }

bool near(const std::optional<double>& t, double target) { return t && std::abs(*t - target) <= 1e-3; }

Outcome ac1_tiles_threshold() {
    const auto t0 = std::chrono::steady_clock::now();
    const ScanResult r = scan(noisy_tiles_family(), CriterionId::MumTraceNorm);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os << "threshold=" << show(r.threshold) << " target=0.8822 runtime=" << format_number(secs) << "s";
    return {near(r.threshold, 0.8822) && secs < 10.0, os.str()};
}

Outcome ac2_tiles_negative_control() {
    const ScanResult md = scan(noisy_tiles_family(), CriterionId::MumDiagonal);
    const ScanResult gd = scan(noisy_tiles_family(), CriterionId::GsicDiagonal);
    const bool gsic_ok = !gd.threshold && gd.note.empty();
    std::ostringstream os;
    os << "mum_diagonal=" << show(md.threshold) << " gsic_diagonal=" << show(gd.threshold)
       << (gsic_ok ? "" : " (gsic_diagonal non-gating)");
    return {!md.threshold && md.note.empty(), os.str()};
}

Outcome ac3_werner_threshold() {
    const ScanResult mt = scan(werner_family(3), CriterionId::MumTraceNorm);
    const ScanResult md = scan(werner_family(3), CriterionId::MumDiagonal);
    std::ostringstream os;
    os << "mum_tracenorm=" << show(mt.threshold) << " mum_diagonal=" << show(md.threshold) << " target=-0.3340";
    return {near(mt.threshold, -0.3340) && near(md.threshold, -0.3340), os.str()};
}

Outcome ac4_gsic_thresholds() {
    const ScanResult tiles = scan(noisy_tiles_family(), CriterionId::GsicTraceNorm);
    const ScanResult wer = scan(werner_family(3), CriterionId::GsicTraceNorm);
    std::ostringstream os;
    os << "tiles=" << show(tiles.threshold) << " werner=" << show(wer.threshold);
    return {near(tiles.threshold, 0.8822) && near(wer.threshold, -0.3340), os.str()};
}

Outcome ac5_constructions() {
    int checked = 0, failed = 0;
    for (int d = 2; d <= 6; ++d) {
        const double kmax = mum_kappa_max(d), amax = gsic_alpha_max(d);
        const double kmid = 0.5 * (1.0 / d + kmax), amid = 0.5 * (1.0 / (d * d * d) + amax);
        for (const ParameterChoice& c : {ParameterChoice::max(), ParameterChoice::of(kmid)}) {
            ++checked;
            if (!verify_mums(build_mums(d, c)).passed()) ++failed;
        }
        for (const ParameterChoice& c : {ParameterChoice::max(), ParameterChoice::of(amid)}) {
            ++checked;
            if (!verify_gsic(build_gsic(d, c)).passed()) ++failed;
        }
    }
    return {failed == 0, std::to_string(checked) + " constructions, " + std::to_string(failed) + " failed"};
}

Outcome ac6_soundness() {
    const std::pair<int, int> dims[] = {{2, 2}, {2, 3}, {3, 3}};
    const MeasurementSetup setups[] = {make_setup(2, 2), make_setup(2, 3), make_setup(3, 3)};
    int violations = 0, evaluations = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto [d1, d2] = dims[k % 3];
        const BipartiteState s = sample_state(SampleKind::SeparableMixture, d1, d2, 50000 + k, 1 + k % 8);
        for (CriterionId id : kAllCriteria) {
            // Diagonal criteria are defined for d1 == d2 only.
            if (d1 != d2 && (id == CriterionId::MumDiagonal || id == CriterionId::GsicDiagonal)) continue;
            ++evaluations;
            if (evaluate(id, s, setups[k % 3]).violated) ++violations;
        }
    }
    return {violations == 0, "1000 states, " + std::to_string(evaluations) + " evaluations, " +
                                 std::to_string(violations) + " violations"};
}

Outcome ac7_dominance() {
    double worst = -1e300;
    int inconsistent = 0;
    for (int k = 0; k < 500; ++k) {
        const SampleKind kind = k % 2 == 0 ? SampleKind::Pure : SampleKind::Density;
        const BipartiteState s = sample_state(kind, 3, 3, 70000 + k);
        const auto mt = evaluate(CriterionId::MumTraceNorm, s, setup3());
        const auto md = evaluate(CriterionId::MumDiagonal, s, setup3());
        const auto gt = evaluate(CriterionId::GsicTraceNorm, s, setup3());
        const auto gd = evaluate(CriterionId::GsicDiagonal, s, setup3());
        worst = std::max({worst, md.lhs - mt.lhs, gd.lhs - gt.lhs});
        if ((md.violated && !mt.violated) || (gd.violated && !gt.violated)) ++inconsistent;
    }
    std::ostringstream os;
    os << "max(diag-tracenorm)=" << format_number(worst) << " inconsistent=" << inconsistent;
    return {worst <= 1e-10 && inconsistent == 0, os.str()};
}

Outcome ac8_purity_bound() {
    std::mt19937_64 rng(80);
    double worst = 1e300;
    for (int d = 2; d <= 4; ++d) {
        const MumSet mums = build_mums(d);
        const MeasurementFamily f = flatten(mums);
        const double bound = (mums.count() - 1.0) / d + mums.kappa;
        for (int k = 0; k < 500; ++k) {
            const DensityMatrix rho = random_pure(d, rng);
            double acc = 0.0;
            for (const auto& x : f.ops) acc += std::pow(expectation(x, rho.matrix()), 2);
            worst = std::min(worst, bound - acc);
        }
    }
    return {worst >= -1e-10, "min margin=" + format_number(worst)};
}

Outcome ac9_appendix_identity() {
    std::mt19937_64 rng(90);
    const std::pair<int, int> dims[] = {{2, 2}, {2, 3}, {3, 3}};
    double identity_err = 0.0, chain_excess = -1e300;
    for (int k = 0; k < 100; ++k) {
        const auto [d1, d2] = dims[k % 3];
        const SeparableEnsemble e = random_separable(d1, d2, 1 + k % 5, rng);
        const ComplexMatrix rho = e.mix_matrix();
        const ComplexMatrix lhs =
            rho - kron(partial_trace(rho, d1, d2, Subsystem::First), partial_trace(rho, d1, d2, Subsystem::Second));
        const MumSet xa = build_mums(d1), yb = build_mums(d2);
        const MeasurementFamily x = flatten(xa), y = flatten(yb);
        ComplexMatrix rhs = ComplexMatrix::Zero(d1 * d2, d1 * d2);
        double chain = 0.0;
        for (std::size_t s = 0; s < e.size(); ++s)
            for (std::size_t t = 0; t < e.size(); ++t) {
                const ComplexMatrix da = e.factors_a()[s].matrix() - e.factors_a()[t].matrix();
                const ComplexMatrix db = e.factors_b()[s].matrix() - e.factors_b()[t].matrix();
                const double w = e.weights()[s] * e.weights()[t];
                rhs += 0.5 * w * kron(da, db);
                RealVector beta(x.size()), eta(y.size());
                for (int i = 0; i < x.size(); ++i) beta(i) = expectation(x.ops[i], da);
                for (int j = 0; j < y.size(); ++j) eta(j) = expectation(y.ops[j], db);
                chain += 0.5 * w * beta.norm() * eta.norm();
            }
        identity_err = std::max(identity_err, (lhs - rhs).cwiseAbs().maxCoeff());
        const CriterionReport r = criterion_mum_tracenorm(e.mix(), xa, yb);
        chain_excess = std::max({chain_excess, r.lhs - chain, chain - r.rhs});
    }
    std::ostringstream os;
    os << "identity max err=" << format_number(identity_err) << " chain max excess=" << format_number(chain_excess);
    return {identity_err <= 1e-10 && chain_excess <= 1e-10, os.str()};
}

Outcome ac10_parameter_invariance() {
    const BipartiteState s = with_white_noise(bennett_tiles(), 0.9);
    const int d = 3;
    const MumSet a = build_mums(d), b = build_mums(d, ParameterChoice::of(0.5 * (1.0 / d + mum_kappa_max(d))));
    const auto ra = criterion_mum_tracenorm(s, a, a), rb = criterion_mum_tracenorm(s, b, b);
    const GsicPovm g = build_gsic(d), h = build_gsic(d, ParameterChoice::of(0.5 * (1.0 / 27.0 + gsic_alpha_max(d))));
    const auto ga = criterion_gsic_tracenorm(s, g, g), gb = criterion_gsic_tracenorm(s, h, h);
    const double dm = std::abs(ra.lhs / ra.rhs - rb.lhs / rb.rhs);
    const double dg = std::abs(ga.lhs / ga.rhs - gb.lhs / gb.rhs);
    std::ostringstream os;
    os << "mum ratio diff=" << format_number(dm) << " gsic ratio diff=" << format_number(dg);
    return {dm <= 1e-8 && dg <= 1e-8, os.str()};
}

Outcome ac11_oracle_consistency() {
    std::vector<BipartiteState> states;
    for (int k = 0; k <= 100; ++k) states.push_back(noisy_tiles_family().at(k / 100.0));
    for (int k = 0; k <= 100; ++k) states.push_back(werner_family(3).at(-1.0 + k / 50.0));
    for (int k = 0; k < 100; ++k) states.push_back(sample_state(SampleKind::Density, 3, 3, 110000 + k));
    for (int k = 0; k < 100; ++k) states.push_back(sample_state(SampleKind::Pure, 3, 3, 120000 + k));
    int flagged = 0, unexplained = 0;
    for (const auto& s : states) {
        bool any = false;
        for (CriterionId id : kAllCriteria) any = any || evaluate(id, s, setup3()).violated;
        if (!any) continue;
        ++flagged;
        if (!(ppt_min_eigenvalue(s) < 0.0 || ccnr_value(s) > 1.0)) ++unexplained;
    }
    const BipartiteState tiles = bennett_tiles();
    const double pt = ppt_min_eigenvalue(tiles), cc = ccnr_value(tiles);
    std::ostringstream os;
    os << flagged << " flagged, " << unexplained << " unexplained; tiles min PT eig=" << format_number(pt)
       << " ccnr=" << format_number(cc);
    return {unexplained == 0 && flagged > 0 && pt >= -1e-12 && cc > 1.0, os.str()};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> checks[] = {
        {"AC1  tiles threshold (mum_tracenorm)", ac1_tiles_threshold},
        {"AC2  tiles negative control (diagonal)", ac2_tiles_negative_control},
        {"AC3  werner d=3 threshold (mum)", ac3_werner_threshold},
        {"AC4  gsic_tracenorm thresholds", ac4_gsic_thresholds},
        {"AC5  measurement construction d=2..6", ac5_constructions},
        {"AC6  soundness on separable mixtures", ac6_soundness},
        {"AC7  diagonal dominated by trace norm", ac7_dominance},
        {"AC8  purity bound on pure states", ac8_purity_bound},
        {"AC9  separable decomposition identity", ac9_appendix_identity},
        {"AC10 kappa/alpha invariance", ac10_parameter_invariance},
        {"AC11 oracle consistency", ac11_oracle_consistency},
    };
    int failures = 0;
    for (const auto& [name, fn] : checks) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s  %-40s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(checks)) - failures, std::size(checks));
    return failures == 0 ? 0 : 1;
}
