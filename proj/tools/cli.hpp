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

// Command dispatch for the `mumsep` executable. Kept in a header so the
// test suites can run commands in-process.
//
// Exit codes: 0 ok, 2 usage or input error, 3 verification failure,
// 4 reproduction failure.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mumsep/mumsep.hpp"

namespace mumsep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;
inline constexpr int kExitRepro = 4;

struct ReproRow {
    FamilyId family;
    CriterionId criterion;
    std::optional<double> ours;
    std::optional<double> published;
    bool gating = true;
    bool pass = false;
};

inline constexpr double kReproTolerance = 1e-3;

/// Thresholds of the two reference families under the four headline
/// criteria, compared with the published values (none = no detection).
inline std::vector<ReproRow> run_repro(ScanOptions opt = {}) {
    const StateFamily tiles = noisy_tiles_family();
    const StateFamily wer = werner_family(3);
    const MeasurementSetup setup = make_setup(3, 3);

    struct Case {
        StateFamily family;
        CriterionId id;
        std::optional<double> published;
    };
    const Case cases[] = {
        {tiles, CriterionId::MumTraceNorm, 0.8822},  {tiles, CriterionId::GsicTraceNorm, 0.8822},
        {tiles, CriterionId::MumDiagonal, std::nullopt}, {tiles, CriterionId::GsicDiagonal, std::nullopt},
        {wer, CriterionId::MumTraceNorm, -0.3340},   {wer, CriterionId::MumDiagonal, -0.3340},
        {wer, CriterionId::GsicTraceNorm, -0.3340},  {wer, CriterionId::GsicDiagonal, -0.3340},
    };

    std::vector<ReproRow> rows;
    for (const auto& c : cases) {
        const CriterionEvaluator eval = [&](const BipartiteState& s) { return evaluate(c.id, s, setup); };
        const ScanResult r =
            threshold_scan(c.family, eval, c.family.lo, c.family.hi, opt, std::string(to_string(c.id)));
        ReproRow row{c.family.id, c.id, r.threshold, c.published, c.id != CriterionId::GsicDiagonal, false};
        if (!row.published)
            row.pass = !row.ours && r.note.empty();
        else
            row.pass = row.ours && std::abs(*row.ours - *row.published) <= kReproTolerance;
        rows.push_back(row);
    }
    return rows;
}

inline void print_repro(std::ostream& out, const std::vector<ReproRow>& rows) {
    auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("none"); };
    out << std::left << std::setw(13) << "family" << std::setw(16) << "criterion" << std::setw(18) << "ours"
        << std::setw(11) << "published" << "status\n";
    for (const auto& r : rows) {
        std::string status = r.pass ? "pass" : "FAIL";
        if (!r.gating) status += " (non-gating)";
        out << std::left << std::setw(13) << to_string(r.family) << std::setw(16) << to_string(r.criterion)
            << std::setw(18) << cell(r.ours) << std::setw(11) << cell(r.published) << status << '\n';
    }
}

namespace detail {

struct ParamFlags {
    std::optional<double> kappa;
    std::optional<double> alpha;
    bool max = false;

    ParameterChoice kappa_choice() const { return kappa ? ParameterChoice::of(*kappa) : ParameterChoice::max(); }
    ParameterChoice alpha_choice() const { return alpha ? ParameterChoice::of(*alpha) : ParameterChoice::max(); }
};

inline void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    auto* k = cmd->add_option("--kappa", f.kappa, "MUM efficiency parameter");
    auto* a = cmd->add_option("--alpha", f.alpha, "GSIC purity parameter");
    auto* m = cmd->add_flag("--max", f.max, "largest feasible kappa/alpha (default)");
    m->excludes(k)->excludes(a);
}

inline CriterionId require_criterion(const std::string& s) {
    if (auto id = parse_criterion(s)) return *id;
    throw Error(ErrorKind::InvalidArgument, "unknown criterion '" + s + "'");
}

inline FamilyId require_family(const std::string& s) {
    if (auto f = parse_family(s)) return *f;
    throw Error(ErrorKind::InvalidArgument, "unknown state family '" + s + "'");
}

inline StateFamily family_for(FamilyId id, int dim) {
    if (id == FamilyId::NoisyTiles) {
        if (dim != 3) throw Error(ErrorKind::InvalidArgument, "noisy_tiles is defined only for --dim 3");
        return noisy_tiles_family();
    }
    if (dim < 2) throw Error(ErrorKind::InvalidArgument, "werner needs --dim >= 2");
    return werner_family(dim);
}

inline MeasurementSetup setup_for(CriterionId id, int d1, int d2, const ParamFlags& f, std::optional<int> m) {
    const bool gsic = uses_gsic(id);
    if (gsic && m) throw Error(ErrorKind::InvalidArgument, "--m applies to MUM criteria only");
    return make_setup(d1, d2, f.kappa_choice(), f.alpha_choice(), m, !gsic, gsic);
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement detection with mutually unbiased measurements and GSIC-POVMs", "mumsep"};
    app.require_subcommand(1);

    std::string type, state_path, criterion, family, out_path;
    int dim = 3;
    int grid = 200;
    double tol = 1e-4, from = 0.0, to = 1.0, param = 0.0;
    unsigned threads = 1;
    std::optional<int> m;
    detail::ParamFlags flags;

    auto* verify = app.add_subcommand("verify-measurements", "construct and verify a MUM set or GSIC-POVM");
    verify->add_option("--type", type, "mum or gsic")->required()->check(CLI::IsMember({"mum", "gsic"}));
    verify->add_option("--dim", dim, "dimension d")->required()->check(CLI::Range(2, 16));
    detail::add_param_flags(verify, flags);

    auto* detect = app.add_subcommand("detect", "evaluate one criterion on a state file");
    detect->add_option("--state", state_path, "state file (JSON)")->required();
    detect->add_option("--criterion", criterion, "criterion id")->required();
    detect->add_option("--m", m, "number of MUM blocks")->check(CLI::PositiveNumber);
    detail::add_param_flags(detect, flags);

    auto* scan = app.add_subcommand("scan", "threshold scan over a state family");
    scan->add_option("--family", family, "noisy_tiles or werner")->required();
    scan->add_option("--dim", dim, "local dimension");
    scan->add_option("--criterion", criterion, "criterion id")->required();
    scan->add_option("--from", from, "interval start")->required();
    scan->add_option("--to", to, "interval end")->required();
    scan->add_option("--grid", grid, "grid points");
    scan->add_option("--tol", tol, "bisection tolerance");
    scan->add_option("--out", out_path, "CSV output file (default stdout)");
    scan->add_option("--threads", threads, "worker threads for the grid");
    detail::add_param_flags(scan, flags);

    auto* gen = app.add_subcommand("gen-state", "write a state file for a family member");
    gen->add_option("--family", family, "noisy_tiles or werner")->required();
    gen->add_option("--dim", dim, "local dimension");
    gen->add_option("--param", param, "family parameter")->required();
    gen->add_option("--out", out_path, "output file")->required();

    auto* repro = app.add_subcommand("repro", "reproduce the published detection thresholds");
    repro->add_option("--grid", grid, "grid points");
    repro->add_option("--tol", tol, "bisection tolerance");
    repro->add_option("--threads", threads, "worker threads per scan");

    std::vector<const char*> argv{"mumsep"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*verify) {
            Json rec;
            bool ok = false;
            if (type == "mum") {
                const MumSet s = build_mums(dim, flags.kappa_choice());
                const MumVerification v = verify_mums(s);
                rec = {{"type", "mum"},
                       {"dim", dim},
                       {"measurements", s.count()},
                       {"kappa", v.kappa},
                       {"max_trace_deviation", v.max_trace_deviation},
                       {"max_overlap_deviation", v.max_overlap_deviation},
                       {"max_completeness_deviation", v.max_completeness_deviation},
                       {"min_eigenvalue", v.min_eigenvalue},
                       {"passed", v.passed()}};
                ok = v.passed();
            } else {
                const GsicPovm g = build_gsic(dim, flags.alpha_choice());
                const GsicVerification v = verify_gsic(g);
                rec = {{"type", "gsic"},
                       {"dim", dim},
                       {"elements", g.ops.size()},
                       {"alpha", v.alpha},
                       {"max_purity_deviation", v.max_purity_deviation},
                       {"max_overlap_deviation", v.max_overlap_deviation},
                       {"completeness_deviation", v.completeness_deviation},
                       {"min_eigenvalue", v.min_eigenvalue},
                       {"passed", v.passed()}};
                ok = v.passed();
            }
            out << rec.dump() << '\n';
            return ok ? kExitOk : kExitVerification;
        }

        if (*detect) {
            const CriterionId id = detail::require_criterion(criterion);
            const BipartiteState s = load_state(state_path);
            const MeasurementSetup setup = detail::setup_for(id, s.d1(), s.d2(), flags, m);
            out << report_to_json(evaluate(id, s, setup)).dump() << '\n';
            return kExitOk;
        }

        if (*scan) {
            const CriterionId id = detail::require_criterion(criterion);
            const StateFamily fam = detail::family_for(detail::require_family(family), dim);
            const MeasurementSetup setup = detail::setup_for(id, fam.d1(), fam.d2(), flags, std::nullopt);
            const CriterionEvaluator eval = [&](const BipartiteState& st) { return evaluate(id, st, setup); };
            const ScanResult r = threshold_scan(fam, eval, from, to, ScanOptions{grid, tol, threads}, criterion);
            if (out_path.empty()) {
                write_scan_csv(out, r);
            } else {
                std::ofstream f(out_path);
                if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + out_path + "'");
                write_scan_csv(f, r);
                out << "threshold," << (r.threshold ? format_number(*r.threshold) : std::string("none")) << '\n';
            }
            return kExitOk;
        }

        if (*gen) {
            const StateFamily fam = detail::family_for(detail::require_family(family), dim);
            if (!(param >= fam.lo && param <= fam.hi))
                throw Error(ErrorKind::InvalidArgument, "parameter outside the family's domain");
            save_state(fam.at(param), out_path);
            return kExitOk;
        }

        if (*repro) {
            const auto rows = run_repro(ScanOptions{grid, tol, threads});
            print_repro(out, rows);
            for (const auto& r : rows)
                if (r.gating && !r.pass) return kExitRepro;
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace mumsep::cli
