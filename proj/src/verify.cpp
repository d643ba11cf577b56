#include "pamed/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "pamed/errors.hpp"

namespace pamed {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

nlohmann::json params_json(const ModelParams& p) {
    return {{"t", p.t},
            {"v", p.v},
            {"u", p.u},
            {"eps_d", p.eps_d_value()},
            {"eps_aux", p.eps_aux},
            {"form", p.form == ModelForm::original ? "original" : "hubbardized"}};
}

void finalize(CheckRecord& rec) {
    rec.status = !rec.hypothesis_met ? "skipped" : rec.pass ? "pass" : "fail";
    if (!rec.hypothesis_met) rec.pass = false;  // skipped is never a pass
}

// Theorems assume the hybridized lattice with a repulsive layer-2 interaction
// (or, with U = 0, a nonzero auxiliary interaction to carry the argument).
bool theorem_hypotheses(const ModelParams& p) {
    return p.v > 0.0 && p.u >= 0.0 && p.eps_aux >= 0.0 && (p.u > 0.0 || p.eps_aux > 0.0) &&
           p.symmetric_point();
}

struct GroundState {
    BasisPtr basis;
    StateVector state;
    double e0;
    double gap;
};

GroundState solve_half_filled(const ModelParams& params, const LatticeGraph& lattice,
                              const VerifyOptions& opts) {
    const int m = lattice.num_sites;
    const int half = m / 2;
    BasisPtr basis = enumerate_sector(m, half, half, opts.max_dim);
    SparseOperator h = build_hubbardized(params, lattice, *basis);
    const int k = static_cast<int>(std::min<std::uint64_t>(2, basis->dim));
    EigenResult res = solve_lowest(h, basis, k, opts.tol_eig, opts.seed, opts.solve);
    GroundState gs;
    gs.basis = basis;
    gs.state = res.eigenvectors[0];
    gs.e0 = res.eigenvalues[0];
    gs.gap = res.eigenvalues.size() > 1 ? res.eigenvalues[1] - res.eigenvalues[0] : 0.0;
    return gs;
}

}  // namespace

nlohmann::json CheckRecord::to_json() const {
    return {{"name", name},
            {"hypothesis_met", hypothesis_met},
            {"pass", pass},
            {"status", status},
            {"measured", measured},
            {"measured_desc", measured_desc},
            {"tolerance", tolerance},
            {"details", details},
            {"parameters", params_json(params)},
            {"sector", {{"n_up", sector_n_up}, {"n_down", sector_n_down}}},
            {"timing_seconds", timing_seconds}};
}

bool VerificationReport::verdict() const {
    for (const CheckRecord& c : checks)
        if (c.hypothesis_met && !c.pass) return false;
    return true;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json checks_json = nlohmann::json::array();
    for (const CheckRecord& c : checks) checks_json.push_back(c.to_json());
    return {{"verdict", verdict() ? "pass" : "fail"}, {"checks", checks_json}};
}

SignPatternResult check_sign_pattern(const CorrelationMatrix& corr, const LatticeGraph& lattice,
                                     double tol) {
    SignPatternResult out;
    double min_same = std::numeric_limits<double>::infinity();
    double max_opp = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < corr.num_sites; ++r)
        for (int h = 0; h < corr.num_sites; ++h) {
            if (r == h) continue;
            const bool same = lattice.sublattice[r] == lattice.sublattice[h];
            if (same)
                min_same = std::min(min_same, corr.at(r, h));
            else
                max_opp = std::max(max_opp, corr.at(r, h));
        }
    if (!std::isfinite(min_same)) min_same = 0.0;  // no same-sublattice pairs (e.g. M = 2)
    if (!std::isfinite(max_opp)) max_opp = 0.0;
    out.min_same_sublattice = min_same;
    out.max_opposite_sublattice = max_opp;
    out.worst_margin = std::min(min_same, -max_opp);
    out.pass = out.worst_margin >= -tol;
    return out;
}

IdentityResult check_singlet_identities(const StateVector& state, double tol) {
    IdentityResult out;
    const CorrelationMatrix pm = correlation_matrix(state, CorrelationKind::transverse);
    const CorrelationMatrix zz = correlation_matrix(state, CorrelationKind::zz);
    const CorrelationMatrix xx = correlation_matrix(state, CorrelationKind::xx);
    const CorrelationMatrix yy = correlation_matrix(state, CorrelationKind::yy);
    for (int r = 0; r < pm.num_sites; ++r)
        for (int h = 0; h < pm.num_sites; ++h) {
            if (r == h) continue;
            out.max_dev_transverse_2zz =
                std::max(out.max_dev_transverse_2zz, std::abs(pm.at(r, h) - 2.0 * zz.at(r, h)));
            out.max_dev_xx_yy = std::max(out.max_dev_xx_yy, std::abs(xx.at(r, h) - yy.at(r, h)));
            out.max_dev_xx_zz = std::max(out.max_dev_xx_zz, std::abs(xx.at(r, h) - zz.at(r, h)));
        }
    out.s_squared = total_spin_squared(state);
    out.pass = out.max_dev_transverse_2zz <= tol && out.max_dev_xx_yy <= tol &&
               out.max_dev_xx_zz <= tol && std::abs(out.s_squared) <= tol;
    return out;
}

CheckRecord check_ground_sector(const ModelParams& params, const LatticeGraph& lattice,
                                const VerifyOptions& opts) {
    const auto start = Clock::now();
    CheckRecord rec;
    rec.name = "ground_sector_uniqueness";
    rec.params = params;
    rec.measured_desc = "min(in-sector gap, cross-sector margin)";
    const int m = lattice.num_sites;
    rec.sector_n_up = rec.sector_n_down = m / 2;
    rec.hypothesis_met = params.u > 0.0 && params.v > 0.0 && params.symmetric_point();

    if (rec.hypothesis_met) {
        ModelParams p = params;
        p.form = ModelForm::hubbardized;
        SectorScanResult scan =
            sector_scan(p, lattice, m, opts.tol_eig, opts.seed, opts.solve, opts.max_dim);
        const double gap_tol = opts.gap_tol_scale * std::max(1.0, std::abs(scan.half_sector_e0));
        rec.tolerance = gap_tol;
        const bool right_sector = scan.min_n_up == m / 2 && scan.min_n_down == m / 2;
        rec.measured = std::min(scan.half_sector_gap, scan.cross_sector_margin);
        rec.pass = !scan.any_failed && right_sector && scan.half_sector_gap > gap_tol &&
                   scan.cross_sector_margin > gap_tol;
        rec.details = {{"e0", scan.half_sector_e0},
                       {"gap", scan.half_sector_gap},
                       {"cross_sector_margin", scan.cross_sector_margin},
                       {"minimizer", {scan.min_n_up, scan.min_n_down}},
                       {"any_sector_failed", scan.any_failed}};
        nlohmann::json rows = nlohmann::json::array();
        for (const SectorScanRow& row : scan.rows)
            rows.push_back({{"n_up", row.n_up}, {"n_down", row.n_down}, {"e0", row.e0},
                            {"failed", row.failed}});
        rec.details["sectors"] = rows;
    }
    rec.timing_seconds = seconds_since(start);
    finalize(rec);
    return rec;
}

CheckRecord check_theorem1(const ModelParams& params, const LatticeGraph& lattice,
                           const VerifyOptions& opts) {
    const auto start = Clock::now();
    CheckRecord rec;
    rec.name = "theorem1_pair_correlations";
    rec.params = params;
    rec.measured_desc = "min off-diagonal pair-correlation entry";
    rec.tolerance = opts.tol_expect;
    const int m = lattice.num_sites;
    rec.sector_n_up = rec.sector_n_down = m / 2;
    rec.hypothesis_met = theorem_hypotheses(params);

    if (rec.hypothesis_met) {
        // Theorem frame: the (-eps, -U) ground state at half filling.
        ModelParams attractive = params;
        attractive.form = ModelForm::hubbardized;
        attractive = attractive.flipped();
        GroundState gs = solve_half_filled(attractive, lattice, opts);

        const CorrelationMatrix pair = correlation_matrix(gs.state, CorrelationKind::pair);
        double min_offdiag = std::numeric_limits<double>::infinity();
        for (int r = 0; r < m; ++r)
            for (int h = 0; h < m; ++h)
                if (r != h) min_offdiag = std::min(min_offdiag, pair.at(r, h));

        const WMatrix w = extract_w(gs.state);
        const WAnalysis wa = analyze_w(w);
        const OdlroSummary odlro = odlro_summary(pair, lattice.num_layer1_sites());

        const bool w_ok = wa.min_symmetric_eigenvalue > -opts.w_min_eig_tol &&
                          wa.asymmetry_frobenius < opts.w_asym_rel_tol * wa.frobenius_norm;
        rec.measured = min_offdiag;
        rec.pass = min_offdiag >= -opts.tol_expect && w_ok;
        rec.details = {{"e0_attractive", gs.e0},
                       {"min_offdiagonal_pair_entry", min_offdiag},
                       {"w_dim", w.dim},
                       {"w_min_symmetric_eigenvalue", wa.min_symmetric_eigenvalue},
                       {"w_asymmetry_frobenius", wa.asymmetry_frobenius},
                       {"w_frobenius_norm", wa.frobenius_norm},
                       {"odlro_lambda_max", odlro.lambda_max},
                       {"odlro_lambda_max_per_dsite", odlro.per_dsite}};
    }
    rec.timing_seconds = seconds_since(start);
    finalize(rec);
    return rec;
}

namespace {

nlohmann::json pattern_json(const SignPatternResult& p) {
    return {{"min_same_sublattice", p.min_same_sublattice},
            {"max_opposite_sublattice", p.max_opposite_sublattice},
            {"worst_margin", p.worst_margin},
            {"pass", p.pass}};
}

// Per layer-pair extremes so the (c,c), (d,d) and (c,d) coverage is explicit.
nlohmann::json layer_breakdown(const CorrelationMatrix& corr, const LatticeGraph& lattice) {
    nlohmann::json out = nlohmann::json::object();
    for (auto [la, lb, tag] : {std::tuple{1, 1, "cc"}, {2, 2, "dd"}, {1, 2, "cd"}}) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int r = 0; r < corr.num_sites; ++r)
            for (int h = 0; h < corr.num_sites; ++h) {
                if (r == h) continue;
                const bool match = (lattice.layer[r] == la && lattice.layer[h] == lb) ||
                                   (lattice.layer[r] == lb && lattice.layer[h] == la);
                if (!match) continue;
                lo = std::min(lo, corr.at(r, h));
                hi = std::max(hi, corr.at(r, h));
            }
        if (std::isfinite(lo)) out[tag] = {{"min", lo}, {"max", hi}};
    }
    return out;
}

}  // namespace

CheckRecord check_theorem2(const ModelParams& params, const LatticeGraph& lattice,
                           const VerifyOptions& opts) {
    const auto start = Clock::now();
    CheckRecord rec;
    rec.name = "theorem2_transverse_sign_pattern";
    rec.params = params;
    rec.measured_desc = "worst signed margin of the transverse pattern";
    rec.tolerance = opts.tol_expect;
    const int m = lattice.num_sites;
    rec.sector_n_up = rec.sector_n_down = m / 2;
    rec.hypothesis_met = theorem_hypotheses(params);

    if (rec.hypothesis_met) {
        ModelParams repulsive = params;
        repulsive.form = ModelForm::hubbardized;
        GroundState gs = solve_half_filled(repulsive, lattice, opts);
        const CorrelationMatrix transverse =
            correlation_matrix(gs.state, CorrelationKind::transverse);
        const SignPatternResult pattern = check_sign_pattern(transverse, lattice, opts.tol_expect);
        rec.measured = pattern.worst_margin;
        rec.pass = pattern.pass;
        rec.details = {{"e0", gs.e0},
                       {"pattern", pattern_json(pattern)},
                       {"layer_pairs", layer_breakdown(transverse, lattice)}};
    }
    rec.timing_seconds = seconds_since(start);
    finalize(rec);
    return rec;
}

CheckRecord check_theorem3(const ModelParams& params, const LatticeGraph& lattice,
                           const VerifyOptions& opts) {
    const auto start = Clock::now();
    CheckRecord rec;
    rec.name = "theorem3_longitudinal_identities";
    rec.params = params;
    rec.measured_desc = "max deviation over the singlet identities";
    rec.tolerance = opts.tol_expect;
    const int m = lattice.num_sites;
    rec.sector_n_up = rec.sector_n_down = m / 2;
    rec.hypothesis_met = theorem_hypotheses(params);

    if (rec.hypothesis_met) {
        ModelParams repulsive = params;
        repulsive.form = ModelForm::hubbardized;
        GroundState gs = solve_half_filled(repulsive, lattice, opts);
        const IdentityResult identities = check_singlet_identities(gs.state, opts.tol_expect);
        const CorrelationMatrix zz = correlation_matrix(gs.state, CorrelationKind::zz);
        const SignPatternResult zz_pattern = check_sign_pattern(zz, lattice, opts.tol_expect);

        rec.measured = std::max({identities.max_dev_transverse_2zz, identities.max_dev_xx_yy,
                                 identities.max_dev_xx_zz});
        rec.pass = identities.pass && zz_pattern.pass;
        rec.details = {{"e0", gs.e0},
                       {"max_dev_transverse_2zz", identities.max_dev_transverse_2zz},
                       {"max_dev_xx_yy", identities.max_dev_xx_yy},
                       {"max_dev_xx_zz", identities.max_dev_xx_zz},
                       {"s_squared", identities.s_squared},
                       {"zz_pattern", pattern_json(zz_pattern)},
                       {"zz_layer_pairs", layer_breakdown(zz, lattice)}};
    }
    rec.timing_seconds = seconds_since(start);
    finalize(rec);
    return rec;
}

VerificationReport run_all_checks(const ModelParams& params, const LatticeGraph& lattice,
                                  const VerifyOptions& opts) {
    VerificationReport report;
    report.checks.push_back(check_ground_sector(params, lattice, opts));
    report.checks.push_back(check_theorem1(params, lattice, opts));
    report.checks.push_back(check_theorem2(params, lattice, opts));
    report.checks.push_back(check_theorem3(params, lattice, opts));
    return report;
}

nlohmann::json SweepResult::to_json() const {
    nlohmann::json steps_json = nlohmann::json::array();
    for (const SweepStep& s : steps)
        steps_json.push_back({{"eps", s.eps}, {"report", s.report.to_json()}});
    nlohmann::json out = {{"steps", steps_json}, {"pass", pass}};
    if (zz_drift >= 0.0) {
        out["zz_drift_max_norm"] = zz_drift;
        out["transverse_drift_max_norm"] = transverse_drift;
    }
    return out;
}

SweepResult epsilon_sweep(const ModelParams& params, const LatticeGraph& lattice,
                          const std::vector<double>& eps_list, const VerifyOptions& opts) {
    if (eps_list.empty() || eps_list.back() != 0.0)
        throw ConfigError("eps list must end at 0");
    for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
        if (eps_list[i] <= eps_list[i + 1])
            throw ConfigError("eps list must be strictly decreasing");

    SweepResult sweep;
    sweep.pass = true;
    CorrelationMatrix zz_last_positive, zz_zero, tr_last_positive, tr_zero;
    bool have_positive = false;

    for (double eps : eps_list) {
        ModelParams p = params;
        p.eps_aux = eps;
        p.form = ModelForm::hubbardized;
        SweepStep step;
        step.eps = eps;
        step.report = run_all_checks(p, lattice, opts);
        sweep.pass = sweep.pass && step.report.verdict();
        sweep.steps.push_back(std::move(step));

        if (theorem_hypotheses(p)) {
            GroundState gs = solve_half_filled(p, lattice, opts);
            const CorrelationMatrix zz = correlation_matrix(gs.state, CorrelationKind::zz);
            const CorrelationMatrix tr = correlation_matrix(gs.state, CorrelationKind::transverse);
            if (eps > 0.0) {
                zz_last_positive = zz;  // eps_list is decreasing: keep the smallest positive
                tr_last_positive = tr;
                have_positive = true;
            } else {
                zz_zero = zz;
                tr_zero = tr;
            }
        }
    }

    if (have_positive && !zz_zero.values.empty()) {
        auto max_norm_diff = [](const CorrelationMatrix& a, const CorrelationMatrix& b) {
            double d = 0.0;
            for (std::size_t i = 0; i < a.values.size(); ++i)
                d = std::max(d, std::abs(a.values[i] - b.values[i]));
            return d;
        };
        sweep.zz_drift = max_norm_diff(zz_last_positive, zz_zero);
        sweep.transverse_drift = max_norm_diff(tr_last_positive, tr_zero);
    }
    return sweep;
}

}  // namespace pamed
