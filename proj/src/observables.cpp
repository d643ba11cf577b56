#include "pamed/observables.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "pamed/errors.hpp"

namespace pamed {

namespace {

enum class SpinOp { plus, minus };

// S+ = f+up fdn, S- = f+dn fup (written left to right; apply_product acts
// right to left).
void append_spin_op(std::vector<ElemOp>& ops, SpinOp which, int site) {
    if (which == SpinOp::plus) {
        ops.push_back({OpKind::create, Spin::up, site});
        ops.push_back({OpKind::annihilate, Spin::down, site});
    } else {
        ops.push_back({OpKind::create, Spin::down, site});
        ops.push_back({OpKind::annihilate, Spin::up, site});
    }
}

double expect_product(const StateVector& state, std::span<const ElemOp> ops) {
    const SectorBasis& basis = *state.basis;
    double acc = 0.0;
    for (std::uint64_t g = 0; g < basis.dim; ++g) {
        const double amp = state.amps[g];
        if (amp == 0.0) continue;
        auto res = apply_product(ops, basis.ket_at(g), basis.num_sites);
        if (!res || !basis.in_sector(res->ket)) continue;
        acc += state.amps[basis.index_of(res->ket)] * res->sign * amp;
    }
    return acc;
}

double two_spin_expectation(const StateVector& state, SpinOp a, int r, SpinOp b, int h) {
    std::vector<ElemOp> ops;
    append_spin_op(ops, a, r);
    append_spin_op(ops, b, h);
    return expect_product(state, ops);
}

double zz_correlation(const StateVector& state, int r, int h) {
    const SectorBasis& basis = *state.basis;
    double acc = 0.0;
    for (std::uint64_t g = 0; g < basis.dim; ++g) {
        const double amp = state.amps[g];
        if (amp == 0.0) continue;
        const KetPair ket = basis.ket_at(g);
        const double szr =
            0.5 * (static_cast<int>((ket.up >> r) & 1) - static_cast<int>((ket.down >> r) & 1));
        const double szh =
            0.5 * (static_cast<int>((ket.up >> h) & 1) - static_cast<int>((ket.down >> h) & 1));
        acc += amp * amp * szr * szh;
    }
    return acc;
}

void check_site(const StateVector& state, int site) {
    if (site < 0 || site >= state.basis->num_sites)
        throw SiteOutOfRange("site " + std::to_string(site) + " outside lattice of " +
                             std::to_string(state.basis->num_sites));
}

}  // namespace

std::string kind_name(CorrelationKind kind) {
    switch (kind) {
        case CorrelationKind::transverse: return "transverse";
        case CorrelationKind::zz: return "zz";
        case CorrelationKind::xx: return "xx";
        case CorrelationKind::yy: return "yy";
        case CorrelationKind::pair: return "pair";
    }
    return "?";
}

double spin_correlation(const StateVector& state, int r, int h, CorrelationKind kind) {
    check_site(state, r);
    check_site(state, h);
    switch (kind) {
        case CorrelationKind::transverse:
            return two_spin_expectation(state, SpinOp::plus, r, SpinOp::minus, h);
        case CorrelationKind::zz:
            return zz_correlation(state, r, h);
        case CorrelationKind::xx: {
            double s = 0.0;
            s += two_spin_expectation(state, SpinOp::plus, r, SpinOp::plus, h);
            s += two_spin_expectation(state, SpinOp::plus, r, SpinOp::minus, h);
            s += two_spin_expectation(state, SpinOp::minus, r, SpinOp::plus, h);
            s += two_spin_expectation(state, SpinOp::minus, r, SpinOp::minus, h);
            return 0.25 * s;
        }
        case CorrelationKind::yy: {
            double s = 0.0;
            s -= two_spin_expectation(state, SpinOp::plus, r, SpinOp::plus, h);
            s += two_spin_expectation(state, SpinOp::plus, r, SpinOp::minus, h);
            s += two_spin_expectation(state, SpinOp::minus, r, SpinOp::plus, h);
            s -= two_spin_expectation(state, SpinOp::minus, r, SpinOp::minus, h);
            return 0.25 * s;
        }
        case CorrelationKind::pair:
            return pair_correlation(state, r, h);
    }
    return 0.0;
}

double pair_correlation(const StateVector& state, int r, int h) {
    check_site(state, r);
    check_site(state, h);
    // A_r+ A_h = f+_r_dn f+_r_up f_h_up f_h_dn
    const ElemOp ops[] = {{OpKind::create, Spin::down, r},
                          {OpKind::create, Spin::up, r},
                          {OpKind::annihilate, Spin::up, h},
                          {OpKind::annihilate, Spin::down, h}};
    return expect_product(state, ops);
}

CorrelationMatrix correlation_matrix(const StateVector& state, CorrelationKind kind) {
    const int m = state.basis->num_sites;
    CorrelationMatrix out;
    out.kind = kind;
    out.num_sites = m;
    out.values.assign(static_cast<std::size_t>(m) * m, 0.0);
#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < m * m; ++idx)
        out.values[idx] = spin_correlation(state, idx / m, idx % m, kind);
    return out;
}

double total_spin_squared(const StateVector& state) {
    const SectorBasis& basis = *state.basis;
    const int m = basis.num_sites;
    const double sz = 0.5 * (basis.n_up - basis.n_down);

    auto lowered_norm_sq = [&](SpinOp which) -> double {
        const int target_up = basis.n_up + (which == SpinOp::plus ? +1 : -1);
        const int target_down = basis.n_down + (which == SpinOp::plus ? -1 : +1);
        if (target_up < 0 || target_up > m || target_down < 0 || target_down > m) return 0.0;
        BasisPtr target = enumerate_sector(m, target_up, target_down);
        std::vector<double> acc(target->dim, 0.0);
        std::vector<ElemOp> ops;
        for (std::uint64_t g = 0; g < basis.dim; ++g) {
            const double amp = state.amps[g];
            if (amp == 0.0) continue;
            const KetPair ket = basis.ket_at(g);
            for (int site = 0; site < m; ++site) {
                ops.clear();
                append_spin_op(ops, which, site);
                if (auto res = apply_product(ops, ket, m))
                    acc[target->index_of(res->ket)] += res->sign * amp;
            }
        }
        double s = 0.0;
        for (double a : acc) s += a * a;
        return s;
    };

    return sz * sz + 0.5 * (lowered_norm_sq(SpinOp::minus) + lowered_norm_sq(SpinOp::plus));
}

double WMatrix::trace() const {
    double t = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) t += at(i, i);
    return t;
}

WMatrix extract_w(const StateVector& state) {
    const SectorBasis& basis = *state.basis;
    if (basis.n_up != basis.n_down)
        throw NonSquareSector("W requires n_up == n_down, got (" + std::to_string(basis.n_up) +
                              ", " + std::to_string(basis.n_down) + ")");
    WMatrix w;
    w.dim = basis.dim_up;
    w.values = state.amps;  // (alpha, beta) layout is already row-major
    if (w.trace() < 0.0)
        for (double& v : w.values) v = -v;
    return w;
}

WAnalysis analyze_w(const WMatrix& w) {
    const auto n = static_cast<Eigen::Index>(w.dim);
    Eigen::MatrixXd mat(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) mat(i, j) = w.at(i, j);

    WAnalysis out;
    out.frobenius_norm = mat.norm();
    out.asymmetry_frobenius = (mat - mat.transpose()).norm();
    Eigen::MatrixXd sym = 0.5 * (mat + mat.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    out.min_symmetric_eigenvalue = es.eigenvalues().minCoeff();
    out.max_symmetric_eigenvalue = es.eigenvalues().maxCoeff();
    return out;
}

OdlroSummary odlro_summary(const CorrelationMatrix& pairmat, int n_dsites) {
    if (pairmat.kind != CorrelationKind::pair)
        throw ConfigError("odlro_summary expects a pair-kind matrix");
    if (n_dsites <= 0) n_dsites = pairmat.num_sites / 2;
    const auto n = static_cast<Eigen::Index>(pairmat.num_sites);
    Eigen::MatrixXd mat(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) mat(i, j) = pairmat.at(static_cast<int>(i),
                                                                    static_cast<int>(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat, Eigen::EigenvaluesOnly);
    OdlroSummary out;
    out.lambda_max = n > 0 ? es.eigenvalues().maxCoeff() : 0.0;
    out.per_dsite = n_dsites > 0 ? out.lambda_max / n_dsites : 0.0;
    return out;
}

void write_correlation_csv(const CorrelationMatrix& matrix, std::ostream& out) {
    out << "r,h,value\n";
    char buf[64];
    for (int r = 0; r < matrix.num_sites; ++r)
        for (int h = 0; h < matrix.num_sites; ++h) {
            std::snprintf(buf, sizeof buf, "%.17g", matrix.at(r, h));
            out << r << ',' << h << ',' << buf << '\n';
        }
}

}  // namespace pamed
