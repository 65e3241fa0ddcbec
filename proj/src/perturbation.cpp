#include "pointspec/perturbation.hpp"

#include <cmath>
#include <cstddef>

#include "pointspec/errors.hpp"
#include "pointspec/series.hpp"

namespace pointspec {

namespace {

struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

double second_order_sum_at(int n, Regularization a, const RingConfig& ring, long m_max) {
    double kn = kappa(n, ring);
    KahanSum acc;
    for (long m = 1; m <= m_max; ++m) {
        if (m == n) continue;
        double me = me_epsilon_sep(static_cast<int>(m), n, Parity::odd, a, ring);
        double km = kappa(static_cast<int>(m), ring);
        acc.add(me * me / (kn * kn - km * km));
    }
    return acc.s;
}

}  // namespace

double first_order(MeKind kind, double coupling, int n, Parity sector, const RingConfig& ring) {
    if (kind == MeKind::delta) {
        if (sector != Parity::even) {
            throw SectorError("first_order: the delta leaves the odd sector untouched");
        }
        if (n < 0) throw ConfigError("first_order: n must be nonnegative");
        return coupling * (n == 0 ? 1.0 : 2.0) / ring.L;
    }
    if (sector != Parity::odd) {
        throw SectorError("first_order: the separable epsilon leaves the even sector untouched");
    }
    if (n < 1) throw ConfigError("first_order: odd-sector n must be at least 1");
    double kap = kappa(n, ring);
    return -coupling * 2.0 * kap * kap / ring.L;
}

double second_order_delta(int n, const RingConfig& ring) {
    if (n < 1) throw ConfigError("second_order_delta: n must be at least 1");
    double k1 = kappa(1, ring);
    return 4.0 / (ring.L * ring.L * k1 * k1) * sum_reciprocal(n, true);
}

SecondOrderEpsilon second_order_epsilon(int n, Regularization a, const RingConfig& ring,
                                        long m_max) {
    if (n < 1) throw ConfigError("second_order_epsilon: n must be at least 1");
    a.check_inside(ring);
    double two_pi = 2.0 * std::acos(-1.0);
    double beta = two_pi * a.a / ring.L;
    if (static_cast<double>(m_max) < 4.0 * ring.L / (two_pi * a.a)) {
        throw CutoffError("second_order_epsilon: m_max below 4 L / (2 pi a)");
    }
    double kn = kappa(n, ring);
    double scale = kn * kn / (ring.L * ring.L);

    SecondOrderEpsilon out;
    out.finite_part = 3.0 * scale;
    out.divergent_part = -kn * kn / (ring.L * a.a);
    out.truncated_value = second_order_sum_at(n, a, ring, m_max);
    out.tail_estimate = -scale * pair_sq_tail(n, beta, m_max);

    double v1 = out.truncated_value + out.tail_estimate;
    double v2 = second_order_sum_at(n, a, ring, 2 * m_max) -
                scale * pair_sq_tail(n, beta, 2 * m_max);
    if (std::abs(v2 - v1) > 1e-6 * std::max(1.0, std::abs(v2))) {
        throw ConvergenceError("second_order_epsilon: cutoff doubling moved the value");
    }
    return out;
}

namespace {

PerturbationReport assemble(EpsilonCoupling c, Regularization a, const RingConfig& ring, int n,
                            long m_max) {
    if (std::abs(c.c / (2.0 * a.a)) >= 0.5) {
        throw RegimeError("perturbative series requires |c| < a");
    }
    BareCoupling ca = renormalized_to_bare(c, a);
    SecondOrderEpsilon so = second_order_epsilon(n, a, ring, m_max);
    double kap = kappa(n, ring);
    double kap2 = kap * kap;
    double ca2 = ca.c_a * ca.c_a;
    double c2 = c.c * c.c;

    PerturbationReport rep;
    rep.n = n;
    rep.sector = SectorTag::minus;
    rep.c = c.c;
    rep.c_a = ca.c_a;
    rep.a = a.a;
    rep.m_max = m_max;
    rep.first_order = first_order(MeKind::epsilon_sep, ca.c_a, n, Parity::odd, ring);
    rep.second_order_truncated = ca2 * so.truncated_value;
    rep.tail_estimate = ca2 * so.tail_estimate;
    rep.divergent_piece = ca2 * so.divergent_part;
    rep.bare_total = kap2 + rep.first_order + rep.second_order_truncated + rep.tail_estimate;

    // Expanding c_a = c - c^2/(2a) inside the first-order term produces the
    // counterterm + kap^2 c^2 / (L a); it must cancel the divergent
    // coefficient of the second-order sum identically.
    double counterterm_unit = kap2 / (ring.L * a.a);
    double cancel = counterterm_unit + so.divergent_part;
    if (std::abs(cancel) > 1e-14 * counterterm_unit) {
        throw Error("renormalized_series: counterterm failed to cancel the divergence");
    }
    rep.renormalized_total = kap2 * (1.0 - 2.0 * c.c / ring.L) +
                             c2 * (counterterm_unit + so.truncated_value + so.tail_estimate);
    rep.reference_exact = [&] {
        double k = limit_root_near(Model::epsilon, c.c, ring, n);
        return k * k;
    }();
    return rep;
}

}  // namespace

PerturbationReport bare_series(EpsilonCoupling c, Regularization a, const RingConfig& ring,
                               int n, long m_max) {
    return assemble(c, a, ring, n, m_max);
}

PerturbationReport renormalized_series(EpsilonCoupling c, Regularization a,
                                       const RingConfig& ring, int n, long m_max) {
    return assemble(c, a, ring, n, m_max);
}

DivergenceFit fit_divergence(const std::vector<double>& a_values,
                             const std::vector<double>& values) {
    std::size_t n = a_values.size();
    if (n != values.size() || n < 3) {
        throw ConfigError("fit_divergence: need matching lists with at least 3 points");
    }
    // Normal equations for the design rows (1, 1/a, a).
    double g[3][4] = {};
    for (std::size_t i = 0; i < n; ++i) {
        double row[3] = {1.0, 1.0 / a_values[i], a_values[i]};
        for (int r = 0; r < 3; ++r) {
            for (int s = 0; s < 3; ++s) g[r][s] += row[r] * row[s];
            g[r][3] += row[r] * values[i];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
        }
        if (g[piv][col] == 0.0) throw ConfigError("fit_divergence: singular design");
        for (int s = 0; s < 4; ++s) std::swap(g[piv][s], g[col][s]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = g[r][col] / g[col][col];
            for (int s = col; s < 4; ++s) g[r][s] -= f * g[col][s];
        }
    }
    DivergenceFit fit;
    fit.constant_term = g[0][3] / g[0][0];
    fit.inverse_a_coeff = g[1][3] / g[1][1];
    fit.linear_a_coeff = g[2][3] / g[2][2];
    for (std::size_t i = 0; i < n; ++i) {
        double model = fit.constant_term + fit.inverse_a_coeff / a_values[i] +
                       fit.linear_a_coeff * a_values[i];
        fit.max_residual = std::max(fit.max_residual, std::abs(model - values[i]));
    }
    return fit;
}

}  // namespace pointspec
