#include "pointspec/series.hpp"

#include <cmath>
#include <complex>

#include "pointspec/errors.hpp"

namespace pointspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

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

// Smooth part of the pair-kernel-squared tail: oscillations replaced by their
// mean, cross term kept exactly.
double envelope_tail(int n, double beta, long m_max) {
    double b2 = beta * beta;
    double smooth = 0.5 / b2 *
                    (detail::trigamma_tail(m_max - n) + detail::trigamma_tail(m_max + n));
    smooth += std::cos(2.0 * beta * n) / b2 * detail::sum_inv_m2n2(m_max, n);
    return smooth;
}

double pair_sum_at(int n, double beta, long m_max) {
    KahanSum acc;
    for (long m = 1; m <= m_max; ++m) {
        if (m == n) continue;
        double p = pair_kernel(n, static_cast<int>(m), beta);
        acc.add(p * p);
    }
    return acc.s + envelope_tail(n, beta, m_max);
}

double sine_squared_sum_at(double beta, long m_max) {
    KahanSum acc;
    for (long m = 1; m <= m_max; ++m) {
        double s = std::sin(beta * static_cast<double>(m));
        acc.add(s * s / (static_cast<double>(m) * static_cast<double>(m)));
    }
    // sin^2 = 1/2 - cos(2 beta m)/2 splits the tail into a polygamma piece
    // and an Abel-resummable oscillation.
    double tail = 0.5 * detail::trigamma_tail(m_max) -
                  0.5 * detail::abel_osc(2.0 * beta, 0.0,
                                         [](double m) { return 1.0 / (m * m); }, m_max);
    return acc.s + tail;
}

}  // namespace

void SumSpec::validate() const {
    if (n < 1) throw ConfigError("SumSpec: n must be at least 1");
    if (!(beta > 0.0) || beta >= kPi / 2.0) {
        throw ConfigError("SumSpec: beta must lie in (0, pi/2)");
    }
    if (!(tol > 0.0)) throw ConfigError("SumSpec: tol must be positive");
    if (static_cast<double>(m_max) * beta < 100.0) {
        throw CutoffError("SumSpec: m_max too small, need m_max * beta >= 100");
    }
}

double pair_kernel(int n, int m, double beta) {
    if (m < 1 || n < 1) throw ConfigError("pair_kernel: indices must be positive");
    if (!(beta > 0.0)) throw ConfigError("pair_kernel: beta must be positive");
    double dm = static_cast<double>(m);
    double dn = static_cast<double>(n);
    return sinc(beta * (dm - dn)) + sinc(beta * (dm + dn));
}

double sine_squared_sum(double beta, double tol) {
    if (!(beta > 0.0) || beta >= kPi) {
        throw ConfigError("sine_squared_sum: beta must lie in (0, pi)");
    }
    if (!(tol > 0.0)) throw ConfigError("sine_squared_sum: tol must be positive");
    long m_max = std::max<long>(2000, static_cast<long>(std::ceil(200.0 / beta)));
    double v1 = sine_squared_sum_at(beta, m_max);
    double v2 = sine_squared_sum_at(beta, 2 * m_max);
    if (std::abs(v2 - v1) > tol) {
        throw ConvergenceError("sine_squared_sum: cutoff doubling moved the value above tol");
    }
    return v2;
}

double pair_sum(const SumSpec& spec) {
    spec.validate();
    double v1 = pair_sum_at(spec.n, spec.beta, spec.m_max);
    double v2 = pair_sum_at(spec.n, spec.beta, 2 * spec.m_max);
    if (std::abs(v2 - v1) > spec.tol * std::max(1.0, std::abs(v2))) {
        throw ConvergenceError("pair_sum: cutoff doubling moved the value above tol");
    }
    return v1;
}

double pair_sq_tail(int n, double beta, long m_max) {
    if (n < 1) throw ConfigError("pair_sq_tail: n must be at least 1");
    if (!(beta > 0.0)) throw ConfigError("pair_sq_tail: beta must be positive");
    if (m_max <= 2 * n + 4) throw ConfigError("pair_sq_tail: cutoff below index range");
    double b2 = beta * beta;
    double dn = static_cast<double>(n);
    // pair^2 = 1/(2u^2) + 1/(2w^2) + cos(2 beta n)/(uw)
    //        - cos(2u)/(2u^2) - cos(2w)/(2w^2) - cos(2 beta m)/(uw)
    // with u = beta(m-n), w = beta(m+n).
    double osc = -detail::abel_osc(
        2.0 * beta, -2.0 * beta * dn,
        [b2, dn](double m) { return 0.5 / (b2 * (m - dn) * (m - dn)); }, m_max);
    osc -= detail::abel_osc(
        2.0 * beta, 2.0 * beta * dn,
        [b2, dn](double m) { return 0.5 / (b2 * (m + dn) * (m + dn)); }, m_max);
    osc -= detail::abel_osc(
        2.0 * beta, 0.0, [b2, dn](double m) { return 1.0 / (b2 * (m * m - dn * dn)); },
        m_max);
    return envelope_tail(n, beta, m_max) + osc;
}

double sum_reciprocal(int n, bool include_zero_mode) {
    if (n < 1) throw ConfigError("sum_reciprocal: n must be at least 1");
    long m_max = std::max<long>(1000, 20L * n);
    auto value_at = [n](long cap) {
        KahanSum acc;
        double n2 = static_cast<double>(n) * n;
        for (long m = 1; m <= cap; ++m) {
            if (m == n) continue;
            acc.add(1.0 / (n2 - static_cast<double>(m) * static_cast<double>(m)));
        }
        return acc.s - detail::sum_inv_m2n2(cap, n);
    };
    double v1 = value_at(m_max);
    double v2 = value_at(2 * m_max);
    if (std::abs(v2 - v1) > 1e-12) {
        throw ConvergenceError("sum_reciprocal: cutoff doubling moved the value above tol");
    }
    if (include_zero_mode) v2 += 0.5 / (static_cast<double>(n) * n);
    return v2;
}

double pair_sum_identity_residual(int n, double beta) {
    SumSpec spec;
    spec.n = n;
    spec.beta = beta;
    spec.m_max = std::max<long>(static_cast<long>(std::ceil(4000.0 / beta)), 200L * n);
    double b1 = pair_sum(spec);
    double b2 = sine_squared_sum(beta, 1e-12);
    return b1 + 4.0 - 4.0 / (beta * beta) * b2;
}

namespace detail {

double trigamma_tail(long m_min_excl) {
    if (m_min_excl < 1) throw ConfigError("trigamma_tail: cutoff must be positive");
    double extra = 0.0;
    long m0 = m_min_excl;
    while (m0 < 50) {
        ++m0;
        extra += 1.0 / (static_cast<double>(m0) * static_cast<double>(m0));
    }
    double ix = 1.0 / static_cast<double>(m0);
    double ix2 = ix * ix;
    return extra + ix - 0.5 * ix2 + ix2 * ix / 6.0 - ix2 * ix2 * ix / 30.0 +
           ix2 * ix2 * ix2 * ix / 42.0;
}

double sum_inv_m2n2(long m_min_excl, int n) {
    if (n < 1 || m_min_excl <= n) throw ConfigError("sum_inv_m2n2: need cutoff > n >= 1");
    KahanSum acc;
    for (long j = m_min_excl + 1 - n; j <= m_min_excl + n; ++j) {
        acc.add(1.0 / static_cast<double>(j));
    }
    return acc.s / (2.0 * static_cast<double>(n));
}

double abel_osc(double omega, double phase, const std::function<double(double)>& b,
                long m_min_excl) {
    std::complex<double> one_minus = 1.0 - std::polar(1.0, omega);
    std::complex<double> total = 0.0;
    std::complex<double> denom = 1.0;
    for (int k = 0; k < 4; ++k) {
        long m = m_min_excl + 1 + k;
        double diff = 0.0;
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            diff += ((j % 2) ? -binom : binom) * b(static_cast<double>(m - j));
            binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
        }
        denom *= one_minus;
        total += diff * std::polar(1.0, omega * static_cast<double>(m)) / denom;
    }
    return (std::polar(1.0, phase) * total).real();
}

}  // namespace detail

}  // namespace pointspec
