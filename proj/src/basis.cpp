#include "pointspec/basis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>

#include "pointspec/errors.hpp"

namespace pointspec {

namespace {

// sin(x)/x, series-switched near zero.
double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

void check_sector_indices(int m, int n, Parity sector) {
    int lo = (sector == Parity::even) ? 0 : 1;
    if (m < lo || n < lo) throw ConfigError("mode index out of range for sector");
}

// Normalized mode function and its derivative.
double mode_value(const ModeIndex& mi, double x, const RingConfig& ring) {
    double kap = kappa(mi.n, ring);
    double amp = std::sqrt(2.0 / ring.L);
    if (mi.sector == Parity::even) {
        if (mi.n == 0) amp /= std::sqrt(2.0);
        return amp * std::cos(kap * x);
    }
    return amp * std::sin(kap * x);
}

double mode_deriv(const ModeIndex& mi, double x, const RingConfig& ring) {
    double kap = kappa(mi.n, ring);
    double amp = std::sqrt(2.0 / ring.L);
    if (mi.sector == Parity::even) {
        if (mi.n == 0) amp /= std::sqrt(2.0);
        return -amp * kap * std::sin(kap * x);
    }
    return amp * kap * std::cos(kap * x);
}

}  // namespace

double me_delta(int m, int n, Parity sector, Regularization a, const RingConfig& ring) {
    check_sector_indices(m, n, sector);
    a.check_inside(ring);
    double km = kappa(m, ring);
    double kn = kappa(n, ring);
    double minus = sinc(a.a * (kn - km));
    double plus = sinc(a.a * (kn + km));
    if (sector == Parity::even) {
        double norm = 1.0 / std::sqrt((1.0 + (m == 0)) * (1.0 + (n == 0)));
        return norm * (minus + plus) / ring.L;
    }
    return (minus - plus) / ring.L;
}

double me_epsilon_sep(int m, int n, Parity sector, Regularization a, const RingConfig& ring) {
    check_sector_indices(m, n, sector);
    a.check_inside(ring);
    double km = kappa(m, ring);
    double kn = kappa(n, ring);
    double minus = sinc(a.a * (kn - km));
    double plus = sinc(a.a * (kn + km));
    if (sector == Parity::even) {
        double norm = 1.0 / std::sqrt((1.0 + (m == 0)) * (1.0 + (n == 0)));
        return -norm * km * kn * (minus - plus) / ring.L;
    }
    return -km * kn * (minus + plus) / ring.L;
}

double quadrature_me(MeKind kind, ModeIndex mi, ModeIndex ni, Regularization a,
                     const RingConfig& ring) {
    a.check_inside(ring);
    auto integrand = [&](double x) {
        if (kind == MeKind::delta) {
            return mode_value(mi, x, ring) * mode_value(ni, x, ring);
        }
        return -mode_deriv(mi, x, ring) * mode_deriv(ni, x, ring);
    };
    double lo = -a.a, hi = a.a;
    auto simpson = [&](long intervals) {
        double h = (hi - lo) / static_cast<double>(intervals);
        double acc = integrand(lo) + integrand(hi);
        for (long i = 1; i < intervals; ++i) {
            acc += integrand(lo + h * static_cast<double>(i)) * ((i % 2) ? 4.0 : 2.0);
        }
        return acc * h / 3.0;
    };
    long n_iv = 8;
    double prev = simpson(n_iv);
    for (int round = 0; round < 20; ++round) {
        n_iv *= 2;
        double cur = simpson(n_iv);
        if (std::abs(cur - prev) < 1e-12) return cur / (2.0 * a.a);
        prev = cur;
    }
    throw ConvergenceError("quadrature_me: refinement stalled above 1e-12");
}

int suggested_n_max(Regularization a, const RingConfig& ring) {
    double two_pi = 2.0 * std::acos(-1.0);
    return static_cast<int>(std::ceil(10.0 * ring.L / (two_pi * a.a)));
}

TruncatedHamiltonian build_hamiltonian(MeKind kind, double coupling, Regularization a,
                                       const RingConfig& ring, Parity sector, int n_max) {
    if (n_max < 2) throw ConfigError("build_hamiltonian: n_max must be at least 2");
    a.check_inside(ring);
    TruncatedHamiltonian h;
    h.sector = sector;
    h.n_max = n_max;
    int first = (sector == Parity::even) ? 0 : 1;
    h.dim = n_max - first + 1;
    h.entries.assign(static_cast<std::size_t>(h.dim) * h.dim, 0.0);
    for (int i = 0; i < h.dim; ++i) {
        for (int j = i; j < h.dim; ++j) {
            int m = first + i, n = first + j;
            double me = (kind == MeKind::delta) ? me_delta(m, n, sector, a, ring)
                                                : me_epsilon_sep(m, n, sector, a, ring);
            double val = coupling * me;
            if (i == j) {
                double kap = kappa(n, ring);
                val += kap * kap;
            }
            h.entries[static_cast<std::size_t>(i) * h.dim + j] = val;
            h.entries[static_cast<std::size_t>(j) * h.dim + i] = val;
        }
    }
    return h;
}

std::vector<double> diagonalize(const TruncatedHamiltonian& h) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        h.entries.data(), h.dim, h.dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("diagonalize: eigensolver did not converge");
    }
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

SpectrumResult separable_spectrum(EpsilonCoupling c, Regularization a, const RingConfig& ring,
                                  int n_max, int count) {
    if (count < 1) throw ConfigError("separable_spectrum: count must be positive");
    if (count > n_max) throw ConfigError("separable_spectrum: count exceeds basis size");
    BareCoupling ca = renormalized_to_bare(c, a);
    TruncatedHamiltonian h =
        build_hamiltonian(MeKind::epsilon_sep, ca.c_a, a, ring, Parity::odd, n_max);
    std::vector<double> evs = diagonalize(h);
    SpectrumResult result;
    for (int i = 0; i < count; ++i) {
        Root r;
        r.energy = evs[static_cast<std::size_t>(i)];
        r.k = std::sqrt(std::abs(r.energy));
        r.sector = SectorTag::minus;
        r.residual = 0.0;
        r.method = RootMethod::diagonalization;
        result.roots.push_back(r);
    }
    return result;
}

}  // namespace pointspec
