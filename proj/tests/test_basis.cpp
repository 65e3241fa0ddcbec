#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pointspec/basis.hpp"
#include "pointspec/ring.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace pointspec;

namespace {

const RingConfig kRing{2.0 * 3.14159265358979323846};

}  // namespace

TEST_CASE("delta matrix elements match independently computed values") {
    Regularization reg{0.1};
    CHECK(me_delta(1, 1, Parity::even, reg, kRing) ==
          doctest::Approx(0.3172509732758598).epsilon(1e-13));
    CHECK(me_delta(0, 0, Parity::even, reg, kRing) ==
          doctest::Approx(0.15915494309189535).epsilon(1e-13));
    CHECK(me_delta(0, 3, Parity::even, Regularization{0.2}, kRing) ==
          doctest::Approx(0.21181534649702294).epsilon(1e-13));
    CHECK(me_delta(1, 2, Parity::odd, Regularization{0.3}, kRing) ==
          doctest::Approx(0.01825572810773286).epsilon(1e-13));
}

TEST_CASE("separable epsilon matrix elements match independently computed values") {
    CHECK(me_epsilon_sep(1, 2, Parity::odd, Regularization{0.1}, kRing) ==
          doctest::Approx(-0.6313363127265125).epsilon(1e-13));
    CHECK(me_epsilon_sep(2, 2, Parity::odd, Regularization{0.05}, kRing) ==
          doctest::Approx(-1.2690038931034393).epsilon(1e-13));
    CHECK(me_epsilon_sep(1, 3, Parity::even, Regularization{0.2}, kRing) ==
          doctest::Approx(-0.036693526479033484).epsilon(1e-13));
}

TEST_CASE("matrix elements are symmetric in the mode indices") {
    Regularization reg{0.07};
    for (int m = 0; m <= 6; ++m) {
        for (int n = m; n <= 6; ++n) {
            CHECK(me_delta(m, n, Parity::even, reg, kRing) ==
                  me_delta(n, m, Parity::even, reg, kRing));
            if (m >= 1) {
                CHECK(me_epsilon_sep(m, n, Parity::odd, reg, kRing) ==
                      me_epsilon_sep(n, m, Parity::odd, reg, kRing));
            }
        }
    }
}

TEST_CASE("closed forms agree with direct quadrature") {
    std::mt19937 gen(20260815u);
    auto uniform = [&gen](double lo, double hi) {
        return lo + (hi - lo) * std::ldexp(static_cast<double>(gen()), -32);
    };
    for (int trial = 0; trial < 40; ++trial) {
        Regularization reg{uniform(1e-3, 0.3)};
        int m = static_cast<int>(uniform(0.0, 12.999));
        int n = static_cast<int>(uniform(0.0, 12.999));
        Parity sector = (gen() % 2 == 0) ? Parity::even : Parity::odd;
        if (sector == Parity::odd) {
            m = std::max(m, 1);
            n = std::max(n, 1);
        }
        ModeIndex mi{m, sector};
        ModeIndex ni{n, sector};
        double closed_delta = me_delta(m, n, sector, reg, kRing);
        double quad_delta = quadrature_me(MeKind::delta, mi, ni, reg, kRing);
        CHECK(std::abs(closed_delta - quad_delta) <= 1e-10);
        double closed_eps = me_epsilon_sep(m, n, sector, reg, kRing);
        double quad_eps = quadrature_me(MeKind::epsilon_sep, mi, ni, reg, kRing);
        CHECK(std::abs(closed_eps - quad_eps) <= 1e-10);
    }
}

TEST_CASE("cross-sector smearing integrals vanish") {
    Regularization reg{0.05};
    for (int m = 0; m <= 3; ++m) {
        for (int n = 1; n <= 3; ++n) {
            ModeIndex even{m, Parity::even};
            ModeIndex odd{n, Parity::odd};
            CHECK(std::abs(quadrature_me(MeKind::delta, even, odd, reg, kRing)) <= 1e-12);
            CHECK(std::abs(quadrature_me(MeKind::epsilon_sep, even, odd, reg, kRing)) <= 1e-12);
        }
    }
}

TEST_CASE("hamiltonian layout, symmetry, and entries") {
    Regularization reg{0.05};
    double coupling = 0.1;
    TruncatedHamiltonian he = build_hamiltonian(MeKind::delta, coupling, reg, kRing,
                                                Parity::even, 5);
    CHECK(he.dim == 6);  // even sector includes the flat n = 0 mode
    TruncatedHamiltonian ho = build_hamiltonian(MeKind::epsilon_sep, coupling, reg, kRing,
                                                Parity::odd, 5);
    CHECK(ho.dim == 5);

    for (int i = 0; i < he.dim; ++i)
        for (int j = 0; j < he.dim; ++j)
            CHECK(he.at(i, j) == he.at(j, i));  // bit-exact by construction

    double kap2 = kappa(2, kRing);
    CHECK(he.at(2, 2) ==
          doctest::Approx(kap2 * kap2 + coupling * me_delta(2, 2, Parity::even, reg, kRing))
              .epsilon(1e-15));
    CHECK(he.at(1, 3) ==
          doctest::Approx(coupling * me_delta(1, 3, Parity::even, reg, kRing)).epsilon(1e-15));
    double kap3 = kappa(3, kRing);
    CHECK(ho.at(2, 2) ==
          doctest::Approx(kap3 * kap3 +
                          coupling * me_epsilon_sep(3, 3, Parity::odd, reg, kRing))
              .epsilon(1e-15));

    CHECK_THROWS_AS(build_hamiltonian(MeKind::delta, coupling, reg, kRing, Parity::even, 1),
                    ConfigError);
}

TEST_CASE("diagonalize reproduces an analytic tridiagonal spectrum") {
    // [[2,1,0],[1,2,1],[0,1,2]] has eigenvalues 2 - sqrt(2), 2, 2 + sqrt(2)
    TruncatedHamiltonian h;
    h.sector = Parity::even;
    h.n_max = 2;
    h.dim = 3;
    h.entries = {2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0};
    std::vector<double> evs = diagonalize(h);
    REQUIRE(evs.size() == 3);
    double r2 = std::sqrt(2.0);
    CHECK(evs[0] == doctest::Approx(2.0 - r2).epsilon(1e-14));
    CHECK(evs[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(evs[2] == doctest::Approx(2.0 + r2).epsilon(1e-14));
}

TEST_CASE("eigenvalue sum matches the trace") {
    Regularization reg{0.03};
    TruncatedHamiltonian h = build_hamiltonian(MeKind::delta, 0.4, reg, kRing, Parity::even, 30);
    std::vector<double> evs = diagonalize(h);
    double trace = 0.0;
    for (int i = 0; i < h.dim; ++i) trace += h.at(i, i);
    double sum = 0.0;
    for (double e : evs) sum += e;
    CHECK(sum == doctest::Approx(trace).epsilon(1e-12));
}

TEST_CASE("lowest eigenvalue decreases as the basis grows") {
    Regularization reg{0.05};
    double prev = 1e300;
    for (int n_max : {100, 200, 400}) {
        TruncatedHamiltonian h =
            build_hamiltonian(MeKind::epsilon_sep, 0.1, reg, kRing, Parity::odd, n_max);
        double lowest = diagonalize(h)[0];
        CHECK(lowest <= prev + 1e-14);
        prev = lowest;
    }
}

TEST_CASE("separable spectrum with zero coupling returns the free odd ladder") {
    SpectrumResult spec =
        separable_spectrum(EpsilonCoupling{0.0}, Regularization{0.05}, kRing, 40, 4);
    REQUIRE(spec.roots.size() == 4);
    for (std::size_t i = 0; i < spec.roots.size(); ++i) {
        double kap = kappa(static_cast<int>(i) + 1, kRing);
        CHECK(spec.roots[i].energy == doctest::Approx(kap * kap).epsilon(1e-12));
        CHECK(spec.roots[i].sector == SectorTag::minus);
        CHECK(spec.roots[i].method == RootMethod::diagonalization);
    }
}

TEST_CASE("separable spectrum matches independently computed lowest levels") {
    SpectrumResult spec =
        separable_spectrum(EpsilonCoupling{0.1}, Regularization{0.01}, kRing, 400, 1);
    REQUIRE(spec.roots.size() == 1);
    CHECK(spec.roots[0].energy == doctest::Approx(0.9732043709853075).epsilon(1e-9));

    CHECK_THROWS_AS(
        separable_spectrum(EpsilonCoupling{0.1}, Regularization{0.01}, kRing, 10, 11),
        ConfigError);
}

TEST_CASE("delta hamiltonian eigenvalues match independently computed values") {
    TruncatedHamiltonian h =
        build_hamiltonian(MeKind::delta, 0.1, Regularization{1e-4}, kRing, Parity::even, 60);
    std::vector<double> evs = diagonalize(h);
    REQUIRE(evs.size() == 61);
    // the lowest level descends from the flat mode; the next from the first cosine
    CHECK(evs[0] == doctest::Approx(0.015123588456533513).epsilon(1e-9));
    CHECK(evs[1] == doctest::Approx(1.0315766178221921).epsilon(1e-9));
}

TEST_CASE("suggested basis size scales with the inverse width") {
    CHECK(suggested_n_max(Regularization{0.1}, kRing) >= 90);
    CHECK(suggested_n_max(Regularization{0.01}, kRing) >= 900);
    CHECK(suggested_n_max(Regularization{0.01}, kRing) <= 1100);
}
