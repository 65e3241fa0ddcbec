#pragma once

// Domain types and coupling maps for point interactions on a ring.
//
// Conventions: hbar = 2m = 1, so the stationary equation is
// -psi'' + V psi = E psi with E = k^2. The delta interaction keeps psi
// continuous and jumps psi' by v*psi(0); the epsilon interaction keeps psi'
// continuous and jumps psi by c*psi'(0). v has units 1/length, c length.

#include <cmath>
#include <numbers>
#include <string>

#include "pointspec/errors.hpp"

namespace pointspec {

struct RingConfig {
    double L; // circumference, > 0

    explicit RingConfig(double circumference) : L(circumference) {
        if (!(L > 0.0) || !std::isfinite(L))
            throw ConfigError("ring circumference must be positive and finite, got L=" +
                              std::to_string(circumference));
    }
};

struct DeltaCoupling {
    double v; // 1/length
};

struct EpsilonCoupling {
    double c; // length
};

// Half-width of the smeared interaction region [-a, a].
struct Regularization {
    double a;

    explicit Regularization(double half_width) : a(half_width) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw ConfigError("regularization half-width must be positive, got a=" +
                              std::to_string(half_width));
    }
    void check_inside(const RingConfig& ring) const {
        if (!(a < ring.L / 4.0))
            throw ConfigError("regularization must satisfy a < L/4, got a=" +
                              std::to_string(a) + " L=" + std::to_string(ring.L));
    }
};

// Scale-dependent coupling of the separable realization: 1/c_a = 1/c + 1/(2a).
struct BareCoupling {
    double c_a;
};

enum class Parity { even, odd }; // "+" and "-" sectors

inline const char* parity_label(Parity p) { return p == Parity::even ? "+" : "-"; }

// Mode n in the given parity sector; sector "-" has no n = 0 mode.
struct ModeIndex {
    int n;
    Parity sector;

    ModeIndex(int mode, Parity par) : n(mode), sector(par) {
        if (n < 0) throw ConfigError("mode index must be non-negative");
        if (sector == Parity::odd && n < 1)
            throw ConfigError("odd sector requires n >= 1");
    }
};

inline double kappa(int n, const RingConfig& ring) {
    if (n < 0) throw ConfigError("kappa: mode index must be non-negative");
    return 2.0 * std::numbers::pi * n / ring.L;
}

// c_a = 2ac/(2a + c); pole at 2a + c = 0.
inline BareCoupling renormalized_to_bare(EpsilonCoupling c, Regularization a) {
    const double denom = 2.0 * a.a + c.c;
    if (denom == 0.0)
        throw SingularCouplingError("coupling map pole: 2a + c = 0");
    return BareCoupling{2.0 * a.a * c.c / denom};
}

// 1/c = 1/c_a - 1/(2a); pole at c_a = 2a (the Neumann limit).
inline EpsilonCoupling bare_to_renormalized(BareCoupling c_a, Regularization a) {
    const double denom = 2.0 * a.a - c_a.c_a;
    if (denom == 0.0)
        throw SingularCouplingError("coupling map pole: c_a = 2a");
    return EpsilonCoupling{2.0 * a.a * c_a.c_a / denom};
}

// Truncation of c_a in powers of c/(2a): order 1 -> c, order 2 -> c - c^2/(2a).
inline double bare_coupling_series(EpsilonCoupling c, Regularization a, int order) {
    if (order != 1 && order != 2)
        throw ConfigError("bare_coupling_series: order must be 1 or 2");
    if (order == 1) return c.c;
    return c.c - c.c * c.c / (2.0 * a.a);
}

// Energy-dependent dual coupling: the epsilon condition at wavenumber k maps to
// a delta condition with v = -c k^2 (a per-root map, not a potential map).
inline DeltaCoupling duality_coupling(EpsilonCoupling c, double k) {
    return DeltaCoupling{-c.c * k * k};
}

} // namespace pointspec
