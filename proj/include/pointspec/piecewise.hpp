#pragma once

// Piecewise ring potentials (free stretches, constant barriers, delta spikes)
// and their 2x2 transfer matrices acting on (psi, psi').

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "pointspec/errors.hpp"
#include "pointspec/ring.hpp"

namespace pointspec {

struct FreeSegment {
    double width;
};

struct ConstantSegment {
    double width;
    double height; // potential value V on the segment
};

// Zero-width delta potential of the given strength g: psi continuous,
// psi'(x+) - psi'(x-) = g psi(x).
struct DeltaSpike {
    double strength;
};

using Element = std::variant<FreeSegment, ConstantSegment, DeltaSpike>;

inline double element_width(const Element& e) {
    if (const auto* f = std::get_if<FreeSegment>(&e)) return f->width;
    if (const auto* c = std::get_if<ConstantSegment>(&e)) return c->width;
    return 0.0;
}

// Ordered layout covering the ring once, from x = -L/2 to x = +L/2.
// symmetric means mirror-symmetric about x = 0.
struct PiecewiseSystem {
    std::vector<Element> elements;
    bool symmetric = false;

    double total_width() const {
        double w = 0.0;
        for (const auto& e : elements) w += element_width(e);
        return w;
    }
};

struct TransferMatrix {
    double m11, m12, m21, m22;

    double det() const { return m11 * m22 - m12 * m21; }

    // Maps (psi, psi') at the left edge to the right edge.
    void apply(double& psi, double& dpsi) const {
        const double p = m11 * psi + m12 * dpsi;
        const double q = m21 * psi + m22 * dpsi;
        psi = p;
        dpsi = q;
    }

    // Unimodular inverse: propagate right edge back to the left edge.
    TransferMatrix inverse() const { return {m22, -m12, -m21, m11}; }
};

inline TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

namespace detail {

// cosh(sqrt(z)) continued through z < 0 as cos(sqrt(-z)); entire in z.
inline double cosu(double z) {
    if (std::abs(z) < 1e-8)
        return 1.0 + z / 2.0 * (1.0 + z / 12.0 * (1.0 + z / 30.0));
    return z > 0.0 ? std::cosh(std::sqrt(z)) : std::cos(std::sqrt(-z));
}

// sinh(sqrt(z))/sqrt(z), likewise entire, = 1 at z = 0.
inline double sincu(double z) {
    if (std::abs(z) < 1e-8)
        return 1.0 + z / 6.0 * (1.0 + z / 20.0 * (1.0 + z / 42.0));
    if (z > 0.0) {
        const double s = std::sqrt(z);
        return std::sinh(s) / s;
    }
    const double s = std::sqrt(-z);
    return std::sin(s) / s;
}

} // namespace detail

// Transfer matrix at energy E (may be negative: hyperbolic branch).
inline TransferMatrix transfer_matrix_energy(const Element& e, double E) {
    if (const auto* d = std::get_if<DeltaSpike>(&e))
        return {1.0, 0.0, d->strength, 1.0};

    double w = 0.0, V = 0.0;
    if (const auto* f = std::get_if<FreeSegment>(&e)) {
        w = f->width;
    } else {
        const auto& c = std::get<ConstantSegment>(e);
        w = c.width;
        V = c.height;
    }
    // psi'' = (V - E) psi; z = (V - E) w^2 covers the trigonometric (z < 0),
    // linear (z = 0) and evanescent (z > 0) branches in one expression.
    const double u = V - E;
    const double z = u * w * w;
    const double C = detail::cosu(z);
    const double S = detail::sincu(z);
    return {C, w * S, u * w * S, C};
}

inline TransferMatrix transfer_matrix(const Element& e, double k) {
    return transfer_matrix_energy(e, k * k);
}

} // namespace pointspec
