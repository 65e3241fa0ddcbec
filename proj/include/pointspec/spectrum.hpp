#pragma once

// Exact ring spectra: zero-range limit conditions for the delta and epsilon
// interactions, transfer-matrix spectra of their finite-width realizations,
// second-order expansions, limit eigenfunctions, and the per-root duality map.

#include <vector>

#include "pointspec/piecewise.hpp"
#include "pointspec/ring.hpp"

namespace pointspec {

enum class Model { delta, epsilon };

// Result labels: parity sector of the root, or "full" for the
// whole-ring fallback that cannot attribute parity.
enum class SectorTag { plus, minus, full };
const char* sector_name(SectorTag s);
SectorTag sector_tag(Parity p);

enum class RootMethod {
    limit_condition, // bisection on the zero-range condition
    exact_mode,      // unperturbed kappa_n inserted analytically
    hyperbolic,      // negative-energy branch of the limit condition
    transfer_matrix, // half-ring shooting or full-ring trace
    diagonalization  // truncated-basis eigenvalue
};
const char* method_name(RootMethod m);

struct Root {
    double k;      // wavenumber; for energy < 0 this holds gamma = sqrt(-E)
    double energy; // k^2, or -gamma^2 on the bound branch
    SectorTag sector;
    double residual; // |f| of the defining condition at the accepted root
    RootMethod method;
};

struct SpectrumResult {
    std::vector<Root> roots; // ascending in energy
};

// Pole-free eigenvalue conditions of the zero-range limits. Zeros of these
// are the perturbed-sector levels; the opposite-parity levels stay at kappa_n.
double delta_limit_condition(double k, DeltaCoupling v, const RingConfig& ring);
double epsilon_limit_condition(double k, EpsilonCoupling c, const RingConfig& ring);

// Hyperbolic continuations k = i*gamma for the negative-energy branch.
double delta_limit_condition_bound(double gamma, DeltaCoupling v, const RingConfig& ring);
double epsilon_limit_condition_bound(double gamma, EpsilonCoupling c, const RingConfig& ring);

// Lowest `count` positive-energy roots of the limit condition, merged with the
// unperturbed opposite-parity levels kappa_n below the highest found root.
// For delta with v < 0 the single bound root is searched on the hyperbolic
// branch and listed first.
SpectrumResult solve_limit_spectrum(Model model, double coupling, const RingConfig& ring,
                                    int count);

// The root of the limit condition that descends from the free level kappa_n
// (bracketed within (kappa_n - pi/L, kappa_n + pi/L)).
double limit_root_near(Model model, double coupling, const RingConfig& ring, int n);

// Second-order expansions of the kappa_n-descendant energy in the coupling.
double delta_expansion(DeltaCoupling v, const RingConfig& ring, int n);
double epsilon_expansion(EpsilonCoupling c, const RingConfig& ring, int n);

// Finite-width realizations laid out on [-L/2, L/2], interaction centered at 0.
// Delta: square barrier of height v/(2a) on [-a, a].
PiecewiseSystem build_delta_finite(DeltaCoupling v, Regularization a, const RingConfig& ring);
// Epsilon: spikes of strength 2/c - 1/a at x = -a, +a and c/a^2 at x = 0.
PiecewiseSystem build_epsilon_finite(EpsilonCoupling c, Regularization a, const RingConfig& ring);

// Spectrum of a piecewise ring system. Symmetric systems are solved per parity
// sector by half-ring shooting from x = L/2 toward the interaction: the even
// sector enforces psi'(0+) = (g0/2) psi(0) (g0 = central spike strength), the
// odd sector enforces psi(0) = 0. Non-symmetric systems fall back to the
// periodicity condition Tr M(k) = 2 with tangential-root detection.
SpectrumResult ring_spectrum(const PiecewiseSystem& system, const RingConfig& ring, int count);

// Zero-range eigenfunction psi(x) = A sin k(x - eta) for x > 0 and
// A sin k(x - eta + L) for x < 0, normalized on the ring.
struct LimitEigenfunction {
    double A;
    double eta;
    double k;
    double L;

    double value(double x) const;
    double deriv(double x) const;
};

LimitEigenfunction limit_eigenfunction(Model model, double coupling, const RingConfig& ring,
                                       double k);

// Checks that an epsilon root at coupling c is a delta root at v = -c k^2, and
// that differentiating the delta eigenfunction at that v reproduces the epsilon
// eigenfunction up to one overall scale.
struct DualityReport {
    double k;
    double v;                     // -c k^2
    double condition_residual;    // |delta condition at (k, v)|
    double derivative_deviation;  // max |s * phi_delta'(x) - psi_epsilon(x)| off the origin
};

DualityReport duality_check(EpsilonCoupling c, const RingConfig& ring, double k);

} // namespace pointspec
