#pragma once

#include <vector>

#include "pointspec/ring.hpp"
#include "pointspec/spectrum.hpp"

namespace pointspec {

// Which smeared interaction a matrix element belongs to.
enum class MeKind { delta, epsilon_sep };

// <phi_m | (1/2a) 1_[-a,a] | phi_n> within one parity sector, closed form.
double me_delta(int m, int n, Parity sector, Regularization a, const RingConfig& ring);

// <phi_m | E_a | phi_n> = -(1/2a) <phi_m' | 1_[-a,a] | phi_n'>, closed form.
double me_epsilon_sep(int m, int n, Parity sector, Regularization a, const RingConfig& ring);

// Same elements by adaptive Simpson quadrature on the mode functions.
// Admits cross-sector pairs, where the integrand is odd and the result ~0.
double quadrature_me(MeKind kind, ModeIndex mi, ModeIndex ni, Regularization a,
                     const RingConfig& ring);

// Dense symmetric truncation H = diag(kappa_n^2) + coupling * ME in one sector.
// Row-major storage; even sector holds modes 0..n_max, odd holds 1..n_max.
struct TruncatedHamiltonian {
    Parity sector = Parity::even;
    int n_max = 0;
    int dim = 0;
    std::vector<double> entries;

    double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * dim + j]; }
};

TruncatedHamiltonian build_hamiltonian(MeKind kind, double coupling, Regularization a,
                                       const RingConfig& ring, Parity sector, int n_max);

// Eigenvalues in ascending order.
std::vector<double> diagonalize(const TruncatedHamiltonian& h);

// Spectrum of the separable realization c_a E_a in the odd sector.
// Takes the renormalized coupling; the bare one is formed internally.
SpectrumResult separable_spectrum(EpsilonCoupling c, Regularization a, const RingConfig& ring,
                                  int n_max, int count);

// Smallest basis size meeting the resolution guideline for half-width a.
int suggested_n_max(Regularization a, const RingConfig& ring);

}  // namespace pointspec
