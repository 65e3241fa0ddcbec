#pragma once

#include <vector>

#include "pointspec/basis.hpp"
#include "pointspec/ring.hpp"
#include "pointspec/spectrum.hpp"

namespace pointspec {

// First-order shift of level n: coupling times the a->0 diagonal matrix
// element.  The delta couples only to the even sector, the separable epsilon
// only to the odd one; asking for the untouched sector raises SectorError.
double first_order(MeKind kind, double coupling, int n, Parity sector, const RingConfig& ring);

// Coefficient of v^2 for even level n >= 1, assembled from the reciprocal
// mode sum with its half-weight zero-mode term.  Equals -1/(L^2 kappa_n^2).
double second_order_delta(int n, const RingConfig& ring);

// Second-order data for the separable epsilon at half-width a, per unit
// squared coupling.  truncated_value + tail_estimate is the numerical sum;
// divergent_part and finite_part are its small-a asymptotic pieces.
struct SecondOrderEpsilon {
    double finite_part = 0.0;
    double divergent_part = 0.0;
    double truncated_value = 0.0;
    double tail_estimate = 0.0;
};

SecondOrderEpsilon second_order_epsilon(int n, Regularization a, const RingConfig& ring,
                                        long m_max);

// Everything the second-order treatment of one odd level produces, in both
// bare and renormalized organizations.
struct PerturbationReport {
    int n = 0;
    SectorTag sector = SectorTag::minus;
    double c = 0.0;
    double c_a = 0.0;
    double a = 0.0;
    long m_max = 0;
    double first_order = 0.0;
    double second_order_truncated = 0.0;
    double tail_estimate = 0.0;
    double divergent_piece = 0.0;
    double bare_total = 0.0;
    double renormalized_total = 0.0;
    double reference_exact = 0.0;
};

// Series in the bare coupling c_a = 2ac/(2a+c) through second order.
PerturbationReport bare_series(EpsilonCoupling c, Regularization a, const RingConfig& ring,
                               int n, long m_max);

// Same data organized in the renormalized coupling: the counterterm from
// expanding c_a cancels the 1/a part of the second-order sum, leaving a
// total that is finite as a -> 0.
PerturbationReport renormalized_series(EpsilonCoupling c, Regularization a,
                                       const RingConfig& ring, int n, long m_max);

// Least-squares fit of per-a values to A + B/a + C*a.
struct DivergenceFit {
    double constant_term = 0.0;
    double inverse_a_coeff = 0.0;
    double linear_a_coeff = 0.0;
    double max_residual = 0.0;
};

DivergenceFit fit_divergence(const std::vector<double>& a_values,
                             const std::vector<double>& values);

}  // namespace pointspec
