#pragma once

#include <functional>

namespace pointspec {

// Parameters for the dimensionless mode sums; beta = 2*pi*a/L.
struct SumSpec {
    int n = 1;
    double beta = 0.0;
    long m_max = 0;
    double tol = 1e-6;

    void validate() const;
};

// sinc(beta(m-n)) + sinc(beta(m+n)), the dimensionless diagonal-resolution kernel.
double pair_kernel(int n, int m, double beta);

// sum_{m>=1} sin^2(beta m)/m^2, closed form beta(pi-beta)/2.
// Direct sum plus analytic tail; evaluated at two cutoffs and gated by tol.
double sine_squared_sum(double beta, double tol);

// sum'_{m>=1, m!=n} pair_kernel(n,m,beta)^2 truncated at m_max plus the
// smooth (oscillation-averaged) tail.  Diverges like 2*pi/beta - 6 as beta->0.
double pair_sum(const SumSpec& spec);

// sum_{m>m_max} pair_kernel(n,m,beta)^2 with oscillatory terms resummed
// by Abel summation; accurate enough for second-order coefficient work.
double pair_sq_tail(int n, double beta, long m_max);

// sum'_{m>=1, m!=n} 1/(n^2-m^2) = -3/(4n^2) exactly; the optional zero-mode
// term enters with half weight from the constant mode's normalization,
// shifting the total to -1/(4n^2).
double sum_reciprocal(int n, bool include_zero_mode = false);

// pair_sum + 4 - (4/beta^2) * sine_squared_sum, which cancels the 1/beta
// divergence and the constant, leaving a remainder of order beta.
double pair_sum_identity_residual(int n, double beta);

namespace detail {

// sum_{m>M} 1/m^2 via the asymptotic expansion of the polygamma tail.
double trigamma_tail(long m_min_excl);

// sum_{m>M} 1/(m^2-n^2) by exact telescoping; requires M > n.
double sum_inv_m2n2(long m_min_excl, int n);

// sum_{m>M} b(m) cos(omega m + phase) by four-step Abel summation by parts,
// with backward differences of b taken numerically.
double abel_osc(double omega, double phase, const std::function<double(double)>& b,
                long m_min_excl);

}  // namespace detail

}  // namespace pointspec
