#include "pointspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace pointspec {

namespace {

constexpr double kTolK = 1e-12;   // bisection tolerance in k
constexpr int kMaxBisect = 200;

using Fn = std::function<double(double)>;

double bisect(const Fn& f, double lo, double hi, double flo, double fhi) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    for (int it = 0; it < kMaxBisect; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < kTolK) return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    if (hi - lo < kTolK) return 0.5 * (lo + hi);
    throw ConvergenceError("bisection did not reach k tolerance " + std::to_string(kTolK) +
                           " within " + std::to_string(kMaxBisect) + " iterations");
}

// Golden-section minimizer of |f| for tangential roots (no sign change).
double minimize_abs(const Fn& f, double lo, double hi) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = std::abs(f(c)), fd = std::abs(f(d));
    for (int it = 0; it < kMaxBisect && (b - a) > kTolK; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = std::abs(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = std::abs(f(d));
        }
    }
    return 0.5 * (a + b);
}

// Scans f on the grid k_i = k0 + i*dk, appending bisected sign-change roots
// (and, if detect_tangent, local minima of |f| that refine below accept_tol)
// until `want` roots are collected or k exceeds k_limit.
void scan_roots(const Fn& f, double k0, double dk, double k_limit, std::size_t want,
                bool detect_tangent, double accept_tol, std::vector<double>& out) {
    double kp = k0, fp = f(k0);
    double kpp = 0.0, fpp = 0.0; // previous-previous point for tangent triples
    bool have_pp = false;
    for (long i = 1; out.size() < want; ++i) {
        const double k = k0 + i * dk;
        if (k > k_limit)
            throw ConvergenceError("root scan exhausted [" + std::to_string(k0) + ", " +
                                   std::to_string(k_limit) + "] before finding " +
                                   std::to_string(want) + " roots");
        const double fk = f(k);
        if (fk == 0.0) {
            out.push_back(k);
            have_pp = false;
            kp = k + 0.5 * dk;
            fp = f(kp);
            continue;
        }
        if ((fp < 0.0) != (fk < 0.0)) {
            out.push_back(bisect(f, kp, k, fp, fk));
        } else if (detect_tangent && have_pp && std::abs(fp) < std::abs(fpp) &&
                   std::abs(fp) < std::abs(fk)) {
            const double km = minimize_abs(f, kpp, k);
            // The minimization window [kpp, k] overlaps the previous two grid
            // cells, so a simple root already bisected there shows up again as
            // a minimum of |f|; keep only genuinely new locations.
            bool dup = false;
            for (std::size_t j = out.size() > 2 ? out.size() - 2 : 0; j < out.size(); ++j)
                if (std::abs(km - out[j]) <= dk) dup = true;
            if (!dup && std::abs(f(km)) <= accept_tol) out.push_back(km);
        }
        kpp = kp;
        fpp = fp;
        have_pp = true;
        kp = k;
        fp = fk;
    }
}

Fn limit_condition_fn(Model model, double coupling, const RingConfig& ring) {
    if (model == Model::delta)
        return [coupling, &ring](double k) {
            return delta_limit_condition(k, DeltaCoupling{coupling}, ring);
        };
    return [coupling, &ring](double k) {
        return epsilon_limit_condition(k, EpsilonCoupling{coupling}, ring);
    };
}

} // namespace

const char* sector_name(SectorTag s) {
    switch (s) {
        case SectorTag::plus: return "+";
        case SectorTag::minus: return "-";
        default: return "full";
    }
}

SectorTag sector_tag(Parity p) {
    return p == Parity::even ? SectorTag::plus : SectorTag::minus;
}

const char* method_name(RootMethod m) {
    switch (m) {
        case RootMethod::limit_condition: return "limit-condition";
        case RootMethod::exact_mode: return "exact-mode";
        case RootMethod::hyperbolic: return "hyperbolic";
        case RootMethod::transfer_matrix: return "transfer-matrix";
        default: return "diagonalization";
    }
}

double delta_limit_condition(double k, DeltaCoupling v, const RingConfig& ring) {
    if (!(k > 0.0)) throw ConfigError("delta_limit_condition requires k > 0");
    const double h = 0.5 * k * ring.L;
    return 2.0 * k * std::sin(h) - v.v * std::cos(h);
}

double epsilon_limit_condition(double k, EpsilonCoupling c, const RingConfig& ring) {
    if (!(k > 0.0)) throw ConfigError("epsilon_limit_condition requires k > 0");
    const double h = 0.5 * k * ring.L;
    return 2.0 * std::sin(h) + k * c.c * std::cos(h);
}

double delta_limit_condition_bound(double gamma, DeltaCoupling v, const RingConfig& ring) {
    const double h = 0.5 * gamma * ring.L;
    return 2.0 * gamma * std::sinh(h) + v.v * std::cosh(h);
}

double epsilon_limit_condition_bound(double gamma, EpsilonCoupling c, const RingConfig& ring) {
    const double h = 0.5 * gamma * ring.L;
    return 2.0 * std::sinh(h) + c.c * gamma * std::cosh(h);
}

SpectrumResult solve_limit_spectrum(Model model, double coupling, const RingConfig& ring,
                                    int count) {
    if (count < 1) throw ConfigError("solve_limit_spectrum: count must be >= 1");
    const Fn g = limit_condition_fn(model, coupling, ring);
    const double dk = std::numbers::pi / (4.0 * ring.L);
    // one condition root per free spacing 2*pi/L, plus slack for the low root
    const double k_limit = (count + 8) * 2.0 * std::numbers::pi / ring.L * 4.0;

    std::vector<double> groots;
    scan_roots(g, 1e-9, dk, k_limit, static_cast<std::size_t>(count), false, 0.0, groots);

    const SectorTag perturbed = model == Model::delta ? SectorTag::plus : SectorTag::minus;
    const SectorTag unperturbed = model == Model::delta ? SectorTag::minus : SectorTag::plus;

    SpectrumResult result;
    for (double k : groots)
        result.roots.push_back(
            {k, k * k, perturbed, std::abs(g(k)), RootMethod::limit_condition});

    // Opposite-parity levels stay at kappa_n; they solve the full periodic
    // condition exactly through its sin(kL/2) factor.
    for (int n = 1; kappa(n, ring) <= groots.back() + 1e-9; ++n) {
        const double kap = kappa(n, ring);
        result.roots.push_back({kap, kap * kap, unperturbed,
                                std::abs(std::sin(0.5 * kap * ring.L)), RootMethod::exact_mode});
    }

    // Attractive delta: single even bound state on the hyperbolic branch.
    if (model == Model::delta && coupling < 0.0) {
        const Fn gb = [coupling, &ring](double gamma) {
            return delta_limit_condition_bound(gamma, DeltaCoupling{coupling}, ring);
        };
        double lo = 1e-12, hi = std::max(1.0, std::abs(coupling));
        int guard = 0;
        while (gb(hi) < 0.0) {
            hi *= 2.0;
            if (++guard > 60) throw ConvergenceError("bound-state bracket expansion failed");
        }
        const double gamma = bisect(gb, lo, hi, gb(lo), gb(hi));
        result.roots.push_back(
            {gamma, -gamma * gamma, SectorTag::plus, std::abs(gb(gamma)), RootMethod::hyperbolic});
    }

    std::stable_sort(result.roots.begin(), result.roots.end(),
                     [](const Root& a, const Root& b) { return a.energy < b.energy; });
    return result;
}

double limit_root_near(Model model, double coupling, const RingConfig& ring, int n) {
    if (n < 1) throw ConfigError("limit_root_near: n must be >= 1");
    const double kap = kappa(n, ring);
    if (coupling == 0.0) return kap;
    const Fn g = limit_condition_fn(model, coupling, ring);
    const double half = std::numbers::pi / ring.L * (1.0 - 1e-9);
    const double fc = g(kap);
    if (fc == 0.0) return kap;
    const double flo = g(kap - half), fhi = g(kap + half);
    if ((flo < 0.0) != (fc < 0.0)) return bisect(g, kap - half, kap, flo, fc);
    if ((fc < 0.0) != (fhi < 0.0)) return bisect(g, kap, kap + half, fc, fhi);
    throw ConvergenceError("limit_root_near: no sign change around kappa_n; |coupling| too large?");
}

double delta_expansion(DeltaCoupling v, const RingConfig& ring, int n) {
    if (n < 1) throw ConfigError("delta_expansion: n must be >= 1");
    const double kap = kappa(n, ring);
    const double L = ring.L;
    return kap * kap + 2.0 * v.v / L - v.v * v.v / (L * L * kap * kap);
}

double epsilon_expansion(EpsilonCoupling c, const RingConfig& ring, int n) {
    if (n < 1) throw ConfigError("epsilon_expansion: n must be >= 1");
    const double kap = kappa(n, ring);
    const double r = c.c / ring.L;
    return kap * kap * (1.0 - 2.0 * r + 3.0 * r * r);
}

PiecewiseSystem build_delta_finite(DeltaCoupling v, Regularization a, const RingConfig& ring) {
    a.check_inside(ring);
    PiecewiseSystem sys;
    const double flank = 0.5 * ring.L - a.a;
    sys.elements = {FreeSegment{flank}, ConstantSegment{2.0 * a.a, v.v / (2.0 * a.a)},
                    FreeSegment{flank}};
    sys.symmetric = true;
    return sys;
}

PiecewiseSystem build_epsilon_finite(EpsilonCoupling c, Regularization a, const RingConfig& ring) {
    if (c.c == 0.0)
        throw ConfigError("build_epsilon_finite: c = 0 makes the outer spike strengths diverge");
    a.check_inside(ring);
    PiecewiseSystem sys;
    const double flank = 0.5 * ring.L - a.a;
    const double outer = 2.0 / c.c - 1.0 / a.a;
    const double central = c.c / (a.a * a.a);
    sys.elements = {FreeSegment{flank},      DeltaSpike{outer}, FreeSegment{a.a},
                    DeltaSpike{central},     FreeSegment{a.a},  DeltaSpike{outer},
                    FreeSegment{flank}};
    sys.symmetric = true;
    return sys;
}

namespace {

struct HalfRing {
    std::vector<Element> right; // elements from 0+ to L/2, in order
    double central_strength = 0.0;
};

// Extracts the x in (0, L/2] part of a mirror-symmetric layout that starts at
// x = -L/2, splitting an interaction-centered segment at the origin and
// collecting the strength of any spike sitting exactly at x = 0.
HalfRing split_symmetric(const PiecewiseSystem& sys, const RingConfig& ring) {
    HalfRing half;
    const double tol = 1e-12 * ring.L;
    double pos = -0.5 * ring.L;
    for (const auto& e : sys.elements) {
        const double w = element_width(e);
        if (const auto* d = std::get_if<DeltaSpike>(&e)) {
            if (std::abs(pos) <= tol)
                half.central_strength += d->strength;
            else if (pos > tol) {
                if (pos >= 0.5 * ring.L - tol)
                    throw ConfigError("ring_spectrum: spike at the antipode is not supported");
                half.right.push_back(e);
            }
            continue;
        }
        const double lo = pos, hi = pos + w;
        pos = hi;
        if (hi <= tol) continue;           // entirely in the left half
        if (lo >= -tol) {                  // entirely in the right half
            half.right.push_back(e);
            continue;
        }
        // straddles the origin; symmetry demands it be centered there
        if (std::abs(lo + hi) > 1e-9 * ring.L)
            throw ConfigError("ring_spectrum: segment straddling x = 0 is not centered");
        if (const auto* f = std::get_if<FreeSegment>(&e))
            half.right.push_back(FreeSegment{0.5 * f->width});
        else
            half.right.push_back(
                ConstantSegment{0.5 * std::get<ConstantSegment>(e).width,
                                std::get<ConstantSegment>(e).height});
    }
    return half;
}

// Propagates (psi, psi') from x = L/2 back to x = 0+ at energy k^2.
void shoot_back(const HalfRing& half, double k, double psi_half, double dpsi_half, double& psi0,
                double& dpsi0) {
    double psi = psi_half, dpsi = dpsi_half;
    for (auto it = half.right.rbegin(); it != half.right.rend(); ++it)
        transfer_matrix(*it, k).inverse().apply(psi, dpsi);
    psi0 = psi;
    dpsi0 = dpsi;
}

} // namespace

SpectrumResult ring_spectrum(const PiecewiseSystem& system, const RingConfig& ring, int count) {
    if (count < 1) throw ConfigError("ring_spectrum: count must be >= 1");
    if (std::abs(system.total_width() - ring.L) > 1e-9 * ring.L)
        throw ConfigError("ring_spectrum: segments tile " + std::to_string(system.total_width()) +
                          ", not the ring circumference " + std::to_string(ring.L));

    const double dk = std::numbers::pi / (4.0 * ring.L);
    const double k_limit = (count + 8) * 2.0 * std::numbers::pi / ring.L * 4.0;
    SpectrumResult result;

    if (system.symmetric) {
        const HalfRing half = split_symmetric(system, ring);
        const double g0 = half.central_strength;

        // Evenness about 0 halves the central spike: psi'(0+) = (g0/2) psi(0).
        // Evenness about L/2 (periodicity + mirror symmetry) fixes psi'(L/2) = 0.
        const Fn even = [&](double k) {
            double psi, dpsi;
            shoot_back(half, k, 1.0, 0.0, psi, dpsi);
            return dpsi - 0.5 * g0 * psi;
        };
        const Fn odd = [&](double k) {
            double psi, dpsi;
            shoot_back(half, k, 0.0, 1.0, psi, dpsi);
            return psi;
        };

        for (auto [fn, tag] : {std::pair<const Fn*, SectorTag>{&even, SectorTag::plus},
                               {&odd, SectorTag::minus}}) {
            std::vector<double> ks;
            scan_roots(*fn, 1e-9, dk, k_limit, static_cast<std::size_t>(count), false, 0.0, ks);
            for (double k : ks)
                result.roots.push_back(
                    {k, k * k, tag, std::abs((*fn)(k)), RootMethod::transfer_matrix});
        }
    } else {
        // Periodicity on the full ring: M(k) has eigenvalue 1, i.e. Tr M = 2
        // (unimodular M). Degenerate doublets only touch the condition, so
        // local minima of |Tr M - 2| are refined and accepted near zero. The
        // grid is finer than the sector scans because a weak asymmetric spike
        // splits each doublet by only ~ v L / kappa.
        const Fn trace_gap = [&](double k) {
            TransferMatrix m{1.0, 0.0, 0.0, 1.0};
            for (const auto& e : system.elements) m = transfer_matrix(e, k) * m;
            return m.m11 + m.m22 - 2.0;
        };
        std::vector<double> ks;
        scan_roots(trace_gap, 1e-9, dk / 10.0, k_limit, static_cast<std::size_t>(count), true,
                   1e-8, ks);
        for (double k : ks)
            result.roots.push_back(
                {k, k * k, SectorTag::full, std::abs(trace_gap(k)), RootMethod::transfer_matrix});
    }

    std::stable_sort(result.roots.begin(), result.roots.end(),
                     [](const Root& a, const Root& b) { return a.energy < b.energy; });
    if (result.roots.size() > static_cast<std::size_t>(count)) result.roots.resize(count);
    return result;
}

double LimitEigenfunction::value(double x) const {
    return x >= 0.0 ? A * std::sin(k * (x - eta)) : A * std::sin(k * (x - eta + L));
}

double LimitEigenfunction::deriv(double x) const {
    return x >= 0.0 ? A * k * std::cos(k * (x - eta)) : A * k * std::cos(k * (x - eta + L));
}

LimitEigenfunction limit_eigenfunction(Model model, double coupling, const RingConfig& ring,
                                       double k) {
    if (!(k > 0.0)) throw ConfigError("limit_eigenfunction requires k > 0");
    const double g = model == Model::delta
                         ? delta_limit_condition(k, DeltaCoupling{coupling}, ring)
                         : epsilon_limit_condition(k, EpsilonCoupling{coupling}, ring);
    if (!(std::abs(g) <= 1e-8))
        throw ConfigError("limit_eigenfunction: k is not a root, |condition| = " +
                          std::to_string(std::abs(g)));
    const double L = ring.L;
    LimitEigenfunction psi{};
    psi.k = k;
    psi.L = L;
    if (model == Model::delta) {
        // Even about the interaction: a pure cosine about the far point L/2.
        psi.eta = 0.5 * L + 0.5 * std::numbers::pi / k;
        psi.A = 1.0 / std::sqrt(0.5 * L + std::sin(k * L) / (2.0 * k));
    } else {
        // Jump at the interaction, derivative continuous: sine about L/2.
        psi.eta = 0.5 * L;
        psi.A = 1.0 / std::sqrt(0.5 * L - std::sin(k * L) / (2.0 * k));
    }
    return psi;
}

DualityReport duality_check(EpsilonCoupling c, const RingConfig& ring, double k) {
    const double ge = epsilon_limit_condition(k, c, ring);
    if (!(std::abs(ge) <= 1e-10))
        throw ConfigError("duality_check: k is not an epsilon root, |condition| = " +
                          std::to_string(std::abs(ge)));
    const DeltaCoupling v = duality_coupling(c, k);
    DualityReport report{};
    report.k = k;
    report.v = v.v;
    report.condition_residual = std::abs(delta_limit_condition(k, v, ring));

    // The derivative of the delta eigenfunction at the dual coupling must be
    // the epsilon eigenfunction up to one overall scale, everywhere off x = 0.
    const LimitEigenfunction phi = limit_eigenfunction(Model::delta, v.v, ring, k);
    const LimitEigenfunction psi = limit_eigenfunction(Model::epsilon, c.c, ring, k);
    constexpr int kSamples = 400;
    const double x0 = 1e-6, x1 = 0.5 * ring.L;
    std::vector<double> xs;
    xs.reserve(2 * kSamples);
    for (int i = 0; i < kSamples; ++i) {
        const double x = x0 + (x1 - x0) * i / (kSamples - 1.0);
        xs.push_back(x);
        xs.push_back(-x);
    }
    double x_ref = xs[0];
    for (double x : xs)
        if (std::abs(phi.deriv(x)) > std::abs(phi.deriv(x_ref))) x_ref = x;
    const double s = psi.value(x_ref) / phi.deriv(x_ref);
    double dev = 0.0;
    for (double x : xs) dev = std::max(dev, std::abs(s * phi.deriv(x) - psi.value(x)));
    report.derivative_deviation = dev;
    return report;
}

} // namespace pointspec
