#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "batchps/core.hpp"

namespace bps {

struct CutInfo {
    double sigma_minus;
    double sigma_plus;
    double pole;  // s_q^*
};

CutInfo cut_info(const QueueParams& p);

template <class R>
struct SpectralBundleT {
    using C = std::complex<R>;
    C s, u_minus, u_plus, sqrt_delta, c_plus, c_minus, x_small;
    R rho, q;
    bool on_cut = false;
};
using SpectralBundle = SpectralBundleT<double>;

template <class R>
std::complex<R> poly_P(R rho, R q, std::complex<R> s, std::complex<R> u) {
    return u * u - (R(1) + rho + q + s) * u + q + q * s + rho;
}
inline cplx poly_P(const QueueParams& p, cplx s, cplx u) { return poly_P<double>(p.rho(), p.q(), s, u); }

template <class R>
SpectralBundleT<R> roots_U_t(R rho, R q, std::complex<R> s, Side side) {
    using C = std::complex<R>;
    SpectralBundleT<R> b;
    b.s = s;
    b.rho = rho;
    b.q = q;
    const R sq = std::sqrt(rho * (R(1) - q));
    const R sm = -(std::sqrt(R(1) - q) + std::sqrt(rho)) * (std::sqrt(R(1) - q) + std::sqrt(rho));
    const R sp = -(std::sqrt(R(1) - q) - std::sqrt(rho)) * (std::sqrt(R(1) - q) - std::sqrt(rho));
    if (s.imag() == R(0) && s.real() >= sm && s.real() <= sp) {
        if (side == Side::automatic) throw BranchCutError("roots_U: s lies on the cut, a side is required");
        R c = (s.real() + R(1) - q + rho) / (R(2) * sq);
        if (c > R(1)) c = R(1);
        if (c < R(-1)) c = R(-1);
        R th = std::acos(c);
        R sg = side == Side::above_cut ? R(1) : R(-1);
        b.u_plus = q + sq * C(std::cos(th), sg * std::sin(th));
        b.u_minus = q + sq * C(std::cos(th), -sg * std::sin(th));
        b.sqrt_delta = b.u_plus - b.u_minus;
        b.on_cut = true;
    } else {
        b.sqrt_delta = std::sqrt(s - sm) * std::sqrt(s - sp);
        C S = s + R(1) + rho + q;
        b.u_minus = (S - b.sqrt_delta) / R(2);
        b.u_plus = (S + b.sqrt_delta) / R(2);
        // small-root cancellation guard via Vieta
        if (std::abs(b.u_minus) < R(0.25) * std::abs(b.u_plus))
            b.u_minus = (q + q * s + rho) / b.u_plus;
    }
    b.c_plus = -(b.u_minus - q) / (b.u_plus - b.u_minus);
    b.c_minus = R(1) - b.c_plus;
    b.x_small = R(1) - b.u_minus / b.u_plus;
    return b;
}
SpectralBundle roots_U(const QueueParams& p, cplx s, Side side = Side::automatic);

// theta parametrisation of the cut
double s_of_theta(const QueueParams& p, double theta);

template <class R>
std::complex<R> kernel_R_t(const SpectralBundleT<R>& b, std::complex<R> xi) {
    using C = std::complex<R>;
    C a = R(1) - xi / b.u_minus, c = R(1) - xi / b.u_plus;
    if (std::abs(a) == R(0) || std::abs(c) == R(0)) throw DomainError("kernel_R: xi equals a root");
    // on the negative axis take the limit from Im s > 0, whatever the sign of zero
    if (a.imag() == R(0)) a = C(a.real(), R(0));
    if (c.imag() == R(0)) c = C(c.real(), R(0));
    return std::exp((b.c_minus - R(1)) * std::log(a) + (b.c_plus - R(1)) * std::log(c));
}
cplx kernel_R(const SpectralBundle& b, cplx xi);
cplx kernel_frak_R(const SpectralBundle& b, cplx u, cplx v);

// X(s;v), product form and rational form.
template <class R>
std::complex<R> map_X_t(const SpectralBundleT<R>& b, std::complex<R> v) {
    using C = std::complex<R>;
    C P = poly_P<R>(b.rho, b.q, b.s, v);
    C Rv = kernel_R_t(b, v);
    R scale = R(1) + std::abs(P);
    if (std::abs(P) < R(1e-12) * scale || std::abs(Rv) == R(0)) throw DomainError("map_X: pole");
    return -b.u_plus * v / (P * Rv);
}
template <class R>
std::complex<R> map_X_alt_t(const SpectralBundleT<R>& b, std::complex<R> v) {
    using C = std::complex<R>;
    C d = v - b.u_minus;
    if (std::abs(d) == R(0)) throw DomainError("map_X: v = U-");
    C ratio = (R(1) - v / b.u_minus) / (R(1) - v / b.u_plus);
    return v / d * std::exp(b.c_plus * std::log(ratio));
}
cplx map_X(const SpectralBundle& b, cplx v);
cplx map_X_alt(const SpectralBundle& b, cplx v);

template <class R>
std::pair<std::complex<R>, std::complex<R>> polys_Q_t(const SpectralBundleT<R>& b, std::complex<R> v) {
    using C = std::complex<R>;
    const R q = b.q;
    C pr = b.u_plus * b.u_minus, sm = b.u_plus + b.u_minus;
    C q0 = pr - q * v;
    C q1 = (q * q - pr) * v * v + R(2) * pr * (sm - R(2) * q) * v - pr * ((sm - q) * (sm - q) - pr);
    return {q0, q1};
}
std::pair<cplx, cplx> polys_Q(const SpectralBundle& b, cplx v);

template <class R>
std::pair<std::complex<R>, std::complex<R>> psi_maps_t(std::complex<R> cp, std::complex<R> t) {
    using C = std::complex<R>;
    C d = cp * t + R(1) - cp;
    if (std::abs(d) == R(0)) throw DomainError("psi_maps: denominator vanishes");
    C d2 = d * d, d3 = d2 * d;
    C base = t * (R(1) - t);
    return {base / d3, base * (R(1) - R(2) * t - cp * (R(1) - t * t)) / (d3 * d2)};
}
std::pair<cplx, cplx> psi_maps(const SpectralBundle& b, cplx t);

// Tree function: 1 - T + w T^{1-C+} = 0 with T(0) = 1.  Newton runs on
// L = log T so that large |T| (cut boundary) stays well conditioned.
template <class R>
bool tree_newton_L(std::complex<R>& L, std::complex<R> w, std::complex<R> a, R tol, int maxit) {
    using C = std::complex<R>;
    for (int it = 0; it < maxit; ++it) {
        C t = std::exp(L), ta = std::exp(a * L);
        C g = R(1) - t + w * ta;
        C dg = -t + a * w * ta;
        if (dg == C(0)) return false;
        C d = g / dg;
        L -= d;
        if (!(std::isfinite(L.real()) && std::isfinite(L.imag()))) return false;
        R lim = std::abs(L) > R(1) ? std::abs(L) : R(1);
        if (std::abs(d) < tol * lim) return true;
    }
    return false;
}

// Continue L along the segment w0 -> w1 with adaptive steps.
template <class R>
std::complex<R> tree_continue_L(std::complex<R> L, std::complex<R> w0, std::complex<R> w1, std::complex<R> a,
                                R tol, int maxit, int detours = 0) {
    using C = std::complex<R>;
    R lam = 0, h = 1;
    while (lam < R(1)) {
        if (h > R(1) - lam) h = R(1) - lam;
        for (;;) {
            C Lt = L;
            C w = w0 + (w1 - w0) * (lam + h);
            if (tree_newton_L(Lt, w, a, tol, maxit) && std::abs(Lt - L) < R(0.3)) {
                L = Lt;
                break;
            }
            h /= 2;
            if (h < R(1e-9)) {
                // near a branch point of T: step around it on the left of the path
                if (detours >= 8) throw SolverError("tree_T: continuation stalled");
                C wc = w0 + (w1 - w0) * lam;
                R d = std::min(R(1) - lam, R(1e-3) * R(1 << detours));
                C wd = wc + (w1 - w0) * d * C(1, 1);
                L = tree_continue_L<R>(L, wc, wd, a, tol, maxit, detours + 1);
                return tree_continue_L<R>(L, wd, w1, a, tol, maxit, detours + 1);
            }
        }
        lam += h;
        h *= 2;
    }
    return L;
}

// Lagrange series T = 1 + sum_n binom(n a, n-1) w^n / n.
template <class R>
std::complex<R> tree_series(std::complex<R> w, std::complex<R> a, int nterms) {
    using C = std::complex<R>;
    C sum = 1, wn = 1;
    for (int n = 1; n <= nterms; ++n) {
        wn *= w;
        C na = a * R(n), bin = 1;
        for (int j = 0; j < n - 1; ++j) bin *= (na - R(j)) / R(j + 1);
        sum += bin * wn / R(n);
    }
    return sum;
}

template <class R>
std::complex<R> tree_L_t(std::complex<R> w, std::complex<R> cp, R tol = R(1e-13), int maxit = 100) {
    using C = std::complex<R>;
    C a = R(1) - cp;
    if (std::abs(w) < R(1e-3)) {
        C L = std::log(tree_series(w, a, 12));
        tree_newton_L(L, w, a, tol, maxit);
        return L;
    }
    return tree_continue_L<R>(C(0), C(0), w, a, tol, maxit);
}

cplx tree_T(const SpectralBundle& b, cplx w, const EvalConfig& cfg = {});
cplx tree_T_series(const SpectralBundle& b, cplx w, int nterms);
// |1 - T + w T^{1-C+}|
double tree_residual(const SpectralBundle& b, cplx w, cplx T);

}  // namespace bps
