#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "batchps/core.hpp"
#include "batchps/quadrature.hpp"
#include "batchps/spectral.hpp"

namespace bps {

struct TransformValue {
    cplx s;
    cplx value;
    double est_abs_error = 0;
};

struct DecompositionValue {
    cplx i1, i2, i3, pole_term;
    double prefactor = 0;
    double est_abs_error = 0;
    cplx total() const { return prefactor * (i1 + i2 + i3 + pole_term); }
};

namespace detail {

// X(s;v) = -U+ v / (P(s;v) R(s;v)) with P and R built from dv = v - U-.
template <class R>
std::complex<R> map_X_near(const SpectralBundleT<R>& b, std::complex<R> v, std::complex<R> dv) {
    using C = std::complex<R>;
    if (dv == C(0) || v == b.u_plus) throw DomainError("map_X: pole");
    C P = dv * (v - b.u_plus);
    C lr = (b.c_minus - R(1)) * std::log(-dv / b.u_minus) + (b.c_plus - R(1)) * std::log(R(1) - v / b.u_plus);
    return -b.u_plus * v / P * std::exp(-lr);
}

// Upper limit of the exponential substitution: integrands decay like
// exp(-Re(C-) z) near the endpoint U-.
template <class R>
R z_max(const SpectralBundleT<R>& b, R tol) {
    R rate = std::max(R(0.05), b.c_minus.real());
    R zm = (std::log(R(1) / tol) + R(12)) / rate;
    return std::min(zm, R(400));
}

// Integrand of the xi-integrals over [0, U-] after xi = U-(1 - e^{-z}).
// Returns (Psi0, Psi1) weighted by dxi/(1 - xi).  T is carried along the
// path by warm-started Newton.
template <class R>
struct XiPath {
    using C = std::complex<R>;
    struct State {
        C L, w, l2;
    };
    const SpectralBundleT<R>& b;
    C wscale, ratio;
    R tol;
    int maxit;
    State st;

    // dv = v - U-, passed separately so that v close to U- keeps its digits
    XiPath(const SpectralBundleT<R>& bundle, C v, C dv, R newton_tol, int newton_it)
        : b(bundle), tol(newton_tol), maxit(newton_it) {
        wscale = b.x_small * map_X_near(b, v, dv);
        ratio = b.u_minus / b.u_plus;
        st.w = wscale;
        st.l2 = C(0);
        st.L = tree_L_t<R>(wscale, b.c_plus, tol, maxit);
    }
    State save() const { return st; }
    void restore(const State& s) { st = s; }

    std::array<C, 2> operator()(R z) {
        C ez = std::exp(C(-z));
        C base = R(1) - ratio + ratio * ez;
        C l2 = log_near(base, st.l2);
        C w = wscale * std::exp(b.c_plus * z + (b.c_plus - R(1)) * l2);
        C a = R(1) - b.c_plus;
        C L = st.L;
        if (!tree_newton_L(L, w, a, tol, maxit) || std::abs(L - st.L) > R(0.3))
            L = tree_continue_L<R>(st.L, st.w, w, a, tol, maxit);
        st = {L, w, l2};
        auto ps = psi_maps_t(b.c_plus, std::exp(L));
        C xi = b.u_minus - b.u_minus * ez;
        C fac = b.u_minus * ez / (R(1) - xi);
        return {ps.first * fac, ps.second * fac};
    }
};

template <class R>
QuadResult<std::array<std::complex<R>, 2>> xi_integrals(const SpectralBundleT<R>& b, std::complex<R> v,
                                                         std::complex<R> dv, R rtol, R atol, const EvalConfig& cfg) {
    using V = std::array<std::complex<R>, 2>;
    if (v == std::complex<R>(0)) return {};
    XiPath<R> f(b, v, dv, R(cfg.newton_tol), cfg.newton_max_iter);
    return integrate_ordered<R, V>(f, R(0), z_max(b, atol), rtol, atol, cfg.max_subdivisions);
}

// Outer integrand of F over y in [u, U-] after y = U- + (u - U-) e^{-z}.
// Components: Z(1-Z)/(1-y) and (1-Z)(L1 + L2)/y, both times dy/dz.  L1 and
// L2 cancel to several digits when |s| is large, so they share one component.
template <class R>
struct YPath {
    using C = std::complex<R>;
    struct State {
        C lb;
    };
    const SpectralBundleT<R>& b;
    C u, vr, lb_u;
    R rtol, atol;
    const EvalConfig& cfg;
    State st;
    double inner_err = 0;

    YPath(const SpectralBundleT<R>& bundle, C uu, C v, R inner_rtol, R inner_atol, const EvalConfig& c)
        : b(bundle), u(uu), vr(v / uu), rtol(inner_rtol), atol(inner_atol), cfg(c) {
        lb_u = std::log(R(1) - u / b.u_plus);
        st.lb = lb_u;
    }
    State save() const { return st; }
    void restore(const State& s) { st = s; }

    std::array<C, 2> operator()(R z) {
        C ez = std::exp(C(-z));
        C y = b.u_minus + (u - b.u_minus) * ez;
        C lb = log_near(C(R(1) - y / b.u_plus), st.lb);
        st.lb = lb;
        C fr = std::exp((b.c_minus - R(1)) * (-z) + (b.c_plus - R(1)) * (lb - lb_u));
        C den = (R(1) - vr) + vr * fr;
        C Z = vr * fr / den, omz = (R(1) - vr) / den;
        C dy = (b.u_minus - u) * ez;
        C vp = y * Z;
        C dv = (u - b.u_minus) * ez - y * omz;  // vp - U- without cancellation
        C l1(0), l2(0);
        if (std::abs(vp) > R(0)) {
            auto in = xi_integrals<R>(b, vp, dv, rtol, atol, cfg);
            inner_err += double(std::abs(in.abs_error));
            C P = dv * (vp - b.u_plus);
            auto Q = polys_Q_t(b, vp);
            C d = b.u_plus - b.u_minus;
            l1 = (y * Q.first / P + vp * Q.second / (P * P)) * in.value[0] / d;
            l2 = (b.u_plus + b.u_minus - b.q - vp) * Q.first * Q.first / (d * P * P) * in.value[1];
        }
        return {omz * Z / (R(1) - y) * dy, omz * (l1 + l2) / y * dy};
    }
};

}  // namespace detail

// E(s;q,v) for a prepared bundle.
template <class R>
std::complex<R> E_at_q_t(const SpectralBundleT<R>& b, std::complex<R> v, const EvalConfig& cfg, double* err,
                         bool strict = true) {
    using C = std::complex<R>;
    if (v == C(0)) {
        if (err) *err = 0;
        return C(0);
    }
    C P = poly_P<R>(b.rho, b.q, b.s, v);
    auto Q = polys_Q_t(b, v);
    C pre = Q.first / ((b.u_plus - b.u_minus) * P);
    auto r = detail::xi_integrals<R>(b, v, v - b.u_minus, R(cfg.quad_rel_tol), R(cfg.quad_abs_tol), cfg);
    if (!r.converged && strict) throw QuadratureError("E_at_q: tolerance not reached");
    if (err) *err = double(std::abs(pre) * r.abs_error);
    return pre * r.value[0];
}

// The y-integrals of F(s;u,v) without the u/((u-v)P(s;u)) prefactor: the
// first one and the sum of the L1 and L2 ones.
template <class R>
std::array<std::complex<R>, 2> F_parts_t(const SpectralBundleT<R>& b, std::complex<R> u, std::complex<R> v,
                                         const EvalConfig& cfg, double* err, bool strict = true) {
    using V = std::array<std::complex<R>, 2>;
    R irt = R(cfg.quad_rel_tol * cfg.inner_tol_factor), iat = R(cfg.quad_abs_tol * cfg.inner_tol_factor);
    detail::YPath<R> f(b, u, v, irt, iat, cfg);
    auto r = integrate_ordered<R, V>(f, R(0), detail::z_max(b, R(cfg.quad_abs_tol)), R(cfg.quad_rel_tol),
                                     R(cfg.quad_abs_tol), cfg.max_subdivisions);
    if (!r.converged && strict) throw QuadratureError("F_full: tolerance not reached");
    if (err) *err = r.abs_error + f.inner_err / std::max(1, r.panels * 15);
    return r.value;
}

TransformValue E_at_q(const QueueParams& p, cplx s, cplx v, Side side = Side::automatic, const EvalConfig& cfg = {});
TransformValue F_full(const QueueParams& p, cplx s, cplx u, cplx v, Side side = Side::automatic,
                      const EvalConfig& cfg = {});
TransformValue E_general(const QueueParams& p, cplx s, cplx u, cplx v, Side side = Side::automatic,
                         const EvalConfig& cfg = {});
cplx kernel_Z(const SpectralBundle& b, cplx u, cplx v, cplx y);
cplx L1(const QueueParams& p, cplx s, cplx u, cplx v, Side side = Side::automatic, const EvalConfig& cfg = {});
cplx L2(const QueueParams& p, cplx s, cplx v, Side side = Side::automatic, const EvalConfig& cfg = {});
TransformValue lt_Omega(const QueueParams& p, cplx s, Side side = Side::automatic, const EvalConfig& cfg = {});
DecompositionValue decompose(const QueueParams& p, cplx s, Side side = Side::automatic, const EvalConfig& cfg = {});

// Same decomposition computed in a chosen floating type (extended precision).
// With strict = false an unconverged quadrature returns its value and error
// estimate instead of throwing.
template <class R>
std::array<std::complex<R>, 4> decompose_t(R rho, R q, std::complex<R> s, Side side, const EvalConfig& cfg,
                                           double* err, bool strict = true) {
    using C = std::complex<R>;
    C den = q + rho + q * s - q * q;
    if (std::abs(den) < R(1e-12)) throw DomainError("lt_Omega: s equals the pole s_q^*");
    auto b = roots_U_t<R>(rho, q, s, side);
    C u = rho + q, v = q;
    double e1 = 0, e2 = 0;
    C E = E_at_q_t(b, v, cfg, &e1, strict);
    auto parts = F_parts_t(b, u, v, cfg, &e2, strict);
    C Pu = poly_P<R>(rho, q, s, u);
    C fpre = rho * rho * u / ((u - v) * Pu);
    C i1 = rho * (q * s + rho + R(2) * q * (R(1) - q)) / den * E;
    C i2 = fpre * parts[0];
    C i3 = fpre * parts[1];
    C pole = q * q * q / den;
    if (err)
        *err = double(std::abs(rho * (q * s + rho + R(2) * q * (R(1) - q)) / den) * e1 + std::abs(fpre) * e2);
    return {i1, i2, i3, pole};
}

}  // namespace bps
