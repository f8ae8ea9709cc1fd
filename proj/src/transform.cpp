#include "batchps/transform.hpp"

namespace bps {

TransformValue E_at_q(const QueueParams& p, cplx s, cplx v, Side side, const EvalConfig& cfg) {
    cfg.check();
    auto b = roots_U(p, s, side);
    double err = 0;
    cplx val = E_at_q_t(b, v, cfg, &err);
    return {s, val, err};
}

TransformValue F_full(const QueueParams& p, cplx s, cplx u, cplx v, Side side, const EvalConfig& cfg) {
    cfg.check();
    if (u == v) throw DomainError("F_full: u = v is not supported");
    if (u == cplx(0)) throw DomainError("F_full: u = 0");
    auto b = roots_U(p, s, side);
    cplx P = poly_P(p, s, u);
    if (std::abs(P) < 1e-12 * (1 + std::abs(P))) throw DomainError("F_full: P(s;u) = 0");
    double err = 0;
    auto parts = F_parts_t(b, u, v, cfg, &err);
    cplx pre = u / ((u - v) * P);
    return {s, pre * (parts[0] + parts[1]), std::abs(pre) * err};
}

TransformValue E_general(const QueueParams& p, cplx s, cplx u, cplx v, Side side, const EvalConfig& cfg) {
    auto e = E_at_q(p, s, v, side, cfg);
    if (u == cplx(p.q())) return e;
    auto f = F_full(p, s, u, v, side, cfg);
    return {s, e.value + (u - p.q()) * f.value, e.est_abs_error + std::abs(u - p.q()) * f.est_abs_error};
}

cplx kernel_Z(const SpectralBundle& b, cplx u, cplx v, cplx y) {
    cplx fr = kernel_frak_R(b, u, y);
    cplx den = (1.0 - v) + v * fr;
    if (std::abs(den) == 0) throw DomainError("kernel_Z: denominator vanishes");
    return v * fr / den;
}

cplx L1(const QueueParams& p, cplx s, cplx u, cplx v, Side side, const EvalConfig& cfg) {
    if (v == cplx(0)) return 0;
    auto b = roots_U(p, s, side);
    auto r = detail::xi_integrals<double>(b, v, v - b.u_minus, cfg.quad_rel_tol, cfg.quad_abs_tol, cfg);
    if (!r.converged) throw QuadratureError("L1: tolerance not reached");
    cplx P = poly_P(p, s, v);
    auto Q = polys_Q(b, v);
    return (u * Q.first / P + v * Q.second / (P * P)) * r.value[0] / (b.u_plus - b.u_minus);
}

cplx L2(const QueueParams& p, cplx s, cplx v, Side side, const EvalConfig& cfg) {
    if (v == cplx(0)) return 0;
    auto b = roots_U(p, s, side);
    auto r = detail::xi_integrals<double>(b, v, v - b.u_minus, cfg.quad_rel_tol, cfg.quad_abs_tol, cfg);
    if (!r.converged) throw QuadratureError("L2: tolerance not reached");
    cplx P = poly_P(p, s, v);
    auto Q = polys_Q(b, v);
    return (b.u_plus + b.u_minus - p.q() - v) * Q.first * Q.first / ((b.u_plus - b.u_minus) * P * P) * r.value[1];
}

DecompositionValue decompose(const QueueParams& p, cplx s, Side side, const EvalConfig& cfg) {
    cfg.check();
    double err = 0;
    auto d = decompose_t<double>(p.rho(), p.q(), s, side, cfg, &err);
    DecompositionValue out;
    out.i1 = d[0];
    out.i2 = d[1];
    out.i3 = d[2];
    out.pole_term = d[3];
    out.prefactor = (1 - p.rho() - p.q()) / (p.q() * (p.rho() + p.q()));
    out.est_abs_error = out.prefactor * err;
    return out;
}

TransformValue lt_Omega(const QueueParams& p, cplx s, Side side, const EvalConfig& cfg) {
    // at s = 0 the y-path collapses (U- = rho + q); the value is 1 by definition
    if (s == cplx(0)) return {s, 1.0, 0.0};
    auto d = decompose(p, s, side, cfg);
    return {s, d.total(), d.est_abs_error};
}

}  // namespace bps
