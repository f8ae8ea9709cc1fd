#include "batchps/asymptotics.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "batchps/spectral.hpp"

namespace bps {

namespace {

struct Roots {
    double a, sr, s1q, sp;  // sqrt(rho(1-q)), sqrt(rho), sqrt(1-q), sigma+
};

Roots roots_of(const QueueParams& p) {
    Roots r;
    r.a = std::sqrt(p.rho() * (1 - p.q()));
    r.sr = std::sqrt(p.rho());
    r.s1q = std::sqrt(1 - p.q());
    r.sp = -(r.s1q - r.sr) * (r.s1q - r.sr);
    return r;
}

double log_dq(const QueueParams& p, double x) {
    auto t = tail_constants(p);
    return std::log(t.c_q) - 5.0 / 6.0 * std::log(x) + t.sigma_plus * x - t.b_q * std::cbrt(x);
}

}  // namespace

TailAsymptotics tail_constants(const QueueParams& p) {
    const double rho = p.rho(), q = p.q();
    auto r = roots_of(p);
    TailAsymptotics t;
    t.sigma_plus = r.sp;
    t.c_q = std::pow(M_PI / r.a, 5.0 / 6.0) / (std::cbrt(2.0) * std::sqrt(3.0));
    t.b_q = 3 * std::pow(M_PI / 2, 2.0 / 3.0) * std::pow(r.a, 1.0 / 3.0);
    double gap = r.s1q - r.sr;
    t.eta1 = 2 * q * ((rho + q) * (1 - q) + 2 * q * r.a) * std::exp(r.s1q / gap) / ((1 - q) * (1 - q - r.a));
    t.eta2 = -2 * q * (rho + q) * std::exp((r.s1q + r.sr) / gap) / r.sp;
    t.eta3 = 2 * q * (rho + q) * (r.a - rho) / (r.sp * (q + r.a)) * std::exp(r.sr / ((q + r.a) * gap));
    t.prefactor_Omega = -(1 - rho - q) / (r.sp * (rho + q) * q) * (t.eta1 + t.eta2 + t.eta3);
    t.prefactor_omega = 2 * (1 - rho - q) * (1 - q) / (r.sp * r.sp) * std::exp((r.s1q + r.sr) / gap);
    return t;
}

double dq_envelope(const QueueParams& p, double x) {
    if (!(x > 0)) throw DomainError("dq_envelope: x must be positive");
    return std::exp(log_dq(p, x));
}

std::array<double, 3> eta_constants(const QueueParams& p) {
    auto t = tail_constants(p);
    return {t.eta1, t.eta2, t.eta3};
}

double tail_Omega(const QueueParams& p, double x) { return tail_constants(p).prefactor_Omega * dq_envelope(p, x); }

double tail_omega(const QueueParams& p, double x) { return tail_constants(p).prefactor_omega * dq_envelope(p, x); }

double prefactor_lower_bound(const QueueParams& p) {
    auto r = roots_of(p);
    return 2 * (1 - p.rho() - p.q()) / (r.sp * r.sp) * std::exp((r.s1q + r.sr) / (r.s1q - r.sr));
}

double prefactor_q0_limit(double rho) {
    double sr = std::sqrt(rho), s0 = -(1 - sr) * (1 - sr);
    return 2 * (1 - rho) / (s0 * s0) * std::exp((1 + sr) / (1 - sr));
}

CutKit cut_kit(const QueueParams& p, double zeta, double theta) {
    if (!(theta > 0 && theta < M_PI)) throw DomainError("cut_kit: theta outside (0, pi)");
    auto r = roots_of(p);
    const double q = p.q(), crit = q + r.a;
    if (zeta == crit) throw DomainError("cut_kit: zeta = q + sqrt(rho(1-q))");
    CutKit k;
    k.zeta = zeta;
    k.theta = theta;
    double d = zeta - q;
    k.m_val = std::sqrt(std::max(0.0, d * d + r.a * r.a - 2 * d * r.a * std::cos(theta)));
    k.eps = zeta < crit ? 1 : -1;
    double c = zeta > crit ? zeta - r.a * std::cos(theta) - q : r.a * std::cos(theta) + q - zeta;
    k.phi_val = std::atan2(r.a * std::sin(theta), c);
    return k;
}

cplx cut_integral_closed(const QueueParams& p, double zeta, double theta) {
    if (zeta == 1) throw DomainError("cut_integral_closed: zeta = 1");
    auto kz = cut_kit(p, zeta, theta);
    auto k1 = cut_kit(p, 1.0, theta);
    double ct = std::cos(theta) / std::sin(theta);
    double ex = (kz.eps * (kz.phi_val - M_PI / 2) + k1.phi_val) * ct;
    return cplx(0, -kz.m_val * M_PI) * std::exp(ex) / (k1.m_val * std::cosh(M_PI * ct / 2));
}

namespace {

// Along the segment [U-, U+] both bases 1 - y/U+- keep a constant argument,
// so principal logarithms are continuous there.
cplx log_R(const SpectralBundle& b, cplx y) {
    return (b.c_minus - 1.0) * std::log(1.0 - y / b.u_minus) + (b.c_plus - 1.0) * std::log(1.0 - y / b.u_plus);
}

}  // namespace

// log R at xi(theta, t) from log t and log(1-t), so both endpoints keep
// full relative accuracy.
static cplx log_R_segment(const SpectralBundle& b, double lt, double l1t) {
    cplx d = b.u_plus - b.u_minus;
    return (b.c_minus - 1.0) * (lt + std::log(-d / b.u_minus)) + (b.c_plus - 1.0) * (l1t + std::log(d / b.u_plus));
}

cplx cut_integral_direct(const QueueParams& p, double zeta, double theta) {
    auto b = roots_U(p, s_of_theta(p, theta), Side::above_cut);
    cplx lz = log_R(b, zeta), d = b.u_plus - b.u_minus;
    // tc is the distance to the nearer endpoint
    auto g = [&](double t, double tc) {
        double lt = t < 0.5 ? std::log(t) : std::log1p(-tc);
        double l1t = t < 0.5 ? std::log1p(-t) : std::log(tc);
        cplx y = b.u_minus + t * d;
        return std::exp(log_R_segment(b, lt, l1t) - lz) / (1.0 - y) * d;
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    double re = ts.integrate([&](double t, double tc) { return g(t, tc).real(); }, 0.0, 1.0, 1e-13);
    double im = ts.integrate([&](double t, double tc) { return g(t, tc).imag(); }, 0.0, 1.0, 1e-13);
    return -cplx(re, im);
}

cplx boundary_R_closed(const QueueParams& p, double zeta, double theta, double t) {
    if (!(t > 0 && t < 1)) throw DomainError("boundary_R_closed: t outside (0, 1)");
    auto k = cut_kit(p, zeta, theta);
    if (k.eps < 0) throw DomainError("boundary_R_closed: requires zeta < q + sqrt(rho(1-q))");
    double a = std::sqrt(p.rho() * (1 - p.q())), ct = std::cos(theta) / std::sin(theta);
    cplx lt = cplx(-0.5, -0.5 * ct) * std::log(t) + cplx(-0.5, 0.5 * ct) * std::log(1 - t);
    return k.m_val / (2 * a * std::sin(theta)) * std::exp(lt + (k.phi_val - M_PI / 2) * ct);
}

cplx boundary_R_direct(const QueueParams& p, double zeta, double theta, double t) {
    if (!(t > 0 && t < 1)) throw DomainError("boundary_R_direct: t outside (0, 1)");
    auto b = roots_U(p, s_of_theta(p, theta), Side::above_cut);
    return std::exp(log_R_segment(b, std::log(t), std::log1p(-t)) - log_R(b, zeta));
}

LaplaceCheck laplace_method_check(const QueueParams& p, double x) {
    if (!(x > 0)) throw DomainError("laplace_method_check: x must be positive");
    auto r = roots_of(p);
    double k = r.a * x;
    // scale by the integrand at its peak theta* = (pi/(2k))^{1/3}
    double ts = std::min(M_PI, std::cbrt(M_PI / (2 * k)));
    double gs = -M_PI / ts - k * ts * ts;
    auto f = [&](double th) { return th <= 0 ? 0.0 : th * std::exp(-M_PI / th - k * th * th - gs); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double w = std::min(ts, 1 / std::sqrt(k));
    double I = 0, e = 0;
    double edges[] = {0.0, std::max(0.0, ts - 8 * w), ts, std::min(M_PI, ts + 8 * w), M_PI};
    for (int i = 0; i + 1 < 5; ++i)
        if (edges[i + 1] > edges[i]) I += GK::integrate(f, edges[i], edges[i + 1], 15, 1e-13, &e);
    double log_lhs = r.sp * x + gs + std::log(I);
    double log_rhs = log_dq(p, x);
    return {std::exp(log_lhs), std::exp(log_rhs), log_lhs, log_rhs};
}

}  // namespace bps
