#pragma once

#include <array>
#include <cmath>

#include "batchps/core.hpp"

namespace bps {

struct TailAsymptotics {
    double sigma_plus = 0;
    double c_q = 0, b_q = 0;
    double eta1 = 0, eta2 = 0, eta3 = 0;
    double prefactor_Omega = 0;  // P(Omega > x) ~ prefactor_Omega * D_q(x)
    double prefactor_omega = 0;  // P(omega > x) ~ prefactor_omega * D_q(x)
};

struct CutKit {
    double zeta = 0, theta = 0;
    double m_val = 0;
    double phi_val = 0;  // in [0, pi]
    int eps = 1;
};

TailAsymptotics tail_constants(const QueueParams& p);

// D_q(x) = c_q x^{-5/6} exp(sigma+ x - b_q x^{1/3})
double dq_envelope(const QueueParams& p, double x);
std::array<double, 3> eta_constants(const QueueParams& p);
double tail_Omega(const QueueParams& p, double x);
double tail_omega(const QueueParams& p, double x);

// Lower bound of prefactor_Omega: the eta2 contribution alone.
double prefactor_lower_bound(const QueueParams& p);
// 2(1-rho)/sigma0^2 exp((1+sqrt rho)/(1-sqrt rho)), the q -> 0 limit.
double prefactor_q0_limit(double rho);

CutKit cut_kit(const QueueParams& p, double zeta, double theta);

// Closed form of int_{U+}^{U-} frakR(s(theta)+0i; zeta, y) dy/(1-y).
cplx cut_integral_closed(const QueueParams& p, double zeta, double theta);
// The same integral by quadrature along the segment, for checking.
cplx cut_integral_direct(const QueueParams& p, double zeta, double theta);

// frakR(s(theta)+0i; zeta, xi(theta,t)) in closed form, and directly.
cplx boundary_R_closed(const QueueParams& p, double zeta, double theta, double t);
cplx boundary_R_direct(const QueueParams& p, double zeta, double theta, double t);

struct LaplaceCheck {
    double lhs, rhs;  // underflow for large x; the logs do not
    double log_lhs, log_rhs;
    double ratio() const { return std::exp(log_lhs - log_rhs); }
};
// lhs = e^{sigma+ x} int_0^pi theta exp(-pi/theta - sqrt(rho(1-q)) x theta^2) dtheta, rhs = D_q(x)
LaplaceCheck laplace_method_check(const QueueParams& p, double x);

}  // namespace bps
