#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "batchps/asymptotics.hpp"

using namespace bps;

namespace {
const auto P = validate_params(0.2, 0.3);
}

TEST_CASE("tail constants") {
    auto t = tail_constants(P);
    CHECK(t.b_q == doctest::Approx(2.9211633645893967).epsilon(1e-13));
    CHECK(t.sigma_plus == doctest::Approx(-(std::sqrt(0.7) - std::sqrt(0.2)) * (std::sqrt(0.7) - std::sqrt(0.2))));
    CHECK(t.c_q == doctest::Approx(2.698780642669164).epsilon(1e-13));
    CHECK(t.prefactor_Omega == doctest::Approx(1397.70).epsilon(1e-5));
    CHECK(t.prefactor_Omega > 0);
    CHECK(t.prefactor_omega > 0);
}

TEST_CASE("Laplace integral against a 30-digit reference") {
    struct R {
        double x, log_lhs;
    };
    for (R r : {R{100, -31.540882235012911}, R{1000, -185.62979388632026}, R{10000, -1586.2956983286750}}) {
        auto c = laplace_method_check(P, r.x);
        CHECK(c.log_lhs == doctest::Approx(r.log_lhs).epsilon(1e-10));
    }
}

TEST_CASE("Laplace ratio tends to one") {
    double prev = 1e300;
    for (double x : {1e3, 1e4, 1e5}) {
        double d = std::abs(laplace_method_check(P, x).ratio() - 1);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 0.01);
}

TEST_CASE("envelope stays finite in the log domain") {
    CHECK(dq_envelope(P, 100) == doctest::Approx(1.94577e-14).epsilon(1e-5));
    double big = dq_envelope(P, 1e5);
    CHECK(big >= 0);
    CHECK(std::isfinite(big));
    CHECK(tail_Omega(P, 100) == doctest::Approx(tail_constants(P).prefactor_Omega * dq_envelope(P, 100)));
}

TEST_CASE("prefactor bounds") {
    auto t = tail_constants(P);
    auto eta = eta_constants(P);
    CHECK(eta[0] > 0);
    CHECK(eta[1] > 0);
    CHECK(t.prefactor_Omega > prefactor_lower_bound(P));
    CHECK(t.prefactor_Omega >= t.prefactor_omega);
    // q -> 0 limit
    auto small = tail_constants(validate_params(0.2, 1e-6));
    CHECK(small.prefactor_Omega == doctest::Approx(prefactor_q0_limit(0.2)).epsilon(1e-2));
}

TEST_CASE("closed forms on the cut") {
    for (double th : {0.3, 1.0, 2.5})
        for (double z : {0.1, 0.25}) {
            cplx a = cut_integral_closed(P, z, th), b = cut_integral_direct(P, z, th);
            CHECK(std::abs(a - b) < 1e-6 * (1 + std::abs(a)));
            for (double t : {0.2, 0.5, 0.9}) {
                cplx c = boundary_R_closed(P, z, th, t), d = boundary_R_direct(P, z, th, t);
                CHECK(std::abs(c - d) < 1e-8 * (1 + std::abs(c)));
            }
        }
}

TEST_CASE("cut kit") {
    auto k = cut_kit(P, 0.1, 1.0);
    CHECK(k.phi_val >= 0);
    CHECK(k.phi_val <= M_PI);
    CHECK((k.eps == 1 || k.eps == -1));
}
