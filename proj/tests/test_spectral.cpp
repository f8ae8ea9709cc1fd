#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "batchps/spectral.hpp"

using namespace bps;

namespace {
const auto P = validate_params(0.2, 0.3);
bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * (1 + std::abs(b)); }
}  // namespace

// reference values from an independent 30-digit evaluation, frozen here
TEST_CASE("roots at s = 0.5") {
    auto b = roots_U(P, 0.5);
    CHECK(b.u_minus.real() == doctest::Approx(0.408392021690038).epsilon(1e-13));
    CHECK(b.u_plus.real() == doctest::Approx(1.591607978309962).epsilon(1e-13));
    CHECK(b.c_plus.real() == doctest::Approx(-0.0916079783099616).epsilon(1e-12));
    CHECK(std::abs(b.c_plus + b.c_minus - 1.0) < 1e-15);
    CHECK(std::abs(poly_P(P, 0.5, b.u_minus)) < 1e-14);
    CHECK(std::abs(poly_P(P, 0.5, b.u_plus)) < 1e-14);
}

TEST_CASE("kernels at s = 0.5") {
    auto b = roots_U(P, 0.5);
    CHECK(close(kernel_R(b, 0.4), 0.960851160628104, 1e-13));
    // 0.5 lies beyond U-, so the ratio picks up the principal-branch phase
    CHECK(close(kernel_frak_R(b, 0.5, 0.3), cplx(0.810394821426918, -0.239887364590443), 1e-12));
    CHECK(close(map_X(b, 0.3), -3.06611273339523, 1e-12));
    CHECK(close(map_X_alt(b, 0.3), -3.06611273339523, 1e-12));
}

TEST_CASE("tree function") {
    auto b = roots_U(P, 0.5);
    cplx T = tree_T(b, 0.01);
    CHECK(close(T, 1.01011041707397, 1e-13));
    CHECK(close(tree_T_series(b, 0.01, 30), T, 1e-13));
    CHECK(tree_residual(b, 0.01, T) < 1e-14);
    CHECK(tree_T(b, 0.0) == cplx(1.0));
}

TEST_CASE("cut endpoints and pole") {
    auto c = cut_info(P);
    double a = std::sqrt(0.7), r = std::sqrt(0.2);
    CHECK(c.sigma_minus == doctest::Approx(-(a + r) * (a + r)));
    CHECK(c.sigma_plus == doctest::Approx(-(a - r) * (a - r)));
    CHECK(c.pole == doctest::Approx(-(0.2 + 0.3 * 0.7) / 0.3));
    CHECK(s_of_theta(P, 0.0) == doctest::Approx(c.sigma_plus));
    CHECK(s_of_theta(P, M_PI) == doctest::Approx(c.sigma_minus));
}

TEST_CASE("roots on the cut need a side") {
    double s = s_of_theta(P, 1.0);
    CHECK_THROWS_AS(roots_U(P, s), BranchCutError);
    auto up = roots_U(P, s, Side::above_cut);
    auto dn = roots_U(P, s, Side::below_cut);
    double sq = std::sqrt(0.2 * 0.7);
    CHECK(close(up.u_plus, 0.3 + sq * std::polar(1.0, 1.0), 1e-14));
    CHECK(close(up.u_minus, 0.3 + sq * std::polar(1.0, -1.0), 1e-14));
    // Schwarz reflection across the cut
    CHECK(close(dn.u_plus, std::conj(up.u_plus), 1e-15));
    // limit from just above the cut agrees with the tagged boundary value
    auto near = roots_U(P, cplx(s, 1e-10));
    CHECK(close(near.u_plus, up.u_plus, 1e-4));
}

TEST_CASE("Vieta on a sample of s") {
    for (cplx s : {cplx(0.5), cplx(2, 3), cplx(-0.01, 1), cplx(10, -4), cplx(1e-3)}) {
        auto b = roots_U(P, s);
        CHECK(close(b.u_minus + b.u_plus, s + 1.5, 1e-14));
        CHECK(close(b.u_minus * b.u_plus, 0.3 * s + 0.5, 1e-14));
        CHECK(std::abs(b.u_minus) <= std::abs(b.u_plus));
    }
}
