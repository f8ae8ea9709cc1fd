#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "batchps/inversion.hpp"

using namespace bps;

namespace {
const auto P = validate_params(0.2, 0.3);
}

TEST_CASE("Bromwich CCDF against the simulated reference") {
    // 10^6 simulated batches: value and 95% half-width
    struct R {
        double x, sim, hw;
    };
    auto res = bromwich_ccdf(P, {2.0, 10.0});
    R ref[] = {{2.0, 0.351637, 0.0011}, {10.0, 0.016343, 0.00037}};
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(res[i].ccdf - ref[i].sim) < ref[i].hw);
        CHECK(res[i].err_bound < 1e-6);
        CHECK(res[i].method == Method::bromwich);
    }
    // frozen to guard regressions
    CHECK(res[0].ccdf == doctest::Approx(0.3519204722).epsilon(1e-8));
    CHECK(res[1].ccdf == doctest::Approx(0.01630636492).epsilon(1e-7));
}

TEST_CASE("Bromwich CCDF is a survival function") {
    auto res = bromwich_ccdf(P, {1e-3, 5.0, 20.0});
    CHECK(res[0].ccdf == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(res[0].ccdf > res[1].ccdf);
    CHECK(res[1].ccdf > res[2].ccdf);
    CHECK(res[2].ccdf > 0);
}

TEST_CASE("Bromwich rejects bad abscissae") {
    CHECK_THROWS_AS(bromwich_ccdf(P, 0.0), DomainError);
    CHECK_THROWS_AS(bromwich_ccdf(P, -1.0), DomainError);
}

TEST_CASE("cut parametrisation") {
    auto c = cut_info(P);
    auto a = cut_param(P, 0.0), b = cut_param(P, M_PI), m = cut_param(P, M_PI / 2);
    CHECK(a.s_of_theta == doctest::Approx(c.sigma_plus));
    CHECK(b.s_of_theta == doctest::Approx(c.sigma_minus));
    CHECK(a.jacobian == doctest::Approx(0.0));
    CHECK(m.jacobian == doctest::Approx(2 * std::sqrt(0.14)));
}
