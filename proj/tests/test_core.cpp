#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "batchps/core.hpp"

using namespace bps;

TEST_CASE("validate_params accepts the stable region") {
    auto p = validate_params(0.2, 0.3);
    CHECK(p.rho() == 0.2);
    CHECK(p.q() == 0.3);
    CHECK(p.load() == doctest::Approx(0.2 / 0.7));
}

TEST_CASE("validate_params names the failed bound") {
    CHECK_THROWS_AS(validate_params(0.7, 0.3), InstabilityError);
    CHECK_THROWS_WITH_AS(validate_params(0.2, 0.0), doctest::Contains("q must lie in (0,1)"), InstabilityError);
    CHECK_THROWS_WITH_AS(validate_params(0.0, 0.3), doctest::Contains("rho must be positive"), InstabilityError);
    CHECK_THROWS_WITH_AS(validate_params(0.5, 0.6), doctest::Contains("unstable"), InstabilityError);
    CHECK_THROWS_AS(validate_params(NAN, 0.3), InstabilityError);
}

TEST_CASE("validate_params grid matches the invariant exactly") {
    for (int i = -2; i <= 42; ++i)
        for (int j = -2; j <= 42; ++j) {
            double rho = i / 40.0, q = j / 40.0;
            bool ok = rho > 0 && q > 0 && q < 1 && rho + q < 1;
            bool got = true;
            try {
                validate_params(rho, q);
            } catch (const InstabilityError&) {
                got = false;
            }
            CHECK(got == ok);
        }
}

TEST_CASE("EvalConfig defaults and checks") {
    EvalConfig c;
    CHECK(c.quad_rel_tol == 1e-9);
    CHECK(c.quad_abs_tol == 1e-14);
    CHECK(c.inner_tol_factor == 1e-2);
    CHECK(c.max_subdivisions == 2000);
    CHECK(c.newton_tol == 1e-13);
    CHECK(c.newton_max_iter == 100);
    CHECK_NOTHROW(c.check());
    c.inner_tol_factor = 2;
    CHECK_THROWS_AS(c.check(), DomainError);
    c = EvalConfig{};
    c.quad_abs_tol = 0;
    CHECK_THROWS_AS(c.check(), DomainError);
}

TEST_CASE("log_near unwinds across the negative real axis") {
    cplx prev(0, 3.1);
    cplx z = std::polar(1.0, -3.1);  // just past -pi
    cplx l = log_near(z, prev);
    CHECK(l.imag() == doctest::Approx(2 * M_PI - 3.1));
    CHECK(std::abs(std::exp(l) - z) < 1e-15);
}

TEST_CASE("cpow_tagged adds a full turn per tag") {
    ComplexPoint z(-1.0, 1e-300);
    cplx a(0.5, 0);
    CHECK(std::abs(cpow_tagged(z, a) - cplx(0, 1)) < 1e-15);
    z.branch_tag = 1;
    CHECK(std::abs(cpow_tagged(z, a) - cplx(0, -1)) < 1e-15);
}

TEST_CASE("method names") {
    CHECK(std::string(method_name(Method::bromwich)) == "bromwich");
    CHECK(std::string(method_name(Method::branchcut)) == "branchcut");
    CHECK(std::string(method_name(Method::simulation)) == "simulation");
    CHECK(std::string(method_name(Method::asymptotic)) == "asymptotic");
}
