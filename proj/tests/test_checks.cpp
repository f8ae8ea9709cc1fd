#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "batchps/checks.hpp"

using namespace bps;

TEST_CASE("cheap validation checks pass") {
    auto p = validate_params(0.2, 0.3);
    for (auto r : {check_vieta(), check_root_order(), check_cut_conjugacy(), check_sigma_grid(),
                   check_tree_residual(), check_tree_series(), check_cut_integral(p),
                   check_cut_boundary(p), check_laplace(p), check_laplace_trend(p), check_eta_signs(),
                   check_prefactor_inequalities(), check_q0_limit()}) {
        INFO(r.name << ": " << r.measured << " vs " << r.tolerance << " " << r.detail);
        CHECK(r.pass());
    }
}

TEST_CASE("tightening forces a failure") {
    auto p = validate_params(0.2, 0.3);
    auto suite = validation_suite(p);
    std::vector<NamedCheck> one;
    for (auto& c : suite)
        if (c.name == "spectral.vieta") one.push_back(c);
    REQUIRE(one.size() == 1);
    auto loose = run_suite(one, {});
    auto tight = run_suite(one, {"spectral.vieta"});
    CHECK(loose[0].pass());
    CHECK_FALSE(tight[0].pass());
}
