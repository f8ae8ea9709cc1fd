#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "batchps/core.hpp"

namespace bps {

// One row of the invariant suite.  A check passes iff measured < tolerance,
// so every tolerance can be tightened below what is achievable.
struct CheckResult {
    std::string name;
    double measured = 0;
    double tolerance = 0;
    std::string detail;
    bool pass() const { return measured < tolerance; }
};

CheckResult check_vieta(std::uint64_t seed = 7, int n = 1000);
CheckResult check_root_order(std::uint64_t seed = 7, int n = 1000);
CheckResult check_cut_conjugacy(std::uint64_t seed = 7, int n = 1000);
CheckResult check_sigma_grid();
CheckResult check_tree_residual(int n = 500);
CheckResult check_tree_series(std::uint64_t seed = 7, int n = 200);
// 1 - lt(1e-4) for the three reference parameter pairs
CheckResult check_normalization();
// count of non-monotone steps along s = 1e-2, 1e-3, 1e-4 and values above 1.0001
CheckResult check_normalization_order();
CheckResult check_pde_residual(const QueueParams& p);
CheckResult check_cut_integral(const QueueParams& p);
CheckResult check_cut_boundary(const QueueParams& p);
CheckResult check_laplace(const QueueParams& p);
CheckResult check_laplace_trend(const QueueParams& p);
CheckResult check_eta_signs();
CheckResult check_prefactor_inequalities();
CheckResult check_q0_limit();

struct NamedCheck {
    std::string name;
    std::function<CheckResult()> run;
};
// The suite run by `validate`.
std::vector<NamedCheck> validation_suite(const QueueParams& p);

// Runs the suite; tightened names get tolerance = measured / 10.
std::vector<CheckResult> run_suite(const std::vector<NamedCheck>& suite, const std::vector<std::string>& tightened);

}  // namespace bps
