#pragma once

#include <vector>

#include "batchps/core.hpp"
#include "batchps/spectral.hpp"
#include "batchps/transform.hpp"

namespace bps {

enum class Term { I1, I2, I3, full };

struct CutParametrization {
    double theta;
    double s_of_theta;
    double jacobian;  // ds/dtheta magnitude 2 sqrt(rho(1-q)) sin(theta)
};
CutParametrization cut_param(const QueueParams& p, double theta);

struct InversionResult {
    double x = 0;
    double ccdf = 0;
    double density = 0;
    bool has_density = false;
    Method method = Method::bromwich;
    double err_bound = 0;
};

struct BromwichOptions {
    double A = 18.4;  // damping; discretisation error ~ exp(-A)
    int n = 15;       // plain terms before Euler averaging
    int m = 11;       // binomial averaging order
    double rel_tol = 1e-11;  // transform tolerance used at each node
    double requested_tol = 1e-4;  // relative, on the returned CCDF
};

// P(Omega > x) from the CCDF transform (1 - lt(s))/s by Euler-accelerated
// Fourier series inversion (Abate-Whitt).
InversionResult bromwich_ccdf(const QueueParams& p, double x, const EvalConfig& cfg = {},
                              const BromwichOptions& opt = {});
std::vector<InversionResult> bromwich_ccdf(const QueueParams& p, const std::vector<double>& xs,
                                           const EvalConfig& cfg = {}, const BromwichOptions& opt = {});

// Jump term(s+0i) - term(s-0i) at s = s(theta).
cplx boundary_delta(const QueueParams& p, Term j, double theta, const EvalConfig& cfg = {});

// Samples of the upper boundary values on a fixed theta rule; reused across x.
class BranchCut {
public:
    BranchCut(const QueueParams& p, const EvalConfig& cfg = {}, bool extended = false);

    InversionResult density(Term j, double x) const;
    InversionResult ccdf(double x) const;

    // theta-integrand of the full density at x, on the stored nodes
    std::vector<std::pair<double, double>> density_integrand(double x) const;

    struct Node {
        double theta, weight, weight_low;  // main rule and embedded lower-order rule
        double s, jac;
        cplx i1, i2, i3;  // upper boundary values
    };
    const std::vector<Node>& nodes() const { return nodes_; }
    bool pole_in_cut() const { return pole_in_cut_; }
    double pole_theta() const { return pole_theta_; }
    double prefactor() const { return pre_; }
    // nodes whose boundary value could not be computed
    int failed_nodes() const { return failed_; }

private:
    double integrate(Term j, double x, bool ccdf, double* err) const;
    QueueParams p_;
    double pre_;
    CutInfo ci_;
    bool pole_in_cut_ = false;
    double pole_theta_ = 0;
    cplx e_at_pole_;  // E(s*+0i) or E(s*) off the cut
    std::vector<Node> nodes_;
    std::vector<double> node_err_;
    int failed_ = 0;
};

InversionResult branchcut_density(const QueueParams& p, Term j, double x, const EvalConfig& cfg = {});
InversionResult ccdf_tail(const QueueParams& p, double x, const EvalConfig& cfg = {});

}  // namespace bps
