#include "batchps/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

#include "batchps/parallel.hpp"

namespace bps {

CutParametrization cut_param(const QueueParams& p, double theta) {
    double sq = std::sqrt(p.rho() * (1 - p.q()));
    return {theta, s_of_theta(p, theta), 2 * sq * std::sin(theta)};
}

namespace {

EvalConfig tightened(const EvalConfig& cfg, double rel) {
    EvalConfig c = cfg;
    c.quad_rel_tol = std::min(cfg.quad_rel_tol, rel);
    c.quad_abs_tol = std::min(cfg.quad_abs_tol, rel * 1e-3);
    return c;
}

double binom(int m, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (m - k + i) / i;
    return r;
}

}  // namespace

std::vector<InversionResult> bromwich_ccdf(const QueueParams& p, const std::vector<double>& xs, const EvalConfig& cfg,
                                           const BromwichOptions& opt) {
    EvalConfig c = tightened(cfg, opt.rel_tol);
    const int K = opt.n + opt.m + 1;
    // every (x, k) transform evaluation is independent
    std::vector<cplx> G(xs.size() * (K + 1));
    std::vector<double> Gerr(G.size());
    for (double x : xs)
        if (!(x > 0)) throw DomainError("bromwich_ccdf: x must be positive");
    parallel_for(G.size(), [&](std::size_t idx) {
        std::size_t i = idx / (K + 1);
        int k = int(idx % (K + 1));
        double x = xs[i];
        cplx s((opt.A) / (2 * x), k * M_PI / x);
        auto lt = lt_Omega(p, s, Side::automatic, c);
        G[idx] = (1.0 - lt.value) / s;
        Gerr[idx] = lt.est_abs_error / std::abs(s);
    });
    std::vector<InversionResult> out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double x = xs[i];
        double fac = std::exp(opt.A / 2) / x;
        std::vector<double> partial(K + 1);
        double acc = 0.5 * G[i * (K + 1)].real(), round = 0.5 * Gerr[i * (K + 1)];
        partial[0] = acc;
        for (int k = 1; k <= K; ++k) {
            acc += (k % 2 ? -1.0 : 1.0) * G[i * (K + 1) + k].real();
            round += Gerr[i * (K + 1) + k];
            partial[k] = acc;
        }
        auto euler = [&](int n) {
            double e = 0;
            for (int k = 0; k <= opt.m; ++k) e += binom(opt.m, k) * partial[n + k];
            return e * std::ldexp(1.0, -opt.m);
        };
        double v = fac * euler(opt.n), v2 = fac * euler(opt.n + 1);
        InversionResult r;
        r.x = x;
        r.ccdf = v;
        r.method = Method::bromwich;
        r.err_bound = std::abs(v - v2) + fac * round + std::exp(-opt.A) * std::abs(v);
        if (r.err_bound > opt.requested_tol * std::abs(v) + 1e-12)
            throw AccuracyError("bromwich_ccdf: error bound " + std::to_string(r.err_bound) + " at x=" +
                                std::to_string(x) + " exceeds requested tolerance");
        out.push_back(r);
    }
    return out;
}

InversionResult bromwich_ccdf(const QueueParams& p, double x, const EvalConfig& cfg, const BromwichOptions& opt) {
    return bromwich_ccdf(p, std::vector<double>{x}, cfg, opt).front();
}

static cplx pick(Term j, const DecompositionValue& d) {
    switch (j) {
        case Term::I1: return d.i1;
        case Term::I2: return d.i2;
        case Term::I3: return d.i3;
        case Term::full: return d.i1 + d.i2 + d.i3;
    }
    return 0;
}

cplx boundary_delta(const QueueParams& p, Term j, double theta, const EvalConfig& cfg) {
    if (!(theta > 0 && theta < M_PI)) throw DomainError("boundary_delta: theta outside (0, pi)");
    double s = s_of_theta(p, theta);
    auto d = decompose(p, s, Side::above_cut, cfg);
    return cplx(0, 2 * pick(j, d).imag());
}

BranchCut::BranchCut(const QueueParams& p, const EvalConfig& cfg, bool extended) : p_(p), ci_(cut_info(p)) {
    pre_ = (1 - p.rho() - p.q()) / (p.q() * (p.rho() + p.q()));
    const double sq = std::sqrt(p.rho() * (1 - p.q()));
    // panel edges: geometric toward theta = 0, coarser on [pi/2, pi]
    std::vector<double> edges;
    for (int k = 7; k >= 1; --k) {
        double e = M_PI / std::ldexp(1.0, k);
        edges.push_back(e);
        edges.push_back(1.5 * e);
    }
    for (int k = 0; k <= 4; ++k) edges.push_back(M_PI / 2 + k * M_PI / 8);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    double s_star = ci_.pole;
    pole_in_cut_ = s_star > ci_.sigma_minus && s_star < ci_.sigma_plus;
    if (pole_in_cut_) {
        pole_theta_ = std::acos((s_star + 1 - p.q() + p.rho()) / (2 * sq));
        double dmin = M_PI;
        for (double e : edges) dmin = std::min(dmin, std::abs(e - pole_theta_));
        double h = 0.45 * dmin;
        edges.push_back(pole_theta_ - h);
        edges.push_back(pole_theta_ + h);
        std::sort(edges.begin(), edges.end());
    }

    // Gauss-Legendre 10 per panel, with a 5-point rule for the error estimate.
    using GMain = boost::math::quadrature::gauss<double, 10>;
    using GLow = boost::math::quadrature::gauss<double, 5>;
    auto expand = [](const auto& absc, const auto& w, std::vector<double>& X, std::vector<double>& W) {
        for (std::size_t i = 0; i < absc.size(); ++i) {
            if (absc[i] == 0) {
                X.push_back(0);
                W.push_back(w[i]);
            } else {
                X.push_back(-absc[i]);
                W.push_back(w[i]);
                X.push_back(absc[i]);
                W.push_back(w[i]);
            }
        }
    };
    std::vector<double> xm, wm, xl, wl;
    expand(GMain::abscissa(), GMain::weights(), xm, wm);
    expand(GLow::abscissa(), GLow::weights(), xl, wl);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        double a = edges[k], b = edges[k + 1], c = (a + b) / 2, h = (b - a) / 2;
        for (std::size_t i = 0; i < xm.size(); ++i) nodes_.push_back({c + h * xm[i], h * wm[i], 0, 0, 0, 0, 0, 0});
        for (std::size_t i = 0; i < xl.size(); ++i) nodes_.push_back({c + h * xl[i], 0, h * wl[i], 0, 0, 0, 0, 0});
    }
    for (auto& n : nodes_) {
        n.s = s_of_theta(p, n.theta);
        n.jac = 2 * sq * std::sin(n.theta);
    }
    // Boundary values come from nested quadrature along straight segments;
    // these are capped in cost and a failed node is kept as NaN.
    EvalConfig cc = cfg;
    cc.quad_rel_tol = std::max(cfg.quad_rel_tol, 1e-7);
    cc.quad_abs_tol = std::max(cfg.quad_abs_tol, 1e-11);
    cc.max_subdivisions = std::min(cfg.max_subdivisions, 40);
    std::vector<double> node_err(nodes_.size());
    parallel_for(nodes_.size(), [&](std::size_t i) {
        auto& n = nodes_[i];
        double e = 0;
        try {
            if (extended) {
                auto d = decompose_t<long double>((long double)p.rho(), (long double)p.q(),
                                                  std::complex<long double>(n.s, 0), Side::above_cut, cc, &e, false);
                n.i1 = cplx(double(d[0].real()), double(d[0].imag()));
                n.i2 = cplx(double(d[1].real()), double(d[1].imag()));
                n.i3 = cplx(double(d[2].real()), double(d[2].imag()));
            } else {
                auto d = decompose_t<double>(p.rho(), p.q(), cplx(n.s, 0), Side::above_cut, cc, &e, false);
                n.i1 = d[0];
                n.i2 = d[1];
                n.i3 = d[2];
            }
        } catch (const NumericalError&) {
            double nan = std::numeric_limits<double>::quiet_NaN();
            n.i1 = n.i2 = n.i3 = cplx(nan, nan);
            e = std::numeric_limits<double>::infinity();
        }
        node_err[i] = e;
    });
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!std::isfinite(node_err[i])) ++failed_;
        node_err_.push_back(node_err[i]);
    }
    Side side = pole_in_cut_ ? Side::above_cut : Side::automatic;
    try {
        double e = 0;
        auto b = roots_U(p, s_star, side);
        e_at_pole_ = E_at_q_t(b, cplx(p.q()), cc, &e, false);
    } catch (const NumericalError&) {
        e_at_pole_ = cplx(std::numeric_limits<double>::quiet_NaN(), 0);
        ++failed_;
    }
}

double BranchCut::integrate(Term j, double x, bool ccdf, double* err) const {
    double hi = 0, lo = 0, node = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        auto& n = nodes_[i];
        double im = 0;
        switch (j) {
            case Term::I1: im = n.i1.imag(); break;
            case Term::I2: im = n.i2.imag(); break;
            case Term::I3: im = n.i3.imag(); break;
            case Term::full: im = (n.i1 + n.i2 + n.i3).imag(); break;
        }
        double f = std::exp(n.s * x) * n.jac / M_PI;
        if (ccdf) f /= std::abs(n.s);
        if (!std::isfinite(im)) {
            node = std::numeric_limits<double>::infinity();
            continue;
        }
        double g = -im * f;
        hi += n.weight * g;
        lo += n.weight_low * g;
        node += (n.weight + n.weight_low) * node_err_[i] * f;
    }
    if (err) *err = std::abs(hi - lo) + node;
    return hi;
}

InversionResult BranchCut::density(Term j, double x) const {
    if (!(x > 0)) throw DomainError("branchcut_density: x must be positive");
    double err = 0;
    double v = integrate(j, x, false, &err);
    const double s = ci_.pole, q = p_.q(), rho = p_.rho();
    if (j == Term::I1 || j == Term::full) {
        // residue of I1 at s*; half from each side when s* sits on the cut
        cplx res = rho * (q * s + rho + 2 * q * (1 - q)) * e_at_pole_ / q;
        v += (res * std::exp(s * x)).real();
    }
    InversionResult r;
    r.x = x;
    r.density = j == Term::full ? pre_ * v + pre_ * q * q * std::exp(s * x) : v;
    r.has_density = true;
    r.method = Method::branchcut;
    r.err_bound = j == Term::full ? pre_ * err : err;
    return r;
}

InversionResult BranchCut::ccdf(double x) const {
    if (!(x > 0)) throw DomainError("ccdf_tail: x must be positive");
    double err = 0;
    double v = pre_ * integrate(Term::full, x, true, &err);
    const double s = ci_.pole, q = p_.q(), rho = p_.rho();
    cplx res = -pre_ * rho * (q * s + rho + 2 * q * (1 - q)) * e_at_pole_ / (q * s);
    v += (res * std::exp(s * x)).real();
    v += pre_ * q * q * std::exp(s * x) / (-s);
    InversionResult r;
    r.x = x;
    r.ccdf = v;
    r.method = Method::branchcut;
    r.err_bound = pre_ * err;
    return r;
}

std::vector<std::pair<double, double>> BranchCut::density_integrand(double x) const {
    std::vector<std::pair<double, double>> out;
    for (auto& n : nodes_) {
        if (n.weight == 0) continue;
        double im = (n.i1 + n.i2 + n.i3).imag();
        out.push_back({n.theta, -pre_ * im * std::exp(n.s * x) * n.jac / M_PI});
    }
    std::sort(out.begin(), out.end());
    return out;
}

InversionResult branchcut_density(const QueueParams& p, Term j, double x, const EvalConfig& cfg) {
    return BranchCut(p, cfg).density(j, x);
}

InversionResult ccdf_tail(const QueueParams& p, double x, const EvalConfig& cfg) {
    auto ci = cut_info(p);
    bool extended = x * std::abs(ci.sigma_plus) > 25;
    return BranchCut(p, cfg, extended).ccdf(x);
}

}  // namespace bps
