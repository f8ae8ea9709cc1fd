#include "batchps/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "batchps/asymptotics.hpp"
#include "batchps/spectral.hpp"
#include "batchps/transform.hpp"

namespace bps {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

QueueParams ref() { return validate_params(0.2, 0.3); }

// (rho, q) pairs of the 20 x 20 stability grid
std::vector<QueueParams> grid20() {
    std::vector<QueueParams> g;
    for (int j = 1; j <= 20; ++j)
        for (int i = 1; i <= 20; ++i) {
            double q = j / 21.0, rho = i / 21.0 * (1 - q);
            g.push_back(validate_params(rho, q));
        }
    return g;
}

}  // namespace

CheckResult check_vieta(std::uint64_t seed, int n) {
    auto p = ref();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(0, 10), im(-10, 10), th(1e-6, M_PI - 1e-6);
    double worst = 0;
    auto probe = [&](const SpectralBundle& b) {
        cplx s = b.s;
        worst = std::max(worst, std::abs(b.u_minus + b.u_plus - (s + 1.0 + p.rho() + p.q())));
        worst = std::max(worst, std::abs(b.u_minus * b.u_plus - (p.q() + p.q() * s + p.rho())));
        worst = std::max(worst, std::abs(b.c_minus + b.c_plus - 1.0));
    };
    for (int i = 0; i < n; ++i) probe(roots_U(p, cplx(re(rng), im(rng))));
    for (int i = 0; i < n; ++i) {
        double s = s_of_theta(p, th(rng));
        probe(roots_U(p, s, Side::above_cut));
        probe(roots_U(p, s, Side::below_cut));
    }
    return {"spectral.vieta", worst, 1e-12, "max |Vieta|, |C-+C+-1| over " + std::to_string(3 * n) + " points"};
}

CheckResult check_root_order(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> sd(1e-9, 10), pq(0.01, 0.98);
    int bad = 0;
    for (int i = 0; i < n; ++i) {
        double q = pq(rng), rho = pq(rng) * (1 - q);
        auto p = validate_params(rho, q);
        auto b = roots_U(p, sd(rng));
        double um = b.u_minus.real(), up = b.u_plus.real();
        if (!(q < um && um < 1 && 1 < up && b.c_plus.real() < 0 && b.c_minus.real() > 1)) ++bad;
    }
    return {"spectral.order", double(bad), 0.5, "violations of q < U- < 1 < U+, C+ < 0 < 1 < C-"};
}

CheckResult check_cut_conjugacy(std::uint64_t seed, int n) {
    auto p = ref();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> th(1e-6, M_PI - 1e-6);
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        double s = s_of_theta(p, th(rng));
        auto a = roots_U(p, s, Side::above_cut), b = roots_U(p, s, Side::below_cut);
        // reflection across the cut, and the two roots conjugate on one side
        worst = std::max(worst, std::abs(b.u_plus - std::conj(a.u_plus)));
        worst = std::max(worst, std::abs(b.u_minus - std::conj(a.u_minus)));
        worst = std::max(worst, std::abs(a.u_plus - std::conj(a.u_minus)));
    }
    return {"spectral.conjugacy", worst, 1e-12, "U(s-0i) = conj U(s+0i), U+(s+0i) = conj U-(s+0i)"};
}

CheckResult check_sigma_grid() {
    double worst = 0;
    for (auto& p : grid20()) {
        auto c = cut_info(p);
        worst = std::max(worst, std::abs(c.sigma_plus + c.sigma_minus + 2 * (1 + p.rho() - p.q())));
        double m = 1 - p.rho() - p.q();
        worst = std::max(worst, std::abs(c.sigma_plus * c.sigma_minus - m * m));
    }
    return {"spectral.sigma_grid", worst, 1e-12, "sum and product identities on the 20x20 grid"};
}

CheckResult check_tree_residual(int n) {
    auto p = ref();
    EvalConfig cfg;
    const cplx ss[] = {0.5, 2.0, cplx(0.5, 3.0), 1e-3};
    double worst = 0;
    int per = n / 4, count = 0;
    for (cplx s : ss) {
        auto b = roots_U(p, s);
        cplx v = p.q();
        detail::XiPath<double> f(b, v, v - b.u_minus, cfg.newton_tol, cfg.newton_max_iter);
        double zm = detail::z_max(b, cfg.quad_abs_tol);
        for (int i = 0; i < per; ++i) {
            f(zm * i / per);
            cplx L = f.st.L, w = f.st.w;
            worst = std::max(worst, std::abs(1.0 - std::exp(L) + w * std::exp((1.0 - b.c_plus) * L)));
            ++count;
        }
    }
    return {"tree.residual", worst, 1e-12, std::to_string(count) + " path points of E(s;q,q)"};
}

CheckResult check_tree_series(std::uint64_t seed, int n) {
    auto p = ref();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> r(0, 1e-3), a(-M_PI, M_PI), sr(0.05, 5);
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        auto b = roots_U(p, cplx(sr(rng), sr(rng) - 2.5));
        cplx w = std::polar(r(rng), a(rng));
        cplx L = std::log(1.0 + w);
        tree_newton_L(L, w, 1.0 - b.c_plus, 1e-15, 100);
        worst = std::max(worst, std::abs(std::exp(L) - tree_T_series(b, w, 30)));
    }
    return {"tree.series", worst, 1e-12, "Newton vs 30-term series, |w| < 1e-3"};
}

namespace {
const double ref_pairs[3][2] = {{0.2, 0.3}, {0.4, 0.2}, {0.1, 0.5}};
}

CheckResult check_normalization() {
    double worst = 0;
    for (auto& rq : ref_pairs) {
        auto p = validate_params(rq[0], rq[1]);
        worst = std::max(worst, std::abs(1 - lt_Omega(p, 1e-4).value.real()));
    }
    return {"transform.normalization", worst, 5e-3, "max |1 - lt(1e-4)| over three parameter pairs"};
}

CheckResult check_normalization_order() {
    int bad = 0;
    for (auto& rq : ref_pairs) {
        auto p = validate_params(rq[0], rq[1]);
        double a = lt_Omega(p, 1e-2).value.real(), b = lt_Omega(p, 1e-3).value.real(),
               c = lt_Omega(p, 1e-4).value.real();
        bad += !(a < b) + !(b < c) + !(c <= 1.0001) + !(c >= 0.995);
    }
    return {"transform.monotone", double(bad), 0.5, "monotone approach to 1 along 1e-2, 1e-3, 1e-4"};
}

CheckResult check_pde_residual(const QueueParams& p) {
    EvalConfig cfg;
    const double rho = p.rho(), q = p.q();
    double worst = 0;
    int count = 0;
    for (double s : {0.3, 0.8})
        for (double u : {0.3, 0.55, 0.7})
            for (double v : {0.1, 0.25}) {
                auto F = [&](double uu, double vv) { return F_full(p, s, uu, vv, Side::automatic, cfg).value; };
                auto E = [&](double vv) { return E_at_q(p, s, vv, Side::automatic, cfg).value; };
                double hu = 1e-4 * (1 + u), hv = 1e-4 * (1 + v), he = 1e-6 * (1 + v);
                cplx f = F(u, v);
                cplx fu = (F(u + hu, v) - F(u - hu, v)) / (2 * hu);
                cplx fv = (F(u, v + hv) - F(u, v - hv)) / (2 * hv);
                cplx e = E(v), ev = (E(v + he) - E(v - he)) / (2 * he);
                double P = poly_P(p, s, u).real();
                cplx L = v / (1 - u) + (u + v) * e - v * (s + 1 + rho - v) * ev;
                cplx t1 = u * P * fu;
                cplx t2 = v * (rho * (1 - q) - (s + 1 + rho - v) * (u - q)) * fv;
                cplx t3 = (u * (u - s - 1 - rho) + (u - q) * (u + v)) * f;
                double mag = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(L)});
                worst = std::max(worst, std::abs(t1 + t2 + t3 + L) / mag);
                ++count;
            }
    return {"transform.pde", worst, 1e-4, std::to_string(count) + " points, residual / max term"};
}

CheckResult check_cut_integral(const QueueParams& p) {
    double worst = 0;
    for (double z : {p.q(), p.rho() + p.q(), 0.0})
        for (double th : {0.3, 0.7, 1.2}) {
            cplx c = cut_integral_closed(p, z, th), d = cut_integral_direct(p, z, th);
            worst = std::max(worst, std::abs(c - d) / std::abs(c));
        }
    return {"cut.integral", worst, 1e-6, "closed form vs quadrature, 9 (zeta, theta)"};
}

CheckResult check_cut_boundary(const QueueParams& p) {
    double worst = 0;
    for (double z : {p.q(), 0.0})
        for (double th : {0.3, 0.8, 2.0})
            for (double t : {0.1, 0.4, 0.9}) {
                cplx c = boundary_R_closed(p, z, th, t), d = boundary_R_direct(p, z, th, t);
                worst = std::max(worst, std::abs(c - d) / std::abs(c));
            }
    return {"cut.boundary_R", worst, 1e-8, "closed form vs direct kernel on the cut"};
}

CheckResult check_laplace(const QueueParams& p) {
    double r = laplace_method_check(p, 1e4).ratio();
    return {"laplace.x1e4", std::abs(r - 1), 0.1, "lhs/rhs = " + fmt(r)};
}

CheckResult check_laplace_trend(const QueueParams& p) {
    double a = std::abs(laplace_method_check(p, 1e4).ratio() - 1);
    double b = std::abs(laplace_method_check(p, 1e5).ratio() - 1);
    return {"laplace.trend", b / a, 1.0, "|ratio-1| at 1e5 over that at 1e4"};
}

CheckResult check_eta_signs() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    int bad = 0;
    for (int i = 0; i < 50; ++i) {
        double q = u(rng), rho = u(rng) * (1 - q);
        auto t = tail_constants(validate_params(rho, q));
        bad += !(t.eta1 > 0) + !(t.eta2 > 0) + !(t.eta3 < 0) + !(t.eta1 + t.eta2 > 0);
    }
    return {"asym.eta_signs", double(bad), 0.5, "sign pattern over 50 random stable pairs"};
}

CheckResult check_prefactor_inequalities() {
    // largest relative violation; exact ties at the grid edge count as 0
    double worst = 0;
    auto viol = [&](double lhs, double rhs) {  // want lhs > rhs
        double scale = std::max(std::abs(lhs), std::abs(rhs));
        worst = std::max(worst, (rhs - lhs) / (scale > 0 ? scale : 1));
    };
    for (auto& p : grid20()) {
        auto t = tail_constants(p);
        viol(t.eta1, 0);
        viol(t.eta2, 0);
        viol(0, t.eta3);
        viol(t.eta1 + t.eta2, 0);
        viol(t.prefactor_Omega, prefactor_lower_bound(p));
        viol((1 - p.q()) * t.prefactor_Omega, t.prefactor_omega);
    }
    return {"asym.inequalities", std::max(worst, 0.0), 1e-9, "20x20 grid, relative violation"};
}

CheckResult check_q0_limit() {
    double a = tail_constants(validate_params(0.25, 1e-4)).prefactor_Omega, b = prefactor_q0_limit(0.25);
    return {"asym.q0_limit", std::abs(a / b - 1), 1e-2, "prefactor " + fmt(a) + " vs limit " + fmt(b)};
}

std::vector<NamedCheck> validation_suite(const QueueParams& p) {
    return {
        {"spectral.vieta", [] { return check_vieta(); }},
        {"spectral.order", [] { return check_root_order(); }},
        {"spectral.conjugacy", [] { return check_cut_conjugacy(); }},
        {"spectral.sigma_grid", [] { return check_sigma_grid(); }},
        {"tree.residual", [] { return check_tree_residual(); }},
        {"tree.series", [] { return check_tree_series(); }},
        {"transform.normalization", [] { return check_normalization(); }},
        {"transform.monotone", [] { return check_normalization_order(); }},
        {"transform.pde", [p] { return check_pde_residual(p); }},
        {"cut.integral", [p] { return check_cut_integral(p); }},
        {"cut.boundary_R", [p] { return check_cut_boundary(p); }},
        {"laplace.x1e4", [p] { return check_laplace(p); }},
        {"laplace.trend", [p] { return check_laplace_trend(p); }},
        {"asym.eta_signs", [] { return check_eta_signs(); }},
        {"asym.inequalities", [] { return check_prefactor_inequalities(); }},
        {"asym.q0_limit", [] { return check_q0_limit(); }},
    };
}

std::vector<CheckResult> run_suite(const std::vector<NamedCheck>& suite, const std::vector<std::string>& tightened) {
    std::vector<CheckResult> out;
    for (auto& c : suite) {
        CheckResult r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {c.name, INFINITY, 0, std::string("error: ") + e.what()};
        }
        if (std::find(tightened.begin(), tightened.end(), c.name) != tightened.end()) {
            r.tolerance = r.measured / 10;
            r.detail += " [tightened]";
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace bps
