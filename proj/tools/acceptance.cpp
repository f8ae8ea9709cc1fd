// Acceptance run: one PASS/FAIL line per criterion, then a summary.
// Usage: acceptance [--only 1,5,12]
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "batchps/asymptotics.hpp"
#include "batchps/checks.hpp"
#include "batchps/csv.hpp"
#include "batchps/inversion.hpp"
#include "batchps/simulator.hpp"

using namespace bps;

namespace {

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
    bool pass;
    std::string detail;
};

std::string g(double v) { return shortest(v); }

Verdict from_checks(std::initializer_list<CheckResult> rs) {
    Verdict v{true, ""};
    for (auto& r : rs) {
        v.pass = v.pass && r.pass();
        v.detail += (v.detail.empty() ? "" : "; ") + r.name + " " + g(r.measured) + " < " + g(r.tolerance) +
                    (r.pass() ? "" : " FAILED");
    }
    return v;
}

const QueueParams P = validate_params(0.2, 0.3);

// shared between criteria 5 and 12, and 6 and 7
std::optional<SimResult> big_sim;
double big_sim_seconds = 0;
const SimResult& sim_1e6() {
    if (!big_sim) {
        SimConfig c(P);
        c.seed = 1;
        c.n_batches = 1000000;
        auto t = Clock::now();
        big_sim = simulate(c);
        big_sim_seconds = since(t);
    }
    return *big_sim;
}

std::optional<BranchCut> cut;
double cut_seconds = 0;
const BranchCut& branch_cut() {
    if (!cut) {
        auto t = Clock::now();
        cut.emplace(P, EvalConfig{}, false);
        cut_seconds = since(t);
    }
    return *cut;
}

Verdict c1() {
    return from_checks({check_vieta(), check_root_order(), check_cut_conjugacy(), check_sigma_grid()});
}

Verdict c2() { return from_checks({check_tree_residual(), check_tree_series()}); }

Verdict c3() {
    Verdict v{true, ""};
    for (auto [rho, q] : {std::pair{0.2, 0.3}, {0.4, 0.2}, {0.1, 0.5}}) {
        auto p = validate_params(rho, q);
        double a = lt_Omega(p, 1e-2).value.real(), b = lt_Omega(p, 1e-3).value.real(),
               c = lt_Omega(p, 1e-4).value.real();
        bool ok = c >= 0.995 && c <= 1.0001 && a < b && b < c;
        v.pass = v.pass && ok;
        v.detail += "(" + g(rho) + "," + g(q) + "): " + g(a) + " " + g(b) + " " + g(c) + (ok ? "" : " FAILED") + "; ";
    }
    return v;
}

Verdict c4() { return from_checks({check_pde_residual(P)}); }

Verdict c5() {
    auto& s = sim_1e6();
    auto [mean, se] = batch_means([&] {
        std::vector<double> v;
        v.reserve(s.batches.size());
        for (auto& b : s.batches) v.push_back(b.batch_sojourn);
        return v;
    }());
    auto t = Clock::now();
    const double h = 1e-4;
    double d = -(lt_Omega(P, h).value.real() - lt_Omega(P, -h).value.real()) / (2 * h);
    double dt = since(t);
    double z = std::abs(d - mean) / se;
    bool ok = z < 3 && big_sim_seconds <= 60 && dt <= 60;
    return {ok, "-lt'(0) = " + g(d) + ", simulated " + g(mean) + " +- " + g(se) + " (SE), |z| = " + g(z) +
                    " < 3; sim " + g(big_sim_seconds) + " s, derivative " + g(dt) + " s"};
}

Verdict c6() {
    auto& s = sim_1e6();
    auto e = empirical_batch(s.batches);
    Verdict v{true, ""};
    std::vector<double> xs{5, 10, 15};
    auto br = bromwich_ccdf(P, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double c = e.ccdf(xs[i]), hw = e.half_width(xs[i]);
        bool ok = c >= 1e-3 && c <= 1e-1 && std::abs(br[i].ccdf - c) <= hw;
        v.pass = v.pass && ok;
        v.detail += "x=" + g(xs[i]) + " bromwich " + g(br[i].ccdf) + " sim " + g(c) + "+-" + g(hw) + (ok ? "" : " FAILED") + "; ";
    }
    auto& bc = branch_cut();
    for (double x : {5.0, 10.0, 20.0, 30.0}) {
        double a = bromwich_ccdf(P, x).ccdf, b = bc.ccdf(x).ccdf;
        double gap = std::abs(b / a - 1);
        bool ok = gap < 0.02;
        v.pass = v.pass && ok;
        v.detail += "x=" + g(x) + " branchcut " + g(b) + " gap " + g(gap) + (ok ? "" : " FAILED") + "; ";
    }
    v.detail += "cut table " + g(cut_seconds) + " s, " + std::to_string(bc.failed_nodes()) + "/" +
                std::to_string(bc.nodes().size()) + " nodes failed";
    return v;
}

Verdict c7() {
    // x |sigma+| stays below 25 up to x = 160, so the double table applies
    auto& bc = branch_cut();
    Verdict v{true, ""};
    double prev = std::numeric_limits<double>::infinity();
    for (double x : {80.0, 120.0, 160.0}) {
        double r = bc.ccdf(x).ccdf / tail_Omega(P, x);
        double d = std::abs(r - 1);
        bool ok = r >= 0.75 && r <= 1.3 && d < prev;
        prev = std::isfinite(d) ? d : prev;
        v.pass = v.pass && ok;
        v.detail += "x=" + g(x) + " ratio " + g(r) + (ok ? "" : " FAILED") + "; ";
    }
    return v;
}

Verdict c8() { return from_checks({check_cut_integral(P), check_cut_boundary(P)}); }
Verdict c9() { return from_checks({check_laplace(P), check_laplace_trend(P)}); }

Verdict c10() {
    // eta signs and both prefactor inequalities on the 20x20 grid
    return from_checks({check_prefactor_inequalities(), check_eta_signs()});
}

Verdict c11() {
    double a = tail_constants(validate_params(0.25, 1e-4)).prefactor_Omega;
    double gap = std::abs(a / 482.05 - 1);
    auto r = check_q0_limit();
    bool ok = r.pass() && gap < 0.01;
    return {ok, "prefactor " + g(a) + ", |ratio-1| vs 482.05 = " + g(gap) + "; " + r.name + " " + g(r.measured)};
}

Verdict c12() {
    Verdict v{true, ""};
    auto add = [&](const std::string& what, double m, double tol) {
        bool ok = m < tol;
        v.pass = v.pass && ok;
        v.detail += what + " " + g(m) + " < " + g(tol) + (ok ? "" : " FAILED") + "; ";
    };
    add("TV(reduced, explicit)", total_variation(simulate_reduced_occupancy(P, 100000, 21),
                                                  simulate_explicit_occupancy(P, 100000, 21)), 0.01);
    auto& s = sim_1e6();
    auto pi = stationary_oracle(P);
    add("TV(occupancy, oracle)", total_variation(s.occupancy, pi), 0.01);
    auto m = mean_sojourns(s.batches);
    double little = mean_occupancy(pi) * (1 - P.q()) / P.rho();
    add("Little |E[omega]-E[N]/lambda|/SE", std::abs(m.mean_omega - little) / m.se_omega, 3);
    add("TV(PASTA)", total_variation(s.seen_by_arrivals, pi), 0.01);
    return v;
}

struct Proc {
    int code;
    std::string out;
};
Proc shell(const std::string& cmd) {
    FILE* f = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!f) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    int st = pclose(f);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Verdict c13() {
    const std::string exe = BATCHPS_EXE;
    auto dir = std::filesystem::temp_directory_path() / "batchps_acceptance";
    std::filesystem::create_directories(dir);
    auto a = (dir / "compare_a.csv").string(), b = (dir / "compare_b.csv").string();
    std::string args = " compare --rho 0.2 --q 0.3 --seed 3 --batches 100000 --x 2,5,10 --out ";
    int ra = shell(exe + args + a).code, rb = shell(exe + args + b).code;
    std::string fa = slurp(a), fb = slurp(b);
    bool same = ra == 0 && rb == 0 && !fa.empty() && fa == fb;
    Verdict v{same, std::string("compare byte-identical: ") + (same ? "yes" : "NO") + "; "};
    int ok_code = shell(exe + " validate --rho 0.2 --q 0.3").code;
    v.pass = v.pass && ok_code == 0;
    v.detail += "validate exit " + std::to_string(ok_code) + "; ";
    int caught = 0, total = 0;
    std::string missed;
    for (auto& c : validation_suite(P)) {
        ++total;
        int code = shell(exe + " validate --rho 0.2 --q 0.3 --tighten " + c.name).code;
        if (code != 0) ++caught;
        else missed += c.name + " ";
    }
    v.pass = v.pass && caught == total;
    v.detail += "tightened runs exiting nonzero " + std::to_string(caught) + "/" + std::to_string(total);
    if (!missed.empty()) v.detail += " (missed: " + missed + ")";
    std::filesystem::remove_all(dir);
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria 1-13"};
    std::vector<int> only;
    app.add_option("--only", only, "criteria to run")->delimiter(',');
    CLI11_PARSE(app, argc, argv);
    std::set<int> sel(only.begin(), only.end());

    std::vector<std::function<Verdict()>> all{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13};
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        int k = int(i) + 1;
        if (!sel.empty() && !sel.count(k)) continue;
        auto t = Clock::now();
        Verdict v;
        try {
            v = all[i]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("criterion %2d: %s  [%.1f s] %s\n", k, v.pass ? "PASS" : "FAIL", since(t), v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failed);
    return failed ? 1 : 0;
}
