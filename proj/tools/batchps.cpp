// batchps: sojourn-time tails of the batch-arrival processor-sharing queue.
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "batchps/asymptotics.hpp"
#include "batchps/checks.hpp"
#include "batchps/inversion.hpp"
#include "batchps/simulator.hpp"
#include "batchps/table.hpp"

using namespace bps;

namespace {

struct Options {
    double rho = NAN, q = NAN;
    std::vector<double> x;
    double x_min = NAN, x_max = NAN;
    int x_count = 0;
    std::uint64_t seed = 1;
    long batches = 100000;
    std::string method = "bromwich";
    double tol = 1e-4;
    std::string format = "csv";
    std::string out;
    bool dump_samples = false;
    std::vector<std::string> tighten;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> x_grid(const Options& o, std::vector<double> fallback) {
    std::vector<double> xs;
    if (!o.x.empty()) {
        xs = o.x;
    } else if (o.x_count > 0) {
        if (!(o.x_min > 0 && o.x_max > o.x_min)) throw UsageError("--x-min/--x-max need 0 < x-min < x-max");
        if (o.x_count == 1) return {o.x_min};
        double r = o.x_max / o.x_min;
        for (int i = 0; i < o.x_count; ++i) xs.push_back(o.x_min * std::pow(r, double(i) / (o.x_count - 1)));
        xs.front() = o.x_min;
        xs.back() = o.x_max;
    } else {
        xs = std::move(fallback);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] >= 0)) throw UsageError("x grid must be nonnegative");
        if (i && !(xs[i] > xs[i - 1])) throw UsageError("x grid must be strictly increasing");
    }
    return xs;
}

void base_header(Table& t, const Options& o, const std::string& cmd) {
    t.meta("batchps", kVersion);
    t.meta("command", cmd);
    t.meta("rho", o.rho);
    t.meta("q", o.q);
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void emit(const Table& t, const Options& o, const std::string& path) {
    Output out(path);
    if (o.format == "json") write_json(out.os(), t);
    else write_csv(out.os(), t);
}

std::string suffixed(const Options& o, const std::string& tag) {
    if (o.out.empty()) return "";
    return o.out + "_" + tag + (o.format == "json" ? ".json" : ".csv");
}

SimResult run_sim(const QueueParams& p, const Options& o) {
    SimConfig c(p);
    c.seed = o.seed;
    c.n_batches = o.batches;
    return simulate(c);
}

int cmd_sim(const Options& o) {
    auto p = validate_params(o.rho, o.q);
    auto xs = x_grid(o, {0.5, 1, 2, 5, 10, 20, 30, 50});
    auto r = run_sim(p, o);
    auto m = mean_sojourns(r.batches);
    auto pi = stationary_oracle(p);
    auto header = [&](Table& t, const std::string& what) {
        base_header(t, o, "sim");
        t.meta("table", what);
        t.meta("seed", std::to_string(o.seed));
        t.meta("batches", std::to_string(o.batches));
        t.meta("mean_omega", m.mean_omega);
        t.meta("se_omega", m.se_omega);
        t.meta("mean_Omega", m.mean_Omega);
        t.meta("se_Omega", m.se_Omega);
    };
    Table tb, tj, to;
    header(tb, "batch_ccdf");
    header(tj, "job_ccdf");
    header(to, "occupancy");
    tb.columns = tj.columns = {"x", "ccdf", "half_width"};
    for (auto& c : ccdf_batch(r.batches, xs)) tb.rows.push_back({c.x, c.value, c.half_width});
    for (auto& c : ccdf_job(r.batches, xs)) tj.rows.push_back({c.x, c.value, c.half_width});
    to.columns = {"n", "probability", "arrivals_see", "stationary"};
    std::size_t n = std::max(r.occupancy.size(), r.seen_by_arrivals.size());
    for (std::size_t k = 0; k < n; ++k) {
        auto at = [&](const std::vector<double>& v) { return k < v.size() ? v[k] : 0.0; };
        to.rows.push_back({long(k), at(r.occupancy), at(r.seen_by_arrivals), at(pi)});
    }
    if (o.out.empty()) {
        emit(tb, o, "");
        std::cout << '\n';
        emit(tj, o, "");
        std::cout << '\n';
        emit(to, o, "");
    } else {
        emit(tb, o, suffixed(o, "batch_ccdf"));
        emit(tj, o, suffixed(o, "job_ccdf"));
        emit(to, o, suffixed(o, "occupancy"));
    }
    if (o.dump_samples) {
        std::string path = o.out.empty() ? "" : o.out + "_samples.csv";
        Output out(path);
        write_batches_csv(out.os(), r.batches);
    }
    return 0;
}

int cmd_tail(const Options& o) {
    auto p = validate_params(o.rho, o.q);
    auto xs = x_grid(o, {50, 100, 150});
    auto t = tail_constants(p);
    auto ci = cut_info(p);
    Table tab;
    base_header(tab, o, "tail");
    tab.meta("sigma_plus", ci.sigma_plus);
    tab.meta("sigma_minus", ci.sigma_minus);
    tab.meta("pole", ci.pole);
    tab.meta("c_q", t.c_q);
    tab.meta("b_q", t.b_q);
    tab.meta("eta1", t.eta1);
    tab.meta("eta2", t.eta2);
    tab.meta("eta3", t.eta3);
    tab.meta("prefactor_Omega", t.prefactor_Omega);
    tab.meta("prefactor_omega", t.prefactor_omega);
    tab.columns = {"x", "tail_Omega", "tail_omega", "dq_envelope"};
    for (double x : xs) {
        if (!(x > 0)) throw UsageError("tail needs x > 0");
        tab.rows.push_back({x, tail_Omega(p, x), tail_omega(p, x), dq_envelope(p, x)});
    }
    emit(tab, o, o.out);
    return 0;
}

// Branch-cut tables are built once per precision and reused across x.
struct CutCache {
    QueueParams p;
    std::optional<BranchCut> plain, extended;
    explicit CutCache(QueueParams pp) : p(pp) {}
    InversionResult ccdf(double x) {
        bool ext = x * std::abs(cut_info(p).sigma_plus) > 25;
        auto& slot = ext ? extended : plain;
        if (!slot) slot.emplace(p, EvalConfig{}, ext);
        return slot->ccdf(x);
    }
};

std::vector<InversionResult> bromwich_grid(const QueueParams& p, const std::vector<double>& xs, double tol) {
    BromwichOptions bo;
    bo.requested_tol = tol;
    return bromwich_ccdf(p, xs, EvalConfig{}, bo);
}

void check_method(const std::string& m) {
    if (m != "bromwich" && m != "branchcut" && m != "both") throw UsageError("--method must be bromwich, branchcut or both");
}

int cmd_invert(const Options& o) {
    auto p = validate_params(o.rho, o.q);
    check_method(o.method);
    auto xs = x_grid(o, {1, 2, 5, 10, 20});
    for (double x : xs)
        if (!(x > 0)) throw UsageError("invert needs x > 0");
    Table tab;
    base_header(tab, o, "invert");
    tab.meta("method", o.method);
    tab.meta("tol", o.tol);
    tab.columns = {"x", "ccdf", "method", "err_bound"};
    std::vector<InversionResult> br;
    if (o.method != "branchcut") br = bromwich_grid(p, xs, o.tol);
    CutCache cut(p);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (o.method != "branchcut")
            tab.rows.push_back({xs[i], br[i].ccdf, std::string("bromwich"), br[i].err_bound});
        if (o.method != "bromwich") {
            auto r = cut.ccdf(xs[i]);
            tab.rows.push_back({xs[i], r.ccdf, std::string("branchcut"), r.err_bound});
        }
    }
    emit(tab, o, o.out);
    return 0;
}

int cmd_compare(const Options& o) {
    auto p = validate_params(o.rho, o.q);
    check_method(o.method);
    auto xs = x_grid(o, {2, 5, 10, 20});
    for (double x : xs)
        if (!(x > 0)) throw UsageError("compare needs x > 0");
    auto sim = run_sim(p, o);
    auto sc = ccdf_batch(sim.batches, xs);
    std::vector<InversionResult> br;
    if (o.method != "branchcut") br = bromwich_grid(p, xs, o.tol);
    CutCache cut(p);
    Table tab;
    base_header(tab, o, "compare");
    tab.meta("seed", std::to_string(o.seed));
    tab.meta("batches", std::to_string(o.batches));
    tab.meta("method", o.method);
    tab.columns = {"x", "sim", "sim_half_width", "inverted", "inverted_err", "method", "asymptotic",
                   "sim_over_asymptotic", "inverted_over_asymptotic"};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double a = tail_Omega(p, xs[i]);
        auto row = [&](double v, double e, const char* m) {
            tab.rows.push_back({xs[i], sc[i].value, sc[i].half_width, v, e, std::string(m), a, sc[i].value / a, v / a});
        };
        if (o.method != "branchcut") row(br[i].ccdf, br[i].err_bound, "bromwich");
        if (o.method != "bromwich") {
            auto r = cut.ccdf(xs[i]);
            row(r.ccdf, r.err_bound, "branchcut");
        }
    }
    emit(tab, o, o.out);
    return 0;
}

int cmd_validate(const Options& o) {
    auto p = validate_params(o.rho, o.q);
    auto res = run_suite(validation_suite(p), o.tighten);
    Table tab;
    base_header(tab, o, "validate");
    tab.columns = {"check", "status", "measured", "tolerance", "detail"};
    bool ok = true;
    for (auto& r : res) {
        ok = ok && r.pass();
        tab.rows.push_back({r.name, std::string(r.pass() ? "pass" : "FAIL"), r.measured, r.tolerance, r.detail});
    }
    emit(tab, o, o.out);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sojourn-time tails of the M^X/M/1 processor-sharing queue with geometric batches"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* c, bool grid) {
        c->add_option("--rho", o.rho, "batch arrival rate")->required();
        c->add_option("--q", o.q, "geometric batch parameter")->required();
        if (grid) {
            auto xo = c->add_option("--x", o.x, "comma separated x values")->delimiter(',');
            c->add_option("--x-min", o.x_min)->excludes(xo);
            c->add_option("--x-max", o.x_max)->excludes(xo);
            c->add_option("--x-count", o.x_count, "log-spaced points between x-min and x-max")->excludes(xo);
        }
        c->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
        c->add_option("--out", o.out, "output file (prefix for sim)");
        c->add_option("--tol", o.tol, "relative tolerance requested from inversion");
    };
    auto sim = app.add_subcommand("sim", "simulate and write CCDF and occupancy tables");
    common(sim, true);
    sim->add_option("--seed", o.seed);
    sim->add_option("--batches", o.batches)->check(CLI::PositiveNumber);
    sim->add_flag("--dump-samples", o.dump_samples, "also write per-job samples");
    auto tail = app.add_subcommand("tail", "closed-form tail asymptotics");
    common(tail, true);
    auto inv = app.add_subcommand("invert", "numerical inversion of the transform");
    common(inv, true);
    inv->add_option("--method", o.method)->check(CLI::IsMember({"bromwich", "branchcut", "both"}));
    auto cmp = app.add_subcommand("compare", "simulation vs inversion vs asymptotics");
    common(cmp, true);
    cmp->add_option("--seed", o.seed);
    cmp->add_option("--batches", o.batches)->check(CLI::PositiveNumber);
    cmp->add_option("--method", o.method)->check(CLI::IsMember({"bromwich", "branchcut", "both"}));
    auto val = app.add_subcommand("validate", "run the invariant suite");
    common(val, false);
    val->add_option("--tighten", o.tighten, "set a check's tolerance to a tenth of its measured value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (*sim) return cmd_sim(o);
        if (*tail) return cmd_tail(o);
        if (*inv) return cmd_invert(o);
        if (*cmp) return cmd_compare(o);
        if (*val) return cmd_validate(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InstabilityError& e) {
        std::cerr << "instability: " << e.what() << '\n';
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
