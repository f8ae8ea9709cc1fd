#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "batchps/simulator.hpp"

using namespace bps;

namespace {
const auto P = validate_params(0.2, 0.3);
}

TEST_CASE("stationary oracle balances") {
    auto pi = stationary_oracle(P);
    double tot = 0;
    for (double v : pi) tot += v;
    CHECK(tot == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(balance_residual(P, pi) < 1e-14);
    // pi_0 = 1 - load, load = rho / (1 - q)
    CHECK(pi[0] == doctest::Approx(1 - 0.2 / 0.7).epsilon(1e-10));
    // mean number of jobs; Little with unit service rate and mean batch size 1/(1-q)
    CHECK(mean_occupancy(pi) > 0);
}

TEST_CASE("simulator matches the oracle and Little's law") {
    SimConfig c(P);
    c.seed = 11;
    c.n_batches = 200000;
    auto r = simulate(c);
    CHECK(r.batches.size() == 200000);
    auto pi = stationary_oracle(P);
    CHECK(total_variation(r.occupancy, pi) < 5e-3);
    CHECK(total_variation(r.seen_by_arrivals, pi) < 1e-2);
    auto m = mean_sojourns(r.batches);
    // Little: E[omega] = E[N] / (arrival rate of jobs) = E[N] (1 - q) / rho
    double little = mean_occupancy(pi) * 0.7 / 0.2;
    CHECK(std::abs(m.mean_omega - little) < 4 * m.se_omega + 1e-3);
    CHECK(m.mean_Omega >= m.mean_omega);
}

TEST_CASE("batch sojourn dominates every job sojourn") {
    SimConfig c(P);
    c.n_batches = 5000;
    for (auto& b : simulate(c).batches) {
        CHECK(b.size == int(b.job_sojourns.size()));
        for (double w : b.job_sojourns) CHECK(w <= b.batch_sojourn);
    }
}

TEST_CASE("reduced chain agrees with explicit remaining work") {
    auto a = simulate_explicit_occupancy(P, 400000, 3);
    auto b = simulate_reduced_occupancy(P, 400000, 3);
    CHECK(total_variation(a, b) < 1e-2);
}

TEST_CASE("streams are reproducible and distinct") {
    auto a = make_stream(5, 0), b = make_stream(5, 0), c = make_stream(5, 1);
    auto x = a(), y = b(), z = c();
    CHECK(x == y);
    CHECK(x != z);
    SimConfig cfg(P);
    cfg.n_batches = 2000;
    cfg.replications = 3;
    std::ostringstream s1, s2;
    write_batches_csv(s1, simulate(cfg).batches);
    write_batches_csv(s2, simulate(cfg).batches);
    CHECK(s1.str() == s2.str());
}

TEST_CASE("empirical CCDF") {
    std::vector<BatchRecord> bs(4);
    double v[] = {1, 2, 3, 4};
    for (int i = 0; i < 4; ++i) bs[i] = {double(i), 1, {v[i]}, v[i]};
    auto e = empirical_batch(bs);
    CHECK(e.ccdf(0.5) == 1.0);
    CHECK(e.ccdf(2.0) == 0.5);
    CHECK(e.ccdf(2.5) == 0.5);
    CHECK(e.ccdf(4.0) == 0.0);
}

TEST_CASE("CSV dumps carry a header") {
    SimConfig c(P);
    c.n_batches = 10;
    auto r = simulate(c);
    std::ostringstream os;
    write_batches_csv(os, r.batches);
    CHECK(os.str().rfind("batch_id,arrival_time,size,job,omega,Omega\n", 0) != std::string::npos);
    std::ostringstream oc;
    write_occupancy_csv(oc, r.occupancy);
    CHECK(oc.str().find("n,") != std::string::npos);
}

TEST_CASE("oracle converges near critical load") {
    // load 0.999 needs far more than the initial 64 states
    auto p = validate_params(0.999 * 0.5, 0.5);
    CHECK_NOTHROW(stationary_oracle(p));
}
