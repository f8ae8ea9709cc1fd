#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "batchps/core.hpp"

namespace bps {

struct SimConfig {
    QueueParams params;
    std::uint64_t seed = 1;
    long n_batches = 100000;
    long warmup_batches = -1;  // negative: n_batches / 10
    long max_events = -1;      // negative: 100 * (n_batches + warmup) + 10^6
    int replications = 1;      // independent streams, merged in index order

    explicit SimConfig(QueueParams p) : params(p) {}
    long warmup() const { return warmup_batches < 0 ? n_batches / 10 : warmup_batches; }
};

struct BatchRecord {
    double arrival_time = 0;
    int size = 0;
    std::vector<double> job_sojourns;
    double batch_sojourn = 0;  // max of job_sojourns
};

struct SimResult {
    std::vector<BatchRecord> batches;  // measured batches in arrival order
    std::vector<double> occupancy;     // time-average P(N = n) over the measurement window
    std::vector<double> seen_by_arrivals;  // P(N = n) just before measured batch arrivals
    double window = 0;                 // length of the measurement window
    long events = 0;
};

// Stream r of the generator family rooted at seed.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t r);

// Reduced CTMC: departures at rate 1 when N >= 1, the leaving job uniform
// among those present.
SimResult simulate(const SimConfig& cfg);

// Explicit-remainder PS simulation over n_events events; returns the
// time-average occupancy only.  Small-scale oracle for the reduction.
std::vector<double> simulate_explicit_occupancy(const QueueParams& p, long n_events, std::uint64_t seed);
// Occupancy of the reduced chain over the same number of events.
std::vector<double> simulate_reduced_occupancy(const QueueParams& p, long n_events, std::uint64_t seed);

// Stationary law of N on {0..n_max}, reflecting at n_max.  n_max doubles
// until the last state carries less than 1e-12 (cap 1 << 20).
std::vector<double> stationary_oracle(const QueueParams& p, int n_max = 64);
// max over 0 < n < size-1 of |inflow - outflow| of the truncated chain
double balance_residual(const QueueParams& p, const std::vector<double>& pi);

double total_variation(const std::vector<double>& a, const std::vector<double>& b);

struct EmpiricalCcdf {
    std::vector<double> sorted;
    std::vector<double> sequence;  // samples in generation order, for batch means
    std::size_t count() const { return sorted.size(); }
    double ccdf(double x) const;
    // 95% normal half-width with batch-means variance (blocks of sqrt(n))
    double half_width(double x) const;
};

EmpiricalCcdf empirical_batch(const std::vector<BatchRecord>& batches);
EmpiricalCcdf empirical_job(const std::vector<BatchRecord>& batches);
std::vector<CcdfPoint> ccdf_batch(const std::vector<BatchRecord>& batches, const std::vector<double>& xs);
std::vector<CcdfPoint> ccdf_job(const std::vector<BatchRecord>& batches, const std::vector<double>& xs);

struct MeanSojourns {
    double mean_omega, se_omega, mean_Omega, se_Omega;
};
MeanSojourns mean_sojourns(const std::vector<BatchRecord>& batches);

// Batch-means estimate of a mean and its standard error, blocks of sqrt(n).
std::pair<double, double> batch_means(const std::vector<double>& seq);

double mean_occupancy(const std::vector<double>& pi);

void write_batches_csv(std::ostream& os, const std::vector<BatchRecord>& batches);
void write_occupancy_csv(std::ostream& os, const std::vector<double>& occupancy);

}  // namespace bps
