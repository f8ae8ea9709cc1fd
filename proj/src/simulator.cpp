#include "batchps/simulator.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "batchps/csv.hpp"
#include "batchps/parallel.hpp"

namespace bps {

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t r) {
    // splitmix64 finaliser on (seed, r) gives decorrelated stream seeds
    std::uint64_t z = seed + (r + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    std::seed_seq ss{std::uint32_t(z), std::uint32_t(z >> 32), std::uint32_t(r)};
    return std::mt19937_64(ss);
}

namespace {

void add_time(std::vector<double>& hist, std::size_t n, double dt) {
    if (hist.size() <= n) hist.resize(n + 1, 0.0);
    hist[n] += dt;
}

void normalise(std::vector<double>& h) {
    double s = std::accumulate(h.begin(), h.end(), 0.0);
    if (s > 0)
        for (double& v : h) v /= s;
}

struct Job {
    double arrival;
    long batch;  // index among measured batches, -1 otherwise
};

SimResult simulate_one(const QueueParams& p, std::uint64_t seed, std::uint64_t stream, long n_batches, long warmup,
                       long max_events) {
    auto rng = make_stream(seed, stream);
    std::exponential_distribution<double> inter(p.rho()), service(1.0);
    std::geometric_distribution<int> extra(1.0 - p.q());
    std::vector<Job> jobs;
    std::vector<int> remaining(n_batches, 0);
    SimResult res;
    res.batches.resize(n_batches);
    long arrivals = 0, done = 0;
    double t = 0, next_arrival = inter(rng), window_start = -1;
    std::vector<double> seen;
    while (done < n_batches) {
        if (++res.events > max_events)
            throw CapacityError("simulate: max_events exceeded after " + std::to_string(done) + " of " +
                                std::to_string(n_batches) + " measured batches");
        bool measuring = window_start >= 0;
        if (jobs.empty() || next_arrival <= t) {
            // idle: jump straight to the arrival
            if (measuring) add_time(res.occupancy, jobs.size(), next_arrival - t);
            t = next_arrival;
        } else {
            double dep = t + service(rng);
            if (dep < next_arrival) {
                if (measuring) add_time(res.occupancy, jobs.size(), dep - t);
                t = dep;
                std::size_t k = std::uniform_int_distribution<std::size_t>(0, jobs.size() - 1)(rng);
                Job j = jobs[k];
                jobs[k] = jobs.back();
                jobs.pop_back();
                if (j.batch >= 0) {
                    auto& b = res.batches[j.batch];
                    double w = t - j.arrival;
                    b.job_sojourns.push_back(w);
                    b.batch_sojourn = std::max(b.batch_sojourn, w);
                    if (--remaining[j.batch] == 0) ++done;
                }
                continue;
            }
            if (measuring) add_time(res.occupancy, jobs.size(), next_arrival - t);
            t = next_arrival;
        }
        // batch arrival at time t
        int size = 1 + extra(rng);
        long idx = -1;
        if (arrivals >= warmup && arrivals < warmup + n_batches) {
            idx = arrivals - warmup;
            if (window_start < 0) window_start = t;
            add_time(seen, jobs.size(), 1.0);
            auto& b = res.batches[idx];
            b.arrival_time = t;
            b.size = size;
            b.job_sojourns.reserve(size);
            remaining[idx] = size;
        }
        for (int i = 0; i < size; ++i) jobs.push_back({t, idx});
        ++arrivals;
        next_arrival = t + inter(rng);
    }
    res.window = std::accumulate(res.occupancy.begin(), res.occupancy.end(), 0.0);
    normalise(res.occupancy);
    normalise(seen);
    res.seen_by_arrivals = std::move(seen);
    return res;
}

void merge_hist(std::vector<double>& acc, const std::vector<double>& h, double w) {
    if (acc.size() < h.size()) acc.resize(h.size(), 0.0);
    for (std::size_t i = 0; i < h.size(); ++i) acc[i] += w * h[i];
}

}  // namespace

SimResult simulate(const SimConfig& cfg) {
    if (cfg.n_batches < 1) throw DomainError("simulate: n_batches must be >= 1");
    if (cfg.replications < 1) throw DomainError("simulate: replications must be >= 1");
    const int R = cfg.replications;
    std::vector<long> share(R, cfg.n_batches / R);
    for (long i = 0; i < cfg.n_batches % R; ++i) ++share[i];
    std::vector<SimResult> parts(R);
    parallel_for(std::size_t(R), [&](std::size_t r) {
        long n = share[r];
        long warm = cfg.warmup_batches < 0 ? n / 10 : cfg.warmup_batches;
        long cap = cfg.max_events < 0 ? 100 * (n + warm) + 1000000 : cfg.max_events;
        if (n > 0) parts[r] = simulate_one(cfg.params, cfg.seed, r, n, warm, cap);
    });
    if (R == 1) return std::move(parts[0]);
    SimResult out;
    double total = 0, arrivals = 0;
    for (auto& pr : parts) {
        total += pr.window;
        arrivals += double(pr.batches.size());
    }
    for (auto& pr : parts) {
        merge_hist(out.occupancy, pr.occupancy, pr.window / total);
        merge_hist(out.seen_by_arrivals, pr.seen_by_arrivals, double(pr.batches.size()) / arrivals);
        out.window += pr.window;
        out.events += pr.events;
        for (auto& b : pr.batches) out.batches.push_back(std::move(b));
    }
    return out;
}

std::vector<double> simulate_reduced_occupancy(const QueueParams& p, long n_events, std::uint64_t seed) {
    auto rng = make_stream(seed, 0);
    std::exponential_distribution<double> rate_rho(p.rho()), rate_tot(p.rho() + 1.0);
    std::geometric_distribution<int> extra(1.0 - p.q());
    std::bernoulli_distribution is_arrival(p.rho() / (p.rho() + 1.0));
    std::vector<double> hist;
    std::size_t n = 0;
    long warm = n_events / 10;
    for (long e = 0; e < n_events + warm; ++e) {
        double dt = n == 0 ? rate_rho(rng) : rate_tot(rng);
        if (e >= warm) add_time(hist, n, dt);
        if (n == 0 || is_arrival(rng)) n += 1 + extra(rng);
        else --n;
    }
    normalise(hist);
    return hist;
}

std::vector<double> simulate_explicit_occupancy(const QueueParams& p, long n_events, std::uint64_t seed) {
    auto rng = make_stream(seed, 1);
    std::exponential_distribution<double> inter(p.rho()), work(1.0);
    std::geometric_distribution<int> extra(1.0 - p.q());
    std::vector<double> rem;  // remaining service requirements
    std::vector<double> hist;
    double next_arrival = inter(rng), t = 0;
    long warm = n_events / 10;
    for (long e = 0; e < n_events + warm; ++e) {
        std::size_t n = rem.size();
        double dep = n == 0 ? INFINITY : t + *std::min_element(rem.begin(), rem.end()) * double(n);
        double tn = std::min(dep, next_arrival);
        if (e >= warm) add_time(hist, n, tn - t);
        double served = n == 0 ? 0 : (tn - t) / double(n);
        for (double& r : rem) r -= served;
        t = tn;
        if (dep <= next_arrival) {
            rem.erase(std::min_element(rem.begin(), rem.end()));
        } else {
            int b = 1 + extra(rng);
            for (int i = 0; i < b; ++i) rem.push_back(work(rng));
            next_arrival = t + inter(rng);
        }
    }
    normalise(hist);
    return hist;
}

std::vector<double> stationary_oracle(const QueueParams& p, int n_max) {
    const double rho = p.rho(), q = p.q();
    for (int cap = std::max(n_max, 2);; cap *= 2) {
        // cut between n and n+1: pi_{n+1} = rho * sum_{k<=n} pi_k q^{n-k}; exact
        // also for the reflected chain since overflow jumps still cross each cut
        std::vector<double> pi(cap + 1);
        pi[0] = 1;
        double S = 0;
        for (int n = 0; n < cap; ++n) {
            S = q * S + pi[n];
            pi[n + 1] = rho * S;
        }
        double tot = std::accumulate(pi.begin(), pi.end(), 0.0);
        for (double& v : pi) v /= tot;
        if (pi.back() < 1e-12) return pi;
        if (cap >= (1 << 20)) throw TruncationError("stationary_oracle: tail mass above 1e-12 at n_max = 2^20");
    }
}

double balance_residual(const QueueParams& p, const std::vector<double>& pi) {
    const double rho = p.rho(), q = p.q();
    const int N = int(pi.size()) - 1;
    double worst = 0;
    for (int n = 1; n < N; ++n) {
        double out = pi[n] * (rho + 1.0);
        double in = pi[n + 1];
        for (int k = 0; k < n; ++k) in += pi[k] * rho * (1 - q) * std::pow(q, n - k - 1);
        worst = std::max(worst, std::abs(in - out));
    }
    return worst;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    std::size_t n = std::max(a.size(), b.size());
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs((i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0));
    return 0.5 * s;
}

double mean_occupancy(const std::vector<double>& pi) {
    double m = 0;
    for (std::size_t n = 0; n < pi.size(); ++n) m += double(n) * pi[n];
    return m;
}

std::pair<double, double> batch_means(const std::vector<double>& seq) {
    const std::size_t n = seq.size();
    if (n == 0) throw DomainError("batch_means: empty sample");
    double mean = std::accumulate(seq.begin(), seq.end(), 0.0) / double(n);
    std::size_t b = std::max<std::size_t>(1, std::size_t(std::sqrt(double(n))));
    std::size_t k = n / b;
    if (k < 2) return {mean, 0.0};
    std::vector<double> m(k, 0.0);
    for (std::size_t i = 0; i < k * b; ++i) m[i / b] += seq[i] / double(b);
    double mm = std::accumulate(m.begin(), m.end(), 0.0) / double(k), v = 0;
    for (double x : m) v += (x - mm) * (x - mm);
    v /= double(k - 1);
    return {mean, std::sqrt(v / double(k))};
}

double EmpiricalCcdf::ccdf(double x) const {
    if (sorted.empty()) return 0;
    auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return double(sorted.end() - it) / double(sorted.size());
}

double EmpiricalCcdf::half_width(double x) const {
    if (sequence.empty()) return 0;
    std::vector<double> ind(sequence.size());
    for (std::size_t i = 0; i < ind.size(); ++i) ind[i] = sequence[i] > x ? 1.0 : 0.0;
    return 1.959963984540054 * batch_means(ind).second;
}

EmpiricalCcdf empirical_batch(const std::vector<BatchRecord>& batches) {
    EmpiricalCcdf e;
    for (auto& b : batches) e.sequence.push_back(b.batch_sojourn);
    e.sorted = e.sequence;
    std::sort(e.sorted.begin(), e.sorted.end());
    return e;
}

EmpiricalCcdf empirical_job(const std::vector<BatchRecord>& batches) {
    EmpiricalCcdf e;
    for (auto& b : batches)
        for (double w : b.job_sojourns) e.sequence.push_back(w);
    e.sorted = e.sequence;
    std::sort(e.sorted.begin(), e.sorted.end());
    return e;
}

static std::vector<CcdfPoint> points(const EmpiricalCcdf& e, const std::vector<double>& xs) {
    if (e.count() == 0) throw DomainError("ccdf: no samples");
    std::vector<CcdfPoint> out;
    for (double x : xs) {
        if (x <= 0) out.push_back({x, 1.0, Method::simulation, 0.0});
        else out.push_back({x, e.ccdf(x), Method::simulation, e.half_width(x)});
    }
    return out;
}

std::vector<CcdfPoint> ccdf_batch(const std::vector<BatchRecord>& batches, const std::vector<double>& xs) {
    return points(empirical_batch(batches), xs);
}

std::vector<CcdfPoint> ccdf_job(const std::vector<BatchRecord>& batches, const std::vector<double>& xs) {
    return points(empirical_job(batches), xs);
}

MeanSojourns mean_sojourns(const std::vector<BatchRecord>& batches) {
    if (batches.empty()) throw DomainError("mean_sojourns: no batches");
    std::vector<double> big, small;
    for (auto& b : batches) {
        big.push_back(b.batch_sojourn);
        for (double w : b.job_sojourns) small.push_back(w);
    }
    auto a = batch_means(small), c = batch_means(big);
    return {a.first, a.second, c.first, c.second};
}

void write_batches_csv(std::ostream& os, const std::vector<BatchRecord>& batches) {
    os << "batch_id,arrival_time,size,job,omega,Omega\n";
    for (std::size_t i = 0; i < batches.size(); ++i) {
        auto& b = batches[i];
        for (std::size_t k = 0; k < b.job_sojourns.size(); ++k)
            os << i << ',' << shortest(b.arrival_time) << ',' << b.size << ',' << k + 1 << ','
               << shortest(b.job_sojourns[k]) << ',' << shortest(b.batch_sojourn) << '\n';
    }
}

void write_occupancy_csv(std::ostream& os, const std::vector<double>& occupancy) {
    os << "n,probability\n";
    for (std::size_t n = 0; n < occupancy.size(); ++n) os << n << ',' << shortest(occupancy[n]) << '\n';
}

}  // namespace bps
