#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "perc/events.hpp"
#include "perc/lattice.hpp"

namespace perc {

struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;  // mean +- 1.96 stderr
    std::uint64_t n_samples = 0;
    std::uint64_t n_accepted = 0;  // = n_samples for unconditional estimates
    std::uint64_t seed = 0;
    bool starved = false;       // conditional: accepted < min_accepted
    bool inconclusive = false;  // ratio: denominator CI touches 0, or < 100 accepted

    static Estimate from_bernoulli(std::uint64_t hits, std::uint64_t n, std::uint64_t seed);
};

struct SeriesReport {
    std::vector<double> params;    // n-values or p-values
    std::vector<Estimate> points;  // one per parameter
    std::vector<double> diff;      // points[i+1].mean - points[i].mean
    std::vector<double> diff_se;   // propagated: sqrt(se_i^2 + se_{i+1}^2)

    void finalize_diffs();
};

// ---- sampling engine -----------------------------------------------------------
//
// Joint tally of up to 6 events over `budget` samples.  Sample i draws RNG
// substream i; workers take strided shards and integer counts are summed, so
// the result is identical for any worker count.
struct JointTally {
    std::vector<std::uint64_t> cells;  // 2^k outcome-mask counts
    std::uint64_t n_samples = 0;

    std::uint64_t count_where(unsigned require_mask, unsigned forbid_mask = 0) const;
};

JointTally tally_events(const Region& region, double p,
                        const std::vector<const CompiledEvent*>& events, std::uint64_t budget,
                        std::uint64_t seed, int workers = 1);

// ---- estimators ------------------------------------------------------------------

Estimate estimate_event_probability(const Region& region, double p, const EventSpec& spec,
                                    std::uint64_t budget, std::uint64_t seed, int workers = 1);
Estimate estimate_event_probability(const Region& region, double p, const CompiledEvent& event,
                                    std::uint64_t budget, std::uint64_t seed, int workers = 1);

// Rejection sampling: frequency of `target` among samples satisfying
// `condition`.  Starvation (accepted < min_accepted) is reported on the
// estimate, never silently ignored.
Estimate estimate_conditional(const Region& region, double p, const CompiledEvent& target,
                              const CompiledEvent& condition, std::uint64_t budget,
                              std::uint64_t min_accepted, std::uint64_t seed, int workers = 1);
Estimate estimate_conditional(const Region& region, double p, const EventSpec& target,
                              const EventSpec& condition, std::uint64_t budget,
                              std::uint64_t min_accepted, std::uint64_t seed, int workers = 1);

// Quasi-multiplicativity ratio of (A2):
//   P[X<->Y in Z] / ( P[X<->S(v,2m) in Z] * P[Y<->S(v,2m) in Z] )
// estimated on one shared sample stream, stderr by the delta method with the
// full joint covariance.
struct QmRatio {
    Estimate ratio;
    Estimate joint, from_x, from_y;
};

QmRatio qm_ratio(const Region& region, double p, const Coord& v, int m, const VertexSet& z,
                 const VertexSet& x, const VertexSet& y, std::uint64_t budget, std::uint64_t seed,
                 int workers = 1);

// Standard shell probe on B(0,6m): X = S(0,max(1,m/2)), Y = S(0,6m), Z = all.
QmRatio qm_shell_probe(const LatticeSpec& spec, double p, int m, std::uint64_t budget,
                       std::uint64_t seed, int workers = 1);

// lim_n P_p[E | w <-> S(w,n)] along n_list; each point conditions on the
// one-arm event in B(w,n).
SeriesReport iic_first_limit(const LatticeSpec& spec, const Coord& w, const EventSpec& e,
                             double p, const std::vector<int>& n_list,
                             std::uint64_t budget_per_point, std::uint64_t min_accepted,
                             std::uint64_t seed, int workers = 1);

// lim_{p -> pc+} P_p[E | |C(w)| = inf], with {|C(w)| = inf} proxied by
// {w <-> S(w, proxy_n)}.
SeriesReport iic_second_limit(const LatticeSpec& spec, const Coord& w, const EventSpec& e,
                              const std::vector<double>& p_list, int proxy_n,
                              std::uint64_t budget_per_point, std::uint64_t min_accepted,
                              std::uint64_t seed, int workers = 1);

// Critical point via bisection of the left-right crossing probability of an
// (n+1) x n in-plane rectangle to 1/2.  stderr combines the bisection width
// with the Monte Carlo uncertainty divided by the local slope.
Estimate estimate_pc(const LatticeSpec& spec, int n, double tolerance, std::uint64_t budget,
                     std::uint64_t seed, int workers = 1);

// Rectangle used by estimate_pc: vertices [0..n] x [0..n-1] (x layers).
Region build_rectangle_region(const LatticeSpec& spec, int n);
VertexSet rectangle_left(const Region& r);
VertexSet rectangle_right(const Region& r, int n);

enum class CensusMode { crossing_count, two_point };

struct CensusReport {
    SeriesReport series;
    // crossing_count mode: per-parameter distribution of the count
    std::vector<std::map<std::uint32_t, std::uint64_t>> histograms;
};

// Exploratory censuses; reported, never gated.
CensusReport cluster_census(const LatticeSpec& spec, double p, CensusMode mode,
                            const std::vector<int>& params, std::uint64_t budget,
                            std::uint64_t seed, int workers = 1,
                            std::uint64_t vertex_cap = 10'000'000);

}  // namespace perc
