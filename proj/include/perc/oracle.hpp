#pragma once
#include <cstdint>
#include <vector>

#include "perc/events.hpp"
#include "perc/lattice.hpp"

namespace perc {

// Hard cap on enumerable edge counts (2^24 ~ 1.7e7 configurations).
inline constexpr std::uint32_t kOracleEdgeCap = 24;

// Reliability polynomial of an event: coeff[k] counts configurations with
// exactly k open edges satisfying the event, so
//   P(p) = sum_k coeff[k] p^k (1-p)^(|E|-k).
struct EventPolynomial {
    const Region* region = nullptr;
    std::vector<std::uint64_t> coeff;  // size |E|+1

    std::size_t edge_count() const { return coeff.empty() ? 0 : coeff.size() - 1; }
};

// Full enumeration of all 2^|E| configurations; the event is evaluated through
// the same CompiledEvent interface the Monte Carlo estimators use.
EventPolynomial exact_event_polynomial(const Region& region, const CompiledEvent& event,
                                       int workers = 1);
EventPolynomial exact_event_polynomial(const Region& region, const EventSpec& spec,
                                       int workers = 1);

// Bernstein-form evaluation; log-space accumulation above 16 edges.
double exact_probability(const EventPolynomial& poly, double p);

std::uint64_t binomial_coefficient(std::uint32_t n, std::uint32_t k);

// One grid point of the BK chain check
//   P[E2] <= P[E2 | E1] <= sqrt(P[E2])   on A(v,m,n).
struct BkChainPoint {
    double p = 0;
    bool defined = false;  // false when P[E1] = 0 (conditioning on a null event)
    double p_e1 = 0, p_e2 = 0, conditional = 0;
    double margin_lower = 0;  // P[E2|E1] - P[E2]
    double margin_upper = 0;  // sqrt(P[E2]) - P[E2|E1]
    bool holds = false;       // chain satisfied to tolerance
};

struct BkChainReport {
    std::vector<BkChainPoint> points;
    bool all_hold = true;  // over defined points
};

inline constexpr double kOracleTol = 1e-12;

BkChainReport verify_bk_chain(const Region& region, const Coord& v, int m, int n,
                              const std::vector<double>& p_grid, int workers = 1);

// (MC mean - exact) / stderr over `budget` samples.  stderr = 0 with
// disagreement is a hard failure (InvariantError).
double oracle_mc_crosscheck(const Region& region, double p, const EventSpec& spec,
                            std::uint64_t budget, std::uint64_t seed, int workers = 1);

std::string polynomial_to_text(const EventPolynomial& poly);

}  // namespace perc
