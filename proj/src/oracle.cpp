#include "perc/oracle.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <thread>

#include "perc/errors.hpp"

namespace perc {

std::uint64_t binomial_coefficient(std::uint32_t n, std::uint32_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint32_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

EventPolynomial exact_event_polynomial(const Region& region, const CompiledEvent& event,
                                       int workers) {
    const std::uint32_t m = static_cast<std::uint32_t>(region.edge_count());
    if (m > kOracleEdgeCap)
        throw InputError("oracle edge cap exceeded: " + std::to_string(m) + " > " +
                         std::to_string(kOracleEdgeCap));
    if (workers < 1) workers = 1;
    const std::uint64_t total = 1ULL << m;
    const std::uint64_t nw = std::min<std::uint64_t>(workers, total);

    std::vector<std::vector<std::uint64_t>> partial(nw, std::vector<std::uint64_t>(m + 1, 0));
    auto run_range = [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& acc) {
        Configuration cfg;
        cfg.region = &region;
        cfg.open_bits.assign(m, 0);
        Workspace ws;
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            for (std::uint32_t e = 0; e < m; ++e) cfg.open_bits[e] = (mask >> e) & 1ULL;
            if (event.eval(cfg, ws)) ++acc[std::popcount(mask)];
        }
    };
    if (nw == 1) {
        run_range(0, total, partial[0]);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = total / nw;
        for (std::uint64_t w = 0; w < nw; ++w) {
            std::uint64_t lo = w * chunk;
            std::uint64_t hi = (w + 1 == nw) ? total : lo + chunk;
            pool.emplace_back(run_range, lo, hi, std::ref(partial[w]));
        }
        for (auto& t : pool) t.join();
    }

    EventPolynomial poly;
    poly.region = &region;
    poly.coeff.assign(m + 1, 0);
    for (const auto& acc : partial)
        for (std::uint32_t k = 0; k <= m; ++k) poly.coeff[k] += acc[k];
    return poly;
}

EventPolynomial exact_event_polynomial(const Region& region, const EventSpec& spec, int workers) {
    auto ev = compile_event(region, spec);
    return exact_event_polynomial(region, *ev, workers);
}

double exact_probability(const EventPolynomial& poly, double p) {
    if (p < 0.0 || p > 1.0) throw InputError("probability p must lie in [0,1]");
    const std::size_t m = poly.edge_count();
    if (p == 0.0) return poly.coeff[0] > 0 ? 1.0 : 0.0;
    if (p == 1.0) return poly.coeff[m] > 0 ? 1.0 : 0.0;
    double sum = 0.0;
    if (m > 16) {
        const double lp = std::log(p), lq = std::log1p(-p);
        for (std::size_t k = 0; k <= m; ++k) {
            if (!poly.coeff[k]) continue;
            sum += std::exp(std::log(static_cast<double>(poly.coeff[k])) + double(k) * lp +
                            double(m - k) * lq);
        }
    } else {
        double pk = 1.0;
        std::vector<double> qpow(m + 1, 1.0);
        for (std::size_t i = 1; i <= m; ++i) qpow[i] = qpow[i - 1] * (1.0 - p);
        for (std::size_t k = 0; k <= m; ++k) {
            if (poly.coeff[k]) sum += static_cast<double>(poly.coeff[k]) * pk * qpow[m - k];
            pk *= p;
        }
    }
    return sum;
}

BkChainReport verify_bk_chain(const Region& region, const Coord& v, int m, int n,
                              const std::vector<double>& p_grid, int workers) {
    EventSpec e1;
    e1.kind = EventKind::e1;
    e1.v = v;
    e1.m = m;
    e1.n = n;
    EventSpec e2 = e1;
    e2.kind = EventKind::e2;
    auto poly1 = exact_event_polynomial(region, e1, workers);
    auto poly2 = exact_event_polynomial(region, e2, workers);

    BkChainReport report;
    for (double p : p_grid) {
        BkChainPoint pt;
        pt.p = p;
        pt.p_e1 = exact_probability(poly1, p);
        pt.p_e2 = exact_probability(poly2, p);
        if (pt.p_e1 <= 0.0) {
            pt.defined = false;
            report.points.push_back(pt);
            continue;
        }
        pt.defined = true;
        // E2 implies E1, so P[E2 | E1] = P[E2] / P[E1]
        pt.conditional = pt.p_e2 / pt.p_e1;
        pt.margin_lower = pt.conditional - pt.p_e2;
        pt.margin_upper = std::sqrt(pt.p_e2) - pt.conditional;
        pt.holds = pt.margin_lower >= -kOracleTol && pt.margin_upper >= -kOracleTol;
        if (!pt.holds) report.all_hold = false;
        report.points.push_back(pt);
    }
    return report;
}

double oracle_mc_crosscheck(const Region& region, double p, const EventSpec& spec,
                            std::uint64_t budget, std::uint64_t seed, int workers) {
    auto poly = exact_event_polynomial(region, spec, workers);
    double exact = exact_probability(poly, p);

    auto ev = compile_event(region, spec);
    Configuration cfg;
    Workspace ws;
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < budget; ++i) {
        sample_configuration_into(cfg, region, p, seed, i);
        if (ev->eval(cfg, ws)) ++hits;
    }
    double mean = static_cast<double>(hits) / static_cast<double>(budget);
    double se = std::sqrt(mean * (1.0 - mean) / static_cast<double>(budget));
    if (se == 0.0) {
        if (std::abs(mean - exact) > kOracleTol)
            throw InvariantError("zero-variance Monte Carlo disagrees with the oracle");
        return 0.0;
    }
    return (mean - exact) / se;
}

std::string polynomial_to_text(const EventPolynomial& poly) {
    std::ostringstream os;
    os << "# region " << region_descriptor_text(*poly.region) << "\n";
    os << "# coeff N_k, k = 0.." << poly.edge_count() << "\n";
    for (std::size_t k = 0; k < poly.coeff.size(); ++k) os << k << " " << poly.coeff[k] << "\n";
    return os.str();
}

}  // namespace perc
