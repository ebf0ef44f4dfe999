#include "perc/percolation.hpp"

#include <algorithm>
#include <sstream>

#include "perc/errors.hpp"

namespace perc {

void sample_configuration_into(Configuration& cfg, const Region& region, double p,
                               std::uint64_t seed, std::uint64_t sample_index) {
    if (p < 0.0 || p > 1.0) throw InputError("probability p must lie in [0,1]");
    cfg.region = &region;
    cfg.p = p;
    cfg.seed = seed;
    cfg.sample_index = sample_index;
    const std::size_t m = region.edge_count();
    cfg.open_bits.assign(m, 0);
    if (p <= 0.0) return;
    if (p >= 1.0) {
        std::fill(cfg.open_bits.begin(), cfg.open_bits.end(), 1);
        return;
    }
    RngStream stream(seed, sample_index);
    const std::uint64_t thr = RngStream::threshold_for(p);
    for (std::size_t e = 0; e < m; ++e) cfg.open_bits[e] = stream.bernoulli(e, thr) ? 1 : 0;
}

Configuration sample_configuration(const Region& region, double p, std::uint64_t seed,
                                   std::uint64_t sample_index) {
    Configuration cfg;
    sample_configuration_into(cfg, region, p, seed, sample_index);
    return cfg;
}

std::string configuration_to_text(const Configuration& cfg) {
    std::ostringstream os;
    os << "# region " << region_descriptor_text(*cfg.region) << "\n";
    os << "# p " << cfg.p << " seed " << cfg.seed << " index " << cfg.sample_index
       << " rng " << kRngVersion << "\n";
    for (std::size_t e = 0; e < cfg.open_bits.size(); ++e)
        os << e << " " << int(cfg.open_bits[e]) << "\n";
    return os.str();
}

// ---- union-find --------------------------------------------------------------

void UnionFind::reset(std::size_t n) {
    parent_.resize(n);
    size_.assign(n, 1);
    for (std::uint32_t i = 0; i < n; ++i) parent_[i] = i;
}

std::uint32_t UnionFind::find(std::uint32_t x) {
    std::uint32_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
        std::uint32_t next = parent_[x];
        parent_[x] = root;
        x = next;
    }
    return root;
}

void UnionFind::unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
}

std::uint32_t Workspace::begin_visit(std::size_t n) {
    if (stamp.size() < n) stamp.resize(n, 0);
    if (++epoch == 0) {  // wrapped; clear stamps once per 2^32 passes
        std::fill(stamp.begin(), stamp.end(), 0);
        epoch = 1;
    }
    return epoch;
}

// ---- cluster labeling ----------------------------------------------------------

ClusterLabeling label_clusters(const Configuration& cfg, const VertexSet& z) {
    const Region& region = *cfg.region;
    if (z.region() != &region) throw InputError("restriction set belongs to a different region");
    const std::size_t n = region.vertex_count();

    UnionFind uf;
    uf.reset(n);
    const auto& zbits = z.raw();
    for (std::uint32_t e = 0; e < region.edge_count(); ++e) {
        if (!cfg.open_bits[e]) continue;
        auto [u, v] = region.edge(e);
        if (zbits[u] && zbits[v]) uf.unite(u, v);
    }

    ClusterLabeling out;
    out.label.assign(n, -1);
    // canonical id = smallest member index = first member seen in index order
    std::vector<std::int32_t> root_id(n, -1);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (!zbits[v]) continue;
        std::uint32_t r = uf.find(v);
        if (root_id[r] < 0) {
            root_id[r] = static_cast<std::int32_t>(v);
            out.cluster_ids.push_back(static_cast<std::int32_t>(v));
            out.cluster_size.push_back(uf.size(r));
            ++out.cluster_count;
        }
        out.label[v] = root_id[r];
    }
    // uf.size counts all merged vertices, which are exactly the Z members of
    // the cluster because only Z-Z edges were united and singletons are size 1.
    return out;
}

std::uint32_t ClusterLabeling::size_of(std::int32_t id) const {
    for (std::size_t i = 0; i < cluster_ids.size(); ++i)
        if (cluster_ids[i] == id) return cluster_size[i];
    return 0;
}

// ---- connectivity queries -------------------------------------------------------

bool connected_in(const Configuration& cfg, const VertexSet& x, const VertexSet& y,
                  const VertexSet& z, Workspace& ws) {
    const Region& region = *cfg.region;
    if (x.region() != &region || y.region() != &region || z.region() != &region)
        throw InputError("vertex sets belong to a different region");
    const auto& xb = x.raw();
    const auto& yb = y.raw();
    const auto& zb = z.raw();

    ws.begin_visit(region.vertex_count());
    ws.queue.clear();
    for (std::uint32_t v = 0; v < region.vertex_count(); ++v) {
        if (!xb[v] || !zb[v]) continue;
        if (yb[v]) return true;  // x in X cap Y cap Z
        ws.mark(v);
        ws.queue.push_back(v);
    }
    // BFS from X cap Z over open edges inside Z, early exit on touching Y.
    for (std::size_t head = 0; head < ws.queue.size(); ++head) {
        std::uint32_t c = ws.queue[head];
        for (const auto* h = region.adj_begin(c); h != region.adj_end(c); ++h) {
            if (!cfg.open_bits[h->edge] || !zb[h->to] || ws.visited(h->to)) continue;
            if (yb[h->to]) return true;
            ws.mark(h->to);
            ws.queue.push_back(h->to);
        }
    }
    return false;
}

bool connected_in(const Configuration& cfg, const VertexSet& x, const VertexSet& y,
                  const VertexSet& z) {
    Workspace ws;
    return connected_in(cfg, x, y, z, ws);
}

std::uint32_t crossing_cluster_count(const Configuration& cfg, const VertexSet& annulus,
                                     const VertexSet& inner, const VertexSet& outer,
                                     Workspace& ws) {
    const Region& region = *cfg.region;
    if (annulus.region() != &region || inner.region() != &region || outer.region() != &region)
        throw InputError("vertex sets belong to a different region");
    const auto& ab = annulus.raw();
    const auto& ib = inner.raw();
    const auto& ob = outer.raw();
    const std::size_t n = region.vertex_count();

    ws.uf.reset(n);
    for (std::uint32_t e = 0; e < region.edge_count(); ++e) {
        if (!cfg.open_bits[e]) continue;
        auto [u, v] = region.edge(e);
        if (ab[u] && ab[v]) ws.uf.unite(u, v);
    }
    // touch bits per root: 1 = inner, 2 = outer
    std::uint32_t count = 0;
    ws.byte_scratch.assign(n, 0);
    auto& touch = ws.byte_scratch;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (!ab[v]) continue;
        std::uint8_t bit = (ib[v] ? 1 : 0) | (ob[v] ? 2 : 0);
        if (!bit) continue;
        std::uint32_t r = ws.uf.find(v);
        std::uint8_t before = touch[r];
        std::uint8_t after = before | bit;
        if (after != before) {
            touch[r] = after;
            if (after == 3 && before != 3) ++count;
        }
    }
    return count;
}

std::uint32_t crossing_cluster_count(const Configuration& cfg, const VertexSet& annulus,
                                     const VertexSet& inner, const VertexSet& outer) {
    Workspace ws;
    return crossing_cluster_count(cfg, annulus, inner, outer, ws);
}

}  // namespace perc
