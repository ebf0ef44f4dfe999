#include "perc/lattice.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "perc/errors.hpp"

namespace perc {

LatticeSpec LatticeSpec::hypercubic(int d) {
    if (d < 2) throw InputError("hypercubic dimension must be >= 2");
    LatticeSpec s;
    s.family = Family::hypercubic;
    s.d = d;
    s.k = 0;
    return s;
}

LatticeSpec LatticeSpec::slab(int d, int k) {
    if (d < 2) throw InputError("slab dimension must be >= 2");
    if (k < 0) throw InputError("slab thickness must be >= 0");
    LatticeSpec s;
    s.family = Family::slab;
    s.d = d;
    s.k = k;
    return s;
}

bool LatticeSpec::valid_coord(const Coord& c) const {
    if (static_cast<int>(c.size()) != d) return false;
    if (family == Family::slab) {
        for (int i = 2; i < d; ++i)
            if (c[i] < 0 || c[i] > k) return false;
    }
    return true;
}

void LatticeSpec::neighbors(const Coord& c, std::vector<Coord>& out) const {
    out.clear();
    Coord t = c;
    for (int i = 0; i < d; ++i) {
        for (int s : {-1, +1}) {
            t[i] = c[i] + s;
            if (family == Family::slab && i >= 2 && (t[i] < 0 || t[i] > k)) {
                t[i] = c[i];
                continue;
            }
            out.push_back(t);
            t[i] = c[i];
        }
    }
}

std::string LatticeSpec::name() const {
    std::ostringstream os;
    if (family == Family::hypercubic)
        os << "hypercubic(" << d << ")";
    else
        os << "slab(" << d << "," << k << ")";
    return os.str();
}

// ---- Region ----------------------------------------------------------------

Region::Region(LatticeSpec spec, std::vector<Coord> coords) : spec_(spec) {
    for (const auto& c : coords)
        if (!spec_.valid_coord(c)) throw InputError("coordinate outside lattice: invalid slab layer or dimension");
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    coords_ = std::move(coords);
    index_.reserve(coords_.size() * 2);
    for (std::uint32_t i = 0; i < coords_.size(); ++i) index_.emplace(coords_[i], i);
    build_edges();
}

void Region::build_edges() {
    std::vector<Coord> nbrs;
    for (std::uint32_t u = 0; u < coords_.size(); ++u) {
        spec_.neighbors(coords_[u], nbrs);
        for (const auto& nc : nbrs) {
            auto it = index_.find(nc);
            if (it == index_.end()) continue;
            std::uint32_t v = it->second;
            if (u < v) edges_.emplace_back(u, v);
        }
    }
    std::sort(edges_.begin(), edges_.end());

    adj_offset_.assign(coords_.size() + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++adj_offset_[u + 1];
        ++adj_offset_[v + 1];
    }
    for (std::size_t i = 1; i < adj_offset_.size(); ++i) adj_offset_[i] += adj_offset_[i - 1];
    adj_.resize(edges_.size() * 2);
    std::vector<std::uint32_t> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
        auto [u, v] = edges_[e];
        adj_[cursor[u]++] = HalfEdge{v, e};
        adj_[cursor[v]++] = HalfEdge{u, e};
    }
}

Region Region::from_edge_list(std::size_t n_vertices,
                              const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    Region r;
    r.spec_ = LatticeSpec::hypercubic(2);  // placeholder spec; graph is explicit
    r.explicit_graph_ = true;
    r.coords_.reserve(n_vertices);
    for (std::uint32_t i = 0; i < n_vertices; ++i) r.coords_.push_back(Coord{static_cast<std::int32_t>(i), 0});
    for (std::uint32_t i = 0; i < n_vertices; ++i) r.index_.emplace(r.coords_[i], i);
    auto es = edges;
    for (auto& [u, v] : es) {
        if (u >= n_vertices || v >= n_vertices) throw InputError("edge endpoint out of range");
        if (u == v) throw InputError("self-loop edge");
        if (u > v) std::swap(u, v);
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    r.edges_ = std::move(es);

    r.adj_offset_.assign(n_vertices + 1, 0);
    for (const auto& [u, v] : r.edges_) {
        ++r.adj_offset_[u + 1];
        ++r.adj_offset_[v + 1];
    }
    for (std::size_t i = 1; i < r.adj_offset_.size(); ++i) r.adj_offset_[i] += r.adj_offset_[i - 1];
    r.adj_.resize(r.edges_.size() * 2);
    std::vector<std::uint32_t> cursor(r.adj_offset_.begin(), r.adj_offset_.end() - 1);
    for (std::uint32_t e = 0; e < r.edges_.size(); ++e) {
        auto [u, v] = r.edges_[e];
        r.adj_[cursor[u]++] = HalfEdge{v, e};
        r.adj_[cursor[v]++] = HalfEdge{u, e};
    }
    r.descriptor = "explicit";
    return r;
}

std::int64_t Region::index_of(const Coord& c) const {
    auto it = index_.find(c);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::int64_t Region::edge_between(std::uint32_t u, std::uint32_t v) const {
    for (const HalfEdge* h = adj_begin(u); h != adj_end(u); ++h)
        if (h->to == v) return h->edge;
    return -1;
}

// ---- VertexSet --------------------------------------------------------------

VertexSet VertexSet::all(const Region& r) {
    VertexSet s(r);
    std::fill(s.bits_.begin(), s.bits_.end(), 1);
    s.count_ = r.vertex_count();
    return s;
}

VertexSet VertexSet::of(const Region& r, const std::vector<std::uint32_t>& idx) {
    VertexSet s(r);
    for (auto v : idx) s.add(v);
    return s;
}

static void check_same_region(const VertexSet& a, const VertexSet& b) {
    if (a.region() != b.region()) throw InputError("vertex sets belong to different regions");
}

VertexSet& VertexSet::unite(const VertexSet& o) {
    check_same_region(*this, o);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (o.bits_[i] && !bits_[i]) { bits_[i] = 1; ++count_; }
    return *this;
}

VertexSet& VertexSet::subtract(const VertexSet& o) {
    check_same_region(*this, o);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (o.bits_[i] && bits_[i]) { bits_[i] = 0; --count_; }
    return *this;
}

VertexSet& VertexSet::intersect(const VertexSet& o) {
    check_same_region(*this, o);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (!o.bits_[i] && bits_[i]) { bits_[i] = 0; --count_; }
    return *this;
}

bool VertexSet::subset_of(const VertexSet& o) const {
    check_same_region(*this, o);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] && !o.bits_[i]) return false;
    return true;
}

bool VertexSet::intersects(const VertexSet& o) const {
    check_same_region(*this, o);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] && o.bits_[i]) return true;
    return false;
}

std::vector<std::uint32_t> VertexSet::members() const {
    std::vector<std::uint32_t> out;
    out.reserve(count_);
    for (std::uint32_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out.push_back(i);
    return out;
}

// ---- constructions ----------------------------------------------------------

// Ambient BFS out to distance n; returns coords with their distances.
static std::vector<std::pair<Coord, int>> ambient_ball(const LatticeSpec& spec, const Coord& v, int n) {
    if (!spec.valid_coord(v)) throw InputError("center coordinate invalid for lattice " + spec.name());
    if (n < 0) throw InputError("radius must be >= 0");
    std::unordered_map<Coord, int, CoordHash> dist;
    std::deque<Coord> queue;
    dist.emplace(v, 0);
    queue.push_back(v);
    std::vector<Coord> nbrs;
    while (!queue.empty()) {
        Coord c = std::move(queue.front());
        queue.pop_front();
        int dc = dist.at(c);
        if (dc == n) continue;
        spec.neighbors(c, nbrs);
        for (const auto& nc : nbrs) {
            if (dist.emplace(nc, dc + 1).second) queue.push_back(nc);
        }
    }
    std::vector<std::pair<Coord, int>> out(dist.begin(), dist.end());
    std::sort(out.begin(), out.end());
    return out;
}

Region build_ball_region(const LatticeSpec& spec, const Coord& v, int n) {
    auto ball = ambient_ball(spec, v, n);
    std::vector<Coord> coords;
    coords.reserve(ball.size());
    for (auto& [c, d] : ball) coords.push_back(std::move(c));
    Region r(spec, std::move(coords));
    std::ostringstream os;
    os << "ball center=(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ") n=" << n;
    r.descriptor = os.str();
    return r;
}

MetricSets metric_sets(const Region& region, const Coord& v, int m, int n, bool restrict_to_region) {
    if (m > n) throw InputError("metric_sets requires m <= n");
    if (m < 0) throw InputError("metric_sets requires m >= 0");
    MetricSets out{VertexSet(region), VertexSet(region), VertexSet(region), VertexSet(region)};

    auto record = [&](std::int64_t idx, int d) {
        if (idx < 0) return;
        auto u = static_cast<std::uint32_t>(idx);
        if (d <= n) out.ball_n.add(u);
        if (d == m) out.sphere_m.add(u);
        if (d == n) out.sphere_n.add(u);
        if (d >= m && d <= n) out.annulus.add(u);
    };

    if (restrict_to_region) {
        std::int64_t src = region.index_of(v);
        if (src < 0) throw InputError("center is not a region vertex");
        std::vector<int> dist(region.vertex_count(), -1);
        std::deque<std::uint32_t> queue;
        dist[src] = 0;
        queue.push_back(static_cast<std::uint32_t>(src));
        while (!queue.empty()) {
            std::uint32_t c = queue.front();
            queue.pop_front();
            if (dist[c] == n) continue;
            for (const auto* h = region.adj_begin(c); h != region.adj_end(c); ++h)
                if (dist[h->to] < 0) {
                    dist[h->to] = dist[c] + 1;
                    queue.push_back(h->to);
                }
        }
        for (std::uint32_t u = 0; u < region.vertex_count(); ++u)
            if (dist[u] >= 0) record(u, dist[u]);
    } else {
        for (auto& [c, d] : ambient_ball(region.spec(), v, n)) record(region.index_of(c), d);
    }
    return out;
}

static void require_slab(const LatticeSpec& spec, const char* what) {
    if (!spec.is_slab()) throw InputError(std::string(what) + " requires a slab lattice");
}

Region build_slab_box_region(const LatticeSpec& spec, int n) {
    require_slab(spec, "build_slab_box_region");
    if (n < 0) throw InputError("box side must be >= 0");
    std::vector<Coord> coords;
    Coord c(spec.d, 0);
    // enumerate [-n,n]^2 x {0..k}^(d-2)
    std::vector<int> layer(spec.d - 2, 0);
    auto push_layers = [&](int x, int y) {
        std::fill(layer.begin(), layer.end(), 0);
        while (true) {
            c[0] = x;
            c[1] = y;
            for (int i = 2; i < spec.d; ++i) c[i] = layer[i - 2];
            coords.push_back(c);
            int i = 0;
            for (; i < spec.d - 2; ++i) {
                if (++layer[i] <= spec.k) break;
                layer[i] = 0;
            }
            if (i == spec.d - 2) break;
        }
    };
    for (int x = -n; x <= n; ++x)
        for (int y = -n; y <= n; ++y) push_layers(x, y);
    Region r(spec, std::move(coords));
    std::ostringstream os;
    os << "box n=" << n;
    r.descriptor = os.str();
    return r;
}

VertexSet box_set(const Region& region, int m) {
    require_slab(region.spec(), "box_set");
    VertexSet s(region);
    for (std::uint32_t u = 0; u < region.vertex_count(); ++u)
        if (box_radius(region.coord(u)) <= m) s.add(u);
    return s;
}

VertexSet box_boundary_set(const Region& region, int m) {
    require_slab(region.spec(), "box_boundary_set");
    VertexSet s(region);
    for (std::uint32_t u = 0; u < region.vertex_count(); ++u)
        if (box_radius(region.coord(u)) == m) s.add(u);
    return s;
}

VertexSet box_annulus_set(const Region& region, int m, int n) {
    require_slab(region.spec(), "box_annulus_set");
    if (m > n) throw InputError("box annulus requires m <= n");
    VertexSet s(region);
    for (std::uint32_t u = 0; u < region.vertex_count(); ++u) {
        int r = box_radius(region.coord(u));
        if (r >= m && r <= n) s.add(u);
    }
    return s;
}

SlabBoxSets build_slab_box_sets(const LatticeSpec& spec, int m, int n) {
    require_slab(spec, "build_slab_box_sets");
    if (m < 1 || m > n) throw InputError("build_slab_box_sets requires 1 <= m <= n");
    SlabBoxSets out;
    out.q_n = std::make_shared<Region>(build_slab_box_region(spec, n));
    out.boundary = box_boundary_set(*out.q_n, n);
    out.annulus = box_annulus_set(*out.q_n, m, n);
    return out;
}

VertexSet column_projection(const Region& region, const VertexSet& w) {
    require_slab(region.spec(), "column_projection");
    if (w.region() != &region) throw InputError("vertex set belongs to a different region");
    std::unordered_map<std::uint64_t, char> planes;
    for (auto u : w.members()) {
        const Coord& c = region.coord(u);
        std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c[0])) << 32) |
                            static_cast<std::uint32_t>(c[1]);
        planes.emplace(key, 1);
    }
    VertexSet out(region);
    for (std::uint32_t u = 0; u < region.vertex_count(); ++u) {
        const Coord& c = region.coord(u);
        std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c[0])) << 32) |
                            static_cast<std::uint32_t>(c[1]);
        if (planes.count(key)) out.add(u);
    }
    return out;
}

Region induced_restriction(const Region& region, const VertexSet& z) {
    if (z.region() != &region) throw InputError("vertex set belongs to a different region");
    std::vector<Coord> coords;
    coords.reserve(z.count());
    for (auto u : z.members()) coords.push_back(region.coord(u));
    Region r(region.spec(), std::move(coords));
    r.descriptor = region.descriptor + " restricted";
    return r;
}

std::string region_descriptor_text(const Region& r) {
    std::ostringstream os;
    os << "{family=" << r.spec().name() << " construction=\"" << r.descriptor
       << "\" vertices=" << r.vertex_count() << " edges=" << r.edge_count() << "}";
    return os.str();
}

}  // namespace perc
