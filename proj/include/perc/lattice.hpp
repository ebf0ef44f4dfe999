#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace perc {

// Integer lattice coordinate.  Size equals LatticeSpec::d.
using Coord = std::vector<std::int32_t>;

enum class Family { hypercubic, slab };

// hypercubic(d): Z^d with nearest-neighbor edges.
// slab(d,k):     Z^2 x {0..k}^(d-2); slab(2,*) degenerates to Z^2.
struct LatticeSpec {
    Family family = Family::hypercubic;
    int d = 2;
    int k = 0;

    static LatticeSpec hypercubic(int d);
    static LatticeSpec slab(int d, int k);

    // Upper bound on vertex degree in the infinite graph.
    int degree_bound() const { return 2 * d; }

    bool is_slab() const { return family == Family::slab; }
    // True if `c` is a vertex of the infinite graph (slab layers in range).
    bool valid_coord(const Coord& c) const;
    // Ambient-graph neighbors of `c`, in a fixed deterministic order.
    void neighbors(const Coord& c, std::vector<Coord>& out) const;

    std::string name() const;  // "hypercubic(d)" / "slab(d,k)"
    bool operator==(const LatticeSpec& o) const {
        return family == o.family && d == o.d && k == o.k;
    }
};

struct CoordHash {
    std::size_t operator()(const Coord& c) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto x : c) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) + 0x9e3779b9ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h);
    }
};

// Finite induced subgraph of a lattice with stable, deterministic indexing:
// vertices sorted lexicographically by coordinate, edges sorted by (u,v)
// index pair with u < v.  Immutable after construction.
class Region {
public:
    struct HalfEdge {
        std::uint32_t to;
        std::uint32_t edge;
    };

    Region() = default;

    // Induced subgraph on `coords` (deduplicated, sorted internally).
    Region(LatticeSpec spec, std::vector<Coord> coords);

    // Arbitrary explicit graph (oracle tests).  Coordinates are 1-d labels.
    static Region from_edge_list(std::size_t n_vertices,
                                 const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

    const LatticeSpec& spec() const { return spec_; }
    std::size_t vertex_count() const { return coords_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const Coord& coord(std::uint32_t v) const { return coords_[v]; }
    const std::vector<Coord>& coords() const { return coords_; }
    const std::pair<std::uint32_t, std::uint32_t>& edge(std::uint32_t e) const { return edges_[e]; }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const { return edges_; }

    // -1 if the coordinate is not a region vertex.
    std::int64_t index_of(const Coord& c) const;
    // Edge id for the (unordered) vertex pair, -1 if absent.
    std::int64_t edge_between(std::uint32_t u, std::uint32_t v) const;

    // Incident half-edges of v, ordered by edge id.
    const HalfEdge* adj_begin(std::uint32_t v) const { return adj_.data() + adj_offset_[v]; }
    const HalfEdge* adj_end(std::uint32_t v) const { return adj_.data() + adj_offset_[v + 1]; }

    std::string descriptor;  // construction provenance, e.g. "ball center=0 n=3"

private:
    void build_edges();

    LatticeSpec spec_;
    std::vector<Coord> coords_;
    std::unordered_map<Coord, std::uint32_t, CoordHash> index_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
    std::vector<HalfEdge> adj_;
    std::vector<std::uint32_t> adj_offset_;
    bool explicit_graph_ = false;
};

// Subset of a region's vertices.  All set algebra stays within one region.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(const Region& r) : region_(&r), bits_(r.vertex_count(), 0) {}

    static VertexSet all(const Region& r);
    static VertexSet of(const Region& r, const std::vector<std::uint32_t>& idx);

    const Region* region() const { return region_; }
    bool contains(std::uint32_t v) const { return bits_[v] != 0; }
    void add(std::uint32_t v) {
        if (!bits_[v]) { bits_[v] = 1; ++count_; }
    }
    void remove(std::uint32_t v) {
        if (bits_[v]) { bits_[v] = 0; --count_; }
    }
    std::size_t count() const { return count_; }
    bool empty() const { return count_ == 0; }

    VertexSet& unite(const VertexSet& o);
    VertexSet& subtract(const VertexSet& o);
    VertexSet& intersect(const VertexSet& o);
    bool subset_of(const VertexSet& o) const;
    bool intersects(const VertexSet& o) const;

    std::vector<std::uint32_t> members() const;
    const std::vector<std::uint8_t>& raw() const { return bits_; }

private:
    const Region* region_ = nullptr;
    std::vector<std::uint8_t> bits_;
    std::size_t count_ = 0;
};

// ---- constructions ---------------------------------------------------------

// B(v,n) in the graph metric of the ambient lattice.
Region build_ball_region(const LatticeSpec& spec, const Coord& v, int n);

struct MetricSets {
    VertexSet ball_n;    // B(v,n)
    VertexSet sphere_m;  // S(v,m)
    VertexSet sphere_n;  // S(v,n)
    VertexSet annulus;   // A(v,m,n) = B(v,n) \ B(v,m-1)
};

// Graph-metric sets relative to `region`'s indexing.  Distances are measured
// in the ambient lattice by default; with restrict_to_region they are measured
// inside the region's induced subgraph.
MetricSets metric_sets(const Region& region, const Coord& v, int m, int n,
                       bool restrict_to_region = false);

struct SlabBoxSets {
    // Region lives on the heap so the vertex sets' region pointers survive
    // moves of this struct.
    std::shared_ptr<Region> q_n;  // Q(n)
    VertexSet boundary;           // dQ(n) = Q(n) \ Q(n-1), indexed in q_n
    VertexSet annulus;            // An(m,n) = Q(n) \ Q(m-1), indexed in q_n
};

// In-plane boxes for slabs: Q(n) = [-n,n]^2 x {0..k}^(d-2).
SlabBoxSets build_slab_box_sets(const LatticeSpec& spec, int m, int n);

// Q(m) membership / boxes inside an existing slab region.
VertexSet box_set(const Region& region, int m);            // |x1|,|x2| <= m
VertexSet box_boundary_set(const Region& region, int m);   // dQ(m)
VertexSet box_annulus_set(const Region& region, int m, int n);  // An(m,n)

// Region of all slab vertices with |x1|,|x2| <= n.
Region build_slab_box_region(const LatticeSpec& spec, int n);

// W-bar: all vertices of the region sharing in-plane coordinates with W.
VertexSet column_projection(const Region& region, const VertexSet& w);

// Induced subgraph on Z, keeping ambient coordinate labels.
Region induced_restriction(const Region& region, const VertexSet& z);

// In-plane L-infinity radius of a slab coordinate.
inline int box_radius(const Coord& c) {
    int a = c[0] < 0 ? -c[0] : c[0];
    int b = c[1] < 0 ? -c[1] : c[1];
    return a > b ? a : b;
}

std::string region_descriptor_text(const Region& r);

}  // namespace perc
