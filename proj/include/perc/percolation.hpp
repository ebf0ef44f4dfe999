#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "perc/lattice.hpp"
#include "perc/rng.hpp"

namespace perc {

// One Bernoulli bond sample.  (region, p, seed, sample_index) fully determine
// the bits: edge e draws word e of stream sample_index.
struct Configuration {
    const Region* region = nullptr;
    std::vector<std::uint8_t> open_bits;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t sample_index = 0;

    bool open(std::uint32_t e) const { return open_bits[e] != 0; }
};

Configuration sample_configuration(const Region& region, double p, std::uint64_t seed,
                                   std::uint64_t sample_index);
// Same, reusing the caller's buffer (hot path).
void sample_configuration_into(Configuration& cfg, const Region& region, double p,
                               std::uint64_t seed, std::uint64_t sample_index);

// Text export: header + one "edge_index open_bit" line per edge (golden tests).
std::string configuration_to_text(const Configuration& cfg);

// Union-find with path compression and union by size.
class UnionFind {
public:
    void reset(std::size_t n);
    std::uint32_t find(std::uint32_t x);
    void unite(std::uint32_t a, std::uint32_t b);
    std::uint32_t size(std::uint32_t root) const { return size_[root]; }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

// Clusters of open edges with all vertices inside Z.  Vertices outside Z get
// label -1; labels are canonical: the smallest vertex index of the cluster.
struct ClusterLabeling {
    std::vector<std::int32_t> label;
    std::uint32_t cluster_count = 0;
    // parallel arrays indexed by order of first appearance of each root
    std::vector<std::int32_t> cluster_ids;    // canonical id (smallest member)
    std::vector<std::uint32_t> cluster_size;  // member count

    std::uint32_t size_of(std::int32_t id) const;
};

// Reusable scratch for connectivity queries; one per worker thread.
struct Workspace {
    UnionFind uf;
    std::vector<std::uint32_t> queue;
    std::vector<std::uint32_t> stamp;
    std::vector<std::uint8_t> byte_scratch;
    std::uint32_t epoch = 0;

    // Begin a visited-set pass over n vertices; returns the fresh stamp value.
    std::uint32_t begin_visit(std::size_t n);
    bool visited(std::uint32_t v) const { return stamp[v] == epoch; }
    void mark(std::uint32_t v) { stamp[v] = epoch; }
};

ClusterLabeling label_clusters(const Configuration& cfg, const VertexSet& z);

// X <-> Y in Z: a path of open edges with all vertices in Z joining some
// x in X cap Z to some y in Y cap Z.  X cap Y cap Z nonempty => true.
bool connected_in(const Configuration& cfg, const VertexSet& x, const VertexSet& y,
                  const VertexSet& z, Workspace& ws);
bool connected_in(const Configuration& cfg, const VertexSet& x, const VertexSet& y,
                  const VertexSet& z);

// Number of clusters of (cfg restricted to `annulus`) meeting both `inner`
// and `outer`.
std::uint32_t crossing_cluster_count(const Configuration& cfg, const VertexSet& annulus,
                                     const VertexSet& inner, const VertexSet& outer,
                                     Workspace& ws);
std::uint32_t crossing_cluster_count(const Configuration& cfg, const VertexSet& annulus,
                                     const VertexSet& inner, const VertexSet& outer);

}  // namespace perc
