#pragma once
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "perc/lattice.hpp"
#include "perc/percolation.hpp"

namespace perc {

// ---- event specifiers --------------------------------------------------------
//
// Serializable description of an event, e.g.
//   "kind=e1 m=1 n=2"                        S(v,m) <-> S(v,n) in A(v,m,n)
//   "kind=e2 m=4 n=16"                       >= 2 disjoint crossing clusters
//   "kind=unique m=4 n=16"                   exactly one crossing cluster (F)
//   "kind=cylinder edges=@origin state=open" listed edges all open
//   "kind=circuit m=2"                       open circuit around Q(2m) in An(2m,3m)
//   "kind=connect x=origin y=sphere:8 z=ball:8"
// Vertex set descriptors: all | origin | sphere:R | ball:R | outside_ball:R |
// annulus:M,N | box:M | boxb:M | outside_box:M | box_annulus:M,N.

enum class EventKind { e1, e2, unique_crossing, cylinder, circuit, connect };

struct EventSpec {
    EventKind kind = EventKind::connect;
    Coord v;        // center; defaults to the lattice origin
    int m = 0;
    int n = 0;
    std::string x_desc, y_desc, z_desc;  // connect sets / optional E1/E2 restriction
    std::vector<std::pair<Coord, Coord>> cylinder_edges;
    bool cylinder_origin_star = false;  // edges=@origin: all edges at v
    std::vector<std::uint8_t> cylinder_states;  // required state per edge; empty = all open

    std::string to_text() const;
    static EventSpec parse(const std::string& text);
};

VertexSet parse_vertex_set(const Region& region, const std::string& desc, const Coord& center);

// Compiled form: geometry resolved against one region, reusable across samples.
// The Monte Carlo estimators and the exact oracle evaluate events through this
// same interface.
class CompiledEvent {
public:
    virtual ~CompiledEvent() = default;
    virtual bool eval(const Configuration& cfg, Workspace& ws) const = 0;
};

std::unique_ptr<CompiledEvent> compile_event(const Region& region, const EventSpec& spec);

// ---- direct event operations ---------------------------------------------------

// E1(v,m,n) = {S(v,m) <-> S(v,n)}; Z defaults to the annulus A(v,m,n).
bool event_E1(const Configuration& cfg, const Coord& v, int m, int n,
              const VertexSet* z = nullptr);
// E2(v,m,n): at least two disjoint open crossing clusters of A(v,m,n).
bool event_E2(const Configuration& cfg, const Coord& v, int m, int n,
              const VertexSet* z = nullptr);
// F: exactly one crossing cluster.
bool event_unique_crossing(const Configuration& cfg, const VertexSet& annulus,
                           const VertexSet& inner, const VertexSet& outer);
bool event_cylinder(const Configuration& cfg, const std::vector<std::uint32_t>& edges,
                    const std::vector<std::uint8_t>& required_states);

// ---- circuits around slab boxes ---------------------------------------------
//
// A circuit around Q(2m) is a closed walk of open edges inside An(2m,3m),
// repeating no edge, whose in-plane projection winds once around the origin
// column.  Existence and minimality are decided in the cut-open (unwrapped)
// annulus: the cut duplicates the vertices on {x1>0, x2=0}; an open path
// between the two copies of a cut vertex closes to a winding +-1 circuit.

struct CircuitData {
    std::vector<std::uint32_t> vertices;  // closed walk, front() == back()
    std::vector<std::uint32_t> edges;     // edge ids along the walk
    int m = 0;
    int winding = 0;  // +-1
};

// Static cut-open annulus structure, reusable across configurations.
class CircuitSearch {
public:
    CircuitSearch(const Region& region, int m);

    bool exists(const Configuration& cfg, Workspace& ws) const;
    std::optional<CircuitData> minimal(const Configuration& cfg) const;

    const VertexSet& annulus() const { return annulus_; }

private:
    const Region* region_;
    int m_;
    VertexSet annulus_;
    std::uint32_t n_states_ = 0;
    // duplicate state of cut vertex v (or -1); state of a plain vertex is v itself
    std::vector<std::int32_t> dup_state_;
    struct UEdge {
        std::uint32_t a, b;      // unwrapped state ids
        std::uint32_t orig;      // original edge id
    };
    std::vector<UEdge> uedges_;
    std::vector<std::uint32_t> cut_vertices_;
    std::uint32_t state_vertex(std::uint32_t s) const;
};

std::optional<CircuitData> minimal_open_circuit(const Configuration& cfg, int m);
bool open_circuit_exists(const Configuration& cfg, int m, Workspace& ws);

// Checks openness, containment in An(2m,3m), adjacency, edge-distinctness and
// winding +-1; throws InvariantError on violation.
void validate_circuit(const Configuration& cfg, const CircuitData& c);

}  // namespace perc
