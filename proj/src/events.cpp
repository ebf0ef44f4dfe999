#include "perc/events.hpp"

#include <algorithm>
#include <sstream>

#include "perc/errors.hpp"

namespace perc {

// ---- text helpers --------------------------------------------------------------

static std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

static Coord parse_coord(const std::string& s) {
    Coord c;
    for (const auto& tok : split(s, ',')) c.push_back(std::stoi(tok));
    if (c.empty()) throw InputError("empty coordinate");
    return c;
}

static std::string coord_text(const Coord& c) {
    std::ostringstream os;
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    return os.str();
}

std::string EventSpec::to_text() const {
    std::ostringstream os;
    switch (kind) {
        case EventKind::e1: os << "kind=e1"; break;
        case EventKind::e2: os << "kind=e2"; break;
        case EventKind::unique_crossing: os << "kind=unique"; break;
        case EventKind::cylinder: os << "kind=cylinder"; break;
        case EventKind::circuit: os << "kind=circuit"; break;
        case EventKind::connect: os << "kind=connect"; break;
    }
    if (!v.empty()) os << " v=" << coord_text(v);
    if (kind == EventKind::e1 || kind == EventKind::e2 || kind == EventKind::unique_crossing) {
        os << " m=" << m << " n=" << n;
        if (!z_desc.empty()) os << " z=" << z_desc;
    }
    if (kind == EventKind::circuit) os << " m=" << m;
    if (kind == EventKind::connect)
        os << " x=" << x_desc << " y=" << y_desc << " z=" << (z_desc.empty() ? "all" : z_desc);
    if (kind == EventKind::cylinder) {
        if (cylinder_origin_star) {
            os << " edges=@origin";
        } else {
            os << " edges=";
            for (std::size_t i = 0; i < cylinder_edges.size(); ++i) {
                if (i) os << ";";
                os << coord_text(cylinder_edges[i].first) << ":" << coord_text(cylinder_edges[i].second);
            }
        }
        if (cylinder_states.empty()) {
            os << " state=open";
        } else {
            os << " state=";
            for (auto b : cylinder_states) os << int(b);
        }
    }
    return os.str();
}

EventSpec EventSpec::parse(const std::string& text) {
    EventSpec spec;
    bool have_kind = false;
    for (const auto& tok : split(text, ' ')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw InputError("event token without '=': " + tok);
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "kind") {
            have_kind = true;
            if (val == "e1") spec.kind = EventKind::e1;
            else if (val == "e2") spec.kind = EventKind::e2;
            else if (val == "unique" || val == "f") spec.kind = EventKind::unique_crossing;
            else if (val == "cylinder") spec.kind = EventKind::cylinder;
            else if (val == "circuit") spec.kind = EventKind::circuit;
            else if (val == "connect") spec.kind = EventKind::connect;
            else throw InputError("unknown event kind: " + val);
        } else if (key == "v") {
            spec.v = parse_coord(val);
        } else if (key == "m") {
            spec.m = std::stoi(val);
        } else if (key == "n") {
            spec.n = std::stoi(val);
        } else if (key == "x") {
            spec.x_desc = val;
        } else if (key == "y") {
            spec.y_desc = val;
        } else if (key == "z") {
            spec.z_desc = val;
        } else if (key == "edges") {
            if (val == "@origin") {
                spec.cylinder_origin_star = true;
            } else {
                for (const auto& pair_tok : split(val, ';')) {
                    auto colon = pair_tok.find(':');
                    if (colon == std::string::npos) throw InputError("cylinder edge needs 'a:b': " + pair_tok);
                    spec.cylinder_edges.emplace_back(parse_coord(pair_tok.substr(0, colon)),
                                                     parse_coord(pair_tok.substr(colon + 1)));
                }
            }
        } else if (key == "state") {
            if (val != "open") {
                for (char ch : val) {
                    if (ch != '0' && ch != '1') throw InputError("cylinder state must be 'open' or a 0/1 string");
                    spec.cylinder_states.push_back(ch == '1');
                }
            }
        } else {
            throw InputError("unknown event key: " + key);
        }
    }
    if (!have_kind) throw InputError("event spec needs kind=");
    return spec;
}

// ---- vertex set descriptors ------------------------------------------------------

VertexSet parse_vertex_set(const Region& region, const std::string& desc, const Coord& center) {
    if (desc.empty() || desc == "all") return VertexSet::all(region);
    if (desc == "origin") {
        VertexSet s(region);
        auto idx = region.index_of(center);
        if (idx < 0) throw InputError("center is not a region vertex");
        s.add(static_cast<std::uint32_t>(idx));
        return s;
    }
    auto colon = desc.find(':');
    std::string name = colon == std::string::npos ? desc : desc.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : desc.substr(colon + 1);
    auto one_arg = [&]() {
        if (args.empty()) throw InputError("set descriptor needs an argument: " + desc);
        return std::stoi(args);
    };
    auto two_args = [&]() {
        auto parts = split(args, ',');
        if (parts.size() != 2) throw InputError("set descriptor needs two arguments: " + desc);
        return std::make_pair(std::stoi(parts[0]), std::stoi(parts[1]));
    };
    if (name == "sphere") {
        int r = one_arg();
        return metric_sets(region, center, r, r).sphere_n;
    }
    if (name == "ball") {
        int r = one_arg();
        return metric_sets(region, center, 0, r).ball_n;
    }
    if (name == "outside_ball") {
        int r = one_arg();
        VertexSet s = VertexSet::all(region);
        s.subtract(metric_sets(region, center, 0, r).ball_n);
        return s;
    }
    if (name == "annulus") {
        auto [m, n] = two_args();
        return metric_sets(region, center, m, n).annulus;
    }
    if (name == "box") return box_set(region, one_arg());
    if (name == "boxb") return box_boundary_set(region, one_arg());
    if (name == "outside_box") {
        VertexSet s = VertexSet::all(region);
        s.subtract(box_set(region, one_arg()));
        return s;
    }
    if (name == "box_annulus") {
        auto [m, n] = two_args();
        return box_annulus_set(region, m, n);
    }
    throw InputError("unknown vertex set descriptor: " + desc);
}

// ---- compiled events ---------------------------------------------------------------

namespace {

struct ConnectEval final : CompiledEvent {
    VertexSet x, y, z;
    bool eval(const Configuration& cfg, Workspace& ws) const override {
        return connected_in(cfg, x, y, z, ws);
    }
};

struct CrossingCountEval final : CompiledEvent {
    VertexSet z, inner, outer;
    bool want_two = false;  // true: >= 2 (E2); false: == 1 (F)
    bool eval(const Configuration& cfg, Workspace& ws) const override {
        std::uint32_t c = crossing_cluster_count(cfg, z, inner, outer, ws);
        return want_two ? c >= 2 : c == 1;
    }
};

struct CylinderEval final : CompiledEvent {
    std::vector<std::uint32_t> edges;
    std::vector<std::uint8_t> states;
    bool eval(const Configuration& cfg, Workspace&) const override {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (cfg.open_bits[edges[i]] != states[i]) return false;
        return true;
    }
};

struct CircuitEval final : CompiledEvent {
    std::shared_ptr<CircuitSearch> search;
    bool eval(const Configuration& cfg, Workspace& ws) const override {
        return search->exists(cfg, ws);
    }
};

Coord default_center(const Region& region, const Coord& v) {
    if (!v.empty()) return v;
    return Coord(region.spec().d, 0);
}

}  // namespace

std::unique_ptr<CompiledEvent> compile_event(const Region& region, const EventSpec& spec) {
    Coord v = default_center(region, spec.v);
    switch (spec.kind) {
        case EventKind::e1: {
            if (spec.m > spec.n) throw InputError("E1 requires m <= n");
            auto ms = metric_sets(region, v, spec.m, spec.n);
            auto ev = std::make_unique<ConnectEval>();
            ev->x = ms.sphere_m;
            ev->y = ms.sphere_n;
            ev->z = spec.z_desc.empty() ? ms.annulus : parse_vertex_set(region, spec.z_desc, v);
            return ev;
        }
        case EventKind::e2:
        case EventKind::unique_crossing: {
            if (spec.m > spec.n) throw InputError("E2 requires m <= n");
            auto ms = metric_sets(region, v, spec.m, spec.n);
            auto ev = std::make_unique<CrossingCountEval>();
            ev->z = spec.z_desc.empty() ? ms.annulus : parse_vertex_set(region, spec.z_desc, v);
            ev->inner = ms.sphere_m;
            ev->outer = ms.sphere_n;
            ev->inner.intersect(ev->z);
            ev->outer.intersect(ev->z);
            ev->want_two = spec.kind == EventKind::e2;
            return ev;
        }
        case EventKind::cylinder: {
            auto ev = std::make_unique<CylinderEval>();
            if (spec.cylinder_origin_star) {
                auto ci = region.index_of(v);
                if (ci < 0) throw InputError("cylinder @origin: center not in region");
                for (const auto* h = region.adj_begin(static_cast<std::uint32_t>(ci));
                     h != region.adj_end(static_cast<std::uint32_t>(ci)); ++h)
                    ev->edges.push_back(h->edge);
                std::sort(ev->edges.begin(), ev->edges.end());
            } else {
                for (const auto& [a, b] : spec.cylinder_edges) {
                    auto ia = region.index_of(a), ib = region.index_of(b);
                    if (ia < 0 || ib < 0) throw InputError("cylinder edge endpoint not in region");
                    auto e = region.edge_between(static_cast<std::uint32_t>(ia), static_cast<std::uint32_t>(ib));
                    if (e < 0) throw InputError("cylinder references a non-edge");
                    ev->edges.push_back(static_cast<std::uint32_t>(e));
                }
            }
            if (spec.cylinder_states.empty()) {
                ev->states.assign(ev->edges.size(), 1);
            } else {
                if (spec.cylinder_states.size() != ev->edges.size())
                    throw InputError("cylinder state list length mismatch");
                ev->states = spec.cylinder_states;
            }
            return ev;
        }
        case EventKind::circuit: {
            auto ev = std::make_unique<CircuitEval>();
            ev->search = std::make_shared<CircuitSearch>(region, spec.m);
            return ev;
        }
        case EventKind::connect: {
            auto ev = std::make_unique<ConnectEval>();
            ev->x = parse_vertex_set(region, spec.x_desc, v);
            ev->y = parse_vertex_set(region, spec.y_desc, v);
            ev->z = parse_vertex_set(region, spec.z_desc, v);
            return ev;
        }
    }
    throw InputError("unhandled event kind");
}

// ---- direct operations ----------------------------------------------------------------

bool event_E1(const Configuration& cfg, const Coord& v, int m, int n, const VertexSet* z) {
    if (m > n) throw InputError("E1 requires m <= n");
    const Region& region = *cfg.region;
    auto ms = metric_sets(region, v, m, n);
    Workspace ws;
    return connected_in(cfg, ms.sphere_m, ms.sphere_n, z ? *z : ms.annulus, ws);
}

bool event_E2(const Configuration& cfg, const Coord& v, int m, int n, const VertexSet* z) {
    if (m > n) throw InputError("E2 requires m <= n");
    const Region& region = *cfg.region;
    auto ms = metric_sets(region, v, m, n);
    Workspace ws;
    const VertexSet& zz = z ? *z : ms.annulus;
    VertexSet inner = ms.sphere_m, outer = ms.sphere_n;
    inner.intersect(zz);
    outer.intersect(zz);
    return crossing_cluster_count(cfg, zz, inner, outer, ws) >= 2;
}

bool event_unique_crossing(const Configuration& cfg, const VertexSet& annulus,
                           const VertexSet& inner, const VertexSet& outer) {
    Workspace ws;
    return crossing_cluster_count(cfg, annulus, inner, outer, ws) == 1;
}

bool event_cylinder(const Configuration& cfg, const std::vector<std::uint32_t>& edges,
                    const std::vector<std::uint8_t>& required_states) {
    if (required_states.size() != edges.size()) throw InputError("cylinder state list length mismatch");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i] >= cfg.region->edge_count()) throw InputError("cylinder references unknown edge");
        if (cfg.open_bits[edges[i]] != required_states[i]) return false;
    }
    return true;
}

// ---- circuits --------------------------------------------------------------------------

static bool is_cut_coord(const Coord& c) { return c[1] == 0 && c[0] >= 1; }

CircuitSearch::CircuitSearch(const Region& region, int m) : region_(&region), m_(m) {
    if (!region.spec().is_slab()) throw InputError("circuits require a slab region");
    if (m < 1) throw InputError("circuit scale m must be >= 1");
    annulus_ = box_annulus_set(region, 2 * m, 3 * m);

    // the region must contain all of An(2m,3m)
    const auto& spec = region.spec();
    std::uint64_t layers = 1;
    for (int i = 2; i < spec.d; ++i) layers *= static_cast<std::uint64_t>(spec.k + 1);
    std::uint64_t side_out = 2ULL * 3 * m + 1, side_in = 2ULL * (2 * m - 1) + 1;
    std::uint64_t expect = (side_out * side_out - side_in * side_in) * layers;
    if (annulus_.count() != expect)
        throw InputError("region too small to contain An(2m,3m)");

    const std::uint32_t n = static_cast<std::uint32_t>(region.vertex_count());
    dup_state_.assign(n, -1);
    n_states_ = n;
    for (std::uint32_t vtx = 0; vtx < n; ++vtx) {
        if (annulus_.contains(vtx) && is_cut_coord(region.coord(vtx))) {
            dup_state_[vtx] = static_cast<std::int32_t>(n_states_++);
            cut_vertices_.push_back(vtx);
        }
    }
    // unwrap: state v = cut vertex's copy attached to the x2 > 0 side,
    // dup_state_[v] = copy attached to the x2 < 0 side.
    for (std::uint32_t e = 0; e < region.edge_count(); ++e) {
        auto [a, b] = region.edge(e);
        if (!annulus_.contains(a) || !annulus_.contains(b)) continue;
        bool ca = dup_state_[a] >= 0, cb = dup_state_[b] >= 0;
        if (!ca && !cb) {
            uedges_.push_back({a, b, e});
        } else if (ca && cb) {
            uedges_.push_back({a, b, e});
            uedges_.push_back({static_cast<std::uint32_t>(dup_state_[a]),
                               static_cast<std::uint32_t>(dup_state_[b]), e});
        } else {
            std::uint32_t cut = ca ? a : b, other = ca ? b : a;
            int side = region.coord(other)[1];  // +-1: the edge leaves the cut plane
            std::uint32_t cut_state = side > 0 ? cut : static_cast<std::uint32_t>(dup_state_[cut]);
            uedges_.push_back({cut_state, other, e});
        }
    }
}

std::uint32_t CircuitSearch::state_vertex(std::uint32_t s) const {
    if (s < region_->vertex_count()) return s;
    // reverse lookup over the (short) cut list
    for (auto v : cut_vertices_)
        if (static_cast<std::uint32_t>(dup_state_[v]) == s) return v;
    throw InvariantError("bad unwrapped state");
}

bool CircuitSearch::exists(const Configuration& cfg, Workspace& ws) const {
    ws.uf.reset(n_states_);
    for (const auto& ue : uedges_)
        if (cfg.open_bits[ue.orig]) ws.uf.unite(ue.a, ue.b);
    for (auto v : cut_vertices_)
        if (ws.uf.find(v) == ws.uf.find(static_cast<std::uint32_t>(dup_state_[v]))) return true;
    return false;
}

std::optional<CircuitData> CircuitSearch::minimal(const Configuration& cfg) const {
    // state adjacency over open edges, rebuilt per configuration
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(n_states_);
    for (const auto& ue : uedges_) {
        if (!cfg.open_bits[ue.orig]) continue;
        adj[ue.a].emplace_back(ue.b, ue.orig);
        adj[ue.b].emplace_back(ue.a, ue.orig);
    }
    for (auto& lst : adj) std::sort(lst.begin(), lst.end());

    std::optional<CircuitData> best;
    std::vector<std::uint32_t> best_key;
    std::vector<std::int32_t> parent(n_states_);
    std::vector<std::int32_t> parent_edge(n_states_);

    for (auto src : cut_vertices_) {
        auto dst = static_cast<std::uint32_t>(dup_state_[src]);
        std::fill(parent.begin(), parent.end(), -1);
        parent[src] = static_cast<std::int32_t>(src);
        std::vector<std::uint32_t> queue{src};
        bool found = false;
        for (std::size_t head = 0; head < queue.size() && !found; ++head) {
            std::uint32_t c = queue[head];
            for (auto [to, e] : adj[c]) {
                if (parent[to] >= 0) continue;
                parent[to] = static_cast<std::int32_t>(c);
                parent_edge[to] = static_cast<std::int32_t>(e);
                if (to == dst) { found = true; break; }
                queue.push_back(to);
            }
        }
        if (!found) continue;

        CircuitData cand;
        cand.m = m_;
        std::uint32_t cur = dst;
        while (cur != src) {
            cand.vertices.push_back(state_vertex(cur));
            cand.edges.push_back(static_cast<std::uint32_t>(parent_edge[cur]));
            cur = static_cast<std::uint32_t>(parent[cur]);
        }
        cand.vertices.push_back(src);
        std::reverse(cand.vertices.begin(), cand.vertices.end());
        std::reverse(cand.edges.begin(), cand.edges.end());
        // dst projects back to src, so the walk is already closed

        std::vector<std::uint32_t> key = cand.edges;
        std::sort(key.begin(), key.end());
        if (!best || cand.edges.size() < best->edges.size() ||
            (cand.edges.size() == best->edges.size() && key < best_key)) {
            best = std::move(cand);
            best_key = std::move(key);
        }
    }
    if (best) {
        // winding: net signed crossings of the in-plane ray {x1 >= 1, x2 = -1/2}
        int w = 0;
        for (std::size_t i = 0; i + 1 < best->vertices.size(); ++i) {
            const Coord& a = region_->coord(best->vertices[i]);
            const Coord& b = region_->coord(best->vertices[i + 1]);
            if (a[0] >= 1 && a[0] == b[0] && a[1] == -1 && b[1] == 0) ++w;
            else if (a[0] >= 1 && a[0] == b[0] && a[1] == 0 && b[1] == -1) --w;
        }
        best->winding = w;
        validate_circuit(cfg, *best);
    }
    return best;
}

std::optional<CircuitData> minimal_open_circuit(const Configuration& cfg, int m) {
    CircuitSearch cs(*cfg.region, m);
    return cs.minimal(cfg);
}

bool open_circuit_exists(const Configuration& cfg, int m, Workspace& ws) {
    CircuitSearch cs(*cfg.region, m);
    return cs.exists(cfg, ws);
}

void validate_circuit(const Configuration& cfg, const CircuitData& c) {
    const Region& region = *cfg.region;
    if (c.vertices.size() < 2 || c.vertices.front() != c.vertices.back())
        throw InvariantError("circuit walk is not closed");
    if (c.edges.size() + 1 != c.vertices.size())
        throw InvariantError("circuit edge/vertex count mismatch");
    VertexSet annulus = box_annulus_set(region, 2 * c.m, 3 * c.m);
    for (auto v : c.vertices)
        if (!annulus.contains(v)) throw InvariantError("circuit leaves An(2m,3m)");
    std::vector<std::uint32_t> seen = c.edges;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw InvariantError("circuit repeats an edge");
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        auto e = c.edges[i];
        if (!cfg.open_bits[e]) throw InvariantError("circuit uses a closed edge");
        auto [a, b] = region.edge(e);
        std::uint32_t u = c.vertices[i], v = c.vertices[i + 1];
        if (!((a == u && b == v) || (a == v && b == u)))
            throw InvariantError("circuit edge does not join consecutive vertices");
    }
    if (c.winding != 1 && c.winding != -1) throw InvariantError("circuit winding is not +-1");
}

}  // namespace perc
