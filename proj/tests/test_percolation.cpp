#include <cmath>

#include "doctest.h"
#include "perc/errors.hpp"
#include "perc/percolation.hpp"

using namespace perc;

static Coord c2(int x, int y) { return Coord{x, y}; }

static Region unit_square() {
    std::vector<Coord> coords{c2(0, 0), c2(1, 0), c2(0, 1), c2(1, 1)};
    return Region(LatticeSpec::hypercubic(2), coords);
}

TEST_CASE("sampling endpoints and determinism") {
    auto region = build_ball_region(LatticeSpec::hypercubic(2), c2(0, 0), 2);

    auto closed = sample_configuration(region, 0.0, 7, 0);
    for (auto b : closed.open_bits) CHECK(b == 0);
    auto open = sample_configuration(region, 1.0, 7, 0);
    for (auto b : open.open_bits) CHECK(b == 1);

    auto a = sample_configuration(region, 0.37, 123, 42);
    auto b = sample_configuration(region, 0.37, 123, 42);
    CHECK(a.open_bits == b.open_bits);
    auto c = sample_configuration(region, 0.37, 123, 43);
    CHECK(a.open_bits != c.open_bits);

    CHECK_THROWS_AS(sample_configuration(region, 1.5, 0, 0), InputError);
}

TEST_CASE("mean open fraction within 4 sigma at p=0.5") {
    auto region = build_ball_region(LatticeSpec::hypercubic(2), c2(0, 0), 2);
    REQUIRE(region.edge_count() == 16);
    const int budget = 100000;
    std::uint64_t open_count = 0;
    Configuration cfg;
    for (int i = 0; i < budget; ++i) {
        sample_configuration_into(cfg, region, 0.5, 2024, i);
        for (auto b : cfg.open_bits) open_count += b;
    }
    double mean = double(open_count) / (16.0 * budget);
    double sigma = std::sqrt(0.25 / (16.0 * budget));
    CHECK(std::abs(mean - 0.5) < 4 * sigma);
}

TEST_CASE("cluster labeling") {
    auto region = unit_square();
    auto z = VertexSet::all(region);

    auto full = sample_configuration(region, 1.0, 0, 0);
    auto lab = label_clusters(full, z);
    CHECK(lab.cluster_count == 1);
    CHECK(lab.cluster_size[0] == 4);

    auto none = sample_configuration(region, 0.0, 0, 0);
    lab = label_clusters(none, z);
    CHECK(lab.cluster_count == 4);

    // only edge (0,0)-(1,0) open
    Configuration cfg = none;
    auto e = region.edge_between(static_cast<std::uint32_t>(region.index_of(c2(0, 0))),
                                 static_cast<std::uint32_t>(region.index_of(c2(1, 0))));
    REQUIRE(e >= 0);
    cfg.open_bits[e] = 1;
    lab = label_clusters(cfg, z);
    CHECK(lab.cluster_count == 3);
    auto i00 = region.index_of(c2(0, 0));
    auto i10 = region.index_of(c2(1, 0));
    auto i01 = region.index_of(c2(0, 1));
    auto i11 = region.index_of(c2(1, 1));
    CHECK(lab.label[i00] == lab.label[i10]);
    CHECK(lab.label[i01] != lab.label[i00]);
    CHECK(lab.label[i01] != lab.label[i11]);
    CHECK(lab.size_of(lab.label[i00]) == 2);

    // canonical ids are smallest member indices
    for (std::size_t i = 0; i < lab.cluster_ids.size(); ++i)
        CHECK(lab.label[lab.cluster_ids[i]] == lab.cluster_ids[i]);
}

TEST_CASE("labels outside Z are sentinels and paths stay in Z") {
    auto region = unit_square();
    VertexSet z(region);
    z.add(static_cast<std::uint32_t>(region.index_of(c2(0, 0))));
    z.add(static_cast<std::uint32_t>(region.index_of(c2(1, 0))));
    auto full = sample_configuration(region, 1.0, 0, 0);
    auto lab = label_clusters(full, z);
    CHECK(lab.cluster_count == 1);
    CHECK(lab.label[region.index_of(c2(0, 1))] == -1);
    CHECK(lab.label[region.index_of(c2(1, 1))] == -1);
}

TEST_CASE("connected_in basics") {
    auto region = unit_square();
    auto z = VertexSet::all(region);
    VertexSet x(region), y(region);
    x.add(static_cast<std::uint32_t>(region.index_of(c2(0, 0))));
    y.add(static_cast<std::uint32_t>(region.index_of(c2(1, 1))));

    auto none = sample_configuration(region, 0.0, 0, 0);
    CHECK_FALSE(connected_in(none, x, y, z));

    // zero-length path: X cap Y cap Z nonempty
    VertexSet both = x;
    CHECK(connected_in(none, x, both, z));

    auto full = sample_configuration(region, 1.0, 0, 0);
    CHECK(connected_in(full, x, y, z));
}

TEST_CASE("unit square corner-to-corner probability 2p^2-p^4") {
    auto region = unit_square();
    auto z = VertexSet::all(region);
    VertexSet x(region), y(region);
    x.add(static_cast<std::uint32_t>(region.index_of(c2(0, 0))));
    y.add(static_cast<std::uint32_t>(region.index_of(c2(1, 1))));

    // exact enumeration over 2^4 configurations
    double p = 0.5, exact = 0.0;
    Configuration cfg = sample_configuration(region, 0.0, 0, 0);
    Workspace ws;
    for (unsigned mask = 0; mask < 16; ++mask) {
        int k = __builtin_popcount(mask);
        for (int e = 0; e < 4; ++e) cfg.open_bits[e] = (mask >> e) & 1;
        if (connected_in(cfg, x, y, z, ws)) exact += std::pow(p, k) * std::pow(1 - p, 4 - k);
    }
    CHECK(exact == doctest::Approx(0.4375).epsilon(1e-12));
}

TEST_CASE("edge flip monotonicity of connected_in") {
    auto region = build_ball_region(LatticeSpec::hypercubic(2), c2(0, 0), 3);
    auto ms = metric_sets(region, c2(0, 0), 0, 3);
    VertexSet origin(region);
    origin.add(static_cast<std::uint32_t>(region.index_of(c2(0, 0))));
    auto z = VertexSet::all(region);
    Workspace ws;
    for (int i = 0; i < 200; ++i) {
        auto cfg = sample_configuration(region, 0.4, 99, i);
        bool before = connected_in(cfg, origin, ms.sphere_n, z, ws);
        RngStream pick(5, i);
        auto e = pick.word(0) % region.edge_count();
        cfg.open_bits[e] = 1;
        bool after = connected_in(cfg, origin, ms.sphere_n, z, ws);
        if (before) CHECK(after);
    }
}

TEST_CASE("restriction monotonicity Z subset Z'") {
    auto region = build_ball_region(LatticeSpec::hypercubic(2), c2(0, 0), 3);
    auto ms = metric_sets(region, c2(0, 0), 0, 3);
    VertexSet origin(region);
    origin.add(static_cast<std::uint32_t>(region.index_of(c2(0, 0))));
    auto zbig = VertexSet::all(region);
    auto zsmall = ms.ball_n;  // = all here, so shrink it: drop shell 3
    zsmall.subtract(ms.sphere_n);
    zsmall.unite(origin);
    Workspace ws;
    VertexSet target = metric_sets(region, c2(0, 0), 2, 2).sphere_n;
    for (int i = 0; i < 200; ++i) {
        auto cfg = sample_configuration(region, 0.45, 7, i);
        if (connected_in(cfg, origin, target, zsmall, ws)) CHECK(connected_in(cfg, origin, target, zbig, ws));
    }
}

TEST_CASE("crossing cluster count") {
    auto region = build_ball_region(LatticeSpec::hypercubic(2), c2(0, 0), 2);
    auto ms = metric_sets(region, c2(0, 0), 1, 2);

    auto full = sample_configuration(region, 1.0, 0, 0);
    CHECK(crossing_cluster_count(full, ms.annulus, ms.sphere_m, ms.sphere_n) == 1);

    auto none = sample_configuration(region, 0.0, 0, 0);
    CHECK(crossing_cluster_count(none, ms.annulus, ms.sphere_m, ms.sphere_n) == 0);

    // exactly one open edge can never give two crossing clusters
    Configuration cfg = none;
    for (std::uint32_t e = 0; e < region.edge_count(); ++e) {
        auto [u, v] = region.edge(e);
        if (!ms.annulus.contains(u) || !ms.annulus.contains(v)) continue;
        std::fill(cfg.open_bits.begin(), cfg.open_bits.end(), 0);
        cfg.open_bits[e] = 1;
        CHECK(crossing_cluster_count(cfg, ms.annulus, ms.sphere_m, ms.sphere_n) <= 1);
    }
}

TEST_CASE("configuration text export is stable") {
    auto region = unit_square();
    auto cfg = sample_configuration(region, 0.5, 11, 3);
    auto text = configuration_to_text(cfg);
    CHECK(text.find("p 0.5 seed 11 index 3") != std::string::npos);
    CHECK(text.find(kRngVersion) != std::string::npos);
    // one line per edge with 0/1 bit
    int lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines == 2 + 4);
    CHECK(text == configuration_to_text(sample_configuration(region, 0.5, 11, 3)));
}
