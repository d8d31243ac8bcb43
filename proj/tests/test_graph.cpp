#include "doctest.h"

#include <sstream>

#include "compactor/bstructure.hpp"
#include "compactor/errors.hpp"
#include "compactor/graph.hpp"
#include "testutil.hpp"

using namespace compactor;
using testutil::from_edges;

TEST_CASE("parse edge list") {
    std::vector<std::string> names;
    Graph p3 = parse_edge_list("a b\nb c", &names);
    CHECK(p3.n() == 3);
    CHECK(p3.m() == 2);
    CHECK(names == std::vector<std::string>{"a", "b", "c"});
    CHECK(p3.has_edge(0, 1));
    CHECK(p3.has_edge(1, 2));
    CHECK_FALSE(p3.has_edge(0, 2));

    Graph c3 = parse_edge_list("a b\nb c\nc a");
    CHECK(c3.n() == 3);
    CHECK(c3.m() == 3);

    CHECK_THROWS_AS(parse_edge_list("a a"), parse_error);
    CHECK_THROWS_AS(parse_edge_list("a b\nb a"), parse_error);
    CHECK_THROWS_AS(parse_edge_list("a b c"), parse_error);
    try {
        parse_edge_list("a b\nx y z");
    } catch (const parse_error& e) {
        CHECK(e.line_no == 2);
    }

    Graph with_comment = parse_edge_list("# header\na b\n\nlonely\n");
    CHECK(with_comment.n() == 3);  // a, b, lonely
    CHECK(with_comment.m() == 1);
}

TEST_CASE("boundary_of") {
    Graph p3 = from_edges("a b, b c");
    CHECK(boundary_of(p3, {0, 1}) == vset{1});
    CHECK(boundary_of(p3, p3.vertices()).empty());
    Graph c4 = from_edges("a b, b c, c d, d a");
    CHECK(boundary_of(c4, {0, 1}) == vset{0, 1});
    CHECK_THROWS_AS(boundary_of(p3, {7}), domain_error);
}

TEST_CASE("boundary is inside the set and sees outside") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = random_sparse(8, 12, rng);
        testutil::visit_subsets_of_size(g.vertices(), 3, [&](const vset& s) {
            vset bd = boundary_of(g, s);
            CHECK(vs::is_subset(bd, s));
            for (vertex_t v : bd) {
                bool outside = false;
                for (vertex_t w : g.neighbors(v)) outside = outside || !vs::contains(s, w);
                CHECK(outside);
            }
            return false;
        });
    }
}

TEST_CASE("neighborhood, components, induced") {
    Graph p3 = from_edges("a b, b c");
    CHECK(neighborhood(p3, {1}) == vset{0, 2});
    Graph p3d = from_edges("a b, b c, d");
    auto comps = connected_components(p3d);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == vset{0, 1, 2});
    CHECK(comps[1] == vset{3});
    Graph c4 = from_edges("a b, b c, c d, d a");
    Graph ind = c4.induced({0, 1, 2});
    CHECK(ind.n() == 3);
    CHECK(ind.m() == 2);
    CHECK(ind.has_edge(0, 1));
    CHECK(ind.has_edge(1, 2));
}

TEST_CASE("compatibility") {
    Graph c3 = from_edges("a b, b c, c a");
    BStructure x = make_bstructure(c3, {0, 1}, {0});
    BStructure y = make_bstructure(c3, {0, 1}, {0});
    CHECK(compatible(x, y));
    CHECK(compatible(x, x));  // reflexive
    CHECK(compatible(y, x));  // symmetric

    // boundary edge present vs absent
    Graph k2 = from_edges("a b");
    Graph e2 = parse_edge_list("a\nb\n");
    CHECK_FALSE(compatible(make_bstructure(k2, {0, 1}, {}), make_bstructure(e2, {0, 1}, {})));

    // annotated index sets differ
    CHECK_FALSE(compatible(make_bstructure(k2, {0, 1}, {0}), make_bstructure(k2, {0, 1}, {1})));
}

TEST_CASE("glue of two triangles sharing a boundary edge") {
    Graph c3 = from_edges("a b, b c, c a");
    BStructure x = make_bstructure(c3, {0, 1}, {});
    BStructure y = make_bstructure(c3, {0, 1}, {});
    GlueResult r = glue(x, y);
    CHECK(r.graph.n() == 4);  // K4 minus one edge
    CHECK(r.graph.m() == 5);
    CHECK(r.annotated.empty());
}

TEST_CASE("glue with empty-interior side leaves the graph unchanged") {
    Graph c3 = from_edges("a b, b c, c a");
    Graph just_edge = from_edges("a b");
    BStructure x = make_bstructure(c3, {0, 1}, {1, 2});
    BStructure y = make_bstructure(just_edge, {0, 1}, {1});
    GlueResult r = glue(x, y);
    CHECK(r.graph.n() == 3);
    CHECK(r.graph.m() == 3);
    CHECK(r.annotated == vset{1, 2});
    // boundary annotations that disagree are incompatible
    CHECK_THROWS_AS(glue(x, make_bstructure(just_edge, {0, 1}, {})), domain_error);
}

TEST_CASE("glue size arithmetic and commutativity up to isomorphism") {
    SplitMix64 rng(23);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Graph gx = random_sparse(1 + static_cast<int>(rng.below(5)), 6, rng);
        Graph gy = random_sparse(1 + static_cast<int>(rng.below(5)), 6, rng);
        int bsz = static_cast<int>(rng.below(std::min({gx.n(), gy.n(), 2}) + 1));
        vset bx, by;
        while (static_cast<int>(bx.size()) < bsz) bx = vs::unite(bx, {static_cast<vertex_t>(rng.below(gx.n()))});
        while (static_cast<int>(by.size()) < bsz) by = vs::unite(by, {static_cast<vertex_t>(rng.below(gy.n()))});
        BStructure x = make_bstructure(gx, bx, {});
        BStructure y = make_bstructure(gy, by, {});
        if (!compatible(x, y)) continue;
        ++checked;
        GlueResult xy = glue(x, y);
        GlueResult yx = glue(y, x);
        CHECK(xy.graph.n() == gx.n() + gy.n() - bsz);
        CHECK(testutil::isomorphic(xy.graph, yx.graph));
    }
    CHECK(checked > 20);
}

TEST_CASE("topological minor containment") {
    Graph k4 = complete_graph(4);
    CHECK(contains_topological_minor(k4, k4));
    CHECK_FALSE(contains_topological_minor(cycle_graph(6), k4));

    // K5 with every edge subdivided once still contains K5
    Graph k5 = complete_graph(5);
    std::vector<std::pair<vertex_t, vertex_t>> es;
    vset verts(5 + 10);
    for (int i = 0; i < 15; ++i) verts[i] = i;
    int mid = 5;
    for (auto [u, v] : k5.edges()) {
        es.emplace_back(u, mid);
        es.emplace_back(mid, v);
        ++mid;
    }
    Graph sub(verts, es);
    CHECK(contains_topological_minor(sub, k5));
    CHECK_FALSE(contains_topological_minor(sub, complete_graph(6)));

    CHECK_THROWS_AS(contains_topological_minor(complete_graph(7), complete_graph(7)),
                    unsupported_error);
}

TEST_CASE("induced rejects sets outside the vertex set") {
    Graph p3 = from_edges("a b, b c");
    CHECK_THROWS_AS(p3.induced({0, 9}), domain_error);
    CHECK_THROWS_AS(neighborhood(p3, {9}), domain_error);
}
