#include <set>

#include "doctest.h"
#include "optrees/tree.hpp"
#include "support/oracles.hpp"

using namespace optrees;

TEST_CASE("parse and render canonical notation") {
    CHECK(render(parse_tree("L")) == "L");
    CHECK(render(parse_tree("*(L,L)")) == "*(L,L)");
    CHECK(render(parse_tree("*(L,*(L,L))")) == "*(L,*(L,L))");
    CHECK(render(parse_tree("*()")) == "*()");

    PlanarTree edge = parse_tree("L");
    CHECK(edge.is_edge());
    CHECK(edge.vertex_count() == 0);
    CHECK(edge.leaf_count() == 1);

    PlanarTree c2 = parse_tree("*(L,L)");
    CHECK(c2.vertex_count() == 1);
    CHECK(c2.leaf_count() == 2);

    PlanarTree t = parse_tree("*(L,*(L,L))");
    CHECK(t.vertex_count() == 2);
    CHECK(t.leaf_count() == 3);
    CHECK(t.arity(0) == 2);
    CHECK(t.arity(1) == 2);
    CHECK(t.parent(1) == 0);

    CHECK_THROWS_AS(parse_tree("*(L,"), parse_error);
    CHECK_THROWS_AS(parse_tree("A(L)"), parse_error);
    CHECK_THROWS_AS(parse_tree("*(L))"), parse_error);
    CHECK_THROWS_AS(parse_tree(""), parse_error);
}

TEST_CASE("round trip on every enumerated tree") {
    for (int leaves = 0; leaves <= 3; ++leaves)
        for (const auto& t : enumerate_trees(leaves, 3)) CHECK(parse_tree(render(t)) == t);
}

TEST_CASE("graft") {
    PlanarTree t = parse_tree("*(L,*(L,L))");
    CHECK(parse_tree("L").graft(1, t) == t);
    CHECK(parse_tree("*(L,L)").graft(2, parse_tree("*(L,L)")) == parse_tree("*(L,*(L,L))"));

    PlanarTree g = parse_tree("*(L,*(L,L))").graft(3, parse_tree("*(L)"));
    CHECK(g == parse_tree("*(L,*(L,*(L)))"));
    CHECK(g.leaf_count() == 3);
    CHECK(g.vertex_count() == 3);

    CHECK_THROWS_AS(parse_tree("*(L,L)").graft(3, t), std::out_of_range);
    CHECK_THROWS_AS(parse_tree("*(L,L)").graft(0, t), std::out_of_range);
}

TEST_CASE("grafts at disjoint leaves commute up to the index shift") {
    PlanarTree host = parse_tree("*(L,L,L)");
    PlanarTree a = parse_tree("*(L,L)");
    PlanarTree b = parse_tree("*()");
    // Graft a at leaf 1 and b at leaf 3; in the other order leaf 3 becomes
    // leaf 4 after a grows the leaf count by one.
    PlanarTree lhs = host.graft(1, a).graft(4, b);
    PlanarTree rhs = host.graft(3, b).graft(1, a);
    CHECK(lhs == rhs);
}

TEST_CASE("substitute") {
    PlanarTree t = parse_tree("*(L,*(L,L))");
    SUBCASE("corolla is the unit") {
        for (int v = 0; v < t.vertex_count(); ++v)
            CHECK(t.substitute(v, PlanarTree::corolla(t.arity(v))) == t);
    }
    SUBCASE("root substitution with bare leaf children") {
        CHECK(parse_tree("*(L,L)").substitute(0, parse_tree("*(L,*(L))")) ==
              parse_tree("*(L,*(L))"));
    }
    SUBCASE("hand insertion") {
        CHECK(t.substitute(1, parse_tree("*(*(L),L)")) == parse_tree("*(L,*(*(L),L))"));
    }
    SUBCASE("vertex count bookkeeping") {
        PlanarTree sub = parse_tree("*(*(L),L)");
        PlanarTree r = t.substitute(1, sub);
        CHECK(r.vertex_count() == t.vertex_count() - 1 + sub.vertex_count());
    }
    SUBCASE("arity mismatch throws") {
        CHECK_THROWS_AS(t.substitute(1, parse_tree("*(L)")), std::invalid_argument);
    }
    SUBCASE("nested substitution is associative") {
        // Substituting at v then inside the image equals the flattened step.
        PlanarTree sub = parse_tree("*(L,*(L))");
        PlanarTree deep = parse_tree("*(*(),L)");
        PlanarTree staged = t.substitute(1, sub.substitute(1, deep));
        std::vector<std::pair<int, int>> prov;
        PlanarTree once = t.substitute(1, sub);
        // sub's vertex 1 lands at preorder index 2 of `once`.
        PlanarTree flat = once.substitute(2, deep);
        CHECK(staged == flat);
    }
}

TEST_CASE("enumerate_trees matches the brute-force generator") {
    CHECK(render(enumerate_trees(1, 0).at(0)) == "L");
    CHECK(enumerate_trees(1, 0).size() == 1);
    REQUIRE(enumerate_trees(0, 1).size() == 1);
    CHECK(render(enumerate_trees(0, 1).at(0)) == "*()");
    CHECK(enumerate_trees(2, 0).empty());

    for (int leaves = 0; leaves <= 3; ++leaves) {
        for (int bound = 0; bound <= 3; ++bound) {
            auto fast = enumerate_trees(leaves, bound);
            auto brute = oracles::brute_force_trees(leaves, bound);
            CHECK(fast == brute);
            std::set<PlanarTree> uniq(fast.begin(), fast.end());
            CHECK(uniq.size() == fast.size());
        }
    }
}

TEST_CASE("enumerate_trees frozen fixture for (2,2)") {
    std::vector<std::string> got;
    for (const auto& t : enumerate_trees(2, 2)) got.push_back(render(t));
    // Computed by the brute-force generator before the main implementation.
    std::vector<std::string> expected = {"*(*(),L,L)", "*(*(L),L)", "*(*(L,L))", "*(L,*(),L)",
                                         "*(L,*(L))",  "*(L,L)",    "*(L,L,*())"};
    CHECK(got == expected);
}

TEST_CASE("paths") {
    CHECK(paths(parse_tree("L")) == std::vector<std::vector<int>>{{}});
    CHECK(paths(parse_tree("*(L,L)")) == std::vector<std::vector<int>>{{0}, {0}});
    CHECK(paths(parse_tree("*(L,*(L,L))")) == std::vector<std::vector<int>>{{0}, {0, 1}, {0, 1}});
    // Nullary vertices terminate a path of their own.
    CHECK(paths(parse_tree("*(*(),L)")) == std::vector<std::vector<int>>{{0, 1}, {0}});

    for (int leaves = 0; leaves <= 3; ++leaves) {
        for (const auto& t : enumerate_trees(leaves, 3)) {
            std::set<int> covered;
            for (const auto& p : paths(t)) covered.insert(p.begin(), p.end());
            CHECK(static_cast<int>(covered.size()) == t.vertex_count());
        }
    }
}

TEST_CASE("erase, splice and contract") {
    PlanarTree t = parse_tree("*(L,*(L,L))");
    CHECK(t.erase_subtree(1) == parse_tree("*(L)"));
    CHECK(parse_tree("*(*(L,L))").splice_out(0) == parse_tree("*(L,L)"));
    CHECK(parse_tree("*(L,*(L,L))").contract_edge(1) == parse_tree("*(L,L,L)"));
    CHECK(parse_tree("*(*(),L)").contract_edge(1) == parse_tree("*(L)"));
}
