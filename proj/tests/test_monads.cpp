#include <set>

#include "doctest.h"
#include "optrees/monad.hpp"
#include "support/oracles.hpp"

using namespace optrees;

TEST_CASE("label order") {
    CHECK(label_leq(Label::A, Label::E));
    CHECK(label_leq(Label::E, Label::E));
    CHECK_FALSE(label_leq(Label::C, Label::D));
    CHECK_FALSE(label_leq(Label::A, Label::B));
    CHECK_FALSE(label_leq(Label::E, Label::A));
    CHECK(label_leq(Label::B, Label::C));
    CHECK(label_leq(Label::B, Label::D));
    CHECK(label_leq(Label::A, Label::C));
    CHECK(label_leq(Label::A, Label::D));
    CHECK(label_leq(Label::C, Label::E));
    CHECK(label_leq(Label::D, Label::E));

    // Partial order axioms over all 25 pairs (and transitivity triples).
    std::vector<Label> ls = {Label::A, Label::B, Label::C, Label::D, Label::E};
    for (Label a : ls)
        for (Label b : ls) {
            if (label_leq(a, b) && label_leq(b, a)) CHECK(a == b);
            for (Label c : ls)
                if (label_leq(a, b) && label_leq(b, c)) CHECK(label_leq(a, c));
        }
}

TEST_CASE("operation parse and render") {
    Operation op = parse_operation("A(C(L),D(L))@E");
    CHECK(op.target == Label::E);
    CHECK(op.labels == std::vector<Label>{Label::A, Label::C, Label::D});
    CHECK(render(op) == "A(C(L),D(L))@E");
    CHECK(op.colour() == Colour{Label::E, 2});
    CHECK_THROWS_AS(parse_operation("A(C(L)"), parse_error);
    CHECK_THROWS_AS(parse_operation("*(L)@E"), parse_error);
    CHECK(parse_operation("L@C").tree.is_edge());
}

TEST_CASE("admissibility of the line-and-point figure") {
    // The figure tree of the line-and-point definition: A's below, the line
    // reads C, E, D, D with B's above, plus one crossing A-B edge.
    Operation fig = parse_operation("A(A(C(L,L,B(L,L)),E(L,L),B()),A(D(L,L),D()))@E");
    CHECK(is_operation(MonadSpec::IBimodPointed, fig));
    CHECK(is_operation(MonadSpec::NOpBoxtimes, fig));
    CHECK(is_operation(MonadSpec::IBimodUnpointed, fig));
    CHECK_FALSE(is_operation(MonadSpec::NOp, fig));

    // Two cut vertices on one path.
    CHECK_FALSE(is_operation(MonadSpec::IBimodPointed, parse_operation("C(C(L))@C")));
    CHECK_FALSE(oracles::oracle_admissible(MonadSpec::IBimodPointed, parse_operation("C(C(L))@C")));
    // Cuts out of preorder order.
    CHECK_FALSE(is_operation(MonadSpec::IBimodPointed, parse_operation("A(D(L),C(L))@E")));
    CHECK(is_operation(MonadSpec::IBimodPointed, parse_operation("A(C(L),D(L))@E")));
    // Crossing edges are fine when pointed.
    CHECK(is_operation(MonadSpec::IBimodPointed, parse_operation("A(B(L))@E")));
    CHECK(is_operation(MonadSpec::BimodDiamond, parse_operation("A(B(L))@C")));
    // Unit corollas are admissible everywhere they type-check.
    for (MonadSpec s : all_specs()) {
        if (spec_is_ass(s)) continue;
        Operation corolla{PlanarTree::corolla(2), {Label::C}, Label::C};
        CHECK(is_operation(s, corolla));
    }
}

TEST_CASE("unpointed and SP variants") {
    // Pointed allows a target-E operation with no E vertex; unpointed does not.
    Operation no_e = parse_operation("A(C(L))@E");
    CHECK(is_operation(MonadSpec::IBimodPointed, no_e));
    CHECK_FALSE(is_operation(MonadSpec::IBimodUnpointed, no_e));
    CHECK(is_operation(MonadSpec::IBimodUnpointed, parse_operation("A(E(L))@E")));
    CHECK_FALSE(is_operation(MonadSpec::IBimodUnpointed, parse_operation("L@E")));
    CHECK(is_operation(MonadSpec::IBimodUnpointed, parse_operation("L@C")));

    // SP: E colours live in arities 0 and 1 only.
    CHECK(is_operation(MonadSpec::BimodSP, parse_operation("E(L)@E")));
    CHECK(is_operation(MonadSpec::BimodSP, parse_operation("E()@E")));
    CHECK_FALSE(is_operation(MonadSpec::BimodSP, parse_operation("E(L,L)@E")));
    CHECK(is_operation(MonadSpec::BimodSP, parse_operation("A(A(L),E())@E")));
    CHECK(is_operation(MonadSpec::BimodSP, parse_operation("A(E(),A(L))@E")));
    // Composite operations act through A only and keep the E vertex nullary.
    CHECK_FALSE(is_operation(MonadSpec::BimodSP, parse_operation("A(E(L))@E")));
    CHECK_FALSE(is_operation(MonadSpec::BimodSP, parse_operation("E(B(L))@E")));
    CHECK_FALSE(is_operation(MonadSpec::BimodSP, parse_operation("A(C(),E())@E")));
    // The non-E component is the pointed bimodule world, unchanged.
    CHECK(is_operation(MonadSpec::BimodSP, parse_operation("A(C(B(L)))@C")));
}

TEST_CASE("ass-forced representatives") {
    CHECK(normalize_ass(parse_operation("A(A(L,L),L)@C")) == parse_operation("A(L,L,L)@C"));
    CHECK(normalize_ass(parse_operation("C(L)@C")) == parse_operation("A(C(L))@C"));
    CHECK(normalize_ass(parse_operation("L@C")) == parse_operation("A(L)@C"));
    // Non-root unary A vertices are Ass units and disappear.
    CHECK(normalize_ass(parse_operation("A(C(A(B(L))))@C")) == parse_operation("A(C(B(L)))@C"));
    // Idempotent.
    for (const char* text : {"A(A(L,L),L)@C", "C(L)@C", "A(C(A(B(L))))@C", "E(L)@E"}) {
        Operation n = normalize_ass(parse_operation(text));
        CHECK(normalize_ass(n) == n);
    }

    CHECK(is_operation(MonadSpec::BimodDiamondAss, parse_operation("A(C(L))@C")));
    CHECK_FALSE(is_operation(MonadSpec::BimodDiamondAss, parse_operation("C(L)@C")));
    CHECK_FALSE(is_operation(MonadSpec::BimodDiamondAss, parse_operation("A(A(L))@A")));
    // The stripped representative may carry labels above the target; the
    // class member without the marker A decides.
    CHECK(is_operation(MonadSpec::BimodDiamondAss, parse_operation("A(B(L))@B")));
    CHECK(is_operation(MonadSpec::BimodSPAss, parse_operation("A(E(L))@E")));
    CHECK(is_operation(MonadSpec::BimodSPAss, parse_operation("A(E(),L)@E")));
    CHECK(is_operation(MonadSpec::BimodSPAss, parse_operation("A(L,E())@E")));
    CHECK_FALSE(is_operation(MonadSpec::IBimodUnpointedAss, parse_operation("A(L)@E")));
}

TEST_CASE("units") {
    Operation u = unit_op(MonadSpec::NOp, {Label::A, 3});
    CHECK(render(u) == "A(L,L,L)@A");
    CHECK(render(unit_op(MonadSpec::IBimodPointed, {Label::E, 0})) == "E()@E");
    CHECK_THROWS_AS(unit_op(MonadSpec::BimodSP, {Label::E, 2}), std::invalid_argument);
    CHECK(render(unit_op(MonadSpec::BimodSPAss, {Label::E, 1})) == "A(E(L))@E");
    CHECK(render(unit_op(MonadSpec::BimodDiamondAss, {Label::C, 2})) == "A(C(L,L))@C");
}

TEST_CASE("multiply") {
    MonadSpec s = MonadSpec::IBimodPointed;
    Operation op = parse_operation("A(C(L),D(L))@E");
    SUBCASE("unit insertions") {
        std::vector<Operation> units;
        for (int v = 0; v < 3; ++v)
            units.push_back(unit_op(s, {op.labels[v], op.tree.arity(v)}));
        CHECK(multiply(s, op, units) == op);
        CHECK(multiply(s, unit_op(s, op.colour()), {op}) == op);
    }
    SUBCASE("target mismatch throws") {
        CHECK_THROWS_AS(
            multiply(s, op, {unit_op(s, {Label::A, 2}), unit_op(s, {Label::D, 1}),
                             unit_op(s, {Label::D, 1})}),
            std::invalid_argument);
    }
    SUBCASE("inadmissible inner throws") {
        Operation bad = parse_operation("C(C(L))@C");
        CHECK_THROWS_AS(multiply(s, op, {unit_op(s, {Label::A, 2}), bad, unit_op(s, {Label::D, 1})}),
                        std::invalid_argument);
    }
}

TEST_CASE("the nested-tree morphism fixture") {
    // Outer shape and inner trees transcribed from the nested-tree picture;
    // flattening produces the 10-vertex, 7-leaf source tree.
    // The outer tree is a classifier object (no line condition on it); the
    // inner trees must satisfy the line-and-point condition.
    Operation outer = parse_operation("C(E(L,L,L,L,L),C(A(L,L)))@E");
    std::vector<Operation> inners = {
        parse_operation("A(C(L,B()),L)@C"),
        parse_operation("A(E(B(L,L),B(L)),D(B(L,L)))@E"),
        parse_operation("L@C"),
        parse_operation("A(L,L)@A"),
    };
    for (std::size_t v = 0; v < inners.size(); ++v)
        CHECK(is_operation(MonadSpec::IBimodPointed, inners[v]));
    Operation flat = multiply(MonadSpec::NOpBoxtimes, outer, inners);
    CHECK(render(flat) == "A(C(A(E(B(L,L),B(L)),D(B(L,L))),B()),A(L,L))@E");
    CHECK(flat.tree.vertex_count() == 10);
    CHECK(flat.tree.leaf_count() == 7);
    CHECK(is_operation(MonadSpec::NOpBoxtimes, flat));
}

TEST_CASE("enumerate_operations") {
    SUBCASE("boxtimes at (E,1) bound 1: edge tree plus five unary corollas") {
        const auto& ops = enumerate_operations(MonadSpec::NOpBoxtimes, {Label::E, 1}, 1);
        CHECK(ops.size() == 6);
        std::set<std::string> names;
        for (const auto& op : ops) names.insert(render(op));
        CHECK(names == std::set<std::string>{"A(L)@E", "B(L)@E", "C(L)@E", "D(L)@E", "E(L)@E",
                                             "L@E"});
    }
    SUBCASE("no operation yields two leaves from zero vertices") {
        for (MonadSpec s : all_specs())
            CHECK(enumerate_operations(s, {Label::C, 2}, 0).empty());
    }
    SUBCASE("the nine labellings of the two-vertex tree") {
        // Lemma 3.9 figure: label pairs (root, upper) admissible at target E.
        PlanarTree shape = parse_tree("*(L,*(L,L))");
        std::set<std::pair<char, char>> got;
        for (const auto& op : oracles::all_labellings(shape, Label::E))
            if (is_operation(MonadSpec::IBimodPointed, op))
                got.insert({label_char(op.labels[0]), label_char(op.labels[1])});
        std::set<std::pair<char, char>> expected = {{'A', 'A'}, {'A', 'C'}, {'A', 'E'},
                                                    {'A', 'D'}, {'A', 'B'}, {'C', 'B'},
                                                    {'E', 'B'}, {'D', 'B'}, {'B', 'B'}};
        CHECK(got == expected);
    }
}

TEST_CASE("path-word implementation agrees with the region-assignment oracle") {
    // Exhaustive at small size; the acceptance suite pushes this to 5 vertices.
    for (int leaves = 0; leaves <= 2; ++leaves) {
        for (const auto& shape : enumerate_trees(leaves, 3)) {
            for (int li = 0; li < 5; ++li) {
                Label target = static_cast<Label>(li);
                for (const auto& op : oracles::all_labellings(shape, target)) {
                    CHECK(is_operation(MonadSpec::IBimodPointed, op) ==
                          oracles::oracle_admissible(MonadSpec::IBimodPointed, op));
                    if (target != Label::E)
                        CHECK(is_operation(MonadSpec::BimodDiamond, op) ==
                              oracles::oracle_admissible(MonadSpec::BimodDiamond, op));
                }
            }
        }
    }
}

TEST_CASE("crown deletion preserves admissibility") {
    // Removing a maximal all-B subtree keeps the operation admissible.
    for (int leaves = 0; leaves <= 2; ++leaves) {
        for (const auto& shape : enumerate_trees(leaves, 3)) {
            for (const auto& op : oracles::all_labellings(shape, Label::E)) {
                if (!is_operation(MonadSpec::IBimodPointed, op)) continue;
                for (int v = 1; v < op.tree.vertex_count(); ++v) {
                    if (op.labels[v] != Label::B) continue;
                    if (op.labels[op.tree.parent(v)] == Label::B) continue;  // not maximal
                    // subtree(v) vertices are a contiguous preorder block
                    bool all_b = true;
                    int sz = op.tree.subtree(v).vertex_count();
                    for (int w = v; w < v + sz; ++w) all_b &= (op.labels[w] == Label::B);
                    if (!all_b) continue;
                    Operation cut{op.tree.erase_subtree(v), {}, op.target};
                    cut.labels = op.labels;
                    cut.labels.erase(cut.labels.begin() + v, cut.labels.begin() + v + sz);
                    CHECK(is_operation(MonadSpec::IBimodPointed, cut));
                }
            }
        }
    }
}

TEST_CASE("monad laws at small bounds") {
    for (MonadSpec s : {MonadSpec::NOp, MonadSpec::BimodDiamond, MonadSpec::IBimodPointed}) {
        auto rep = check_monad_laws(s, 2, 2);
        CHECK(rep.counterexamples.empty());
        CHECK(rep.unit_instances > 0);
        CHECK(rep.assoc_instances > 0);
    }
    // Ass-forced variants at a tiny bound.
    auto rep = check_monad_laws(MonadSpec::BimodDiamondAss, 2, 2);
    CHECK(rep.counterexamples.empty());
    auto rep2 = check_monad_laws(MonadSpec::BimodSPAss, 2, 2);
    CHECK(rep2.counterexamples.empty());
    // Degenerate bounds pass vacuously.
    auto rep0 = check_monad_laws(MonadSpec::NOp, 0, 0);
    CHECK(rep0.counterexamples.empty());
}
