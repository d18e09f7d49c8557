#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optrees/tree.hpp"

namespace optrees {

enum class Label : uint8_t { A = 0, B = 1, C = 2, D = 3, E = 4 };

// The partial order generated by A,B <= C,D <= E (A,B and C,D incomparable).
bool label_leq(Label a, Label b);
char label_char(Label l);
std::optional<Label> label_from_char(char c);

struct Colour {
    Label label;
    int arity;
    auto operator<=>(const Colour&) const = default;
};
std::string to_string(const Colour& c);

// One element of a tree monad's operation set: a labelled planar tree with a
// target label.  Every vertex label must satisfy l_v <= target.
struct Operation {
    PlanarTree tree;
    std::vector<Label> labels;  // one per vertex, preorder
    Label target = Label::E;

    Colour colour() const { return {target, tree.leaf_count()}; }
    auto operator<=>(const Operation&) const = default;
};

std::string render(const Operation& op);
// Parses "A(C(L),D(L))@E".  '*' vertices are rejected here.
Operation parse_operation(const std::string& text);

struct op_hash {
    std::size_t operator()(const Operation& op) const {
        std::size_t h = tree_hash{}(op.tree);
        for (Label l : op.labels) h = h * 31 + static_cast<std::size_t>(l);
        return h * 31 + static_cast<std::size_t>(op.target);
    }
};

// The tree-substitution polynomial monads of the five-label family.
enum class MonadSpec {
    NOp,            // all vertex labels equal the target
    NOpSquare,      // labels {A,B,C,D}, only l_v <= target
    NOpBoxtimes,    // only l_v <= target
    BimodDiamond,   // labels {A,B,C,D}, line condition (pointed bimodules)
    IBimodPointed,  // full line-and-point condition
    IBimodUnpointed,  // target-E operations need exactly one E vertex
    BimodSP,          // E part restricted to arities 0/1, A-only around the E
    BimodDiamondAss,
    IBimodPointedAss,
    IBimodUnpointedAss,
    BimodSPAss,
};

const std::vector<MonadSpec>& all_specs();
std::string spec_name(MonadSpec s);
std::optional<MonadSpec> spec_from_name(const std::string& name);
bool spec_is_ass(MonadSpec s);
MonadSpec spec_base(MonadSpec s);  // strips the Ass forcing

// Whether (l, n) is a colour of the spec's polynomial.
bool colour_supported(MonadSpec s, Colour c);

// Admissibility predicate defining the monad's operation set.
bool is_operation(MonadSpec s, const Operation& op);
// Reason for rejection, or nullopt when admissible.
std::optional<std::string> validate_operation(MonadSpec s, const Operation& op);

// Contracts A-A edges and guarantees a unique root A vertex (inserting a
// unary one when no A vertex exists).  Representative map for the Ass-forced
// monads; idempotent.
Operation normalize_ass(const Operation& op);

// Monad unit at a colour.  Throws when the spec has no unit there (for the
// Ass-forced specs this is the normalized corolla).
Operation unit_op(MonadSpec s, Colour c);

// Monad multiplication: simultaneous insertion of inners[v] into vertex v.
// Preconditions: inners[v] admissible with colour (l_v, arity(v)).
Operation multiply(MonadSpec s, const Operation& outer, const std::vector<Operation>& inners);

// Simultaneous insertion without admissibility checks or Ass-normalization.
// `provenance`, when given, maps each result vertex to (outer vertex, vertex
// within the inserted operation).
Operation multiply_raw(const Operation& outer, const std::vector<Operation>& inners,
                       std::vector<std::pair<int, int>>* provenance = nullptr);

// All admissible operations with the given output colour and at most
// max_vertices vertices, in canonical order.  Memoized.
const std::vector<Operation>& enumerate_operations(MonadSpec s, Colour c, int max_vertices);

struct LawReport {
    long long unit_instances = 0;
    long long assoc_instances = 0;
    long long closure_instances = 0;
    std::vector<std::string> counterexamples;
    bool ok() const { return counterexamples.empty(); }
};

// Exhaustively checks unit laws, associativity (two-stage vs flattened, and
// simultaneous vs iterated substitution) and closure of admissibility under
// multiply, over enumerated operations within the bounds.
LawReport check_monad_laws(MonadSpec s, int leaf_bound, int vertex_bound);

}  // namespace optrees
