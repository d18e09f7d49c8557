#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace optrees {

struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Planar rooted tree with numbered leaves.
//
// Stored as a preorder code: entry -1 is a leaf, entry k >= 0 is a vertex
// with k children.  Leaves are implicitly numbered 1..n left to right;
// vertices are identified by their preorder index (root = 0).  Planar rooted
// trees are rigid, so structural equality of codes is isomorphism.
class PlanarTree {
public:
    // The edge tree: no vertices, one leaf.
    PlanarTree() : code_{-1} {}

    static PlanarTree edge() { return PlanarTree(); }
    static PlanarTree corolla(int arity);
    static PlanarTree vertex(const std::vector<PlanarTree>& children);
    static PlanarTree from_code(std::vector<int> code);

    const std::vector<int>& code() const { return code_; }

    bool is_edge() const { return code_.size() == 1 && code_[0] == -1; }
    int vertex_count() const;
    int leaf_count() const;

    // Number of children of the given preorder vertex.
    int arity(int vertex) const;
    // Position of the given vertex inside the code.
    std::size_t vertex_position(int vertex) const;
    // Preorder index of the parent vertex, or -1 for the root.
    int parent(int vertex) const;
    // Preorder indices of the vertex children of `vertex` (leaves skipped).
    std::vector<int> vertex_children(int vertex) const;
    // Subtree rooted at the given vertex.
    PlanarTree subtree(int vertex) const;
    // Subtrees hanging off the root vertex, in planar order (leaves included
    // as edge trees).  Requires a non-edge tree.
    std::vector<PlanarTree> root_subtrees() const;

    // Replace the `leaf`-th leaf (1-based) by `sub`.
    PlanarTree graft(int leaf, const PlanarTree& sub) const;

    // Operadic substitution: the vertex is replaced by `sub`, whose i-th
    // leaf receives the vertex's i-th child subtree.  Requires
    // leaves(sub) == arity(vertex).
    PlanarTree substitute(int vertex, const PlanarTree& sub) const;

    // Simultaneous substitution at every vertex.  inners.size() must equal
    // vertex_count() and leaves(inners[v]) == arity(v) for all v.  When
    // `provenance` is non-null it receives, for each vertex of the result in
    // preorder, the pair (outer vertex v, vertex index within inners[v]).
    PlanarTree substitute_all(const std::vector<PlanarTree>& inners,
                              std::vector<std::pair<int, int>>* provenance = nullptr) const;

    // Remove the subtree rooted at `vertex` together with its stem edge;
    // the parent loses that child slot.  The vertex must not be the root.
    PlanarTree erase_subtree(int vertex) const;
    // Remove a unary vertex, splicing its child into its place.  Works for
    // the root as well.
    PlanarTree splice_out(int vertex) const;
    // Merge `vertex` into its parent: the parent's child slot holding
    // `vertex` is replaced by the children of `vertex`.
    PlanarTree contract_edge(int vertex) const;

    auto operator<=>(const PlanarTree&) const = default;

private:
    std::vector<int> code_;
};

// Canonical bracket notation: "L", "*(L,L)", "*()", ...
std::string render(const PlanarTree& t, char label = '*');
// Parses canonical notation; only the unlabelled vertex symbol '*' is
// accepted here (labelled trees are parsed by the monad module).
PlanarTree parse_tree(const std::string& text);

// All planar trees with exactly `leaves` leaves and at most `max_vertices`
// vertices, each once, sorted by canonical encoding.
std::vector<PlanarTree> enumerate_trees(int leaves, int max_vertices);

// For each leaf and each nullary vertex, the root-to-that-point sequence of
// vertex indices, in planar order.  The union covers every vertex.
std::vector<std::vector<int>> paths(const PlanarTree& t);

struct tree_hash {
    std::size_t operator()(const PlanarTree& t) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : t.code()) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace optrees
