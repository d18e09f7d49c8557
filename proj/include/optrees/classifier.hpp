#pragma once

#include <unordered_map>

#include "optrees/category.hpp"
#include "optrees/monad.hpp"

namespace optrees {

// A morphism of polynomial monads, identity on the shared colours and
// inclusion on operation sets.
struct MonadMorphism {
    MonadSpec source;
    MonadSpec target;

    // Verifies that source-admissible operations are target-admissible over
    // all supported colours with arity <= arity_bound and operations with at
    // most vertex_bound vertices.  Throws on failure.
    void verify_inclusion(int arity_bound, int vertex_bound) const;
};

// One classifier morphism: an outer operation with an inner operation per
// outer vertex.  Inner trees are source-spec admissible with target label
// l_v; the source of the morphism is the flatten, the target is the outer.
struct Nesting {
    Operation outer;
    std::vector<Operation> inner;

    auto operator<=>(const Nesting&) const = default;
};

std::string render(const Nesting& n);
Operation flatten(const MonadMorphism& m, const Nesting& n);
inline const Operation& outer_shape(const Nesting& n) { return n.outer; }
bool valid_nesting(const MonadMorphism& m, const Nesting& n);
Nesting identity_nesting(const MonadMorphism& m, const Operation& op);
Nesting compose_nestings(const MonadMorphism& m, const Nesting& f, const Nesting& g);

// All nestings with outer_shape = target and flatten = source.
std::vector<Nesting> enumerate_nestings(const MonadMorphism& m, const Operation& source,
                                        const Operation& target);

// The truncated classifier T^S at a colour: objects are target-spec
// operations with at most `bound` vertices whose vertex colours lie in the
// source's colour set; morphisms are all nestings between retained objects.
class Classifier {
public:
    Classifier(MonadMorphism m, Colour colour, int bound);

    const FinCategory& cat() const { return cat_; }
    const MonadMorphism& morphism() const { return morphism_; }
    Colour colour() const { return colour_; }
    int bound() const { return bound_; }

    const Operation& object(int id) const { return objects_[id]; }
    const std::vector<Operation>& objects() const { return objects_; }
    bool is_identity_morphism(int mor) const { return mor < cat_.object_count(); }
    const Nesting& nesting(int mor) const { return nestings_.at(mor - cat_.object_count()); }
    std::optional<int> object_id(const Operation& op) const;
    std::optional<int> morphism_id(const Nesting& n) const;
    // Morphism id of a nesting, treating the identity nesting as the identity.
    int morphism_id_or_identity(const Nesting& n) const;

private:
    MonadMorphism morphism_;
    Colour colour_;
    int bound_;
    std::vector<Operation> objects_;
    std::vector<Nesting> nestings_;
    std::unordered_map<Operation, int, op_hash> object_ids_;
    std::unordered_map<std::string, int> nesting_ids_;
    FinCategory cat_;
};

// The label-forgetting comparison functor into the absolute NOp classifier
// at the same colour (rendered with every label equal to the target label).
struct ForgetLabels {
    ForgetLabels(const Classifier& dom);
    Classifier codomain;
    Functor functor;  // set up after codomain is built

    static Operation strip(const Operation& op);
    static Nesting strip(const Nesting& n);
};

// chi(l, T): the poset of line-and-point admissible labellings of the
// vertices of T with target l, ordered vertexwise.  Leaves of T are
// irrelevant to it.
struct ChiCategory {
    PlanarTree tree;
    Label target;
    std::vector<std::vector<Label>> labellings;
    FinCategory cat;

    std::optional<int> index_of(const std::vector<Label>& labelling) const;
};

ChiCategory chi(Label l, const PlanarTree& T);
ChiCategory chi_A(Label l, const PlanarTree& T);  // root labelled A
ChiCategory chi_B(Label l, const PlanarTree& T);  // all non-root labels B
ChiCategory chi_C(const PlanarTree& T);           // in chi_A(E,T): T1 through A,B,C
ChiCategory chi_D(const PlanarTree& T);           // in chi_A(E,T): T2..Tk through A,B,D

struct ChiRecursionReport {
    int trees_checked = 0;
    int isos_checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Verifies, for every skeleton with at most max_vertices vertices and every
// target label, the union/intersection structure and the constructed product
// isomorphisms of the chi subcategories.
ChiRecursionReport check_chi_recursion(int max_vertices);

}  // namespace optrees
