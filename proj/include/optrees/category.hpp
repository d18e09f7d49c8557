#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace optrees {

// Explicit finite category.  Objects and morphisms are indices; identities
// occupy morphism ids 0..objects-1.  Composition is either a stored table or
// a callback (large categories compose on demand).
class FinCategory {
public:
    struct Morphism {
        int src;
        int tgt;
    };

    FinCategory() = default;

    int add_object(std::string name);
    // Adds a non-identity morphism and returns its id.
    int add_morphism(int src, int tgt, std::string name = {});

    int object_count() const { return static_cast<int>(object_names_.size()); }
    int morphism_count() const { return static_cast<int>(mors_.size()); }
    bool is_identity(int m) const { return m < object_count(); }
    int identity(int obj) const { return obj; }
    int src(int m) const { return mors_[m].src; }
    int tgt(int m) const { return mors_[m].tgt; }
    const std::string& object_name(int obj) const { return object_names_[obj]; }
    const std::string& morphism_name(int m) const { return mor_names_[m]; }

    // Composite of f: x -> y and g: y -> z, as a morphism id.
    int compose(int f, int g) const;

    // Non-identity morphisms from / into an object.
    const std::vector<int>& out_morphisms(int obj) const { return out_[obj]; }
    const std::vector<int>& in_morphisms(int obj) const { return in_[obj]; }
    std::vector<int> hom(int x, int y) const;  // including identities

    void set_compose_table(std::vector<int> table);  // dense m x m, -1 = not composable
    void set_compose_fn(std::function<int(int, int)> fn);

    // Checks the category axioms on all composable pairs/triples.  Intended
    // for small categories.
    std::optional<std::string> check_axioms() const;

    std::optional<int> find_object(const std::string& name) const;

private:
    std::vector<std::string> object_names_;
    std::vector<Morphism> mors_;  // identities first
    std::vector<std::string> mor_names_;
    std::vector<std::vector<int>> out_, in_;  // non-identity adjacency
    std::vector<int> compose_table_;
    std::function<int(int, int)> compose_fn_;
};

// A functor as explicit object/morphism maps.
struct Functor {
    const FinCategory* dom = nullptr;
    const FinCategory* cod = nullptr;
    std::vector<int> obj_map;
    std::vector<int> mor_map;

    std::optional<std::string> check() const;
};

bool is_poset(const FinCategory& c);
std::optional<int> find_terminal(const FinCategory& c);
std::optional<int> find_initial(const FinCategory& c);
// Connected components by zigzag closure; returns component index per object.
std::vector<int> components(const FinCategory& c);
int component_count(const FinCategory& c);

// Full subcategory of objects with F(x) = y and morphisms over id_y.
FinCategory fibre(const Functor& F, int y, std::vector<int>* object_index = nullptr);

// The lifting category of f1: y0 -> y1 over x1: objects are morphisms
// f: x -> x1 with F(f) = f1, morphisms are triangles over F_{y0}.
FinCategory lifting_category(const Functor& F, int f1, int x1,
                             std::vector<int>* object_as_morphism = nullptr);

// Isomorphism test used by the product-decomposition checks: a bijective
// functor between explicit categories found by exhaustive matching on names.
bool isomorphic_by_names(const FinCategory& a, const FinCategory& b);

// Product of two explicit categories (objects pairs, morphisms pairs).
FinCategory product(const FinCategory& a, const FinCategory& b);

}  // namespace optrees
