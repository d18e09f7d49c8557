#include "optrees/category.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace optrees {

int FinCategory::add_object(std::string name) {
    if (morphism_count() > object_count())
        throw std::logic_error("add all objects before non-identity morphisms");
    int id = object_count();
    object_names_.push_back(std::move(name));
    mors_.push_back({id, id});
    mor_names_.push_back("id");
    out_.emplace_back();
    in_.emplace_back();
    return id;
}

int FinCategory::add_morphism(int src, int tgt, std::string name) {
    int id = morphism_count();
    mors_.push_back({src, tgt});
    mor_names_.push_back(std::move(name));
    out_[src].push_back(id);
    in_[tgt].push_back(id);
    return id;
}

int FinCategory::compose(int f, int g) const {
    if (tgt(f) != src(g)) throw std::invalid_argument("compose: morphisms not composable");
    if (is_identity(f)) return g;
    if (is_identity(g)) return f;
    if (!compose_table_.empty()) {
        int m = morphism_count();
        int r = compose_table_[static_cast<std::size_t>(f) * m + g];
        if (r < 0) throw std::logic_error("compose: missing table entry");
        return r;
    }
    if (compose_fn_) return compose_fn_(f, g);
    throw std::logic_error("compose: no composition data");
}

std::vector<int> FinCategory::hom(int x, int y) const {
    std::vector<int> out;
    if (x == y) out.push_back(identity(x));
    for (int m : out_[x])
        if (tgt(m) == y) out.push_back(m);
    return out;
}

void FinCategory::set_compose_table(std::vector<int> table) { compose_table_ = std::move(table); }
void FinCategory::set_compose_fn(std::function<int(int, int)> fn) { compose_fn_ = std::move(fn); }

std::optional<std::string> FinCategory::check_axioms() const {
    int m = morphism_count();
    for (int f = 0; f < m; ++f) {
        if (compose(identity(src(f)), f) != f || compose(f, identity(tgt(f))) != f)
            return "identity law fails at morphism " + std::to_string(f);
    }
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            if (tgt(f) != src(g)) continue;
            int fg = compose(f, g);
            if (src(fg) != src(f) || tgt(fg) != tgt(g))
                return "composite endpoints wrong for (" + std::to_string(f) + "," +
                       std::to_string(g) + ")";
            for (int h = 0; h < m; ++h) {
                if (tgt(g) != src(h)) continue;
                if (compose(fg, h) != compose(f, compose(g, h)))
                    return "associativity fails at (" + std::to_string(f) + "," +
                           std::to_string(g) + "," + std::to_string(h) + ")";
            }
        }
    return std::nullopt;
}

std::optional<int> FinCategory::find_object(const std::string& name) const {
    for (int i = 0; i < object_count(); ++i)
        if (object_names_[i] == name) return i;
    return std::nullopt;
}

std::optional<std::string> Functor::check() const {
    if (!dom || !cod) return "unset categories";
    for (int x = 0; x < dom->object_count(); ++x)
        if (mor_map[dom->identity(x)] != cod->identity(obj_map[x]))
            return "identity not preserved at object " + std::to_string(x);
    for (int f = 0; f < dom->morphism_count(); ++f) {
        if (cod->src(mor_map[f]) != obj_map[dom->src(f)] ||
            cod->tgt(mor_map[f]) != obj_map[dom->tgt(f)])
            return "endpoints not preserved at morphism " + std::to_string(f);
        for (int g = 0; g < dom->morphism_count(); ++g) {
            if (dom->tgt(f) != dom->src(g)) continue;
            if (mor_map[dom->compose(f, g)] != cod->compose(mor_map[f], mor_map[g]))
                return "composition not preserved at (" + std::to_string(f) + "," +
                       std::to_string(g) + ")";
        }
    }
    return std::nullopt;
}

bool is_poset(const FinCategory& c) {
    for (int x = 0; x < c.object_count(); ++x) {
        std::set<int> targets;
        for (int m : c.out_morphisms(x)) {
            if (c.tgt(m) == x) return false;  // non-identity endomorphism
            if (!targets.insert(c.tgt(m)).second) return false;
        }
        for (int m : c.out_morphisms(x))
            for (int back : c.out_morphisms(c.tgt(m)))
                if (c.tgt(back) == x) return false;  // antisymmetry
    }
    return true;
}

std::optional<int> find_terminal(const FinCategory& c) {
    for (int t = 0; t < c.object_count(); ++t) {
        bool ok = true;
        for (int x = 0; x < c.object_count() && ok; ++x) ok = c.hom(x, t).size() == 1;
        if (ok) return t;
    }
    return std::nullopt;
}

std::optional<int> find_initial(const FinCategory& c) {
    for (int i = 0; i < c.object_count(); ++i) {
        bool ok = true;
        for (int x = 0; x < c.object_count() && ok; ++x) ok = c.hom(i, x).size() == 1;
        if (ok) return i;
    }
    return std::nullopt;
}

std::vector<int> components(const FinCategory& c) {
    std::vector<int> parent(c.object_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int m = c.object_count(); m < c.morphism_count(); ++m)
        parent[find(c.src(m))] = find(c.tgt(m));
    std::vector<int> out(c.object_count());
    std::map<int, int> renumber;
    for (int x = 0; x < c.object_count(); ++x) {
        int r = find(x);
        out[x] = renumber.emplace(r, static_cast<int>(renumber.size())).first->second;
    }
    return out;
}

int component_count(const FinCategory& c) {
    auto comp = components(c);
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

FinCategory fibre(const Functor& F, int y, std::vector<int>* object_index) {
    FinCategory out;
    std::vector<int> objs;
    std::vector<int> back(F.dom->object_count(), -1);
    for (int x = 0; x < F.dom->object_count(); ++x) {
        if (F.obj_map[x] == y) {
            back[x] = out.add_object(F.dom->object_name(x));
            objs.push_back(x);
        }
    }
    std::vector<int> new_to_old(out.object_count(), -1);
    std::map<int, int> old_to_new;
    for (int m = F.dom->object_count(); m < F.dom->morphism_count(); ++m) {
        if (F.mor_map[m] != F.cod->identity(y)) continue;
        if (back[F.dom->src(m)] < 0 || back[F.dom->tgt(m)] < 0) continue;
        int id = out.add_morphism(back[F.dom->src(m)], back[F.dom->tgt(m)],
                                  F.dom->morphism_name(m));
        new_to_old.resize(id + 1, -1);
        new_to_old[id] = m;
        old_to_new[m] = id;
    }
    const FinCategory* dom = F.dom;
    int nobj = out.object_count();
    out.set_compose_fn(
        [dom, old_to_new, new_to_old, objs, back, nobj](int f, int g) -> int {
            int of = f < nobj ? dom->identity(objs[f]) : new_to_old[f];
            int og = g < nobj ? dom->identity(objs[g]) : new_to_old[g];
            int c = dom->compose(of, og);
            if (dom->is_identity(c)) return back[dom->src(c)];
            auto it = old_to_new.find(c);
            if (it == old_to_new.end())
                throw std::logic_error("fibre: composite escapes the fibre");
            return it->second;
        });
    if (object_index) *object_index = objs;
    return out;
}

FinCategory lifting_category(const Functor& F, int f1, int x1,
                             std::vector<int>* object_as_morphism) {
    if (F.cod->tgt(f1) != F.obj_map[x1])
        throw std::invalid_argument("lifting_category: x1 does not sit over the target of f1");
    int y0 = F.cod->src(f1);
    FinCategory out;
    std::vector<int> obj_mor;  // the morphism f: x -> x1 behind each object
    for (int m = 0; m < F.dom->morphism_count(); ++m) {
        if (F.dom->tgt(m) != x1) continue;
        if (F.dom->is_identity(m) && F.dom->src(m) != x1) continue;
        if (F.mor_map[m] != f1) continue;
        obj_mor.push_back(m);
        out.add_object(F.dom->object_name(F.dom->src(m)) + "#" + std::to_string(m));
    }
    std::vector<int> gs;  // underlying domain morphism per triangle
    for (std::size_t a = 0; a < obj_mor.size(); ++a) {
        for (std::size_t b = 0; b < obj_mor.size(); ++b) {
            int fa = obj_mor[a], fb = obj_mor[b];
            int xa = F.dom->src(fa), xb = F.dom->src(fb);
            for (int g : F.dom->hom(xa, xb)) {
                if (F.mor_map[g] != F.cod->identity(y0)) continue;
                if (F.dom->compose(g, fb) != fa) continue;
                if (a == b && F.dom->is_identity(g)) continue;
                out.add_morphism(static_cast<int>(a), static_cast<int>(b));
                gs.push_back(g);
            }
        }
    }
    const FinCategory* dom = F.dom;
    int nobj = out.object_count();
    auto mors = std::make_shared<std::vector<FinCategory::Morphism>>();
    for (int m = nobj; m < out.morphism_count(); ++m)
        mors->push_back({out.src(m), out.tgt(m)});
    std::vector<int> obj_src(nobj);
    for (int o = 0; o < nobj; ++o) obj_src[o] = dom->src(obj_mor[o]);
    out.set_compose_fn([dom, gs, nobj, obj_src, mors](int f, int g) -> int {
        int gf = f < nobj ? dom->identity(obj_src[f]) : gs[f - nobj];
        int gg = g < nobj ? dom->identity(obj_src[g]) : gs[g - nobj];
        int c = dom->compose(gf, gg);
        int sobj = f < nobj ? f : (*mors)[f - nobj].src;
        int tobj = g < nobj ? g : (*mors)[g - nobj].tgt;
        if (dom->is_identity(c) && sobj == tobj) return sobj;
        for (std::size_t m = 0; m < mors->size(); ++m)
            if ((*mors)[m].src == sobj && (*mors)[m].tgt == tobj && gs[m] == c)
                return nobj + static_cast<int>(m);
        throw std::logic_error("lifting_category: composite triangle not found");
    });
    if (object_as_morphism) *object_as_morphism = obj_mor;
    return out;
}

bool isomorphic_by_names(const FinCategory& a, const FinCategory& b) {
    if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count())
        return false;
    std::map<std::string, int> names;
    for (int i = 0; i < b.object_count(); ++i) names[b.object_name(i)] = i;
    if (static_cast<int>(names.size()) != b.object_count()) return false;
    std::vector<int> map(a.object_count());
    for (int i = 0; i < a.object_count(); ++i) {
        auto it = names.find(a.object_name(i));
        if (it == names.end()) return false;
        map[i] = it->second;
    }
    // Hom-set cardinalities decide for thin categories; both sides of every
    // decomposition checked this way are posets.
    for (int x = 0; x < a.object_count(); ++x)
        for (int y = 0; y < a.object_count(); ++y)
            if (a.hom(x, y).size() != b.hom(map[x], map[y]).size()) return false;
    return true;
}

FinCategory product(const FinCategory& a, const FinCategory& b) {
    FinCategory out;
    auto oid = [&](int i, int j) { return i * b.object_count() + j; };
    for (int i = 0; i < a.object_count(); ++i)
        for (int j = 0; j < b.object_count(); ++j)
            out.add_object("(" + a.object_name(i) + "|" + b.object_name(j) + ")");
    auto pairs = std::make_shared<std::vector<std::pair<int, int>>>();
    for (int f = 0; f < a.morphism_count(); ++f)
        for (int g = 0; g < b.morphism_count(); ++g) {
            if (a.is_identity(f) && b.is_identity(g)) continue;
            out.add_morphism(oid(a.src(f), b.src(g)), oid(a.tgt(f), b.tgt(g)));
            pairs->emplace_back(f, g);
        }
    const FinCategory* pa = &a;
    const FinCategory* pb = &b;
    int nobj = out.object_count();
    out.set_compose_fn([pa, pb, pairs, nobj, oid](int f, int g) -> int {
        auto part = [&](int m) {
            return m < nobj ? std::make_pair(pa->identity(m / pb->object_count()),
                                             pb->identity(m % pb->object_count()))
                            : (*pairs)[m - nobj];
        };
        auto [fa, fb] = part(f);
        auto [ga, gb] = part(g);
        int ca = pa->compose(fa, ga), cb = pb->compose(fb, gb);
        if (pa->is_identity(ca) && pb->is_identity(cb)) return oid(ca, cb);
        for (std::size_t m = 0; m < pairs->size(); ++m)
            if ((*pairs)[m] == std::make_pair(ca, cb)) return nobj + static_cast<int>(m);
        throw std::logic_error("product: composite not found");
    });
    return out;
}

}  // namespace optrees
