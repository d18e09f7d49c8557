#include <omp.h>

#include <algorithm>

#include "optrees/parallel.hpp"
#include "optrees/smooth.hpp"

namespace optrees {

namespace {

// Co-lifting category of f1: y0 -> y1 under x0: objects are morphisms
// f: x0 -> x with F(f) = f1, morphisms are triangles with g in the fibre
// over y1.
FinCategory colifting_category(const Functor& F, int f1, int x0) {
    if (F.cod->src(f1) != F.obj_map[x0])
        throw std::invalid_argument("colifting: x0 does not sit over the source of f1");
    int y1 = F.cod->tgt(f1);
    FinCategory out;
    std::vector<int> obj_mor;
    for (int m = 0; m < F.dom->morphism_count(); ++m) {
        if (F.dom->src(m) != x0) continue;
        if (F.dom->is_identity(m) && F.dom->src(m) != x0) continue;
        if (F.mor_map[m] != f1) continue;
        obj_mor.push_back(m);
        out.add_object(F.dom->object_name(F.dom->tgt(m)) + "#" + std::to_string(m));
    }
    for (std::size_t a = 0; a < obj_mor.size(); ++a)
        for (std::size_t b = 0; b < obj_mor.size(); ++b) {
            int fa = obj_mor[a], fb = obj_mor[b];
            for (int g : F.dom->hom(F.dom->tgt(fa), F.dom->tgt(fb))) {
                if (F.mor_map[g] != F.cod->identity(y1)) continue;
                if (F.dom->compose(fa, g) != fb) continue;
                if (a == b && F.dom->is_identity(g)) continue;
                out.add_morphism(static_cast<int>(a), static_cast<int>(b));
            }
        }
    // Composition table by brute force; co-lifting categories stay small.
    int nm = out.morphism_count();
    std::vector<int> table(static_cast<std::size_t>(nm) * nm, -1);
    // Identify each morphism by its underlying triangle morphism.
    std::vector<int> gs(nm, -1);
    {
        int id = out.object_count();
        for (std::size_t a = 0; a < obj_mor.size(); ++a)
            for (std::size_t b = 0; b < obj_mor.size(); ++b) {
                int fa = obj_mor[a], fb = obj_mor[b];
                for (int g : F.dom->hom(F.dom->tgt(fa), F.dom->tgt(fb))) {
                    if (F.mor_map[g] != F.cod->identity(y1)) continue;
                    if (F.dom->compose(fa, g) != fb) continue;
                    if (a == b && F.dom->is_identity(g)) continue;
                    gs[id++] = g;
                }
            }
    }
    for (int f = 0; f < nm; ++f)
        for (int g = 0; g < nm; ++g) {
            if (out.tgt(f) != out.src(g)) continue;
            int gf = f < out.object_count() ? F.dom->identity(F.dom->tgt(obj_mor[f])) : gs[f];
            int gg = g < out.object_count() ? F.dom->identity(F.dom->tgt(obj_mor[g])) : gs[g];
            int c = F.dom->compose(gf, gg);
            int res = -1;
            if (F.dom->is_identity(c) && out.src(f) == out.tgt(g)) {
                res = out.src(f);
            } else {
                for (int m = out.object_count(); m < nm; ++m)
                    if (out.src(m) == out.src(f) && out.tgt(m) == out.tgt(g) && gs[m] == c) res = m;
            }
            table[static_cast<std::size_t>(f) * nm + g] = res;
        }
    out.set_compose_table(std::move(table));
    return out;
}

SmoothReport run_lifting_sweep(const Functor& F, int max_dim, bool dual) {
    SmoothReport rep;
    struct Item {
        int f1, x;
    };
    std::vector<Item> items;
    for (int f1 = 0; f1 < F.cod->morphism_count(); ++f1) {
        for (int x = 0; x < static_cast<int>(F.obj_map.size()); ++x) {
            if (!dual && F.obj_map[x] == F.cod->tgt(f1)) items.push_back({f1, x});
            if (dual && F.obj_map[x] == F.cod->src(f1)) items.push_back({f1, x});
        }
    }
    rep.lifting_categories = static_cast<long long>(items.size());
    std::vector<std::string> fails;
    bool par = parallel_enabled();
#pragma omp parallel for schedule(dynamic) if (par)
    for (std::size_t i = 0; i < items.size(); ++i) {
        FinCategory lc = dual ? colifting_category(F, items[i].f1, items[i].x)
                              : lifting_category(F, items[i].f1, items[i].x);
        HomologyReport h = homology_of_category(lc, max_dim);
        if (!h.acyclic_through(max_dim)) {
            std::string what = "f1=" + std::to_string(items[i].f1) +
                               " x=" + F.dom->object_name(items[i].x) + ": " + h.summary();
#pragma omp critical
            fails.push_back(what);
        }
    }
    std::sort(fails.begin(), fails.end());
    if (fails.size() > 16) fails.resize(16);
    rep.failures = std::move(fails);
    rep.smooth = rep.failures.empty();
    return rep;
}

}  // namespace

SmoothReport check_smooth(const Functor& F, int max_dim) {
    return run_lifting_sweep(F, max_dim, false);
}

SmoothReport check_proper(const Functor& F, int max_dim) {
    return run_lifting_sweep(F, max_dim, true);
}

QuillenAReport quillen_a_conclusion(const Functor& F, int max_dim) {
    QuillenAReport rep;
    rep.smooth = check_smooth(F, max_dim);
    rep.fibres_terminal = true;
    rep.fibres_acyclic = true;
    for (int y = 0; y < F.cod->object_count(); ++y) {
        FinCategory fy = fibre(F, y);
        if (fy.object_count() == 0) continue;
        if (!find_terminal(fy)) rep.fibres_terminal = false;
        if (!homology_of_category(fy, max_dim).acyclic_through(max_dim))
            rep.fibres_acyclic = false;
    }
    rep.codomain = homology_of_category(*F.cod, max_dim);
    rep.codomain_acyclic = rep.codomain.acyclic_through(max_dim);
    rep.expectation_acyclic = rep.smooth.ok() && rep.fibres_acyclic && rep.codomain_acyclic;
    rep.domain = homology_of_category(*F.dom, max_dim);
    rep.consistent = !rep.expectation_acyclic || rep.domain.acyclic_through(max_dim);
    return rep;
}

}  // namespace optrees
