#include "optrees/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>

#include "optrees/parallel.hpp"

namespace optrees {

namespace {
std::atomic<bool> g_parallel{true};
}
bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel_enabled(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

void MonadMorphism::verify_inclusion(int arity_bound, int vertex_bound) const {
    for (int li = 0; li < 5; ++li) {
        for (int n = 0; n <= arity_bound; ++n) {
            Colour c{static_cast<Label>(li), n};
            if (!colour_supported(source, c)) continue;
            if (!colour_supported(target, c))
                throw std::logic_error("monad morphism drops colour " + to_string(c));
            for (const auto& op : enumerate_operations(source, c, vertex_bound))
                if (!is_operation(target, op))
                    throw std::logic_error("operation " + render(op) + " of " +
                                           spec_name(source) + " is not in " + spec_name(target));
        }
    }
}

std::string render(const Nesting& n) {
    std::string out = render(n.outer) + "[";
    for (std::size_t i = 0; i < n.inner.size(); ++i) {
        if (i) out += ";";
        out += render(n.inner[i]);
    }
    return out + "]";
}

Operation flatten(const MonadMorphism& m, const Nesting& n) {
    return multiply(m.target, n.outer, n.inner);
}

bool valid_nesting(const MonadMorphism& m, const Nesting& n) {
    int nv = n.outer.tree.vertex_count();
    if (static_cast<int>(n.inner.size()) != nv) return false;
    for (int v = 0; v < nv; ++v) {
        const Operation& in = n.inner[v];
        if (in.target != n.outer.labels[v]) return false;
        if (in.tree.leaf_count() != n.outer.tree.arity(v)) return false;
        if (!is_operation(m.source, in)) return false;
        for (Label l : in.labels)
            if (!label_leq(l, n.outer.labels[v])) return false;
    }
    return true;
}

Nesting identity_nesting(const MonadMorphism& m, const Operation& op) {
    Nesting n{op, {}};
    for (int v = 0; v < op.tree.vertex_count(); ++v)
        n.inner.push_back(unit_op(m.source, {op.labels[v], op.tree.arity(v)}));
    return n;
}

Nesting compose_nestings(const MonadMorphism& m, const Nesting& f, const Nesting& g) {
    // f: R -> Q, g: Q -> P.  Each vertex p of P receives g's inner tree with
    // f's inner trees distributed over its vertices along the flattening.
    std::vector<std::pair<int, int>> prov;
    Operation raw = multiply_raw(g.outer, g.inner, &prov);
    Operation q = flatten(m, g);
    if (f.outer != q) throw std::invalid_argument("compose_nestings: middle object mismatch");

    // Map the raw flatten's vertices to vertices of q.  Without Ass-forcing
    // this is the identity; with it the non-A vertices correspond
    // positionally (normalization never moves them) and absorbed A vertices
    // take unit corollas, Ass being terminal.
    int nraw = raw.tree.vertex_count();
    std::vector<int> raw_to_q(nraw, -1);
    if (!spec_is_ass(m.target)) {
        for (int j = 0; j < nraw; ++j) raw_to_q[j] = j;
    } else {
        std::vector<int> q_non_a;
        for (int j = 0; j < q.tree.vertex_count(); ++j)
            if (q.labels[j] != Label::A) q_non_a.push_back(j);
        std::size_t pos = 0;
        for (int j = 0; j < nraw; ++j) {
            if (raw.labels[j] == Label::A) continue;
            raw_to_q[j] = q_non_a.at(pos++);
        }
        if (pos != q_non_a.size())
            throw std::logic_error("compose_nestings: vertex correspondence broken");
    }

    int np = g.outer.tree.vertex_count();
    std::vector<std::vector<Operation>> hs(np);
    for (int p = 0; p < np; ++p)
        hs[p].resize(g.inner[p].tree.vertex_count(), Operation{});
    for (int j = 0; j < nraw; ++j) {
        auto [p, w] = prov[j];
        if (raw_to_q[j] >= 0) {
            hs[p][w] = f.inner[raw_to_q[j]];
        } else {
            hs[p][w] = Operation{PlanarTree::corolla(g.inner[p].tree.arity(w)),
                                 {Label::A},
                                 Label::A};
        }
    }
    Nesting out{g.outer, {}};
    for (int p = 0; p < np; ++p) out.inner.push_back(multiply(m.source, g.inner[p], hs[p]));
    return out;
}

namespace {

// Enumerates all inner assignments for an outer operation with the total
// inner vertex count bounded by `budget`.
template <typename Sink>
void for_each_nesting(const MonadMorphism& m, const Operation& outer, int budget, Sink&& sink) {
    int nv = outer.tree.vertex_count();
    if (nv == 0) {
        sink(Nesting{outer, {}});
        return;
    }
    std::vector<Operation> chosen(nv);
    auto rec = [&](auto&& self, int v, int used) -> void {
        if (v == nv) {
            sink(Nesting{outer, chosen});
            return;
        }
        Colour c{outer.labels[v], outer.tree.arity(v)};
        for (const auto& cand : enumerate_operations(m.source, c, budget - used)) {
            int sz = cand.tree.vertex_count();
            if (used + sz > budget) continue;
            chosen[v] = cand;
            self(self, v + 1, used + sz);
        }
    };
    rec(rec, 0, 0);
}

}  // namespace

std::vector<Nesting> enumerate_nestings(const MonadMorphism& m, const Operation& source,
                                        const Operation& target) {
    if (source.colour() != target.colour())
        throw std::invalid_argument("enumerate_nestings: colour mismatch");
    std::vector<Nesting> out;
    int budget = source.tree.vertex_count() +
                 (spec_is_ass(m.target) ? target.tree.vertex_count() : 0);
    for_each_nesting(m, target, budget, [&](const Nesting& n) {
        if (flatten(m, n) == source) out.push_back(n);
    });
    std::sort(out.begin(), out.end());
    return out;
}

Classifier::Classifier(MonadMorphism m, Colour colour, int bound)
    : morphism_(m), colour_(colour), bound_(bound) {
    // Objects: target operations whose vertex colours exist on the source
    // side (the classifier lives over the source's colours).
    for (const auto& op : enumerate_operations(m.target, colour, bound)) {
        bool keep = true;
        for (int v = 0; v < op.tree.vertex_count() && keep; ++v)
            keep = colour_supported(m.source, {op.labels[v], op.tree.arity(v)});
        if (keep) objects_.push_back(op);
    }
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        object_ids_[objects_[i]] = static_cast<int>(i);
        cat_.add_object(render(objects_[i]));
    }

    // Morphisms, enumerated per target object in parallel, merged in order.
    int n = static_cast<int>(objects_.size());
    std::vector<std::vector<std::pair<int, Nesting>>> per_target(n);
    bool par = parallel_enabled();
#pragma omp parallel for schedule(dynamic) if (par)
    for (int t = 0; t < n; ++t) {
        const Operation& outer = objects_[t];
        int budget = bound_ + (spec_is_ass(m.target) ? outer.tree.vertex_count() : 0);
        Nesting ident = identity_nesting(morphism_, outer);
        std::vector<std::pair<int, Nesting>> local;
        for_each_nesting(morphism_, outer, budget, [&](const Nesting& nst) {
            if (nst == ident) return;
            Operation src = flatten(morphism_, nst);
            auto it = object_ids_.find(src);
            if (it == object_ids_.end()) return;
            local.emplace_back(it->second, nst);
        });
        std::sort(local.begin(), local.end());
        per_target[t] = std::move(local);
    }
    for (int t = 0; t < n; ++t) {
        for (auto& [srcid, nst] : per_target[t]) {
            int id = cat_.add_morphism(srcid, t, render(nst));
            nesting_ids_[cat_.morphism_name(id)] = id;
            nestings_.push_back(std::move(nst));
        }
    }

    MonadMorphism mm = morphism_;
    const Classifier* self = this;
    cat_.set_compose_fn([self, mm](int f, int g) -> int {
        Nesting c = compose_nestings(mm, self->nesting(f), self->nesting(g));
        return self->morphism_id_or_identity(c);
    });
}

std::optional<int> Classifier::object_id(const Operation& op) const {
    auto it = object_ids_.find(op);
    if (it == object_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Classifier::morphism_id(const Nesting& n) const {
    auto it = nesting_ids_.find(render(n));
    if (it == nesting_ids_.end()) return std::nullopt;
    return it->second;
}

int Classifier::morphism_id_or_identity(const Nesting& n) const {
    if (auto id = morphism_id(n)) return *id;
    auto obj = object_id(n.outer);
    if (obj && n == identity_nesting(morphism_, n.outer)) return cat_.identity(*obj);
    throw std::logic_error("nesting not present in the truncated classifier: " + render(n));
}

Operation ForgetLabels::strip(const Operation& op) {
    Operation out = op;
    for (auto& l : out.labels) l = op.target;
    return out;
}

Nesting ForgetLabels::strip(const Nesting& n) {
    Nesting out{strip(n.outer), {}};
    for (const auto& in : n.inner) {
        Operation s = in;
        s.target = n.outer.target;
        for (auto& l : s.labels) l = n.outer.target;
        out.inner.push_back(std::move(s));
    }
    return out;
}

ForgetLabels::ForgetLabels(const Classifier& dom)
    : codomain(MonadMorphism{MonadSpec::NOp, MonadSpec::NOp}, dom.colour(), dom.bound()) {
    functor.dom = &dom.cat();
    functor.cod = &codomain.cat();
    functor.obj_map.resize(dom.cat().object_count());
    functor.mor_map.resize(dom.cat().morphism_count());
    for (int i = 0; i < dom.cat().object_count(); ++i) {
        auto id = codomain.object_id(strip(dom.object(i)));
        if (!id) throw std::logic_error("forget_labels: stripped object missing");
        functor.obj_map[i] = *id;
        functor.mor_map[i] = *id;
    }
    for (int mor = dom.cat().object_count(); mor < dom.cat().morphism_count(); ++mor)
        functor.mor_map[mor] = codomain.morphism_id_or_identity(strip(dom.nesting(mor)));
}

std::optional<int> ChiCategory::index_of(const std::vector<Label>& labelling) const {
    auto it = std::lower_bound(labellings.begin(), labellings.end(), labelling);
    if (it == labellings.end() || *it != labelling) return std::nullopt;
    return static_cast<int>(it - labellings.begin());
}

namespace {

std::string labelling_name(const std::vector<Label>& ls) {
    std::string s;
    for (Label l : ls) s += label_char(l);
    return s.empty() ? "()" : s;
}

ChiCategory build_chi(Label target, const PlanarTree& T,
                      const std::function<bool(const std::vector<Label>&)>& keep) {
    ChiCategory out{T, target, {}, {}};
    int n = T.vertex_count();
    std::vector<Label> ls(n, Label::A);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            if (is_operation(MonadSpec::IBimodPointed, Operation{T, ls, target}) && keep(ls))
                out.labellings.push_back(ls);
            return;
        }
        for (int li = 0; li < 5; ++li) {
            ls[v] = static_cast<Label>(li);
            self(self, v + 1);
        }
    };
    rec(rec, 0);
    std::sort(out.labellings.begin(), out.labellings.end());
    for (const auto& l : out.labellings) out.cat.add_object(labelling_name(l));

    int m = static_cast<int>(out.labellings.size());
    auto rels = std::make_shared<std::vector<std::pair<int, int>>>();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            bool leq = true;
            for (int v = 0; v < n && leq; ++v)
                leq = label_leq(out.labellings[i][v], out.labellings[j][v]);
            if (leq) {
                out.cat.add_morphism(i, j);
                rels->emplace_back(i, j);
            }
        }
    out.cat.set_compose_fn([rels, m](int f, int g) -> int {
        int fs = f < m ? f : (*rels)[f - m].first;
        int gt = g < m ? g : (*rels)[g - m].second;
        if (fs == gt) return fs;
        for (std::size_t k = 0; k < rels->size(); ++k)
            if ((*rels)[k] == std::make_pair(fs, gt)) return m + static_cast<int>(k);
        throw std::logic_error("chi: order not transitive");
    });
    return out;
}

bool labels_within(const std::vector<Label>& ls, int from, int count, int mask) {
    for (int v = from; v < from + count; ++v)
        if (!((mask >> static_cast<int>(ls[v])) & 1)) return false;
    return true;
}

constexpr int MASK_ABC = 0b00111;
constexpr int MASK_ABD = 0b01011;

// The first root subtree occupies the contiguous preorder block starting at
// vertex 1.
int first_subtree_vertices(const PlanarTree& T) {
    if (T.is_edge() || T.arity(0) == 0) return 0;
    return T.root_subtrees().front().vertex_count();
}

}  // namespace

ChiCategory chi(Label l, const PlanarTree& T) {
    return build_chi(l, T, [](const std::vector<Label>&) { return true; });
}

ChiCategory chi_A(Label l, const PlanarTree& T) {
    return build_chi(l, T,
                     [](const std::vector<Label>& ls) { return ls.empty() || ls[0] == Label::A; });
}

ChiCategory chi_B(Label l, const PlanarTree& T) {
    return build_chi(l, T, [](const std::vector<Label>& ls) {
        for (std::size_t v = 1; v < ls.size(); ++v)
            if (ls[v] != Label::B) return false;
        return true;
    });
}

ChiCategory chi_C(const PlanarTree& T) {
    if (T.is_edge()) throw std::invalid_argument("chi_C needs a root vertex");
    int count = first_subtree_vertices(T);
    return build_chi(Label::E, T, [count](const std::vector<Label>& ls) {
        return ls[0] == Label::A && labels_within(ls, 1, count, MASK_ABC);
    });
}

ChiCategory chi_D(const PlanarTree& T) {
    if (T.is_edge()) throw std::invalid_argument("chi_D needs a root vertex");
    int count = first_subtree_vertices(T);
    int n = T.vertex_count();
    return build_chi(Label::E, T, [count, n](const std::vector<Label>& ls) {
        if (ls[0] != Label::A) return false;
        for (int v = 1 + count; v < n; ++v)
            if (!((MASK_ABD >> static_cast<int>(ls[v])) & 1)) return false;
        return true;
    });
}

namespace {

// Constructed-isomorphism check between thin categories: the object map must
// biject and preserve hom-set sizes.
bool check_iso(const FinCategory& a, const FinCategory& b, const std::vector<int>& obj_map) {
    if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count())
        return false;
    std::vector<bool> hit(b.object_count(), false);
    for (int i = 0; i < a.object_count(); ++i) {
        if (obj_map[i] < 0 || obj_map[i] >= b.object_count() || hit[obj_map[i]]) return false;
        hit[obj_map[i]] = true;
    }
    for (int x = 0; x < a.object_count(); ++x)
        for (int y = 0; y < a.object_count(); ++y)
            if (a.hom(x, y).size() != b.hom(obj_map[x], obj_map[y]).size()) return false;
    return true;
}

}  // namespace

ChiRecursionReport check_chi_recursion(int max_vertices) {
    ChiRecursionReport rep;
    auto fail = [&](const std::string& what) {
        if (rep.failures.size() < 16) rep.failures.push_back(what);
    };
    const std::vector<Label> all = {Label::A, Label::B, Label::C, Label::D, Label::E};

    // Skeletons (trees with no leaves) cover all cases: leaves never enter
    // the labelling posets.
    for (const auto& T : enumerate_trees(0, max_vertices)) {
        ++rep.trees_checked;
        for (Label l : all) {
            auto whole = chi(l, T);
            std::string ctx = "chi(" + std::string(1, label_char(l)) + "," + render(T) + ")";
            if (T.is_edge()) {
                if (whole.cat.object_count() != 1) fail(ctx + ": edge tree not terminal");
                continue;
            }
            if (l == Label::A || l == Label::B) {
                if (whole.cat.object_count() != 1) fail(ctx + ": expected a single object");
                continue;
            }
            auto a = chi_A(l, T);
            auto b = chi_B(l, T);
            std::size_t inter = 0;
            for (const auto& ls : whole.labellings) {
                bool in_a = ls[0] == Label::A;
                bool in_b = true;
                for (std::size_t v = 1; v < ls.size(); ++v) in_b &= ls[v] == Label::B;
                if (!in_a && !in_b) fail(ctx + ": labelling outside chi_A and chi_B");
                if (in_a && in_b) ++inter;
            }
            if (inter != 1) fail(ctx + ": chi_A/chi_B intersection not terminal");

            {
                auto corolla = chi(l, PlanarTree::corolla(0));
                std::vector<int> map(b.cat.object_count(), -1);
                for (int i = 0; i < b.cat.object_count(); ++i)
                    map[i] = corolla.index_of({b.labellings[i][0]}).value_or(-1);
                ++rep.isos_checked;
                if (!check_iso(b.cat, corolla.cat, map)) fail(ctx + ": chi_B != chi(l, corolla)");
            }

            auto subs = T.root_subtrees();
            if (subs.empty()) continue;  // nullary root: chi_A is a point

            if (l == Label::C || l == Label::D) {
                std::vector<ChiCategory> parts;
                for (const auto& ti : subs) parts.push_back(chi(l, ti));
                FinCategory prod = parts[0].cat;
                for (std::size_t i = 1; i < parts.size(); ++i) prod = product(prod, parts[i].cat);
                std::vector<int> map(a.cat.object_count(), -1);
                for (int i = 0; i < a.cat.object_count(); ++i) {
                    const auto& ls = a.labellings[i];
                    int idx = 0, pos = 1;
                    for (std::size_t p = 0; p < parts.size() && idx >= 0; ++p) {
                        int cnt = parts[p].tree.vertex_count();
                        std::vector<Label> part(ls.begin() + pos, ls.begin() + pos + cnt);
                        auto pi = parts[p].index_of(part);
                        idx = pi ? idx * parts[p].cat.object_count() + *pi : -1;
                        pos += cnt;
                    }
                    map[i] = idx;
                }
                ++rep.isos_checked;
                if (!check_iso(a.cat, prod, map)) fail(ctx + ": chi_A != product over subtrees");
                continue;
            }

            // l == E: the chi_C / chi_D decomposition.
            auto cc = chi_C(T);
            auto dd = chi_D(T);
            int t1_count = subs[0].vertex_count();
            PlanarTree t1 = subs[0];
            PlanarTree tp = t1_count > 0 ? T.erase_subtree(1) : T;

            for (const auto& ls : a.labellings) {
                bool in_c = labels_within(ls, 1, t1_count, MASK_ABC);
                bool in_d =
                    labels_within(ls, 1 + t1_count, T.vertex_count() - 1 - t1_count, MASK_ABD);
                if (!in_c && !in_d) fail(ctx + ": chi_A labelling outside chi_C and chi_D");
            }

            auto split_map = [&](const ChiCategory& lhs, const ChiCategory& left,
                                 const ChiCategory& right) {
                std::vector<int> map(lhs.cat.object_count(), -1);
                for (int i = 0; i < lhs.cat.object_count(); ++i) {
                    const auto& ls = lhs.labellings[i];
                    std::vector<Label> lt1(ls.begin() + 1, ls.begin() + 1 + t1_count);
                    std::vector<Label> ltp;
                    ltp.push_back(ls[0]);
                    for (int v = 1 + t1_count; v < static_cast<int>(ls.size()); ++v)
                        ltp.push_back(ls[v]);
                    auto li = left.index_of(lt1);
                    auto ri = right.index_of(ltp);
                    if (li && ri) map[i] = *li * right.cat.object_count() + *ri;
                }
                return map;
            };

            auto cC1 = chi(Label::C, t1);
            auto cE1 = chi(Label::E, t1);
            auto caE = chi_A(Label::E, tp);
            auto caD = chi_A(Label::D, tp);

            ++rep.isos_checked;
            if (!check_iso(cc.cat, product(cC1.cat, caE.cat), split_map(cc, cC1, caE)))
                fail(ctx + ": chi_C != chi(C,T1) x chi_A(E,T')");
            ++rep.isos_checked;
            if (!check_iso(dd.cat, product(cE1.cat, caD.cat), split_map(dd, cE1, caD)))
                fail(ctx + ": chi_D != chi(E,T1) x chi_A(D,T')");

            auto inter_cat = build_chi(Label::E, T, [&](const std::vector<Label>& ls) {
                return ls[0] == Label::A && labels_within(ls, 1, t1_count, MASK_ABC) &&
                       labels_within(ls, 1 + t1_count, T.vertex_count() - 1 - t1_count, MASK_ABD);
            });
            ++rep.isos_checked;
            if (!check_iso(inter_cat.cat, product(cC1.cat, caD.cat),
                           split_map(inter_cat, cC1, caD)))
                fail(ctx + ": chi_C n chi_D != chi(C,T1) x chi_A(D,T')");
        }
    }
    return rep;
}

}  // namespace optrees
