#include "optrees/monad.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace optrees {

bool label_leq(Label a, Label b) {
    if (a == b) return true;
    if (b == Label::E) return true;          // everything sits below E
    if (a == Label::E) return false;
    if (b == Label::C || b == Label::D) return a == Label::A || a == Label::B;
    return false;                            // b is A or B: only reflexive
}

char label_char(Label l) { return "ABCDE"[static_cast<int>(l)]; }

std::optional<Label> label_from_char(char c) {
    switch (c) {
        case 'A': return Label::A;
        case 'B': return Label::B;
        case 'C': return Label::C;
        case 'D': return Label::D;
        case 'E': return Label::E;
        default: return std::nullopt;
    }
}

std::string to_string(const Colour& c) {
    return std::string(1, label_char(c.label)) + "," + std::to_string(c.arity);
}

std::string render(const Operation& op) {
    std::string out;
    const auto& code = op.tree.code();
    std::size_t i = 0;
    int v = -1;
    auto rec = [&](auto&& self) -> void {
        int c = code[i++];
        if (c < 0) {
            out += 'L';
            return;
        }
        out += label_char(op.labels[++v]);
        out += '(';
        for (int k = 0; k < c; ++k) {
            if (k) out += ',';
            self(self);
        }
        out += ')';
    };
    rec(rec);
    out += '@';
    out += label_char(op.target);
    return out;
}

Operation parse_operation(const std::string& text) {
    std::size_t at = text.rfind('@');
    if (at == std::string::npos || at + 2 != text.size())
        throw parse_error("expected '@' followed by a target label", text.size());
    auto target = label_from_char(text[at + 1]);
    if (!target) throw parse_error("bad target label", at + 1);

    std::size_t i = 0;
    std::vector<int> code;
    std::vector<Label> labels;
    auto fail = [&](const std::string& what) { throw parse_error(what, i); };
    auto rec = [&](auto&& self) -> void {
        if (i >= at) fail("unexpected end of input");
        char c = text[i];
        if (c == 'L') {
            ++i;
            code.push_back(-1);
            return;
        }
        auto l = label_from_char(c);
        if (!l) fail("expected 'L' or a label A-E");
        ++i;
        if (i >= at || text[i] != '(') fail("expected '('");
        ++i;
        labels.push_back(*l);
        std::size_t arity_pos = code.size();
        code.push_back(0);
        if (i < at && text[i] == ')') {
            ++i;
            return;
        }
        while (true) {
            self(self);
            ++code[arity_pos];
            if (i >= at) fail("expected ',' or ')'");
            if (text[i] == ',') {
                ++i;
                continue;
            }
            if (text[i] == ')') {
                ++i;
                return;
            }
            fail("expected ',' or ')'");
        }
    };
    rec(rec);
    if (i != at) throw parse_error("trailing characters before '@'", i);
    return Operation{PlanarTree::from_code(std::move(code)), std::move(labels), *target};
}

const std::vector<MonadSpec>& all_specs() {
    static const std::vector<MonadSpec> v = {
        MonadSpec::NOp,           MonadSpec::NOpSquare,       MonadSpec::NOpBoxtimes,
        MonadSpec::BimodDiamond,  MonadSpec::IBimodPointed,   MonadSpec::IBimodUnpointed,
        MonadSpec::BimodSP,       MonadSpec::BimodDiamondAss, MonadSpec::IBimodPointedAss,
        MonadSpec::IBimodUnpointedAss, MonadSpec::BimodSPAss};
    return v;
}

std::string spec_name(MonadSpec s) {
    switch (s) {
        case MonadSpec::NOp: return "NOp";
        case MonadSpec::NOpSquare: return "NOp_square";
        case MonadSpec::NOpBoxtimes: return "NOp_boxtimes";
        case MonadSpec::BimodDiamond: return "Bimod_diamond";
        case MonadSpec::IBimodPointed: return "IBimod_pointed";
        case MonadSpec::IBimodUnpointed: return "IBimod_unpointed";
        case MonadSpec::BimodSP: return "BimodSP";
        case MonadSpec::BimodDiamondAss: return "Bimod_diamond_ass";
        case MonadSpec::IBimodPointedAss: return "IBimod_pointed_ass";
        case MonadSpec::IBimodUnpointedAss: return "IBimod_unpointed_ass";
        case MonadSpec::BimodSPAss: return "BimodSP_ass";
    }
    return "?";
}

std::optional<MonadSpec> spec_from_name(const std::string& name) {
    std::string key;
    for (char c : name) key += (c == '-') ? '_' : static_cast<char>(std::tolower(c));
    for (MonadSpec s : all_specs()) {
        std::string cand;
        for (char c : spec_name(s)) cand += static_cast<char>(std::tolower(c));
        if (key == cand) return s;
    }
    if (key == "bimod_sp") return MonadSpec::BimodSP;
    if (key == "bimod_sp_ass") return MonadSpec::BimodSPAss;
    return std::nullopt;
}

bool spec_is_ass(MonadSpec s) {
    switch (s) {
        case MonadSpec::BimodDiamondAss:
        case MonadSpec::IBimodPointedAss:
        case MonadSpec::IBimodUnpointedAss:
        case MonadSpec::BimodSPAss: return true;
        default: return false;
    }
}

MonadSpec spec_base(MonadSpec s) {
    switch (s) {
        case MonadSpec::BimodDiamondAss: return MonadSpec::BimodDiamond;
        case MonadSpec::IBimodPointedAss: return MonadSpec::IBimodPointed;
        case MonadSpec::IBimodUnpointedAss: return MonadSpec::IBimodUnpointed;
        case MonadSpec::BimodSPAss: return MonadSpec::BimodSP;
        default: return s;
    }
}

bool colour_supported(MonadSpec s, Colour c) {
    if (c.arity < 0) return false;
    switch (spec_base(s)) {
        case MonadSpec::NOpSquare:
        case MonadSpec::BimodDiamond: return c.label != Label::E;
        case MonadSpec::BimodSP: return c.label != Label::E || c.arity <= 1;
        default: return true;
    }
}

namespace {

// Line-and-point check via path words and the preorder cut order.  A cut
// vertex is one labelled C, D or E; each root-to-tip path must read
// A* cut? B*, and in preorder the cuts must read C* E? D*.
std::optional<std::string> check_line_point(const Operation& op) {
    const int n = op.tree.vertex_count();
    for (const auto& path : paths(op.tree)) {
        bool seen_cut = false, seen_b = false;
        for (int v : path) {
            Label l = op.labels[v];
            if (l == Label::A) {
                if (seen_cut || seen_b)
                    return "label A above the line on a path through vertex " + std::to_string(v);
            } else if (l == Label::B) {
                seen_b = true;
            } else {
                if (seen_cut) return "two cut vertices on one path (vertex " + std::to_string(v) + ")";
                if (seen_b) return "cut vertex above the line (vertex " + std::to_string(v) + ")";
                seen_cut = true;
            }
        }
    }
    // Preorder cut word.
    int e_count = 0;
    int state = 0;  // 0: reading C's, 1: E seen, 2: reading D's
    for (int v = 0; v < n; ++v) {
        Label l = op.labels[v];
        if (l == Label::C) {
            if (state != 0) return "C cut after the point (vertex " + std::to_string(v) + ")";
        } else if (l == Label::E) {
            if (++e_count > 1) return "more than one E vertex";
            if (state != 0) return "E cut after a D cut (vertex " + std::to_string(v) + ")";
            state = 1;
        } else if (l == Label::D) {
            state = 2;
        }
    }
    return std::nullopt;
}

std::optional<std::string> validate_base(MonadSpec s, const Operation& op) {
    for (int v = 0; v < op.tree.vertex_count(); ++v) {
        if (!label_leq(op.labels[v], op.target))
            return std::string("vertex label ") + label_char(op.labels[v]) +
                   " not below target " + label_char(op.target);
        if (!colour_supported(s, {op.labels[v], op.tree.arity(v)}))
            return "vertex colour " + to_string({op.labels[v], op.tree.arity(v)}) +
                   " outside the spec's colour set";
    }
    if (!colour_supported(s, op.colour()))
        return "output colour " + to_string(op.colour()) + " outside the spec's colour set";

    switch (s) {
        case MonadSpec::NOp:
            for (Label l : op.labels)
                if (l != op.target) return "NOp operations carry a single label";
            return std::nullopt;
        case MonadSpec::NOpSquare:
        case MonadSpec::NOpBoxtimes: return std::nullopt;
        case MonadSpec::BimodDiamond:
        case MonadSpec::IBimodPointed: return check_line_point(op);
        case MonadSpec::IBimodUnpointed: {
            if (auto r = check_line_point(op)) return r;
            if (op.target == Label::E) {
                int e = static_cast<int>(std::count(op.labels.begin(), op.labels.end(), Label::E));
                if (e != 1) return "target-E operation needs exactly one E vertex";
            }
            return std::nullopt;
        }
        case MonadSpec::BimodSP: {
            if (auto r = check_line_point(op)) return r;
            if (op.target == Label::E) {
                int e = static_cast<int>(std::count(op.labels.begin(), op.labels.end(), Label::E));
                if (e != 1) return "target-E operation needs exactly one E vertex";
                int ev = static_cast<int>(std::find(op.labels.begin(), op.labels.end(), Label::E) -
                                          op.labels.begin());
                for (int v = 0; v < op.tree.vertex_count(); ++v)
                    if (v != ev && op.labels[v] != Label::A)
                        return "target-E operations act through A only";
                bool is_corolla = op.tree.vertex_count() == 1;
                if (!is_corolla && op.tree.arity(ev) != 0)
                    return "the E vertex of a composite operation must be nullary";
            }
            return std::nullopt;
        }
        default: throw std::logic_error("validate_base called with an Ass spec");
    }
}

bool ass_normalized(const Operation& op) {
    int a = 0;
    for (Label l : op.labels) a += (l == Label::A);
    return a == 1 && !op.tree.is_edge() && op.labels[0] == Label::A;
}

}  // namespace

Operation normalize_ass(const Operation& op) {
    Operation cur = op;
    // Contract A-A edges and drop non-root unary A vertices (Ass units act
    // trivially) until neither rule applies.
    bool changed = true;
    while (changed) {
        changed = false;
        int n = cur.tree.vertex_count();
        for (int v = 1; v < n && !changed; ++v) {
            if (cur.labels[v] == Label::A && cur.labels[cur.tree.parent(v)] == Label::A) {
                cur.tree = cur.tree.contract_edge(v);
                cur.labels.erase(cur.labels.begin() + v);
                changed = true;
            }
        }
        for (int v = 1; v < n && !changed; ++v) {
            if (cur.labels[v] == Label::A && cur.tree.arity(v) == 1) {
                cur.tree = cur.tree.splice_out(v);
                cur.labels.erase(cur.labels.begin() + v);
                changed = true;
            }
        }
    }
    bool has_a = std::find(cur.labels.begin(), cur.labels.end(), Label::A) != cur.labels.end();
    if (!has_a) {
        cur.tree = PlanarTree::vertex({cur.tree});
        cur.labels.insert(cur.labels.begin(), Label::A);
    }
    return cur;
}

std::optional<std::string> validate_operation(MonadSpec s, const Operation& op) {
    if (static_cast<int>(op.labels.size()) != op.tree.vertex_count())
        return "label map not total on vertices";
    if (!spec_is_ass(s)) return validate_base(s, op);

    if (normalize_ass(op) != op) return "operation is not A-normalized";
    if (!ass_normalized(op)) return "Ass-forced operations have exactly one A vertex, the root";
    MonadSpec base = spec_base(s);
    auto direct = validate_base(base, op);
    if (!direct) return std::nullopt;
    // The class of a representative also contains the tree with the unary A
    // root stripped (the unit of Ass absorbed); admissibility of any member
    // makes the representative an operation.
    if (op.tree.arity(0) == 1 && op.tree.vertex_count() >= 2) {
        Operation stripped{op.tree.splice_out(0),
                           std::vector<Label>(op.labels.begin() + 1, op.labels.end()), op.target};
        if (!validate_base(base, stripped)) return std::nullopt;
    } else if (op.tree.arity(0) == 1 && op.tree.vertex_count() == 1) {
        Operation stripped{PlanarTree::edge(), {}, op.target};
        if (!validate_base(base, stripped)) return std::nullopt;
    }
    return direct;
}

bool is_operation(MonadSpec s, const Operation& op) { return !validate_operation(s, op); }

Operation unit_op(MonadSpec s, Colour c) {
    if (!colour_supported(s, c))
        throw std::invalid_argument(spec_name(s) + " has no unit at colour " + to_string(c) +
                                    ": colour unsupported");
    Operation u{PlanarTree::corolla(c.arity), {c.label}, c.label};
    if (spec_is_ass(s)) u = normalize_ass(u);
    if (!is_operation(s, u))
        throw std::invalid_argument(spec_name(s) + " has no unit at colour " + to_string(c));
    return u;
}

Operation multiply_raw(const Operation& outer, const std::vector<Operation>& inners,
                       std::vector<std::pair<int, int>>* provenance) {
    int n = outer.tree.vertex_count();
    if (static_cast<int>(inners.size()) != n)
        throw std::invalid_argument("multiply: need one inner operation per vertex");
    std::vector<PlanarTree> trees;
    trees.reserve(n);
    for (int v = 0; v < n; ++v) {
        if (inners[v].target != outer.labels[v])
            throw std::invalid_argument("multiply: inner target label mismatch at vertex " +
                                        std::to_string(v));
        if (inners[v].tree.leaf_count() != outer.tree.arity(v))
            throw std::invalid_argument("multiply: inner leaf count mismatch at vertex " +
                                        std::to_string(v));
        trees.push_back(inners[v].tree);
    }
    std::vector<std::pair<int, int>> prov;
    PlanarTree result = outer.tree.substitute_all(trees, &prov);
    std::vector<Label> labels;
    labels.reserve(prov.size());
    for (auto [v, w] : prov) labels.push_back(inners[v].labels[w]);
    if (provenance) *provenance = std::move(prov);
    return Operation{std::move(result), std::move(labels), outer.target};
}

Operation multiply(MonadSpec s, const Operation& outer, const std::vector<Operation>& inners) {
    for (const auto& in : inners)
        if (!is_operation(s, in))
            throw std::invalid_argument("multiply: inadmissible inner operation " + render(in));
    Operation out = multiply_raw(outer, inners);
    if (spec_is_ass(s)) out = normalize_ass(out);
    return out;
}

const std::vector<Operation>& enumerate_operations(MonadSpec s, Colour c, int max_vertices) {
    static std::map<std::tuple<MonadSpec, Colour, int>, std::vector<Operation>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(s, c, max_vertices);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<Operation> out;
    if (colour_supported(s, c)) {
        for (const auto& shape : enumerate_trees(c.arity, max_vertices)) {
            int n = shape.vertex_count();
            std::vector<Label> labels(n, Label::A);
            auto rec = [&](auto&& self, int v) -> void {
                if (v == n) {
                    Operation op{shape, labels, c.label};
                    if (is_operation(s, op)) out.push_back(op);
                    return;
                }
                for (int li = 0; li < 5; ++li) {
                    labels[v] = static_cast<Label>(li);
                    if (!label_leq(labels[v], c.label)) continue;
                    self(self, v + 1);
                }
            };
            rec(rec, 0);
        }
        std::sort(out.begin(), out.end(), [](const Operation& a, const Operation& b) {
            return render(a) < render(b);
        });
    }
    return cache.emplace(key, std::move(out)).first->second;
}

namespace {

std::vector<Colour> colours_within(MonadSpec s, int leaf_bound) {
    std::vector<Colour> out;
    for (int li = 0; li < 5; ++li)
        for (int n = 0; n <= leaf_bound; ++n)
            if (colour_supported(s, {static_cast<Label>(li), n}))
                out.push_back({static_cast<Label>(li), n});
    return out;
}

}  // namespace

LawReport check_monad_laws(MonadSpec s, int leaf_bound, int vertex_bound) {
    LawReport rep;
    auto complain = [&](const std::string& what) {
        if (rep.counterexamples.size() < 32) rep.counterexamples.push_back(what);
    };
    auto units_for = [&](const Operation& op) {
        std::vector<Operation> units;
        for (int v = 0; v < op.tree.vertex_count(); ++v)
            units.push_back(unit_op(s, {op.labels[v], op.tree.arity(v)}));
        return units;
    };

    for (Colour c : colours_within(s, leaf_bound)) {
        const auto& ops = enumerate_operations(s, c, vertex_bound);
        for (const auto& op : ops) {
            int n = op.tree.vertex_count();
            // Right unit: inserting units at every vertex is the identity.
            ++rep.unit_instances;
            if (multiply(s, op, units_for(op)) != op)
                complain("right unit fails for " + render(op));
            // Left unit: inserting op into the unit at its colour.
            {
                Operation u = unit_op(s, c);
                std::vector<Operation> inners;
                for (int v = 0; v < u.tree.vertex_count(); ++v) {
                    if (u.labels[v] == c.label && u.tree.arity(v) == c.arity &&
                        (!spec_is_ass(s) || v > 0 || c.label == Label::A))
                        inners.push_back(op);
                    else
                        inners.push_back(unit_op(s, {u.labels[v], u.tree.arity(v)}));
                }
                ++rep.unit_instances;
                if (multiply(s, u, inners) != op) complain("left unit fails for " + render(op));
            }
            // Closure and associativity via one inner insertion at v and a
            // second insertion at a vertex w of the inner operation: composing
            // in stages must agree with the flattened composite.
            for (int v = 0; v < n; ++v) {
                Colour vc{op.labels[v], op.tree.arity(v)};
                for (const auto& inner : enumerate_operations(s, vc, vertex_bound)) {
                    std::vector<Operation> inners = units_for(op);
                    inners[v] = inner;
                    Operation one = multiply(s, op, inners);
                    ++rep.closure_instances;
                    if (!is_operation(s, one)) {
                        complain("closure fails: " + render(op) + " <- " + render(inner) + " at " +
                                 std::to_string(v));
                        continue;
                    }
                    int m = inner.tree.vertex_count();
                    for (int w = 0; w < m; ++w) {
                        Colour wc{inner.labels[w], inner.tree.arity(w)};
                        for (const auto& deep : enumerate_operations(s, wc, vertex_bound)) {
                            std::vector<Operation> jnners = units_for(inner);
                            jnners[w] = deep;
                            std::vector<Operation> inners2 = inners;
                            inners2[v] = multiply(s, inner, jnners);
                            Operation staged = multiply(s, op, inners2);
                            ++rep.assoc_instances;
                            Operation flat;
                            if (!spec_is_ass(s)) {
                                std::vector<std::pair<int, int>> prov;
                                Operation mid = multiply_raw(op, inners, &prov);
                                int landing = -1;
                                for (std::size_t j = 0; j < prov.size(); ++j)
                                    if (prov[j] == std::make_pair(v, w))
                                        landing = static_cast<int>(j);
                                std::vector<Operation> late = units_for(mid);
                                late[landing] = deep;
                                flat = multiply(s, mid, late);
                            } else {
                                // Flatten twice without normalizing, tracking
                                // positions in the raw tree, and normalize once
                                // at the end.
                                std::vector<std::pair<int, int>> prov;
                                Operation mid = multiply_raw(op, inners, &prov);
                                std::vector<Operation> late;
                                for (std::size_t j = 0; j < prov.size(); ++j) {
                                    if (prov[j] == std::make_pair(v, w))
                                        late.push_back(deep);
                                    else
                                        late.push_back(Operation{
                                            PlanarTree::corolla(mid.tree.arity(int(j))),
                                            {mid.labels[j]},
                                            mid.labels[j]});
                                }
                                flat = normalize_ass(multiply_raw(mid, late));
                            }
                            if (flat != staged)
                                complain("associativity fails for " + render(op) + " <- " +
                                         render(inner) + " <- " + render(deep));
                        }
                    }
                }
            }
        }
    }
    return rep;
}

}  // namespace optrees
