#include "optrees/tree.hpp"

#include <algorithm>
#include <map>

namespace optrees {

namespace {

// Advances `i` past one subtree starting at code[i].
void skip_subtree(const std::vector<int>& code, std::size_t& i) {
    int pending = 1;
    while (pending > 0) {
        if (i >= code.size()) throw std::logic_error("corrupt tree code");
        int c = code[i++];
        pending += (c >= 0 ? c : 0) - 1;
    }
}

}  // namespace

PlanarTree PlanarTree::corolla(int arity) {
    if (arity < 0) throw std::invalid_argument("negative arity");
    std::vector<int> code;
    code.reserve(arity + 1);
    code.push_back(arity);
    for (int i = 0; i < arity; ++i) code.push_back(-1);
    return from_code(std::move(code));
}

PlanarTree PlanarTree::vertex(const std::vector<PlanarTree>& children) {
    std::vector<int> code;
    code.push_back(static_cast<int>(children.size()));
    for (const auto& c : children) code.insert(code.end(), c.code_.begin(), c.code_.end());
    return from_code(std::move(code));
}

PlanarTree PlanarTree::from_code(std::vector<int> code) {
    PlanarTree t;
    t.code_ = std::move(code);
    std::size_t i = 0;
    skip_subtree(t.code_, i);
    if (i != t.code_.size()) throw std::logic_error("tree code does not form one tree");
    return t;
}

int PlanarTree::vertex_count() const {
    int n = 0;
    for (int c : code_) n += (c >= 0);
    return n;
}

int PlanarTree::leaf_count() const {
    int n = 0;
    for (int c : code_) n += (c < 0);
    return n;
}

int PlanarTree::arity(int vertex) const { return code_[vertex_position(vertex)]; }

std::size_t PlanarTree::vertex_position(int vertex) const {
    int seen = 0;
    for (std::size_t i = 0; i < code_.size(); ++i) {
        if (code_[i] >= 0 && seen++ == vertex) return i;
    }
    throw std::out_of_range("vertex index " + std::to_string(vertex) + " out of range");
}

int PlanarTree::parent(int vertex) const {
    std::size_t target = vertex_position(vertex);
    if (target == 0) return -1;
    // Walk from the root keeping the chain of open ancestors.
    std::vector<std::pair<int, int>> open;  // (vertex index, children still pending)
    int vidx = -1;
    for (std::size_t i = 0; i < code_.size(); ++i) {
        if (i == target) return open.back().first;
        if (code_[i] >= 0) {
            ++vidx;
            open.emplace_back(vidx, code_[i]);
        }
        while (!open.empty() && open.back().second == 0) open.pop_back();
        if (!open.empty()) --open.back().second;
    }
    throw std::logic_error("unreachable");
}

std::vector<int> PlanarTree::vertex_children(int vertex) const {
    std::size_t i = vertex_position(vertex);
    int k = code_[i++];
    std::vector<int> out;
    int vidx = vertex;
    for (int c = 0; c < k; ++c) {
        if (code_[i] >= 0) out.push_back(vidx + 1);
        std::size_t j = i;
        skip_subtree(code_, j);
        for (std::size_t p = i; p < j; ++p) vidx += (code_[p] >= 0);
        i = j;
    }
    return out;
}

PlanarTree PlanarTree::subtree(int vertex) const {
    std::size_t i = vertex_position(vertex);
    std::size_t j = i;
    skip_subtree(code_, j);
    return from_code(std::vector<int>(code_.begin() + i, code_.begin() + j));
}

std::vector<PlanarTree> PlanarTree::root_subtrees() const {
    if (is_edge()) throw std::logic_error("edge tree has no root vertex");
    std::vector<PlanarTree> out;
    std::size_t i = 1;
    for (int c = 0; c < code_[0]; ++c) {
        std::size_t j = i;
        skip_subtree(code_, j);
        out.push_back(from_code(std::vector<int>(code_.begin() + i, code_.begin() + j)));
        i = j;
    }
    return out;
}

PlanarTree PlanarTree::graft(int leaf, const PlanarTree& sub) const {
    if (leaf < 1 || leaf > leaf_count())
        throw std::out_of_range("leaf index " + std::to_string(leaf) + " out of range");
    int seen = 0;
    std::vector<int> code;
    code.reserve(code_.size() + sub.code_.size());
    for (int c : code_) {
        if (c < 0 && ++seen == leaf) {
            code.insert(code.end(), sub.code_.begin(), sub.code_.end());
        } else {
            code.push_back(c);
        }
    }
    return from_code(std::move(code));
}

PlanarTree PlanarTree::substitute(int vertex, const PlanarTree& sub) const {
    std::vector<PlanarTree> inners;
    int n = vertex_count();
    inners.reserve(n);
    for (int v = 0; v < n; ++v)
        inners.push_back(v == vertex ? sub : corolla(arity(v)));
    return substitute_all(inners);
}

PlanarTree PlanarTree::substitute_all(const std::vector<PlanarTree>& inners,
                                      std::vector<std::pair<int, int>>* provenance) const {
    if (static_cast<int>(inners.size()) != vertex_count())
        throw std::invalid_argument("substitute_all: wrong number of inner trees");
    if (provenance) provenance->clear();
    std::vector<int> out;
    // Recursive walk over the outer code; `v` tracks the preorder index.
    int v = -1;
    std::size_t i = 0;
    auto emit_subtree = [&](auto&& self, auto&& emit_inner) -> void {
        if (code_[i] < 0) {
            out.push_back(-1);
            ++i;
            return;
        }
        int my_vertex = ++v;
        int k = code_[i++];
        const PlanarTree& inner = inners[my_vertex];
        if (inner.leaf_count() != k)
            throw std::invalid_argument("substitute_all: arity mismatch at vertex " +
                                        std::to_string(my_vertex));
        emit_inner(emit_inner, self, inner, my_vertex);
    };
    // Emits the inner tree of `outer_vertex`, recursing into the outer
    // children at the inner tree's leaves.
    auto emit_inner = [&](auto&& self, auto&& emit_sub, const PlanarTree& inner,
                          int outer_vertex) -> void {
        int w = -1;
        for (std::size_t p = 0; p < inner.code().size(); ++p) {
            int c = inner.code()[p];
            if (c >= 0) {
                ++w;
                out.push_back(c);
                if (provenance) provenance->emplace_back(outer_vertex, w);
            } else {
                emit_sub(emit_sub, self);
            }
        }
    };
    emit_subtree(emit_subtree, emit_inner);
    return from_code(std::move(out));
}

PlanarTree PlanarTree::erase_subtree(int vertex) const {
    if (vertex == 0) throw std::invalid_argument("cannot erase the root subtree");
    std::size_t pos = vertex_position(vertex);
    std::size_t end = pos;
    skip_subtree(code_, end);
    // Find the parent position to decrement its arity.
    int p = parent(vertex);
    std::size_t ppos = vertex_position(p);
    std::vector<int> code(code_);
    --code[ppos];
    code.erase(code.begin() + pos, code.begin() + end);
    return from_code(std::move(code));
}

PlanarTree PlanarTree::splice_out(int vertex) const {
    if (arity(vertex) != 1)
        throw std::invalid_argument("splice_out requires a unary vertex");
    std::size_t pos = vertex_position(vertex);
    std::vector<int> code(code_);
    code.erase(code.begin() + pos);
    return from_code(std::move(code));
}

PlanarTree PlanarTree::contract_edge(int vertex) const {
    int p = parent(vertex);
    if (p < 0) throw std::invalid_argument("root has no stem edge to contract");
    std::size_t ppos = vertex_position(p);
    std::size_t pos = vertex_position(vertex);
    std::vector<int> code(code_);
    code[ppos] += code[pos] - 1;
    code.erase(code.begin() + pos);
    return from_code(std::move(code));
}

std::string render(const PlanarTree& t, char label) {
    std::string out;
    const auto& code = t.code();
    std::size_t i = 0;
    auto rec = [&](auto&& self) -> void {
        int c = code[i++];
        if (c < 0) {
            out += 'L';
            return;
        }
        out += label;
        out += '(';
        for (int k = 0; k < c; ++k) {
            if (k) out += ',';
            self(self);
        }
        out += ')';
    };
    rec(rec);
    return out;
}

PlanarTree parse_tree(const std::string& text) {
    std::size_t i = 0;
    std::vector<int> code;
    auto fail = [&](const std::string& what) { throw parse_error(what, i); };
    auto rec = [&](auto&& self) -> void {
        if (i >= text.size()) fail("unexpected end of input");
        char c = text[i];
        if (c == 'L') {
            ++i;
            code.push_back(-1);
            return;
        }
        if (c != '*') fail("expected 'L' or '*'");
        ++i;
        if (i >= text.size() || text[i] != '(') fail("expected '('");
        ++i;
        std::size_t arity_pos = code.size();
        code.push_back(0);
        if (i < text.size() && text[i] == ')') {
            ++i;
            return;
        }
        while (true) {
            self(self);
            ++code[arity_pos];
            if (i >= text.size()) fail("expected ',' or ')'");
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
    if (i != text.size()) throw parse_error("trailing characters", i);
    return PlanarTree::from_code(std::move(code));
}

namespace {

// Memoized generator: all trees with the exact leaf and vertex counts.
const std::vector<PlanarTree>& trees_exact(int leaves, int vertices) {
    static std::map<std::pair<int, int>, std::vector<PlanarTree>> cache;
    auto key = std::make_pair(leaves, vertices);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<PlanarTree> out;
    if (leaves == 1 && vertices == 0) {
        out.push_back(PlanarTree::edge());
    } else if (vertices >= 1 && leaves >= 0) {
        // Root vertex plus an ordered forest with the remaining counts.
        // forests(l, v): lists of subtrees with total l leaves, v vertices.
        auto forests = [&](auto&& self, int l, int v) -> std::vector<std::vector<PlanarTree>> {
            std::vector<std::vector<PlanarTree>> res;
            if (l == 0 && v == 0) {
                res.push_back({});
                return res;
            }
            for (int fl = 0; fl <= l; ++fl) {
                for (int fv = 0; fv <= v; ++fv) {
                    if (fl == 0 && fv == 0) continue;
                    for (const auto& first : trees_exact(fl, fv)) {
                        for (auto rest : self(self, l - fl, v - fv)) {
                            rest.insert(rest.begin(), first);
                            res.push_back(std::move(rest));
                        }
                    }
                }
            }
            return res;
        };
        for (auto& forest : forests(forests, leaves, vertices - 1))
            out.push_back(PlanarTree::vertex(forest));
    }
    std::sort(out.begin(), out.end(),
              [](const PlanarTree& a, const PlanarTree& b) { return render(a) < render(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

std::vector<PlanarTree> enumerate_trees(int leaves, int max_vertices) {
    if (leaves < 0 || max_vertices < 0)
        throw std::invalid_argument("enumerate_trees: negative bound");
    std::vector<PlanarTree> out;
    for (int v = 0; v <= max_vertices; ++v) {
        const auto& batch = trees_exact(leaves, v);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    std::sort(out.begin(), out.end(),
              [](const PlanarTree& a, const PlanarTree& b) { return render(a) < render(b); });
    return out;
}

std::vector<std::vector<int>> paths(const PlanarTree& t) {
    std::vector<std::vector<int>> out;
    std::vector<int> stack;
    const auto& code = t.code();
    std::size_t i = 0;
    int v = -1;
    auto rec = [&](auto&& self) -> void {
        int c = code[i++];
        if (c < 0) {
            out.push_back(stack);
            return;
        }
        ++v;
        stack.push_back(v);
        if (c == 0) out.push_back(stack);
        for (int k = 0; k < c; ++k) self(self);
        stack.pop_back();
    };
    rec(rec);
    return out;
}

}  // namespace optrees
