#pragma once

// Test-only reference implementations, kept independent of the library's
// fast paths on purpose.

#include <vector>

#include "optrees/monad.hpp"
#include "optrees/tree.hpp"

namespace optrees::oracles {

enum class Region { Below, LineC, LineE, LineD, Above };

// Brute-force line-and-point check: search all maps vertices -> regions and
// accept when one respects the labels, path monotonicity, the single point,
// and the preorder order C < E < D of on-line vertices.
inline bool region_assignment_exists(const Operation& op) {
    const int n = op.tree.vertex_count();
    for (int v = 0; v < n; ++v)
        if (!label_leq(op.labels[v], op.target)) return false;

    auto region_matches = [](Label l, Region r) {
        switch (r) {
            case Region::Below: return l == Label::A;
            case Region::LineC: return l == Label::C;
            case Region::LineE: return l == Label::E;
            case Region::LineD: return l == Label::D;
            case Region::Above: return l == Label::B;
        }
        return false;
    };
    auto level = [](Region r) { return r == Region::Below ? 0 : r == Region::Above ? 2 : 1; };

    std::vector<Region> assign(n, Region::Below);
    auto consistent = [&]() {
        for (const auto& path : paths(op.tree)) {
            int prev = 0, line_seen = 0;
            for (int v : path) {
                int lv = level(assign[v]);
                if (lv < prev) return false;
                if (lv == 1) {
                    if (++line_seen > 1) return false;
                    prev = 2;  // anything later sits strictly above the line
                    continue;
                }
                prev = lv;
            }
        }
        int points = 0;
        int stage = 0;  // 0 = C zone, 1 = point passed, 2 = D zone
        for (int v = 0; v < n; ++v) {
            switch (assign[v]) {
                case Region::LineC:
                    if (stage > 0) return false;
                    break;
                case Region::LineE:
                    if (++points > 1 || stage > 0) return false;
                    stage = 1;
                    break;
                case Region::LineD: stage = 2; break;
                default: break;
            }
        }
        return true;
    };

    auto search = [&](auto&& self, int v) -> bool {
        if (v == n) return consistent();
        for (Region r : {Region::Below, Region::LineC, Region::LineE, Region::LineD, Region::Above}) {
            if (!region_matches(op.labels[v], r)) continue;
            assign[v] = r;
            if (self(self, v + 1)) return true;
        }
        return false;
    };
    return search(search, 0);
}

// The oracle's verdict for the two line-and-point monads of interest.
inline bool oracle_admissible(MonadSpec s, const Operation& op) {
    if (s == MonadSpec::BimodDiamond) {
        if (op.target == Label::E) return false;
        for (Label l : op.labels)
            if (l == Label::E) return false;
    }
    return region_assignment_exists(op);
}

// Independent tree generator: tries every code over {-1, 0, .., max_arity}
// up to the requested length and keeps the ones that parse as a single tree
// with the required leaf count.
inline std::vector<PlanarTree> brute_force_trees(int leaves, int max_vertices) {
    std::vector<PlanarTree> out;
    int max_arity = leaves + max_vertices;
    int max_len = max_vertices + leaves;
    std::vector<int> code;
    auto valid_tree = [&]() {
        int pending = 1, vertices = 0, leaf_cnt = 0;
        for (std::size_t i = 0; i < code.size(); ++i) {
            if (pending == 0) return false;
            if (code[i] >= 0) {
                ++vertices;
                pending += code[i] - 1;
            } else {
                ++leaf_cnt;
                --pending;
            }
        }
        return pending == 0 && vertices <= max_vertices && leaf_cnt == leaves;
    };
    auto rec = [&](auto&& self) -> void {
        if (!code.empty() && valid_tree()) out.push_back(PlanarTree::from_code(code));
        if (static_cast<int>(code.size()) >= max_len) return;
        for (int entry = -1; entry <= max_arity; ++entry) {
            code.push_back(entry);
            self(self);
            code.pop_back();
        }
    };
    rec(rec);
    std::sort(out.begin(), out.end(),
              [](const PlanarTree& a, const PlanarTree& b) { return render(a) < render(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// All labellings of a tree shape with labels below the target, as operations
// (admissible or not).
inline std::vector<Operation> all_labellings(const PlanarTree& shape, Label target) {
    std::vector<Operation> out;
    int n = shape.vertex_count();
    std::vector<Label> labels(n, Label::A);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            out.push_back(Operation{shape, labels, target});
            return;
        }
        for (int li = 0; li < 5; ++li) {
            labels[v] = static_cast<Label>(li);
            self(self, v + 1);
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace optrees::oracles
