#include <algorithm>
#include <map>

#include "optrees/homology.hpp"

namespace optrees {

NerveComplex nerve(const FinCategory& cat, int max_dim) {
    NerveComplex out;
    out.cat = &cat;
    out.max_dim = max_dim;
    out.chains.resize(std::max(0, max_dim));
    if (max_dim < 1) return out;

    auto& c1 = out.chains[0];
    for (int m = cat.object_count(); m < cat.morphism_count(); ++m) c1.push_back({m});
    for (int k = 2; k <= max_dim; ++k) {
        const auto& prev = out.chains[k - 2];
        auto& cur = out.chains[k - 1];
        for (const auto& chain : prev) {
            for (int m : cat.out_morphisms(cat.tgt(chain.back()))) {
                auto ext = chain;
                ext.push_back(m);
                cur.push_back(std::move(ext));
            }
        }
        std::sort(cur.begin(), cur.end());
    }
    return out;
}

CellComplex NerveComplex::to_cell_complex() const {
    CellComplex cx;
    cx.n0 = cat->object_count();
    cx.boundary.resize(max_dim);
    std::vector<std::map<std::vector<int>, int>> index(max_dim);
    for (int k = 1; k <= max_dim; ++k)
        for (std::size_t i = 0; i < chains[k - 1].size(); ++i)
            index[k - 1][chains[k - 1][i]] = static_cast<int>(i);

    for (int k = 1; k <= max_dim; ++k) {
        auto& bs = cx.boundary[k - 1];
        bs.resize(chains[k - 1].size());
        for (std::size_t i = 0; i < chains[k - 1].size(); ++i) {
            const auto& chain = chains[k - 1][i];
            std::map<int, long long> acc;
            if (k == 1) {
                acc[cat->tgt(chain[0])] += 1;
                acc[cat->src(chain[0])] -= 1;
            } else {
                for (int face = 0; face <= k; ++face) {
                    std::vector<int> f;
                    if (face == 0) {
                        f.assign(chain.begin() + 1, chain.end());
                    } else if (face == k) {
                        f.assign(chain.begin(), chain.end() - 1);
                    } else {
                        f = chain;
                        int c = cat->compose(f[face - 1], f[face]);
                        if (cat->is_identity(c)) continue;  // degenerate face
                        f.erase(f.begin() + face);
                        f[face - 1] = c;
                    }
                    auto it = index[k - 2].find(f);
                    if (it == index[k - 2].end())
                        throw std::logic_error("nerve: face chain missing");
                    acc[it->second] += (face % 2 == 0) ? 1 : -1;
                }
            }
            for (auto [cell, coeff] : acc)
                if (coeff != 0) bs[i].emplace_back(cell, coeff);
        }
    }
    return cx;
}

std::optional<std::string> CellComplex::check_dd_zero() const {
    for (int k = 2; k <= dim(); ++k) {
        for (std::size_t i = 0; i < boundary[k - 1].size(); ++i) {
            std::map<int, long long> acc;
            for (auto [cell, coeff] : boundary[k - 1][i])
                for (auto [sub, c2] : boundary[k - 2][cell]) acc[sub] += coeff * c2;
            for (auto [cell, coeff] : acc)
                if (coeff != 0)
                    return "dd != 0 at dimension " + std::to_string(k) + " cell " +
                           std::to_string(i);
        }
    }
    return std::nullopt;
}

}  // namespace optrees
