#include <gmpxx.h>
#include <omp.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "optrees/homology.hpp"
#include "optrees/parallel.hpp"

namespace optrees {

bool HomologyReport::acyclic_through(int d) const {
    if (d > max_degree) return false;
    if (betti.empty() || betti[0] != 1) return false;
    for (int q = 1; q <= d; ++q)
        if (betti[q] != 0) return false;
    for (int q = 0; q <= d; ++q)
        if (!torsion[q].empty()) return false;
    return true;
}

std::string HomologyReport::summary() const {
    std::string s;
    for (int q = 0; q <= max_degree; ++q) {
        if (q) s += " ";
        s += "H" + std::to_string(q) + "=Z^" + std::to_string(betti[q]);
        for (long long t : torsion[q]) s += "+Z/" + std::to_string(t);
    }
    if (!top_degree_exact) s += " (top degree upper bound)";
    return s;
}

namespace {

// Smith normal form diagonal of a sparse integer matrix; rows map column to
// value.  Exact over arbitrary precision integers.
std::vector<mpz_class> smith_diagonal(std::vector<std::map<int, mpz_class>> rows) {
    std::vector<mpz_class> diag;
    while (true) {
        int pr = -1, pc = -1;
        mpz_class best;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (const auto& [c, v] : rows[r]) {
                if (v == 0) continue;
                mpz_class av = abs(v);
                if (pr < 0 || av < best) {
                    best = av;
                    pr = static_cast<int>(r);
                    pc = c;
                }
            }
            if (pr >= 0 && best == 1) break;
        }
        if (pr < 0) break;

        bool again = true;
        while (again) {
            again = false;
            mpz_class p = rows[pr][pc];
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (static_cast<int>(r) == pr) continue;
                auto it = rows[r].find(pc);
                if (it == rows[r].end() || it->second == 0) continue;
                mpz_class q = it->second / p;
                if (q != 0) {
                    for (const auto& [c, v] : rows[pr]) {
                        auto& dst = rows[r][c];
                        dst -= q * v;
                        if (dst == 0) rows[r].erase(c);
                    }
                }
                it = rows[r].find(pc);
                if (it != rows[r].end() && it->second != 0) {
                    std::swap(rows[pr], rows[r]);  // smaller remainder becomes the pivot
                    again = true;
                    break;
                }
            }
            if (again) continue;
            p = rows[pr][pc];
            std::vector<std::pair<int, mpz_class>> row(rows[pr].begin(), rows[pr].end());
            for (const auto& [c, v] : row) {
                if (c == pc || v == 0) continue;
                mpz_class q = v / p;
                mpz_class rem = v - q * p;
                if (rem == 0)
                    rows[pr].erase(c);
                else
                    rows[pr][c] = rem;
            }
            // Fold a non-divisible column into the pivot column and retry.
            for (const auto& [c, v] : rows[pr]) {
                if (c == pc || v == 0) continue;
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    auto it = rows[r].find(c);
                    if (it == rows[r].end()) continue;
                    rows[r][pc] += it->second;
                    if (rows[r][pc] == 0) rows[r].erase(pc);
                }
                again = true;
                break;
            }
        }
        diag.push_back(abs(rows[pr][pc]));
        rows[pr].clear();
        for (auto& r : rows) r.erase(pc);
    }
    // Normalize to the divisibility chain of invariant factors.
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
            if (diag[i + 1] % diag[i] != 0) {
                mpz_class g = gcd(diag[i], diag[i + 1]);
                mpz_class l = diag[i] / g * diag[i + 1];
                diag[i] = g;
                diag[i + 1] = l;
                moved = true;
            }
        }
    }
    std::sort(diag.begin(), diag.end());
    return diag;
}

struct ReducedComplex {
    std::vector<std::vector<char>> alive;  // per dimension
    const CellComplex* cx = nullptr;
    long long alive_count(int k) const {
        return std::count(alive[k].begin(), alive[k].end(), char(1));
    }
};

ReducedComplex all_alive(const CellComplex& cx) {
    ReducedComplex rc;
    rc.cx = &cx;
    rc.alive.resize(cx.dim() + 1);
    rc.alive[0].assign(cx.n0, 1);
    for (int k = 1; k <= cx.dim(); ++k) rc.alive[k].assign(cx.boundary[k - 1].size(), 1);
    return rc;
}

// Free-pair coreduction.  Starts with the augmentation pair (one base
// vertex) and a spanning-forest contraction, then sweeps until no cell has a
// single alive boundary entry of coefficient +-1.  Homology in degrees >= 1
// is preserved; degree 0 is recovered from components separately.
ReducedComplex coreduce(const CellComplex& cx) {
    ReducedComplex rc = all_alive(cx);
    if (cx.n0 == 0) return rc;
    if (cx.dim() >= 1) {
        std::vector<std::vector<std::pair<int, int>>> adj(cx.n0);
        for (std::size_t e = 0; e < cx.boundary[0].size(); ++e) {
            const auto& b = cx.boundary[0][e];
            if (b.size() == 2) {
                adj[b[0].first].emplace_back(b[1].first, static_cast<int>(e));
                adj[b[1].first].emplace_back(b[0].first, static_cast<int>(e));
            }
        }
        std::vector<char> seen(cx.n0, 0);
        for (int root = 0; root < cx.n0; ++root) {
            if (seen[root]) continue;
            seen[root] = 1;
            std::vector<int> stack{root};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (auto [w, e] : adj[v]) {
                    if (seen[w] || !rc.alive[1][e]) continue;
                    seen[w] = 1;
                    rc.alive[1][e] = 0;
                    rc.alive[0][w] = 0;
                    stack.push_back(w);
                }
            }
        }
    }
    rc.alive[0][0] = 0;  // augmentation

    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 1; k <= cx.dim(); ++k) {
            for (std::size_t c = 0; c < cx.boundary[k - 1].size(); ++c) {
                if (!rc.alive[k][c]) continue;
                int face = -1;
                long long coeff = 0;
                bool single = true;
                for (auto [cell, co] : cx.boundary[k - 1][c]) {
                    if (!rc.alive[k - 1][cell]) continue;
                    if (face >= 0) {
                        single = false;
                        break;
                    }
                    face = cell;
                    coeff = co;
                }
                if (single && face >= 0 && (coeff == 1 || coeff == -1)) {
                    rc.alive[k][c] = 0;
                    rc.alive[k - 1][face] = 0;
                    changed = true;
                }
            }
        }
    }
    return rc;
}

std::vector<std::map<int, mpz_class>> restricted_boundary(const ReducedComplex& rc, int k) {
    std::vector<std::map<int, mpz_class>> rows;
    const auto& bnd = rc.cx->boundary[k - 1];
    for (std::size_t c = 0; c < bnd.size(); ++c) {
        if (!rc.alive[k][c]) continue;
        std::map<int, mpz_class> row;
        for (auto [cell, co] : bnd[c])
            if (rc.alive[k - 1][cell]) row[cell] = co;
        rows.push_back(std::move(row));
    }
    return rows;
}

int components_via_edges(const CellComplex& cx) {
    std::vector<int> parent(cx.n0);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    if (cx.dim() >= 1)
        for (const auto& b : cx.boundary[0])
            if (b.size() == 2) parent[find(b[0].first)] = find(b[1].first);
    int comps = 0;
    for (int v = 0; v < cx.n0; ++v) comps += (find(v) == v);
    return comps;
}

}  // namespace

HomologyReport homology(const CellComplex& cx, int max_deg, bool use_coreduction) {
    HomologyReport rep;
    rep.max_degree = max_deg;
    rep.betti.assign(max_deg + 1, 0);
    rep.torsion.assign(max_deg + 1, {});
    rep.top_degree_exact = max_deg < cx.dim() || cx.cells(cx.dim()) == 0;
    if (cx.n0 == 0) {
        rep.connected = false;
        return rep;
    }
    int comps = components_via_edges(cx);
    rep.connected = comps == 1;
    rep.betti[0] = comps;

    ReducedComplex rc = use_coreduction ? coreduce(cx) : all_alive(cx);
    std::vector<std::vector<mpz_class>> diag(cx.dim() + 2);
    for (int k = 1; k <= cx.dim(); ++k) diag[k] = smith_diagonal(restricted_boundary(rc, k));
    auto rank = [&](int k) -> long long {
        return (k >= 1 && k <= cx.dim()) ? static_cast<long long>(diag[k].size()) : 0;
    };

    for (int q = 1; q <= max_deg; ++q) {
        long long alive_q = q <= cx.dim() ? rc.alive_count(q) : 0;
        long long b = alive_q - rank(q) - rank(q + 1);
        if (!use_coreduction) {
            // Without reductions the formula needs the raw counts and, in
            // degree one, the discarded base does not apply.
            b = cx.cells(q) - rank(q) - rank(q + 1);
        }
        rep.betti[q] = b;
        for (const auto& d : diag[q + 1])
            if (d > 1) rep.torsion[q].push_back(static_cast<long long>(d.get_si()));
    }
    return rep;
}

namespace {

// Streaming homology through degree 2 for large categories: dimensions 0-2
// materialized, dimension 3 enumerated in blocks with free-pair coreduction
// on the fly, Smith normal form on the remainder.
HomologyReport homology_streaming(const FinCategory& cat) {
    HomologyReport rep;
    rep.max_degree = 2;
    rep.betti.assign(3, 0);
    rep.torsion.assign(3, {});
    rep.top_degree_exact = true;
    int n0 = cat.object_count();
    if (n0 == 0) {
        rep.connected = false;
        return rep;
    }
    int nmor = cat.morphism_count();
    int n1 = nmor - n0;
    auto c1_of = [&](int m) { return m - n0; };

    struct C2 {
        int f, g;  // morphism ids
        int comp;  // composite morphism id (possibly an identity)
    };
    std::vector<C2> c2;
    {
        std::vector<std::vector<C2>> per_f(n1);
        bool par = parallel_enabled();
#pragma omp parallel for schedule(dynamic, 64) if (par)
        for (int fi = 0; fi < n1; ++fi) {
            int f = n0 + fi;
            std::vector<C2> local;
            for (int g : cat.out_morphisms(cat.tgt(f)))
                local.push_back({f, g, cat.compose(f, g)});
            std::sort(local.begin(), local.end(),
                      [](const C2& a, const C2& b) { return a.g < b.g; });
            per_f[fi] = std::move(local);
        }
        std::size_t total = 0;
        for (auto& v : per_f) total += v.size();
        c2.reserve(total);
        for (auto& v : per_f) c2.insert(c2.end(), v.begin(), v.end());
    }
    auto c2_index = [&](int f, int g) -> long long {
        auto it = std::lower_bound(c2.begin(), c2.end(), std::make_pair(f, g),
                                   [](const C2& a, const std::pair<int, int>& key) {
                                       return std::make_pair(a.f, a.g) < key;
                                   });
        if (it == c2.end() || it->f != f || it->g != g) return -1;
        return it - c2.begin();
    };

    std::vector<char> alive0(n0, 1), alive1(n1, 1), alive2(c2.size(), 1);
    {
        std::vector<int> parent(n0);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::vector<std::vector<std::pair<int, int>>> adj(n0);
        for (int m = n0; m < nmor; ++m) {
            if (cat.src(m) == cat.tgt(m)) continue;
            adj[cat.src(m)].emplace_back(cat.tgt(m), c1_of(m));
            adj[cat.tgt(m)].emplace_back(cat.src(m), c1_of(m));
            parent[find(cat.src(m))] = find(cat.tgt(m));
        }
        int comps = 0;
        for (int v = 0; v < n0; ++v) comps += (find(v) == v);
        rep.connected = comps == 1;
        rep.betti[0] = comps;
        std::vector<char> seen(n0, 0);
        for (int root = 0; root < n0; ++root) {
            if (seen[root]) continue;
            seen[root] = 1;
            std::vector<int> stack{root};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (auto [w, e] : adj[v]) {
                    if (seen[w] || !alive1[e]) continue;
                    seen[w] = 1;
                    alive1[e] = 0;
                    alive0[w] = 0;
                    stack.push_back(w);
                }
            }
        }
        alive0[0] = 0;
    }

    auto boundary2 = [&](std::size_t i, std::pair<int, long long>* out) -> int {
        std::map<int, long long> acc;
        const C2& c = c2[i];
        acc[c1_of(c.g)] += 1;
        if (!cat.is_identity(c.comp)) acc[c1_of(c.comp)] -= 1;
        acc[c1_of(c.f)] += 1;
        int n = 0;
        for (auto [cell, co] : acc)
            if (co != 0 && alive1[cell]) out[n++] = {cell, co};
        return n;
    };

    auto sweep12 = [&]() {
        bool any = false;
        bool changed = true;
        std::pair<int, long long> buf[3];
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < c2.size(); ++i) {
                if (!alive2[i]) continue;
                int n = boundary2(i, buf);
                if (n == 1 && (buf[0].second == 1 || buf[0].second == -1)) {
                    alive2[i] = 0;
                    alive1[buf[0].first] = 0;
                    changed = any = true;
                }
            }
        }
        return any;
    };
    sweep12();

    // Stream dimension 3 in blocks: faces computed in parallel, the greedy
    // coreduction decisions taken serially in canonical order.
    struct Cand {
        int32_t faces[4];
        int8_t coeffs[4];
        int8_t n;
    };
    struct Surv {
        int32_t faces[4];
        int8_t coeffs[4];
        int8_t n;
    };
    std::vector<Surv> survivors;
    const std::size_t block_rows = 100000;
    bool par = parallel_enabled();
    for (std::size_t row0 = 0; row0 < c2.size(); row0 += block_rows) {
        std::size_t row1 = std::min(c2.size(), row0 + block_rows);
        std::vector<std::vector<Cand>> per_row(row1 - row0);
#pragma omp parallel for schedule(dynamic, 256) if (par)
        for (std::size_t i = row0; i < row1; ++i) {
            std::vector<Cand> local;
            const C2& fg = c2[i];
            for (int h : cat.out_morphisms(cat.tgt(fg.g))) {
                long long d0 = c2_index(fg.g, h);
                std::map<long long, long long> acc;
                acc[d0] += 1;
                if (!cat.is_identity(fg.comp)) acc[c2_index(fg.comp, h)] -= 1;
                int hg = c2[d0].comp;
                if (!cat.is_identity(hg)) acc[c2_index(fg.f, hg)] += 1;
                acc[static_cast<long long>(i)] -= 1;
                Cand cd{};
                cd.n = 0;
                for (auto [cell, co] : acc) {
                    if (co == 0) continue;
                    if (cell < 0) throw std::logic_error("streaming nerve: missing face");
                    if (!alive2[cell]) continue;
                    cd.faces[cd.n] = static_cast<int32_t>(cell);
                    cd.coeffs[cd.n] = static_cast<int8_t>(co);
                    ++cd.n;
                }
                if (cd.n > 0) local.push_back(cd);
            }
            per_row[i - row0] = std::move(local);
        }
        // Serial decisions, canonical order.
        for (auto& rowcands : per_row) {
            for (const Cand& cd : rowcands) {
                int live = 0;
                int32_t cell = -1;
                int8_t co = 0;
                for (int k = 0; k < cd.n; ++k) {
                    if (!alive2[cd.faces[k]]) continue;
                    ++live;
                    cell = cd.faces[k];
                    co = cd.coeffs[k];
                }
                if (live == 0) continue;
                if (live == 1 && (co == 1 || co == -1)) {
                    alive2[cell] = 0;
                    continue;
                }
                Surv s{};
                s.n = cd.n;
                for (int k = 0; k < cd.n; ++k) {
                    s.faces[k] = cd.faces[k];
                    s.coeffs[k] = cd.coeffs[k];
                }
                survivors.push_back(s);
            }
        }
    }

    // Iterate survivor/(1,2) sweeps to a fixpoint.
    std::vector<char> alive3(survivors.size(), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < survivors.size(); ++i) {
            if (!alive3[i]) continue;
            int live = 0;
            int32_t cell = -1;
            int8_t co = 0;
            for (int k = 0; k < survivors[i].n; ++k) {
                if (!alive2[survivors[i].faces[k]]) continue;
                ++live;
                cell = survivors[i].faces[k];
                co = survivors[i].coeffs[k];
            }
            if (live == 0) {
                alive3[i] = 0;
            } else if (live == 1 && (co == 1 || co == -1)) {
                alive3[i] = 0;
                alive2[cell] = 0;
                changed = true;
            }
        }
        if (sweep12()) changed = true;
    }

    std::vector<int> idx1(n1, -1);
    std::vector<long long> idx2(c2.size(), -1);
    std::vector<int> idx0(n0, -1);
    long long a0 = 0, a1 = 0, a2 = 0;
    for (int v = 0; v < n0; ++v)
        if (alive0[v]) idx0[v] = static_cast<int>(a0++);
    for (int e = 0; e < n1; ++e)
        if (alive1[e]) idx1[e] = static_cast<int>(a1++);
    for (std::size_t i = 0; i < c2.size(); ++i)
        if (alive2[i]) idx2[i] = a2++;

    std::vector<std::map<int, mpz_class>> m1, m2, m3;
    for (int m = n0; m < nmor; ++m) {
        int e = c1_of(m);
        if (!alive1[e]) continue;
        std::map<int, mpz_class> row;
        if (cat.src(m) != cat.tgt(m)) {
            if (alive0[cat.tgt(m)]) row[idx0[cat.tgt(m)]] += 1;
            if (alive0[cat.src(m)]) row[idx0[cat.src(m)]] -= 1;
        }
        m1.push_back(std::move(row));
    }
    {
        std::pair<int, long long> buf[3];
        for (std::size_t i = 0; i < c2.size(); ++i) {
            if (!alive2[i]) continue;
            int n = boundary2(i, buf);
            std::map<int, mpz_class> row;
            for (int k = 0; k < n; ++k) row[idx1[buf[k].first]] = buf[k].second;
            m2.push_back(std::move(row));
        }
    }
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        if (!alive3[i]) continue;
        std::map<int, mpz_class> row;
        for (int k = 0; k < survivors[i].n; ++k)
            if (alive2[survivors[i].faces[k]])
                row[static_cast<int>(idx2[survivors[i].faces[k]])] = survivors[i].coeffs[k];
        m3.push_back(std::move(row));
    }

    auto d1 = smith_diagonal(std::move(m1));
    auto d2 = smith_diagonal(std::move(m2));
    auto d3 = smith_diagonal(std::move(m3));
    rep.betti[1] = a1 - static_cast<long long>(d1.size()) - static_cast<long long>(d2.size());
    rep.betti[2] = a2 - static_cast<long long>(d2.size()) - static_cast<long long>(d3.size());
    for (const auto& d : d2)
        if (d > 1) rep.torsion[1].push_back(static_cast<long long>(d.get_si()));
    for (const auto& d : d3)
        if (d > 1) rep.torsion[2].push_back(static_cast<long long>(d.get_si()));
    return rep;
}

}  // namespace

HomologyReport homology_of_category(const FinCategory& cat, int max_deg) {
    if (max_deg == 2) {
        long long est2 = 0;
        for (int m = cat.object_count(); m < cat.morphism_count(); ++m)
            est2 += static_cast<long long>(cat.out_morphisms(cat.tgt(m)).size());
        if (est2 > 200000) return homology_streaming(cat);
    }
    NerveComplex nv = nerve(cat, max_deg + 1);
    return homology(nv.to_cell_complex(), max_deg);
}

HomologyReport order_complex_homology(const FinCategory& poset, int max_deg) {
    int n = poset.object_count();
    std::vector<std::vector<char>> lt(n, std::vector<char>(n, 0));
    for (int m = n; m < poset.morphism_count(); ++m) lt[poset.src(m)][poset.tgt(m)] = 1;

    CellComplex cx;
    cx.n0 = n;
    cx.boundary.resize(max_deg + 1);
    std::vector<std::vector<int>> prev;
    std::map<std::vector<int>, int> prev_index;
    for (int v = 0; v < n; ++v) {
        prev.push_back({v});
        prev_index[{v}] = v;
    }
    for (int k = 1; k <= max_deg + 1; ++k) {
        std::vector<std::vector<int>> cur;
        for (const auto& chain : prev)
            for (int next = 0; next < n; ++next)
                if (lt[chain.back()][next]) {
                    auto ext = chain;
                    ext.push_back(next);
                    cur.push_back(std::move(ext));
                }
        std::sort(cur.begin(), cur.end());
        std::map<std::vector<int>, int> cur_index;
        for (std::size_t i = 0; i < cur.size(); ++i) cur_index[cur[i]] = static_cast<int>(i);
        auto& bs = cx.boundary[k - 1];
        bs.resize(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i) {
            for (int drop = 0; drop <= k; ++drop) {
                auto face = cur[i];
                face.erase(face.begin() + drop);
                auto it = prev_index.find(face);
                if (it == prev_index.end()) throw std::logic_error("order complex: missing face");
                bs[i].emplace_back(it->second, drop % 2 == 0 ? 1 : -1);
            }
        }
        prev = std::move(cur);
        prev_index = std::move(cur_index);
        if (prev.empty()) {
            cx.boundary.resize(k);
            break;
        }
    }
    return homology(cx, max_deg);
}

}  // namespace optrees
