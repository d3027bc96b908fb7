// Test-only oracles, independent of the library's canonical form and
// Pruefer-sequence enumeration: explicit isomorphism search by trying all
// label-respecting bijections, and a census generator that enumerates raw
// spanning trees with unconstrained decorations and lets validation filter.
#pragma once

#include "pearl/combtype.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace pearl::oracle {

inline bool payload_equal(const Marking& a, const Marking& b)
{
    if (a.interior != b.interior)
        return false;
    if (a.interior)
        return a.label == b.label && a.tag == b.tag;
    return a.role == b.role && a.label == b.label && a.side == b.side;
}

inline bool payload_equal(const Edge& a, const Edge& b)
{
    if (a.node != b.node)
        return false;
    if (a.len.has_value() != b.len.has_value())
        return false;
    if (a.len && !(*a.len == *b.len))
        return false;
    return a.side == b.side;
}

// Explicit isomorphism search for connected types.
inline bool isomorphic(const CombType& a, const CombType& b)
{
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size() ||
        a.markings.size() != b.markings.size() || a.chains.size() != b.chains.size())
        return false;

    std::vector<int> bids;
    for (const auto& v : b.vertices)
        bids.push_back(v.id);
    std::sort(bids.begin(), bids.end());

    do {
        // candidate map: i-th vertex of a -> bids[i]
        auto image = [&](int aid) {
            for (size_t i = 0; i < a.vertices.size(); ++i)
                if (a.vertices[i].id == aid)
                    return bids[i];
            return -1;
        };
        bool ok = true;
        for (const auto& v : a.vertices)
            if (b.find_vertex(image(v.id))->kind != v.kind) {
                ok = false;
                break;
            }
        if (ok) {
            for (size_t c = 0; c < a.chains.size() && ok; ++c) {
                std::vector<int> mapped;
                for (int v : a.chains[c])
                    mapped.push_back(image(v));
                bool found = false;
                for (const auto& bc : b.chains)
                    if (bc == mapped)
                        found = true;
                ok = found;
            }
        }
        if (ok) {
            std::set<int> used;
            for (const auto& e : a.edges) {
                bool found = false;
                for (const auto& f : b.edges) {
                    if (used.count(f.id))
                        continue;
                    bool same_ends =
                        (f.a == image(e.a) && f.b == image(e.b)) ||
                        (f.a == image(e.b) && f.b == image(e.a));
                    if (same_ends && payload_equal(e, f)) {
                        used.insert(f.id);
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            std::set<int> used;
            for (const auto& m : a.markings) {
                bool found = false;
                for (const auto& n : b.markings) {
                    if (used.count(n.id))
                        continue;
                    if (n.vertex == image(m.vertex) && payload_equal(m, n)) {
                        used.insert(n.id);
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok)
            return true;
    } while (std::next_permutation(bids.begin(), bids.end()));
    return false;
}

// All spanning trees on vertices 0..v-1, found by filtering edge subsets.
inline std::vector<std::vector<std::pair<int, int>>> spanning_trees(int v)
{
    std::vector<std::pair<int, int>> all;
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j)
            all.push_back({i, j});
    std::vector<std::vector<std::pair<int, int>>> out;
    if (v == 1) {
        out.push_back({});
        return out;
    }
    for (int mask = 0; mask < (1 << all.size()); ++mask) {
        if (__builtin_popcount(mask) != v - 1)
            continue;
        std::vector<int> parent(v);
        for (int i = 0; i < v; ++i)
            parent[i] = i;
        auto find = [&](int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        bool acyclic = true;
        std::vector<std::pair<int, int>> edges;
        for (size_t i = 0; i < all.size(); ++i) {
            if (!((mask >> i) & 1))
                continue;
            int ra = find(all[i].first), rb = find(all[i].second);
            if (ra == rb) {
                acyclic = false;
                break;
            }
            parent[ra] = rb;
            edges.push_back(all[i]);
        }
        if (acyclic)
            out.push_back(edges);
    }
    return out;
}

// Exhaustive census by raw decoration: every edge gets every (node kind,
// length class, side) decoration, every strip subset gets every chain
// order, and validation plus stability do all the filtering.
inline std::vector<CombType> census(int n, int max_vertices, TKind kind,
                                    bool require_stable = true)
{
    std::vector<CombType> found;
    auto record = [&](const CombType& t) {
        for (const auto& old : found)
            if (isomorphic(old, t))
                return;
        found.push_back(t);
    };

    for (int v = 1; v <= max_vertices; ++v) {
        for (const auto& tree : spanning_trees(v)) {
            std::vector<int> kinds(v, 0);
            for (;;) {
                std::vector<int> strips;
                for (int i = 0; i < v; ++i)
                    if (kinds[i] == 0)
                        strips.push_back(i);
                bool kind_ok = (kind == TKind::strip)
                                   ? !strips.empty()
                                   : strips.empty() &&
                                         std::any_of(kinds.begin(), kinds.end(),
                                                     [](int k) { return k == 1; });
                if (kind_ok) {
                    // chain candidates: all orderings of the strip vertices
                    std::vector<std::vector<int>> chains;
                    if (strips.empty()) {
                        chains.push_back({});
                    } else {
                        std::vector<int> perm = strips;
                        std::sort(perm.begin(), perm.end());
                        do {
                            chains.push_back(perm);
                        } while (std::next_permutation(perm.begin(), perm.end()));
                    }
                    // decorations per edge: interior, or boundary with
                    // length class 0/1/inf and side none/0/1
                    const int options = 10;
                    std::vector<int> deco(tree.size(), 0);
                    for (;;) {
                        for (const auto& chain : chains) {
                            std::vector<int> place(n, 0);
                            for (;;) {
                                CombType t;
                                for (int i = 0; i < v; ++i)
                                    t.vertices.push_back(
                                        {i, kinds[i] == 0   ? VKind::strip
                                             : kinds[i] == 1 ? VKind::disk
                                                             : VKind::sphere});
                                for (size_t i = 0; i < tree.size(); ++i) {
                                    Edge e;
                                    e.id = (int)i + 1;
                                    e.a = tree[i].first;
                                    e.b = tree[i].second;
                                    int d = deco[i];
                                    if (d == 9) {
                                        e.node = NKind::interior;
                                    } else {
                                        e.node = NKind::boundary;
                                        int len = d % 3, side = d / 3;
                                        e.len = len == 0   ? Length::zero()
                                                : len == 1 ? Length::finite(1)
                                                           : Length::inf();
                                        if (side > 0)
                                            e.side = side - 1;
                                    }
                                    t.edges.push_back(e);
                                }
                                int mid = 1;
                                if (!chain.empty()) {
                                    t.chains.push_back(chain);
                                    Marking zin;
                                    zin.id = mid++;
                                    zin.vertex = chain.front();
                                    zin.interior = false;
                                    zin.role = BRole::incoming;
                                    t.markings.push_back(zin);
                                    Marking zout;
                                    zout.id = mid++;
                                    zout.vertex = chain.back();
                                    zout.interior = false;
                                    zout.role = BRole::outgoing;
                                    t.markings.push_back(zout);
                                }
                                for (int i = 0; i < n; ++i) {
                                    Marking m;
                                    m.id = mid++;
                                    m.vertex = place[i];
                                    m.interior = true;
                                    m.label = i + 1;
                                    t.markings.push_back(m);
                                }
                                if (validate(t).empty()) {
                                    bool stable = true;
                                    for (const auto& vert : t.vertices)
                                        if (!vertex_is_stable(t, vert.id))
                                            stable = false;
                                    if (stable || !require_stable)
                                        record(t);
                                }
                                int i = n - 1;
                                while (i >= 0 && place[i] == v - 1)
                                    place[i--] = 0;
                                if (i < 0)
                                    break;
                                place[i]++;
                            }
                        }
                        int i = (int)tree.size() - 1;
                        while (i >= 0 && deco[i] == options - 1)
                            deco[i--] = 0;
                        if (i < 0)
                            break;
                        deco[i]++;
                    }
                }
                int i = v - 1;
                while (i >= 0 && kinds[i] == 2)
                    kinds[i--] = 0;
                if (i < 0)
                    break;
                kinds[i]++;
            }
        }
    }
    return found;
}

}  // namespace pearl::oracle
