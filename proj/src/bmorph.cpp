#include "pearl/bmorph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace pearl {

namespace {

void require_valid(const CombType& t)
{
    auto bad = validate(t);
    if (!bad.empty())
        throw error("invalid type: " + bad.front());
}

}  // namespace

CombType cut_edge(const CombType& t, int edge_id)
{
    require_valid(t);
    const Edge* e = t.find_edge(edge_id);
    if (!e)
        throw error("no such edge: " + std::to_string(edge_id));
    const bool interior = e->node == NKind::interior;
    if (!interior && !e->len->infinite)
        throw error("cutting a finite-length boundary edge");

    CombType r = t;
    const int va = e->a, vb = e->b;
    const bool chain_cut = r.is_chain_edge(*e);
    const std::optional<int> side = e->side;
    std::erase_if(r.edges, [&](const Edge& k) { return k.id == edge_id; });

    // Split a chain at the cut: prefix keeps z-, suffix keeps z+.
    if (chain_cut) {
        for (auto& chain : r.chains) {
            auto ia = std::find(chain.begin(), chain.end(), va);
            auto ib = std::find(chain.begin(), chain.end(), vb);
            if (ia == chain.end() || ib == chain.end())
                continue;
            if (ia > ib)
                std::swap(ia, ib);
            std::vector<int> prefix(chain.begin(), ib), suffix(ib, chain.end());
            chain = prefix;
            r.chains.push_back(suffix);
            break;
        }
    }

    // Temporarily double the existing labels so the new tails can be
    // keyed strictly between them; renumbering restores 1..n.
    for (auto& m : r.markings)
        m.label *= 2;

    auto comps = r.components();
    auto comp_of = [&](int v) {
        for (int i = 0; i < (int)comps.size(); ++i)
            if (std::binary_search(comps[i].begin(), comps[i].end(), v))
                return i;
        throw error("lost vertex after cut");
    };
    const int ca = comp_of(va), cb = comp_of(vb);
    if (ca == cb)
        throw error("cut did not disconnect (cycle?)");

    auto interior_key = [&](int comp) {
        // Lowest interior label on the given piece, doubled; the new tail
        // on the opposite piece is ordered just below that value.
        int best = -1;
        for (const auto& m : r.markings) {
            if (!m.interior)
                continue;
            if (comp_of(m.vertex) != comp)
                continue;
            if (best < 0 || m.label < best)
                best = m.label;
        }
        return best;
    };
    auto max_ordered = [&](int comp) {
        int best = 0;
        for (const auto& m : r.markings)
            if (!m.interior && m.role == BRole::ordered && comp_of(m.vertex) == comp)
                best = std::max(best, m.label);
        return best;
    };

    auto add_tail = [&](int vertex, int own_comp, int opposite_comp) {
        Marking m;
        m.id = r.fresh_marking_id();
        m.vertex = vertex;
        if (interior) {
            m.interior = true;
            int opp = interior_key(opposite_comp);
            int own_max = 0;
            for (const auto& k : r.markings)
                if (k.interior && comp_of(k.vertex) == own_comp)
                    own_max = std::max(own_max, k.label);
            m.label = (opp >= 0) ? opp - 1 : own_max + 2;
        } else if (chain_cut) {
            m.interior = false;
            // The piece keeping z- gains the new outgoing end and vice
            // versa; which piece has which is found below.
            m.role = BRole::ordered;  // fixed up by caller
        } else {
            m.interior = false;
            m.role = BRole::ordered;
            m.label = max_ordered(own_comp) + 2;  // labels are doubled here
            const Vertex* v = r.find_vertex(vertex);
            if (v->kind == VKind::strip)
                m.side = side;
        }
        r.markings.push_back(m);
        return m.id;
    };

    int tail_a = add_tail(va, ca, cb);
    int tail_b = add_tail(vb, cb, ca);

    if (chain_cut) {
        // One piece now ends a chain without z+, the other starts without z-.
        auto fix = [&](int tail_id, int vertex) {
            for (const auto& chain : r.chains) {
                if (chain.empty())
                    continue;
                if (chain.back() == vertex) {
                    bool has_out = false;
                    for (const Marking* m : r.markings_at(vertex))
                        if (!m->interior && m->role == BRole::outgoing)
                            has_out = true;
                    if (!has_out) {
                        r.find_marking(tail_id)->role = BRole::outgoing;
                        return;
                    }
                }
                if (chain.front() == vertex) {
                    bool has_in = false;
                    for (const Marking* m : r.markings_at(vertex))
                        if (!m->interior && m->role == BRole::incoming)
                            has_in = true;
                    if (!has_in) {
                        r.find_marking(tail_id)->role = BRole::incoming;
                        return;
                    }
                }
            }
            throw error("chain cut produced no dangling end");
        };
        fix(tail_a, va);
        fix(tail_b, vb);
    }

    // Pieces without strip vertices become standalone disk/sphere types and
    // forget their boundary sides.
    for (int c = 0; c < (int)comps.size(); ++c) {
        bool has_strip = false;
        for (int v : comps[c])
            if (r.find_vertex(v)->kind == VKind::strip)
                has_strip = true;
        if (has_strip)
            continue;
        for (auto& k : r.edges)
            if (comp_of(k.a) == c)
                k.side.reset();
        for (auto& m : r.markings)
            if (comp_of(m.vertex) == c)
                m.side.reset();
    }

    detail::renumber_markings(r);
    require_valid(r);
    return r;
}

CombType collapse_edge(const CombType& t, int edge_id)
{
    require_valid(t);
    const Edge* e = t.find_edge(edge_id);
    if (!e)
        throw error("no such edge: " + std::to_string(edge_id));
    if (e->node != NKind::boundary || !e->len || !e->len->is_zero())
        throw error("collapse_edge requires length class {0}");

    CombType r = t;
    const VKind ka = r.find_vertex(e->a)->kind, kb = r.find_vertex(e->b)->kind;
    int keep = e->a, drop = e->b;
    if (kb == VKind::strip && ka != VKind::strip)
        std::swap(keep, drop);

    const bool merged_is_strip = r.find_vertex(keep)->kind == VKind::strip;
    const VKind dropped_kind = r.find_vertex(drop)->kind;
    std::optional<int> drop_side =
        dropped_kind == VKind::strip ? std::nullopt : t.tree_side(drop);
    if (!drop_side)
        drop_side = e->side;

    std::erase_if(r.edges, [&](const Edge& k) { return k.id == edge_id; });
    for (auto& k : r.edges) {
        if (k.a == drop)
            k.a = keep;
        if (k.b == drop)
            k.b = keep;
    }
    for (auto& m : r.markings) {
        if (m.vertex != drop)
            continue;
        m.vertex = keep;
        if (!m.interior && m.role == BRole::ordered) {
            if (merged_is_strip && dropped_kind != VKind::strip)
                m.side = drop_side;  // marking arrives on the strip boundary
            else if (!merged_is_strip)
                m.side = std::nullopt;
        }
    }
    std::erase_if(r.vertices, [&](const Vertex& v) { return v.id == drop; });
    for (auto& chain : r.chains)
        std::erase(chain, drop);
    std::erase_if(r.chains, [](const std::vector<int>& c) { return c.empty(); });

    require_valid(r);
    return r;
}

namespace {

CombType set_length(const CombType& t, int edge_id, int required_class,
                    const char* what)
{
    require_valid(t);
    const Edge* e = t.find_edge(edge_id);
    if (!e)
        throw error("no such edge: " + std::to_string(edge_id));
    if (e->node != NKind::boundary || !e->len || e->len->length_class() != required_class)
        throw error(std::string(what) + (required_class == 2
                                             ? " requires length class {inf}"
                                             : " requires length class {0}"));
    CombType r = t;
    r.find_edge(edge_id)->len = Length::finite(1);
    return r;
}

}  // namespace

CombType make_finite(const CombType& t, int edge_id)
{
    return set_length(t, edge_id, 2, "make_finite");
}

CombType make_nonzero(const CombType& t, int edge_id)
{
    return set_length(t, edge_id, 0, "make_nonzero");
}

CombType glue_at(const CombType& t1, int marking1, const CombType& t2, int marking2,
                 std::optional<Length> len)
{
    require_valid(t1);
    require_valid(t2);
    const Marking* m1 = t1.find_marking(marking1);
    const Marking* m2 = t2.find_marking(marking2);
    if (!m1 || !m2)
        throw error("glue_at: no such marking");
    if (m1->interior != m2->interior)
        throw error("glue_at: cannot identify an interior with a boundary tail");

    // Disjoint copies: offset the ids of t2.
    int vo = t1.fresh_vertex_id(), eo = t1.fresh_edge_id(), mo = t1.fresh_marking_id();
    CombType r = t1;
    for (auto v : t2.vertices) {
        v.id += vo;
        r.vertices.push_back(v);
    }
    for (auto e : t2.edges) {
        e.id += eo;
        e.a += vo;
        e.b += vo;
        r.edges.push_back(e);
    }
    for (auto m : t2.markings) {
        m.id += mo;
        m.vertex += vo;
        r.markings.push_back(m);
    }
    for (const auto& chain : t2.chains) {
        std::vector<int> c;
        for (int v : chain)
            c.push_back(v + vo);
        r.chains.push_back(c);
    }

    // Interleave marking labels: t1 first.
    for (auto& m : r.markings)
        m.label = 2 * m.label + (m.id >= mo ? 1 : 0);

    const int v1 = m1->vertex, v2 = m2->vertex + vo;
    const int id2 = marking2 + mo;

    Edge e;
    e.id = r.fresh_edge_id();
    e.a = v1;
    e.b = v2;
    if (m1->interior) {
        if (len)
            throw error("glue_at: interior nodes carry no length");
        e.node = NKind::interior;
    } else {
        if (!len)
            throw error("glue_at: boundary nodes need a length");
        e.node = NKind::boundary;
        e.len = len;

        bool strips = r.find_vertex(v1)->kind == VKind::strip &&
                      r.find_vertex(v2)->kind == VKind::strip;
        bool concat = (m1->role == BRole::outgoing && m2->role == BRole::incoming) ||
                      (m1->role == BRole::incoming && m2->role == BRole::outgoing);
        if (concat) {
            if (!strips)
                throw error("glue_at: strip ends must join strip vertices");
            // Join the two chains across the new node, z- side first.
            int head = (m1->role == BRole::outgoing) ? v1 : v2;
            int tail = (m1->role == BRole::outgoing) ? v2 : v1;
            std::vector<int> joined;
            int ci = -1, cj = -1;
            for (int i = 0; i < (int)r.chains.size(); ++i) {
                if (!r.chains[i].empty() && r.chains[i].back() == head)
                    ci = i;
                if (!r.chains[i].empty() && r.chains[i].front() == tail)
                    cj = i;
            }
            if (ci < 0 || cj < 0 || ci == cj)
                throw error("glue_at: chain ends do not line up");
            joined = r.chains[ci];
            joined.insert(joined.end(), r.chains[cj].begin(), r.chains[cj].end());
            std::vector<std::vector<int>> chains;
            for (int i = 0; i < (int)r.chains.size(); ++i)
                if (i != ci && i != cj)
                    chains.push_back(r.chains[i]);
            chains.push_back(joined);
            r.chains = chains;
        } else if (r.kind() == TKind::strip && !strips) {
            // Bubble reattachment: the side comes from the strip-side tail.
            std::optional<int> side = m1->side;
            if (!side)
                side = m2->side;
            if (!side)
                side = t1.tree_side(m1->vertex);
            if (!side)
                throw error("glue_at: no side available for the new bubble");
            e.side = side;
            // Propagate the side across the sideless piece.
            for (auto& k : r.edges)
                if (k.id >= eo && k.node == NKind::boundary && !k.side)
                    k.side = side;
        }
    }
    r.edges.push_back(e);
    std::erase_if(r.markings,
                  [&](const Marking& m) { return m.id == marking1 || m.id == id2; });

    detail::renumber_markings(r);
    require_valid(r);
    return r;
}

// ---------------------------------------------------------------------------
// Dimensions

int dim_stratum(const CombType& t)
{
    if (!is_stable(t))
        throw error("dim_stratum needs a stable type");
    int dim = 0;
    for (const auto& v : t.vertices) {
        int b = 0, i = 0;
        for (const Edge* e : t.edges_at(v.id))
            (e->node == NKind::boundary ? b : i)++;
        for (const Marking* m : t.markings_at(v.id))
            (m->interior ? i : b)++;
        switch (v.kind) {
        case VKind::sphere:
            dim += 2 * (b + i) - 6;
            break;
        case VKind::disk:
            dim += b + 2 * i - 3;
            break;
        case VKind::strip: {
            int ends = 0;
            for (const Marking* m : t.markings_at(v.id))
                if (!m->interior && m->role != BRole::ordered)
                    ++ends;
            for (const Edge* e : t.edges_at(v.id))
                if (t.is_chain_edge(*e))
                    ++ends;
            dim += (b - ends) + 2 * i - 1;
            break;
        }
        }
    }
    for (const auto& e : t.edges)
        if (e.node == NKind::boundary && e.len->is_positive_finite())
            ++dim;
    return dim;
}

int gluing_dim(const CombType& t)
{
    require_valid(t);
    int g = 0;
    for (const auto& e : t.edges)
        g += (e.node == NKind::boundary) ? 1 : 2;
    return g;
}

// ---------------------------------------------------------------------------
// Stratification order

bool stratum_leq(const CombType& a, const CombType& b)
{
    require_valid(a);
    require_valid(b);
    const std::string target = canonical_form(abstract_lengths(a));
    const int target_dim = dim_stratum(a);

    std::set<std::string> seen;
    std::deque<CombType> queue{abstract_lengths(b)};
    seen.insert(canonical_form(queue.front()));
    while (!queue.empty()) {
        CombType cur = queue.front();
        queue.pop_front();
        if (canonical_form(cur) == target)
            return true;
        if (dim_stratum(cur) >= target_dim)
            continue;  // moves only increase dimension
        for (const auto& e : cur.edges) {
            if (e.node != NKind::boundary)
                continue;
            std::vector<CombType> nexts;
            if (e.len->is_zero()) {
                nexts.push_back(collapse_edge(cur, e.id));
                nexts.push_back(make_nonzero(cur, e.id));
            } else if (e.len->infinite) {
                nexts.push_back(make_finite(cur, e.id));
            }
            for (auto& nx : nexts)
                if (seen.insert(canonical_form(nx)).second)
                    queue.push_back(std::move(nx));
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Signs

int collapse_sign(const CombType& t, int edge_id)
{
    require_valid(t);
    const Edge* e = t.find_edge(edge_id);
    if (!e)
        throw error("no such edge: " + std::to_string(edge_id));
    if (e->node != NKind::boundary)
        throw error("sign convention defined only for boundary nodes");
    const VKind ka = t.find_vertex(e->a)->kind, kb = t.find_vertex(e->b)->kind;
    if (ka != VKind::strip && kb != VKind::strip)
        throw error("sign convention defined only for chain-adjacent degenerations");
    if (e->len->is_positive_finite())
        throw error("sign convention applies to degeneration edges of length 0 or inf");
    for (const auto& k : t.edges)
        if (k.id != edge_id && k.node == NKind::boundary && k.len->is_positive_finite())
            throw error("sign convention unspecified with extra finite-length edges");

    if (ka == VKind::strip && kb == VKind::strip) {
        int strips = 0;
        for (const auto& v : t.vertices)
            strips += v.kind == VKind::strip ? 1 : 0;
        if (strips != 2)
            throw error("sign convention unspecified for chains of more than two strips");
        return +1;  // splitting of Floer trajectories
    }
    if (!e->side)
        throw error("bubble edge carries no side");
    return *e->side == 0 ? +1 : -1;
}

// ---------------------------------------------------------------------------
// Codimension-one boundary listing

namespace {

struct Attachment {
    bool is_edge;
    int id;
};

// Splits vertex v of t into (v, fresh) joined by a zero-length boundary
// edge; the attachments listed in `moved` go to the fresh vertex.
std::optional<CombType> split_vertex(const CombType& t, int v, VKind fresh_kind,
                                     const std::vector<Attachment>& moved,
                                     std::optional<int> new_side, bool chain_split,
                                     bool fresh_before)
{
    CombType r = t;
    Vertex nv;
    nv.id = r.fresh_vertex_id();
    nv.kind = fresh_kind;
    r.vertices.push_back(nv);
    for (const auto& a : moved) {
        if (a.is_edge) {
            Edge* e = r.find_edge(a.id);
            (e->a == v ? e->a : e->b) = nv.id;
        } else {
            r.find_marking(a.id)->vertex = nv.id;
            if (fresh_kind == VKind::disk) {
                Marking* m = r.find_marking(a.id);
                if (!m->interior && m->role == BRole::ordered)
                    m->side.reset();
            }
        }
    }
    Edge joint;
    joint.id = r.fresh_edge_id();
    joint.a = v;
    joint.b = nv.id;
    joint.node = NKind::boundary;
    joint.len = Length::zero();
    joint.side = new_side;
    r.edges.push_back(joint);

    if (chain_split) {
        auto pos = r.chain_position(v);
        if (!pos)
            return std::nullopt;
        auto& chain = r.chains[pos->first];
        chain.insert(chain.begin() + pos->second + (fresh_before ? 0 : 1), nv.id);
    }

    if (!validate(r).empty())
        return std::nullopt;
    for (const auto& vert : r.vertices)
        if (!vertex_is_stable(r, vert.id))
            return std::nullopt;
    return r;
}

}  // namespace

std::vector<Degeneration> codim_one_degenerations(const CombType& t_exact)
{
    if (!is_stable(t_exact))
        throw error("codim_one_degenerations needs a stable type");
    const CombType t = abstract_lengths(t_exact);

    std::vector<Degeneration> out;
    std::set<std::string> seen;
    auto emit = [&](MorphKind kind, CombType source, int witness) {
        if (!seen.insert(canonical_form(source)).second)
            return;
        Degeneration d;
        d.morphism = BMorphism{kind, std::move(source), t, witness};
        try {
            d.sign = collapse_sign(d.morphism.source, witness);
        } catch (const error&) {
            d.sign = std::nullopt;
        }
        out.push_back(std::move(d));
    };

    // Metric limits of existing finite positive lengths.
    for (const auto& e : t.edges) {
        if (e.node != NKind::boundary || !e.len->is_positive_finite())
            continue;
        CombType zero = t;
        zero.find_edge(e.id)->len = Length::zero();
        emit(MorphKind::make_nonzero, zero, e.id);
        CombType inf = t;
        inf.find_edge(e.id)->len = Length::inf();
        emit(MorphKind::make_finite, inf, e.id);
    }

    // New zero-length boundary nodes from vertex splittings.
    for (const auto& v : t.vertices) {
        if (v.kind == VKind::sphere)
            continue;
        std::vector<Attachment> items;
        for (const Edge* e : t.edges_at(v.id))
            items.push_back({true, e->id});
        std::vector<Attachment> chain_ends;
        for (const Marking* m : t.markings_at(v.id)) {
            if (v.kind == VKind::strip && !m->interior && m->role != BRole::ordered)
                chain_ends.push_back({false, m->id});
            else
                items.push_back({false, m->id});
        }
        if (v.kind == VKind::strip) {
            for (auto it = items.begin(); it != items.end();) {
                if (it->is_edge && t.is_chain_edge(*t.find_edge(it->id))) {
                    chain_ends.push_back(*it);
                    it = items.erase(it);
                } else {
                    ++it;
                }
            }
        }

        const int n_items = (int)items.size();
        for (int mask = 0; mask < (1 << n_items); ++mask) {
            std::vector<Attachment> moved;
            for (int i = 0; i < n_items; ++i)
                if ((mask >> i) & 1)
                    moved.push_back(items[i]);

            if (v.kind == VKind::disk) {
                auto side = t.kind() == TKind::strip ? t.tree_side(v.id) : std::nullopt;
                if (auto s = split_vertex(t, v.id, VKind::disk, moved, side, false, false))
                    emit(MorphKind::collapse_edge, *s, s->fresh_edge_id() - 1);
            } else {
                // Disk bubble off the chain on either boundary side.
                for (int side = 0; side <= 1; ++side)
                    if (auto s = split_vertex(t, v.id, VKind::disk, moved, side, false, false))
                        emit(MorphKind::collapse_edge, *s, s->fresh_edge_id() - 1);
                // Chain split: one chain end goes to each half.
                if (chain_ends.size() == 2) {
                    for (int endsel = 0; endsel <= 1; ++endsel) {
                        auto moved2 = moved;
                        moved2.push_back(chain_ends[endsel]);
                        // The fresh strip vertex takes the z- side end iff
                        // that end moved.
                        bool fresh_before = false;
                        {
                            const Attachment& mv = chain_ends[endsel];
                            if (!mv.is_edge) {
                                const Marking* m = t.find_marking(mv.id);
                                fresh_before = m->role == BRole::incoming;
                            } else {
                                const Edge* e = t.find_edge(mv.id);
                                int other = (e->a == v.id) ? e->b : e->a;
                                auto p0 = t.chain_position(v.id), p1 = t.chain_position(other);
                                fresh_before = p1->second < p0->second;
                            }
                        }
                        if (auto s = split_vertex(t, v.id, VKind::strip, moved2,
                                                  std::nullopt, true, fresh_before))
                            emit(MorphKind::collapse_edge, *s, s->fresh_edge_id() - 1);
                    }
                }
            }
        }
    }
    return out;
}

bool morphism_is_consistent(const BMorphism& m)
{
    CombType rebuilt;
    switch (m.kind) {
    case MorphKind::cut_edge:
        rebuilt = cut_edge(m.source, m.witness);
        break;
    case MorphKind::collapse_edge:
        rebuilt = collapse_edge(m.source, m.witness);
        break;
    case MorphKind::make_finite:
        rebuilt = make_finite(m.source, m.witness);
        break;
    case MorphKind::make_nonzero:
        rebuilt = make_nonzero(m.source, m.witness);
        break;
    case MorphKind::forget_tail:
        rebuilt = forget_tail(m.source, m.witness);
        break;
    }
    return canonical_form(rebuilt) == canonical_form(m.target);
}

}  // namespace pearl
