#include "pearl/combtype.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace pearl {

TKind CombType::kind() const
{
    bool has_disk = false;
    for (const auto& v : vertices) {
        if (v.kind == VKind::strip)
            return TKind::strip;
        if (v.kind == VKind::disk)
            has_disk = true;
    }
    return has_disk ? TKind::disk : TKind::sphere;
}

const Vertex* CombType::find_vertex(int id) const
{
    for (const auto& v : vertices)
        if (v.id == id)
            return &v;
    return nullptr;
}
const Edge* CombType::find_edge(int id) const
{
    for (const auto& e : edges)
        if (e.id == id)
            return &e;
    return nullptr;
}
const Marking* CombType::find_marking(int id) const
{
    for (const auto& m : markings)
        if (m.id == id)
            return &m;
    return nullptr;
}
Vertex* CombType::find_vertex(int id)
{
    return const_cast<Vertex*>(std::as_const(*this).find_vertex(id));
}
Edge* CombType::find_edge(int id)
{
    return const_cast<Edge*>(std::as_const(*this).find_edge(id));
}
Marking* CombType::find_marking(int id)
{
    return const_cast<Marking*>(std::as_const(*this).find_marking(id));
}

int CombType::fresh_vertex_id() const
{
    int m = 0;
    for (const auto& v : vertices)
        m = std::max(m, v.id);
    return m + 1;
}
int CombType::fresh_edge_id() const
{
    int m = 0;
    for (const auto& e : edges)
        m = std::max(m, e.id);
    return m + 1;
}
int CombType::fresh_marking_id() const
{
    int m = 0;
    for (const auto& k : markings)
        m = std::max(m, k.id);
    return m + 1;
}

std::vector<const Edge*> CombType::edges_at(int vertex) const
{
    std::vector<const Edge*> r;
    for (const auto& e : edges)
        if (e.a == vertex || e.b == vertex)
            r.push_back(&e);
    return r;
}

std::vector<const Marking*> CombType::markings_at(int vertex) const
{
    std::vector<const Marking*> r;
    for (const auto& m : markings)
        if (m.vertex == vertex)
            r.push_back(&m);
    return r;
}

int CombType::interior_marking_count() const
{
    int n = 0;
    for (const auto& m : markings)
        n += m.interior ? 1 : 0;
    return n;
}

std::optional<std::pair<int, int>> CombType::chain_position(int vertex) const
{
    for (int c = 0; c < (int)chains.size(); ++c)
        for (int i = 0; i < (int)chains[c].size(); ++i)
            if (chains[c][i] == vertex)
                return std::make_pair(c, i);
    return std::nullopt;
}

bool CombType::is_chain_edge(const Edge& e) const
{
    auto pa = chain_position(e.a), pb = chain_position(e.b);
    if (!pa || !pb || pa->first != pb->first)
        return false;
    return std::abs(pa->second - pb->second) == 1;
}

std::vector<std::vector<int>> CombType::components() const
{
    std::map<int, std::vector<int>> adj;
    for (const auto& v : vertices)
        adj[v.id];
    for (const auto& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::set<int> seen;
    std::vector<std::vector<int>> comps;
    for (const auto& v : vertices) {
        if (seen.count(v.id))
            continue;
        std::vector<int> comp, stack{v.id};
        seen.insert(v.id);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int w : adj[u])
                if (seen.insert(w).second)
                    stack.push_back(w);
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::optional<int> CombType::tree_side(int vertex) const
{
    const Vertex* v = find_vertex(vertex);
    if (!v || v->kind == VKind::strip)
        return std::nullopt;
    // Walk the bubble tree; any sided edge determines the side.
    std::set<int> seen{vertex};
    std::vector<int> stack{vertex};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (const Edge* e : edges_at(u)) {
            if (e->side)
                return e->side;
            int w = (e->a == u) ? e->b : e->a;
            const Vertex* wv = find_vertex(w);
            if (wv && wv->kind != VKind::strip && seen.insert(w).second)
                stack.push_back(w);
        }
    }
    return std::nullopt;
}

namespace detail {

int special_count(const CombType& t, int vertex)
{
    return (int)t.edges_at(vertex).size() + (int)t.markings_at(vertex).size();
}

void renumber_markings(CombType& t)
{
    for (const auto& comp : t.components()) {
        std::set<int> in_comp(comp.begin(), comp.end());
        std::vector<Marking*> interior, ordered;
        for (auto& m : t.markings) {
            if (!in_comp.count(m.vertex))
                continue;
            if (m.interior)
                interior.push_back(&m);
            else if (m.role == BRole::ordered)
                ordered.push_back(&m);
        }
        auto bylabel = [](const Marking* a, const Marking* b) {
            return a->label < b->label;
        };
        std::sort(interior.begin(), interior.end(), bylabel);
        std::sort(ordered.begin(), ordered.end(), bylabel);
        for (int i = 0; i < (int)interior.size(); ++i)
            interior[i]->label = i + 1;
        for (int i = 0; i < (int)ordered.size(); ++i)
            ordered[i]->label = i + 1;
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> validate(const CombType& t)
{
    std::vector<std::string> bad;
    auto complain = [&](const std::string& s) { bad.push_back(s); };

    std::set<int> vids, eids, mids;
    for (const auto& v : t.vertices)
        if (!vids.insert(v.id).second)
            complain("duplicate vertex id " + std::to_string(v.id));
    for (const auto& e : t.edges)
        if (!eids.insert(e.id).second)
            complain("duplicate edge id " + std::to_string(e.id));
    for (const auto& m : t.markings)
        if (!mids.insert(m.id).second)
            complain("duplicate marking id " + std::to_string(m.id));

    for (const auto& e : t.edges) {
        if (!vids.count(e.a) || !vids.count(e.b))
            complain("edge " + std::to_string(e.id) + " has missing endpoint");
        if (e.a == e.b)
            complain("edge " + std::to_string(e.id) + " is a loop");
    }
    for (const auto& m : t.markings)
        if (!vids.count(m.vertex))
            complain("marking " + std::to_string(m.id) + " attached to missing vertex");
    if (!bad.empty())
        return bad;  // structure too broken for the remaining checks

    // Forest check via union-find.
    std::map<int, int> parent;
    for (int v : vids)
        parent[v] = v;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : t.edges) {
        int ra = find(e.a), rb = find(e.b);
        if (ra == rb) {
            complain("not a forest: edge " + std::to_string(e.id) + " closes a cycle");
            return bad;
        }
        parent[ra] = rb;
    }

    auto vkind = [&](int id) { return t.find_vertex(id)->kind; };
    auto admits_boundary = [&](int id) { return vkind(id) != VKind::sphere; };

    for (const auto& e : t.edges) {
        const std::string tag = "edge " + std::to_string(e.id);
        if (e.node == NKind::boundary) {
            if (!e.len)
                complain(tag + ": boundary-node edge must carry a length");
            else if (!e.len->infinite && e.len->value < 0)
                complain(tag + ": negative length");
            if (!admits_boundary(e.a) || !admits_boundary(e.b))
                complain(tag + ": boundary-node edge touches a sphere vertex");
        } else {
            if (e.len)
                complain(tag + ": interior-node edge must not carry a length");
            if (vkind(e.a) != VKind::sphere && vkind(e.b) != VKind::sphere)
                complain(tag + ": interior-node edge needs a sphere endpoint");
        }
    }

    for (const auto& m : t.markings) {
        const std::string tag = "marking " + std::to_string(m.id);
        if (m.interior) {
            if (m.label < 1)
                complain(tag + ": interior marking needs a positive label");
        } else {
            if (vkind(m.vertex) == VKind::sphere)
                complain(tag + ": boundary marking on a sphere vertex");
            if (m.role != BRole::ordered && vkind(m.vertex) != VKind::strip)
                complain(tag + ": strip end attached to a non-strip vertex");
        }
    }

    // Interior labels 1..n and ordered boundary indices 1..k per component.
    for (const auto& comp : t.components()) {
        std::set<int> in_comp(comp.begin(), comp.end());
        std::vector<int> ilabels, blabels;
        for (const auto& m : t.markings) {
            if (!in_comp.count(m.vertex))
                continue;
            if (m.interior)
                ilabels.push_back(m.label);
            else if (m.role == BRole::ordered)
                blabels.push_back(m.label);
        }
        auto contiguous = [](std::vector<int>& v) {
            std::sort(v.begin(), v.end());
            for (int i = 0; i < (int)v.size(); ++i)
                if (v[i] != i + 1)
                    return false;
            return true;
        };
        if (!contiguous(ilabels))
            complain("interior marking labels are not 1..n within a component");
        if (!contiguous(blabels))
            complain("ordered boundary marking indices are not 1..k within a component");
    }

    // Each maximal sphere subtree hangs off exactly one non-sphere vertex;
    // two attachments would create a cycle in the orientation double cover.
    {
        std::map<int, int> sphere_root;
        std::function<int(int)> sfind = [&](int x) {
            while (sphere_root[x] != x)
                x = sphere_root[x] = sphere_root[sphere_root[x]];
            return x;
        };
        for (const auto& v : t.vertices)
            if (v.kind == VKind::sphere)
                sphere_root[v.id] = v.id;
        for (const auto& e : t.edges)
            if (vkind(e.a) == VKind::sphere && vkind(e.b) == VKind::sphere)
                sphere_root[sfind(e.a)] = sfind(e.b);
        std::map<int, int> attach_count;
        for (const auto& e : t.edges) {
            bool sa = vkind(e.a) == VKind::sphere, sb = vkind(e.b) == VKind::sphere;
            if (sa != sb)
                attach_count[sfind(sa ? e.a : e.b)]++;
        }
        for (const auto& [root, cnt] : attach_count)
            if (cnt > 1)
                complain("sphere tree at vertex " + std::to_string(root) +
                         " attaches to the disk part at more than one node");
    }

    // Chain structure.
    const size_t before_chain = bad.size();
    std::set<int> chain_vertices;
    for (const auto& chain : t.chains) {
        if (chain.empty()) {
            complain("empty strip chain");
            continue;
        }
        for (int id : chain) {
            if (!vids.count(id) || vkind(id) != VKind::strip)
                complain("chain vertex " + std::to_string(id) + " is not a strip vertex");
            if (!chain_vertices.insert(id).second)
                complain("vertex " + std::to_string(id) + " appears twice in chains");
        }
    }
    for (const auto& v : t.vertices)
        if (v.kind == VKind::strip && !chain_vertices.count(v.id))
            complain("strip vertex " + std::to_string(v.id) + " is not on any chain");
    if (bad.size() > before_chain)
        return bad;

    for (const auto& chain : t.chains) {
        for (size_t i = 0; i + 1 < chain.size(); ++i) {
            bool ok = false;
            for (const Edge* e : t.edges_at(chain[i]))
                if (e->node == NKind::boundary &&
                    (e->a == chain[i + 1] || e->b == chain[i + 1]))
                    ok = true;
            if (!ok)
                complain("strip chain must use boundary-type connecting structure "
                         "at intermediate nodes w_i");
        }
        // Ends carry z- and z+.
        auto role_at = [&](int vertex, BRole role) {
            for (const Marking* m : t.markings_at(vertex))
                if (!m->interior && m->role == role)
                    return true;
            return false;
        };
        if (!role_at(chain.front(), BRole::incoming))
            complain("chain start carries no incoming marking z-");
        if (!role_at(chain.back(), BRole::outgoing))
            complain("chain end carries no outgoing marking z+");
    }
    // Exactly one z- and one z+ per chain, none elsewhere.
    int n_in = 0, n_out = 0;
    for (const auto& m : t.markings) {
        if (m.interior)
            continue;
        if (m.role == BRole::incoming)
            ++n_in;
        if (m.role == BRole::outgoing)
            ++n_out;
    }
    if (n_in != (int)t.chains.size() || n_out != (int)t.chains.size())
        complain("strip ends z-/z+ must occur exactly once per strip component");

    // Strip vertices may be adjacent only along their chain.
    for (const auto& e : t.edges)
        if (vkind(e.a) == VKind::strip && vkind(e.b) == VKind::strip &&
            !t.is_chain_edge(e))
            complain("strip vertices " + std::to_string(e.a) + "," +
                     std::to_string(e.b) + " joined off the chain");

    // Side bookkeeping.  In strip components every boundary edge off the
    // chain carries the boundary side b of its bubble tree, consistently
    // across the tree; side data is meaningless in disk and sphere
    // components.  Forests mix both, so the rule is per component.
    std::map<int, bool> strip_comp;
    for (const auto& comp : t.components()) {
        bool has_strip = false;
        for (int v : comp)
            if (vkind(v) == VKind::strip)
                has_strip = true;
        for (int v : comp)
            strip_comp[v] = has_strip;
    }
    for (const auto& e : t.edges) {
        if (e.node != NKind::boundary)
            continue;
        if (!strip_comp[e.a]) {
            if (e.side)
                complain("edge " + std::to_string(e.id) +
                         " carries a side outside a strip component");
            continue;
        }
        bool chainlike = vkind(e.a) == VKind::strip && vkind(e.b) == VKind::strip;
        if (chainlike && e.side)
            complain("chain edge " + std::to_string(e.id) + " must not carry a side");
        if (!chainlike) {
            if (!e.side)
                complain("bubble edge " + std::to_string(e.id) + " needs a side");
            else if (*e.side != 0 && *e.side != 1)
                complain("edge " + std::to_string(e.id) + " side must be 0 or 1");
        }
    }
    // Consistency within each bubble tree.
    for (const auto& v : t.vertices) {
        if (v.kind == VKind::strip)
            continue;
        std::optional<int> side;
        for (const Edge* e : t.edges_at(v.id)) {
            if (!e->side)
                continue;
            if (side && *side != *e->side)
                complain("vertex " + std::to_string(v.id) +
                         " has edges on both boundary sides");
            side = e->side;
        }
    }
    for (const auto& m : t.markings) {
        if (m.interior || m.role != BRole::ordered)
            continue;
        if (!strip_comp[m.vertex]) {
            if (m.side)
                complain("marking " + std::to_string(m.id) +
                         " carries a side outside a strip component");
            continue;
        }
        if (vkind(m.vertex) == VKind::strip) {
            if (!m.side)
                complain("ordered boundary marking " + std::to_string(m.id) +
                         " on a strip vertex needs a side");
        } else if (m.side) {
            auto ts = t.tree_side(m.vertex);
            if (ts && *ts != *m.side)
                complain("marking " + std::to_string(m.id) +
                         " side disagrees with its bubble tree");
        }
    }

    return bad;
}

// ---------------------------------------------------------------------------
// Stability

bool vertex_is_stable(const CombType& t, int vertex)
{
    const Vertex* v = t.find_vertex(vertex);
    if (!v)
        throw error("no such vertex");
    int b = 0, i = 0;
    for (const Edge* e : t.edges_at(vertex))
        (e->node == NKind::boundary ? b : i)++;
    for (const Marking* m : t.markings_at(vertex))
        (m->interior ? i : b)++;
    switch (v->kind) {
    case VKind::sphere:
        return b + i >= 3;
    case VKind::disk:
        return b + 2 * i >= 3;
    case VKind::strip: {
        // The two strip-end attachments (z-/z+ or chain edges) count as
        // boundary special points; stability needs one more special point.
        int ends = 0;
        for (const Marking* m : t.markings_at(vertex))
            if (!m->interior && m->role != BRole::ordered)
                ++ends;
        for (const Edge* e : t.edges_at(vertex))
            if (t.is_chain_edge(*e))
                ++ends;
        return (b - ends) + 2 * i >= 1;
    }
    }
    return false;
}

bool is_stable(const CombType& t)
{
    auto bad = validate(t);
    if (!bad.empty())
        throw error("invalid type: " + bad.front());
    for (const auto& v : t.vertices)
        if (!vertex_is_stable(t, v.id))
            return false;
    return true;
}

bool is_bare_strip(const CombType& t)
{
    return t.vertices.size() == 1 && t.vertices[0].kind == VKind::strip &&
           t.edges.empty() && t.markings.size() == 2 && t.interior_marking_count() == 0;
}

// ---------------------------------------------------------------------------
// Forgetting tails

namespace {

void erase_vertex(CombType& t, int vertex)
{
    std::erase_if(t.vertices, [&](const Vertex& v) { return v.id == vertex; });
    for (auto& chain : t.chains)
        std::erase(chain, vertex);
    std::erase_if(t.chains, [](const std::vector<int>& c) { return c.empty(); });
}

void erase_edge(CombType& t, int edge)
{
    std::erase_if(t.edges, [&](const Edge& e) { return e.id == edge; });
}

Length sum_lengths(const Length& x, const Length& y)
{
    if (x.infinite || y.infinite)
        return Length::inf();
    return Length::finite(x.value + y.value);
}

// Collapses an unstable vertex with exactly two special points by
// identifying them; with one special point the node and its metric are
// forgotten.  Returns false when the vertex cannot be collapsed.
void collapse_unstable(CombType& t, int vertex)
{
    const Vertex* v = t.find_vertex(vertex);
    auto edges = t.edges_at(vertex);
    auto marks = t.markings_at(vertex);
    const int specials = (int)edges.size() + (int)marks.size();

    if (v->kind == VKind::strip) {
        // Identify the two chain-end attachments.
        auto pos = t.chain_position(vertex);
        if (!pos)
            throw error("strip vertex off-chain in collapse");
        auto& chain = t.chains[pos->first];
        if (chain.size() < 2)
            throw error("cannot collapse the last strip component");
        std::vector<const Edge*> chain_edges;
        for (const Edge* e : edges)
            if (t.is_chain_edge(*e))
                chain_edges.push_back(e);
        std::vector<const Marking*> ends;
        for (const Marking* m : marks)
            if (!m->interior && m->role != BRole::ordered)
                ends.push_back(m);
        if (chain_edges.size() == 2) {
            // Middle component: join the neighbours, metrics summed.
            int p = (chain_edges[0]->a == vertex) ? chain_edges[0]->b : chain_edges[0]->a;
            int q = (chain_edges[1]->a == vertex) ? chain_edges[1]->b : chain_edges[1]->a;
            Edge merged;
            merged.id = t.fresh_edge_id();
            merged.a = p;
            merged.b = q;
            merged.node = NKind::boundary;
            merged.len = sum_lengths(*chain_edges[0]->len, *chain_edges[1]->len);
            int e0 = chain_edges[0]->id, e1 = chain_edges[1]->id;
            erase_edge(t, e0);
            erase_edge(t, e1);
            t.edges.push_back(merged);
            erase_vertex(t, vertex);
        } else if (chain_edges.size() == 1 && ends.size() == 1) {
            // End component: the strip end slides to the neighbour, the
            // single metric is forgotten.
            int p = (chain_edges[0]->a == vertex) ? chain_edges[0]->b : chain_edges[0]->a;
            int eid = chain_edges[0]->id;
            t.find_marking(ends[0]->id)->vertex = p;
            erase_edge(t, eid);
            erase_vertex(t, vertex);
        } else {
            throw error("strip component cannot be stabilized");
        }
        return;
    }

    if (specials == 1) {
        // A leaf with a single node: forget the node and its metric.
        if (!edges.empty()) {
            int eid = edges[0]->id;
            erase_edge(t, eid);
            erase_vertex(t, vertex);
            return;
        }
        throw error("component cannot be stabilized");
    }
    if (specials != 2)
        throw error("collapse on a vertex with unexpected special count");

    if (edges.size() == 2) {
        const Edge *e0 = edges[0], *e1 = edges[1];
        if (e0->node != e1->node)
            throw error("collapse would identify a boundary with an interior node");
        int p = (e0->a == vertex) ? e0->b : e0->a;
        int q = (e1->a == vertex) ? e1->b : e1->a;
        Edge merged;
        merged.id = t.fresh_edge_id();
        merged.a = p;
        merged.b = q;
        merged.node = e0->node;
        if (e0->node == NKind::boundary) {
            merged.len = sum_lengths(*e0->len, *e1->len);
            merged.side = e0->side ? e0->side : e1->side;
            if (t.find_vertex(p)->kind == VKind::strip &&
                t.find_vertex(q)->kind == VKind::strip)
                merged.side.reset();
        }
        int i0 = e0->id, i1 = e1->id;
        erase_edge(t, i0);
        erase_edge(t, i1);
        t.edges.push_back(merged);
        erase_vertex(t, vertex);
        return;
    }
    if (edges.size() == 1 && marks.size() == 1) {
        // The marking slides across the node to the far component.
        const Edge* e = edges[0];
        int far = (e->a == vertex) ? e->b : e->a;
        VKind far_kind = t.find_vertex(far)->kind;
        Marking* m = t.find_marking(marks[0]->id);
        if (!m->interior) {
            if (far_kind == VKind::sphere)
                throw error("boundary marking cannot slide onto a sphere");
            if (m->role == BRole::ordered)
                m->side = (far_kind == VKind::strip) ? e->side : std::nullopt;
        }
        m->vertex = far;
        int eid = e->id;
        erase_edge(t, eid);
        erase_vertex(t, vertex);
        return;
    }
    throw error("component cannot be stabilized");
}

void stabilize(CombType& t, int first_vertex)
{
    for (;;) {
        int candidate = -1;
        auto unstable = [&](int id) {
            const Vertex* v = t.find_vertex(id);
            if (!v || vertex_is_stable(t, id))
                return false;
            if (v->kind == VKind::strip) {
                auto pos = t.chain_position(id);
                return pos && t.chains[pos->first].size() >= 2;
            }
            return true;
        };
        if (unstable(first_vertex))
            candidate = first_vertex;
        else
            for (const auto& v : t.vertices)
                if (unstable(v.id)) {
                    candidate = v.id;
                    break;
                }
        if (candidate < 0)
            return;
        collapse_unstable(t, candidate);
    }
}

}  // namespace

CombType forget_tail(const CombType& t, int marking_id)
{
    const Marking* m = t.find_marking(marking_id);
    if (!m)
        throw error("no such marking: " + std::to_string(marking_id));
    if (!m->interior && m->role != BRole::ordered)
        throw error("strip ends may not be forgotten");
    auto bad = validate(t);
    if (!bad.empty())
        throw error("invalid type: " + bad.front());

    CombType r = t;
    int carrier = m->vertex;
    std::erase_if(r.markings, [&](const Marking& k) { return k.id == marking_id; });
    stabilize(r, carrier);
    detail::renumber_markings(r);
    return r;
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

std::string marking_payload(const Marking& m, bool on_strip)
{
    std::ostringstream os;
    if (m.interior) {
        os << "i" << m.label;
        switch (m.tag) {
        case DTag::none: break;
        case DTag::D: os << ":D"; break;
        case DTag::D0: os << ":D0"; break;
        case DTag::D1: os << ":D1"; break;
        }
    } else if (m.role == BRole::incoming) {
        os << "z-";
    } else if (m.role == BRole::outgoing) {
        os << "z+";
    } else {
        os << "x" << m.label;
        if (on_strip && m.side)
            os << ":s" << *m.side;
    }
    return os.str();
}

std::string edge_payload(const Edge& e)
{
    if (e.node == NKind::interior)
        return "s";
    std::string r = "b:" + length_str(*e.len);
    if (e.side)
        r += "/s" + std::to_string(*e.side);
    return r;
}

struct Canonizer {
    const CombType& t;
    std::map<int, std::vector<std::pair<const Edge*, int>>> adj;

    explicit Canonizer(const CombType& type) : t(type)
    {
        for (const auto& e : t.edges) {
            adj[e.a].push_back({&e, e.b});
            adj[e.b].push_back({&e, e.a});
        }
    }

    std::string vertex_payload(int id) const
    {
        const Vertex* v = t.find_vertex(id);
        std::ostringstream os;
        switch (v->kind) {
        case VKind::strip: os << "S"; break;
        case VKind::disk: os << "D"; break;
        case VKind::sphere: os << "P"; break;
        }
        if (auto pos = t.chain_position(id))
            os << pos->second;  // position along its chain is rigid data
        std::vector<std::string> ms;
        for (const Marking* m : t.markings_at(id))
            ms.push_back(marking_payload(*m, v->kind == VKind::strip));
        std::sort(ms.begin(), ms.end());
        for (const auto& s : ms)
            os << "," << s;
        return os.str();
    }

    std::string encode(int v, int parent) const
    {
        std::vector<std::string> children;
        auto it = adj.find(v);
        if (it != adj.end())
            for (const auto& [e, w] : it->second) {
                if (w == parent)
                    continue;
                children.push_back("[" + edge_payload(*e) + encode(w, v) + "]");
            }
        std::sort(children.begin(), children.end());
        std::string r = "(" + vertex_payload(v);
        for (const auto& c : children)
            r += c;
        return r + ")";
    }
};

}  // namespace

std::string canonical_form(const CombType& t)
{
    Canonizer cz(t);
    std::vector<std::string> comps;
    for (const auto& comp : t.components()) {
        std::string best;
        for (int root : comp) {
            std::string enc = cz.encode(root, -1);
            if (best.empty() || enc < best)
                best = enc;
        }
        comps.push_back(best);
    }
    std::sort(comps.begin(), comps.end());
    std::string r;
    for (const auto& c : comps)
        r += c + "|";
    return r;
}

CombType abstract_lengths(const CombType& t)
{
    CombType r = t;
    for (auto& e : r.edges)
        if (e.len && e.len->is_positive_finite())
            e.len = Length::finite(1);
    return r;
}

std::vector<CombType> split_components(const CombType& t)
{
    std::vector<CombType> out;
    for (const auto& comp : t.components()) {
        std::set<int> in(comp.begin(), comp.end());
        CombType piece;
        for (const auto& v : t.vertices)
            if (in.count(v.id))
                piece.vertices.push_back(v);
        for (const auto& e : t.edges)
            if (in.count(e.a))
                piece.edges.push_back(e);
        for (const auto& m : t.markings)
            if (in.count(m.vertex))
                piece.markings.push_back(m);
        for (const auto& chain : t.chains)
            if (!chain.empty() && in.count(chain.front()))
                piece.chains.push_back(chain);
        out.push_back(std::move(piece));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// All trees on vertices 0..v-1 as edge lists, via Pruefer sequences.
std::vector<std::vector<std::pair<int, int>>> all_trees(int v)
{
    std::vector<std::vector<std::pair<int, int>>> out;
    if (v == 1) {
        out.push_back({});
        return out;
    }
    if (v == 2) {
        out.push_back({{0, 1}});
        return out;
    }
    std::vector<int> seq(v - 2, 0);
    for (;;) {
        // Decode one Pruefer sequence.
        std::vector<int> degree(v, 1);
        for (int s : seq)
            degree[s]++;
        std::vector<std::pair<int, int>> edges;
        std::set<int> leaves;
        for (int i = 0; i < v; ++i)
            if (degree[i] == 1)
                leaves.insert(i);
        std::vector<int> work = seq;
        for (int s : work) {
            int leaf = *leaves.begin();
            leaves.erase(leaves.begin());
            edges.push_back({std::min(leaf, s), std::max(leaf, s)});
            if (--degree[s] == 1)
                leaves.insert(s);
        }
        int u = *leaves.begin(), w = *std::next(leaves.begin());
        edges.push_back({std::min(u, w), std::max(u, w)});
        out.push_back(edges);
        // Next sequence.
        int i = v - 3;
        while (i >= 0 && seq[i] == v - 1)
            seq[i--] = 0;
        if (i < 0)
            break;
        seq[i]++;
    }
    return out;
}

// Strip vertices must induce a path; returns it (any orientation) or nullopt.
std::optional<std::vector<int>> induced_path(const std::vector<std::pair<int, int>>& edges,
                                             const std::vector<int>& strips)
{
    if (strips.empty())
        return std::nullopt;
    if (strips.size() == 1)
        return std::vector<int>{strips[0]};
    std::set<int> sset(strips.begin(), strips.end());
    std::map<int, std::vector<int>> adj;
    int internal = 0;
    for (auto [a, b] : edges)
        if (sset.count(a) && sset.count(b)) {
            adj[a].push_back(b);
            adj[b].push_back(a);
            ++internal;
        }
    if (internal != (int)strips.size() - 1)
        return std::nullopt;  // not connected (tree => connected iff v-1 edges)
    int start = -1;
    for (int s : strips) {
        if (adj[s].size() > 2)
            return std::nullopt;
        if (adj[s].size() <= 1)
            start = s;
    }
    std::vector<int> path{start};
    int prev = -1, cur = start;
    while ((int)path.size() < (int)strips.size()) {
        int next = -1;
        for (int w : adj[cur])
            if (w != prev)
                next = w;
        if (next < 0)
            return std::nullopt;
        path.push_back(next);
        prev = cur;
        cur = next;
    }
    return path;
}

}  // namespace

std::vector<CombType> enumerate_types(int n, int max_vertices, TKind kind)
{
    if (n < 0 || max_vertices < 1)
        throw error("enumerate_types: need n >= 0, max_vertices >= 1");
    if (max_vertices > 6)
        throw error("enumerate_types: max_vertices > 6 not supported");
    if (kind == TKind::sphere)
        throw error("enumerate_types: kinds are strip or disk");

    std::map<std::string, CombType> found;

    for (int v = 1; v <= max_vertices; ++v) {
        for (const auto& tree : all_trees(v)) {
            // Vertex kind assignments.
            std::vector<int> kinds(v, 0);  // 0 strip, 1 disk, 2 sphere
            for (;;) {
                auto next_assignment = [&]() {
                    int i = v - 1;
                    while (i >= 0 && kinds[i] == 2)
                        kinds[i--] = 0;
                    if (i < 0)
                        return false;
                    kinds[i]++;
                    return true;
                };
                std::vector<int> strips, disks;
                for (int i = 0; i < v; ++i)
                    (kinds[i] == 0 ? strips : disks).push_back(i);
                bool kind_ok = (kind == TKind::strip) ? !strips.empty()
                                                      : strips.empty() && !std::all_of(
                                                            kinds.begin(), kinds.end(),
                                                            [](int k) { return k == 2; });
                std::optional<std::vector<int>> path;
                if (kind_ok && kind == TKind::strip) {
                    path = induced_path(tree, strips);
                    kind_ok = path.has_value();
                }
                if (!kind_ok) {
                    if (!next_assignment())
                        break;
                    continue;
                }

                // Edge kinds are forced: a sphere endpoint makes the node
                // interior, otherwise it is a boundary node with a length.
                std::vector<int> boundary_edges;
                for (int i = 0; i < (int)tree.size(); ++i) {
                    auto [a, b] = tree[i];
                    if (kinds[a] != 2 && kinds[b] != 2)
                        boundary_edges.push_back(i);
                }

                // Chain orientations, length classes, bubble-tree sides and
                // marking placements.
                std::vector<std::vector<int>> orientations;
                if (kind == TKind::strip) {
                    orientations.push_back(*path);
                    if (path->size() >= 2) {
                        auto rev = *path;
                        std::reverse(rev.begin(), rev.end());
                        orientations.push_back(rev);
                    }
                } else {
                    orientations.push_back({});
                }

                const int n_len = (int)boundary_edges.size();
                std::vector<int> lens(n_len, 0);
                for (;;) {
                    for (const auto& chain : orientations) {
                        // Marking placement: n labeled markings onto v slots.
                        std::vector<int> place(n, 0);
                        for (;;) {
                            // Sides per bubble tree handled by validate retry:
                            // enumerate sides as a bitmask over non-chain
                            // boundary edges' trees.  Build the base type
                            // first, then try side assignments.
                            CombType base;
                            for (int i = 0; i < v; ++i)
                                base.vertices.push_back(
                                    {i, kinds[i] == 0 ? VKind::strip
                                                      : kinds[i] == 1 ? VKind::disk
                                                                      : VKind::sphere});
                            int eid = 1;
                            for (int i = 0; i < (int)tree.size(); ++i) {
                                auto [a, b] = tree[i];
                                Edge e;
                                e.id = eid++;
                                e.a = a;
                                e.b = b;
                                bool interior = kinds[a] == 2 || kinds[b] == 2;
                                e.node = interior ? NKind::interior : NKind::boundary;
                                if (!interior) {
                                    auto it = std::find(boundary_edges.begin(),
                                                        boundary_edges.end(), i);
                                    int cls = lens[it - boundary_edges.begin()];
                                    e.len = cls == 0 ? Length::zero()
                                                     : cls == 1 ? Length::finite(1)
                                                                : Length::inf();
                                }
                                base.edges.push_back(e);
                            }
                            int mid = 1;
                            if (!chain.empty()) {
                                base.chains.push_back(chain);
                                Marking zin;
                                zin.id = mid++;
                                zin.vertex = chain.front();
                                zin.interior = false;
                                zin.role = BRole::incoming;
                                base.markings.push_back(zin);
                                Marking zout;
                                zout.id = mid++;
                                zout.vertex = chain.back();
                                zout.interior = false;
                                zout.role = BRole::outgoing;
                                base.markings.push_back(zout);
                            }
                            for (int i = 0; i < n; ++i) {
                                Marking m;
                                m.id = mid++;
                                m.vertex = place[i];
                                m.interior = true;
                                m.label = i + 1;
                                base.markings.push_back(m);
                            }

                            // Which boundary edges need sides: group by
                            // bubble tree (non-strip side of the graph).
                            std::vector<int> sided;  // indices into base.edges
                            for (int i = 0; i < (int)base.edges.size(); ++i) {
                                const Edge& e = base.edges[i];
                                if (e.node != NKind::boundary)
                                    continue;
                                if (kind != TKind::strip)
                                    continue;
                                bool chainlike = kinds[e.a] == 0 && kinds[e.b] == 0;
                                if (!chainlike)
                                    sided.push_back(i);
                            }
                            // Group sided edges into trees: union-find over
                            // non-strip vertices.
                            std::map<int, int> root;
                            for (int i = 0; i < v; ++i)
                                if (kinds[i] != 0)
                                    root[i] = i;
                            std::function<int(int)> rfind = [&](int x) {
                                while (root[x] != x)
                                    x = root[x] = root[root[x]];
                                return x;
                            };
                            for (const auto& e : base.edges) {
                                if (kinds[e.a] != 0 && kinds[e.b] != 0)
                                    root[rfind(e.a)] = rfind(e.b);
                            }
                            std::vector<int> groups;  // distinct tree roots
                            std::map<int, int> group_index;
                            for (int i : sided) {
                                const Edge& e = base.edges[i];
                                int nv = kinds[e.a] != 0 ? e.a : e.b;
                                int r = rfind(nv);
                                if (!group_index.count(r)) {
                                    group_index[r] = (int)groups.size();
                                    groups.push_back(r);
                                }
                            }
                            int n_groups = (int)groups.size();
                            for (int mask = 0; mask < (1 << n_groups); ++mask) {
                                CombType cand = base;
                                for (int i : sided) {
                                    Edge& e = cand.edges[i];
                                    int nv = kinds[e.a] != 0 ? e.a : e.b;
                                    e.side = (mask >> group_index.at(rfind(nv))) & 1;
                                }
                                if (!validate(cand).empty())
                                    continue;
                                bool stable = true;
                                for (const auto& vert : cand.vertices)
                                    if (!vertex_is_stable(cand, vert.id)) {
                                        stable = false;
                                        break;
                                    }
                                if (!stable)
                                    continue;
                                found.emplace(canonical_form(cand), cand);
                            }

                            int i = n - 1;
                            while (i >= 0 && place[i] == v - 1)
                                place[i--] = 0;
                            if (i < 0)
                                break;
                            place[i]++;
                        }
                    }
                    int i = n_len - 1;
                    while (i >= 0 && lens[i] == 2)
                        lens[i--] = 0;
                    if (i < 0)
                        break;
                    lens[i]++;
                }

                if (!next_assignment())
                    break;
            }
        }
    }

    std::vector<CombType> out;
    out.reserve(found.size());
    for (auto& [canon, t] : found)
        out.push_back(std::move(t));
    return out;
}

}  // namespace pearl
