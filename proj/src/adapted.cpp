#include "pearl/adapted.hpp"
#include "pearl/bmorph.hpp"

#include <algorithm>
#include <set>

namespace pearl {

ClassVector class_add(const ClassVector& x, const ClassVector& y)
{
    ClassVector r(std::max(x.size(), y.size()), 0);
    for (size_t i = 0; i < x.size(); ++i)
        r[i] += x[i];
    for (size_t i = 0; i < y.size(); ++i)
        r[i] += y[i];
    return r;
}

bool class_is_zero(const ClassVector& x)
{
    return std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; });
}

Rational LabeledType::total_energy() const
{
    Rational e = 0;
    for (const auto& [v, l] : labels)
        e += l.energy;
    return e;
}

ClassVector LabeledType::total_class() const
{
    ClassVector c;
    for (const auto& [v, l] : labels)
        c = class_add(c, l.class_id);
    return c;
}

std::vector<std::string> validate_labels(const LabeledType& t)
{
    std::vector<std::string> bad = validate(t.base);
    for (const auto& v : t.base.vertices) {
        auto it = t.labels.find(v.id);
        if (it == t.labels.end()) {
            bad.push_back("vertex " + std::to_string(v.id) + " carries no label");
            continue;
        }
        const VertexLabel& l = it->second;
        if (l.energy < 0)
            bad.push_back("vertex " + std::to_string(v.id) + " has negative energy");
        if (l.ghost() && !class_is_zero(l.class_id))
            bad.push_back("ghost vertex " + std::to_string(v.id) +
                          " carries a nonzero class");
    }
    for (const auto& [id, l] : t.labels)
        if (!t.base.find_vertex(id))
            bad.push_back("label on missing vertex " + std::to_string(id));
    for (const auto& [id, c] : t.marking_contacts) {
        if (!t.base.find_marking(id)) {
            bad.push_back("contact datum on missing marking " + std::to_string(id));
            continue;
        }
        if (c.d_plus < 1 || c.d_minus != 0)
            bad.push_back("marking " + std::to_string(id) +
                          " needs a single positive tangency order");
    }
    for (const auto& [id, c] : t.node_contacts) {
        if (!t.base.find_edge(id)) {
            bad.push_back("contact datum on missing edge " + std::to_string(id));
            continue;
        }
        if (c.d_plus < 1 || c.d_minus < 1)
            bad.push_back("node " + std::to_string(id) +
                          " needs a pair of positive tangency orders");
    }
    return bad;
}

int index(const LabeledType& t)
{
    int i = 0;
    for (const auto& [v, l] : t.labels)
        i += l.index_contrib;
    return i;
}

bool is_uncrowded(const LabeledType& t)
{
    // Components of the subgraph induced on ghost vertices.
    std::set<int> ghosts;
    for (const auto& [v, l] : t.labels)
        if (l.ghost())
            ghosts.insert(v);
    std::set<int> seen;
    for (int g : ghosts) {
        if (seen.count(g))
            continue;
        std::vector<int> comp, stack{g};
        seen.insert(g);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (const Edge* e : t.base.edges_at(u)) {
                int w = (e->a == u) ? e->b : e->a;
                if (ghosts.count(w) && seen.insert(w).second)
                    stack.push_back(w);
            }
        }
        int marks = 0;
        for (int u : comp)
            for (const Marking* m : t.base.markings_at(u))
                marks += m->interior ? 1 : 0;
        if (marks > 1)
            return false;
    }
    return true;
}

std::vector<std::string> is_adapted(const LabeledType& t)
{
    std::vector<std::string> bad = validate_labels(t);
    if (!bad.empty())
        return bad;
    for (const auto& v : t.base.vertices)
        if (!vertex_is_stable(t.base, v.id) &&
            !(v.kind == VKind::strip && is_bare_strip(t.base))) {
            bad.push_back("unstable domain at vertex " + std::to_string(v.id));
        }
    for (const auto& v : t.base.vertices) {
        const VertexLabel& l = t.labels.at(v.id);
        if (v.kind == VKind::sphere && l.in_divisor && l.energy > 0)
            bad.push_back("non-constant sphere in divisor at vertex " +
                          std::to_string(v.id));
    }
    for (const auto& m : t.base.markings) {
        if (!m.interior)
            continue;
        if (m.tag == DTag::none)
            bad.push_back("interior marking " + std::to_string(m.id) +
                          " carries no divisor tag");
        if (!t.marking_contacts.count(m.id))
            bad.push_back("interior marking " + std::to_string(m.id) +
                          " carries no contact degree");
    }
    for (const auto& v : t.base.vertices) {
        const VertexLabel& l = t.labels.at(v.id);
        if (!l.in_divisor)
            continue;
        bool has_contact = false;
        for (const Marking* m : t.base.markings_at(v.id))
            if (m->interior && t.marking_contacts.count(m->id))
                has_contact = true;
        if (!has_contact)
            bad.push_back("vertex " + std::to_string(v.id) +
                          " meets the divisor without a contact marking");
    }
    return bad;
}

std::vector<QuotaViolation> energy_quota_check(const LabeledType& t, long long k,
                                               const Rational& c0, const Rational& c1)
{
    Rational ck = c0 + c1 * Rational(k);
    if (ck <= 0)
        throw error("energy quota needs C(k) > 0");
    auto bad = validate_labels(t);
    if (!bad.empty())
        throw error("invalid labeled type: " + bad.front());

    // Cut boundary edges of positive length, then take components.
    CombType skeleton = t.base;
    std::erase_if(skeleton.edges, [](const Edge& e) {
        return e.node == NKind::boundary && !e.len->is_zero();
    });
    std::vector<QuotaViolation> out;
    for (const auto& comp : skeleton.components()) {
        Rational energy = 0;
        int marks = 0;
        for (int v : comp) {
            energy += t.labels.at(v).energy;
            for (const Marking* m : t.base.markings_at(v))
                marks += m->interior ? 1 : 0;
        }
        Rational quota = Rational(marks) / ck;
        if (energy > quota)
            out.push_back({comp, energy, quota});
    }
    return out;
}

Index2Class classify_index2_boundary(const LabeledType& t)
{
    if (index(t) != 2)
        throw error("boundary classification applies to index-two types");
    for (const auto& e : t.base.edges)
        if (e.node == NKind::boundary && e.len->is_zero())
            return {BoundaryClass::fake};
    for (const auto& e : t.base.edges) {
        if (e.node != NKind::boundary || !e.len->infinite)
            continue;
        if (t.base.is_chain_edge(e))
            return {BoundaryClass::true_strip_breaking};
    }
    for (const auto& e : t.base.edges) {
        if (e.node != NKind::boundary || !e.len->infinite)
            continue;
        int side = e.side ? *e.side : -1;
        if (side < 0) {
            auto ts = t.base.tree_side(t.base.find_vertex(e.a)->kind == VKind::strip
                                           ? e.b
                                           : e.a);
            side = ts ? *ts : -1;
        }
        return {BoundaryClass::true_disk_bubble, side};
    }
    return {BoundaryClass::not_boundary};
}

LabeledType collapse_edge(const LabeledType& t, int edge_id)
{
    const Edge* e = t.base.find_edge(edge_id);
    if (!e)
        throw error("no such edge: " + std::to_string(edge_id));
    LabeledType r;
    r.base = collapse_edge(t.base, edge_id);
    r.marking_contacts = t.marking_contacts;
    r.node_contacts = t.node_contacts;
    r.node_contacts.erase(edge_id);
    r.x_plus = t.x_plus;
    r.x_minus = t.x_minus;
    int survivor = r.base.find_vertex(e->a) ? e->a : e->b;
    int gone = survivor == e->a ? e->b : e->a;
    for (const auto& [v, l] : t.labels) {
        if (v == gone)
            continue;
        if (v == survivor) {
            const VertexLabel& other = t.labels.at(gone);
            VertexLabel merged;
            merged.class_id = class_add(l.class_id, other.class_id);
            merged.energy = l.energy + other.energy;
            merged.index_contrib = l.index_contrib + other.index_contrib;
            merged.in_divisor = l.in_divisor && other.in_divisor;
            r.labels[v] = merged;
        } else {
            r.labels[v] = l;
        }
    }
    return r;
}

LabeledType cut_edge(const LabeledType& t, int edge_id)
{
    const Edge* e = t.base.find_edge(edge_id);
    if (!e)
        throw error("no such edge: " + std::to_string(edge_id));
    const bool interior = e->node == NKind::interior;
    auto contact = t.node_contacts.find(edge_id);

    LabeledType r;
    r.base = cut_edge(t.base, edge_id);
    r.labels = t.labels;
    r.marking_contacts = t.marking_contacts;
    r.node_contacts = t.node_contacts;
    r.node_contacts.erase(edge_id);
    r.x_plus = t.x_plus;
    r.x_minus = t.x_minus;

    if (interior && contact != t.node_contacts.end()) {
        // The node's two tangency orders pass to the two new tails.
        std::set<int> old_ids;
        for (const auto& m : t.base.markings)
            old_ids.insert(m.id);
        for (auto& m : r.base.markings) {
            if (old_ids.count(m.id) || !m.interior)
                continue;
            m.tag = DTag::D;
            Contact c;
            c.d_plus = (m.vertex == e->a) ? contact->second.d_plus
                                          : contact->second.d_minus;
            c.d_minus = 0;
            r.marking_contacts[m.id] = c;
        }
    }
    return r;
}

}  // namespace pearl
