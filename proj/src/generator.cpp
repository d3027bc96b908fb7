#include "pearl/generator.hpp"

#include <sstream>

namespace pearl {

namespace {

// Single strip vertex carrying z-, z+ and the marked interior points.
LabeledType make_strip_type(const std::array<int, 3>& marks, const Rational& energy,
                            int index_contrib, const std::string& x_plus,
                            const std::string& x_minus)
{
    LabeledType t;
    Vertex v{1, VKind::strip};
    t.base.vertices.push_back(v);
    t.base.chains.push_back({1});
    int mid = 1;
    Marking zin;
    zin.id = mid++;
    zin.vertex = 1;
    zin.interior = false;
    zin.role = BRole::incoming;
    t.base.markings.push_back(zin);
    Marking zout;
    zout.id = mid++;
    zout.vertex = 1;
    zout.interior = false;
    zout.role = BRole::outgoing;
    t.base.markings.push_back(zout);
    int label = 1;
    const DTag tags[3] = {DTag::D, DTag::D0, DTag::D1};
    for (int slot = 0; slot < 3; ++slot)
        for (int i = 0; i < marks[slot]; ++i) {
            Marking m;
            m.id = mid++;
            m.vertex = 1;
            m.interior = true;
            m.label = label++;
            m.tag = tags[slot];
            t.base.markings.push_back(m);
            t.marking_contacts[m.id] = Contact{1, 0};
        }
    VertexLabel l;
    l.class_id = {1};
    l.energy = energy;
    l.index_contrib = index_contrib;
    t.labels[1] = l;
    t.x_plus = x_plus;
    t.x_minus = x_minus;
    return t;
}

}  // namespace

TrajectoryRecord make_strip_record(const std::string& x_plus, const std::string& x_minus,
                                   const Rational& energy, int sign,
                                   const std::array<int, 3>& marks)
{
    TrajectoryRecord r;
    r.type = make_strip_type(marks, energy, 1, x_plus, x_minus);
    r.x_plus = x_plus;
    r.x_minus = x_minus;
    r.energy = energy;
    r.sign = sign;
    r.marks = marks;
    return r;
}

LabeledType make_bubble_type(const std::array<int, 3>& marks, int side,
                             const Length& len, const Rational& energy,
                             const std::string& x_plus, const std::string& x_minus)
{
    // marks[0] interior points on the strip, marks[1+side] on the bubble.
    std::array<int, 3> strip_marks{marks[0], 0, 0};
    LabeledType t = make_strip_type(strip_marks, energy - 1, 1, x_plus, x_minus);
    Vertex bubble{2, VKind::disk};
    t.base.vertices.push_back(bubble);
    Edge e;
    e.id = 1;
    e.a = 1;
    e.b = 2;
    e.node = NKind::boundary;
    e.len = len;
    e.side = side;
    t.base.edges.push_back(e);
    int mid = t.base.fresh_marking_id();
    int label = 1;
    for (int i = 0; i < marks[1 + side]; ++i) {
        Marking m;
        m.id = mid++;
        m.vertex = 2;
        m.interior = true;
        m.label = label++;
        m.tag = side == 0 ? DTag::D0 : DTag::D1;
        t.base.markings.push_back(m);
        t.marking_contacts[m.id] = Contact{1, 0};
    }
    detail::renumber_markings(t.base);
    VertexLabel l;
    l.class_id = {1};
    l.energy = 1;  // the bubble carries one unit of area
    l.index_contrib = 1;
    t.labels[2] = l;
    return t;
}

namespace {

struct Builder {
    Dataset d;
    Rng rng;
    int next_mid = 0;   // middle intersection points
    int next_cell = 0;
    int next_one = 0;

    explicit Builder(uint64_t seed) : rng(seed) {}

    std::string fresh_middle(int degree)
    {
        std::string id = "y" + std::to_string(next_mid++);
        d.points.push_back({id, degree});
        return id;
    }
    std::string fresh_cell_id() { return "c" + std::to_string(next_cell++); }
    std::string fresh_one_id() { return "e" + std::to_string(next_one++); }

    std::array<int, 3> random_marks(int lo, int hi)
    {
        return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
    }

    // Two broken ends through exclusive middles with the given totals and
    // eps-products; returns the two glued concatenations.
    struct EndPair {
        TrajectoryRecord u1, u2;
        Concatenation glued;
    };
    EndPair broken_end(const std::string& x, const std::string& z, int level,
                       const std::array<int, 3>& total, const Rational& energy,
                       int product, bool trivial_split)
    {
        std::array<int, 3> m1{};
        for (int i = 0; i < 3; ++i)
            m1[i] = trivial_split ? total[i] : rng.uniform(0, total[i]);
        std::array<int, 3> m2{total[0] - m1[0], total[1] - m1[1], total[2] - m1[2]};
        Rational e1 = energy * Rational(rng.uniform(1, 7), 8);
        Rational e2 = energy - e1;
        int s1 = rng.sign();
        int s2 = product * s1;
        std::string y = fresh_middle((level + 1) % d.grading_n);
        EndPair out;
        out.u1 = make_strip_record(x, y, e1, s1, m1);
        out.u2 = make_strip_record(y, z, e2, s2, m2);
        out.glued = concatenate(out.u1, out.u2);
        d.records.push_back(out.u1);
        d.records.push_back(out.u2);
        return out;
    }

    ZeroCell strip_cell(const EndPair& end)
    {
        ZeroCell c;
        c.id = fresh_cell_id();
        c.type = end.glued.record.type;
        c.sign = end.glued.record.sign;
        c.marks = end.glued.record.marks;
        c.energy = end.glued.record.energy;
        c.x_plus = end.glued.record.x_plus;
        c.x_minus = end.glued.record.x_minus;
        c.via = end.u1.x_minus;
        return c;
    }

    void link(const std::string& plus_cell, const std::string& minus_cell,
              const std::array<int, 3>& marks)
    {
        OneCell e;
        e.id = fresh_one_id();
        e.marks = marks;
        e.endpoints = {{plus_cell, +1}, {minus_cell, -1}};
        d.cells.one.push_back(e);
    }

    // Interval family: all relabelings of two cancelling broken ends.
    void plain_component(const std::string& x, const std::string& z, int level)
    {
        std::array<int, 3> total = random_marks(0, 2);
        Rational energy = rng.rational(6, 4);
        EndPair a = broken_end(x, z, level, total, energy, +1, false);
        EndPair b = broken_end(x, z, level, total, energy, -1, false);
        // Equal multiplicities are needed to tile the instances into
        // intervals; reuse end a's split for end b.
        for (int i = 0; i < 3; ++i) {
            b.u1.marks[i] = a.u1.marks[i];
            b.u2.marks[i] = a.u2.marks[i];
        }
        b.u1.type = make_strip_type(b.u1.marks, b.u1.energy, 1, b.u1.x_plus, b.u1.x_minus);
        b.u2.type = make_strip_type(b.u2.marks, b.u2.energy, 1, b.u2.x_plus, b.u2.x_minus);
        d.records[d.records.size() - 2] = b.u1;
        d.records[d.records.size() - 1] = b.u2;
        b.glued = concatenate(b.u1, b.u2);

        Int mu = a.glued.multiplicity;
        for (Int i = 0; i < mu; ++i) {
            ZeroCell ca = strip_cell(a);
            ZeroCell cb = strip_cell(b);
            d.cells.zero.push_back(ca);
            d.cells.zero.push_back(cb);
            if (a.glued.record.sign > 0)
                link(ca.id, cb.id, total);
            else
                link(cb.id, ca.id, total);
        }
    }

    // Two intervals ending in an involution pair of disk bubbles at
    // infinity; the strip-breaking ends cancel in d^2.
    void bubble_component(const std::string& x, const std::string& z, int level)
    {
        int side = rng.uniform(0, 1);
        std::array<int, 3> total{rng.uniform(0, 2), 0, 0};
        total[1 + side] = rng.uniform(1, 2);
        Rational energy = rng.rational(6, 4) + 1;  // bubble carries one unit

        EndPair s1 = broken_end(x, z, level, total, energy, -1, true);
        EndPair s2 = broken_end(x, z, level, total, energy, +1, true);

        ZeroCell c;
        c.id = fresh_cell_id();
        c.type = make_bubble_type(total, side, Length::inf(), energy, x, z);
        c.sign = +1;
        c.marks = total;
        c.energy = energy;
        c.x_plus = x;
        c.x_minus = z;
        ZeroCell ci = c;
        ci.id = fresh_cell_id();
        ci.sign = -1;
        c.involution_partner = ci.id;
        ci.involution_partner = c.id;
        d.cells.zero.push_back(c);
        d.cells.zero.push_back(ci);

        ZeroCell cs1 = strip_cell(s1);
        ZeroCell cs2 = strip_cell(s2);
        d.cells.zero.push_back(cs1);
        d.cells.zero.push_back(cs2);
        link(c.id, cs1.id, total);
        link(cs2.id, ci.id, total);
    }

    // A fake pair between a marked cover and its forgetful base: the cover
    // side is fed by fiber-many bubble intervals, the base side ends in a
    // strip break.
    void fake_component(const std::string& x, const std::string& z, int level)
    {
        int side = rng.uniform(0, 1);
        int n_b = rng.uniform(1, 2);
        std::array<int, 3> small{rng.uniform(0, 2), 0, 0};
        std::array<int, 3> big = small;
        big[1 + side] += n_b;
        Rational energy = rng.rational(6, 4) + 1;
        Int fiber = factorial(n_b);

        for (int mirror = 0; mirror < 2; ++mirror) {
            int s_plus = mirror == 0 ? +1 : -1;

            ZeroCell fplus;
            fplus.id = fresh_cell_id();
            fplus.type = make_bubble_type(big, side, Length::zero(), energy, x, z);
            fplus.sign = s_plus;
            fplus.marks = big;
            fplus.energy = energy;
            fplus.x_plus = x;
            fplus.x_minus = z;
            fplus.fiber_order = fiber;
            ZeroCell fminus;
            fminus.id = fresh_cell_id();
            fminus.type = make_bubble_type(small, side, Length::zero(), energy, x, z);
            fminus.sign = -s_plus;
            fminus.marks = small;
            fminus.energy = energy;
            fminus.x_plus = x;
            fminus.x_minus = z;
            fplus.fake_partner = fminus.id;
            fminus.fake_partner = fplus.id;

            // Cover side: fiber-many one-cells to bubble-at-infinity cells,
            // paired with the mirror copy by the involution.
            std::vector<std::string> bubbles;
            for (Int i = 0; i < fiber; ++i) {
                ZeroCell b;
                b.id = fresh_cell_id();
                b.type = make_bubble_type(big, side, Length::inf(), energy, x, z);
                b.sign = -s_plus;
                b.marks = big;
                b.energy = energy;
                b.x_plus = x;
                b.x_minus = z;
                bubbles.push_back(b.id);
                d.cells.zero.push_back(b);
                if (s_plus > 0)
                    link(fplus.id, b.id, big);
                else
                    link(b.id, fplus.id, big);
            }
            if (mirror == 0) {
                pending_bubbles = bubbles;
            } else {
                for (size_t i = 0; i < bubbles.size(); ++i) {
                    auto* a = find_zero(pending_bubbles[i]);
                    auto* b = find_zero(bubbles[i]);
                    a->involution_partner = b->id;
                    b->involution_partner = a->id;
                }
            }

            // Base side: one interval to a strip-breaking end.
            EndPair s = broken_end(x, z, level, small, energy, s_plus, true);
            ZeroCell cs = strip_cell(s);
            d.cells.zero.push_back(cs);
            if (s_plus > 0)
                link(cs.id, fminus.id, small);
            else
                link(fminus.id, cs.id, small);
            d.cells.zero.push_back(fplus);
            d.cells.zero.push_back(fminus);
        }
    }

    std::vector<std::string> pending_bubbles;
    ZeroCell* find_zero(const std::string& id)
    {
        for (auto& c : d.cells.zero)
            if (c.id == id)
                return &c;
        return nullptr;
    }
};

}  // namespace

Dataset generate_dataset(uint64_t seed, int min_points, int min_records)
{
    Builder b(seed);
    b.d.grading_n = 8;
    b.d.shift = 1;

    // Separate source and sink pools so that the only composable pairs run
    // through the exclusive middle points.
    const int per_level = std::max(2, min_points / (4 * b.d.grading_n));
    std::vector<std::vector<std::string>> sources(b.d.grading_n), sinks(b.d.grading_n);
    for (int lvl = 0; lvl < b.d.grading_n; ++lvl)
        for (int j = 0; j < per_level; ++j) {
            std::string a = "a" + std::to_string(lvl) + "_" + std::to_string(j);
            std::string z = "b" + std::to_string(lvl) + "_" + std::to_string(j);
            b.d.points.push_back({a, lvl});
            b.d.points.push_back({z, lvl});
            sources[lvl].push_back(a);
            sinks[lvl].push_back(z);
        }

    while ((int)b.d.records.size() < min_records ||
           (int)b.d.points.size() < min_points) {
        int lvl = b.rng.uniform(0, b.d.grading_n - 1);
        const std::string& x = sources[lvl][b.rng.uniform(0, per_level - 1)];
        const std::string& z =
            sinks[(lvl + 2) % b.d.grading_n][b.rng.uniform(0, per_level - 1)];
        switch (b.rng.uniform(0, 3)) {
        case 0:
        case 1:
            b.plain_component(x, z, lvl);
            break;
        case 2:
            b.bubble_component(x, z, lvl);
            break;
        default:
            b.fake_component(x, z, lvl);
            break;
        }
    }
    return b.d;
}

Corruptions corrupt_dataset(const Dataset& d, uint64_t seed, int variant)
{
    Rng rng(seed);
    Corruptions out;
    out.data = d;
    Dataset& c = out.data;

    auto strip_cells = [&]() {
        std::vector<int> ids;
        for (int i = 0; i < (int)c.cells.zero.size(); ++i)
            if (classify_index2_boundary(c.cells.zero[i].type).cls ==
                BoundaryClass::true_strip_breaking)
                ids.push_back(i);
        return ids;
    };

    switch (variant % 6) {
    case 0: {
        int i = rng.uniform(0, (int)c.records.size() - 1);
        c.records[i].sign = -c.records[i].sign;
        out.locus = c.records[i].x_plus;
        out.what = "record sign flip";
        break;
    }
    case 1: {
        int i = rng.uniform(0, (int)c.records.size() - 1);
        c.records[i].energy += 1;
        c.records[i].type.labels.begin()->second.energy += 1;
        out.locus = c.records[i].x_plus;
        out.what = "record energy shift";
        break;
    }
    case 2: {
        int i = rng.uniform(0, (int)c.records.size() - 1);
        c.records[i].marks[0] += 1;
        out.locus = c.records[i].x_plus;
        out.what = "record weight change";
        break;
    }
    case 3: {
        int i = rng.uniform(0, (int)c.records.size() - 1);
        out.locus = c.records[i].x_plus;
        c.records.erase(c.records.begin() + i);
        out.what = "record deletion";
        break;
    }
    case 4: {
        int i = rng.uniform(0, (int)c.cells.one.size() - 1);
        const OneCell& dying = c.cells.one[i];
        out.locus = dying.endpoints.empty() ? std::string("circle")
                                            : dying.endpoints.front().first;
        // name the endpoint that loses its only incident one-cell
        for (const auto& [cid, s] : dying.endpoints) {
            int refs = 0;
            for (const auto& e : c.cells.one)
                for (const auto& [other, t] : e.endpoints)
                    refs += other == cid ? 1 : 0;
            if (refs == 1)
                out.locus = cid;
        }
        c.cells.one.erase(c.cells.one.begin() + i);
        out.what = "one-cell deletion";
        break;
    }
    default: {
        std::vector<ZeroCell*> fakes;
        for (auto& z : c.cells.zero)
            if (z.fiber_order)
                fakes.push_back(&z);
        if (fakes.empty()) {
            auto ids = strip_cells();
            int i = ids[rng.uniform(0, (int)ids.size() - 1)];
            c.cells.zero[i].sign = -c.cells.zero[i].sign;
            out.locus = c.cells.zero[i].id;
            out.what = "cell sign flip";
        } else {
            ZeroCell* z = fakes[rng.uniform(0, (int)fakes.size() - 1)];
            *z->fiber_order += 1;
            out.locus = z->id;
            out.what = "fiber order corruption";
        }
        break;
    }
    }
    return out;
}

}  // namespace pearl
