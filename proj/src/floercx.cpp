#include "pearl/floercx.hpp"
#include "pearl/bmorph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pearl {

Rational sigma_weight(const std::array<int, 3>& marks)
{
    return Rational(1) / Rational(marks_factorial(marks));
}

Int marks_factorial(const std::array<int, 3>& marks)
{
    return factorial(marks[0]) * factorial(marks[1]) * factorial(marks[2]);
}

std::vector<std::string> validate_cells(const CellComplex1D& cc)
{
    std::vector<std::string> bad;
    std::set<std::string> ids;
    for (const auto& c : cc.zero)
        if (!ids.insert(c.id).second)
            bad.push_back("duplicate zero-cell id " + c.id);
    std::set<std::string> referenced;
    for (const auto& e : cc.one) {
        if (e.endpoints.size() != 0 && e.endpoints.size() != 2) {
            bad.push_back("one-cell " + e.id + " must have 0 or 2 endpoints");
            continue;
        }
        if (e.endpoints.size() == 2) {
            int s0 = e.endpoints[0].second, s1 = e.endpoints[1].second;
            if (!((s0 == 1 && s1 == -1) || (s0 == -1 && s1 == 1)))
                bad.push_back("one-cell " + e.id + " endpoint signs must be (+1,-1)");
            for (const auto& [cid, s] : e.endpoints) {
                if (!ids.count(cid))
                    bad.push_back("one-cell " + e.id + " references missing cell " + cid);
                referenced.insert(cid);
            }
        }
    }
    for (const auto& c : cc.zero)
        if (!referenced.count(c.id) && !c.isolated)
            bad.push_back("zero-cell " + c.id + " is unreferenced and not flagged isolated");
    return bad;
}

void CoboundaryMatrix::add(const std::string& x_minus, const std::string& x_plus,
                           const Novikov& v)
{
    auto key = std::make_pair(x_minus, x_plus);
    auto it = entries_.find(key);
    Novikov sum = (it == entries_.end()) ? v : it->second + v;
    if (cutoff_)
        sum = Novikov::with_cutoff(sum, *cutoff_);
    entries_[key] = sum;
}

Novikov CoboundaryMatrix::entry(const std::string& x_minus,
                                const std::string& x_plus) const
{
    auto it = entries_.find(std::make_pair(x_minus, x_plus));
    if (it != entries_.end())
        return it->second;
    Novikov zero;
    return cutoff_ ? Novikov::with_cutoff(zero, *cutoff_) : zero;
}

CoboundaryMatrix CoboundaryMatrix::compose(const CoboundaryMatrix& inner) const
{
    CoboundaryMatrix out(points_, cutoff_ ? cutoff_ : inner.cutoff_);
    // (this o inner)(x_plus) : entry (z,x) = sum_y this(z,y) inner(y,x).
    for (const auto& [ky, vy] : inner.entries_)
        for (const auto& [kz, vz] : entries_) {
            if (kz.second != ky.first)
                continue;
            out.add(kz.first, ky.second, vz * vy);
        }
    return out;
}

CoboundaryMatrix coboundary(const std::vector<IntersectionPoint>& points,
                            const std::vector<TrajectoryRecord>& records,
                            std::optional<Rational> cutoff)
{
    std::set<std::string> known;
    std::vector<std::string> ids;
    for (const auto& p : points) {
        if (!known.insert(p.id).second)
            throw error("duplicate intersection point " + p.id);
        ids.push_back(p.id);
    }
    CoboundaryMatrix m(ids, cutoff);
    for (const auto& u : records) {
        if (index(u.type) != 1)
            throw error("coboundary records must have index one");
        if (!known.count(u.x_plus) || !known.count(u.x_minus))
            throw error("unknown endpoint id on record " + u.x_plus + "->" + u.x_minus);
        if (u.energy != u.type.total_energy())
            throw error("record energy disagrees with its type");
        if (cutoff && u.energy >= *cutoff)
            throw error("record energy above the cutoff");
        Novikov term = Novikov::monomial(Rational(u.sign) * sigma_weight(u.marks),
                                         u.energy);
        m.add(u.x_minus, u.x_plus, term);
    }
    return m;
}

std::vector<std::string> degree_check(const CoboundaryMatrix& m,
                                      const std::vector<IntersectionPoint>& points,
                                      int grading_n, int shift)
{
    if (grading_n < 1)
        throw error("grading modulus must be >= 1");
    std::map<std::string, int> deg;
    for (const auto& p : points)
        deg[p.id] = ((p.degree % grading_n) + grading_n) % grading_n;
    std::vector<std::string> bad;
    for (const auto& [k, v] : m.entries()) {
        if (v.is_zero())
            continue;
        int want = ((deg.at(k.second) + shift) % grading_n + grading_n) % grading_n;
        if (deg.at(k.first) != want)
            bad.push_back("entry (" + k.first + "," + k.second + ") violates degree shift");
    }
    return bad;
}

Concatenation concatenate(const TrajectoryRecord& u1, const TrajectoryRecord& u2)
{
    if (u1.x_minus != u2.x_plus)
        throw error("concatenation endpoint mismatch");

    // Glue the outgoing end of u1 to the incoming end of u2.
    int out_id = -1, in_id = -1;
    for (const auto& m : u1.type.base.markings)
        if (!m.interior && m.role == BRole::outgoing)
            out_id = m.id;
    for (const auto& m : u2.type.base.markings)
        if (!m.interior && m.role == BRole::incoming)
            in_id = m.id;
    if (out_id < 0 || in_id < 0)
        throw error("concatenation needs strip types with z+ and z-");

    // Offsets mirror glue_at's embedding of the second factor.
    const int vo = u1.type.base.fresh_vertex_id();
    const int eo = u1.type.base.fresh_edge_id();
    const int mo = u1.type.base.fresh_marking_id();

    Concatenation out;
    out.record.type.base =
        glue_at(u1.type.base, out_id, u2.type.base, in_id, Length::inf());
    for (const auto& [v, l] : u1.type.labels)
        out.record.type.labels[v] = l;
    for (const auto& [v, l] : u2.type.labels)
        out.record.type.labels[v + vo] = l;
    for (const auto& [i, c] : u1.type.marking_contacts)
        out.record.type.marking_contacts[i] = c;
    for (const auto& [i, c] : u2.type.marking_contacts)
        out.record.type.marking_contacts[i + mo] = c;
    for (const auto& [i, c] : u1.type.node_contacts)
        out.record.type.node_contacts[i] = c;
    for (const auto& [i, c] : u2.type.node_contacts)
        out.record.type.node_contacts[i + eo] = c;
    out.record.type.x_plus = u1.x_plus;
    out.record.type.x_minus = u2.x_minus;

    out.record.x_plus = u1.x_plus;
    out.record.x_minus = u2.x_minus;
    out.record.energy = u1.energy + u2.energy;
    out.record.sign = u1.sign * u2.sign;
    out.multiplicity = 1;
    for (int i = 0; i < 3; ++i) {
        out.record.marks[i] = u1.marks[i] + u2.marks[i];
        out.multiplicity *= binomial(out.record.marks[i], u1.marks[i]);
    }
    return out;
}

Chain fundamental_class(const CellComplex1D& cc)
{
    auto bad = validate_cells(cc);
    if (!bad.empty())
        throw error("invalid cell complex: " + bad.front());
    Chain chain;
    for (const auto& e : cc.one) {
        if (e.endpoints.empty())
            continue;  // circle component
        Rational w = sigma_weight(e.marks);
        for (const auto& [cid, s] : e.endpoints)
            chain[cid] += w * Rational(s);
    }
    for (auto it = chain.begin(); it != chain.end();)
        it = (it->second == 0) ? chain.erase(it) : std::next(it);
    return chain;
}

namespace {

const ZeroCell* find_cell(const CellComplex1D& cc, const std::string& id)
{
    for (const auto& c : cc.zero)
        if (c.id == id)
            return &c;
    return nullptr;
}

Rational chain_coeff(const Chain& chain, const std::string& id)
{
    auto it = chain.find(id);
    return it == chain.end() ? Rational(0) : it->second;
}

}  // namespace

CancelResult cancel_fake(const Chain& chain, const CellComplex1D& cc)
{
    CancelResult out;
    out.chain = chain;
    std::set<std::string> done;
    for (const auto& c : cc.zero) {
        if (classify_index2_boundary(c.type).cls != BoundaryClass::fake)
            continue;
        if (done.count(c.id))
            continue;
        if (!c.fake_partner)
            throw error("fake boundary has no forgetful partner: " + c.id);
        const ZeroCell* p = find_cell(cc, *c.fake_partner);
        if (!p || classify_index2_boundary(p->type).cls != BoundaryClass::fake ||
            !p->fake_partner || *p->fake_partner != c.id)
            throw error("fake boundary has no forgetful partner: " + c.id);
        done.insert(c.id);
        done.insert(p->id);

        // Orient the pair: the cover cell carries the tagged fiber order.
        const ZeroCell* plus = c.fiber_order ? &c : p;
        const ZeroCell* minus = (plus == &c) ? p : &c;
        if (!plus->fiber_order)
            throw error("fake pair without a tagged fiber order: " + c.id);

        // (|G+|!)^-1 * fiber - (|G-|!)^-1 must vanish.
        Rational structural = sigma_weight(plus->marks) * Rational(*plus->fiber_order) -
                              sigma_weight(minus->marks);
        if (structural != 0)
            out.residues.push_back({plus->id, minus->id, structural,
                                    "fiber order does not match the weight ratio"});
        Rational coeffs = chain_coeff(out.chain, plus->id) +
                          chain_coeff(out.chain, minus->id);
        if (coeffs != 0)
            out.residues.push_back({plus->id, minus->id, coeffs,
                                    "fake pair contributions do not cancel"});
        out.chain.erase(plus->id);
        out.chain.erase(minus->id);
    }
    return out;
}

CancelResult involution_cancel(const Chain& chain, const CellComplex1D& cc)
{
    CancelResult out;
    out.chain = chain;
    std::set<std::string> done;
    for (const auto& c : cc.zero) {
        if (classify_index2_boundary(c.type).cls != BoundaryClass::true_disk_bubble)
            continue;
        if (done.count(c.id))
            continue;
        if (!c.involution_partner)
            throw error("disk-bubble cell without an involution partner: " + c.id);
        if (*c.involution_partner == c.id)
            throw error("involution must be fixed-point free on adapted configurations");
        const ZeroCell* p = find_cell(cc, *c.involution_partner);
        if (!p || !p->involution_partner || *p->involution_partner != c.id)
            throw error("disk-bubble cell without an involution partner: " + c.id);
        done.insert(c.id);
        done.insert(p->id);

        if (c.sign == p->sign)
            out.residues.push_back({c.id, p->id, Rational(c.sign + p->sign),
                                    "involution pair has equal signs"});
        if (c.marks != p->marks)
            out.residues.push_back({c.id, p->id, 0, "involution pair weights differ"});
        if (c.energy != p->energy)
            out.residues.push_back({c.id, p->id, c.energy - p->energy,
                                    "involution pair energies differ"});
        Rational coeffs = chain_coeff(out.chain, c.id) + chain_coeff(out.chain, p->id);
        if (coeffs != 0)
            out.residues.push_back({c.id, p->id, coeffs,
                                    "involution pair contributions do not cancel"});
        out.chain.erase(c.id);
        out.chain.erase(p->id);
    }
    return out;
}

D2Report verify_d_squared(const std::vector<IntersectionPoint>& points,
                          const std::vector<TrajectoryRecord>& records,
                          const CellComplex1D& cells, int grading_n, int shift,
                          std::optional<Rational> cutoff)
{
    D2Report report;

    CoboundaryMatrix d = coboundary(points, records, cutoff);
    report.degree_violations = degree_check(d, points, grading_n, shift);

    CoboundaryMatrix d2 = d.compose(d);
    report.d_squared_zero = true;
    for (const auto& [k, v] : d2.entries()) {
        if (v.is_zero())
            continue;
        report.d_squared_zero = false;
        report.nonzero_entries.push_back("d2 entry (" + k.first + "," + k.second +
                                         ") = " + v.str());
    }

    report.cell_violations = validate_cells(cells);
    if (!report.cell_violations.empty())
        return report;

    Chain chain = fundamental_class(cells);
    CancelResult after_fake = cancel_fake(chain, cells);
    report.fake_residues = after_fake.residues;
    CancelResult after_inv = involution_cancel(after_fake.chain, cells);
    report.involution_residues = after_inv.residues;

    // Survivors must be strip-breaking cells matching the concatenations.
    struct Key {
        std::string x_plus, via, x_minus;
        std::array<int, 3> marks;
        Rational energy;
        bool operator<(const Key& o) const
        {
            return std::tie(x_plus, via, x_minus, marks, energy) <
                   std::tie(o.x_plus, o.via, o.x_minus, o.marks, o.energy);
        }
        std::string str() const
        {
            std::ostringstream os;
            os << x_plus << "#" << via << "->" << x_minus << " marks ("
               << marks[0] << "," << marks[1] << "," << marks[2] << ") E="
               << rat_str(energy);
            return os.str();
        }
    };
    struct Tally {
        Int cell_count = 0, expected_count = 0;
        Rational cell_coeff = 0, expected_coeff = 0;
    };
    std::map<Key, Tally> tallies;

    for (const auto& c : cells.zero) {
        auto cls = classify_index2_boundary(c.type).cls;
        bool survives = after_inv.chain.count(c.id) > 0;
        if (cls != BoundaryClass::true_strip_breaking) {
            if (survives)
                report.concat_mismatches.push_back(
                    "cell " + c.id + " is not strip-breaking but survives cancellation");
            continue;
        }
        if (!c.via) {
            report.concat_mismatches.push_back("strip-breaking cell " + c.id +
                                               " has no intermediate point");
            continue;
        }
        // delta places eps sigma on every true boundary cell.
        Rational coeff = chain_coeff(after_inv.chain, c.id);
        Rational want = Rational(c.sign) * sigma_weight(c.marks);
        if (coeff != want)
            report.concat_mismatches.push_back(
                "cell " + c.id + " has boundary coefficient " + rat_str(coeff) +
                ", expected " + rat_str(want));
        Key key{c.x_plus, *c.via, c.x_minus, c.marks, c.energy};
        tallies[key].cell_count += 1;
        tallies[key].cell_coeff += coeff;
    }

    for (const auto& u1 : records)
        for (const auto& u2 : records) {
            if (u1.x_minus != u2.x_plus)
                continue;
            Concatenation glued = concatenate(u1, u2);
            Key key{u1.x_plus, u1.x_minus, u2.x_minus, glued.record.marks,
                    glued.record.energy};
            tallies[key].expected_count += glued.multiplicity;
            tallies[key].expected_coeff += Rational(u1.sign * u2.sign) *
                                           sigma_weight(u1.marks) *
                                           sigma_weight(u2.marks);
        }

    for (const auto& [key, tally] : tallies) {
        if (tally.cell_count == tally.expected_count &&
            tally.cell_coeff == tally.expected_coeff)
            continue;
        std::ostringstream os;
        if (tally.expected_count > 0 && tally.cell_count == 0)
            os << "missing concatenation " << key.str();
        else if (tally.expected_count == 0)
            os << "orphan cell(s) at " << key.str();
        else
            os << "weight discrepancy at " << key.str();
        os << " (cells " << tally.cell_count.str() << " weight "
           << rat_str(tally.cell_coeff) << ", concatenations "
           << tally.expected_count.str() << " weight " << rat_str(tally.expected_coeff)
           << ")";
        report.concat_mismatches.push_back(os.str());
    }

    return report;
}

Rational open_gw_count(const std::vector<DiskCountRecord>& data, bool boundary_nonzero)
{
    if (!boundary_nonzero)
        throw error("open disk counts need a nontrivial boundary class");
    if (data.empty())
        return 0;
    const ClassVector beta = data.front().type.total_class();
    const int n_beta = data.front().type.base.interior_marking_count();
    Rational total = 0;
    for (const auto& rec : data) {
        if (rec.type.base.kind() != TKind::disk)
            throw error("open disk counts need disk types");
        for (const auto& m : rec.type.base.markings)
            if (!m.interior)
                throw error("open disk counts need types without boundary markings");
        if (index(rec.type) != 3)
            throw error("open disk counts need index-three types");
        if (rec.type.total_class() != beta)
            throw error("mixed beta classes in one count");
        if (rec.type.base.interior_marking_count() != n_beta)
            throw error("marking count must be constant in a class");
        total += rec.count;
    }
    return total / Rational(factorial(n_beta));
}

}  // namespace pearl
