#include "pearl/jsonio.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace pearl {

namespace {

constexpr int64_t kMaxSafe = INT64_MAX;

}  // namespace

Json int_to_json(const Int& v)
{
    if (v >= INT64_MIN && v <= kMaxSafe)
        return Json((int64_t)v);
    return Json(v.str());
}

Int int_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Int(j.get<int64_t>());
    if (j.is_string())
        return Int(j.get<std::string>());
    throw error("expected an integer (number or decimal string)");
}

Json rat_to_json(const Rational& q)
{
    return Json::array({int_to_json(rat_num(q)), int_to_json(rat_den(q))});
}

Rational rat_from_json(const Json& j)
{
    if (j.is_array() && j.size() == 2) {
        Int n = int_from_json(j[0]), d = int_from_json(j[1]);
        if (d == 0)
            throw error("rational with zero denominator");
        return Rational(n, d);
    }
    if (j.is_number_integer())
        return Rational(j.get<int64_t>());
    if (j.is_string())
        return rat_parse(j.get<std::string>());
    throw error("expected a rational as [num,den]");
}

// ---------------------------------------------------------------------------
// Novikov

Json to_json(const Novikov& x)
{
    Json terms = Json::array();
    for (const auto& [e, c] : x.terms())
        terms.push_back(Json::array({int_to_json(rat_num(e)), int_to_json(rat_den(e)),
                                     int_to_json(rat_num(c)), int_to_json(rat_den(c))}));
    Json j;
    j["terms"] = terms;
    j["cutoff"] = x.cutoff() ? rat_to_json(*x.cutoff()) : Json(nullptr);
    return j;
}

Novikov novikov_from_json(const Json& j)
{
    Novikov x;
    std::optional<Rational> prev;
    auto make_rat = [](const Json& n, const Json& d) {
        Int den = int_from_json(d);
        if (den == 0)
            throw error("rational with zero denominator");
        return Rational(int_from_json(n), den);
    };
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 4)
            throw error("novikov term must be [num,den,cnum,cden]");
        Rational e = make_rat(t[0], t[1]);
        Rational c = make_rat(t[2], t[3]);
        if (c == 0)
            throw error("novikov term with zero coefficient");
        if (prev && !(*prev < e))
            throw error("novikov exponents must be strictly increasing");
        prev = e;
        x = x + Novikov::monomial(c, e);
    }
    if (j.contains("cutoff") && !j.at("cutoff").is_null())
        x = Novikov::with_cutoff(x, rat_from_json(j.at("cutoff")));
    return x;
}

// ---------------------------------------------------------------------------
// CombType

namespace {

std::string vkind_str(VKind k)
{
    switch (k) {
    case VKind::strip: return "strip";
    case VKind::disk: return "disk";
    case VKind::sphere: return "sphere";
    }
    return "?";
}
VKind vkind_parse(const std::string& s)
{
    if (s == "strip")
        return VKind::strip;
    if (s == "disk")
        return VKind::disk;
    if (s == "sphere")
        return VKind::sphere;
    throw error("unknown vertex kind: " + s);
}
std::string dtag_str(DTag t)
{
    switch (t) {
    case DTag::none: return "none";
    case DTag::D: return "D";
    case DTag::D0: return "D0";
    case DTag::D1: return "D1";
    }
    return "?";
}
DTag dtag_parse(const std::string& s)
{
    if (s == "none")
        return DTag::none;
    if (s == "D")
        return DTag::D;
    if (s == "D0")
        return DTag::D0;
    if (s == "D1")
        return DTag::D1;
    throw error("unknown divisor tag: " + s);
}
std::string role_str(BRole r)
{
    switch (r) {
    case BRole::incoming: return "in";
    case BRole::outgoing: return "out";
    case BRole::ordered: return "ordered";
    }
    return "?";
}
BRole role_parse(const std::string& s)
{
    if (s == "in")
        return BRole::incoming;
    if (s == "out")
        return BRole::outgoing;
    if (s == "ordered")
        return BRole::ordered;
    throw error("unknown boundary role: " + s);
}

Json length_to_json(const Length& l)
{
    if (l.infinite)
        return Json("inf");
    return rat_to_json(l.value);
}

Length length_from_json(const Json& j)
{
    if (j.is_string() && j.get<std::string>() == "inf")
        return Length::inf();
    return Length::finite(rat_from_json(j));
}

}  // namespace

Json to_json(const CombType& t)
{
    Json j;
    j["schema_version"] = 1;
    Json vs = Json::array();
    for (const auto& v : t.vertices)
        vs.push_back({{"id", v.id}, {"kind", vkind_str(v.kind)}});
    j["vertices"] = vs;
    Json es = Json::array();
    for (const auto& e : t.edges) {
        Json je;
        je["id"] = e.id;
        je["ends"] = Json::array({e.a, e.b});
        je["node"] = e.node == NKind::boundary ? "boundary" : "interior";
        je["length"] = e.len ? length_to_json(*e.len) : Json(nullptr);
        je["side"] = e.side ? Json(*e.side) : Json(nullptr);
        es.push_back(je);
    }
    j["edges"] = es;
    Json ms = Json::array();
    for (const auto& m : t.markings) {
        Json jm;
        jm["id"] = m.id;
        jm["vertex"] = m.vertex;
        if (m.interior) {
            jm["kind"] = "interior";
            jm["label"] = m.label;
            jm["tag"] = dtag_str(m.tag);
        } else {
            jm["kind"] = "boundary";
            jm["role"] = role_str(m.role);
            if (m.role == BRole::ordered)
                jm["index"] = m.label;
            jm["side"] = m.side ? Json(*m.side) : Json(nullptr);
        }
        ms.push_back(jm);
    }
    j["markings"] = ms;
    j["chains"] = t.chains;
    return j;
}

CombType combtype_from_json(const Json& j)
{
    CombType t;
    for (const auto& v : j.at("vertices"))
        t.vertices.push_back({v.at("id").get<int>(),
                              vkind_parse(v.at("kind").get<std::string>())});
    for (const auto& e : j.at("edges")) {
        Edge k;
        k.id = e.at("id").get<int>();
        k.a = e.at("ends")[0].get<int>();
        k.b = e.at("ends")[1].get<int>();
        std::string node = e.at("node").get<std::string>();
        if (node != "boundary" && node != "interior")
            throw error("unknown node kind: " + node);
        k.node = node == "boundary" ? NKind::boundary : NKind::interior;
        if (e.contains("length") && !e.at("length").is_null())
            k.len = length_from_json(e.at("length"));
        if (e.contains("side") && !e.at("side").is_null())
            k.side = e.at("side").get<int>();
        t.edges.push_back(k);
    }
    for (const auto& m : j.at("markings")) {
        Marking k;
        k.id = m.at("id").get<int>();
        k.vertex = m.at("vertex").get<int>();
        std::string kind = m.at("kind").get<std::string>();
        if (kind == "interior") {
            k.interior = true;
            k.label = m.at("label").get<int>();
            k.tag = dtag_parse(m.value("tag", "none"));
        } else if (kind == "boundary") {
            k.interior = false;
            k.role = role_parse(m.at("role").get<std::string>());
            k.label = m.value("index", 0);
            if (m.contains("side") && !m.at("side").is_null())
                k.side = m.at("side").get<int>();
        } else {
            throw error("unknown marking kind: " + kind);
        }
        t.markings.push_back(k);
    }
    if (j.contains("chains"))
        t.chains = j.at("chains").get<std::vector<std::vector<int>>>();
    return t;
}

// ---------------------------------------------------------------------------
// LabeledType

Json to_json(const LabeledType& t)
{
    Json j;
    j["schema_version"] = 1;
    j["base"] = to_json(t.base);
    Json labels = Json::object();
    for (const auto& [v, l] : t.labels) {
        Json jl;
        jl["class"] = l.class_id;
        jl["energy"] = rat_to_json(l.energy);
        jl["index"] = l.index_contrib;
        jl["in_divisor"] = l.in_divisor;
        labels[std::to_string(v)] = jl;
    }
    j["labels"] = labels;
    Json mc = Json::object();
    for (const auto& [i, c] : t.marking_contacts)
        mc[std::to_string(i)] = c.d_plus;
    j["marking_contacts"] = mc;
    Json nc = Json::object();
    for (const auto& [i, c] : t.node_contacts)
        nc[std::to_string(i)] = Json::array({c.d_plus, c.d_minus});
    j["node_contacts"] = nc;
    j["x_plus"] = t.x_plus;
    j["x_minus"] = t.x_minus;
    return j;
}

LabeledType labeledtype_from_json(const Json& j)
{
    LabeledType t;
    t.base = combtype_from_json(j.at("base"));
    for (const auto& [k, v] : j.at("labels").items()) {
        VertexLabel l;
        l.class_id = v.at("class").get<ClassVector>();
        l.energy = rat_from_json(v.at("energy"));
        l.index_contrib = v.at("index").get<int>();
        l.in_divisor = v.value("in_divisor", false);
        t.labels[std::stoi(k)] = l;
    }
    if (j.contains("marking_contacts"))
        for (const auto& [k, v] : j.at("marking_contacts").items())
            t.marking_contacts[std::stoi(k)] = Contact{v.get<int>(), 0};
    if (j.contains("node_contacts"))
        for (const auto& [k, v] : j.at("node_contacts").items())
            t.node_contacts[std::stoi(k)] = Contact{v[0].get<int>(), v[1].get<int>()};
    t.x_plus = j.value("x_plus", "");
    t.x_minus = j.value("x_minus", "");
    return t;
}

// ---------------------------------------------------------------------------
// Divisor data

Json to_json(const LatticePresentation& p)
{
    Json j;
    j["schema_version"] = 1;
    j["rank"] = p.rank_n;
    j["torsion"] = int_to_json(p.torsion);
    j["m0"] = int_to_json(p.m0);
    j["irrational"] = p.irrational_mode;
    Json b = Json::array();
    for (const auto& d : p.boundary) {
        Json jd;
        jd["n"] = int_to_json(d.n);
        jd["area_p"] = rat_to_json(d.area_p);
        jd["area_m"] = rat_to_json(d.area_m);
        b.push_back(jd);
    }
    j["boundary"] = b;
    Json a = Json::array();
    for (const auto& q : p.alpha)
        a.push_back(rat_to_json(q));
    j["alpha"] = a;
    return j;
}

LatticePresentation presentation_from_json(const Json& j)
{
    LatticePresentation p;
    p.rank_n = j.at("rank").get<int>();
    p.torsion = int_from_json(j.at("torsion"));
    p.m0 = j.contains("m0") ? int_from_json(j.at("m0")) : Int(1);
    p.irrational_mode = j.value("irrational", false);
    for (const auto& d : j.at("boundary")) {
        BoundaryClassDatum b;
        b.n = int_from_json(d.at("n"));
        b.area_p = d.contains("area_p") ? rat_from_json(d.at("area_p")) : Rational(0);
        b.area_m = d.contains("area_m") ? rat_from_json(d.at("area_m")) : Rational(0);
        p.boundary.push_back(b);
    }
    if (j.contains("alpha"))
        for (const auto& q : j.at("alpha"))
            p.alpha.push_back(rat_from_json(q));
    return p;
}

Json to_json(const ClassPairing& c)
{
    Json j;
    j["kind"] = c.sphere ? "sphere" : "disk";
    j["d"] = int_to_json(c.pair_d);
    j["c1"] = int_to_json(c.pair_c1);
    j["omega"] = rat_to_json(c.omega);
    j["dim_x"] = c.dim_x;
    j["name"] = c.name;
    return j;
}

ClassPairing classpairing_from_json(const Json& j)
{
    ClassPairing c;
    std::string kind = j.value("kind", "sphere");
    if (kind != "sphere" && kind != "disk")
        throw error("class kind must be sphere or disk");
    c.sphere = kind == "sphere";
    c.pair_d = int_from_json(j.at("d"));
    c.pair_c1 = j.contains("c1") ? int_from_json(j.at("c1")) : Int(0);
    c.omega = j.contains("omega") ? rat_from_json(j.at("omega")) : Rational(0);
    c.dim_x = j.value("dim_x", 2);
    c.name = j.value("name", "");
    return c;
}

// ---------------------------------------------------------------------------
// Datasets

namespace {

Json record_to_json(const TrajectoryRecord& r)
{
    Json j;
    j["type"] = to_json(r.type);
    j["x_plus"] = r.x_plus;
    j["x_minus"] = r.x_minus;
    j["energy"] = rat_to_json(r.energy);
    j["sign"] = r.sign;
    j["marks"] = Json::array({r.marks[0], r.marks[1], r.marks[2]});
    return j;
}

TrajectoryRecord record_from_json(const Json& j)
{
    TrajectoryRecord r;
    r.type = labeledtype_from_json(j.at("type"));
    r.x_plus = j.at("x_plus").get<std::string>();
    r.x_minus = j.at("x_minus").get<std::string>();
    r.energy = rat_from_json(j.at("energy"));
    r.sign = j.at("sign").get<int>();
    if (r.sign != 1 && r.sign != -1)
        throw error("record sign must be +-1");
    auto m = j.at("marks");
    r.marks = {m[0].get<int>(), m[1].get<int>(), m[2].get<int>()};
    return r;
}

Json zerocell_to_json(const ZeroCell& c)
{
    Json j;
    j["id"] = c.id;
    j["type"] = to_json(c.type);
    j["sign"] = c.sign;
    j["marks"] = Json::array({c.marks[0], c.marks[1], c.marks[2]});
    j["energy"] = rat_to_json(c.energy);
    j["x_plus"] = c.x_plus;
    j["x_minus"] = c.x_minus;
    j["via"] = c.via ? Json(*c.via) : Json(nullptr);
    j["fake_partner"] = c.fake_partner ? Json(*c.fake_partner) : Json(nullptr);
    j["fiber_order"] = c.fiber_order ? int_to_json(*c.fiber_order) : Json(nullptr);
    j["involution_partner"] =
        c.involution_partner ? Json(*c.involution_partner) : Json(nullptr);
    j["isolated"] = c.isolated;
    return j;
}

ZeroCell zerocell_from_json(const Json& j)
{
    ZeroCell c;
    c.id = j.at("id").get<std::string>();
    c.type = labeledtype_from_json(j.at("type"));
    c.sign = j.at("sign").get<int>();
    auto m = j.at("marks");
    c.marks = {m[0].get<int>(), m[1].get<int>(), m[2].get<int>()};
    c.energy = rat_from_json(j.at("energy"));
    c.x_plus = j.value("x_plus", "");
    c.x_minus = j.value("x_minus", "");
    if (j.contains("via") && !j.at("via").is_null())
        c.via = j.at("via").get<std::string>();
    if (j.contains("fake_partner") && !j.at("fake_partner").is_null())
        c.fake_partner = j.at("fake_partner").get<std::string>();
    if (j.contains("fiber_order") && !j.at("fiber_order").is_null())
        c.fiber_order = int_from_json(j.at("fiber_order"));
    if (j.contains("involution_partner") && !j.at("involution_partner").is_null())
        c.involution_partner = j.at("involution_partner").get<std::string>();
    c.isolated = j.value("isolated", false);
    return c;
}

Json onecell_to_json(const OneCell& c)
{
    Json j;
    j["id"] = c.id;
    j["marks"] = Json::array({c.marks[0], c.marks[1], c.marks[2]});
    Json eps = Json::array();
    for (const auto& [id, s] : c.endpoints)
        eps.push_back(Json::array({id, s}));
    j["endpoints"] = eps;
    return j;
}

OneCell onecell_from_json(const Json& j)
{
    OneCell c;
    c.id = j.at("id").get<std::string>();
    auto m = j.at("marks");
    c.marks = {m[0].get<int>(), m[1].get<int>(), m[2].get<int>()};
    for (const auto& e : j.at("endpoints"))
        c.endpoints.push_back({e[0].get<std::string>(), e[1].get<int>()});
    return c;
}

}  // namespace

Json to_json(const Dataset& d)
{
    Json j;
    j["schema_version"] = 1;
    j["grading_n"] = d.grading_n;
    j["shift"] = d.shift;
    j["cutoff"] = d.cutoff ? rat_to_json(*d.cutoff) : Json(nullptr);
    Json ps = Json::array();
    for (const auto& p : d.points)
        ps.push_back({{"id", p.id}, {"degree", p.degree}});
    j["points"] = ps;
    Json rs = Json::array();
    for (const auto& r : d.records)
        rs.push_back(record_to_json(r));
    j["records"] = rs;
    Json zs = Json::array(), os = Json::array();
    for (const auto& z : d.cells.zero)
        zs.push_back(zerocell_to_json(z));
    for (const auto& o : d.cells.one)
        os.push_back(onecell_to_json(o));
    j["cells"] = Json{{"zero", zs}, {"one", os}};
    return j;
}

Dataset dataset_from_json(const Json& j)
{
    Dataset d;
    d.grading_n = j.value("grading_n", 1);
    d.shift = j.value("shift", 1);
    if (j.contains("cutoff") && !j.at("cutoff").is_null())
        d.cutoff = rat_from_json(j.at("cutoff"));
    for (const auto& p : j.at("points"))
        d.points.push_back({p.at("id").get<std::string>(), p.at("degree").get<int>()});
    for (const auto& r : j.at("records"))
        d.records.push_back(record_from_json(r));
    if (j.contains("cells")) {
        for (const auto& z : j.at("cells").at("zero"))
            d.cells.zero.push_back(zerocell_from_json(z));
        for (const auto& o : j.at("cells").at("one"))
            d.cells.one.push_back(onecell_from_json(o));
    }
    return d;
}

// ---------------------------------------------------------------------------
// Morphisms and reports

Json to_json(const BMorphism& m)
{
    Json j;
    const char* kind = nullptr;
    switch (m.kind) {
    case MorphKind::cut_edge: kind = "cut_edge"; break;
    case MorphKind::collapse_edge: kind = "collapse_edge"; break;
    case MorphKind::make_finite: kind = "make_finite"; break;
    case MorphKind::make_nonzero: kind = "make_nonzero"; break;
    case MorphKind::forget_tail: kind = "forget_tail"; break;
    }
    j["kind"] = kind;
    j["source"] = to_json(m.source);
    j["target"] = to_json(m.target);
    j["witness"] = m.witness;
    return j;
}

Json to_json(const Degeneration& d)
{
    Json j = to_json(d.morphism);
    j["sign"] = d.sign ? Json(*d.sign) : Json(nullptr);
    return j;
}

Json to_json(const D2Report& r)
{
    Json j;
    j["d_squared_zero"] = r.d_squared_zero;
    j["nonzero_entries"] = r.nonzero_entries;
    j["degree_violations"] = r.degree_violations;
    j["cell_violations"] = r.cell_violations;
    auto residues = [](const std::vector<CancelResidue>& rs) {
        Json out = Json::array();
        for (const auto& x : rs)
            out.push_back({{"cell", x.cell},
                           {"partner", x.partner},
                           {"residue", rat_to_json(x.residue)},
                           {"reason", x.reason}});
        return out;
    };
    j["fake_residues"] = residues(r.fake_residues);
    j["involution_residues"] = residues(r.involution_residues);
    j["concat_mismatches"] = r.concat_mismatches;
    j["ok"] = r.ok();
    return j;
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace pearl
