#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "pearl/combtype.hpp"
#include "pearl/generator.hpp"
#include "pearl/jsonio.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

using namespace pearl;

namespace {

Marking interior_marking(int id, int vertex, int label, DTag tag = DTag::none)
{
    Marking m;
    m.id = id;
    m.vertex = vertex;
    m.interior = true;
    m.label = label;
    m.tag = tag;
    return m;
}

Marking strip_end(int id, int vertex, bool incoming)
{
    Marking m;
    m.id = id;
    m.vertex = vertex;
    m.interior = false;
    m.role = incoming ? BRole::incoming : BRole::outgoing;
    return m;
}

Edge boundary_edge(int id, int a, int b, Length len, std::optional<int> side)
{
    Edge e;
    e.id = id;
    e.a = a;
    e.b = b;
    e.node = NKind::boundary;
    e.len = len;
    e.side = side;
    return e;
}

// strip vertex 1 with z-/z+ and n interior markings
CombType bare_strip_with(int n)
{
    CombType t;
    t.vertices.push_back({1, VKind::strip});
    t.chains.push_back({1});
    t.markings.push_back(strip_end(1, 1, true));
    t.markings.push_back(strip_end(2, 1, false));
    for (int i = 0; i < n; ++i)
        t.markings.push_back(interior_marking(3 + i, 1, i + 1));
    return t;
}

// strip (vertex 1) with one disk bubble (vertex 2) at the given length
CombType strip_with_bubble(Length len, int side, int marks_on_strip,
                           int marks_on_bubble)
{
    CombType t = bare_strip_with(marks_on_strip);
    t.vertices.push_back({2, VKind::disk});
    t.edges.push_back(boundary_edge(1, 1, 2, len, side));
    int mid = t.fresh_marking_id();
    for (int i = 0; i < marks_on_bubble; ++i)
        t.markings.push_back(
            interior_marking(mid + i, 2, marks_on_strip + i + 1));
    return t;
}

}  // namespace

TEST_CASE("validation accepts the basic strip and names violations")
{
    CHECK(validate(bare_strip_with(1)).empty());

    // two strip vertices joined by an interior-node edge
    CombType t;
    t.vertices.push_back({1, VKind::strip});
    t.vertices.push_back({2, VKind::strip});
    t.chains.push_back({1, 2});
    t.markings.push_back(strip_end(1, 1, true));
    t.markings.push_back(strip_end(2, 2, false));
    Edge e;
    e.id = 1;
    e.a = 1;
    e.b = 2;
    e.node = NKind::interior;
    t.edges.push_back(e);
    auto bad = validate(t);
    bool named = false;
    for (const auto& s : bad)
        if (s.find("strip chain must use boundary-type connecting structure") !=
            std::string::npos)
            named = true;
    CHECK(named);

    // a cycle
    CombType c = bare_strip_with(0);
    c.vertices.push_back({2, VKind::disk});
    c.edges.push_back(boundary_edge(1, 1, 2, Length::zero(), 0));
    c.edges.push_back(boundary_edge(2, 1, 2, Length::zero(), 0));
    bad = validate(c);
    named = false;
    for (const auto& s : bad)
        if (s.find("not a forest") != std::string::npos)
            named = true;
    CHECK(named);
}

TEST_CASE("stability per vertex kind")
{
    // disk vertex with one boundary node and one interior marking is stable
    CombType t = strip_with_bubble(Length::finite(1), 0, 1, 1);
    CHECK(vertex_is_stable(t, 2));
    CHECK(is_stable(t));

    // sphere vertex with two special points is unstable
    CombType s = bare_strip_with(1);
    s.vertices.push_back({2, VKind::sphere});
    Edge e;
    e.id = 1;
    e.a = 1;
    e.b = 2;
    e.node = NKind::interior;
    s.edges.push_back(e);
    s.markings.push_back(interior_marking(9, 2, 2));
    CHECK(validate(s).empty());
    CHECK_FALSE(vertex_is_stable(s, 2));

    // bare strip with only z-, z+ is unstable
    CHECK_FALSE(is_stable(bare_strip_with(0)));
    CHECK(is_stable(bare_strip_with(1)));
}

TEST_CASE("forget_tail collapses a bubble and forgets the lone metric")
{
    CombType t = strip_with_bubble(Length::finite(3), 0, 0, 1);
    REQUIRE(is_stable(t));
    int marking_id = -1;
    for (const auto& m : t.markings)
        if (m.interior)
            marking_id = m.id;
    CombType out = forget_tail(t, marking_id);
    CHECK(is_bare_strip(out));
    CHECK(out.edges.empty());
}

TEST_CASE("forget_tail sums the two metrics of a collapsed middle disk")
{
    // strip --(2)-- disk A --(5)-- disk B, markings on A and B
    CombType t = bare_strip_with(0);
    t.vertices.push_back({2, VKind::disk});
    t.vertices.push_back({3, VKind::disk});
    t.edges.push_back(boundary_edge(1, 1, 2, Length::finite(2), 0));
    t.edges.push_back(boundary_edge(2, 2, 3, Length::finite(5), 0));
    t.markings.push_back(interior_marking(10, 2, 1));
    t.markings.push_back(interior_marking(11, 3, 2));
    REQUIRE(validate(t).empty());
    REQUIRE(is_stable(t));

    CombType out = forget_tail(t, 10);
    CHECK(is_stable(out));
    REQUIRE(out.edges.size() == 1);
    const Edge& e = out.edges[0];
    REQUIRE(e.len.has_value());
    CHECK_FALSE(e.len->infinite);
    CHECK(e.len->value == 7);
    // the surviving marking is renumbered to 1
    int count = 0;
    for (const auto& m : out.markings)
        if (m.interior) {
            ++count;
            CHECK(m.label == 1);
        }
    CHECK(count == 1);
}

TEST_CASE("forget_tail on a still-stable component only removes the tail")
{
    CombType t = strip_with_bubble(Length::finite(1), 1, 2, 1);
    REQUIRE(is_stable(t));
    // forget one of the strip markings; everything else survives
    int marking_id = -1;
    for (const auto& m : t.markings)
        if (m.interior && m.vertex == 1)
            marking_id = m.id;
    CombType out = forget_tail(t, marking_id);
    CHECK(is_stable(out));
    CHECK(out.vertices.size() == 2);
    CHECK(out.edges.size() == 1);
    CHECK(out.interior_marking_count() == 2);

    CHECK_THROWS_WITH_AS(forget_tail(t, 1), "strip ends may not be forgotten", error);
}

TEST_CASE("canonical form is invariant under relabeling and sensitive to data")
{
    CombType t = strip_with_bubble(Length::finite(1), 0, 1, 1);
    CombType relabeled = t;
    // rename vertex 2 -> 7, edge 1 -> 4, markings shifted
    relabeled.vertices[1].id = 7;
    for (auto& e : relabeled.edges) {
        e.id = 4;
        if (e.b == 2)
            e.b = 7;
    }
    for (auto& m : relabeled.markings) {
        m.id += 20;
        if (m.vertex == 2)
            m.vertex = 7;
    }
    CHECK(canonical_form(t) == canonical_form(relabeled));
    CHECK(oracle::isomorphic(t, relabeled));

    // swapping labels of interior markings 1 and 2 changes the string
    CombType swapped = t;
    for (auto& m : swapped.markings)
        if (m.interior)
            m.label = 3 - m.label;
    CHECK(canonical_form(t) != canonical_form(swapped));

    // changing a length 0 -> 1 changes the string
    CombType zero = strip_with_bubble(Length::zero(), 0, 1, 1);
    CombType one = strip_with_bubble(Length::finite(1), 0, 1, 1);
    CHECK(canonical_form(zero) != canonical_form(one));
}

TEST_CASE("enumerate_types small counts")
{
    CHECK(enumerate_types(1, 1, TKind::strip).size() == 1);
    CHECK(enumerate_types(0, 1, TKind::strip).size() == 0);
    CHECK(enumerate_types(2, 1, TKind::strip).size() == 1);

    // disk kind (no boundary markings): a disk needs two interior points
    CHECK(enumerate_types(1, 1, TKind::disk).size() == 0);
    CHECK(enumerate_types(2, 1, TKind::disk).size() == 1);
    CHECK(enumerate_types(2, 2, TKind::disk).size() ==
          oracle::census(2, 2, TKind::disk).size());
}

TEST_CASE("enumerate_types is monotone in the vertex bound")
{
    size_t prev = 0;
    for (int mv = 1; mv <= 3; ++mv) {
        size_t count = enumerate_types(2, mv, TKind::strip).size();
        CHECK(count >= prev);
        prev = count;
    }
}

TEST_CASE("canonical form is isomorphism-complete on the small census")
{
    // over all valid types, stable or not
    for (int n = 0; n <= 2; ++n) {
        auto types = oracle::census(n, 3, TKind::strip, false);
        CHECK(!types.empty());
        for (size_t i = 0; i < types.size(); ++i)
            for (size_t j = i; j < types.size(); ++j) {
                bool same_canon =
                    canonical_form(types[i]) == canonical_form(types[j]);
                bool iso = oracle::isomorphic(types[i], types[j]);
                CHECK(same_canon == iso);
            }
    }
}

TEST_CASE("forget_tail is stable-valued and commutes on census types")
{
    auto types = enumerate_types(2, 3, TKind::strip);
    int checked = 0;
    for (const auto& t : types) {
        std::vector<int> interior;
        for (const auto& m : t.markings)
            if (m.interior)
                interior.push_back(m.id);
        for (int id : interior) {
            CombType out = forget_tail(t, id);
            CHECK(validate(out).empty());
            CHECK((is_stable(out) || is_bare_strip(out)));
        }
        if (interior.size() == 2) {
            CombType ab = forget_tail(forget_tail(t, interior[0]), interior[1]);
            CombType ba = forget_tail(forget_tail(t, interior[1]), interior[0]);
            CHECK(canonical_form(ab) == canonical_form(ba));
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("combinatorial types round-trip through JSON with stable ids")
{
    CombType t = strip_with_bubble(Length::finite(3), 1, 1, 1);
    Json j = to_json(t);
    CombType back = combtype_from_json(j);
    CHECK(canonical_form(back) == canonical_form(t));
    CHECK(to_json(back).dump() == j.dump());
    // ids survive the round trip
    CHECK(back.vertices[0].id == t.vertices[0].id);
    CHECK(back.edges[0].id == t.edges[0].id);
    CHECK(back.markings[0].id == t.markings[0].id);
}
