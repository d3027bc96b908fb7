// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Criteria 1-8 run in-process; criterion 9 shells out to the CLI
// and compares bytes against the stored golden outputs.

#include "oracle.hpp"
#include "pearl/divisor.hpp"
#include "pearl/generator.hpp"
#include "pearl/jsonio.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

using namespace pearl;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail)
{
    printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok)
        ++failures;
}

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Novikov random_element(Rng& rng)
{
    Novikov x;
    int terms = rng.uniform(0, 4);
    for (int i = 0; i < terms; ++i)
        x = x + Novikov::monomial(Rational(rng.uniform(-9, 9), rng.uniform(1, 9)),
                                  Rational(rng.uniform(-6, 12), rng.uniform(1, 6)));
    return x;
}

// --- criterion 1: Novikov axioms -------------------------------------------
void criterion_1()
{
    auto start = Clock::now();
    Rng rng(1);
    bool ok = true;
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        Novikov x = random_element(rng), y = random_element(rng), z = random_element(rng);
        ok = ok && (x + y) + z == x + (y + z);
        ok = ok && (x * y) * z == x * (y * z);
        ok = ok && x * (y + z) == x * y + x * z;
        if (!x.is_zero()) {
            Novikov inv = x.invert_truncated(Rational(rng.uniform(1, 6)));
            ok = ok && (x * inv).agrees_below_cutoff(Novikov::scalar(1));
        }
    }
    double dt = seconds_since(start);
    std::ostringstream os;
    os << "Novikov associativity/distributivity and truncated-inverse round trip on "
          "10000 random triples ("
       << dt << " s)";
    report(1, ok && dt < 5.0, os.str());
}

// --- criterion 2: census against the brute-force oracle ---------------------
void criterion_2()
{
    auto start = Clock::now();
    bool ok = true;
    std::ostringstream os;
    os << "census vs independent oracle:";
    for (int n = 0; n <= 2; ++n) {
        auto mine = enumerate_types(n, 3, TKind::strip);
        auto theirs = oracle::census(n, 3, TKind::strip);
        bool sizes = mine.size() == theirs.size();
        int matched = 0;
        for (const auto& t : theirs) {
            int hits = 0;
            for (const auto& u : mine)
                if (oracle::isomorphic(t, u))
                    ++hits;
            if (hits == 1)
                ++matched;
        }
        ok = ok && sizes && matched == (int)theirs.size();
        os << " n=" << n << ": " << mine.size() << "/" << theirs.size();
    }
    double dt = seconds_since(start);
    os << " types matched 1-1 (" << dt << " s)";
    report(2, ok && dt < 30.0, os.str());
}

// --- criterion 3: codimension-one law ---------------------------------------
void criterion_3()
{
    bool ok = true;
    int checks = 0;
    for (int n = 0; n <= 2; ++n)
        for (const auto& t : enumerate_types(n, 3, TKind::strip)) {
            int d = dim_stratum(t);
            for (const auto& e : t.edges) {
                if (e.node != NKind::boundary)
                    continue;
                if (e.len->is_zero()) {
                    ok = ok && dim_stratum(collapse_edge(t, e.id)) == d + 1;
                    ok = ok && dim_stratum(make_nonzero(t, e.id)) == d + 1;
                    checks += 2;
                } else if (e.len->infinite) {
                    ok = ok && dim_stratum(make_finite(t, e.id)) == d + 1;
                    checks += 1;
                }
            }
        }
    std::ostringstream os;
    os << "dim drops by exactly one across " << checks
       << " collapse/make_finite/make_nonzero instances";
    report(3, ok && checks > 0, os.str());
}

// --- criterion 4: forgetful algebra -----------------------------------------
void criterion_4()
{
    bool ok = true;
    int stable_checks = 0, commute_checks = 0;
    for (int n = 1; n <= 2; ++n)
        for (const auto& t : enumerate_types(n, 3, TKind::strip)) {
            std::vector<int> interior;
            for (const auto& m : t.markings)
                if (m.interior)
                    interior.push_back(m.id);
            for (int id : interior) {
                CombType out = forget_tail(t, id);
                ok = ok && validate(out).empty();
                ok = ok && (is_stable(out) || is_bare_strip(out));
                ++stable_checks;
            }
            if (interior.size() == 2) {
                CombType ab = forget_tail(forget_tail(t, interior[0]), interior[1]);
                CombType ba = forget_tail(forget_tail(t, interior[1]), interior[0]);
                ok = ok && canonical_form(ab) == canonical_form(ba);
                ++commute_checks;
            }
        }

    // the metric-summation rule: 2 + 5 -> 7
    CombType chain;
    chain.vertices.push_back({1, VKind::strip});
    chain.vertices.push_back({2, VKind::disk});
    chain.vertices.push_back({3, VKind::disk});
    chain.chains.push_back({1});
    Marking zin;
    zin.id = 1;
    zin.vertex = 1;
    zin.interior = false;
    zin.role = BRole::incoming;
    Marking zout = zin;
    zout.id = 2;
    zout.role = BRole::outgoing;
    chain.markings.push_back(zin);
    chain.markings.push_back(zout);
    Edge e1;
    e1.id = 1;
    e1.a = 1;
    e1.b = 2;
    e1.node = NKind::boundary;
    e1.len = Length::finite(2);
    e1.side = 0;
    Edge e2 = e1;
    e2.id = 2;
    e2.a = 2;
    e2.b = 3;
    e2.len = Length::finite(5);
    chain.edges.push_back(e1);
    chain.edges.push_back(e2);
    Marking m1;
    m1.id = 3;
    m1.vertex = 2;
    m1.interior = true;
    m1.label = 1;
    Marking m2 = m1;
    m2.id = 4;
    m2.vertex = 3;
    m2.label = 2;
    chain.markings.push_back(m1);
    chain.markings.push_back(m2);
    CombType summed = forget_tail(chain, 3);
    bool metric_ok = summed.edges.size() == 1 && summed.edges[0].len.has_value() &&
                     !summed.edges[0].len->infinite &&
                     summed.edges[0].len->value == 7;
    ok = ok && metric_ok;

    std::ostringstream os;
    os << "forget_tail stable-valued (" << stable_checks << " cases), commuting ("
       << commute_checks << " pairs), metric sum 2+5->7 exact";
    report(4, ok, os.str());
}

// --- criterion 5: fake-boundary cancellation identity ------------------------
void criterion_5()
{
    bool ok = true;
    int checks = 0;
    for (int n = 0; n <= 3; ++n)
        for (int nb = 0; nb <= 4; ++nb) {
            // (|G+|!)^-1 n_b! = (|G-|!)^-1 with |G+| = (n, nb), |G-| = (n, 0)
            std::array<int, 3> big{n, nb, 0}, small{n, 0, 0};
            Rational lhs = sigma_weight(big) * Rational(factorial(nb));
            Rational rhs = sigma_weight(small);
            ok = ok && lhs == rhs;

            CellComplex1D cc;
            ZeroCell plus;
            plus.id = "p";
            plus.type = make_bubble_type(big, 0, Length::zero(), 2, "x", "z");
            plus.sign = 1;
            plus.marks = big;
            plus.energy = 2;
            plus.fake_partner = "m";
            plus.fiber_order = factorial(nb);
            plus.isolated = true;
            ZeroCell minus;
            minus.id = "m";
            minus.type = make_bubble_type(small, 0, Length::zero(), 2, "x", "z");
            minus.sign = -1;
            minus.marks = small;
            minus.energy = 2;
            minus.fake_partner = "p";
            minus.isolated = true;
            cc.zero.push_back(plus);
            cc.zero.push_back(minus);
            Chain chain{{"p", Rational(factorial(nb)) * sigma_weight(big)},
                        {"m", -sigma_weight(small)}};
            auto r = cancel_fake(chain, cc);
            ok = ok && r.residues.empty() && r.chain.empty();
            ++checks;
        }
    std::ostringstream os;
    os << "(|G+|!)^-1 n_b! = (|G-|!)^-1 exactly on " << checks
       << " (n, n_b) combinations with n <= 3, n_b <= 4";
    report(5, ok, os.str());
}

// --- criterion 6: d^2 = 0 end to end ----------------------------------------
void criterion_6()
{
    auto start = Clock::now();
    Dataset d = generate_dataset(20240612, 50, 500);
    bool sizes = (int)d.points.size() >= 50 && (int)d.records.size() >= 500;
    D2Report base = verify_d_squared(d.points, d.records, d.cells, d.grading_n,
                                     d.shift, d.cutoff);
    bool ok = sizes && base.ok() && base.d_squared_zero;

    int detected = 0, localized = 0;
    for (int variant = 0; variant < 100; ++variant) {
        Corruptions c = corrupt_dataset(d, 5000 + variant, variant);
        D2Report r = verify_d_squared(c.data.points, c.data.records, c.data.cells,
                                      c.data.grading_n, c.data.shift, c.data.cutoff);
        if (!r.ok())
            ++detected;
        std::string all;
        for (const auto& s : r.nonzero_entries)
            all += s;
        for (const auto& s : r.concat_mismatches)
            all += s;
        for (const auto& s : r.cell_violations)
            all += s;
        for (const auto& x : r.fake_residues)
            all += x.cell + x.partner;
        for (const auto& x : r.involution_residues)
            all += x.cell + x.partner;
        if (all.find(c.locus) != std::string::npos)
            ++localized;
    }
    double dt = seconds_since(start);
    ok = ok && detected == 100 && localized == 100 && dt < 60.0;
    std::ostringstream os;
    os << "d^2 = 0 with complete concatenation bijection on " << d.points.size()
       << " points / " << d.records.size() << " records; " << detected
       << "/100 corruptions detected, " << localized << "/100 localized (" << dt
       << " s)";
    report(6, ok, os.str());
}

// --- criterion 7: divisor arithmetic oracles ---------------------------------
void criterion_7()
{
    bool ok = true;
    Rng rng(7777);
    int trials = 0;
    for (int trial = 0; trial < 200; ++trial) {
        if (trial % 2 == 0) {
            LatticePresentation p;
            int m = rng.uniform(1, 3);
            p.rank_n = m;
            p.torsion = rng.uniform(1, 4);
            for (int i = 0; i < m; ++i) {
                int num = rng.uniform(-12, 12);
                p.boundary.push_back({rng.uniform(1, 6),
                                      Rational(num == 0 ? 1 : num, rng.uniform(1, 12)),
                                      0});
            }
            p.alpha.assign(m, 0);
            auto got = km_rational(p);
            // brute-force minimality below 10^4
            Int kp = 0, kmin = 0;
            for (long long k = 1; k <= 10000 && (kp == 0 || kmin == 0); ++k) {
                bool clear = true, full = true;
                for (const auto& b : p.boundary) {
                    Rational h = Rational(p.torsion) * Rational(k) * b.area_p;
                    if (!is_integer(h))
                        clear = false;
                    if (!is_integer(h / Rational(b.n)))
                        full = false;
                }
                if (clear && kp == 0)
                    kp = k;
                if (full && kmin == 0)
                    kmin = k;
            }
            Int ks = 0;
            for (long long k = 1; k <= 10000 && ks == 0; ++k) {
                bool good = true;
                for (size_t i = 0; i < p.boundary.size(); ++i)
                    if (!is_integer(Rational(k) * got.residues[i]))
                        good = false;
                if (good)
                    ks = k;
            }
            ok = ok && got.k_prime == kp && got.k_second == ks && got.k_m == kmin;
        } else {
            LatticePresentation p;
            int m = rng.uniform(1, 4);
            p.rank_n = m;
            p.torsion = rng.uniform(1, 4);
            p.irrational_mode = true;
            for (int i = 0; i < m; ++i)
                p.boundary.push_back({rng.uniform(1, 9), 0, Rational(rng.uniform(1, 9))});
            p.alpha.assign(m, 0);
            auto got = km_irrational(p, 1);
            Int kmin = 0;
            for (long long k = 1; k <= 10000 && kmin == 0; ++k) {
                bool good = true;
                for (const auto& b : p.boundary)
                    if (!is_integer(Rational(k) * b.area_m / Rational(b.n)))
                        good = false;
                if (good)
                    kmin = k;
            }
            ok = ok && got.k_m == kmin;
        }
        ++trials;
    }

    // substitution examples, exact
    ClassPairing sphere_ok{true, 11, 2, 1, 6, ""};
    ClassPairing sphere_bad{true, 10, 2, 1, 6, ""};
    ClassPairing disk_bad{false, 0, 0, 1, 6, ""};
    ok = ok && sufficient_degree({sphere_ok}).empty();
    ok = ok && sufficient_degree({sphere_bad}).size() == 1;
    ok = ok && sufficient_degree({disk_bad}).size() == 1;
    auto r = divisor_sphere_dim(sphere_ok);
    ok = ok && r.expdim == -17 && r.max_tangency == 3 && r.at_least_three_intersections;

    // sufficiency forces negative expected dimension on consistent inputs
    for (int i = 0; i < 200; ++i) {
        ClassPairing x;
        x.sphere = true;
        x.dim_x = 2 * rng.uniform(1, 4);
        x.pair_c1 = rng.uniform(0, 5);
        x.pair_d = 2 * x.pair_c1 + x.dim_x + 1 + rng.uniform(0, 10);
        ok = ok && divisor_sphere_dim(x).expdim < 0;
    }

    std::ostringstream os;
    os << "k_m minimal vs brute force <= 10^4 on " << trials
       << " random presentations; expdim/tangency substitutions exact";
    report(7, ok, os.str());
}

// --- criterion 8: sign centralization ----------------------------------------
void criterion_8()
{
    bool ok = true;
    int sign_checks = 0;
    for (int n = 0; n <= 2; ++n)
        for (const auto& t : enumerate_types(n, 3, TKind::strip)) {
            int positive_finite = 0;
            for (const auto& e : t.edges)
                if (e.node == NKind::boundary && e.len->is_positive_finite())
                    ++positive_finite;
            int strips = 0;
            for (const auto& v : t.vertices)
                strips += v.kind == VKind::strip ? 1 : 0;
            for (const auto& e : t.edges) {
                if (e.node != NKind::boundary || e.len->is_positive_finite())
                    continue;
                bool strip_a = t.find_vertex(e.a)->kind == VKind::strip;
                bool strip_b = t.find_vertex(e.b)->kind == VKind::strip;
                if (!strip_a && !strip_b)
                    continue;  // not chain-adjacent
                if (positive_finite > 0)
                    continue;  // outside the stated convention
                if (strip_a && strip_b) {
                    if (strips != 2)
                        continue;
                    ok = ok && collapse_sign(t, e.id) == +1;
                } else {
                    int expect = *e.side == 0 ? +1 : -1;
                    ok = ok && collapse_sign(t, e.id) == expect;
                }
                ++sign_checks;
            }
        }

    // involution cancellation leaves only strip-breaking cells
    Dataset d = generate_dataset(808, 40, 300);
    Chain chain = fundamental_class(d.cells);
    Chain survivors = involution_cancel(cancel_fake(chain, d.cells).chain, d.cells).chain;
    int bubbles_before = 0, bubbles_after = 0;
    for (const auto& c : d.cells.zero) {
        if (classify_index2_boundary(c.type).cls != BoundaryClass::true_disk_bubble)
            continue;
        ++bubbles_before;
        if (survivors.count(c.id))
            ++bubbles_after;
    }
    for (const auto& c : d.cells.zero)
        if (survivors.count(c.id))
            ok = ok && classify_index2_boundary(c.type).cls ==
                           BoundaryClass::true_strip_breaking;
    ok = ok && bubbles_before > 0 && bubbles_after == 0;

    std::ostringstream os;
    os << "collapse_sign matches the L0/L1/strip rule on " << sign_checks
       << " census degenerations; " << bubbles_before
       << " paired bubble cells all eliminated";
    report(8, ok && sign_checks > 0, os.str());
}

// --- criterion 9: CLI determinism --------------------------------------------
std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void criterion_9()
{
    const std::string cli = PEARL_CLI_PATH;
    const std::string golden = PEARL_GOLDEN_DIR;
    struct Case {
        std::string name, args;
    };
    const std::vector<Case> cases = {
        {"novikov_add", "novikov --op add --lhs G/nov_a.json --rhs G/nov_b.json"},
        {"novikov_mul", "novikov --op mul --lhs G/nov_a.json --rhs G/nov_b.json"},
        {"novikov_invert", "novikov --op invert --lhs G/nov_a.json --cutoff 3"},
        {"novikov_valuation", "novikov --op valuation --lhs G/nov_a.json"},
        {"enumerate_n1v2", "enumerate --n 1 --max-vertices 2 --kind strip"},
        {"enumerate_disk", "enumerate --n 2 --max-vertices 1 --kind disk"},
        {"dim_bubble", "dim --type G/type_bubble.json"},
        {"boundary_bubble", "boundary --type G/type_bubble.json"},
        {"classify_break", "classify --type G/labeled_break.json"},
        {"km_rat1", "divisor km --preset G/rat1.json"},
        {"km_irr1", "divisor km --preset G/irr1.json --k 3 --e-lo 7/5 --e-hi 3/2"},
        {"degree_classes", "divisor degree --classes G/classes.json"},
        {"floer_d", "floer d --dataset G/ok.json --cutoff 40"},
        {"floer_d2", "floer d2 --dataset G/ok.json"},
        {"floer_ogw", "floer ogw --dataset G/ogw.json --beta 1"},
        {"floer_gen", "floer gen --seed 7 --points 12 --records 40"},
    };
    bool ok = true;
    int compared = 0;
    for (const auto& c : cases) {
        std::string args = c.args;
        size_t pos;
        while ((pos = args.find("G/")) != std::string::npos)
            args.replace(pos, 2, golden + "/");
        std::string out1 = "/tmp/pearl_run1_" + c.name + ".json";
        std::string out2 = "/tmp/pearl_run2_" + c.name + ".json";
        std::string cmd1 = cli + " " + args + " -o " + out1;
        std::string cmd2 = cli + " " + args + " -o " + out2;
        int rc1 = std::system(cmd1.c_str());
        int rc2 = std::system(cmd2.c_str());
        bool same_runs = rc1 == 0 && rc2 == 0 && read_file(out1) == read_file(out2);
        bool same_golden = read_file(out1) == read_file(golden + "/out/" + c.name + ".json");
        if (!(same_runs && same_golden)) {
            printf("  mismatch in %s\n", c.name.c_str());
            ok = false;
        }
        ++compared;
    }
    std::ostringstream os;
    os << "byte-identical CLI output across two runs and the stored golden files ("
       << compared << " subcommands)";
    report(9, ok, os.str());
}

}  // namespace

int main()
{
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures)
        printf("%d criterion(s) failed\n", failures);
    else
        printf("all 9 acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}
