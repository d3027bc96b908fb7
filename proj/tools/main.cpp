// Command-line front end: JSON in, JSON out, deterministic bytes.

#include "pearl/jsonio.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace pearl;

namespace {

// PEARL_VERBOSE=1 logs timing to stderr; stdout stays byte-deterministic.
struct Verbose {
    bool on = std::getenv("PEARL_VERBOSE") != nullptr;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~Verbose()
    {
        if (!on)
            return;
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
        std::cerr << "[pearl] finished in " << dt.count() << " s\n";
    }
};

void emit(const Json& j, const std::string& out_path)
{
    std::string text = j.dump(2);
    text += "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out)
            throw error("cannot write " + out_path);
        out << text;
    }
}

std::string classification_str(const Index2Class& c)
{
    switch (c.cls) {
    case BoundaryClass::fake: return "fake";
    case BoundaryClass::true_strip_breaking: return "true:strip_breaking";
    case BoundaryClass::true_disk_bubble:
        return "true:disk_bubble(L" + std::to_string(c.bubble_side) + ")";
    case BoundaryClass::not_boundary: return "not_boundary";
    }
    return "?";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact combinatorial engine for treed-strip Floer complexes"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    app.add_option("-o,--out", out_path, "write output to a file instead of stdout");

    // novikov ---------------------------------------------------------------
    auto* nv = app.add_subcommand("novikov", "Novikov field arithmetic");
    std::string nv_op, nv_lhs, nv_rhs, nv_cutoff;
    nv->add_option("--op", nv_op, "add|mul|invert|valuation")->required();
    nv->add_option("--lhs", nv_lhs, "left operand (JSON file)")->required();
    nv->add_option("--rhs", nv_rhs, "right operand (JSON file)");
    nv->add_option("--cutoff", nv_cutoff, "energy bound E for invert, as p/q");

    // enumerate ---------------------------------------------------------------
    auto* en = app.add_subcommand("enumerate", "census of stable types");
    int en_n = 0, en_maxv = 1;
    std::string en_kind = "strip";
    en->add_option("--n", en_n, "number of interior markings")->required();
    en->add_option("--max-vertices", en_maxv, "vertex bound")->required();
    en->add_option("--kind", en_kind, "strip|disk");

    // dim ---------------------------------------------------------------------
    auto* dm = app.add_subcommand("dim", "stratum and gluing dimensions");
    std::string dm_type;
    dm->add_option("--type", dm_type, "combinatorial type (JSON file)")->required();

    // boundary ------------------------------------------------------------------
    auto* bd = app.add_subcommand("boundary", "codimension-one degenerations");
    std::string bd_type;
    bd->add_option("--type", bd_type, "combinatorial type (JSON file)")->required();

    // classify ------------------------------------------------------------------
    auto* cl = app.add_subcommand("classify", "labeled-type classification");
    std::string cl_type;
    cl->add_option("--type", cl_type, "labeled type (JSON file)")->required();

    // divisor ------------------------------------------------------------------
    auto* dv = app.add_subcommand("divisor", "stabilizing-divisor arithmetic");
    dv->require_subcommand(1);
    auto* dv_km = dv->add_subcommand("km", "k_m multiplier from a presentation");
    std::string km_preset, km_elo, km_ehi;
    long long km_k = 1;
    dv_km->add_option("--preset", km_preset, "lattice presentation (JSON file)")
        ->required();
    dv_km->add_option("--k", km_k, "degree parameter k (irrational mode)");
    dv_km->add_option("--e-lo", km_elo, "lower bound of an isolating interval for e");
    dv_km->add_option("--e-hi", km_ehi, "upper bound of an isolating interval for e");
    auto* dv_deg = dv->add_subcommand("degree", "sufficient-degree report");
    std::string deg_classes;
    dv_deg->add_option("--classes", deg_classes, "class pairings (JSON file)")
        ->required();

    // floer ---------------------------------------------------------------------
    auto* fl = app.add_subcommand("floer", "Floer complex operations");
    fl->require_subcommand(1);
    auto* fl_d = fl->add_subcommand("d", "coboundary matrix");
    std::string d_dataset, d_cutoff;
    fl_d->add_option("--dataset", d_dataset, "trajectory dataset (JSON file)")
        ->required();
    fl_d->add_option("--cutoff", d_cutoff, "energy cutoff E as p/q")->required();
    auto* fl_d2 = fl->add_subcommand("d2", "verify d^2 = 0 and the boundary bijection");
    std::string d2_dataset;
    fl_d2->add_option("--dataset", d2_dataset, "trajectory dataset (JSON file)")
        ->required();
    auto* fl_ogw = fl->add_subcommand("ogw", "open disk count");
    std::string ogw_dataset, ogw_beta;
    fl_ogw->add_option("--dataset", ogw_dataset, "disk count dataset (JSON file)")
        ->required();
    fl_ogw->add_option("--beta", ogw_beta, "expected class, comma-separated integers");
    auto* fl_gen = fl->add_subcommand("gen", "generate a synthetic dataset");
    uint64_t gen_seed = 1;
    int gen_points = 50, gen_records = 500;
    fl_gen->add_option("--seed", gen_seed, "rng seed");
    fl_gen->add_option("--points", gen_points, "minimum number of points");
    fl_gen->add_option("--records", gen_records, "minimum number of records");

    CLI11_PARSE(app, argc, argv);
    Verbose verbose;

    try {
        if (*nv) {
            Novikov lhs = novikov_from_json(load_json_file(nv_lhs));
            Json out;
            if (nv_op == "add" || nv_op == "mul") {
                if (nv_rhs.empty())
                    throw error("binary op needs --rhs");
                Novikov rhs = novikov_from_json(load_json_file(nv_rhs));
                out = to_json(nv_op == "add" ? lhs + rhs : lhs * rhs);
            } else if (nv_op == "invert") {
                if (nv_cutoff.empty())
                    throw error("invert needs --cutoff");
                out = to_json(lhs.invert_truncated(rat_parse(nv_cutoff)));
            } else if (nv_op == "valuation") {
                auto v = lhs.valuation();
                out["valuation"] = v ? rat_to_json(*v) : Json("inf");
            } else {
                throw error("unknown novikov op: " + nv_op);
            }
            emit(out, out_path);
            return 0;
        }

        if (*en) {
            TKind kind;
            if (en_kind == "strip")
                kind = TKind::strip;
            else if (en_kind == "disk")
                kind = TKind::disk;
            else
                throw error("kind must be strip or disk");
            auto types = enumerate_types(en_n, en_maxv, kind);
            Json out;
            out["count"] = types.size();
            Json list = Json::array();
            for (const auto& t : types)
                list.push_back(to_json(t));
            out["types"] = list;
            emit(out, out_path);
            return 0;
        }

        if (*dm) {
            CombType t = combtype_from_json(load_json_file(dm_type));
            Json out;
            out["stable"] = is_stable(t);
            out["dim"] = dim_stratum(t);
            out["gluing_dim"] = gluing_dim(t);
            emit(out, out_path);
            return 0;
        }

        if (*bd) {
            CombType t = combtype_from_json(load_json_file(bd_type));
            auto degs = codim_one_degenerations(t);
            Json out;
            out["count"] = degs.size();
            Json list = Json::array();
            for (const auto& d : degs)
                list.push_back(to_json(d));
            out["degenerations"] = list;
            emit(out, out_path);
            return 0;
        }

        if (*cl) {
            LabeledType t = labeledtype_from_json(load_json_file(cl_type));
            Json out;
            out["index"] = index(t);
            out["uncrowded"] = is_uncrowded(t);
            out["adapted_violations"] = is_adapted(t);
            if (index(t) == 2)
                out["classification"] = classification_str(classify_index2_boundary(t));
            else
                out["classification"] = "not_index_two";
            emit(out, out_path);
            return 0;
        }

        if (*dv_km) {
            LatticePresentation p = presentation_from_json(load_json_file(km_preset));
            Json out;
            if (p.irrational_mode) {
                std::optional<std::pair<Rational, Rational>> interval;
                if (!km_elo.empty() && !km_ehi.empty())
                    interval = std::make_pair(rat_parse(km_elo), rat_parse(km_ehi));
                auto r = km_irrational(p, Int(km_k), interval);
                out["k_m"] = int_to_json(r.k_m);
                Json l = Json::array();
                for (const auto& v : r.l)
                    l.push_back(int_to_json(v));
                out["l"] = l;
                out["f"] = Json{{"e_coefficient", rat_to_json(r.f_ceiling.e_coefficient)},
                                {"ceiling", r.f_ceiling.resolved
                                                ? int_to_json(*r.f_ceiling.resolved)
                                                : Json("C")}};
                Json ic = Json::array();
                for (const auto& v : r.intersection_coeff)
                    ic.push_back(int_to_json(v));
                out["intersection_coeff"] = ic;
            } else {
                auto r = km_rational(p);
                out["k_prime"] = int_to_json(r.k_prime);
                out["k_second"] = int_to_json(r.k_second);
                out["k_m"] = int_to_json(r.k_m);
                Json res = Json::array(), adj = Json::array(), sh = Json::array();
                for (const auto& v : r.residues)
                    res.push_back(rat_to_json(v));
                for (const auto& v : r.adjusted_alpha)
                    adj.push_back(rat_to_json(v));
                for (const auto& v : r.shift)
                    sh.push_back(rat_to_json(v));
                out["residues"] = res;
                out["adjusted_alpha"] = adj;
                out["shift"] = sh;
            }
            emit(out, out_path);
            return 0;
        }

        if (*dv_deg) {
            Json in = load_json_file(deg_classes);
            std::vector<ClassPairing> classes;
            for (const auto& c : in.at("classes"))
                classes.push_back(classpairing_from_json(c));
            auto failing = sufficient_degree(classes);
            Json out;
            Json fl_list = Json::array();
            for (const auto& c : failing)
                fl_list.push_back(to_json(c));
            out["sufficient"] = failing.empty();
            out["failing"] = fl_list;
            Json reports = Json::array();
            for (const auto& c : classes) {
                if (!c.sphere)
                    continue;
                auto r = divisor_sphere_dim(c);
                reports.push_back(
                    Json{{"name", c.name},
                         {"expdim", int_to_json(r.expdim)},
                         {"max_tangency", int_to_json(r.max_tangency)},
                         {"at_least_three_intersections",
                          r.at_least_three_intersections}});
            }
            out["sphere_reports"] = reports;
            emit(out, out_path);
            return failing.empty() ? 0 : 1;
        }

        if (*fl_d) {
            Dataset ds = dataset_from_json(load_json_file(d_dataset));
            auto m = coboundary(ds.points, ds.records, rat_parse(d_cutoff));
            Json out;
            Json entries = Json::array();
            for (const auto& [k, v] : m.entries())
                entries.push_back(Json{{"x_minus", k.first},
                                       {"x_plus", k.second},
                                       {"value", to_json(v)}});
            out["cutoff"] = rat_to_json(rat_parse(d_cutoff));
            out["entries"] = entries;
            emit(out, out_path);
            return 0;
        }

        if (*fl_d2) {
            Dataset ds = dataset_from_json(load_json_file(d2_dataset));
            D2Report r = verify_d_squared(ds.points, ds.records, ds.cells, ds.grading_n,
                                          ds.shift, ds.cutoff);
            emit(to_json(r), out_path);
            return r.ok() ? 0 : 1;
        }

        if (*fl_ogw) {
            Json in = load_json_file(ogw_dataset);
            std::vector<DiskCountRecord> data;
            for (const auto& r : in.at("records"))
                data.push_back({labeledtype_from_json(r.at("type")),
                                rat_from_json(r.at("count"))});
            bool nonzero = in.value("boundary_nonzero", true);
            if (!ogw_beta.empty() && !data.empty()) {
                ClassVector beta;
                std::stringstream ss(ogw_beta);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    beta.push_back(std::stoll(tok));
                for (const auto& r : data)
                    if (class_add(r.type.total_class(), ClassVector{}) != beta)
                        throw error("record class differs from --beta");
            }
            Rational n = open_gw_count(data, nonzero);
            Json out;
            out["count"] = rat_to_json(n);
            emit(out, out_path);
            return 0;
        }

        if (*fl_gen) {
            Dataset ds = generate_dataset(gen_seed, gen_points, gen_records);
            emit(to_json(ds), out_path);
            return 0;
        }
    } catch (const error& e) {
        Json out;
        out["error"] = e.what();
        std::cout << out.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
