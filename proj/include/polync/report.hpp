#pragma once

#include "polync/coloring.hpp"
#include "polync/complex.hpp"
#include "polync/core.hpp"
#include "polync/exact.hpp"
#include "polync/geometry.hpp"
#include "polync/json_io.hpp"
#include "polync/lattice.hpp"
#include "polync/monodromy.hpp"
#include "polync/slabs.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace polync {

/// Everything the analyze command knows about one input, in a form that
/// renders identically as JSON and as text.
struct AnalysisReport {
    int schema_version = 1;

    ValidationReport validation;

    long long vertices = 0;
    long long edges = 0;
    long long triangles = 0;
    long long squares = 0;
    long long euler = 0;

    std::optional<std::string> classification;  // absent above dimension 2

    std::optional<bool> coloring_valid;  // present when a coloring was supplied
    bool colorable = false;
    std::vector<std::string> colors;
    std::optional<ObstructionWitness> obstruction;

    struct EdgeSum {
        CellId edge = 0;
        long long sum = 0;
        long long required = 0;
    };
    std::optional<std::vector<EdgeSum>> edge_sums;
    bool tp_ok = false;

    struct ComponentEntry {
        VertexId vertex = 0;
        long long k = 0;
        long long charge = 0;
        std::vector<std::pair<CellId, long long>> cycle;  // empty without rotation data
    };
    std::optional<std::vector<ComponentEntry>> components;
    std::optional<long long> total_charge;

    std::optional<std::vector<SlabIdentity>> slab_identities;
    std::optional<ParameterCount> params;

    std::optional<MonodromyGram> gram;
    std::optional<Int> gram_determinant;
    std::optional<Signature> gram_signature;

    std::optional<std::size_t> lattice_rank;
    struct DssVerdict {
        std::string color;
        std::size_t slab_index = 0;
        bool trivial = false;
    };
    std::optional<std::vector<DssVerdict>> dss;

    std::vector<std::string> failed_checks;
    bool ok() const { return failed_checks.empty(); }
};

inline AnalysisReport build_analysis(const PolysimplicialComplex& cx,
                                     const std::optional<EdgeLabeling>& labels,
                                     const std::optional<Coloring>& given_coloring,
                                     const std::optional<ComponentSet>& comps = std::nullopt,
                                     const std::optional<PeriodHom>& period = std::nullopt) {
    AnalysisReport r;
    r.validation = validate(cx);
    r.vertices = static_cast<long long>(cx.count_of_dim(0));
    r.edges = static_cast<long long>(cx.count_of_dim(1));
    r.triangles = static_cast<long long>(cx.triangle_count());
    r.squares = static_cast<long long>(cx.square_count());
    r.euler = euler_characteristic(cx);
    if (!r.validation.ok()) {
        r.failed_checks.push_back("validation");
        return r;
    }

    if (cx.dimension() <= 2) r.classification = to_string(classify(cx));
    const bool sphere = r.classification && *r.classification == "Sphere";

    std::optional<Coloring> coloring;
    if (given_coloring) {
        r.coloring_valid = check_coloring(cx, *given_coloring);
        r.colorable = *r.coloring_valid;
        if (*r.coloring_valid) {
            coloring = *given_coloring;
            r.colors = coloring->colors;
        } else {
            r.failed_checks.push_back("coloring-valid");
        }
    } else {
        ColorabilityResult res = is_colorable(cx);
        r.colorable = res.colorable();
        if (res.colorable()) {
            coloring = std::move(*res.coloring);
            r.colors = coloring->colors;
        } else {
            r.obstruction = std::move(res.obstruction);
            r.failed_checks.push_back("colorable");
        }
    }

    if (labels) {
        try {
            std::vector<AnalysisReport::EdgeSum> sums;
            r.tp_ok = true;
            for (CellId e : cx.cells_of_dim(1)) {
                const std::vector<CellId> faces = cx.two_cells_at_edge(e);
                if (faces.size() != 2)
                    throw PreconditionError("edge not on two 2-cells");
                int tri = 0;
                for (CellId f : faces)
                    if (cx.is_triangle(f)) ++tri;
                const auto [u, v] = cx.edge_endpoints(e);
                const long long sum = labels->at(e, u) + labels->at(e, v);
                sums.push_back({e, sum, -tri});
                if (sum != -tri) r.tp_ok = false;
            }
            r.edge_sums = std::move(sums);
            if (!r.tp_ok) r.failed_checks.push_back("triple-point");
        } catch (const std::exception&) {
            r.tp_ok = false;
            r.failed_checks.push_back("triple-point-preconditions");
        }

        try {
            std::optional<RotationSystem> rot;
            try {
                rot = rotation_or_derive(cx);
            } catch (const PreconditionError&) {
            }
            std::vector<AnalysisReport::ComponentEntry> entries;
            long long total = 0;
            for (VertexId v : cx.vertex_ids()) {
                AnalysisReport::ComponentEntry ce;
                ce.vertex = v;
                ce.k = static_cast<long long>(cx.edges_at_vertex(v).size());
                ce.charge = component_charge(cx, *labels, v);
                if (rot)
                    for (CellId e : rot->at(v)) ce.cycle.push_back({e, labels->at(e, v)});
                total += ce.charge;
                entries.push_back(std::move(ce));
            }
            r.components = std::move(entries);
            r.total_charge = total;
            if (sphere && total != 24) r.failed_checks.push_back("total-charge");
        } catch (const std::exception&) {
            if (sphere) r.failed_checks.push_back("charge-preconditions");
        }
    }

    if (coloring && sphere) {
        r.slab_identities = slab_count_identity(cx, *coloring);
        for (const SlabIdentity& id : *r.slab_identities)
            if (!id.ok) {
                r.failed_checks.push_back("slab-identity");
                break;
            }
        r.params = parameter_count(cx, *coloring);
        if (!r.params->match) r.failed_checks.push_back("parameter-count");
    }

    if (coloring && cx.dimension() == 2) {
        MonodromyGram g = gram_matrix(cx, *coloring);
        r.gram_determinant = exact_determinant(g.matrix);
        r.gram_signature = exact_signature(g.matrix);
        r.gram = std::move(g);
    }

    if (comps && labels && coloring) {
        try {
            const CartierLattice lattice = numerically_cartier(cx, *labels, *comps);
            r.lattice_rank = lattice.rank();
            std::vector<SlabClass> classes;
            std::vector<AnalysisReport::DssVerdict> verdicts;
            for (int s = 0; s < static_cast<int>(coloring->colors.size()); ++s) {
                const SlabDecomposition dec = slabs(cx, *coloring, s);
                for (std::size_t i = 0; i < dec.slabs.size(); ++i) {
                    classes.push_back(slab_class(cx, *coloring, *comps, lattice, dec.slabs[i]));
                    verdicts.push_back({coloring->colors[static_cast<std::size_t>(s)], i, false});
                }
            }
            if (period) {
                const std::vector<bool> pass = check_d_semistable(lattice, *period, classes);
                bool all = true;
                for (std::size_t i = 0; i < pass.size(); ++i) {
                    verdicts[i].trivial = pass[i];
                    all = all && pass[i];
                }
                r.dss = std::move(verdicts);
                if (!all) r.failed_checks.push_back("d-semistable");
            }
        } catch (const std::exception&) {
            r.failed_checks.push_back("lattice");
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Serialization

inline Json to_json(const AnalysisReport& r) {
    Json out;
    out["schema"] = "polync-report/1";
    out["schema_version"] = r.schema_version;

    Json violations = Json::array();
    for (const Violation& v : r.validation.violations) {
        Json jv;
        jv["code"] = v.code;
        jv["message"] = v.message;
        violations.push_back(std::move(jv));
    }
    out["validation"] = Json{{"ok", r.validation.ok()}, {"violations", std::move(violations)}};

    out["counts"] = Json{{"vertices", r.vertices},
                         {"edges", r.edges},
                         {"triangles", r.triangles},
                         {"squares", r.squares},
                         {"euler", r.euler}};
    if (r.classification) out["classification"] = *r.classification;

    Json jc;
    jc["colorable"] = r.colorable;
    jc["colors"] = r.colors;
    if (r.coloring_valid) jc["given_coloring_valid"] = *r.coloring_valid;
    if (r.obstruction) {
        Json jo;
        jo["cell"] = r.obstruction->cell;
        jo["slot_a"] = Json{{"cell", r.obstruction->a.cell}, {"factor", r.obstruction->a.factor}};
        jo["slot_b"] = Json{{"cell", r.obstruction->b.cell}, {"factor", r.obstruction->b.factor}};
        Json trace = Json::array();
        for (const FaceIncidence& inc : r.obstruction->trace)
            trace.push_back(Json{{"face", inc.face}, {"coface", inc.coface}});
        jo["trace"] = std::move(trace);
        jc["obstruction"] = std::move(jo);
    }
    out["coloring"] = std::move(jc);

    if (r.edge_sums) {
        Json sums = Json::array();
        for (const auto& s : *r.edge_sums)
            sums.push_back(Json{{"edge", s.edge}, {"sum", s.sum}, {"required", s.required}});
        out["triple_point"] = Json{{"ok", r.tp_ok}, {"edge_sums", std::move(sums)}};
    }
    if (r.components) {
        Json comps = Json::array();
        for (const auto& ce : *r.components) {
            Json jce;
            jce["vertex"] = ce.vertex;
            jce["k"] = ce.k;
            jce["charge"] = ce.charge;
            Json cyc = Json::array();
            for (const auto& [e, d] : ce.cycle) cyc.push_back(Json{{"edge", e}, {"d", d}});
            jce["cycle"] = std::move(cyc);
            comps.push_back(std::move(jce));
        }
        out["charges"] = Json{{"components", std::move(comps)}, {"total", *r.total_charge}};
    }
    if (r.slab_identities) {
        Json ids = Json::array();
        for (const SlabIdentity& id : *r.slab_identities)
            ids.push_back(Json{{"color", r.colors.at(static_cast<std::size_t>(id.color))},
                               {"slabs", id.n_slabs},
                               {"triangles", id.n_triangles},
                               {"ok", id.ok}});
        out["slabs"] = std::move(ids);
    }
    if (r.params)
        out["parameters"] = Json{{"structural", r.params->structural},
                                 {"closed_form", r.params->closed_form},
                                 {"match", r.params->match}};
    if (r.gram) {
        Json jg;
        jg["colors"] = r.gram->colors;
        jg["matrix"] = to_json(r.gram->matrix);
        jg["determinant"] = int_to_json(*r.gram_determinant);
        jg["rank"] = r.gram_signature->rank();
        jg["signature"] = Json{{"positive", r.gram_signature->positive},
                               {"negative", r.gram_signature->negative},
                               {"zero", r.gram_signature->zero}};
        out["monodromy"] = std::move(jg);
    }
    if (r.lattice_rank) {
        Json jl;
        jl["rank"] = *r.lattice_rank;
        if (r.dss) {
            Json verdicts = Json::array();
            for (const auto& v : *r.dss)
                verdicts.push_back(
                    Json{{"color", v.color}, {"slab", v.slab_index}, {"trivial", v.trivial}});
            jl["d_semistable"] = std::move(verdicts);
        }
        out["lattice"] = std::move(jl);
    }
    out["failed_checks"] = r.failed_checks;
    out["ok"] = r.ok();
    return out;
}

inline AnalysisReport report_from_json(const Json& j) {
    AnalysisReport r;
    r.schema_version = static_cast<int>(jio::need_int(j, "schema_version", ""));
    const Json& jv = jio::need(j, "validation", "");
    for (const Json& v : jio::need_array(jv, "violations", "/validation"))
        r.validation.violations.push_back(
            Violation{v.at("code").get<std::string>(), v.at("message").get<std::string>()});
    const Json& counts = jio::need(j, "counts", "");
    r.vertices = jio::need_int(counts, "vertices", "/counts");
    r.edges = jio::need_int(counts, "edges", "/counts");
    r.triangles = jio::need_int(counts, "triangles", "/counts");
    r.squares = jio::need_int(counts, "squares", "/counts");
    r.euler = jio::need_int(counts, "euler", "/counts");
    if (j.contains("classification")) r.classification = j["classification"].get<std::string>();
    const Json& jc = jio::need(j, "coloring", "");
    r.colorable = jio::need(jc, "colorable", "/coloring").get<bool>();
    r.colors = jio::need_array(jc, "colors", "/coloring").get<std::vector<std::string>>();
    if (jc.contains("given_coloring_valid"))
        r.coloring_valid = jc["given_coloring_valid"].get<bool>();
    if (jc.contains("obstruction")) {
        const Json& jo = jc["obstruction"];
        ObstructionWitness w;
        w.cell = jio::need_int(jo, "cell", "/coloring/obstruction");
        w.a = FactorSlot{jo.at("slot_a").at("cell").get<CellId>(),
                         jo.at("slot_a").at("factor").get<int>()};
        w.b = FactorSlot{jo.at("slot_b").at("cell").get<CellId>(),
                         jo.at("slot_b").at("factor").get<int>()};
        for (const Json& t : jio::need_array(jo, "trace", "/coloring/obstruction"))
            w.trace.push_back(FaceIncidence{t.at("face").get<CellId>(),
                                            t.at("coface").get<CellId>(), {}});
        r.obstruction = std::move(w);
    }
    if (j.contains("triple_point")) {
        const Json& jt = j["triple_point"];
        r.tp_ok = jt.at("ok").get<bool>();
        std::vector<AnalysisReport::EdgeSum> sums;
        for (const Json& s : jt.at("edge_sums"))
            sums.push_back({s.at("edge").get<CellId>(), s.at("sum").get<long long>(),
                            s.at("required").get<long long>()});
        r.edge_sums = std::move(sums);
    }
    if (j.contains("charges")) {
        const Json& jch = j["charges"];
        std::vector<AnalysisReport::ComponentEntry> entries;
        for (const Json& c : jch.at("components")) {
            AnalysisReport::ComponentEntry ce;
            ce.vertex = c.at("vertex").get<VertexId>();
            ce.k = c.at("k").get<long long>();
            ce.charge = c.at("charge").get<long long>();
            for (const Json& cyc : c.at("cycle"))
                ce.cycle.push_back({cyc.at("edge").get<CellId>(), cyc.at("d").get<long long>()});
            entries.push_back(std::move(ce));
        }
        r.components = std::move(entries);
        r.total_charge = jch.at("total").get<long long>();
    }
    if (j.contains("slabs")) {
        std::vector<SlabIdentity> ids;
        for (const Json& s : j["slabs"]) {
            SlabIdentity id;
            const std::string color = s.at("color").get<std::string>();
            id.color = static_cast<int>(
                std::find(r.colors.begin(), r.colors.end(), color) - r.colors.begin());
            id.n_slabs = s.at("slabs").get<long long>();
            id.n_triangles = s.at("triangles").get<long long>();
            id.ok = s.at("ok").get<bool>();
            ids.push_back(id);
        }
        r.slab_identities = std::move(ids);
    }
    if (j.contains("parameters")) {
        ParameterCount pc;
        pc.structural = j["parameters"].at("structural").get<long long>();
        pc.closed_form = j["parameters"].at("closed_form").get<long long>();
        pc.match = j["parameters"].at("match").get<bool>();
        r.params = pc;
    }
    if (j.contains("monodromy")) {
        const Json& jg = j["monodromy"];
        MonodromyGram g;
        g.colors = jg.at("colors").get<std::vector<std::string>>();
        g.matrix = imat_from_json(jg.at("matrix"), "/monodromy/matrix");
        r.gram = std::move(g);
        r.gram_determinant = int_from_json(jg.at("determinant"), "/monodromy/determinant");
        Signature sig;
        sig.positive = jg.at("signature").at("positive").get<long long>();
        sig.negative = jg.at("signature").at("negative").get<long long>();
        sig.zero = jg.at("signature").at("zero").get<long long>();
        r.gram_signature = sig;
    }
    if (j.contains("lattice")) {
        r.lattice_rank = j["lattice"].at("rank").get<std::size_t>();
        if (j["lattice"].contains("d_semistable")) {
            std::vector<AnalysisReport::DssVerdict> verdicts;
            for (const Json& v : j["lattice"]["d_semistable"])
                verdicts.push_back({v.at("color").get<std::string>(),
                                    v.at("slab").get<std::size_t>(), v.at("trivial").get<bool>()});
            r.dss = std::move(verdicts);
        }
    }
    r.failed_checks = jio::need_array(j, "failed_checks", "").get<std::vector<std::string>>();
    return r;
}

inline std::string to_text(const AnalysisReport& r, bool color_output = false) {
    std::ostringstream os;
    const char* green = color_output ? "\033[32m" : "";
    const char* red = color_output ? "\033[31m" : "";
    const char* reset = color_output ? "\033[0m" : "";
    auto verdict = [&](bool ok) { return ok ? std::string(green) + "ok" + reset
                                            : std::string(red) + "FAIL" + reset; };

    os << "validation: " << verdict(r.validation.ok()) << "\n";
    for (const Violation& v : r.validation.violations)
        os << "  [" << v.code << "] " << v.message << "\n";
    os << "counts: v=" << r.vertices << " e=" << r.edges << " triangles=" << r.triangles
       << " squares=" << r.squares << " euler=" << r.euler << "\n";
    if (r.classification) os << "classification: " << *r.classification << "\n";
    os << "colorable: " << (r.colorable ? "yes" : "no");
    if (!r.colors.empty()) {
        os << "  colors:";
        for (const std::string& c : r.colors) os << " " << c;
    }
    os << "\n";
    if (r.coloring_valid) os << "given coloring valid: " << verdict(*r.coloring_valid) << "\n";
    if (r.obstruction) {
        os << "obstruction: cell " << r.obstruction->cell << " slots (" << r.obstruction->a.cell
           << "," << r.obstruction->a.factor << ") ~ (" << r.obstruction->b.cell << ","
           << r.obstruction->b.factor << ") via";
        for (const FaceIncidence& inc : r.obstruction->trace)
            os << " " << inc.face << "<" << inc.coface;
        os << "\n";
    }
    if (r.edge_sums) {
        os << "triple point formula: " << verdict(r.tp_ok) << "\n";
        for (const auto& s : *r.edge_sums)
            if (s.sum != s.required)
                os << "  edge " << s.edge << ": sum=" << s.sum << " required=" << s.required
                   << "\n";
    }
    if (r.components) {
        os << "charges:";
        for (const auto& ce : *r.components) os << " " << ce.vertex << ":" << ce.charge;
        os << "\n";
        os << "total charge: " << *r.total_charge << "\n";
        for (const auto& ce : *r.components) {
            if (ce.cycle.empty()) continue;
            os << "  component " << ce.vertex << " (k=" << ce.k << "):";
            for (const auto& [e, d] : ce.cycle) os << " " << d;
            os << "\n";
        }
    }
    if (r.slab_identities) {
        os << "slabs:";
        for (const SlabIdentity& id : *r.slab_identities)
            os << " " << r.colors.at(static_cast<std::size_t>(id.color)) << "=" << id.n_slabs
               << (id.ok ? "" : "(!)");
        os << "\n";
    }
    if (r.params)
        os << "parameters: structural=" << r.params->structural
           << " closed_form=" << r.params->closed_form << " match=" << verdict(r.params->match)
           << "\n";
    if (r.gram) {
        os << "monodromy gram (order:";
        for (const std::string& c : r.gram->colors) os << " " << c;
        os << "):\n";
        for (std::size_t i = 0; i < r.gram->matrix.rows(); ++i) {
            os << " ";
            for (std::size_t jx = 0; jx < r.gram->matrix.cols(); ++jx)
                os << " " << r.gram->matrix(i, jx);
            os << "\n";
        }
        os << "determinant: " << r.gram_determinant->str() << "  rank: "
           << r.gram_signature->rank() << "  signature: (" << r.gram_signature->positive << ","
           << r.gram_signature->negative << "," << r.gram_signature->zero << ")\n";
    }
    if (r.lattice_rank) {
        os << "numerically Cartier rank: " << *r.lattice_rank << "\n";
        if (r.dss)
            for (const auto& v : *r.dss)
                os << "  slab " << v.color << "#" << v.slab_index << ": phi(xi)"
                   << (v.trivial ? "=1" : "!=1") << "\n";
    }
    os << "result: " << verdict(r.ok());
    if (!r.failed_checks.empty()) {
        os << "  failed:";
        for (const std::string& f : r.failed_checks) os << " " << f;
    }
    os << "\n";
    return os.str();
}

}  // namespace polync
