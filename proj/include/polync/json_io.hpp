#pragma once

#include "polync/coloring.hpp"
#include "polync/complex.hpp"
#include "polync/core.hpp"
#include "polync/exact.hpp"
#include "polync/geometry.hpp"
#include "polync/lattice.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace polync {

using Json = nlohmann::json;

// Integers ride as JSON numbers while they fit 53 bits losslessly and as
// decimal strings beyond that.
inline Json int_to_json(const Int& x) {
    static const Int kSafe = (Int(1) << 53);
    if (x <= kSafe && x >= -kSafe) return Json(static_cast<std::int64_t>(x));
    return Json(x.str());
}

inline Int int_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw SchemaError(path, "not a decimal integer string");
        }
    }
    throw SchemaError(path, "expected an integer or decimal string");
}

namespace jio {

inline const Json& need(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "/" + key, "missing required key");
    return *it;
}

inline std::int64_t need_int(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_number_integer()) throw SchemaError(path + "/" + key, "expected an integer");
    return v.get<std::int64_t>();
}

inline const Json& need_array(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_array()) throw SchemaError(path + "/" + key, "expected an array");
    return v;
}

inline std::string need_string(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_string()) throw SchemaError(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

}  // namespace jio

// ---------------------------------------------------------------------------
// Complex

inline Json to_json(const PolysimplicialComplex& cx) {
    Json cells = Json::array();
    for (const Polysimplex& c : cx.cells()) {
        Json jc;
        jc["id"] = c.id;
        jc["dim"] = c.dimension();
        jc["factors"] = c.factors;
        jc["vertices"] = c.vertices;
        cells.push_back(std::move(jc));
    }
    Json incs = Json::array();
    for (const FaceIncidence& inc : cx.incidences()) {
        Json ji;
        ji["face"] = inc.face;
        ji["coface"] = inc.coface;
        ji["slot_map"] = inc.slot_map;
        incs.push_back(std::move(ji));
    }
    Json out;
    out["schema"] = "polync-complex/1";
    out["cells"] = std::move(cells);
    out["incidences"] = std::move(incs);
    if (cx.closed_surface_claim()) out["closed_surface"] = true;
    if (cx.rotation()) {
        Json rot = Json::object();
        for (const auto& [v, order] : *cx.rotation()) rot[std::to_string(v)] = order;
        out["rotation"] = std::move(rot);
    }
    return out;
}

inline PolysimplicialComplex complex_from_json(const Json& j) {
    const std::string root;
    std::vector<Polysimplex> cells;
    const Json& jcells = jio::need_array(j, "cells", root);
    for (std::size_t i = 0; i < jcells.size(); ++i) {
        const std::string path = "/cells/" + std::to_string(i);
        const Json& jc = jcells[i];
        Polysimplex c;
        c.id = jio::need_int(jc, "id", path);
        const Json& jf = jio::need_array(jc, "factors", path);
        for (std::size_t k = 0; k < jf.size(); ++k) {
            if (!jf[k].is_number_integer())
                throw SchemaError(path + "/factors/" + std::to_string(k), "expected an integer");
            c.factors.push_back(jf[k].get<int>());
        }
        const Json& jv = jio::need_array(jc, "vertices", path);
        for (std::size_t k = 0; k < jv.size(); ++k) {
            if (!jv[k].is_number_integer())
                throw SchemaError(path + "/vertices/" + std::to_string(k), "expected an integer");
            c.vertices.push_back(jv[k].get<VertexId>());
        }
        if (jc.contains("dim") && jc["dim"].is_number_integer() &&
            jc["dim"].get<int>() != c.dimension())
            throw SchemaError(path + "/dim", "declared dimension disagrees with factors");
        cells.push_back(std::move(c));
    }
    std::vector<FaceIncidence> incs;
    const Json& jincs = jio::need_array(j, "incidences", root);
    for (std::size_t i = 0; i < jincs.size(); ++i) {
        const std::string path = "/incidences/" + std::to_string(i);
        const Json& ji = jincs[i];
        FaceIncidence inc;
        inc.face = jio::need_int(ji, "face", path);
        inc.coface = jio::need_int(ji, "coface", path);
        const Json& js = jio::need_array(ji, "slot_map", path);
        for (std::size_t k = 0; k < js.size(); ++k) {
            if (!js[k].is_number_integer())
                throw SchemaError(path + "/slot_map/" + std::to_string(k), "expected an integer");
            inc.slot_map.push_back(js[k].get<int>());
        }
        incs.push_back(std::move(inc));
    }
    std::optional<RotationSystem> rotation;
    if (j.contains("rotation")) {
        if (!j["rotation"].is_object()) throw SchemaError("/rotation", "expected an object");
        RotationSystem rot;
        for (const auto& [key, val] : j["rotation"].items()) {
            VertexId v;
            try {
                v = std::stoll(key);
            } catch (const std::exception&) {
                throw SchemaError("/rotation/" + key, "key is not a vertex id");
            }
            if (!val.is_array()) throw SchemaError("/rotation/" + key, "expected an array");
            rot[v] = val.get<std::vector<CellId>>();
        }
        rotation = std::move(rot);
    }
    bool closed = false;
    if (j.contains("closed_surface")) {
        if (!j["closed_surface"].is_boolean())
            throw SchemaError("/closed_surface", "expected a boolean");
        closed = j["closed_surface"].get<bool>();
    }
    return PolysimplicialComplex(std::move(cells), std::move(incs), std::move(rotation), closed);
}

// ---------------------------------------------------------------------------
// Labels

inline Json to_json(const EdgeLabeling& lab) {
    Json entries = Json::array();
    for (const auto& [key, value] : lab.d) {
        Json e;
        e["edge"] = key.first;
        e["vertex"] = key.second;
        e["d"] = value;
        entries.push_back(std::move(e));
    }
    Json out;
    out["schema"] = "polync-labels/1";
    out["labels"] = std::move(entries);
    return out;
}

inline EdgeLabeling labels_from_json(const Json& j) {
    EdgeLabeling lab;
    const Json& entries = jio::need_array(j, "labels", "");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string path = "/labels/" + std::to_string(i);
        const Json& e = entries[i];
        lab.set(jio::need_int(e, "edge", path), jio::need_int(e, "vertex", path),
                jio::need_int(e, "d", path));
    }
    return lab;
}

// ---------------------------------------------------------------------------
// Coloring

inline Json to_json(const Coloring& col) {
    Json entries = Json::array();
    for (const auto& [slot, idx] : col.assignment) {
        Json e;
        e["cell"] = slot.cell;
        e["factor"] = slot.factor;
        e["color"] = col.colors.at(static_cast<std::size_t>(idx));
        entries.push_back(std::move(e));
    }
    Json out;
    out["schema"] = "polync-coloring/1";
    out["colors"] = col.colors;
    out["assignment"] = std::move(entries);
    return out;
}

inline Coloring coloring_from_json(const Json& j) {
    Coloring col;
    const Json& names = jio::need_array(j, "colors", "");
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!names[i].is_string())
            throw SchemaError("/colors/" + std::to_string(i), "expected a string");
        col.colors.push_back(names[i].get<std::string>());
    }
    const Json& entries = jio::need_array(j, "assignment", "");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string path = "/assignment/" + std::to_string(i);
        const Json& e = entries[i];
        const std::string name = jio::need_string(e, "color", path);
        const auto it = std::find(col.colors.begin(), col.colors.end(), name);
        if (it == col.colors.end()) throw SchemaError(path + "/color", "color not in palette");
        col.assignment[FactorSlot{jio::need_int(e, "cell", path),
                                  static_cast<int>(jio::need_int(e, "factor", path))}] =
            static_cast<int>(it - col.colors.begin());
    }
    return col;
}

// ---------------------------------------------------------------------------
// Integer matrices

inline Json to_json(const IMat& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IMat imat_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    if (rows > 0) {
        if (!j[0].is_array()) throw SchemaError(path + "/0", "expected an array");
        cols = j[0].size();
    }
    IMat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw SchemaError(path + "/" + std::to_string(r), "ragged matrix row");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = int_from_json(j[r][c], path + "/" + std::to_string(r) + "/" +
                                                 std::to_string(c));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Components

inline Json to_json(const ComponentSet& comps) {
    Json list = Json::array();
    for (const auto& [v, lat] : comps.by_vertex) {
        Json e;
        e["vertex"] = v;
        e["rank"] = lat.rank();
        e["gram"] = to_json(lat.gram);
        Json curves = Json::array();
        for (const auto& [edge, cls] : lat.curve_class) {
            Json c;
            c["edge"] = edge;
            Json vec = Json::array();
            for (const Int& x : cls) vec.push_back(int_to_json(x));
            c["class"] = std::move(vec);
            curves.push_back(std::move(c));
        }
        e["curves"] = std::move(curves);
        list.push_back(std::move(e));
    }
    Json out;
    out["schema"] = "polync-components/1";
    out["components"] = std::move(list);
    return out;
}

inline ComponentSet components_from_json(const Json& j, const PolysimplicialComplex& cx) {
    ComponentSet comps;
    const Json& list = jio::need_array(j, "components", "");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "/components/" + std::to_string(i);
        const Json& e = list[i];
        const VertexId v = jio::need_int(e, "vertex", path);
        if (e.contains("kind")) {
            const std::string kind = jio::need_string(e, "kind", path);
            ComponentKind k;
            if (kind == "P2-triangle")
                k = ComponentKind::P2Triangle;
            else if (kind == "P1xP1-square")
                k = ComponentKind::P1xP1Square;
            else
                throw SchemaError(path + "/kind", "unknown component kind");
            std::vector<BlowUpStep> schedule;
            if (e.contains("blowups")) {
                const Json& bl = jio::need_array(e, "blowups", path);
                for (std::size_t b = 0; b < bl.size(); ++b) {
                    const std::string bpath = path + "/blowups/" + std::to_string(b);
                    const std::string op = jio::need_string(bl[b], "op", bpath);
                    BlowUpStep step;
                    if (op == "interior")
                        step.op = BlowUpStep::Op::Interior;
                    else if (op == "corner")
                        step.op = BlowUpStep::Op::Corner;
                    else
                        throw SchemaError(bpath + "/op", "expected 'interior' or 'corner'");
                    step.position = static_cast<int>(jio::need_int(bl[b], "position", bpath));
                    schedule.push_back(step);
                }
            }
            const CellId first_edge = jio::need_int(e, "first_edge", path);
            try {
                comps.by_vertex[v] = bind_component(cx, rotation_or_derive(cx), v,
                                                    build_component(k, schedule), first_edge);
            } catch (const PreconditionError& err) {
                throw SchemaError(path, err.what());
            }
        } else {
            ComponentLattice lat;
            lat.vertex = v;
            lat.gram = imat_from_json(jio::need(e, "gram", path), path + "/gram");
            if (!lat.gram.is_square()) throw SchemaError(path + "/gram", "Gram matrix not square");
            const Json& curves = jio::need_array(e, "curves", path);
            for (std::size_t c = 0; c < curves.size(); ++c) {
                const std::string cpath = path + "/curves/" + std::to_string(c);
                const CellId edge = jio::need_int(curves[c], "edge", cpath);
                const Json& vec = jio::need_array(curves[c], "class", cpath);
                std::vector<Int> cls;
                for (std::size_t t = 0; t < vec.size(); ++t)
                    cls.push_back(int_from_json(vec[t], cpath + "/class/" + std::to_string(t)));
                if (cls.size() != lat.rank())
                    throw SchemaError(cpath + "/class", "length disagrees with rank");
                lat.curve_class[edge] = std::move(cls);
            }
            comps.by_vertex[v] = std::move(lat);
        }
    }
    return comps;
}

// ---------------------------------------------------------------------------
// Period homomorphism and standalone matrices

inline Json to_json(const PeriodHom& p) {
    Json out;
    out["schema"] = "polync-period/1";
    out["parameters"] = p.parameters;
    out["matrix"] = to_json(p.matrix);
    return out;
}

inline PeriodHom period_from_json(const Json& j) {
    PeriodHom p;
    const std::int64_t params = jio::need_int(j, "parameters", "");
    if (params < 0) throw SchemaError("/parameters", "expected a nonnegative count");
    p.parameters = static_cast<std::size_t>(params);
    p.matrix = imat_from_json(jio::need(j, "matrix", ""), "/matrix");
    if (p.matrix.rows() != p.parameters)
        throw SchemaError("/matrix", "row count disagrees with parameters");
    return p;
}

struct NamedMatrix {
    std::vector<std::string> colors;  // optional; empty when unnamed
    IMat matrix;
};

inline NamedMatrix matrix_from_json(const Json& j) {
    NamedMatrix nm;
    nm.matrix = imat_from_json(jio::need(j, "matrix", ""), "/matrix");
    if (j.contains("colors")) {
        if (!j["colors"].is_array()) throw SchemaError("/colors", "expected an array");
        for (const Json& c : j["colors"]) {
            if (!c.is_string()) throw SchemaError("/colors", "expected strings");
            nm.colors.push_back(c.get<std::string>());
        }
        if (nm.colors.size() != nm.matrix.rows())
            throw SchemaError("/colors", "color count disagrees with matrix size");
    }
    return nm;
}

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace polync
