#pragma once

#include "polync/complex.hpp"
#include "polync/core.hpp"

#include <algorithm>
#include <compare>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace polync {

/// One simplex factor of one cell; the atoms that get colored.
struct FactorSlot {
    CellId cell = 0;
    int factor = 0;

    auto operator<=>(const FactorSlot&) const = default;
};

/// Finest partition of all factor slots merging face-incident slots.
struct ForcedClasses {
    std::vector<std::vector<FactorSlot>> classes;  // each sorted; ordered by smallest member
    std::map<FactorSlot, int> class_of;

    // Merge graph retained for obstruction traces.
    std::vector<FactorSlot> slots;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> merge_adj;  // slot -> (slot, incidence)
};

inline std::vector<FactorSlot> all_slots(const PolysimplicialComplex& cx) {
    std::vector<FactorSlot> slots;
    for (const Polysimplex& c : cx.cells())
        for (std::size_t p = 0; p < c.factors.size(); ++p)
            slots.push_back(FactorSlot{c.id, static_cast<int>(p)});
    std::sort(slots.begin(), slots.end());
    return slots;
}

inline ForcedClasses forced_classes(const PolysimplicialComplex& cx) {
    ForcedClasses out;
    out.slots = all_slots(cx);
    std::map<FactorSlot, std::size_t> index;
    for (std::size_t i = 0; i < out.slots.size(); ++i) index.emplace(out.slots[i], i);

    std::vector<std::size_t> parent(out.slots.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    out.merge_adj.resize(out.slots.size());
    const std::vector<FaceIncidence>& incs = cx.incidences();
    for (std::size_t k = 0; k < incs.size(); ++k) {
        const FaceIncidence& inc = incs[k];
        const Polysimplex* f = cx.find_cell(inc.face);
        const Polysimplex* c = cx.find_cell(inc.coface);
        if (!f || !c) throw PreconditionError("incidence references an unknown cell");
        if (inc.slot_map.size() != f->factors.size())
            throw PreconditionError("slot map arity mismatch on face " + std::to_string(inc.face));
        for (std::size_t p = 0; p < inc.slot_map.size(); ++p) {
            const int q = inc.slot_map[p];
            if (q < 0 || static_cast<std::size_t>(q) >= c->factors.size())
                throw PreconditionError("slot map out of range on face " + std::to_string(inc.face));
            const std::size_t a = index.at(FactorSlot{inc.face, static_cast<int>(p)});
            const std::size_t b = index.at(FactorSlot{inc.coface, q});
            out.merge_adj[a].push_back({b, k});
            out.merge_adj[b].push_back({a, k});
            parent[find(a)] = find(b);
        }
    }

    std::map<std::size_t, std::vector<FactorSlot>> groups;
    for (std::size_t i = 0; i < out.slots.size(); ++i) groups[find(i)].push_back(out.slots[i]);
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.classes.push_back(members);
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t k = 0; k < out.classes.size(); ++k)
        for (const FactorSlot& s : out.classes[k]) out.class_of[s] = static_cast<int>(k);
    return out;
}

/// An S-coloring: injective per cell, compatible along face inclusions.
/// Color labels are opaque strings; the assignment stores indices into them.
struct Coloring {
    std::vector<std::string> colors;
    std::map<FactorSlot, int> assignment;

    int color_of(const FactorSlot& s) const {
        auto it = assignment.find(s);
        if (it == assignment.end())
            throw SchemaError("", "slot (" + std::to_string(s.cell) + ", " +
                                      std::to_string(s.factor) + ") has no color assigned");
        return it->second;
    }

    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < colors.size(); ++i)
            if (colors[i] == name) return static_cast<int>(i);
        throw PreconditionError("unknown color '" + name + "'");
    }
};

/// Witness for non-colorability: two slots of one cell forced equal, with the
/// chain of incidences that merged them.
struct ObstructionWitness {
    CellId cell = 0;
    FactorSlot a;
    FactorSlot b;
    std::vector<FaceIncidence> trace;
};

struct ColorabilityResult {
    std::optional<Coloring> coloring;
    std::optional<ObstructionWitness> obstruction;

    bool colorable() const { return coloring.has_value(); }
};

namespace detail {

inline std::vector<FaceIncidence> merge_trace(const PolysimplicialComplex& cx,
                                              const ForcedClasses& fc, const FactorSlot& from,
                                              const FactorSlot& to) {
    std::map<FactorSlot, std::size_t> index;
    for (std::size_t i = 0; i < fc.slots.size(); ++i) index.emplace(fc.slots[i], i);
    const std::size_t src = index.at(from);
    const std::size_t dst = index.at(to);
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> pred(fc.slots.size());
    std::vector<bool> seen(fc.slots.size(), false);
    std::deque<std::size_t> queue{src};
    seen[src] = true;
    while (!queue.empty()) {
        const std::size_t x = queue.front();
        queue.pop_front();
        if (x == dst) break;
        for (const auto& [y, inc] : fc.merge_adj[x]) {
            if (seen[y]) continue;
            seen[y] = true;
            pred[y] = {x, inc};
            queue.push_back(y);
        }
    }
    std::vector<FaceIncidence> trace;
    std::size_t cur = dst;
    while (cur != src) {
        if (!pred[cur]) return {};
        trace.push_back(cx.incidences()[pred[cur]->second]);
        cur = pred[cur]->first;
    }
    std::reverse(trace.begin(), trace.end());
    return trace;
}

}  // namespace detail

/// Decides colorability from the forced classes: colorable iff no cell has
/// two factor slots in the same class. The canonical coloring uses the
/// classes themselves as colors.
inline ColorabilityResult is_colorable(const PolysimplicialComplex& cx) {
    const ForcedClasses fc = forced_classes(cx);
    for (const Polysimplex& c : cx.cells()) {
        for (std::size_t p = 0; p < c.factors.size(); ++p)
            for (std::size_t q = p + 1; q < c.factors.size(); ++q) {
                const FactorSlot a{c.id, static_cast<int>(p)};
                const FactorSlot b{c.id, static_cast<int>(q)};
                if (fc.class_of.at(a) == fc.class_of.at(b)) {
                    ObstructionWitness w;
                    w.cell = c.id;
                    w.a = a;
                    w.b = b;
                    w.trace = detail::merge_trace(cx, fc, a, b);
                    ColorabilityResult res;
                    res.obstruction = std::move(w);
                    return res;
                }
            }
    }
    Coloring col;
    for (std::size_t k = 0; k < fc.classes.size(); ++k) col.colors.push_back("c" + std::to_string(k));
    for (const auto& [slot, k] : fc.class_of) col.assignment[slot] = k;
    ColorabilityResult res;
    res.coloring = std::move(col);
    return res;
}

/// True iff the assignment is injective per cell and compatible along faces.
/// Missing slot assignments are schema errors, not a false verdict.
inline bool check_coloring(const PolysimplicialComplex& cx, const Coloring& col) {
    for (const FactorSlot& s : all_slots(cx)) col.color_of(s);  // totality
    for (const Polysimplex& c : cx.cells()) {
        std::set<int> used;
        for (std::size_t p = 0; p < c.factors.size(); ++p)
            if (!used.insert(col.color_of(FactorSlot{c.id, static_cast<int>(p)})).second)
                return false;
    }
    for (const FaceIncidence& inc : cx.incidences()) {
        const Polysimplex* f = cx.find_cell(inc.face);
        if (!f) continue;
        for (std::size_t p = 0; p < inc.slot_map.size(); ++p) {
            if (col.color_of(FactorSlot{inc.face, static_cast<int>(p)}) !=
                col.color_of(FactorSlot{inc.coface, inc.slot_map[p]}))
                return false;
        }
    }
    return true;
}

/// Vertices are forced classes; an edge joins two classes co-occurring in a
/// cell. Proper colorings of this graph are exactly the valid coarsenings of
/// the canonical coloring.
struct ConflictGraph {
    std::size_t class_count = 0;
    std::set<std::pair<int, int>> edges;  // first < second
};

inline ConflictGraph conflict_graph(const PolysimplicialComplex& cx) {
    const ForcedClasses fc = forced_classes(cx);
    ConflictGraph g;
    g.class_count = fc.classes.size();
    for (const Polysimplex& c : cx.cells())
        for (std::size_t p = 0; p < c.factors.size(); ++p)
            for (std::size_t q = p + 1; q < c.factors.size(); ++q) {
                const int a = fc.class_of.at(FactorSlot{c.id, static_cast<int>(p)});
                const int b = fc.class_of.at(FactorSlot{c.id, static_cast<int>(q)});
                if (a == b)
                    throw PreconditionError("conflict graph requires a colorable complex");
                g.edges.insert({std::min(a, b), std::max(a, b)});
            }
    return g;
}

/// Color index of an edge cell (its single factor slot).
inline int edge_color(const Coloring& col, CellId edge) {
    return col.color_of(FactorSlot{edge, 0});
}

}  // namespace polync
