#include "dmt/fixtures.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace dmt {

namespace {

Complex simplicial_from_tops(const std::vector<std::vector<std::int32_t>>& tops,
                             const std::map<std::int32_t, std::string>& vertex_names = {}) {
    std::vector<CellDescriptor> ds;
    // Seed vertices in label order so label i gets id i.
    std::set<std::int32_t> labels;
    for (const auto& t : tops) labels.insert(t.begin(), t.end());
    for (std::int32_t l : labels) ds.push_back({0, {l}, {}});
    for (const auto& t : tops)
        ds.push_back({int(t.size()) - 1, t, {}});
    Complex X = build_complex(ds);
    if (!vertex_names.empty()) {
        std::map<std::int32_t, std::string> by_index;
        std::size_t i = 0;
        for (std::int32_t l : labels) {
            auto it = vertex_names.find(l);
            if (it != vertex_names.end()) by_index[std::int32_t(i)] = it->second;
            ++i;
        }
        X = Complex::from_cells(X.table(), by_index);
    }
    return X;
}

// Product of a simplicial 2-complex with a circle of `m` segments, using the
// staircase triangulation of each prism; diagonal choices are driven by the
// global vertex order, so neighboring prisms agree.
std::vector<std::vector<std::int32_t>> layered_tops(
    const std::vector<std::vector<std::int32_t>>& triangles, int n_vertices, int m) {
    auto at = [&](std::int32_t v, int layer) { return v + n_vertices * (layer % m); };
    std::vector<std::vector<std::int32_t>> tets;
    for (auto tri : triangles) {
        std::sort(tri.begin(), tri.end());
        std::int32_t a = tri[0], b = tri[1], c = tri[2];
        for (int i = 0; i < m; ++i) {
            tets.push_back({at(a, i), at(b, i), at(c, i), at(c, i + 1)});
            tets.push_back({at(a, i), at(b, i), at(b, i + 1), at(c, i + 1)});
            tets.push_back({at(a, i), at(a, i + 1), at(b, i + 1), at(c, i + 1)});
        }
    }
    return tets;
}

LabeledManifold finish_manifold(Complex X, std::string name,
                                std::array<std::int64_t, 4> expect) {
    LabeledManifold out;
    out.name = std::move(name);
    out.known_betti.b = expect;
    ManifoldReport mr = check_closed_3manifold(X);
    require(mr.ok, Err::Internal, out.name + ": fixture is not a closed 3-manifold");
    OrientationResult orr = orient(X);
    require(orr.ok, Err::NonOrientable, out.name + ": fixture is not orientable");
    BettiVector bv = betti(X);
    require(bv == out.known_betti, Err::Internal,
            out.name + ": betti " + bv.str() + " != expected " + out.known_betti.str());
    for (CellId c : X.all_cells()) out.provenance[c] = 0;
    out.complex = std::move(X);
    return out;
}

}  // namespace

LabeledManifold standard_triangulation(const std::string& name) {
    if (name == "S3") {
        std::vector<std::vector<std::int32_t>> tets;
        for (int skip = 0; skip < 5; ++skip) {
            std::vector<std::int32_t> t;
            for (int v = 0; v < 5; ++v)
                if (v != skip) t.push_back(v);
            tets.push_back(t);
        }
        return finish_manifold(simplicial_from_tops(tets), "S3", {1, 0, 0, 1});
    }
    if (name == "S2xS1") {
        std::vector<std::vector<std::int32_t>> tris;
        for (int skip = 0; skip < 4; ++skip) {
            std::vector<std::int32_t> t;
            for (int v = 0; v < 4; ++v)
                if (v != skip) t.push_back(v);
            tris.push_back(t);
        }
        return finish_manifold(simplicial_from_tops(layered_tops(tris, 4, 3)), "S2xS1",
                               {1, 1, 1, 1});
    }
    if (name == "T3") {
        std::vector<std::vector<std::int32_t>> tris;
        for (int i = 0; i < 7; ++i) {
            tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
            tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
        }
        return finish_manifold(simplicial_from_tops(layered_tops(tris, 7, 3)), "T3",
                               {1, 3, 3, 1});
    }
    fail(Err::PreconditionFailed, "unknown standard triangulation: " + name);
}

LabeledManifold connected_sum(const LabeledManifold& A, const LabeledManifold& B) {
    const Complex& XA = A.complex;
    const Complex& XB = B.complex;
    require(!XA.cells(3).empty() && !XB.cells(3).empty(), Err::PreconditionFailed,
            "connected sum needs 3-manifolds");
    CellId tA = XA.cells(3).back();
    CellId tB = XB.cells(3).back();
    std::vector<CellId> vA = XA.cell(tA).vertices;
    std::vector<CellId> vB = XB.cell(tB).vertices;

    int tag_shift = 0;
    for (auto& [c, t] : A.provenance) tag_shift = std::max(tag_shift, t + 1);

    std::vector<int> perm{0, 1, 2, 3};
    std::sort(perm.begin(), perm.end());
    do {
        // Map closure of dtB onto closure of dtA through the vertex bijection.
        std::map<CellId, CellId> glue;  // B-cell -> A-cell
        bool good = true;
        for (CellId c : closure_of(XB, {tB})) {
            if (c == tB) continue;
            std::vector<CellId> mapped;
            for (CellId w : XB.cell(c).vertices) {
                std::size_t k = std::find(vB.begin(), vB.end(), w) - vB.begin();
                mapped.push_back(vA[perm[k]]);
            }
            CellId img = XA.find_simplex(mapped);
            if (!img.valid()) {
                good = false;
                break;
            }
            glue[c] = img;
        }
        if (!good) continue;

        std::int32_t off = XA.capacity();
        std::vector<Cell> table(XA.capacity() + XB.capacity());
        for (std::int32_t i = 0; i < std::int32_t(table.size()); ++i) {
            table[i].id = CellId{i, -1};
            table[i].alive = false;
        }
        for (const Cell& c : XA.table()) {
            if (!c.alive || c.id == tA) continue;
            table[c.id.index] = c;
        }
        auto map_b = [&](CellId c) -> CellId {
            auto it = glue.find(c);
            if (it != glue.end()) return it->second;
            return CellId{c.index + off, c.dim};
        };
        for (const Cell& c : XB.table()) {
            if (!c.alive || c.id == tB || glue.count(c.id)) continue;
            Cell n = c;
            n.id = map_b(c.id);
            for (auto& f : n.facets) f = map_b(f);
            n.vertices.clear();
            table[n.id.index] = std::move(n);
        }
        Complex glued;
        try {
            glued = Complex::from_cells(std::move(table));
        } catch (const Error&) {
            continue;
        }
        if (!check_closed_3manifold(glued).ok) continue;
        if (!orient(glued).ok) continue;

        LabeledManifold out;
        out.name = A.name + "#" + B.name;
        out.known_betti.b = {1, A.known_betti.b[1] + B.known_betti.b[1],
                             A.known_betti.b[2] + B.known_betti.b[2], 1};
        BettiVector bv = betti(glued);
        if (!(bv == out.known_betti)) continue;  // wrong gluing would shift homology
        for (CellId c : glued.all_cells()) {
            if (c.index < off) {
                auto it = A.provenance.find(c);
                out.provenance[c] = it == A.provenance.end() ? 0 : it->second;
            } else {
                CellId orig{c.index - off, c.dim};
                auto it = B.provenance.find(orig);
                out.provenance[c] = (it == B.provenance.end() ? 0 : it->second) + tag_shift;
            }
        }
        for (auto& [bc, ac] : glue) out.provenance[ac] = -1;
        out.complex = std::move(glued);
        return out;
    } while (std::next_permutation(perm.begin(), perm.end()));
    fail(Err::GluingObstructed, "no orientation-compatible gluing of the boundary spheres");
}

GradientField random_acyclic_matching(const Complex& X, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CellId> cells = X.all_cells();
    std::set<CellId> todo(cells.begin(), cells.end());
    std::map<CellId, int> open_cofaces;
    for (CellId c : cells) {
        int n = 0;
        for (CellId up : X.cofacets(c)) {
            (void)up;
            ++n;
        }
        open_cofaces[c] = n;
    }
    GradientField V;
    while (!todo.empty()) {
        // Free pairs: sigma with exactly one remaining coface tau.
        std::vector<std::pair<CellId, CellId>> free;
        for (CellId c : todo) {
            if (open_cofaces[c] != 1) continue;
            CellId partner{};
            for (CellId up : X.cofacets(c))
                if (todo.count(up)) partner = up;
            if (partner.valid()) free.push_back({c, partner});
        }
        if (!free.empty()) {
            auto [s, t] = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
            V.insert(s, t);
            todo.erase(s);
            todo.erase(t);
            for (CellId f : X.cell(t).facets)
                if (todo.count(f)) --open_cofaces[f];
            for (CellId f : X.cell(s).facets)
                if (todo.count(f)) --open_cofaces[f];
            continue;
        }
        // No free pair: retire one top-dimensional cell as critical.
        int dmax = -1;
        for (CellId c : todo) dmax = std::max(dmax, int(c.dim));
        std::vector<CellId> tops;
        for (CellId c : todo)
            if (c.dim == dmax) tops.push_back(c);
        CellId crit = tops[std::uniform_int_distribution<std::size_t>(0, tops.size() - 1)(rng)];
        todo.erase(crit);
        for (CellId f : X.cell(crit).facets)
            if (todo.count(f)) --open_cofaces[f];
    }
    return V;
}

GradientField perfect_field_search(const Complex& X, std::uint64_t seed, int max_retries) {
    BettiVector bv = betti(X);
    for (int retry = 0; retry <= max_retries; ++retry) {
        GradientField V = random_acyclic_matching(X, seed + std::uint64_t(retry) * 0x9e3779b9ull);
        while (true) {
            CriticalSet cs = critical_cells(V, X);
            bool perfect = true;
            for (int d = 0; d <= 3; ++d) perfect &= cs.counts[d] == bv.b[d];
            if (perfect) {
                require(validate_acyclic(V, X).ok, Err::Internal, "search produced cyclic field");
                return V;
            }
            // Cancel a critical pair connected by one V-path, in a dimension
            // pair with excess on both ends.
            bool cancelled = false;
            for (int p = 1; p <= 3 && !cancelled; ++p) {
                if (cs.counts[p] <= bv.b[p] || cs.counts[p - 1] <= bv.b[p - 1]) continue;
                for (CellId tau : cs.cells[p]) {
                    CellId pick{};
                    for (CellId sigma : cs.cells[p - 1]) {
                        try {
                            V = cancel_critical_pair(V, sigma, tau, X);
                            pick = sigma;
                            break;
                        } catch (const Error& e) {
                            if (e.code() != Err::NoPath && e.code() != Err::MultiplePaths) throw;
                        }
                    }
                    if (pick.valid()) {
                        cancelled = true;
                        break;
                    }
                }
            }
            if (!cancelled) break;
        }
    }
    fail(Err::SearchExhausted, "no perfect field found for " + std::to_string(max_retries) +
                                   " retries from seed " + std::to_string(seed));
}

namespace {

// One randomized attempt: spanning forest from the critical vertices over
// non-critical edges (pairing each discovered vertex with its discovery
// edge), then dual growth from the critical 2-cells (pairing each discovered
// 2-cell with its entry edge).  Greedy, so it can pocket itself; the caller
// retries with other seeds.
GradientField prescribed_matching_attempt(const Complex& X, const std::set<CellId>& crit,
                                          std::mt19937_64& rng) {
    GradientField V;
    // Random spanning tree, one frontier edge at a time, so the stars of the
    // roots are not consumed wholesale.
    std::set<CellId> seen;
    for (CellId v : X.cells(0))
        if (crit.count(v)) seen.insert(v);
    while (true) {
        std::vector<std::pair<CellId, CellId>> frontier;  // (new vertex, edge)
        for (CellId e : X.cells(1)) {
            if (crit.count(e) || V.paired(e)) continue;
            const auto& vs = X.cell(e).vertices;
            bool s0 = seen.count(vs[0]), s1 = seen.count(vs[1]);
            if (s0 == s1) continue;
            frontier.push_back({s0 ? vs[1] : vs[0], e});
        }
        if (frontier.empty()) break;
        auto [w, e] = frontier[std::uniform_int_distribution<std::size_t>(
            0, frontier.size() - 1)(rng)];
        V.insert(w, e);
        seen.insert(w);
    }
    for (CellId v : X.cells(0))
        require(seen.count(v) > 0, Err::PairingConflict,
                "vertex unreachable through non-critical edges");

    // Dual growth, same one-step-at-a-time policy.
    std::set<CellId> seen2;
    for (CellId f : X.cells(2))
        if (crit.count(f)) seen2.insert(f);
    while (true) {
        std::vector<std::pair<CellId, CellId>> frontier;  // (new 2-cell, entry edge)
        for (CellId e : X.cells(1)) {
            if (crit.count(e) || V.paired(e)) continue;
            std::vector<CellId> cof;
            for (CellId g : X.cofacets(e))
                if (g.dim == 2) cof.push_back(g);
            for (CellId g : cof) {
                if (seen2.count(g) || crit.count(g) || V.paired(g)) continue;
                bool from_seen = false;
                for (CellId h : cof) from_seen |= (h != g && seen2.count(h));
                if (from_seen) frontier.push_back({g, e});
            }
        }
        if (frontier.empty()) break;
        auto [g, e] = frontier[std::uniform_int_distribution<std::size_t>(
            0, frontier.size() - 1)(rng)];
        V.insert(e, g);
        seen2.insert(g);
    }
    for (CellId f : X.cells(2))
        require(seen2.count(f) > 0, Err::PairingConflict, "2-cell unreachable in the dual walk");
    for (CellId e : X.cells(1))
        require(crit.count(e) || V.paired(e), Err::PairingConflict,
                "edge left unpaired by the prescribed-critical matching");
    require(validate_acyclic(V, X).ok, Err::Internal, "prescribed matching is cyclic");
    return V;
}

}  // namespace

GradientField matching_with_critical_set(const Complex& X, const std::vector<CellId>& criticals) {
    std::set<CellId> crit(criticals.begin(), criticals.end());
    std::mt19937_64 rng(0xC0FFEE);
    for (int attempt = 0; attempt < 512; ++attempt) {
        try {
            return prescribed_matching_attempt(X, crit, rng);
        } catch (const Error& e) {
            if (e.code() != Err::PairingConflict) throw;
        }
    }
    fail(Err::PairingConflict, "no acyclic matching with the prescribed critical set found");
}

SpherePatch figure_sphere_with_field() {
    // A 13-vertex triangulated 2-sphere: a 4-vertex fan around v9, a drum,
    // and a fan cap around v3, containing the named cells of the worked
    // cone-extension example.
    std::vector<std::vector<std::int32_t>> tris = {
        // fan around v9 over the ring (v1, v2, v8, v12)
        {9, 1, 2},
        {9, 2, 8},
        {9, 8, 12},
        {9, 12, 1},
        // drum between ring (v1, v2, v8, v12) and ring (v0, v3, v4, v7, v5, v6, v10, v11)
        {1, 0, 3},
        {2, 3, 4},
        {8, 4, 7},
        {8, 7, 5},
        {12, 5, 6},
        {12, 6, 10},
        {12, 10, 11},
        {12, 11, 0},
        {1, 2, 3},
        {2, 8, 4},
        {8, 12, 5},
        {12, 1, 0},
        // cap fanned from v3
        {3, 4, 7},
        {3, 7, 5},
        {3, 5, 6},
        {3, 6, 10},
        {3, 10, 11},
        {3, 11, 0},
    };
    std::map<std::int32_t, std::string> names;
    for (int i = 0; i < 13; ++i) names[i] = "v" + std::to_string(i);
    Complex X = simplicial_from_tops(tris, names);

    SpherePatch out;
    for (int i = 0; i < 13; ++i) out.vertex[i] = CellId{i, 0};
    auto v = [&](int i) { return out.vertex[i]; };
    auto edge = [&](int a, int b) { return X.find_simplex({v(a), v(b)}); };
    auto tri = [&](int a, int b, int c) { return X.find_simplex({v(a), v(b), v(c)}); };
    std::vector<CellId> crit = {v(9),          edge(1, 9),    edge(5, 6),     edge(8, 12),
                                tri(0, 1, 3),  tri(2, 8, 9),  tri(3, 4, 7),   tri(10, 11, 12)};
    for (CellId c : crit) require(c.valid(), Err::Internal, "figure sphere missing a named cell");
    out.field = matching_with_critical_set(X, crit);
    out.complex = std::move(X);
    return out;
}

}  // namespace dmt
