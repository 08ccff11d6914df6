#include "dmt/subdivision.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace dmt {

std::map<CellId, std::vector<CellId>> SubdivisionTrace::old_to_new() const {
    std::map<CellId, std::vector<CellId>> direct;
    for (const Step& s : steps) {
        for (const Split& sp : s.splits) {
            std::vector<CellId> pieces{sp.piece_a, sp.piece_b};
            if (sp.waist.valid()) pieces.push_back(sp.waist);
            direct[sp.old_cell] = pieces;
        }
        for (const Refit& r : s.refits) direct[r.old_cell] = {r.new_cell};
    }
    // Expand transitively so each replaced cell maps to final-complex cells.
    std::map<CellId, std::vector<CellId>> out;
    std::function<void(CellId, std::vector<CellId>&)> expand = [&](CellId c,
                                                                   std::vector<CellId>& acc) {
        auto it = direct.find(c);
        if (it == direct.end()) {
            acc.push_back(c);
            return;
        }
        for (CellId p : it->second) expand(p, acc);
    };
    for (auto& [old, pieces] : direct) {
        (void)pieces;
        std::vector<CellId> acc;
        expand(old, acc);
        std::sort(acc.begin(), acc.end());
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
        out[old] = acc;
    }
    return out;
}

void SubdivisionTrace::append(SubdivisionTrace&& other) {
    for (auto& s : other.steps) steps.push_back(std::move(s));
}

ComplexBuilder::ComplexBuilder(const Complex& X) : table_(X.table()), labels_(X.labels()) {
    cofacets_.assign(table_.size(), {});
    for (const Cell& c : table_) {
        if (!c.alive) continue;
        for (CellId f : c.facets) cofacets_[f.index].push_back(c.id);
        if (c.simplex) simplex_of_[c.vertices] = c.id;
    }
}

bool ComplexBuilder::alive(CellId c) const {
    return c.index >= 0 && c.index < static_cast<std::int32_t>(table_.size()) &&
           table_[c.index].alive && table_[c.index].id == c;
}

const Cell& ComplexBuilder::cell(CellId c) const {
    require(alive(c), Err::UnknownCell, "builder: no such cell " + std::to_string(c.index));
    return table_[c.index];
}

std::vector<CellId> ComplexBuilder::cofacets(CellId c) const {
    std::vector<CellId> out;
    for (CellId up : cofacets_[c.index])
        if (alive(up)) out.push_back(up);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void ComplexBuilder::wire(CellId c) {
    for (CellId f : table_[c.index].facets) cofacets_[f.index].push_back(c);
}

CellId ComplexBuilder::add_vertex() {
    Cell c;
    c.id = CellId{static_cast<std::int32_t>(table_.size()), 0};
    c.vertices = {c.id};
    table_.push_back(c);
    cofacets_.emplace_back();
    return table_.back().id;
}

CellId ComplexBuilder::add_cell(int dim, std::vector<CellId> facets,
                                std::vector<std::int8_t> signs, bool simplex) {
    Cell c;
    c.id = CellId{static_cast<std::int32_t>(table_.size()), static_cast<std::int8_t>(dim)};
    c.facets = std::move(facets);
    c.signs = std::move(signs);
    c.simplex = simplex;
    std::set<CellId> vs;
    for (CellId f : c.facets) {
        require(alive(f) && f.dim == dim - 1, Err::DanglingFace, "builder facet invalid");
        for (CellId v : table_[f.index].vertices) vs.insert(v);
    }
    c.vertices.assign(vs.begin(), vs.end());
    if (simplex) simplex_of_[c.vertices] = c.id;
    table_.push_back(c);
    cofacets_.emplace_back();
    wire(c.id);
    return table_.back().id;
}

CellId ComplexBuilder::add_simplex_by_vertices(const std::vector<CellId>& verts) {
    std::vector<CellId> vs = verts;
    std::sort(vs.begin(), vs.end());
    if (vs.size() == 1) return vs[0];
    std::vector<CellId> facets;
    std::vector<std::int8_t> signs;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::vector<CellId> fv = vs;
        fv.erase(fv.begin() + i);
        CellId found{};
        if (fv.size() == 1) {
            found = fv[0];
        } else {
            auto it = simplex_of_.find(fv);
            if (it != simplex_of_.end() && alive(it->second)) found = it->second;
        }
        require(found.valid(), Err::DanglingFace, "missing facet simplex while subdividing");
        facets.push_back(found);
        signs.push_back(i % 2 ? -1 : 1);
    }
    return add_cell(int(vs.size()) - 1, std::move(facets), std::move(signs), true);
}

void ComplexBuilder::kill(CellId c) {
    require(alive(c), Err::UnknownCell, "builder: killing dead cell");
    if (table_[c.index].simplex) simplex_of_.erase(table_[c.index].vertices);
    table_[c.index].alive = false;
}

SubdivisionTrace::Step ComplexBuilder::bisect_edge(CellId e) {
    require(alive(e) && e.dim == 1, Err::NotAnEdge, "bisect_edge target is not an edge");
    const Cell ec = cell(e);
    require(ec.vertices.size() == 2, Err::NotAnEdge, "edge without two distinct endpoints");
    CellId a = ec.vertices[0], b = ec.vertices[1];

    // All alive cells with e in the closure, grouped by dimension.
    std::set<CellId> affected;
    std::deque<CellId> work{e};
    while (!work.empty()) {
        CellId c = work.front();
        work.pop_front();
        if (!affected.insert(c).second) continue;
        for (CellId up : cofacets(c)) work.push_back(up);
    }

    SubdivisionTrace::Step step;
    step.kind = "bisect_edge";
    step.target = e;

    CellId m = add_vertex();
    step.new_vertex = m;

    // Pieces per replaced cell: a-side, b-side, waist.  The midpoint acts as
    // the waist of the edge itself.
    std::map<CellId, SubdivisionTrace::Split> split_of;
    std::map<CellId, CellId> refit_of;

    CellId e_a = add_simplex_by_vertices({a, m});
    CellId e_b = add_simplex_by_vertices({m, b});
    split_of[e] = {e, e_a, e_b, m};
    step.splits.push_back(split_of[e]);

    std::vector<CellId> todo(affected.begin(), affected.end());
    std::sort(todo.begin(), todo.end(), [](CellId x, CellId y) {
        return x.dim != y.dim ? x.dim < y.dim : x.index < y.index;
    });

    for (CellId cid : todo) {
        if (cid == e) continue;
        const Cell c = cell(cid);  // copy, table may reallocate
        if (c.simplex) {
            std::vector<CellId> va, vb, vw;
            for (CellId v : c.vertices) {
                if (v != b) va.push_back(v);
                if (v != a) vb.push_back(v);
                if (v != a && v != b) vw.push_back(v);
            }
            va.push_back(m);
            vb.push_back(m);
            vw.push_back(m);
            CellId w = add_simplex_by_vertices(vw);
            CellId ca = add_simplex_by_vertices(va);
            CellId cb = add_simplex_by_vertices(vb);
            split_of[cid] = {cid, ca, cb, w};
            step.splits.push_back(split_of[cid]);
        } else {
            // Regular CW cell: keep the shape, refresh the facet list.
            std::vector<CellId> facets;
            std::vector<std::int8_t> signs;
            for (std::size_t i = 0; i < c.facets.size(); ++i) {
                CellId f = c.facets[i];
                auto sp = split_of.find(f);
                if (sp != split_of.end()) {
                    facets.push_back(sp->second.piece_a);
                    signs.push_back(c.signs[i]);
                    facets.push_back(sp->second.piece_b);
                    signs.push_back(c.signs[i]);
                } else {
                    auto rf = refit_of.find(f);
                    facets.push_back(rf == refit_of.end() ? f : rf->second);
                    signs.push_back(c.signs[i]);
                }
            }
            CellId nc = add_cell(int(c.id.dim), std::move(facets), std::move(signs), false);
            refit_of[cid] = nc;
            step.refits.push_back({cid, nc});
        }
    }
    for (CellId cid : todo) kill(cid);
    return step;
}

std::vector<CellId> ComplexBuilder::boundary_cycle_vertices(const Cell& c) const {
    // Order the boundary edges of a 2-cell into a single cycle; returns the
    // vertex sequence (length = number of edges).
    require(c.id.dim == 2, Err::Internal, "boundary cycle of a non-2-cell");
    std::map<CellId, std::vector<CellId>> at_vertex;
    for (CellId f : c.facets) {
        const Cell& fe = table_[f.index];
        require(fe.vertices.size() == 2, Err::Internal, "2-cell facet is not an edge");
        at_vertex[fe.vertices[0]].push_back(f);
        at_vertex[fe.vertices[1]].push_back(f);
    }
    for (auto& [v, es] : at_vertex)
        require(es.size() == 2, Err::Internal, "2-cell boundary is not a single cycle");
    std::vector<CellId> seq;
    CellId e0 = c.facets.front();
    CellId v = table_[e0.index].vertices[0];
    CellId prev = e0;
    for (std::size_t i = 0; i < c.facets.size(); ++i) {
        seq.push_back(v);
        const auto& es = at_vertex[v];
        CellId next = es[0] == prev ? es[1] : es[0];
        const Cell& ne = table_[next.index];
        v = ne.vertices[0] == v ? ne.vertices[1] : ne.vertices[0];
        prev = next;
    }
    require(v == seq.front(), Err::Internal, "2-cell boundary does not close up");
    return seq;
}

SubdivisionTrace::Step ComplexBuilder::bisect_2cell(CellId cid, CellId u, CellId v) {
    require(alive(cid) && cid.dim == 2, Err::PreconditionFailed, "bisect_2cell needs a 2-cell");
    const Cell c = cell(cid);
    require(u != v && u.dim == 0 && v.dim == 0, Err::ChordEndpointsInvalid,
            "chord endpoints must be two distinct vertices");
    require(!c.simplex, Err::ChordEndpointsInvalid,
            "triangles admit no interior chord between vertices; bisect boundary edges instead");

    std::vector<CellId> cyc = boundary_cycle_vertices(c);
    auto iu = std::find(cyc.begin(), cyc.end(), u);
    auto iv = std::find(cyc.begin(), cyc.end(), v);
    require(iu != cyc.end() && iv != cyc.end(), Err::ChordEndpointsInvalid,
            "chord endpoint not on the cell boundary");
    std::size_t pu = iu - cyc.begin(), pv = iv - cyc.begin();
    std::size_t n = cyc.size();
    std::size_t gap = (pv + n - pu) % n;
    require(gap >= 2 && gap <= n - 2, Err::ChordEndpointsInvalid,
            "chord endpoints are adjacent on the boundary");

    // Edge between consecutive cycle vertices, with its incidence sign in c.
    auto edge_between = [&](CellId x, CellId y) -> std::pair<CellId, std::int8_t> {
        for (std::size_t i = 0; i < c.facets.size(); ++i) {
            const Cell& fe = table_[c.facets[i].index];
            if ((fe.vertices[0] == x && fe.vertices[1] == y) ||
                (fe.vertices[0] == y && fe.vertices[1] == x))
                return {c.facets[i], c.signs[i]};
        }
        fail(Err::Internal, "boundary edge lookup failed");
    };

    CellId chord = add_simplex_by_vertices({u, v});
    const Cell& ch = table_[chord.index];
    // d(chord) = +max -min under the simplex convention.
    CellId chord_min = ch.vertices[0];

    auto arc = [&](std::size_t from, std::size_t to) {
        std::vector<CellId> facets;
        std::vector<std::int8_t> signs;
        for (std::size_t i = from; i != to; i = (i + 1) % n) {
            auto [f, s] = edge_between(cyc[i], cyc[(i + 1) % n]);
            facets.push_back(f);
            signs.push_back(s);
        }
        return std::make_pair(facets, signs);
    };

    // Boundary of piece 1 = arc(u..v) + t * chord with t killing the net
    // endpoint sum; the arc's signed boundary telescopes to (v - u) times the
    // traversal direction of c's cycle, so recompute t from the actual sum.
    auto close_with_chord = [&](std::vector<CellId> facets, std::vector<std::int8_t> signs) {
        std::map<CellId, int> sum;
        for (std::size_t i = 0; i < facets.size(); ++i) {
            const Cell& fe = table_[facets[i].index];
            for (std::size_t k = 0; k < fe.facets.size(); ++k)
                sum[fe.facets[k]] += int(signs[i]) * int(fe.signs[k]);
        }
        int su = sum.count(u) ? sum[u] : 0;
        require(su == 1 || su == -1, Err::Internal, "arc boundary not reduced");
        // chord contributes -t at chord_min, +t at the other end.
        std::int8_t t = (chord_min == u) ? static_cast<std::int8_t>(su)
                                         : static_cast<std::int8_t>(-su);
        facets.push_back(chord);
        signs.push_back(t);
        return add_cell(2, std::move(facets), std::move(signs), false);
    };

    auto [f1, s1] = arc(pu, pv);
    auto [f2, s2] = arc(pv, pu);
    CellId p1 = close_with_chord(std::move(f1), std::move(s1));
    CellId p2 = close_with_chord(std::move(f2), std::move(s2));

    SubdivisionTrace::Step step;
    step.kind = "bisect_2cell";
    step.target = cid;
    step.chord = chord;
    step.splits.push_back({cid, p1, p2, chord});

    // Cofaces keep their shape; the facet list swaps in the two pieces.
    for (CellId up : cofacets(cid)) {
        const Cell t3 = cell(up);
        std::vector<CellId> facets;
        std::vector<std::int8_t> signs;
        for (std::size_t i = 0; i < t3.facets.size(); ++i) {
            if (t3.facets[i] == cid) {
                facets.push_back(p1);
                signs.push_back(t3.signs[i]);
                facets.push_back(p2);
                signs.push_back(t3.signs[i]);
            } else {
                facets.push_back(t3.facets[i]);
                signs.push_back(t3.signs[i]);
            }
        }
        CellId nc = add_cell(3, std::move(facets), std::move(signs), false);
        step.refits.push_back({up, nc});
        kill(up);
    }
    kill(cid);
    return step;
}

Complex ComplexBuilder::freeze() const { return Complex::from_cells(table_, labels_); }

std::pair<Complex, SubdivisionTrace> bisect_edge(const Complex& X, CellId e) {
    ComplexBuilder b(X);
    SubdivisionTrace tr;
    tr.steps.push_back(b.bisect_edge(e));
    return {b.freeze(), std::move(tr)};
}

std::pair<Complex, SubdivisionTrace> bisect_2cell(const Complex& X, CellId c, CellId entry_vertex,
                                                  CellId exit_vertex) {
    ComplexBuilder b(X);
    SubdivisionTrace tr;
    tr.steps.push_back(b.bisect_2cell(c, entry_vertex, exit_vertex));
    return {b.freeze(), std::move(tr)};
}

}  // namespace dmt
