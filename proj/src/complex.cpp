#include "dmt/complex.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace dmt {

const char* err_name(Err e) {
    switch (e) {
        case Err::DanglingFace: return "DanglingFace";
        case Err::SignError: return "SignError";
        case Err::DuplicateCell: return "DuplicateCell";
        case Err::UnknownCell: return "UnknownCell";
        case Err::NotAnEdge: return "NotAnEdge";
        case Err::ChordEndpointsInvalid: return "ChordEndpointsInvalid";
        case Err::BoundaryMismatch: return "BoundaryMismatch";
        case Err::NonOrientable: return "NonOrientable";
        case Err::InvalidFunction: return "InvalidFunction";
        case Err::CyclicField: return "CyclicField";
        case Err::NoPath: return "NoPath";
        case Err::MultiplePaths: return "MultiplePaths";
        case Err::NotACycle: return "NotACycle";
        case Err::PathNotUnique: return "PathNotUnique";
        case Err::NotATorus: return "NotATorus";
        case Err::ClosureFailed: return "ClosureFailed";
        case Err::NotSeparable: return "NotSeparable";
        case Err::AmbiguousGrouping: return "AmbiguousGrouping";
        case Err::PreconditionFailed: return "PreconditionFailed";
        case Err::PairingConflict: return "PairingConflict";
        case Err::RepairLoopLimit: return "RepairLoopLimit";
        case Err::DisconnectedBoundary: return "DisconnectedBoundary";
        case Err::ChiNotTwo: return "ChiNotTwo";
        case Err::NotASphere: return "NotASphere";
        case Err::NoCollapse: return "NoCollapse";
        case Err::BoundaryCriticalCell: return "BoundaryCriticalCell";
        case Err::InwardArrow: return "InwardArrow";
        case Err::GluingObstructed: return "GluingObstructed";
        case Err::SearchExhausted: return "SearchExhausted";
        case Err::ParseError: return "ParseError";
        case Err::Internal: return "Internal";
    }
    return "Unknown";
}

std::string cell_str(const Complex& X, CellId c) {
    std::ostringstream os;
    os << "(" << int(c.dim) << "-cell #" << c.index;
    if (X.contains(c)) {
        const Cell& cc = X.cell(c);
        if (!cc.vertices.empty()) {
            os << " [";
            for (std::size_t i = 0; i < cc.vertices.size(); ++i)
                os << (i ? "," : "") << cc.vertices[i].index;
            os << "]";
        }
    }
    os << ")";
    return os.str();
}

Complex Complex::from_cells(std::vector<Cell> table, std::map<std::int32_t, std::string> labels) {
    Complex X;
    X.table_ = std::move(table);
    X.labels_ = std::move(labels);
    X.build_indices(true);
    return X;
}

void Complex::build_indices(bool validate) {
    n_alive_ = 0;
    top_dim_ = 0;
    for (auto& v : by_dim_) v.clear();
    simplex_index_.clear();
    cofacets_.assign(table_.size(), {});

    for (std::size_t i = 0; i < table_.size(); ++i) {
        Cell& c = table_[i];
        if (!c.alive) continue;
        require(c.id.index == static_cast<std::int32_t>(i), Err::Internal, "id/slot mismatch");
        require(c.id.dim >= 0 && c.id.dim <= 3, Err::Internal, "cell dimension out of range");
        ++n_alive_;
        top_dim_ = std::max(top_dim_, int(c.id.dim));
        by_dim_[c.id.dim].push_back(c.id);
        if (validate) {
            require(c.facets.size() == c.signs.size(), Err::Internal, "facet/sign size mismatch");
            require(c.id.dim == 0 ? c.facets.empty() : c.facets.size() >= 2,
                    c.id.dim == 0 ? Err::Internal : Err::DanglingFace,
                    "non-vertex cell with fewer than 2 facets: " + std::to_string(c.id.index));
            for (CellId f : c.facets) {
                require(f.index >= 0 && f.index < static_cast<std::int32_t>(table_.size()) &&
                            table_[f.index].alive && table_[f.index].id == f,
                        Err::DanglingFace, "facet does not resolve: " + std::to_string(f.index));
                require(f.dim == c.id.dim - 1, Err::DanglingFace, "facet grading violated");
            }
        }
    }
    for (auto& v : by_dim_) std::sort(v.begin(), v.end());

    for (std::size_t i = 0; i < table_.size(); ++i) {
        const Cell& c = table_[i];
        if (!c.alive) continue;
        for (CellId f : c.facets) cofacets_[f.index].push_back(c.id);
    }
    for (auto& v : cofacets_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    // Vertex lists: vertices are their own singleton; everything else is the
    // union over facets.  Table order is not graded, so do a dim sweep.
    for (int d = 0; d <= top_dim_; ++d) {
        for (CellId id : by_dim_[d]) {
            Cell& c = table_[id.index];
            if (d == 0) {
                c.vertices = {id};
                continue;
            }
            if (!c.vertices.empty() && !validate) continue;
            std::set<CellId> vs;
            for (CellId f : c.facets)
                for (CellId v : table_[f.index].vertices) vs.insert(v);
            c.vertices.assign(vs.begin(), vs.end());
            if (c.simplex)
                require(c.vertices.size() == std::size_t(d) + 1, Err::Internal,
                        "simplex flag on a cell without dim+1 vertices");
        }
    }

    for (std::size_t i = 0; i < table_.size(); ++i) {
        const Cell& c = table_[i];
        if (!c.alive || !c.simplex) continue;
        auto [it, fresh] = simplex_index_.emplace(c.vertices, c.id);
        require(fresh, Err::DuplicateCell,
                "two simplices share a vertex set: " + std::to_string(it->second.index) + ", " +
                    std::to_string(c.id.index));
    }

    if (validate) {
        // Signed d(d(c)) = 0 cell by cell.
        for (std::size_t i = 0; i < table_.size(); ++i) {
            const Cell& c = table_[i];
            if (!c.alive || c.id.dim < 2) continue;
            std::map<CellId, int> acc;
            for (std::size_t k = 0; k < c.facets.size(); ++k) {
                const Cell& f = table_[c.facets[k].index];
                for (std::size_t l = 0; l < f.facets.size(); ++l)
                    acc[f.facets[l]] += int(c.signs[k]) * int(f.signs[l]);
            }
            for (auto& [g, s] : acc)
                require(s == 0, Err::SignError,
                        "dd != 0 at cell " + std::to_string(c.id.index) + " through " +
                            std::to_string(g.index));
        }
        // Edges with signed endpoints: one -1, one +1 (regularity of edges).
        for (CellId e : by_dim_[1]) {
            const Cell& c = table_[e.index];
            if (c.facets.size() == 2)
                require(int(c.signs[0]) + int(c.signs[1]) == 0, Err::SignError,
                        "edge without opposite endpoint signs: " + std::to_string(e.index));
        }
    }
}

std::vector<CellId> Complex::all_cells() const {
    std::vector<CellId> out;
    out.reserve(n_alive_);
    for (const Cell& c : table_)
        if (c.alive) out.push_back(c.id);
    std::sort(out.begin(), out.end(), [](CellId a, CellId b) { return a.index < b.index; });
    return out;
}

bool Complex::contains(CellId c) const {
    return c.index >= 0 && c.index < static_cast<std::int32_t>(table_.size()) &&
           table_[c.index].alive && table_[c.index].id == c;
}

const Cell& Complex::cell(CellId c) const {
    require(contains(c), Err::UnknownCell, "no such cell: " + std::to_string(c.index));
    return table_[c.index];
}

const std::vector<CellId>& Complex::cofacets(CellId c) const {
    require(contains(c), Err::UnknownCell, "no such cell: " + std::to_string(c.index));
    return cofacets_[c.index];
}

CellId Complex::find_simplex(const std::vector<CellId>& verts) const {
    std::vector<CellId> v = verts;
    std::sort(v.begin(), v.end());
    auto it = simplex_index_.find(v);
    return it == simplex_index_.end() ? CellId{} : it->second;
}

bool Region::contains(CellId c) const {
    return std::binary_search(cells.begin(), cells.end(), c);
}

std::vector<CellId> Region::of_dim(int d) const {
    std::vector<CellId> out;
    for (CellId c : cells)
        if (c.dim == d) out.push_back(c);
    return out;
}

Region make_region(const Complex& X, std::vector<CellId> cells, bool close_down) {
    if (close_down) cells = closure_of(X, cells);
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    Region R{&X, std::move(cells)};
    for (CellId c : R.cells) {
        require(X.contains(c), Err::UnknownCell, "region cell not in parent");
        for (CellId f : X.cell(c).facets)
            require(R.contains(f), Err::Internal, "region not closed under faces");
    }
    return R;
}

std::vector<CellId> closure_of(const Complex& X, const std::vector<CellId>& seed) {
    std::set<CellId> out;
    std::deque<CellId> work(seed.begin(), seed.end());
    while (!work.empty()) {
        CellId c = work.front();
        work.pop_front();
        if (!out.insert(c).second) continue;
        for (CellId f : X.cell(c).facets) work.push_back(f);
    }
    return {out.begin(), out.end()};
}

Region closure(const Complex& X, const std::vector<CellId>& seed) {
    return Region{&X, closure_of(X, seed)};
}

Region star(const Complex& X, CellId c) { return star_of_set(X, {c}); }

Region star_of_set(const Complex& X, const std::vector<CellId>& seed) {
    // Smallest subcomplex containing every coface of a seed cell.
    std::set<CellId> cof;
    std::deque<CellId> work(seed.begin(), seed.end());
    while (!work.empty()) {
        CellId c = work.front();
        work.pop_front();
        if (!cof.insert(c).second) continue;
        for (CellId up : X.cofacets(c)) work.push_back(up);
    }
    return closure(X, std::vector<CellId>(cof.begin(), cof.end()));
}

std::vector<CellId> faces_of(const Complex& X, CellId c) {
    auto cl = closure_of(X, {c});
    std::erase(cl, c);
    return cl;
}

Region link_of_vertex(const Complex& X, CellId v) {
    require(v.dim == 0, Err::UnknownCell, "link_of_vertex needs a vertex");
    std::vector<CellId> out;
    Region st = star(X, v);
    for (CellId c : st.cells) {
        const Cell& cc = X.cell(c);
        require(cc.simplex, Err::Internal, "link computation requires simplicial cells");
        if (std::find(cc.vertices.begin(), cc.vertices.end(), v) != cc.vertices.end()) continue;
        out.push_back(c);
    }
    return Region{&X, std::move(out)};
}

std::int64_t euler_characteristic(const Complex& X) {
    std::int64_t chi = 0;
    for (int d = 0; d <= 3; ++d) chi += (d % 2 ? -1 : 1) * std::int64_t(X.cells(d).size());
    return chi;
}

std::int64_t euler_characteristic(const Region& R) {
    std::int64_t chi = 0;
    for (CellId c : R.cells) chi += (c.dim % 2 ? -1 : 1);
    return chi;
}

namespace {

// Cofaces of `c` of the given dimension inside the restricted cell set,
// collected transitively.
std::vector<CellId> cofaces_in(const Complex& X, CellId c, const Region& R, int dim) {
    std::set<CellId> seen;
    std::deque<CellId> work{c};
    std::vector<CellId> out;
    while (!work.empty()) {
        CellId cur = work.front();
        work.pop_front();
        if (!seen.insert(cur).second) continue;
        if (cur.dim == dim && cur != c && R.contains(cur)) out.push_back(cur);
        if (cur.dim < dim)
            for (CellId up : X.cofacets(cur)) work.push_back(up);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Connectivity of a set of cells through shared facets within the set.
bool connected_through_facets(const Complex& X, const std::vector<CellId>& cells) {
    if (cells.empty()) return false;
    std::set<CellId> inside(cells.begin(), cells.end());
    std::set<CellId> seen;
    std::deque<CellId> work{cells.front()};
    while (!work.empty()) {
        CellId c = work.front();
        work.pop_front();
        if (!seen.insert(c).second) continue;
        for (CellId f : X.cell(c).facets)
            for (CellId up : X.cofacets(f))
                if (inside.count(up) && !seen.count(up)) work.push_back(up);
        for (CellId up : X.cofacets(c))
            if (inside.count(up) && !seen.count(up)) work.push_back(up);
        for (CellId f : X.cell(c).facets)
            if (inside.count(f) && !seen.count(f)) work.push_back(f);
    }
    return seen.size() >= inside.size();
}

}  // namespace

ManifoldReport check_closed_3manifold(const Complex& X) {
    Region all{&X, X.all_cells()};
    std::sort(all.cells.begin(), all.cells.end());
    ManifoldReport rep;
    for (CellId f : X.cells(2))
        if (cofaces_in(X, f, all, 3).size() != 2) {
            rep.ok = false;
            rep.bad_two_cells.push_back(f);
        }
    // Edge links: the 3-cofaces around an edge must close into a single cycle
    // through the edge's 2-cofaces.
    for (CellId e : X.cells(1)) {
        auto tris = cofaces_in(X, e, all, 2);
        auto tets = cofaces_in(X, e, all, 3);
        bool good = !tets.empty() && tris.size() == tets.size();
        if (good) {
            std::map<CellId, int> tri_use;
            for (CellId t : tets) {
                int found = 0;
                for (CellId f : X.cell(t).facets)
                    if (std::find(tris.begin(), tris.end(), f) != tris.end()) {
                        ++tri_use[f];
                        ++found;
                    }
                if (found != 2) good = false;
            }
            for (CellId f : tris)
                if (tri_use[f] != 2) good = false;
            if (good) good = connected_through_facets(X, tets);
        }
        if (!good) {
            rep.ok = false;
            rep.bad_edges.push_back(e);
        }
    }
    // Vertex links: cells of the link biject with star cells through the
    // vertex one dimension up, so chi(link) = E_v - F_v + T_v; together with
    // the edge condition and connectivity this certifies a 2-sphere link.
    for (CellId v : X.cells(0)) {
        auto edges = cofaces_in(X, v, all, 1);
        auto faces = cofaces_in(X, v, all, 2);
        auto tets = cofaces_in(X, v, all, 3);
        std::int64_t chi = std::int64_t(edges.size()) - std::int64_t(faces.size()) +
                           std::int64_t(tets.size());
        bool good = chi == 2 && !tets.empty() && connected_through_facets(X, tets);
        if (!good) {
            rep.ok = false;
            rep.bad_vertices.push_back(v);
        }
    }
    return rep;
}

ManifoldReport check_3manifold_with_boundary(const Region& R) {
    const Complex& X = *R.parent;
    ManifoldReport rep;
    for (CellId c : R.cells) {
        if (c.dim != 2) continue;
        std::size_t n = cofaces_in(X, c, R, 3).size();
        if (n != 1 && n != 2) {
            rep.ok = false;
            rep.bad_two_cells.push_back(c);
        }
    }
    for (CellId e : R.cells) {
        if (e.dim != 1) continue;
        auto tris = cofaces_in(X, e, R, 2);
        auto tets = cofaces_in(X, e, R, 3);
        if (tets.empty()) {
            // Edge on no 3-cell: not part of a pure 3-dim region.
            rep.ok = false;
            rep.bad_edges.push_back(e);
            continue;
        }
        // Circle: #tris == #tets; arc: #tris == #tets + 1.  Either way the
        // tets must connect through the tris.
        bool circle = tris.size() == tets.size();
        bool arc = tris.size() == tets.size() + 1;
        bool good = (circle || arc) && connected_through_facets(X, tets);
        if (good) {
            // Every 2-coface is used by at most two 3-cofaces; boundary uses
            // exactly one on an arc.
            int dangling = 0;
            for (CellId f : tris) {
                std::size_t used = 0;
                for (CellId t : tets)
                    for (CellId ff : X.cell(t).facets)
                        if (ff == f) ++used;
                if (used == 1) ++dangling;
                if (used > 2) good = false;
            }
            if (circle && dangling != 0) good = false;
            if (arc && dangling != 2) good = false;
        }
        if (!good) {
            rep.ok = false;
            rep.bad_edges.push_back(e);
        }
    }
    for (CellId v : R.cells) {
        if (v.dim != 0) continue;
        // Link within R: sphere (chi 2, interior) or disk (chi 1, boundary),
        // connected; chi via the star-cell bijection.
        auto edges = cofaces_in(X, v, R, 1);
        auto faces = cofaces_in(X, v, R, 2);
        auto tets = cofaces_in(X, v, R, 3);
        std::int64_t chi = std::int64_t(edges.size()) - std::int64_t(faces.size()) +
                           std::int64_t(tets.size());
        bool good =
            (chi == 1 || chi == 2) && !tets.empty() && connected_through_facets(X, tets);
        if (!good) {
            rep.ok = false;
            rep.bad_vertices.push_back(v);
        }
    }
    return rep;
}

OrientationResult orient(const Complex& X) {
    OrientationResult res;
    std::map<CellId, std::int8_t> sgn;
    for (CellId t : X.cells(3)) {
        if (sgn.count(t)) continue;
        sgn[t] = 1;
        std::deque<CellId> work{t};
        std::map<CellId, std::pair<CellId, CellId>> via;  // child -> (parent, gate)
        while (!work.empty()) {
            CellId cur = work.front();
            work.pop_front();
            for (CellId f : X.cell(cur).facets) {
                int s_cur = 0;
                for (std::size_t i = 0; i < X.cell(cur).facets.size(); ++i)
                    if (X.cell(cur).facets[i] == f) s_cur = X.cell(cur).signs[i];
                for (CellId nb : X.cofacets(f)) {
                    if (nb == cur || nb.dim != 3) continue;
                    int s_nb = 0;
                    for (std::size_t i = 0; i < X.cell(nb).facets.size(); ++i)
                        if (X.cell(nb).facets[i] == f) s_nb = X.cell(nb).signs[i];
                    std::int8_t want = static_cast<std::int8_t>(-sgn[cur] * s_cur * s_nb);
                    auto it = sgn.find(nb);
                    if (it == sgn.end()) {
                        sgn[nb] = want;
                        via[nb] = {cur, f};
                        work.push_back(nb);
                    } else if (it->second != want) {
                        // Conflict: walk both tree paths up for a witness cycle.
                        std::vector<CellId> wa{cur}, wb{nb};
                        for (CellId x = cur; via.count(x);) {
                            x = via[x].first;
                            wa.push_back(x);
                        }
                        for (CellId x = nb; via.count(x);) {
                            x = via[x].first;
                            wb.push_back(x);
                        }
                        std::reverse(wa.begin(), wa.end());
                        std::reverse(wb.begin(), wb.end());
                        std::size_t common = 0;
                        while (common < wa.size() && common < wb.size() &&
                               wa[common] == wb[common])
                            ++common;
                        res.witness_cycle.assign(wa.begin() + (common ? common - 1 : 0), wa.end());
                        std::vector<CellId> back(wb.begin() + common, wb.end());
                        std::reverse(back.begin(), back.end());
                        res.witness_cycle.insert(res.witness_cycle.end(), back.begin(),
                                                 back.end());
                        res.ok = false;
                        return res;
                    }
                }
            }
        }
    }
    res.ok = true;
    res.signs = std::move(sgn);
    return res;
}

std::vector<CellId> frontier(const Region& R) {
    const Complex& X = *R.parent;
    std::vector<CellId> out;
    for (CellId c : R.cells) {
        bool outside = false;
        for (CellId up : X.cofacets(c))
            if (!R.contains(up)) {
                outside = true;
                break;
            }
        if (outside) out.push_back(c);
    }
    // Frontier is face-closed: close downward over the already-collected set.
    std::set<CellId> cl;
    std::deque<CellId> work(out.begin(), out.end());
    while (!work.empty()) {
        CellId c = work.front();
        work.pop_front();
        if (!cl.insert(c).second) continue;
        for (CellId f : X.cell(c).facets) work.push_back(f);
    }
    return {cl.begin(), cl.end()};
}

Region boundary_region(const Region& R) {
    const Complex& X = *R.parent;
    std::vector<CellId> seed;
    for (CellId c : R.cells) {
        if (c.dim != 2) continue;
        std::size_t n = 0;
        for (CellId up : X.cofacets(c))
            if (up.dim == 3 && R.contains(up)) ++n;
        if (n == 1) seed.push_back(c);
    }
    return closure(X, seed);
}

Complex extract_boundary(const Region& R) {
    Region B = boundary_region(R);
    const Complex& X = *R.parent;
    std::vector<Cell> table(X.capacity());
    for (std::int32_t i = 0; i < X.capacity(); ++i) {
        table[i].id = CellId{i, -1};
        table[i].alive = false;
    }
    for (CellId c : B.cells) {
        table[c.index] = X.cell(c);
    }
    return Complex::from_cells(std::move(table), X.labels());
}

Complex double_of_region(const Region& R) {
    const Complex& X = *R.parent;
    Region B = boundary_region(R);
    std::set<CellId> shared(B.cells.begin(), B.cells.end());

    std::int32_t off = X.capacity();
    std::vector<Cell> table(2 * off);
    for (std::int32_t i = 0; i < 2 * off; ++i) {
        table[i].id = CellId{i, -1};
        table[i].alive = false;
    }
    auto mirror = [&](CellId c) -> CellId {
        if (shared.count(c)) return c;
        return CellId{c.index + off, c.dim};
    };
    for (CellId c : R.cells) {
        table[c.index] = X.cell(c);
        if (shared.count(c)) continue;
        Cell m = X.cell(c);
        m.id = mirror(c);
        for (auto& f : m.facets) f = mirror(f);
        m.vertices.clear();
        // Mirror cells may repeat a vertex set (all vertices shared), so they
        // are kept as regular CW cells rather than vertex-identified simplices.
        m.simplex = false;
        table[m.id.index] = std::move(m);
    }
    try {
        return Complex::from_cells(std::move(table), {});
    } catch (const Error& e) {
        fail(Err::BoundaryMismatch, std::string("double of region inconsistent: ") + e.what());
    }
}

SurfaceReport surface_report(const Complex& S) {
    SurfaceReport rep;
    rep.euler = euler_characteristic(S);
    std::vector<CellId> two(S.cells(2).begin(), S.cells(2).end());
    rep.closed = !two.empty();
    for (CellId e : S.cells(1)) {
        std::size_t n = 0;
        for (CellId up : S.cofacets(e))
            if (up.dim == 2) ++n;
        if (n != 2) rep.closed = false;
    }
    rep.connected = connected_through_facets(S, two);
    // Orientability via 2-cell sign propagation across shared edges.
    std::map<CellId, int> sgn;
    rep.orientable = true;
    for (CellId t0 : two) {
        if (sgn.count(t0)) continue;
        sgn[t0] = 1;
        std::deque<CellId> work{t0};
        while (!work.empty() && rep.orientable) {
            CellId cur = work.front();
            work.pop_front();
            const Cell& cc = S.cell(cur);
            for (std::size_t i = 0; i < cc.facets.size(); ++i) {
                CellId e = cc.facets[i];
                for (CellId nb : S.cofacets(e)) {
                    if (nb == cur || nb.dim != 2) continue;
                    const Cell& nc = S.cell(nb);
                    int s_nb = 0;
                    for (std::size_t j = 0; j < nc.facets.size(); ++j)
                        if (nc.facets[j] == e) s_nb = nc.signs[j];
                    int want = -sgn[cur] * int(cc.signs[i]) * s_nb;
                    auto it = sgn.find(nb);
                    if (it == sgn.end()) {
                        sgn[nb] = want;
                        work.push_back(nb);
                    } else if (it->second != want) {
                        rep.orientable = false;
                    }
                }
            }
        }
    }
    if (rep.closed && rep.connected && rep.orientable) rep.genus = (2 - rep.euler) / 2;
    return rep;
}

Complex build_complex(const std::vector<CellDescriptor>& descriptors) {
    // Two passes: vertices get ids first (stable by label), then cells by
    // ascending dimension in descriptor order.
    std::map<std::int32_t, CellId> vertex_of_label;
    std::vector<Cell> table;
    auto mint = [&](int dim) {
        Cell c;
        c.id = CellId{static_cast<std::int32_t>(table.size()), static_cast<std::int8_t>(dim)};
        table.push_back(c);
        return c.id;
    };
    for (const auto& d : descriptors)
        for (std::int32_t lbl : d.vertex_labels)
            if (!vertex_of_label.count(lbl)) vertex_of_label[lbl] = mint(0);

    std::map<std::vector<CellId>, CellId> simplex_of;
    for (auto& [lbl, id] : vertex_of_label) simplex_of[{id}] = id;

    // Recursive simplex closure for vertex-list descriptors.  Facets are
    // resolved before minting: the recursion grows the table.
    std::function<CellId(std::vector<CellId>)> need_simplex = [&](std::vector<CellId> vs) {
        std::sort(vs.begin(), vs.end());
        auto it = simplex_of.find(vs);
        if (it != simplex_of.end()) return it->second;
        std::vector<CellId> facets;
        std::vector<std::int8_t> signs;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            std::vector<CellId> f = vs;
            f.erase(f.begin() + i);
            facets.push_back(need_simplex(f));
            signs.push_back(i % 2 ? -1 : 1);
        }
        CellId id = mint(int(vs.size()) - 1);
        table[id.index].vertices = vs;
        table[id.index].facets = std::move(facets);
        table[id.index].signs = std::move(signs);
        simplex_of[vs] = id;
        return id;
    };

    std::vector<CellId> by_descriptor(descriptors.size());
    std::vector<std::size_t> order(descriptors.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return descriptors[a].dim < descriptors[b].dim;
    });
    for (std::size_t idx : order) {
        const auto& d = descriptors[idx];
        if (!d.vertex_labels.empty()) {
            require(int(d.vertex_labels.size()) == d.dim + 1, Err::DanglingFace,
                    "descriptor vertex count does not match dim");
            std::vector<CellId> vs;
            for (auto lbl : d.vertex_labels) vs.push_back(vertex_of_label[lbl]);
            std::sort(vs.begin(), vs.end());
            require(std::unique(vs.begin(), vs.end()) == vs.end(), Err::DanglingFace,
                    "repeated vertex in simplex descriptor");
            by_descriptor[idx] = need_simplex(vs);
        } else {
            Cell c;
            c.id = CellId{static_cast<std::int32_t>(table.size()),
                          static_cast<std::int8_t>(d.dim)};
            c.simplex = false;
            for (auto& [ref, sign] : d.facets) {
                require(ref >= 0 && ref < static_cast<std::int32_t>(descriptors.size()) &&
                            by_descriptor[ref].valid(),
                        Err::DanglingFace, "facet descriptor does not resolve");
                c.facets.push_back(by_descriptor[ref]);
                c.signs.push_back(static_cast<std::int8_t>(sign));
            }
            table.push_back(c);
            by_descriptor[idx] = c.id;
        }
    }
    return Complex::from_cells(std::move(table));
}

}  // namespace dmt
