#pragma once

#include <string>
#include <vector>

#include "dmt/complex.hpp"

namespace dmt {

// Record of one local subdivision pass.  Simplicial cells split into an
// a-side piece, a b-side piece and a waist (the piece of one dimension lower
// sitting between them); CW cells are refitted: same shape, refreshed id and
// facet list.  The waist of the bisected edge itself is the midpoint vertex.
struct SubdivisionTrace {
    struct Split {
        CellId old_cell;
        CellId piece_a;
        CellId piece_b;
        CellId waist;
    };
    struct Refit {
        CellId old_cell;
        CellId new_cell;
    };
    struct Step {
        std::string kind;        // "bisect_edge" | "bisect_2cell"
        CellId target;
        CellId new_vertex;       // midpoint (bisect_edge) or invalid
        CellId chord;            // chord edge (bisect_2cell) or invalid
        std::vector<Split> splits;
        std::vector<Refit> refits;
    };

    std::vector<Step> steps;

    // Union over steps, composed: every replaced cell maps to the cells that
    // subdivide it in the final complex; untouched cells map to themselves
    // implicitly (absent keys).
    std::map<CellId, std::vector<CellId>> old_to_new() const;

    void append(SubdivisionTrace&& other);
};

// Mutable engine used by subdivision ops and by the separation repairs;
// public operations wrap it and freeze a new Complex per call.
class ComplexBuilder {
public:
    explicit ComplexBuilder(const Complex& X);

    CellId add_vertex();
    CellId add_cell(int dim, std::vector<CellId> facets, std::vector<std::int8_t> signs,
                    bool simplex);
    CellId add_simplex_by_vertices(const std::vector<CellId>& verts);
    void kill(CellId c);

    bool alive(CellId c) const;
    const Cell& cell(CellId c) const;
    std::vector<CellId> cofacets(CellId c) const;  // alive cofaces, sorted

    // Stellar bisection of edge e at a fresh midpoint; every alive cell with
    // e in its closure is split (simplicial) or refitted (CW).
    SubdivisionTrace::Step bisect_edge(CellId e);

    // Chord split of a CW 2-cell between two non-adjacent boundary vertices.
    SubdivisionTrace::Step bisect_2cell(CellId c, CellId u, CellId v);

    Complex freeze() const;

private:
    std::vector<Cell> table_;
    std::map<std::int32_t, std::string> labels_;
    std::vector<std::vector<CellId>> cofacets_;
    std::map<std::vector<CellId>, CellId> simplex_of_;

    void wire(CellId c);
    std::vector<CellId> boundary_cycle_vertices(const Cell& c) const;
};

std::pair<Complex, SubdivisionTrace> bisect_edge(const Complex& X, CellId e);
std::pair<Complex, SubdivisionTrace> bisect_2cell(const Complex& X, CellId c, CellId entry_vertex,
                                                  CellId exit_vertex);

}  // namespace dmt
