#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "dmt/homology.hpp"
#include "dmt/rational.hpp"
#include "dmt/subdivision.hpp"

namespace dmt {

// Partial matching on the Hasse diagram; arrows run sigma -> tau with
// dim tau = dim sigma + 1.  Kept as two ordered maps so iteration order is
// reproducible.
struct GradientField {
    std::map<CellId, CellId> up;    // sigma -> tau
    std::map<CellId, CellId> down;  // tau -> sigma

    bool paired(CellId c) const { return up.count(c) || down.count(c); }
    CellId up_of(CellId c) const;    // invalid if none
    CellId down_of(CellId c) const;  // invalid if none
    void insert(CellId sigma, CellId tau);
    void erase(CellId sigma, CellId tau);
    std::vector<std::pair<CellId, CellId>> pairs() const;
    std::size_t size() const { return up.size(); }
};

struct MorseFunction {
    std::map<CellId, Rational> values;
};

struct CriticalSet {
    std::array<std::vector<CellId>, 4> cells;
    std::array<std::int64_t, 4> counts{0, 0, 0, 0};
    std::vector<CellId> all() const;
};

struct VPath {
    int dim = 0;                  // dimension p+1 of the path
    std::vector<CellId> cells;    // sigma0, tau0, sigma1, tau1, ..., ends on a sigma
    CellId start() const { return cells.front(); }
    CellId end() const { return cells.back(); }
};

struct MorseReport {
    bool ok = true;
    // (cell, offending coface/facet) pairs breaking the at-most-one rule
    std::vector<std::pair<CellId, CellId>> coface_violations;
    std::vector<std::pair<CellId, CellId>> facet_violations;
    std::vector<CellId> missing_values;
};

struct AcyclicReport {
    bool ok = true;
    std::vector<CellId> witness;  // closed V-path: sigma, tau, sigma, tau, ...
};

struct FlowReport {
    bool ok = true;
    std::vector<CellId> vertices_not_reaching_min;
    std::vector<CellId> split_vertices;           // vertex-level uniqueness breaks
    std::vector<CellId> merged_two_cells;         // 2-cells on >1 top path
    std::vector<CellId> unreachable_three_cells;  // parent walk fails to reach the root
};

MorseReport validate_morse_function(const MorseFunction& f, const Complex& X);
GradientField field_from_function(const MorseFunction& f, const Complex& X);
MorseFunction function_from_field(const GradientField& V, const Complex& X);
AcyclicReport validate_acyclic(const GradientField& V, const Complex& X);
CriticalSet critical_cells(const GradientField& V, const Complex& X);
bool is_perfect(const GradientField& V, const Complex& X);
bool is_perfect(const GradientField& V, const Complex& X, const BettiVector& bv);

std::vector<VPath> descending_paths(const GradientField& V, CellId c, const Complex& X,
                                    std::size_t cap = 100000);
std::vector<VPath> ascending_paths_into(const GradientField& V, CellId c, const Complex& X,
                                        std::size_t cap = 100000);

FlowReport unique_flow_checks(const GradientField& V, const Complex& X);

GradientField cancel_critical_pair(const GradientField& V, CellId sigma, CellId tau,
                                   const Complex& X);

// Tree of 3-cells under gate pairings: parent(t) is the 3-cell across the
// gate 2-cell paired with t.  Exists and is unique for perfect fields on
// closed manifolds; PathNotUnique otherwise.
struct TopTree {
    CellId root;
    std::map<CellId, CellId> parent;  // 3-cell -> 3-cell (root absent)
    std::map<CellId, CellId> gate;    // 3-cell -> its paired 2-cell
    std::vector<CellId> path_from_root(CellId t) const;  // 3-cells, root first
};

TopTree top_path_tree(const GradientField& V, const Complex& X);

// Mod-2 chain of 2-cells swept by descending 2-paths out of a critical
// 2-cell, including the cell itself; a cycle for perfect fields.
Z2Chain descending_two_cycle(const GradientField& V, const Complex& X, CellId c2);

// Mod-2 chain of 2-cells on 2-paths ending at a critical 1-cell, counted by
// the parity of the number of paths through each cell.  Not a cycle in
// general; the grouping module closes it.
Z2Chain ascending_two_chain_raw(const GradientField& V, const Complex& X, CellId c1);

// All cells (edges and 2-cells) lying on some 2-path ending at c1.
std::vector<CellId> ascending_sheet(const GradientField& V, const Complex& X, CellId c1);

// Edges of the unique 1-path from a vertex to its critical sink.
std::vector<CellId> one_path_edges(const GradientField& V, const Complex& X, CellId v);

// Critical 2-cells whose descending 2-paths reach the critical 1-cell c1.
std::vector<CellId> descending_sources_into(const GradientField& V, const Complex& X, CellId c1);

// Carry a field across a subdivision step.  Pairs on untouched cells
// persist; split cells transport piecewise.  Split critical cells keep one
// critical carrier piece, chosen away from `avoid` when possible.  Cells
// listed in `suspend` get no transported pair (their pieces are left to the
// caller).  The lookup must resolve cells alive right after the step, so
// multi-step surgeries transport after each step.
using CellLookup = std::function<const Cell&(CellId)>;

GradientField transport_over_step(const GradientField& V, const SubdivisionTrace::Step& step,
                                  const CellLookup& lookup, CellId avoid = CellId{},
                                  const std::set<CellId>* suspend = nullptr);

GradientField transport(const GradientField& V, const SubdivisionTrace& trace, const Complex& result,
                        CellId avoid = CellId{});

// Restriction to a region: pairs with both cells inside.
GradientField restrict_field(const GradientField& V, const Region& R);

}  // namespace dmt
