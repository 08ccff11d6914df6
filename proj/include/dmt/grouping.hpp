#pragma once

#include "dmt/morse.hpp"

namespace dmt {

// Solid torus candidate built from the two unique top paths into the two
// cofaces of a critical 2-cell, with its dual core loop.  The torus check is
// recorded, not enforced: the core's homology class does not depend on it.
struct SolidTorusRegion {
    CellId c2;
    VPath path_a;  // top path ending at one coface
    VPath path_b;  // top path ending at the other
    Region region;
    DualOneCycle core;
    bool torus_check = false;
    SurfaceReport boundary_report;
};

struct Grouping {
    CellId critical_vertex;
    CellId critical_three_cell;
    // side_a goes with the critical 3-cell (the region side); side_b with the
    // critical vertex.
    std::vector<CellId> side_a_one_cells, side_a_two_cells;
    std::vector<CellId> side_b_one_cells, side_b_two_cells;
    std::map<std::pair<CellId, CellId>, int> parity;  // (c1, c2) -> 0/1
};

// Selector for assembling the two sides out of the odd-parity components.
// Components are sorted by their smallest member id.  `side_b_component`
// names the component that becomes side_b; everything else merges into
// side_a.  Without a selector: two components split naturally (smaller-id
// component becomes side_b), one connected component is NotSeparable, and
// three or more are AmbiguousGrouping.
struct SideSelector {
    std::optional<std::size_t> side_b_component;
};

SolidTorusRegion solid_torus(const GradientField& V, CellId c2, const Complex& X,
                             bool strict = false);

Z2Chain one_cell_representative(const GradientField& V, CellId c1, const Complex& X);

std::map<std::pair<CellId, CellId>, int> parity_matrix(const GradientField& V, const Complex& X);

Grouping group_critical_cells(const GradientField& V, const Complex& X,
                              const SideSelector& choose = {});

// Hard invariant from the theory: even-parity pairs admit no 2-path between
// them.  Returns offending (c1, c2) pairs.
std::vector<std::pair<CellId, CellId>> even_parity_path_violations(
    const GradientField& V, const Complex& X,
    const std::map<std::pair<CellId, CellId>, int>& parity);

}  // namespace dmt
