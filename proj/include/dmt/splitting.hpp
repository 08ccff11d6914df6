#pragma once

#include "dmt/separation.hpp"

namespace dmt {

// Triangulated 3-ball coned over a 2-sphere: one fresh interior vertex, one
// cone cell per sphere cell.
struct ConeDisk {
    Complex complex;       // sphere cells (parent ids) + apex + cone cells
    CellId apex;
    std::map<CellId, CellId> cone_of;  // sphere cell -> its cone cell
    std::vector<CellId> sphere_cells;
};

struct SummandResult {
    Complex manifold;
    GradientField field;
    MorseFunction function;
    BettiVector betti_vector;
    CellId distinguished;  // Delta for M1, omega for M2
    bool perfect = false;
};

ConeDisk cone_disk(const Complex& S);

// Collapse extension of the base field over disk-minus-one-3-cell; adds one
// pair per elementary collapse and no critical cells.
GradientField extend_by_collapse(const Complex& m1, const std::vector<CellId>& disk_cells,
                                 CellId delta, const GradientField& base,
                                 const std::vector<CellId>& sphere_cells);

MorseFunction cap_with_top_cell(const MorseFunction& g, CellId delta, const Complex& m1);

// Cone extension: boundary-critical cells pair into their cone cofaces,
// sphere pairs clone to cone pairs, apex stays critical.
GradientField extend_by_cone(const GradientField& base_on_m_minus_m1, const Complex& m2,
                             const ConeDisk& disk, const std::vector<CellId>& sphere_cells);

struct SplitResult {
    SummandResult m1;  // built on (M - M2) u D1, unique critical 3-cell Delta
    SummandResult m2;  // built on (M - M1) u D2, unique critical 0-cell omega
};

SplitResult split_and_extend(const SeparationResult& sep);

}  // namespace dmt
