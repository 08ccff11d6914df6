#pragma once

#include "dmt/grouping.hpp"

namespace dmt {

struct RepairLogEntry {
    std::string kind;            // "shared_2path" | "shared_1path" | "boundary_cell"
    std::vector<CellId> target;  // offending cells in the pre-repair complex
    std::size_t edges_bisected = 0;
};

// Rolling state of the separation loop.  The region is always the one
// determined by the current field: closure of the critical 3-cell, the top
// paths into the grouped critical 2-cells and into every sheet 2-cell, and
// the sheets themselves.
struct SeparationState {
    Complex complex;
    GradientField field;
    Grouping grouping;
    Region region;
    SubdivisionTrace trace;
    std::vector<RepairLogEntry> log;
};

struct SphereCertificate {
    Complex surface;
    std::int64_t euler = 0;
    bool connected = false;
    bool orientable = false;
    bool closed = false;
    bool no_inward_arrows = false;
    std::int64_t genus = -1;
};

struct SeparationResult {
    SphereCertificate certificate;
    Region m_minus_m1;  // contains the critical 3-cell
    Region m_minus_m2;  // contains the critical vertex
    Complex complex;    // post-subdivision ambient complex
    GradientField field;
    std::vector<RepairLogEntry> log;
    SubdivisionTrace trace;
};

struct SeparationOptions {
    std::size_t max_iterations = 0;  // 0: default 10 * (#3-cells)
    bool check_betti_each_repair = true;
};

// Region determined by the field and grouping (see SeparationState).
Region morse_region(const Complex& X, const GradientField& V, const Grouping& g);

SeparationState initial_region(const GradientField& V, const Grouping& g, const Complex& X);

// One violation found by the scan, in the order repairs are applied.
struct Violation {
    enum class Kind { Shared2Path, Shared1Path, BoundaryCell } kind;
    CellId low, high;  // the crossing pair, for path kinds
    CellId cell;       // offender, for BoundaryCell
};

std::vector<Violation> scan_violations(const SeparationState& st);

SeparationState separate_along_2path(const SeparationState& st, const VPath& gamma);
SeparationState separate_along_1path(const SeparationState& st, const VPath& mu);
SeparationState repair_boundary_cell(const SeparationState& st, CellId c);

SeparationResult build_separating_sphere(const GradientField& V, const Grouping& g,
                                         const Complex& X, const SeparationOptions& opt = {});

}  // namespace dmt
