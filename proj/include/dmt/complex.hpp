#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dmt/error.hpp"
#include "dmt/ids.hpp"

namespace dmt {

// One cell of a finite regular cell complex.  Simplicial cells carry their
// sorted vertex list and are identified by it; general regular CW cells
// (e.g. cubical test complexes) are identified only by id.
struct Cell {
    CellId id;
    std::vector<CellId> facets;       // codimension-1 faces
    std::vector<std::int8_t> signs;   // incidence signs, parallel to facets
    std::vector<CellId> vertices;     // sorted 0-cells of the closure
    bool simplex = true;
    bool alive = true;
};

// Immutable after construction.  Every modifying operation lives in
// subdivision.hpp and returns a fresh Complex plus a trace.
class Complex {
public:
    Complex() = default;

    // Validates grading, facet resolution and signed d(d(cell)) = 0.
    static Complex from_cells(std::vector<Cell> table,
                              std::map<std::int32_t, std::string> labels = {});

    int top_dim() const { return top_dim_; }
    const std::vector<CellId>& cells(int dim) const { return by_dim_[dim]; }
    std::vector<CellId> all_cells() const;
    std::size_t size() const { return n_alive_; }
    std::int32_t capacity() const { return static_cast<std::int32_t>(table_.size()); }

    bool contains(CellId c) const;
    const Cell& cell(CellId c) const;
    const std::vector<CellId>& cofacets(CellId c) const;

    // Simplex lookup by sorted vertex list; invalid id if absent.
    CellId find_simplex(const std::vector<CellId>& verts) const;

    const std::map<std::int32_t, std::string>& labels() const { return labels_; }

    const std::vector<Cell>& table() const { return table_; }

private:
    friend class ComplexBuilder;

    std::vector<Cell> table_;
    std::vector<std::vector<CellId>> cofacets_;
    std::array<std::vector<CellId>, 4> by_dim_;
    std::map<std::vector<CellId>, CellId> simplex_index_;
    std::map<std::int32_t, std::string> labels_;
    std::size_t n_alive_ = 0;
    int top_dim_ = 0;

    void build_indices(bool validate);
};

// A subcomplex, stored as a sorted cell list closed under taking faces.
struct Region {
    const Complex* parent = nullptr;
    std::vector<CellId> cells;  // sorted

    bool contains(CellId c) const;
    std::vector<CellId> of_dim(int d) const;
};

Region make_region(const Complex& X, std::vector<CellId> cells, bool close_down = false);

struct SurfaceReport {
    std::int64_t euler = 0;
    bool connected = false;
    bool orientable = false;
    bool closed = false;
    std::optional<std::int64_t> genus;  // set when closed, connected, orientable
};

struct ManifoldReport {
    bool ok = true;
    std::vector<CellId> bad_two_cells;
    std::vector<CellId> bad_edges;
    std::vector<CellId> bad_vertices;
};

struct OrientationResult {
    bool ok = false;
    std::map<CellId, std::int8_t> signs;     // per 3-cell
    std::vector<CellId> witness_cycle;       // orientation-reversing 3-cell cycle
};

// Descriptor for build_complex: either a simplex given by vertex labels or a
// general cell given by signed facet references (indices into the descriptor
// list).
struct CellDescriptor {
    int dim = 0;
    std::vector<std::int32_t> vertex_labels;          // simplicial flavor
    std::vector<std::pair<std::int32_t, int>> facets; // (descriptor index, sign)
};

Complex build_complex(const std::vector<CellDescriptor>& descriptors);

// Queries.  All pure; Regions share the parent's ids.
std::vector<CellId> closure_of(const Complex& X, const std::vector<CellId>& seed);
Region closure(const Complex& X, const std::vector<CellId>& seed);
Region star(const Complex& X, CellId c);            // closed star
Region star_of_set(const Complex& X, const std::vector<CellId>& seed);
Region link_of_vertex(const Complex& X, CellId v);  // simplicial only
std::vector<CellId> faces_of(const Complex& X, CellId c);
std::int64_t euler_characteristic(const Complex& X);
std::int64_t euler_characteristic(const Region& R);

ManifoldReport check_closed_3manifold(const Complex& X);
ManifoldReport check_3manifold_with_boundary(const Region& R);

OrientationResult orient(const Complex& X);

// Subcomplex generated by 2-cells with exactly one 3-coface in R, as a
// standalone complex with the parent's ids.
Complex extract_boundary(const Region& R);
Region boundary_region(const Region& R);

// Cells of R whose star in the parent leaves R (the topological frontier).
std::vector<CellId> frontier(const Region& R);

// Two copies of R glued along the frontier by the identity.
Complex double_of_region(const Region& R);

// Closed connected surface classification helper.
SurfaceReport surface_report(const Complex& S);

std::string cell_str(const Complex& X, CellId c);

}  // namespace dmt
