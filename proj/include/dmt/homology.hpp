#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "dmt/complex.hpp"

namespace dmt {

using BigInt = boost::multiprecision::cpp_int;

struct BoundaryMatrix {
    int k = 0;                       // maps k-chains to (k-1)-chains
    std::vector<CellId> rows;        // (k-1)-cells, sorted by id
    std::vector<CellId> cols;        // k-cells, sorted by id
    std::vector<std::vector<std::int64_t>> a;  // row-major dense
};

BoundaryMatrix boundary_matrix(const Complex& X, int k);
BoundaryMatrix boundary_matrix(const Region& R, int k);

struct SnfResult {
    std::vector<BigInt> factors;  // nonzero diagonal entries, d_i | d_{i+1}
    std::size_t rank() const { return factors.size(); }
    // Optional unimodular transforms with A = L * D * R.
    std::optional<std::vector<std::vector<BigInt>>> left;
    std::optional<std::vector<std::vector<BigInt>>> right;
};

SnfResult smith_normal_form(std::vector<std::vector<BigInt>> a, bool with_transforms = false);

struct BettiVector {
    std::array<std::int64_t, 4> b{0, 0, 0, 0};
    std::array<std::vector<BigInt>, 4> torsion;  // invariant factors > 1 per dimension

    friend bool operator==(const BettiVector& x, const BettiVector& y) {
        return x.b == y.b && x.torsion == y.torsion;
    }
    std::string str() const;
};

BettiVector betti(const Complex& X);
BettiVector betti(const Region& R);

// Mod-2 Betti numbers via bitset elimination; cheap enough to assert after
// every repair in the separation loop.
std::array<std::int64_t, 4> f2_betti(const Complex& X);
std::size_t f2_rank(const BoundaryMatrix& m);

struct Z2Chain {
    int dim = 0;
    std::vector<CellId> cells;  // sorted, no duplicates

    bool empty() const { return cells.empty(); }
    bool contains(CellId c) const;
};

Z2Chain make_z2_chain(int dim, std::vector<CellId> cells);
Z2Chain z2_add(const Z2Chain& x, const Z2Chain& y);
Z2Chain z2_boundary(const Complex& X, const Z2Chain& c);

bool is_z2_cycle(const Z2Chain& c, const Complex& X, std::vector<CellId>* offenders = nullptr);

// Closed walk in the dual graph: 3-cells joined through shared 2-cell gates.
// Gates form a multiset; a doubly traversed gate contributes two crossings.
struct DualOneCycle {
    std::vector<CellId> loop;    // 3-cells, cyclic
    std::vector<CellId> gates;   // gates[i] shared by loop[i] and loop[i+1 mod n]
};

void validate_dual_cycle(const DualOneCycle& L, const Complex& X);

int intersection_parity(const DualOneCycle& L, const Z2Chain& Z, const Complex& X);

// Solve dB = r over F2 restricted to the given candidate 2-cells; returns
// nullopt when r is not in the span.
std::optional<Z2Chain> solve_z2_boundary(const Complex& X, const Z2Chain& r,
                                         const std::vector<CellId>& candidate_two_cells);

}  // namespace dmt
