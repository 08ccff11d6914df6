#include "dmt/homology.hpp"

#include <algorithm>
#include <sstream>

namespace dmt {

BoundaryMatrix boundary_matrix(const Complex& X, int k) {
    Region all{&X, X.all_cells()};
    std::sort(all.cells.begin(), all.cells.end());
    return boundary_matrix(all, k);
}

BoundaryMatrix boundary_matrix(const Region& R, int k) {
    require(k >= 1 && k <= 3, Err::Internal, "boundary matrix dimension out of range");
    const Complex& X = *R.parent;
    BoundaryMatrix m;
    m.k = k;
    for (CellId c : R.cells) {
        if (c.dim == k - 1) m.rows.push_back(c);
        if (c.dim == k) m.cols.push_back(c);
    }
    std::map<CellId, std::size_t> row_of;
    for (std::size_t i = 0; i < m.rows.size(); ++i) row_of[m.rows[i]] = i;
    m.a.assign(m.rows.size(), std::vector<std::int64_t>(m.cols.size(), 0));
    for (std::size_t j = 0; j < m.cols.size(); ++j) {
        const Cell& c = X.cell(m.cols[j]);
        for (std::size_t t = 0; t < c.facets.size(); ++t)
            m.a[row_of.at(c.facets[t])][j] += c.signs[t];
    }
    return m;
}

namespace {

using Mat = std::vector<std::vector<BigInt>>;

void row_op(Mat& a, std::size_t i1, std::size_t i2, const BigInt& q) {
    // row i2 -= q * row i1
    for (std::size_t j = 0; j < a[i1].size(); ++j) a[i2][j] -= q * a[i1][j];
}

void col_op(Mat& a, std::size_t j1, std::size_t j2, const BigInt& q) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i][j2] -= q * a[i][j1];
}

}  // namespace

SnfResult smith_normal_form(Mat a, bool with_transforms) {
    SnfResult res;
    std::size_t m = a.size();
    std::size_t n = m ? a[0].size() : 0;

    Mat L, R;
    if (with_transforms) {
        L.assign(m, std::vector<BigInt>(m, 0));
        R.assign(n, std::vector<BigInt>(n, 0));
        for (std::size_t i = 0; i < m; ++i) L[i][i] = 1;
        for (std::size_t j = 0; j < n; ++j) R[j][j] = 1;
    }
    // Maintain L, R with A_orig = L * A_cur * R.  A row op on A (r2 -= q r1)
    // is undone in L by the column op c1 += q c2; a column op on A
    // (c2 -= q c1) is undone in R by the row op r1 += q r2.
    auto add_row2 = [&](std::size_t r1, std::size_t r2, const BigInt& q) {
        row_op(a, r1, r2, q);
        if (with_transforms)
            for (std::size_t k = 0; k < m; ++k) L[k][r1] += q * L[k][r2];
    };
    auto add_col2 = [&](std::size_t c1, std::size_t c2, const BigInt& q) {
        col_op(a, c1, c2, q);
        if (with_transforms)
            for (std::size_t k = 0; k < n; ++k) R[c1][k] += q * R[c2][k];
    };
    auto swap_rows2 = [&](std::size_t i1, std::size_t i2) {
        std::swap(a[i1], a[i2]);
        if (with_transforms)
            for (std::size_t k = 0; k < m; ++k) std::swap(L[k][i1], L[k][i2]);
    };
    auto swap_cols2 = [&](std::size_t j1, std::size_t j2) {
        for (std::size_t i = 0; i < m; ++i) std::swap(a[i][j1], a[i][j2]);
        if (with_transforms) std::swap(R[j1], R[j2]);
    };
    auto negate_row = [&](std::size_t i) {
        for (auto& x : a[i]) x = -x;
        if (with_transforms)
            for (std::size_t k = 0; k < m; ++k) L[k][i] = -L[k][i];
    };

    std::size_t s = 0;
    while (true) {
        // Find the smallest-magnitude nonzero entry in a[s:, s:].
        bool found = false;
        std::size_t pi = s, pj = s;
        BigInt best = 0;
        for (std::size_t i = s; i < m; ++i)
            for (std::size_t j = s; j < n; ++j) {
                if (a[i][j] == 0) continue;
                BigInt v = a[i][j] < 0 ? BigInt(-a[i][j]) : a[i][j];
                if (!found || v < best) {
                    found = true;
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        swap_rows2(s, pi);
        swap_cols2(s, pj);
        if (a[s][s] < 0) negate_row(s);

        bool clean = true;
        for (std::size_t i = s + 1; i < m; ++i) {
            if (a[i][s] == 0) continue;
            BigInt q = a[i][s] / a[s][s];
            add_row2(s, i, q);
            if (a[i][s] != 0) clean = false;
        }
        for (std::size_t j = s + 1; j < n; ++j) {
            if (a[s][j] == 0) continue;
            BigInt q = a[s][j] / a[s][s];
            add_col2(s, j, q);
            if (a[s][j] != 0) clean = false;
        }
        if (!clean) continue;  // remainders became new smaller pivots

        // Divisibility: fold any non-multiple into column s and repeat.
        bool divides = true;
        for (std::size_t i = s + 1; i < m && divides; ++i)
            for (std::size_t j = s + 1; j < n && divides; ++j)
                if (a[i][j] % a[s][s] != 0) {
                    add_col2(j, s, BigInt(-1));  // col s += col j
                    divides = false;
                }
        if (!divides) continue;
        ++s;
    }
    res.factors.reserve(s);
    for (std::size_t i = 0; i < s; ++i) res.factors.push_back(a[i][i]);
    if (with_transforms) {
        res.left = std::move(L);
        res.right = std::move(R);
    }
    return res;
}

namespace {

Mat to_big(const BoundaryMatrix& m) {
    Mat a(m.rows.size(), std::vector<BigInt>(m.cols.size()));
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols.size(); ++j) a[i][j] = m.a[i][j];
    return a;
}

BettiVector betti_impl(const Region& R) {
    BettiVector out;
    std::array<std::int64_t, 4> counts{0, 0, 0, 0};
    for (CellId c : R.cells) ++counts[c.dim];
    std::array<std::size_t, 5> rank{0, 0, 0, 0, 0};  // rank[k] = rank of d_k
    std::array<SnfResult, 4> snf;
    for (int k = 1; k <= 3; ++k) {
        BoundaryMatrix bm = boundary_matrix(R, k);
        if (!bm.rows.empty() && !bm.cols.empty()) snf[k] = smith_normal_form(to_big(bm));
        rank[k] = snf[k].rank();
    }
    for (int k = 0; k <= 3; ++k) {
        out.b[k] = counts[k] - std::int64_t(rank[k]) - std::int64_t(rank[k + 1]);
        if (k < 3)
            for (const BigInt& d : snf[k + 1].factors)
                if (d > 1) out.torsion[k].push_back(d);
    }
    return out;
}

}  // namespace

BettiVector betti(const Complex& X) {
    Region all{&X, X.all_cells()};
    std::sort(all.cells.begin(), all.cells.end());
    return betti_impl(all);
}

BettiVector betti(const Region& R) { return betti_impl(R); }

std::string BettiVector::str() const {
    std::ostringstream os;
    os << "(" << b[0] << "," << b[1] << "," << b[2] << "," << b[3] << ")";
    bool any = false;
    for (const auto& t : torsion) any |= !t.empty();
    if (any) {
        os << " torsion ";
        for (int k = 0; k < 4; ++k) {
            if (torsion[k].empty()) continue;
            os << "H" << k << ":[";
            for (std::size_t i = 0; i < torsion[k].size(); ++i)
                os << (i ? "," : "") << torsion[k][i];
            os << "]";
        }
    }
    return os.str();
}

std::size_t f2_rank(const BoundaryMatrix& m) {
    // Bitset Gaussian elimination over F2, rows packed in 64-bit words.
    std::size_t rows = m.rows.size(), cols = m.cols.size();
    if (!rows || !cols) return 0;
    std::size_t words = (cols + 63) / 64;
    std::vector<std::vector<std::uint64_t>> bits(rows, std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (m.a[i][j] & 1) bits[i][j / 64] ^= (std::uint64_t(1) << (j % 64));
    std::size_t rank = 0;
    for (std::size_t j = 0; j < cols && rank < rows; ++j) {
        std::size_t w = j / 64;
        std::uint64_t mask = std::uint64_t(1) << (j % 64);
        std::size_t pivot = rank;
        while (pivot < rows && !(bits[pivot][w] & mask)) ++pivot;
        if (pivot == rows) continue;
        std::swap(bits[rank], bits[pivot]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || !(bits[i][w] & mask)) continue;
            for (std::size_t k = w; k < words; ++k) bits[i][k] ^= bits[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::array<std::int64_t, 4> f2_betti(const Complex& X) {
    std::array<std::int64_t, 4> out{0, 0, 0, 0};
    std::array<std::size_t, 5> rank{0, 0, 0, 0, 0};
    for (int k = 1; k <= 3; ++k) rank[k] = f2_rank(boundary_matrix(X, k));
    for (int k = 0; k <= 3; ++k)
        out[k] = std::int64_t(X.cells(k).size()) - rank[k] - rank[k + 1];
    return out;
}

bool Z2Chain::contains(CellId c) const {
    return std::binary_search(cells.begin(), cells.end(), c);
}

Z2Chain make_z2_chain(int dim, std::vector<CellId> cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    for (CellId c : cells)
        require(c.dim == dim, Err::Internal, "chain cell with wrong dimension");
    return Z2Chain{dim, std::move(cells)};
}

Z2Chain z2_add(const Z2Chain& x, const Z2Chain& y) {
    require(x.dim == y.dim || x.empty() || y.empty(), Err::Internal, "chain dimension mismatch");
    std::vector<CellId> out;
    std::set_symmetric_difference(x.cells.begin(), x.cells.end(), y.cells.begin(), y.cells.end(),
                                  std::back_inserter(out));
    return Z2Chain{x.empty() ? y.dim : x.dim, std::move(out)};
}

Z2Chain z2_boundary(const Complex& X, const Z2Chain& c) {
    std::map<CellId, int> acc;
    for (CellId id : c.cells)
        for (CellId f : X.cell(id).facets) acc[f] ^= 1;
    std::vector<CellId> out;
    for (auto& [f, v] : acc)
        if (v) out.push_back(f);
    return Z2Chain{c.dim - 1, std::move(out)};
}

bool is_z2_cycle(const Z2Chain& c, const Complex& X, std::vector<CellId>* offenders) {
    for (CellId id : c.cells)
        require(X.contains(id) && id.dim == c.dim, Err::Internal, "chain cell not in complex");
    Z2Chain b = z2_boundary(X, c);
    if (offenders) *offenders = b.cells;
    return b.cells.empty();
}

void validate_dual_cycle(const DualOneCycle& L, const Complex& X) {
    require(!L.loop.empty() && L.loop.size() == L.gates.size(), Err::Internal,
            "dual cycle shape mismatch");
    for (std::size_t i = 0; i < L.loop.size(); ++i) {
        CellId t = L.loop[i];
        CellId t_next = L.loop[(i + 1) % L.loop.size()];
        CellId g = L.gates[i];
        require(t.dim == 3 && t_next.dim == 3 && g.dim == 2, Err::Internal,
                "dual cycle dimensions wrong");
        const auto& f1 = X.cell(t).facets;
        const auto& f2 = X.cell(t_next).facets;
        bool in1 = std::find(f1.begin(), f1.end(), g) != f1.end();
        bool in2 = std::find(f2.begin(), f2.end(), g) != f2.end();
        require(in1 && in2, Err::Internal, "dual cycle gate not shared by its 3-cells");
    }
}

int intersection_parity(const DualOneCycle& L, const Z2Chain& Z, const Complex& X) {
    require(Z.dim == 2, Err::NotACycle, "intersection parity needs a 2-chain");
    require(is_z2_cycle(Z, X), Err::NotACycle, "representative is not a mod-2 cycle");
    validate_dual_cycle(L, X);
    int parity = 0;
    for (CellId g : L.gates)
        if (Z.contains(g)) parity ^= 1;
    return parity;
}

std::optional<Z2Chain> solve_z2_boundary(const Complex& X, const Z2Chain& r,
                                         const std::vector<CellId>& candidate_two_cells) {
    // Gaussian elimination on the edge x candidate incidence system.
    std::vector<CellId> cols = candidate_two_cells;
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::set<CellId> row_set(r.cells.begin(), r.cells.end());
    for (CellId c : cols)
        for (CellId f : X.cell(c).facets) row_set.insert(f);
    std::vector<CellId> rows(row_set.begin(), row_set.end());
    std::map<CellId, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;

    std::size_t words = (cols.size() + 1 + 63) / 64;  // last column = rhs
    std::vector<std::vector<std::uint64_t>> bits(rows.size(),
                                                 std::vector<std::uint64_t>(words, 0));
    auto set_bit = [&](std::size_t i, std::size_t j) { bits[i][j / 64] ^= 1ull << (j % 64); };
    auto get_bit = [&](std::size_t i, std::size_t j) {
        return (bits[i][j / 64] >> (j % 64)) & 1ull;
    };
    for (std::size_t j = 0; j < cols.size(); ++j) {
        std::map<CellId, int> acc;
        for (CellId f : X.cell(cols[j]).facets) acc[f] ^= 1;
        for (auto& [f, v] : acc)
            if (v) set_bit(row_of[f], j);
    }
    for (CellId c : r.cells) set_bit(row_of[c], cols.size());

    std::vector<std::int64_t> pivot_col_of_row(rows.size(), -1);
    std::size_t rank = 0;
    for (std::size_t j = 0; j < cols.size() && rank < rows.size(); ++j) {
        std::size_t p = rank;
        while (p < rows.size() && !get_bit(p, j)) ++p;
        if (p == rows.size()) continue;
        std::swap(bits[rank], bits[p]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || !get_bit(i, j)) continue;
            for (std::size_t k = 0; k < words; ++k) bits[i][k] ^= bits[rank][k];
        }
        pivot_col_of_row[rank] = std::int64_t(j);
        ++rank;
    }
    for (std::size_t i = rank; i < rows.size(); ++i)
        if (get_bit(i, cols.size())) return std::nullopt;  // inconsistent

    std::vector<CellId> sol;
    for (std::size_t i = 0; i < rank; ++i)
        if (get_bit(i, cols.size())) sol.push_back(cols[pivot_col_of_row[i]]);
    return make_z2_chain(2, std::move(sol));
}

}  // namespace dmt
