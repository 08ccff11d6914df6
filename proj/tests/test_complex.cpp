#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dmt/complex.hpp"
#include "dmt/subdivision.hpp"

using namespace dmt;

namespace {

Complex simplex_boundary(int n) {
    // Boundary of the n-simplex on vertices 0..n.
    std::vector<CellDescriptor> ds;
    for (int v = 0; v <= n; ++v) ds.push_back({0, {v}, {}});
    for (int skip = 0; skip <= n; ++skip) {
        std::vector<std::int32_t> f;
        for (int v = 0; v <= n; ++v)
            if (v != skip) f.push_back(v);
        ds.push_back({n - 1, f, {}});
    }
    return build_complex(ds);
}

Complex solid_tetrahedron() {
    std::vector<CellDescriptor> ds;
    for (int v = 0; v < 4; ++v) ds.push_back({0, {v}, {}});
    ds.push_back({3, {0, 1, 2, 3}, {}});
    return build_complex(ds);
}

}  // namespace

TEST_CASE("tetrahedron boundary has the right cell counts and chi") {
    Complex X = simplex_boundary(3);
    CHECK(X.cells(0).size() == 4);
    CHECK(X.cells(1).size() == 6);
    CHECK(X.cells(2).size() == 4);
    CHECK(X.cells(3).size() == 0);
    CHECK(euler_characteristic(X) == 2);
}

TEST_CASE("boundary of the 4-simplex is a closed oriented S3") {
    Complex X = simplex_boundary(4);
    CHECK(X.cells(0).size() == 5);
    CHECK(X.cells(3).size() == 5);
    CHECK(euler_characteristic(X) == 0);
    CHECK(check_closed_3manifold(X).ok);
    CHECK(orient(X).ok);
}

TEST_CASE("a triangle missing one edge is rejected") {
    // Hand-built table: vertices, two edges, and a triangle referencing a
    // facet that does not resolve.
    std::vector<Cell> table(6);
    for (int i = 0; i < 3; ++i) {
        table[i].id = {i, 0};
    }
    auto edge = [&](int slot, int a, int b) {
        table[slot].id = {slot, 1};
        table[slot].facets = {{a, 0}, {b, 0}};
        table[slot].signs = {-1, 1};
    };
    edge(3, 0, 1);
    edge(4, 1, 2);
    table[5].id = {5, 2};
    table[5].facets = {{3, 1}, {4, 1}, {17, 1}};
    table[5].signs = {1, 1, 1};
    CHECK_THROWS_AS(Complex::from_cells(std::move(table)), Error);
}

TEST_CASE("closed star queries") {
    Complex X = simplex_boundary(3);
    CellId v = X.cells(0)[0];
    Region st = star(X, v);
    int tri = 0, edges = 0;
    for (CellId c : st.cells) {
        if (c.dim == 2) ++tri;
        if (c.dim == 1) ++edges;
    }
    CHECK(tri == 3);
    CHECK(edges == 6);  // three through the vertex, three opposite

    CellId top = X.cells(2)[0];
    Region st_top = star(X, top);
    CHECK(st_top.cells.size() == closure_of(X, {top}).size());
}

TEST_CASE("two tetrahedra sharing exactly one edge: the edge is flagged") {
    std::vector<CellDescriptor> ds;
    for (int v = 0; v < 6; ++v) ds.push_back({0, {v}, {}});
    ds.push_back({3, {0, 1, 2, 3}, {}});
    ds.push_back({3, {0, 1, 4, 5}, {}});
    Complex X = build_complex(ds);
    Region all = make_region(X, X.all_cells());
    ManifoldReport rep = check_3manifold_with_boundary(all);
    CHECK(!rep.ok);
    CellId shared = X.find_simplex({CellId{0, 0}, CellId{1, 0}});
    REQUIRE(shared.valid());
    bool flagged = false;
    for (CellId e : rep.bad_edges) flagged |= (e == shared);
    for (CellId v : rep.bad_vertices) flagged |= (v == CellId{0, 0});
    CHECK(flagged);
}

TEST_CASE("edge bisection is stellar and preserves chi") {
    Complex X = simplex_boundary(3);
    CellId e = X.cells(1)[0];
    auto [Y, tr] = bisect_edge(X, e);
    CHECK(euler_characteristic(Y) == 2);
    CHECK(Y.cells(0).size() == 5);
    CHECK(Y.cells(1).size() == 9);
    CHECK(Y.cells(2).size() == 6);
    REQUIRE(tr.steps.size() == 1);
    // The edge and both incident triangles split.
    CHECK(tr.steps[0].splits.size() == 3);
    // Replaced cells are gone, pieces are alive.
    CHECK(!Y.contains(e));
    for (const auto& sp : tr.steps[0].splits) {
        CHECK(!Y.contains(sp.old_cell));
        CHECK(Y.contains(sp.piece_a));
        CHECK(Y.contains(sp.piece_b));
        CHECK(Y.contains(sp.waist));
    }
}

TEST_CASE("repeated bisections keep dd = 0 and chi on a 3-complex") {
    Complex X = simplex_boundary(4);
    for (int i = 0; i < 4; ++i) {
        CellId e = X.cells(1)[i % X.cells(1).size()];
        auto [Y, tr] = bisect_edge(X, e);
        X = std::move(Y);  // from_cells re-validates dd = 0
        CHECK(euler_characteristic(X) == 0);
        CHECK(check_closed_3manifold(X).ok);
    }
}

TEST_CASE("extract_boundary of one tetrahedron is the boundary sphere") {
    Complex X = solid_tetrahedron();
    Region all = make_region(X, X.all_cells());
    Complex B = extract_boundary(all);
    CHECK(B.cells(2).size() == 4);
    CHECK(B.cells(1).size() == 6);
    CHECK(B.cells(0).size() == 4);
    CHECK(euler_characteristic(B) == 2);
    SurfaceReport rep = surface_report(B);
    CHECK(rep.closed);
    CHECK(rep.connected);
    CHECK(rep.orientable);
    CHECK(rep.genus.value() == 0);
}

TEST_CASE("double of a solid tetrahedron is a closed chi-0 manifold") {
    Complex X = solid_tetrahedron();
    Region all = make_region(X, X.all_cells());
    Complex D = double_of_region(all);
    CHECK(euler_characteristic(D) == 0);
    CHECK(check_closed_3manifold(D).ok);
    // chi(double) = 2 chi(R) - chi(boundary R)
    CHECK(euler_characteristic(D) ==
          2 * euler_characteristic(X) - euler_characteristic(extract_boundary(all)));
}

TEST_CASE("chord split of a square CW cell") {
    // One square: 4 vertices, 4 edges, 1 CW 2-cell.
    std::vector<CellDescriptor> ds;
    for (int v = 0; v < 4; ++v) ds.push_back({0, {v}, {}});
    ds.push_back({1, {0, 1}, {}});
    ds.push_back({1, {1, 2}, {}});
    ds.push_back({1, {2, 3}, {}});
    ds.push_back({1, {0, 3}, {}});
    // oriented cycle 0->1->2->3->0: signs with sorted-edge convention
    ds.push_back({2, {}, {{4, 1}, {5, 1}, {6, 1}, {7, -1}}});
    Complex X = build_complex(ds);
    REQUIRE(X.cells(2).size() == 1);
    CellId sq = X.cells(2)[0];
    auto [Y, tr] = bisect_2cell(X, sq, CellId{0, 0}, CellId{2, 0});
    CHECK(Y.cells(2).size() == 2);
    CHECK(Y.cells(1).size() == 5);
    CHECK(euler_characteristic(Y) == euler_characteristic(X));
    CHECK_THROWS_AS(bisect_2cell(X, sq, CellId{0, 0}, CellId{1, 0}), Error);  // adjacent
}

TEST_CASE("orientation fails on a twisted sphere bundle") {
    // S2 x I from layered boundary-of-tetrahedron, with the top layer glued
    // back by a transposition (odd) -- the twisted bundle is non-orientable.
    auto build = [&](bool twist) {
        const int m = 4;
        auto at = [&](int v, int layer) {
            if (layer == m) {
                int w = v;
                if (twist) w = (v == 0 ? 1 : v == 1 ? 0 : v);
                return w;  // layer m is layer 0 again
            }
            return v + 4 * layer;
        };
        std::vector<std::vector<std::int32_t>> tris;
        for (int skip = 0; skip < 4; ++skip) {
            std::vector<std::int32_t> t;
            for (int v = 0; v < 4; ++v)
                if (v != skip) t.push_back(v);
            tris.push_back(t);
        }
        std::vector<CellDescriptor> ds;
        for (int v = 0; v < 4 * m; ++v) ds.push_back({0, {v}, {}});
        for (auto& t : tris)
            for (int i = 0; i < m; ++i) {
                std::int32_t a = t[0], b = t[1], c = t[2];
                ds.push_back({3, {at(a, i), at(b, i), at(c, i), at(c, i + 1)}, {}});
                ds.push_back({3, {at(a, i), at(b, i), at(b, i + 1), at(c, i + 1)}, {}});
                ds.push_back({3, {at(a, i), at(a, i + 1), at(b, i + 1), at(c, i + 1)}, {}});
            }
        return build_complex(ds);
    };
    Complex straight = build(false);
    CHECK(check_closed_3manifold(straight).ok);
    CHECK(orient(straight).ok);
    Complex twisted = build(true);
    CHECK(check_closed_3manifold(twisted).ok);
    OrientationResult res = orient(twisted);
    CHECK(!res.ok);
    CHECK(res.witness_cycle.size() >= 2);
}
