#include "dmt/grouping.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace dmt {

SolidTorusRegion solid_torus(const GradientField& V, CellId c2, const Complex& X, bool strict) {
    require(c2.dim == 2 && !V.paired(c2), Err::PreconditionFailed,
            "solid torus needs a critical 2-cell");
    std::vector<CellId> cof;
    for (CellId t : X.cofacets(c2))
        if (t.dim == 3) cof.push_back(t);
    require(cof.size() == 2 && cof[0] != cof[1], Err::PreconditionFailed,
            "critical 2-cell without two distinct 3-cofaces");

    TopTree tree = top_path_tree(V, X);
    std::vector<CellId> pa = tree.path_from_root(cof[0]);
    std::vector<CellId> pb = tree.path_from_root(cof[1]);

    SolidTorusRegion out;
    out.c2 = c2;
    auto to_vpath = [&](const std::vector<CellId>& p) {
        VPath vp;
        vp.dim = 3;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            vp.cells.push_back(tree.gate.at(p[i + 1]));
            vp.cells.push_back(p[i + 1]);
        }
        vp.cells.push_back(c2);
        return vp;
    };
    out.path_a = to_vpath(pa);
    out.path_b = to_vpath(pb);
    require(pa.front() == tree.root && pb.front() == tree.root, Err::Internal, "paths not rooted");

    // Core: down path a from the critical 3-cell, through the gate c2, back
    // up path b.  Shared prefixes traverse twice and cancel in parity.
    DualOneCycle core;
    for (CellId t : pa) core.loop.push_back(t);
    for (std::size_t j = pb.size(); j-- > 1;) core.loop.push_back(pb[j]);
    for (std::size_t i = 0; i + 1 < pa.size(); ++i) core.gates.push_back(tree.gate.at(pa[i + 1]));
    core.gates.push_back(c2);  // pa.back() -> pb.back()
    for (std::size_t j = pb.size(); j-- > 1;) core.gates.push_back(tree.gate.at(pb[j]));
    validate_dual_cycle(core, X);
    out.core = std::move(core);

    std::vector<CellId> cells{tree.root, c2};
    for (CellId t : pa) cells.push_back(t);
    for (CellId t : pb) cells.push_back(t);
    for (std::size_t i = 1; i < pa.size(); ++i) cells.push_back(tree.gate.at(pa[i]));
    for (std::size_t i = 1; i < pb.size(); ++i) cells.push_back(tree.gate.at(pb[i]));
    out.region = make_region(X, closure_of(X, cells));

    out.boundary_report = surface_report(extract_boundary(out.region));
    out.torus_check = out.boundary_report.closed && out.boundary_report.connected &&
                      out.boundary_report.orientable && out.boundary_report.euler == 0 &&
                      euler_characteristic(out.region) == 0;
    if (strict)
        require(out.torus_check, Err::NotATorus, "3-path region fails the torus check");
    return out;
}

Z2Chain one_cell_representative(const GradientField& V, CellId c1, const Complex& X) {
    require(c1.dim == 1 && !V.paired(c1), Err::PreconditionFailed,
            "representative needs a critical 1-cell");
    Z2Chain raw = ascending_two_chain_raw(V, X, c1);
    Z2Chain r = z2_boundary(X, raw);
    if (r.empty()) return raw;

    // A 2-path from a critical 2-cell into c1 forces the compactified
    // ascending sweep into the class of that cell's descending cycle (the
    // intersection counts with any solid-torus core agree).  Closing with
    // raw + D therefore both kills the residual boundary and pins the class;
    // the sum collapses to D itself.
    auto sources = descending_sources_into(V, X, c1);
    if (!sources.empty()) {
        Z2Chain D = descending_two_cycle(V, X, sources.front());
        Z2Chain closed = z2_add(raw, z2_add(raw, D));
        require(is_z2_cycle(closed, X), Err::ClosureFailed,
                "descending closure is not a cycle; field is not perfect");
        return closed;
    }

    // No critical source: fall back to a local mod-2 solve over paired
    // 2-cells near the residual boundary, growing the window ring by ring.
    // Critical 2-cells are never eligible: adding one would shift the class
    // by a generator.
    std::set<CellId> reach(r.cells.begin(), r.cells.end());
    for (int ring = 0; ring < 4; ++ring) {
        std::set<CellId> next = reach;
        for (CellId c : reach)
            for (CellId s : star(X, c).cells) next.insert(s);
        std::vector<CellId> window;
        for (CellId s : next)
            if (s.dim == 2 && V.paired(s)) window.push_back(s);
        auto sol = solve_z2_boundary(X, r, window);
        if (sol) {
            Z2Chain closed = z2_add(raw, *sol);
            require(is_z2_cycle(closed, X), Err::Internal, "closure produced a non-cycle");
            return closed;
        }
        reach = std::move(next);
    }
    fail(Err::ClosureFailed,
         "no local mod-2 closure near the residual boundary of " + cell_str(X, c1));
}

std::map<std::pair<CellId, CellId>, int> parity_matrix(const GradientField& V, const Complex& X) {
    CriticalSet cs = critical_cells(V, X);
    std::map<std::pair<CellId, CellId>, int> out;
    std::map<CellId, SolidTorusRegion> torus;
    for (CellId c2 : cs.cells[2]) torus.emplace(c2, solid_torus(V, c2, X));
    for (CellId c1 : cs.cells[1]) {
        Z2Chain rep = one_cell_representative(V, c1, X);
        for (CellId c2 : cs.cells[2])
            out[{c1, c2}] = intersection_parity(torus.at(c2).core, rep, X);
    }
    return out;
}

Grouping group_critical_cells(const GradientField& V, const Complex& X,
                              const SideSelector& choose) {
    CriticalSet cs = critical_cells(V, X);
    require(cs.counts[0] == 1 && cs.counts[3] == 1, Err::PreconditionFailed,
            "grouping needs a perfect field (one critical vertex and 3-cell)");
    Grouping g;
    g.critical_vertex = cs.cells[0][0];
    g.critical_three_cell = cs.cells[3][0];
    g.parity = parity_matrix(V, X);

    // Components of the odd-parity bipartite graph.
    std::vector<CellId> nodes;
    nodes.insert(nodes.end(), cs.cells[1].begin(), cs.cells[1].end());
    nodes.insert(nodes.end(), cs.cells[2].begin(), cs.cells[2].end());
    std::map<CellId, CellId> dsu;
    for (CellId n : nodes) dsu[n] = n;
    std::function<CellId(CellId)> find = [&](CellId x) {
        while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
        return x;
    };
    for (auto& [pair, p] : g.parity)
        if (p) dsu[find(pair.first)] = find(pair.second);
    std::map<CellId, std::vector<CellId>> comp;
    for (CellId n : nodes) comp[find(n)].push_back(n);
    std::vector<std::vector<CellId>> comps;
    for (auto& [root, members] : comp) {
        std::sort(members.begin(), members.end());
        comps.push_back(members);
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    std::vector<std::size_t> side_b_comps;
    if (choose.side_b_component) {
        require(*choose.side_b_component < comps.size(), Err::AmbiguousGrouping,
                "selector names component " + std::to_string(*choose.side_b_component) +
                    " of " + std::to_string(comps.size()));
        side_b_comps = {*choose.side_b_component};
    } else if (comps.size() == 2) {
        side_b_comps = {0};
    } else if (comps.empty()) {
        side_b_comps = {};
    } else {
        // One component, or several with no selector to merge them: no
        // two-sided grouping is determined.
        fail(Err::NotSeparable, "odd-parity components (" + std::to_string(comps.size()) +
                                    ") do not determine two sides");
    }

    for (std::size_t i = 0; i < comps.size(); ++i) {
        bool to_b = std::find(side_b_comps.begin(), side_b_comps.end(), i) != side_b_comps.end();
        for (CellId c : comps[i]) {
            auto& ones = to_b ? g.side_b_one_cells : g.side_a_one_cells;
            auto& twos = to_b ? g.side_b_two_cells : g.side_a_two_cells;
            (c.dim == 1 ? ones : twos).push_back(c);
        }
    }
    // Cross-side parities must be even; odd entries inside a side pair off.
    for (auto& [pair, p] : g.parity) {
        if (!p) continue;
        bool a1 = std::find(g.side_a_one_cells.begin(), g.side_a_one_cells.end(), pair.first) !=
                  g.side_a_one_cells.end();
        bool a2 = std::find(g.side_a_two_cells.begin(), g.side_a_two_cells.end(), pair.second) !=
                  g.side_a_two_cells.end();
        require(a1 == a2, Err::Internal, "odd parity across sides after grouping");
    }
    return g;
}

std::vector<std::pair<CellId, CellId>> even_parity_path_violations(
    const GradientField& V, const Complex& X,
    const std::map<std::pair<CellId, CellId>, int>& parity) {
    std::vector<std::pair<CellId, CellId>> bad;
    for (auto& [pair, p] : parity) {
        if (p) continue;
        auto sources = descending_sources_into(V, X, pair.first);
        if (std::find(sources.begin(), sources.end(), pair.second) != sources.end())
            bad.push_back(pair);
    }
    return bad;
}

}  // namespace dmt
