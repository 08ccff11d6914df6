#include "dmt/morse.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace dmt {

CellId GradientField::up_of(CellId c) const {
    auto it = up.find(c);
    return it == up.end() ? CellId{} : it->second;
}

CellId GradientField::down_of(CellId c) const {
    auto it = down.find(c);
    return it == down.end() ? CellId{} : it->second;
}

void GradientField::insert(CellId sigma, CellId tau) {
    require(sigma.dim + 1 == tau.dim, Err::PairingConflict, "pair dimensions not adjacent");
    require(!paired(sigma) && !paired(tau), Err::PairingConflict,
            "cell already paired: " + std::to_string(paired(sigma) ? sigma.index : tau.index));
    up[sigma] = tau;
    down[tau] = sigma;
}

void GradientField::erase(CellId sigma, CellId tau) {
    auto it = up.find(sigma);
    require(it != up.end() && it->second == tau, Err::PairingConflict, "no such pair to erase");
    up.erase(it);
    down.erase(tau);
}

std::vector<std::pair<CellId, CellId>> GradientField::pairs() const {
    std::vector<std::pair<CellId, CellId>> out(up.begin(), up.end());
    return out;
}

std::vector<CellId> CriticalSet::all() const {
    std::vector<CellId> out;
    for (const auto& v : cells) out.insert(out.end(), v.begin(), v.end());
    return out;
}

MorseReport validate_morse_function(const MorseFunction& f, const Complex& X) {
    MorseReport rep;
    auto value = [&](CellId c) -> const Rational* {
        auto it = f.values.find(c);
        return it == f.values.end() ? nullptr : &it->second;
    };
    for (CellId c : X.all_cells()) {
        const Rational* fc = value(c);
        if (!fc) {
            rep.ok = false;
            rep.missing_values.push_back(c);
            continue;
        }
        std::vector<CellId> low_cofaces;
        for (CellId up : X.cofacets(c)) {
            const Rational* fu = value(up);
            if (fu && *fu <= *fc) low_cofaces.push_back(up);
        }
        if (low_cofaces.size() > 1) {
            rep.ok = false;
            for (CellId up : low_cofaces) rep.coface_violations.push_back({c, up});
        }
        std::vector<CellId> high_facets;
        for (CellId fct : X.cell(c).facets) {
            const Rational* fv = value(fct);
            if (fv && *fv >= *fc) high_facets.push_back(fct);
        }
        if (high_facets.size() > 1) {
            rep.ok = false;
            for (CellId fct : high_facets) rep.facet_violations.push_back({c, fct});
        }
    }
    return rep;
}

GradientField field_from_function(const MorseFunction& f, const Complex& X) {
    MorseReport rep = validate_morse_function(f, X);
    require(rep.ok, Err::InvalidFunction, "function violates the at-most-one conditions");
    GradientField V;
    for (CellId sigma : X.all_cells()) {
        const Rational& fs = f.values.at(sigma);
        for (CellId tau : X.cofacets(sigma)) {
            if (f.values.at(tau) <= fs) {
                require(!V.paired(sigma) && !V.paired(tau), Err::InvalidFunction,
                        "function induces overlapping pairs");
                V.insert(sigma, tau);
            }
        }
    }
    AcyclicReport ac = validate_acyclic(V, X);
    require(ac.ok, Err::InvalidFunction, "function induces a cyclic field");
    return V;
}

MorseFunction function_from_field(const GradientField& V, const Complex& X) {
    // Contract each pair to one node, topologically order the remaining
    // Hasse relations, and hand out ranks in order.  Ranks are stable under
    // CellId relabeling of ties via a min-heap on representative id.
    std::map<CellId, CellId> rep;  // cell -> representative (the lower pair cell)
    for (CellId c : X.all_cells()) rep[c] = c;
    for (const auto& [s, t] : V.up) {
        require(X.contains(s) && X.contains(t), Err::UnknownCell, "pair cell not in complex");
        rep[t] = s;
    }
    std::map<CellId, std::vector<CellId>> succ;
    std::map<CellId, int> indeg;
    for (CellId c : X.all_cells()) indeg[rep[c]];
    for (CellId c : X.all_cells()) {
        for (CellId f : X.cell(c).facets) {
            if (V.up_of(f) == c) continue;  // the contracted pair edge
            CellId a = rep[f], b = rep[c];
            require(a != b, Err::Internal, "distinct cells with one representative");
            succ[a].push_back(b);
            ++indeg[b];
        }
    }
    std::priority_queue<CellId, std::vector<CellId>, std::greater<>> ready;
    for (auto& [n, d] : indeg)
        if (d == 0) ready.push(n);
    MorseFunction out;
    std::int64_t rank = 0;
    std::size_t done = 0;
    while (!ready.empty()) {
        CellId n = ready.top();
        ready.pop();
        out.values[n] = Rational(rank);
        CellId partner = V.up_of(n);
        if (partner.valid()) out.values[partner] = Rational(rank);
        ++rank;
        ++done;
        for (CellId s : succ[n])
            if (--indeg[s] == 0) ready.push(s);
    }
    require(done == indeg.size(), Err::CyclicField, "field admits a closed V-path");
    return out;
}

AcyclicReport validate_acyclic(const GradientField& V, const Complex& X) {
    AcyclicReport rep;
    // Per dimension: nodes are pairs (sigma, tau); an edge leads to any pair
    // whose sigma' is a facet of tau other than sigma.
    for (int p = 0; p <= 2; ++p) {
        std::vector<CellId> nodes;
        for (const auto& [s, t] : V.up)
            if (s.dim == p) nodes.push_back(s);
        std::map<CellId, int> color;  // 0 new, 1 active, 2 done
        std::vector<CellId> stack;
        std::function<bool(CellId)> dfs = [&](CellId s) -> bool {
            color[s] = 1;
            stack.push_back(s);
            CellId t = V.up_of(s);
            for (CellId s2 : X.cell(t).facets) {
                if (s2 == s) continue;
                CellId t2 = V.up_of(s2);
                if (!t2.valid()) continue;
                int c = color.count(s2) ? color[s2] : 0;
                if (c == 1) {
                    // Close the witness: sigma,tau,...,sigma2,tau2
                    auto it = std::find(stack.begin(), stack.end(), s2);
                    rep.witness.clear();
                    for (auto i = it; i != stack.end(); ++i) {
                        rep.witness.push_back(*i);
                        rep.witness.push_back(V.up_of(*i));
                    }
                    return false;
                }
                if (c == 0 && !dfs(s2)) return false;
            }
            stack.pop_back();
            color[s] = 2;
            return true;
        };
        for (CellId s : nodes) {
            if ((color.count(s) ? color[s] : 0) == 0 && !dfs(s)) {
                rep.ok = false;
                return rep;
            }
        }
    }
    return rep;
}

CriticalSet critical_cells(const GradientField& V, const Complex& X) {
    CriticalSet cs;
    for (CellId c : X.all_cells())
        if (!V.paired(c)) {
            cs.cells[c.dim].push_back(c);
            ++cs.counts[c.dim];
        }
    return cs;
}

bool is_perfect(const GradientField& V, const Complex& X) { return is_perfect(V, X, betti(X)); }

bool is_perfect(const GradientField& V, const Complex& X, const BettiVector& bv) {
    CriticalSet cs = critical_cells(V, X);
    for (int d = 0; d <= 3; ++d)
        if (cs.counts[d] != bv.b[d]) return false;
    return true;
}

namespace {

void enumerate_desc(const GradientField& V, const Complex& X, VPath cur, CellId at,
                    std::vector<VPath>& out, std::size_t cap) {
    cur.cells.push_back(at);
    CellId t = V.up_of(at);
    if (!t.valid() || t.dim != at.dim + 1) {
        require(out.size() < cap, Err::Internal, "path enumeration cap exceeded");
        out.push_back(cur);
        return;
    }
    cur.cells.push_back(t);
    for (CellId s2 : X.cell(t).facets) {
        if (s2 == at) continue;
        enumerate_desc(V, X, cur, s2, out, cap);
    }
}

void enumerate_asc(const GradientField& V, const Complex& X, std::vector<CellId> cur, CellId at,
                   std::vector<VPath>& out, std::size_t cap, int p) {
    // cur holds the reversed tail; `at` is the current sigma-level cell.
    cur.push_back(at);
    bool extended = false;
    for (CellId t : X.cofacets(at)) {
        if (t.dim != p + 1) continue;
        CellId s_prev = V.down_of(t);
        if (!s_prev.valid() || s_prev.dim != p || s_prev == at) continue;
        std::vector<CellId> next = cur;
        next.push_back(t);
        enumerate_asc(V, X, std::move(next), s_prev, out, cap, p);
        extended = true;
    }
    if (!extended) {
        require(out.size() < cap, Err::Internal, "path enumeration cap exceeded");
        VPath path;
        path.dim = p + 1;
        path.cells.assign(cur.rbegin(), cur.rend());
        out.push_back(std::move(path));
    }
}

}  // namespace

std::vector<VPath> descending_paths(const GradientField& V, CellId c, const Complex& X,
                                    std::size_t cap) {
    std::vector<VPath> out;
    if (c.dim == 0) return out;
    for (CellId s0 : X.cell(c).facets) {
        VPath seed;
        seed.dim = c.dim;
        enumerate_desc(V, X, seed, s0, out, cap);
    }
    return out;
}

std::vector<VPath> ascending_paths_into(const GradientField& V, CellId c, const Complex& X,
                                        std::size_t cap) {
    std::vector<VPath> out;
    if (c.dim == 3) return out;
    enumerate_asc(V, X, {}, c, out, cap, c.dim);
    // Paths of length zero (no pair step) are not V-paths; drop them.
    std::erase_if(out, [](const VPath& p) { return p.cells.size() < 3; });
    return out;
}

FlowReport unique_flow_checks(const GradientField& V, const Complex& X) {
    FlowReport rep;
    // Structural sanity of the matching itself.
    for (const auto& [s, t] : V.up) {
        const auto& fs = X.cell(t).facets;
        if (std::find(fs.begin(), fs.end(), s) == fs.end()) {
            rep.ok = false;
            rep.split_vertices.push_back(s);
        }
        auto it = V.down.find(t);
        if (it == V.down.end() || it->second != s) {
            rep.ok = false;
            rep.split_vertices.push_back(s);
        }
    }
    CriticalSet cs = critical_cells(V, X);
    // (a) every vertex flows to the critical vertex along its unique 1-path.
    CellId sink = cs.counts[0] == 1 ? cs.cells[0][0] : CellId{};
    for (CellId v : X.cells(0)) {
        CellId at = v;
        std::size_t guard = X.size() + 1;
        while (guard--) {
            CellId e = V.up_of(at);
            if (!e.valid() || e.dim != 1) break;
            const auto& vs = X.cell(e).vertices;
            at = vs[0] == at ? vs[1] : vs[0];
        }
        if (!sink.valid() || at != sink) {
            rep.ok = false;
            rep.vertices_not_reaching_min.push_back(v);
        }
    }
    // (b) gate pairings form a tree rooted at the critical 3-cell; then no
    // 2-cell lies on two top paths.
    if (cs.counts[3] == 1) {
        CellId root = cs.cells[3][0];
        for (CellId t : X.cells(3)) {
            CellId at = t;
            std::set<CellId> seen;
            bool good = true;
            while (at != root) {
                if (!seen.insert(at).second) {
                    good = false;
                    break;
                }
                CellId g = V.down_of(at);
                if (!g.valid() || g.dim != 2) {
                    good = false;
                    break;
                }
                CellId next{};
                std::size_t n3 = 0;
                for (CellId up : X.cofacets(g))
                    if (up.dim == 3) {
                        ++n3;
                        if (up != at) next = up;
                    }
                if (n3 != 2 || !next.valid()) {
                    rep.merged_two_cells.push_back(g);
                    good = false;
                    break;
                }
                at = next;
            }
            if (!good) {
                rep.ok = false;
                rep.unreachable_three_cells.push_back(t);
            }
        }
    } else {
        rep.ok = false;
    }
    return rep;
}

GradientField cancel_critical_pair(const GradientField& V, CellId sigma, CellId tau,
                                   const Complex& X) {
    require(!V.paired(sigma) && !V.paired(tau), Err::PreconditionFailed,
            "cancellation needs two critical cells");
    require(sigma.dim + 1 == tau.dim, Err::PreconditionFailed,
            "cancellation needs cells of adjacent dimension");
    // Count V-paths from facets of tau down to sigma, saturating at 2.
    std::map<CellId, int> memo;
    std::function<int(CellId)> count = [&](CellId s) -> int {
        if (s == sigma) return 1;
        auto it = memo.find(s);
        if (it != memo.end()) return it->second;
        int total = 0;
        CellId t = V.up_of(s);
        if (t.valid() && t.dim == s.dim + 1) {
            for (CellId s2 : X.cell(t).facets) {
                if (s2 == s) continue;
                total += count(s2);
                if (total >= 2) break;
            }
        }
        memo[s] = std::min(total, 2);
        return memo[s];
    };
    int total = 0;
    for (CellId s0 : X.cell(tau).facets) {
        total += count(s0);
        if (total >= 2) break;
    }
    require(total != 0, Err::NoPath, "no connecting V-path");
    require(total == 1, Err::MultiplePaths, "more than one connecting V-path");

    // Walk the unique path and reverse it.
    std::vector<CellId> path;  // sigma0, tau0, sigma1, ..., sigma_k
    CellId at{};
    for (CellId s0 : X.cell(tau).facets)
        if (count(s0) == 1) {
            at = s0;
            break;
        }
    path.push_back(at);
    while (at != sigma) {
        CellId t = V.up_of(at);
        path.push_back(t);
        for (CellId s2 : X.cell(t).facets) {
            if (s2 == at) continue;
            if (count(s2) == 1) {
                at = s2;
                break;
            }
        }
        path.push_back(at);
    }
    GradientField out = V;
    for (std::size_t i = 0; i + 1 < path.size(); i += 2) out.erase(path[i], path[i + 1]);
    out.insert(path[0], tau);
    for (std::size_t i = 2; i < path.size(); i += 2) out.insert(path[i], path[i - 1]);
    return out;
}

TopTree top_path_tree(const GradientField& V, const Complex& X) {
    TopTree tree;
    CriticalSet cs = critical_cells(V, X);
    require(cs.counts[3] == 1, Err::PathNotUnique,
            "need exactly one critical 3-cell, got " + std::to_string(cs.counts[3]));
    tree.root = cs.cells[3][0];
    for (CellId t : X.cells(3)) {
        if (t == tree.root) continue;
        CellId g = V.down_of(t);
        require(g.valid() && g.dim == 2, Err::PathNotUnique,
                "3-cell neither critical nor gate-paired");
        CellId parent{};
        std::size_t n3 = 0;
        for (CellId up : X.cofacets(g))
            if (up.dim == 3) {
                ++n3;
                if (up != t) parent = up;
            }
        require(n3 == 2 && parent.valid(), Err::PathNotUnique,
                "gate 2-cell without exactly two 3-cofaces");
        tree.parent[t] = parent;
        tree.gate[t] = g;
    }
    // Every 3-cell must reach the root (tree, not forest with stray cycles).
    for (CellId t : X.cells(3)) {
        CellId at = t;
        std::size_t guard = X.cells(3).size() + 1;
        while (at != tree.root) {
            require(guard--, Err::PathNotUnique, "parent walk does not reach the critical 3-cell");
            at = tree.parent.at(at);
        }
    }
    return tree;
}

std::vector<CellId> TopTree::path_from_root(CellId t) const {
    std::vector<CellId> out{t};
    while (t != root) {
        t = parent.at(t);
        out.push_back(t);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

// Parity of the number of V-path prefixes from the boundary of c2 arriving
// at each edge (descending flow), pulled from predecessors.
struct DescReach {
    const GradientField& V;
    const Complex& X;
    CellId c2;
    std::map<CellId, int> memo;
    // predecessors: pairs (f, tau(f)) with `a` a facet of tau(f), f != a
    int reach(CellId a) {
        auto it = memo.find(a);
        if (it != memo.end()) return it->second;
        memo[a] = 0;  // DAG: a cycle would need a closed V-path
        int r = 0;
        const auto& cf = X.cell(c2).facets;
        if (std::find(cf.begin(), cf.end(), a) != cf.end()) r ^= 1;
        for (CellId t : X.cofacets(a)) {
            if (t.dim != a.dim + 1) continue;
            CellId f = V.down_of(t);
            if (!f.valid() || f.dim != a.dim || f == a) continue;
            r ^= reach(f);
        }
        memo[a] = r;
        return r;
    }
};

// Parity of the number of V-paths from each edge down to c1 (ascending
// object of c1), pulled from successors.
struct AscCount {
    const GradientField& V;
    const Complex& X;
    CellId c1;
    std::map<CellId, int> memo;
    int count(CellId e) {
        if (e == c1) return 1;
        auto it = memo.find(e);
        if (it != memo.end()) return it->second;
        memo[e] = 0;
        CellId t = V.up_of(e);
        int r = 0;
        if (t.valid() && t.dim == e.dim + 1) {
            for (CellId s2 : X.cell(t).facets) {
                if (s2 == e) continue;
                r ^= count(s2);
            }
        }
        memo[e] = r;
        return r;
    }
    bool reaches(CellId e) {
        if (e == c1) return true;
        if (bmemo.count(e)) return bmemo[e];
        bmemo[e] = false;
        CellId t = V.up_of(e);
        bool r = false;
        if (t.valid() && t.dim == e.dim + 1)
            for (CellId s2 : X.cell(t).facets) {
                if (s2 == e) continue;
                if (reaches(s2)) {
                    r = true;
                    break;
                }
            }
        bmemo[e] = r;
        return r;
    }
    std::map<CellId, bool> bmemo;
};

}  // namespace

Z2Chain descending_two_cycle(const GradientField& V, const Complex& X, CellId c2) {
    require(c2.dim == 2 && !V.paired(c2), Err::PreconditionFailed,
            "descending cycle needs a critical 2-cell");
    DescReach dp{V, X, c2, {}};
    std::vector<CellId> cells{c2};
    for (const auto& [e, t] : V.up) {
        if (e.dim != 1 || t.dim != 2) continue;
        if (dp.reach(e)) cells.push_back(t);
    }
    return make_z2_chain(2, std::move(cells));
}

Z2Chain ascending_two_chain_raw(const GradientField& V, const Complex& X, CellId c1) {
    require(c1.dim == 1 && !V.paired(c1), Err::PreconditionFailed,
            "ascending chain needs a critical 1-cell");
    AscCount dp{V, X, c1, {}, {}};
    std::vector<CellId> cells;
    for (const auto& [e, t] : V.up) {
        if (e.dim != 1 || t.dim != 2) continue;
        if (dp.count(e)) cells.push_back(t);
    }
    return make_z2_chain(2, std::move(cells));
}

std::vector<CellId> ascending_sheet(const GradientField& V, const Complex& X, CellId c1) {
    AscCount dp{V, X, c1, {}, {}};
    std::vector<CellId> out{c1};
    for (const auto& [e, t] : V.up) {
        if (e.dim != 1 || t.dim != 2) continue;
        if (dp.reaches(e)) {
            out.push_back(e);
            out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<CellId> descending_sources_into(const GradientField& V, const Complex& X, CellId c1) {
    AscCount dp{V, X, c1, {}, {}};
    std::vector<CellId> out;
    for (CellId c2 : X.cells(2)) {
        if (V.paired(c2)) continue;
        for (CellId e : X.cell(c2).facets)
            if (dp.reaches(e)) {
                out.push_back(c2);
                break;
            }
    }
    return out;
}

std::vector<CellId> one_path_edges(const GradientField& V, const Complex& X, CellId v) {
    std::vector<CellId> out;
    CellId at = v;
    std::size_t guard = X.size() + 1;
    while (guard--) {
        CellId e = V.up_of(at);
        if (!e.valid() || e.dim != 1) break;
        out.push_back(e);
        const auto& vs = X.cell(e).vertices;
        at = vs[0] == at ? vs[1] : vs[0];
    }
    return out;
}

GradientField transport_over_step(const GradientField& V, const SubdivisionTrace::Step& step,
                                  const CellLookup& lookup, CellId avoid,
                                  const std::set<CellId>* suspend) {
    std::map<CellId, const SubdivisionTrace::Split*> split_of;
    std::map<CellId, CellId> refit_of;
    for (const auto& sp : step.splits) split_of[sp.old_cell] = &sp;
    for (const auto& rf : step.refits) refit_of[rf.old_cell] = rf.new_cell;

    auto is_facet = [&](CellId f, CellId c) {
        const auto& fs = lookup(c).facets;
        return std::find(fs.begin(), fs.end(), f) != fs.end();
    };
    auto self_or_refit = [&](CellId c) {
        auto it = refit_of.find(c);
        return it == refit_of.end() ? c : it->second;
    };
    auto suspended = [&](CellId c) { return suspend && suspend->count(c); };

    GradientField out;
    std::set<CellId> touched_criticals;
    for (const auto& [s, t] : V.up) {
        if (suspended(s) || suspended(t)) continue;
        auto ss = split_of.find(s);
        auto ts = split_of.find(t);
        if (ss == split_of.end() && ts == split_of.end()) {
            out.insert(self_or_refit(s), self_or_refit(t));
        } else if (ss != split_of.end() && ts != split_of.end()) {
            out.insert(ss->second->piece_a, ts->second->piece_a);
            out.insert(ss->second->piece_b, ts->second->piece_b);
            out.insert(ss->second->waist, ts->second->waist);
        } else if (ss == split_of.end()) {
            CellId s2 = self_or_refit(s);
            const auto* sp = ts->second;
            if (is_facet(s2, sp->piece_a)) {
                out.insert(s2, sp->piece_a);
                out.insert(sp->waist, sp->piece_b);
            } else {
                require(is_facet(s2, sp->piece_b), Err::Internal,
                        "transported cell is a facet of neither piece");
                out.insert(s2, sp->piece_b);
                out.insert(sp->waist, sp->piece_a);
            }
        } else {
            fail(Err::Internal, "split cell paired with an untouched coface");
        }
    }
    // Critical split cells: keep one carrier piece critical, pair the waist
    // with the other piece.
    for (const auto& sp : step.splits) {
        if (V.paired(sp.old_cell) || suspended(sp.old_cell)) continue;
        CellId keep = sp.piece_a, other = sp.piece_b;
        if (avoid.valid()) {
            const auto& va = lookup(sp.piece_a).vertices;
            const auto& vb = lookup(sp.piece_b).vertices;
            bool a_has = std::find(va.begin(), va.end(), avoid) != va.end();
            bool b_has = std::find(vb.begin(), vb.end(), avoid) != vb.end();
            if (a_has && !b_has) {
                keep = sp.piece_b;
                other = sp.piece_a;
            }
        }
        out.insert(sp.waist, other);
        (void)keep;
    }
    return out;
}

GradientField transport(const GradientField& V, const SubdivisionTrace& trace,
                        const Complex& result, CellId avoid) {
    GradientField cur = V;
    for (const auto& step : trace.steps)
        cur = transport_over_step(
            cur, step, [&](CellId c) -> const Cell& { return result.cell(c); }, avoid);
    return cur;
}

GradientField restrict_field(const GradientField& V, const Region& R) {
    GradientField out;
    for (const auto& [s, t] : V.up)
        if (R.contains(s) && R.contains(t)) out.insert(s, t);
    return out;
}

}  // namespace dmt
