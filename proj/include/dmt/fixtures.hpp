#pragma once

#include <cstdint>
#include <string>

#include "dmt/morse.hpp"

namespace dmt {

// Test manifold with ground truth attached: per-cell summand tags for
// connected sums (-1 marks the shared gluing sphere) and the known Betti
// vector, re-verified on construction.
struct LabeledManifold {
    Complex complex;
    std::map<CellId, int> provenance;
    BettiVector known_betti;
    std::string name;
};

// name is one of "S3", "S2xS1", "T3".
LabeledManifold standard_triangulation(const std::string& name);

LabeledManifold connected_sum(const LabeledManifold& A, const LabeledManifold& B);

// Random collapse-style acyclic matching, deterministic per seed.
GradientField random_acyclic_matching(const Complex& X, std::uint64_t seed);

// Random matching + cancellation until the critical counts hit betti(X);
// reseeds up to max_retries times.
GradientField perfect_field_search(const Complex& X, std::uint64_t seed, int max_retries = 64);

// Acyclic matching whose critical set is exactly `criticals`; backtracking
// search, deterministic.
GradientField matching_with_critical_set(const Complex& X, const std::vector<CellId>& criticals);

// The 13-vertex 2-sphere used by the cone-extension acceptance test, with
// named vertices v0..v12 and a gradient field whose critical cells are
// v9; [v1,v9], [v5,v6], [v8,v12]; [v0,v1,v3], [v2,v8,v9], [v3,v4,v7],
// [v10,v11,v12].
struct SpherePatch {
    Complex complex;
    GradientField field;
    std::array<CellId, 13> vertex;  // vertex[i] is the cell labeled v_i
};

SpherePatch figure_sphere_with_field();

}  // namespace dmt
