#pragma once

// Vertex sets of the fully-local and two-way-local polytopes, PR-type boxes,
// the canonical two-way-local mixture, and LP membership.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "gme/behavior.hpp"
#include "gme/quantum.hpp"

namespace gme {

enum class PolytopeKind { fully_local, two_way_local };
const char* to_string(PolytopeKind k);

struct VertexSet {
    PolytopeKind kind = PolytopeKind::fully_local;
    std::vector<Behavior> vertices;
    std::vector<std::string> labels;
    std::size_t candidates = 0;   // before deduplication
};

/// PR-type box with correlators E(x,y) = (-1)^{xy ⊕ u·x ⊕ w·y ⊕ t} and uniform
/// marginals, convention id = 4u + 2w + t. Id 0 is a⊕b = x·y.
BipartiteBehavior pr_box(int convention);
inline constexpr int kPrConventions = 8;

/// Σ_{xy} (-1)^{xy ⊕ u·x ⊕ w·y ⊕ t} E(x,y) for the same id scheme; equals 4
/// exactly on the matching PR box and is at most 2 on local boxes.
double chsh_symmetry_value(const BipartiteBehavior& p, int convention);

VertexSet enumerate_fully_local();
/// 16 deterministic boxes followed by the 8 PR boxes.
std::vector<BipartiteBehavior> enumerate_bipartite_ns_extremals();
VertexSet enumerate_two_way_local();

/// One branch of the canonical mixture: a deterministic single party times a
/// noisy PR box on the remaining pair.
struct BranchBox {
    int single_strategy = 0;
    int pr_convention = 0;
};
using BranchBoxes = std::array<BranchBox, 3>;   // indexed by Bipartition

/// Every branch contributes +4λ to the Mermin expression and gives its family
/// partner the sign of M_000: the single party always outputs 0 and the pair
/// shares the a⊕b = (first input)·(second input) PR box.
BranchBoxes aligned_branches();

/// k1·D_A×PR^λ_BC + k2·D_B×PR^λ_AC + k3·D_C×PR^λ_AB
Behavior canonical_l2_behavior(double k1, double k2, double k3, double lambda,
                               const BranchBoxes& branches = aligned_branches());

enum class LpArithmetic { floating, exact };

struct VertexWeight {
    std::size_t vertex = 0;
    double weight = 0.0;
};

struct PolytopeVerdict {
    bool member = false;
    std::vector<VertexWeight> weights;   // nonzero weights only
    double max_residual = 0.0;           // reconstruction error, or phase-1 objective when infeasible
};

inline constexpr double kMembershipTol = 1e-8;

/// Finds w >= 0 with Σw = 1 and Σ w_v P_v = p by two-phase simplex.
PolytopeVerdict membership(const Behavior& p, const VertexSet& set, LpArithmetic arithmetic = LpArithmetic::floating);

/// Same LP for two-party boxes against an explicit list.
PolytopeVerdict membership(const BipartiteBehavior& p, const std::vector<BipartiteBehavior>& vertices,
                           LpArithmetic arithmetic = LpArithmetic::floating);

}  // namespace gme
