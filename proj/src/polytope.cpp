#include "gme/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gme/errors.hpp"
#include "gme/simplex.hpp"

namespace gme {

const char* to_string(PolytopeKind k) { return k == PolytopeKind::fully_local ? "fully_local" : "two_way_local"; }

BipartiteBehavior pr_box(int convention) {
    if (convention < 0 || convention >= kPrConventions)
        throw ParameterError("PR box convention must be 0..7, got " + std::to_string(convention));
    const int u = (convention >> 2) & 1, w = (convention >> 1) & 1, t = convention & 1;
    std::array<double, BipartiteBehavior::kSize> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const int parity = (x & y) ^ (u & x) ^ (w & y) ^ t;
            for (int a = 0; a < 2; ++a) p[BipartiteBehavior::index(x, y, a, a ^ parity)] = 0.5;
        }
    return BipartiteBehavior(p);
}

double chsh_symmetry_value(const BipartiteBehavior& p, int convention) {
    if (convention < 0 || convention >= kPrConventions) throw ParameterError("CHSH convention must be 0..7");
    const int u = (convention >> 2) & 1, w = (convention >> 1) & 1, t = convention & 1;
    double s = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const int parity = (x & y) ^ (u & x) ^ (w & y) ^ t;
            s += (parity ? -1.0 : 1.0) * correlator(p, x, y);
        }
    return s;
}

VertexSet enumerate_fully_local() {
    VertexSet set;
    set.kind = PolytopeKind::fully_local;
    for (int sa = 0; sa < 4; ++sa)
        for (int sb = 0; sb < 4; ++sb)
            for (int sc = 0; sc < 4; ++sc) {
                set.vertices.push_back(Behavior::deterministic(sa, sb, sc));
                set.labels.push_back("det A" + std::to_string(sa) + " B" + std::to_string(sb) + " C" +
                                     std::to_string(sc));
            }
    set.candidates = set.vertices.size();
    return set;
}

std::vector<BipartiteBehavior> enumerate_bipartite_ns_extremals() {
    std::vector<BipartiteBehavior> boxes;
    for (int s1 = 0; s1 < 4; ++s1)
        for (int s2 = 0; s2 < 4; ++s2) boxes.push_back(BipartiteBehavior::deterministic(s1, s2));
    for (int k = 0; k < kPrConventions; ++k) boxes.push_back(pr_box(k));
    return boxes;
}

VertexSet enumerate_two_way_local() {
    VertexSet set;
    set.kind = PolytopeKind::two_way_local;
    const auto boxes = enumerate_bipartite_ns_extremals();
    for (int branch = 0; branch < 3; ++branch) {
        const auto bip = static_cast<Bipartition>(branch);
        for (int s = 0; s < 4; ++s)
            for (std::size_t k = 0; k < boxes.size(); ++k) {
                ++set.candidates;
                Behavior v = product_behavior(single_party(bip), s, boxes[k]);
                if (std::find(set.vertices.begin(), set.vertices.end(), v) != set.vertices.end()) continue;
                set.vertices.push_back(v);
                const std::string box = k < 16 ? "det" + std::to_string(k) : "PR" + std::to_string(k - 16);
                set.labels.push_back(std::string(to_string(bip)) + " single" + std::to_string(s) + " x " + box);
            }
    }
    return set;
}

BranchBoxes aligned_branches() { return {BranchBox{0, 0}, BranchBox{0, 0}, BranchBox{0, 0}}; }

Behavior canonical_l2_behavior(double k1, double k2, double k3, double lambda, const BranchBoxes& branches) {
    const std::array<double, 3> k{k1, k2, k3};
    for (double w : k)
        if (!(w >= 0.0)) throw ParameterError("canonical_l2_behavior: weights must be non-negative");
    if (std::abs(k1 + k2 + k3 - 1.0) > kNormTol) throw ParameterError("canonical_l2_behavior: weights must sum to 1");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ParameterError("canonical_l2_behavior: lambda must lie in [0,1]");

    std::vector<Behavior> parts;
    for (int b = 0; b < 3; ++b) {
        const auto& br = branches[static_cast<std::size_t>(b)];
        if (br.single_strategy < 0 || br.single_strategy > 3)
            throw ParameterError("canonical_l2_behavior: single-party strategy must be 0..3");
        parts.push_back(product_behavior(static_cast<Party>(b), br.single_strategy,
                                         BipartiteBehavior::noisy(pr_box(br.pr_convention), lambda)));
    }
    return Behavior::mixture(parts, k);
}

namespace {

lp::Rational exact_rational(double v) {
    if (v == 0.0) return lp::Rational(0);
    int exp = 0;
    const double frac = std::frexp(v, &exp);
    const auto mantissa = static_cast<long long>(std::ldexp(frac, 53));
    lp::Rational r(mantissa);
    const int shift = exp - 53;
    boost::multiprecision::cpp_int pow2 = 1;
    pow2 <<= std::abs(shift);
    if (shift >= 0)
        r *= lp::Rational(pow2);
    else
        r /= lp::Rational(pow2);
    return r;
}

template <class T>
lp::Result<T> solve_convex_hull(std::span<const double> target, const std::vector<std::span<const double>>& columns,
                                T (*convert)(double)) {
    lp::Problem<T> prob;
    prob.rows = target.size() + 1;
    prob.cols = columns.size();
    prob.a.assign(prob.rows * prob.cols, T(0));
    prob.b.assign(prob.rows, T(0));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        for (std::size_t i = 0; i < target.size(); ++i) prob.at(i, j) = convert(columns[j][i]);
        prob.at(target.size(), j) = T(1);
    }
    for (std::size_t i = 0; i < target.size(); ++i) prob.b[i] = convert(target[i]);
    prob.b[target.size()] = T(1);
    return lp::solve(prob);
}

double identity(double v) { return v; }

PolytopeVerdict hull_membership(std::span<const double> target, const std::vector<std::span<const double>>& columns,
                                LpArithmetic arithmetic) {
    std::vector<double> x;
    bool feasible = false;
    double phase1 = 0.0;
    if (arithmetic == LpArithmetic::exact) {
        const auto r = solve_convex_hull<lp::Rational>(target, columns, &exact_rational);
        feasible = r.status != lp::Status::infeasible;
        phase1 = r.phase1_objective.convert_to<double>();
        for (const auto& v : r.x) x.push_back(v.convert_to<double>());
    } else {
        const auto r = solve_convex_hull<double>(target, columns, &identity);
        feasible = r.status != lp::Status::infeasible;
        phase1 = r.phase1_objective;
        x = r.x;
    }

    PolytopeVerdict verdict;
    if (!feasible) {
        verdict.member = false;
        verdict.max_residual = phase1;
        return verdict;
    }
    std::vector<double> recon(target.size(), 0.0);
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const double w = std::max(x[j], 0.0);
        if (w == 0.0) continue;
        verdict.weights.push_back({j, w});
        for (std::size_t i = 0; i < target.size(); ++i) recon[i] += w * columns[j][i];
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) worst = std::max(worst, std::abs(recon[i] - target[i]));
    verdict.max_residual = worst;
    verdict.member = worst <= kMembershipTol;
    if (!verdict.member) verdict.weights.clear();
    return verdict;
}

}  // namespace

PolytopeVerdict membership(const Behavior& p, const VertexSet& set, LpArithmetic arithmetic) {
    if (set.vertices.empty()) throw InputError("membership: empty vertex set");
    std::vector<std::span<const double>> cols;
    cols.reserve(set.vertices.size());
    for (const auto& v : set.vertices) cols.push_back(v.data());
    return hull_membership(p.data(), cols, arithmetic);
}

PolytopeVerdict membership(const BipartiteBehavior& p, const std::vector<BipartiteBehavior>& vertices,
                           LpArithmetic arithmetic) {
    if (vertices.empty()) throw InputError("membership: empty vertex list");
    std::vector<std::span<const double>> cols;
    cols.reserve(vertices.size());
    for (const auto& v : vertices) cols.push_back(v.data());
    return hull_membership(p.data(), cols, arithmetic);
}

}  // namespace gme
