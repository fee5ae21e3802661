#pragma once

// Admissible sign words, topological sign constraints, x/y-monotonicity and
// the feasibility projection.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "model.hpp"
#include "symmetry.hpp"

namespace choreo {

struct OmegaValidity {
    bool valid = false;
    std::string reason;
    explicit operator bool() const { return valid; }
};

/// Membership in Omega_[n/2] plus, for odd n, two differing signs among indices 1..[n/2].
inline OmegaValidity validate_omega(int n, std::span<const int> signs) {
    if (n < 2) throw Error("validate_omega: n must be >= 2");
    const std::size_t len = static_cast<std::size_t>(n / 2 + 1);
    if (signs.size() != len)
        throw Error("validate_omega: expected " + std::to_string(len) + " signs, got " + std::to_string(signs.size()));
    for (int s : signs)
        if (s != 1 && s != -1) throw Error("validate_omega: signs must be +1 or -1");
    const bool constant = std::all_of(signs.begin(), signs.end(), [&](int s) { return s == signs[0]; });
    if (constant)
        return {false, "not in Omega_[n/2]: all signs are equal;\n"
                       "the two loops must switch sides of the xy-plane at least once"};
    if (n % 2 == 1) {
        const auto tail = signs.subspan(1);
        const bool tail_constant = std::all_of(tail.begin(), tail.end(), [&](int s) { return s == tail[0]; });
        if (tail_constant) {
            std::string r = "odd n requires two indices i1 != i2 in [1, " + std::to_string(n / 2) +
                            "] with differing signs;\n";
            r += n == 3 ? "for n = 3 only one such index exists, so no sign word is admissible"
                        : "signs 1.." + std::to_string(n / 2) + " are all equal";
            return {false, r};
        }
    }
    return {true, "admissible"};
}

inline OmegaValidity validate_omega(const OmegaSequence& omega) { return validate_omega(omega.n(), omega.signs()); }

/// All admissible words in lexicographic order ('+' before '-'); with
/// modulo_flip only the word with omega_0 = +1 of each mirror pair is kept.
inline std::vector<OmegaSequence> enumerate_admissible_omega(int n, bool modulo_flip = false) {
    if (n < 2) throw Error("enumerate_admissible_omega: n must be >= 2");
    const int len = n / 2 + 1;
    if (len > 30) throw Error("enumerate_admissible_omega: n too large to enumerate");
    std::vector<OmegaSequence> out;
    std::vector<int> signs(static_cast<std::size_t>(len));
    for (unsigned long mask = 0; mask < (1ul << len); ++mask) {
        for (int i = 0; i < len; ++i) signs[static_cast<std::size_t>(i)] = (mask >> (len - 1 - i)) & 1u ? -1 : 1;
        if (modulo_flip && signs[0] < 0) continue;
        if (validate_omega(n, signs)) out.emplace_back(n, signs);
    }
    return out;
}

/// Closed-form count of admissible words.
inline long admissible_omega_count(int n) {
    const int m = n / 2;
    if (n % 2 == 0) return (1l << (m + 1)) - 2;
    return 2 * ((1l << m) - 2);
}

struct FeasibilityDiagnosis {
    bool omega_valid = false;
    /// z_0(i/2) has sign omega_i or is zero.
    std::vector<bool> topo_satisfied;
    /// z_0(i/2) == 0: admissible in the closed set but a binary collision.
    std::vector<bool> boundary_collision_risk;
    Monotonicity x_monotone = Monotonicity::violated;
    Monotonicity y_monotone = Monotonicity::violated;
    bool boundary_ok = false;

    bool topo_all() const { return std::all_of(topo_satisfied.begin(), topo_satisfied.end(), [](bool b) { return b; }); }
    bool topo_strict() const {
        return topo_all() &&
               std::none_of(boundary_collision_risk.begin(), boundary_collision_risk.end(), [](bool b) { return b; });
    }
    bool weakly_feasible() const {
        return omega_valid && topo_all() && boundary_ok && x_monotone != Monotonicity::violated &&
               y_monotone != Monotonicity::violated;
    }
    bool strictly_feasible() const {
        return weakly_feasible() && topo_strict() && x_monotone == Monotonicity::strict &&
               y_monotone == Monotonicity::strict;
    }

    ConstraintFlags flags() const {
        return {true, x_monotone, y_monotone, topo_all(), boundary_ok};
    }
};

/// Classifies a sequence as nondecreasing (weak), increasing (strict) or neither.
inline Monotonicity classify_monotone(std::span<const double> v, double tol = 0.0) {
    bool strict = true;
    for (std::size_t k = 1; k < v.size(); ++k) {
        const double d = v[k] - v[k - 1];
        if (d < -tol) return Monotonicity::violated;
        if (!(d > tol)) strict = false;
    }
    return strict ? Monotonicity::strict : Monotonicity::weak;
}

/// Arc node index of time i/2.
inline int constraint_node(int n, int nodes, int i) {
    if ((2L * nodes * i) % n != 0)
        throw GridError("constraint time " + std::to_string(i) + "/2 is not an arc node for M = " +
                        std::to_string(nodes) + ", n = " + std::to_string(n));
    return static_cast<int>(2L * nodes * i / n);
}

inline FeasibilityDiagnosis diagnose(const FundamentalArc& arc, const OmegaSequence& omega, double tol = 0.0) {
    if (arc.n() != omega.n()) throw Error("diagnose: arc and omega disagree on n");
    const int n = arc.n();
    const int M = arc.nodes();
    FeasibilityDiagnosis d;
    d.omega_valid = validate_omega(omega).valid;
    for (int i = 0; i <= n / 2; ++i) {
        const double z = arc[constraint_node(n, M, i)].z;
        d.topo_satisfied.push_back(z * omega[i] >= 0.0);
        d.boundary_collision_risk.push_back(z == 0.0);
    }
    std::vector<double> xs, ys;
    for (const auto& p : arc.samples()) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    d.x_monotone = classify_monotone(xs, tol);
    d.y_monotone = classify_monotone(ys, tol);
    d.boundary_ok = boundary_defect(arc) <= std::max(tol, kBoundaryTolerance);
    return d;
}

/// Reads q_0 on [0, n/4] from the loop and diagnoses it.
inline FeasibilityDiagnosis diagnose(const FullLoop& loop, const OmegaSequence& omega, double tol = 0.0) {
    const SymmetrySpec spec(omega.n());
    if (loop.sample_count() % (2 * omega.n()) != 0)
        throw GridError("diagnose: loop grid does not contain the times i/2");
    return diagnose(extract_arc(spec, loop), omega, tol);
}

/// Euclidean projection onto nondecreasing sequences (pool adjacent violators).
inline std::vector<double> isotonic_regression(std::span<const double> v) {
    struct Block {
        double sum;
        std::size_t count;
        double mean() const { return sum / static_cast<double>(count); }
    };
    std::vector<Block> blocks;
    for (double x : v) {
        blocks.push_back({x, 1});
        while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
            Block b = blocks.back();
            blocks.pop_back();
            blocks.back().sum += b.sum;
            blocks.back().count += b.count;
        }
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& b : blocks) out.insert(out.end(), b.count, b.mean());
    return out;
}

/// Pins the boundary identities, projects x and y onto the monotone cones
/// with x <= 0 = x_M and y_0 = 0 <= y, and sets z_0(i/2) = omega_i |z_0(i/2)|.
inline FundamentalArc project_feasible(const FundamentalArc& arc, const OmegaSequence& omega) {
    if (arc.n() != omega.n()) throw Error("project_feasible: arc and omega disagree on n");
    if (const auto v = validate_omega(omega); !v) throw Error("project_feasible: inadmissible omega: " + v.reason);
    const int n = arc.n();
    const int M = arc.nodes();
    std::vector<Vec3> q(arc.samples().begin(), arc.samples().end());

    std::vector<double> xs(static_cast<std::size_t>(M)), ys(static_cast<std::size_t>(M));
    for (int k = 0; k < M; ++k) {
        xs[static_cast<std::size_t>(k)] = q[static_cast<std::size_t>(k)].x;
        ys[static_cast<std::size_t>(k)] = q[static_cast<std::size_t>(k) + 1].y;
    }
    xs = isotonic_regression(xs);
    ys = isotonic_regression(ys);
    for (int k = 0; k < M; ++k) {
        q[static_cast<std::size_t>(k)].x = std::min(xs[static_cast<std::size_t>(k)], 0.0);
        q[static_cast<std::size_t>(k) + 1].y = std::max(ys[static_cast<std::size_t>(k)], 0.0);
    }
    q.front().y = 0.0;
    q.back().x = 0.0;

    for (int i = 0; i <= n / 2; ++i) {
        double& z = q[static_cast<std::size_t>(constraint_node(n, M, i))].z;
        z = omega[i] * std::abs(z);
    }
    return arc.with_samples(std::move(q));
}

}  // namespace choreo
