#pragma once

// Discrete action on piecewise-linear loops: kinetic term integrated exactly,
// potential by the periodic trapezoidal rule. Gradients and Hessians are
// pulled back to the free coordinates of the fundamental arc.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "constraints.hpp"
#include "model.hpp"
#include "symmetry.hpp"

namespace choreo {

inline constexpr double kSearchCollisionGuard = 1e-6;
inline constexpr double kAcceptanceCollisionGuard = 1e-3;

struct Quadrature {
    double collision_guard = kSearchCollisionGuard;
};

/// Smallest pairwise distance of one configuration.
inline double min_pairwise_distance(std::span<const Vec3> config) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < config.size(); ++i)
        for (std::size_t j = i + 1; j < config.size(); ++j) best = std::min(best, norm(config[i] - config[j]));
    return best;
}

inline double min_pairwise_distance(const FullLoop& loop) {
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < loop.sample_count(); ++s) best = std::min(best, min_pairwise_distance(loop.config(s)));
    return best;
}

/// sum_{i<j} m_i m_j / |q_i - q_j|.
inline double potential(std::span<const Vec3> config, std::span<const double> masses,
                        double collision_guard = kSearchCollisionGuard) {
    if (config.size() != masses.size()) throw Error("potential: configuration and mass counts differ");
    double u = 0.0;
    for (std::size_t i = 0; i < config.size(); ++i)
        for (std::size_t j = i + 1; j < config.size(); ++j) {
            const double r = norm(config[i] - config[j]);
            if (r < collision_guard)
                throw CollisionError("potential: bodies " + std::to_string(i) + " and " + std::to_string(j) +
                                         " at distance " + std::to_string(r),
                                     r);
            u += masses[i] * masses[j] / r;
        }
    return u;
}

/// Gradient of the potential with respect to each position: -sum_j m_i m_j (q_i - q_j)/r^3.
inline std::vector<Vec3> potential_gradient(std::span<const Vec3> config, std::span<const double> masses) {
    std::vector<Vec3> g(config.size());
    for (std::size_t i = 0; i < config.size(); ++i)
        for (std::size_t j = i + 1; j < config.size(); ++j) {
            const Vec3 d = config[i] - config[j];
            const double r2 = norm2(d);
            const Vec3 f = d * (masses[i] * masses[j] / (r2 * std::sqrt(r2)));
            g[i] -= f;
            g[j] += f;
        }
    return g;
}

namespace detail {

struct LoopTerms {
    double kinetic = 0.0;
    double potential = 0.0;
    double min_distance = std::numeric_limits<double>::infinity();
};

inline LoopTerms loop_terms(const FullLoop& loop, double guard) {
    const int S = loop.sample_count();
    const int N = loop.body_count();
    const double dt = loop.step();
    const auto masses = loop.mass_system().masses();
    LoopTerms t;
    for (int s = 0; s < S; ++s) {
        const auto c = loop.config(s);
        t.potential += potential(c, masses, guard);
        t.min_distance = std::min(t.min_distance, min_pairwise_distance(c));
        for (int i = 0; i < N; ++i) t.kinetic += 0.5 * masses[static_cast<std::size_t>(i)] * norm2(loop.at(s + 1, i) - loop.at(s, i));
    }
    t.kinetic /= dt;
    t.potential *= dt;
    return t;
}

}  // namespace detail

/// Gradient of the discrete action with respect to every loop position, indexed [s * N + i].
inline std::vector<Vec3> loop_action_gradient(const FullLoop& loop) {
    const int S = loop.sample_count();
    const int N = loop.body_count();
    const double dt = loop.step();
    const auto masses = loop.mass_system().masses();
    std::vector<Vec3> g(static_cast<std::size_t>(S) * N);
    for (int s = 0; s < S; ++s) {
        const auto pg = potential_gradient(loop.config(s), masses);
        for (int i = 0; i < N; ++i) {
            const double m = masses[static_cast<std::size_t>(i)];
            const Vec3 acc = (2.0 * loop.at(s, i) - loop.at(s - 1, i) - loop.at(s + 1, i)) * (m / dt);
            g[static_cast<std::size_t>(s) * N + i] = acc + pg[static_cast<std::size_t>(i)] * dt;
        }
    }
    return g;
}

inline ActionReport action_value(const FullLoop& loop, double collision_guard = kSearchCollisionGuard) {
    if (loop.sample_count() < 8) throw Error("action_value: need at least 8 samples");
    const auto t = detail::loop_terms(loop, collision_guard);
    ActionReport r;
    r.kinetic_integral = t.kinetic;
    r.potential_integral = t.potential;
    r.action = t.kinetic + t.potential;
    r.min_pairwise_distance = t.min_distance;
    double gmax = 0.0;
    for (const auto& v : loop_action_gradient(loop)) gmax = std::max({gmax, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
    r.gradient_inf_norm = gmax;
    return r;
}

/// Same as action_value with constraint flags filled for the given sign word.
inline ActionReport action_value(const FullLoop& loop, const OmegaSequence& omega,
                                 double collision_guard = kSearchCollisionGuard) {
    ActionReport r = action_value(loop, collision_guard);
    r.constraint_flags = diagnose(loop, omega).flags();
    return r;
}

// ---------------------------------------------------------------------------
// Arc parametrization

/// Where every loop position comes from: loop(s, i) = sign * arc[node].
class ArcLayout {
  public:
    ArcLayout(const SymmetrySpec& spec, int nodes) : n_(spec.n()), M_(nodes) {
        if (!grid_compatible(n_, nodes))
            throw GridError("ArcLayout: " + std::to_string(nodes) + " arc intervals do not embed for n = " +
                            std::to_string(n_));
        const int S = 4 * M_;
        const int N = 2 * n_;
        const int per_unit = S / n_;
        entries_.resize(static_cast<std::size_t>(S) * N);
        for (int s = 0; s < S; ++s)
            for (int i = 0; i < n_; ++i) {
                const Entry e = q0_entry((s + i * per_unit) % S);
                entries_[static_cast<std::size_t>(s) * N + i] = e;
                entries_[static_cast<std::size_t>(s) * N + n_ + i] = {e.node, SignedAxes::R_x() * e.sign};
            }
    }

    struct Entry {
        int node;
        SignedAxes sign;
    };

    int n() const { return n_; }
    int nodes() const { return M_; }
    int sample_count() const { return 4 * M_; }
    int body_count() const { return 2 * n_; }
    const Entry& at(int s, int i) const { return entries_[static_cast<std::size_t>(s) * body_count() + i]; }

    /// Number of free scalars: every arc coordinate except y_0(0) and x_0(n/4).
    int free_dimension() const { return 3 * (M_ + 1) - 2; }

    /// Index of arc coordinate (k, c) in the free vector, or -1 when pinned.
    int free_index(int k, int c) const {
        if (k == 0 && c == 1) return -1;
        if (k == M_ && c == 0) return -1;
        int idx = 3 * k + c;
        if (k > 0 || c > 1) --idx;   // skip y_0
        if (k == M_ && c > 0) --idx;  // skip x_M
        return idx;
    }

    Eigen::VectorXd pack(const FundamentalArc& arc) const {
        Eigen::VectorXd v(free_dimension());
        for (int k = 0; k <= M_; ++k)
            for (int c = 0; c < 3; ++c)
                if (int f = free_index(k, c); f >= 0) v[f] = arc[k][c];
        return v;
    }

    FundamentalArc unpack(const Eigen::VectorXd& v) const {
        if (v.size() != free_dimension()) throw Error("ArcLayout::unpack: wrong dimension");
        std::vector<Vec3> q(static_cast<std::size_t>(M_) + 1);
        for (int k = 0; k <= M_; ++k)
            for (int c = 0; c < 3; ++c)
                if (int f = free_index(k, c); f >= 0) q[static_cast<std::size_t>(k)][c] = v[f];
        return FundamentalArc(n_, std::move(q));
    }

    /// Pulls a per-position loop gradient back to per-node arc sensitivities.
    std::vector<Vec3> pull_back(std::span<const Vec3> loop_gradient) const {
        std::vector<Vec3> g(static_cast<std::size_t>(M_) + 1);
        for (int s = 0; s < sample_count(); ++s)
            for (int i = 0; i < body_count(); ++i) {
                const Entry& e = at(s, i);
                g[static_cast<std::size_t>(e.node)] += e.sign.apply(loop_gradient[static_cast<std::size_t>(s) * body_count() + i]);
            }
        return g;
    }

    Eigen::VectorXd restrict_free(std::span<const Vec3> node_gradient) const {
        Eigen::VectorXd v(free_dimension());
        for (int k = 0; k <= M_; ++k)
            for (int c = 0; c < 3; ++c)
                if (int f = free_index(k, c); f >= 0) v[f] = node_gradient[static_cast<std::size_t>(k)][c];
        return v;
    }

  private:
    Entry q0_entry(int s) const {
        const int M = M_;
        if (s <= M) return {s, SignedAxes::identity()};
        if (s <= 2 * M) return {2 * M - s, SignedAxes::R_yz()};
        if (s <= 3 * M) return {s - 2 * M, SignedAxes::R_z()};
        return {4 * M - s, SignedAxes::R_xz()};
    }

    int n_;
    int M_;
    std::vector<Entry> entries_;
};

/// Action gradient with respect to every arc node (pinned coordinates included, zeroed).
inline std::vector<Vec3> action_gradient(const FundamentalArc& arc, const SymmetrySpec& spec,
                                         double collision_guard = kSearchCollisionGuard) {
    const FullLoop loop = reconstruct_full_loop(spec, arc);
    if (min_pairwise_distance(loop) < collision_guard)
        throw CollisionError("action_gradient: collision guard violated", min_pairwise_distance(loop));
    const ArcLayout layout(spec, arc.nodes());
    auto g = layout.pull_back(loop_action_gradient(loop));
    g.front().y = 0.0;
    g.back().x = 0.0;
    return g;
}

/// Gradient over the 3(M+1) - 2 free arc coordinates.
inline Eigen::VectorXd action_gradient_free(const FundamentalArc& arc, const SymmetrySpec& spec,
                                            double collision_guard = kSearchCollisionGuard) {
    const ArcLayout layout(spec, arc.nodes());
    return layout.restrict_free(action_gradient(arc, spec, collision_guard));
}

/// Action, gradient norm and distance of the loop generated by an arc.
inline ActionReport evaluate(const FundamentalArc& arc, const SymmetrySpec& spec,
                             double collision_guard = kSearchCollisionGuard) {
    const FullLoop loop = reconstruct_full_loop(spec, arc);
    const auto t = detail::loop_terms(loop, collision_guard);
    ActionReport r;
    r.kinetic_integral = t.kinetic;
    r.potential_integral = t.potential;
    r.action = t.kinetic + t.potential;
    r.min_pairwise_distance = t.min_distance;
    r.gradient_inf_norm = action_gradient_free(arc, spec, collision_guard).lpNorm<Eigen::Infinity>();
    return r;
}

/// Dense Hessian of the action over the free arc coordinates.
inline Eigen::MatrixXd action_hessian(const FundamentalArc& arc, const SymmetrySpec& spec,
                                      double collision_guard = kSearchCollisionGuard) {
    const FullLoop loop = reconstruct_full_loop(spec, arc);
    const ArcLayout layout(spec, arc.nodes());
    const int M = arc.nodes();
    const int dim = 3 * (M + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    const int S = loop.sample_count();
    const int N = loop.body_count();
    const double dt = loop.step();
    const auto masses = loop.mass_system().masses();

    // block (a, b) += D_a B D_b for loop positions a, b
    auto add_block = [&](const ArcLayout::Entry& a, const ArcLayout::Entry& b, const Eigen::Matrix3d& B) {
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                H(3 * a.node + r, 3 * b.node + c) += a.sign.s[static_cast<std::size_t>(r)] * B(r, c) * b.sign.s[static_cast<std::size_t>(c)];
    };

    const Eigen::Matrix3d I3 = Eigen::Matrix3d::Identity();
    for (int s = 0; s < S; ++s) {
        for (int i = 0; i < N; ++i) {
            const auto& a = layout.at(s, i);
            const auto& b = layout.at((s + 1) % S, i);
            const Eigen::Matrix3d K = I3 * (masses[static_cast<std::size_t>(i)] / dt);
            add_block(a, a, K);
            add_block(b, b, K);
            add_block(a, b, -K);
            add_block(b, a, -K);
        }
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                const Vec3 d = loop.at(s, i) - loop.at(s, j);
                const double r2 = norm2(d);
                const double r = std::sqrt(r2);
                if (r < collision_guard) throw CollisionError("action_hessian: collision guard violated", r);
                const Eigen::Vector3d dv(d.x, d.y, d.z);
                const Eigen::Matrix3d B = (3.0 * dv * dv.transpose() - r2 * I3) *
                                          (dt * masses[static_cast<std::size_t>(i)] * masses[static_cast<std::size_t>(j)] / (r2 * r2 * r));
                const auto& a = layout.at(s, i);
                const auto& b = layout.at(s, j);
                add_block(a, a, B);
                add_block(b, b, B);
                add_block(a, b, -B);
                add_block(b, a, -B);
            }
    }

    Eigen::MatrixXd Hf(layout.free_dimension(), layout.free_dimension());
    for (int k = 0; k <= M; ++k)
        for (int c = 0; c < 3; ++c) {
            const int f = layout.free_index(k, c);
            if (f < 0) continue;
            for (int l = 0; l <= M; ++l)
                for (int e = 0; e < 3; ++e) {
                    const int g = layout.free_index(l, e);
                    if (g >= 0) Hf(f, g) = H(3 * k + c, 3 * l + e);
                }
        }
    return Hf;
}

// ---------------------------------------------------------------------------
// Diagnostics

/// max_{s,i} |m_i a_i - dU/dq_i| with a the stride-2 central second difference.
/// Stride 1 would coincide with the discrete stationarity condition and read 0.
inline double el_residual(const FullLoop& loop, double collision_guard = kSearchCollisionGuard) {
    const int S = loop.sample_count();
    const int N = loop.body_count();
    const double dt = loop.step();
    const auto masses = loop.mass_system().masses();
    double worst = 0.0;
    for (int s = 0; s < S; ++s) {
        const auto c = loop.config(s);
        if (double d = min_pairwise_distance(c); d < collision_guard)
            throw CollisionError("el_residual: collision guard violated", d);
        const auto pg = potential_gradient(c, masses);
        for (int i = 0; i < N; ++i) {
            const Vec3 acc = (loop.at(s + 2, i) - 2.0 * loop.at(s, i) + loop.at(s - 2, i)) * (1.0 / (4.0 * dt * dt));
            const Vec3 r = acc * masses[static_cast<std::size_t>(i)] - pg[static_cast<std::size_t>(i)];
            worst = std::max(worst, norm(r));
        }
    }
    return worst;
}

struct CoercivityResult {
    double lhs = 0.0;  ///< action
    double rhs = 0.0;  ///< H1 norm squared / (2 (n^2 + 1))
    double h1_norm_squared = 0.0;
    bool holds = false;
};

/// Checks A(q) >= |q|_{H1}^2 / (2(n^2+1)) with |q|_{H1}^2 = 2n int_0^n |q_0|^2 + |q_0'|^2.
inline CoercivityResult coercivity_check(const FullLoop& loop, const OmegaSequence& omega) {
    const int n = omega.n();
    if (loop.body_count() != 2 * n) throw Error("coercivity_check: loop must have 2n bodies");
    const auto d = diagnose(loop, omega, 1e-12);
    if (!d.topo_all()) throw Error("coercivity_check: loop violates the topological sign constraints");
    if (!d.boundary_ok) throw Error("coercivity_check: loop violates y0(0) = x0(n/4) = 0");
    const int S = loop.sample_count();
    const double dt = loop.step();
    double pos = 0.0, vel = 0.0;
    for (int s = 0; s < S; ++s) {
        pos += norm2(loop.at(s, 0));
        vel += norm2(loop.at(s + 1, 0) - loop.at(s, 0));
    }
    CoercivityResult r;
    r.h1_norm_squared = 2.0 * n * (pos * dt + vel / dt);
    r.lhs = action_value(loop, 0.0).action;
    r.rhs = r.h1_norm_squared / (2.0 * (n * n + 1.0));
    r.holds = r.lhs >= r.rhs;
    return r;
}

}  // namespace choreo
