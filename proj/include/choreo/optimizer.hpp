#pragma once

// Action minimization over feasible fundamental arcs: projected L-BFGS with
// an Armijo line search, plateau and collapse escapes, and a Newton polish
// once the iterate sits strictly inside the feasible set.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "action.hpp"
#include "constraints.hpp"
#include "deform.hpp"
#include "model.hpp"
#include "symmetry.hpp"

namespace choreo {

struct IterationLog {
    int iteration = 0;
    double action = 0.0;
    double gradient_norm = 0.0;
    double min_distance = 0.0;
    std::string event;
};

struct SolverConfig {
    int nodes = 128;
    int max_iters = 20000;
    double gradient_tolerance = 1e-9;
    double armijo = 1e-4;
    double backtrack = 0.5;
    int max_backtracks = 60;
    int lbfgs_memory = 12;
    double plateau_tolerance = 1e-9;
    int plateau_nodes = 3;
    double near_collision = kAcceptanceCollisionGuard;
    double collision_guard = kSearchCollisionGuard;
    std::uint64_t seed = 0;
    double jitter = 0.0;
    double amplitude = 0.5;
    double radius = 1.0;
    /// Newton polish starts below this projected-gradient norm.
    double polish_threshold = 1e-5;
    int polish_iters = 30;
    bool polish = true;
    std::function<void(const IterationLog&)> log;

    void validate() const {
        if (nodes < 8) throw Error("SolverConfig: nodes must be >= 8");
        if (!(gradient_tolerance > 0.0)) throw Error("SolverConfig: gradient tolerance must be positive");
        if (max_iters < 0) throw Error("SolverConfig: max_iters must be >= 0");
        if (!(armijo > 0.0 && armijo < 1.0) || !(backtrack > 0.0 && backtrack < 1.0))
            throw Error("SolverConfig: line-search parameters must lie in (0, 1)");
        if (!(collision_guard > 0.0) || !(plateau_tolerance > 0.0)) throw Error("SolverConfig: thresholds must be positive");
        if (!(amplitude > 0.0) || !(radius > 0.0)) throw Error("SolverConfig: amplitude and radius must be positive");
        if (jitter < 0.0) throw Error("SolverConfig: jitter must be >= 0");
    }
};

enum class SolveStatus { converged, max_iters, infeasible_omega };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iters: return "max_iters";
        default: return "infeasible_omega";
    }
}

struct SolveResult {
    int n = 0;
    std::optional<OmegaSequence> omega;
    std::optional<FundamentalArc> arc;
    ActionReport report;
    SolveStatus status = SolveStatus::max_iters;
    std::vector<double> trace;
    int iterations = 0;
    int escapes = 0;
    std::string message;
};

/// Smooth sign profile: omega_i at t = i/2, cosine blend between, constant after [n/2]/2.
inline double omega_profile(const OmegaSequence& omega, double t) {
    const int last = omega.size() - 1;
    const double u = 2.0 * t;
    if (u <= 0.0) return omega[0];
    if (u >= last) return omega[last];
    const int i = static_cast<int>(std::floor(u));
    const double f = u - i;
    return omega[i] + (omega[i + 1] - omega[i]) * 0.5 * (1.0 - std::cos(std::numbers::pi * f));
}

/// Arc of q_0(t) = (-R cos(2 pi t / n), R sin(2 pi t / n), a s(t)), projected feasible.
inline FundamentalArc initial_guess(int n, const OmegaSequence& omega, double amplitude = 0.5, double radius = 1.0,
                                    int nodes = 128, double jitter = 0.0, std::uint64_t seed = 0) {
    if (omega.n() != n) throw Error("initial_guess: omega is for a different n");
    if (const auto v = validate_omega(omega); !v) throw Error("initial_guess: inadmissible omega: " + v.reason);
    if (!(amplitude > 0.0) || !(radius > 0.0)) throw Error("initial_guess: amplitude and radius must be positive");
    const int M = compatible_nodes(n, nodes);
    const double h = 0.25 * n / M;
    std::vector<Vec3> q(static_cast<std::size_t>(M) + 1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    for (int k = 0; k <= M; ++k) {
        const double t = h * k;
        const double th = 2.0 * std::numbers::pi * t / n;
        Vec3 p{-radius * std::cos(th), radius * std::sin(th), amplitude * omega_profile(omega, t)};
        if (jitter > 0.0) p += Vec3{noise(rng), noise(rng), noise(rng)} * (jitter * radius);
        q[static_cast<std::size_t>(k)] = p;
    }
    q.front().y = 0.0;
    q.back().x = 0.0;
    return project_feasible(FundamentalArc(n, std::move(q)), omega);
}

namespace detail {

/// Action and gradient over the free coordinates of one (n, omega) problem.
class Objective {
  public:
    Objective(const SymmetrySpec& spec, const OmegaSequence& omega, int nodes, double guard)
        : spec_(spec), omega_(omega), layout_(spec, nodes), guard_(guard) {}

    const ArcLayout& layout() const { return layout_; }
    const SymmetrySpec& spec() const { return spec_; }

    FundamentalArc arc(const Eigen::VectorXd& x) const { return layout_.unpack(x); }
    Eigen::VectorXd project(const Eigen::VectorXd& x) const {
        return layout_.pack(project_feasible(layout_.unpack(x), omega_));
    }

    struct Eval {
        double f;
        Eigen::VectorXd g;
        double min_distance;
    };

    /// nullopt when the collision guard is violated.
    std::optional<Eval> operator()(const Eigen::VectorXd& x) const {
        const FullLoop loop = reconstruct_full_loop(spec_, layout_.unpack(x));
        try {
            const auto t = loop_terms(loop, guard_);
            Eval e;
            e.f = t.kinetic + t.potential;
            e.min_distance = t.min_distance;
            auto g = layout_.pull_back(loop_action_gradient(loop));
            g.front().y = 0.0;
            g.back().x = 0.0;
            e.g = layout_.restrict_free(g);
            return e;
        } catch (const CollisionError&) {
            return std::nullopt;
        }
    }

    /// Infinity norm of P(x - g) - x.
    double projected_gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& g) const {
        return (project(x - g) - x).lpNorm<Eigen::Infinity>();
    }

    /// Smallest slack of the strict monotone and sign constraints.
    double strict_margin(const Eigen::VectorXd& x) const {
        const FundamentalArc a = arc(x);
        const int M = a.nodes();
        double m = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= M; ++k) {
            m = std::min(m, a[k].x - a[k - 1].x);
            m = std::min(m, a[k].y - a[k - 1].y);
        }
        for (int i = 0; i <= spec_.n() / 2; ++i) m = std::min(m, omega_[i] * a[constraint_node(spec_.n(), M, i)].z);
        return m;
    }

  private:
    SymmetrySpec spec_;
    OmegaSequence omega_;
    ArcLayout layout_;
    double guard_;
};

inline double length_scale(const FundamentalArc& arc) {
    double L = 0.0;
    for (const auto& p : arc.samples()) L = std::max(L, norm(p));
    return L > 0.0 ? L : 1.0;
}

}  // namespace detail

/// Minimizes from a given starting arc (projected first).
inline SolveResult minimize_from(const FundamentalArc& start, const OmegaSequence& omega, const SolverConfig& config) {
    config.validate();
    const int n = omega.n();
    SolveResult res;
    res.n = n;
    res.omega = omega;
    if (const auto v = validate_omega(omega); !v) {
        res.status = SolveStatus::infeasible_omega;
        res.message = v.reason;
        return res;
    }
    if (start.n() != n) throw Error("minimize_from: arc is for a different n");
    const SymmetrySpec spec(n);
    const FundamentalArc arc0 =
        grid_compatible(n, start.nodes()) ? start : resample(start, compatible_nodes(n, start.nodes()));
    const detail::Objective obj(spec, omega, arc0.nodes(), config.collision_guard);

    auto emit = [&](int it, double f, double g, double d, const char* ev) {
        if (config.log) config.log({it, f, g, d, ev});
    };

    Eigen::VectorXd x = obj.project(obj.layout().pack(arc0));
    auto cur = obj(x);
    if (!cur) throw CollisionError("minimize: starting arc violates the collision guard", 0.0);
    res.trace.push_back(cur->f);

    std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> memory;
    auto direction = [&](const Eigen::VectorXd& g) {
        Eigen::VectorXd q = -g;
        std::vector<double> alpha(memory.size());
        for (int i = static_cast<int>(memory.size()) - 1; i >= 0; --i) {
            const auto& [s, y] = memory[static_cast<std::size_t>(i)];
            alpha[static_cast<std::size_t>(i)] = s.dot(q) / y.dot(s);
            q -= alpha[static_cast<std::size_t>(i)] * y;
        }
        if (!memory.empty()) {
            const auto& [s, y] = memory.back();
            q *= s.dot(y) / y.dot(y);
        } else {
            q *= 1.0 / std::max(1.0, g.lpNorm<Eigen::Infinity>() / (0.01 * detail::length_scale(obj.arc(x))));
        }
        for (std::size_t i = 0; i < memory.size(); ++i) {
            const auto& [s, y] = memory[i];
            const double beta = y.dot(q) / y.dot(s);
            q += (alpha[i] - beta) * s;
        }
        return q;
    };

    // Armijo search along the projected path x(a) = P(x + a d).
    auto line_search = [&](const Eigen::VectorXd& d) -> std::optional<std::pair<Eigen::VectorXd, detail::Objective::Eval>> {
        double a = 1.0;
        for (int b = 0; b < config.max_backtracks; ++b, a *= config.backtrack) {
            Eigen::VectorXd xn = obj.project(x + a * d);
            const Eigen::VectorXd step = xn - x;
            if (step.lpNorm<Eigen::Infinity>() == 0.0) return std::nullopt;
            auto e = obj(xn);
            if (!e) continue;
            if (e->f <= cur->f + config.armijo * cur->g.dot(step) && e->f < cur->f) return std::pair{xn, *e};
        }
        return std::nullopt;
    };

    // Escapes: break plateaus, lift collapsed or near-colliding arcs off the xy-plane.
    auto try_escape = [&](int it) -> bool {
        const FundamentalArc a = obj.arc(x);
        const double L = detail::length_scale(a);
        std::vector<std::function<FundamentalArc(double)>> moves;
        for (const auto& p : find_plateaus(a, config.plateau_tolerance, config.plateau_nodes))
            moves.emplace_back([a, p, &omega](double eps) { return shift_escape(a, p, eps, omega); });
        double zmax = 0.0;
        for (const auto& p : a.samples()) zmax = std::max(zmax, std::abs(p.z));
        if (zmax < config.plateau_tolerance || cur->min_distance < config.near_collision)
            moves.emplace_back([a, &omega](double eps) {
                std::vector<Vec3> q(a.samples().begin(), a.samples().end());
                for (int k = 0; k <= a.nodes(); ++k) q[static_cast<std::size_t>(k)].z += eps * omega_profile(omega, a.time(k));
                return project_feasible(a.with_samples(std::move(q)), omega);
            });
        for (const auto& move : moves) {
            for (double eps = 0.1 * L; eps > 1e-10 * L; eps *= 0.5) {
                Eigen::VectorXd xn = obj.layout().pack(move(eps));
                auto e = obj(xn);
                if (e && e->f < cur->f) {
                    x = std::move(xn);
                    cur = std::move(e);
                    memory.clear();
                    res.trace.push_back(cur->f);
                    ++res.escapes;
                    emit(it, cur->f, cur->g.lpNorm<Eigen::Infinity>(), cur->min_distance, "escape");
                    return true;
                }
            }
        }
        return false;
    };

    auto newton_polish = [&](int it) {
        for (int k = 0; k < config.polish_iters; ++k) {
            if (obj.strict_margin(x) <= 10.0 * config.gradient_tolerance) return;
            if (cur->g.lpNorm<Eigen::Infinity>() < config.gradient_tolerance) return;
            Eigen::MatrixXd H;
            try {
                H = action_hessian(obj.arc(x), spec, config.collision_guard);
            } catch (const CollisionError&) {
                return;
            }
            Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
            if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return;
            const Eigen::VectorXd p = ldlt.solve(-cur->g);
            if (!(p.dot(cur->g) < 0.0)) return;
            bool accepted = false;
            for (double a = 1.0; a > 1e-6; a *= 0.5) {
                Eigen::VectorXd xn = x + a * p;
                if (obj.strict_margin(xn) <= 0.0) continue;
                auto e = obj(xn);
                if (!e || e->f > cur->f) continue;
                if (e->g.lpNorm<Eigen::Infinity>() >= cur->g.lpNorm<Eigen::Infinity>() && e->f == cur->f) continue;
                x = std::move(xn);
                cur = std::move(e);
                res.trace.push_back(cur->f);
                emit(it, cur->f, cur->g.lpNorm<Eigen::Infinity>(), cur->min_distance, "newton");
                accepted = true;
                break;
            }
            if (!accepted) return;
        }
    };

    int it = 0;
    bool converged = false;
    bool polished = false;
    while (it < config.max_iters) {
        const double pg = obj.projected_gradient(x, cur->g);
        if (pg < config.gradient_tolerance) {
            converged = true;
            break;
        }
        if (config.polish && !polished && pg < config.polish_threshold &&
            obj.strict_margin(x) > 10.0 * config.gradient_tolerance) {
            newton_polish(it);
            polished = true;
            memory.clear();
            continue;
        }
        Eigen::VectorXd d = direction(cur->g);
        if (!(d.dot(cur->g) < 0.0)) {
            memory.clear();
            d = direction(cur->g);
        }
        auto step = line_search(d);
        if (!step && !memory.empty()) {
            memory.clear();
            step = line_search(direction(cur->g));
        }
        ++it;
        if (!step) {
            if (try_escape(it)) {
                polished = false;
                continue;
            }
            if (config.polish && !polished) {
                newton_polish(it);
                polished = true;
                if (obj.projected_gradient(x, cur->g) < config.gradient_tolerance) converged = true;
            }
            break;
        }
        auto& [xn, e] = *step;
        const Eigen::VectorXd s = xn - x;
        const Eigen::VectorXd y = e.g - cur->g;
        if (s.dot(y) > 1e-16 * s.norm() * y.norm()) {
            memory.emplace_back(s, y);
            if (static_cast<int>(memory.size()) > config.lbfgs_memory) memory.pop_front();
        }
        x = std::move(xn);
        cur = std::move(e);
        res.trace.push_back(cur->f);
        if (it % 100 == 0) emit(it, cur->f, cur->g.lpNorm<Eigen::Infinity>(), cur->min_distance, "step");
    }
    if (!converged && obj.projected_gradient(x, cur->g) < config.gradient_tolerance) converged = true;

    res.iterations = it;
    res.arc = obj.arc(x);
    res.report = evaluate(*res.arc, spec, config.collision_guard);
    res.report.constraint_flags = diagnose(*res.arc, omega).flags();
    res.status = converged ? SolveStatus::converged : SolveStatus::max_iters;
    res.message = converged ? "projected gradient below tolerance"
                            : "stopped after " + std::to_string(it) + " iterations with projected gradient " +
                                  std::to_string(obj.projected_gradient(x, cur->g));
    emit(it, cur->f, res.report.gradient_inf_norm, cur->min_distance, to_string(res.status));
    return res;
}

inline SolveResult minimize(int n, const OmegaSequence& omega, const SolverConfig& config = {}) {
    config.validate();
    if (omega.n() != n) throw Error("minimize: omega is for a different n");
    if (const auto v = validate_omega(omega); !v) {
        SolveResult res;
        res.n = n;
        res.omega = omega;
        res.status = SolveStatus::infeasible_omega;
        res.message = v.reason;
        return res;
    }
    const FundamentalArc start =
        initial_guess(n, omega, config.amplitude, config.radius, config.nodes, config.jitter, config.seed);
    return minimize_from(start, omega, config);
}

/// Resamples a solution to a finer compatible grid and minimizes again.
inline SolveResult refine(const SolveResult& result, int nodes, const SolverConfig& config = {}) {
    if (!result.arc || !result.omega) throw Error("refine: result carries no arc");
    const int M = compatible_nodes(result.n, nodes);
    SolverConfig c = config;
    c.nodes = M;
    return minimize_from(resample(*result.arc, M), *result.omega, c);
}

/// minimize for every admissible word of n, at most `jobs` at a time.
inline std::map<OmegaSequence, SolveResult> sweep(int n, const SolverConfig& config = {}, bool modulo_flip = false,
                                                  int jobs = 1) {
    const auto words = enumerate_admissible_omega(n, modulo_flip);
    std::vector<SolveResult> results(words.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < words.size(); i = next++) {
            try {
                results[i] = minimize(n, words[i], config);
            } catch (const std::exception& e) {
                // one failed word must not take down the other jobs
                results[i].n = n;
                results[i].omega = words[i];
                results[i].message = e.what();
            }
        }
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(words.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::map<OmegaSequence, SolveResult> out;
    for (std::size_t i = 0; i < words.size(); ++i) out.emplace(words[i], std::move(results[i]));
    return out;
}

}  // namespace choreo
