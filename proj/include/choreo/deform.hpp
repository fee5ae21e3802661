#pragma once

// Local path deformations: pull-apart at a binary collision, monotonization
// of separated segments, vertical kicks off a plane, and piecewise-linear
// shifts that break plateaus of the monotone coordinates.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "action.hpp"
#include "constraints.hpp"
#include "model.hpp"
#include "symmetry.hpp"

namespace choreo {

/// Positions of N bodies at K+1 uniform nodes on [t_begin, t_end].
class PathSegment {
  public:
    PathSegment(MassSystem masses, double t_begin, double t_end, int intervals, std::vector<Vec3> positions)
        : masses_(std::move(masses)), t0_(t_begin), t1_(t_end), K_(intervals), q_(std::move(positions)) {
        if (!(t_end > t_begin)) throw Error("PathSegment: empty time interval");
        if (K_ < 1) throw Error("PathSegment: need at least one interval");
        if (q_.size() != static_cast<std::size_t>(K_ + 1) * masses_.body_count())
            throw Error("PathSegment: positions size does not match nodes x bodies");
    }

    /// Samples [s_begin, s_end] of a loop as a segment.
    static PathSegment from_loop(const FullLoop& loop, int s_begin, int s_end) {
        if (s_end <= s_begin) throw Error("PathSegment::from_loop: empty range");
        std::vector<Vec3> q;
        for (int s = s_begin; s <= s_end; ++s)
            for (int i = 0; i < loop.body_count(); ++i) q.push_back(loop.at(s, i));
        return PathSegment(loop.mass_system(), loop.time(s_begin), loop.time(s_end), s_end - s_begin, std::move(q));
    }

    const MassSystem& mass_system() const { return masses_; }
    int body_count() const { return masses_.body_count(); }
    int intervals() const { return K_; }
    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }
    double duration() const { return t1_ - t0_; }
    double step() const { return duration() / K_; }
    double time(int k) const { return t0_ + step() * k; }

    const Vec3& at(int k, int i) const { return q_[static_cast<std::size_t>(k) * body_count() + i]; }
    Vec3& at(int k, int i) { return q_[static_cast<std::size_t>(k) * body_count() + i]; }
    std::span<const Vec3> config(int k) const {
        return std::span<const Vec3>(q_).subspan(static_cast<std::size_t>(k) * body_count(),
                                                 static_cast<std::size_t>(body_count()));
    }

    double kinetic() const {
        double k = 0.0;
        for (int s = 0; s < K_; ++s)
            for (int i = 0; i < body_count(); ++i) k += 0.5 * masses_.mass(i) * norm2(at(s + 1, i) - at(s, i));
        return k / step();
    }

    /// Trapezoidal rule with half weights at both ends.
    double potential_integral(double guard = 0.0) const {
        double u = 0.0;
        for (int s = 0; s <= K_; ++s) {
            const double w = (s == 0 || s == K_) ? 0.5 : 1.0;
            u += w * potential(config(s), masses_.masses(), guard);
        }
        return u * step();
    }

    double action(double guard = 0.0) const { return kinetic() + potential_integral(guard); }

    friend bool operator==(const PathSegment&, const PathSegment&) = default;

  private:
    MassSystem masses_;
    double t0_, t1_;
    int K_;
    std::vector<Vec3> q_;
};

// ---------------------------------------------------------------------------
// Separated segments

struct SeparationWitness {
    int j = 0;
    int k = 1;
    std::vector<int> I0;
    std::vector<int> I1;
    Axis axis = Axis::x;
};

/// Reason the witness fails on the segment, or nullopt when it holds.
inline std::optional<std::string> check_witness(const PathSegment& seg, const SeparationWitness& w, double tol = 1e-12) {
    const int N = seg.body_count();
    const int c = static_cast<int>(w.axis);
    std::set<int> all;
    for (int i : {w.j, w.k}) {
        if (i < 0 || i >= N) return "body index out of range";
        all.insert(i);
    }
    if (w.j == w.k) return "j and k must differ";
    for (const auto* set : {&w.I0, &w.I1})
        for (int i : *set) {
            if (i < 0 || i >= N) return "body index out of range";
            if (!all.insert(i).second) return "index sets overlap";
        }
    if (static_cast<int>(all.size()) != N) return "j, k, I0, I1 must partition the bodies";
    if (w.I0.empty() && w.I1.empty()) return "I0 and I1 are both empty";

    const int K = seg.intervals();
    const double jT = seg.at(K, w.j)[c], kT = seg.at(K, w.k)[c];
    const double j0 = seg.at(0, w.j)[c], k0 = seg.at(0, w.k)[c];
    if (std::abs(j0 - k0) > tol) return "j and k must start at the same coordinate";
    for (int s = 0; s <= K; ++s) {
        const double xj = seg.at(s, w.j)[c], xk = seg.at(s, w.k)[c];
        if (xj < jT - tol || xj > j0 + tol) return "j leaves [c_j(T), c_j(0)]";
        if (xk < k0 - tol || xk > kT + tol) return "k leaves [c_k(0), c_k(T)]";
        for (int i : w.I0)
            if (seg.at(s, i)[c] > jT + tol) return "an I0 body passes c_j(T)";
        for (int i : w.I1)
            if (seg.at(s, i)[c] < kT - tol) return "an I1 body passes c_k(T)";
    }
    return std::nullopt;
}

/// Parabolic push of j and k apart on [0, eps], rigid offsets -+eps^2 elsewhere.
inline PathSegment pull_apart(const PathSegment& seg, const SeparationWitness& w, double eps) {
    if (auto bad = check_witness(seg, w)) throw Error("pull_apart: invalid witness: " + *bad);
    const int c = static_cast<int>(w.axis);
    const int K = seg.intervals();
    if (!(seg.at(K, w.j)[c] < seg.at(K, w.k)[c])) throw Error("pull_apart: requires c_j(T) < c_k(T)");
    if (eps < 0.0 || eps >= seg.duration()) throw Error("pull_apart: need 0 <= eps < T");
    PathSegment out = seg;
    const Vec3 e = unit(w.axis);
    for (int s = 0; s <= K; ++s) {
        const double t = seg.time(s) - seg.t_begin();
        const double p = t < eps ? t * (2.0 * eps - t) : eps * eps;
        out.at(s, w.j) -= e * p;
        out.at(s, w.k) += e * p;
        for (int i : w.I0) out.at(s, i) -= e * (eps * eps);
        for (int i : w.I1) out.at(s, i) += e * (eps * eps);
    }
    return out;
}

/// Change of the kinetic integral when a piecewise-linear path is pushed by the exact parabola.
/// The sampled push of pull_apart falls short of this by eps h^2 / 3 per unit mass pair.
inline double pull_apart_kinetic_increment(const PathSegment& seg, int j, int k, Axis axis, double eps) {
    const int c = static_cast<int>(axis);
    const double h = seg.step();
    auto P = [eps](double t) { return t < eps ? t * (2.0 * eps - t) : eps * eps; };
    double inc = 0.0;
    for (auto [body, sign] : {std::pair{j, -1.0}, std::pair{k, 1.0}}) {
        const double m = seg.mass_system().mass(body);
        double cross = 0.0;
        for (int s = 0; s < seg.intervals(); ++s) {
            const double lo = s * h, hi = (s + 1) * h;
            if (lo >= eps) break;
            const double v = (seg.at(s + 1, body)[c] - seg.at(s, body)[c]) / h;
            cross += v * sign * (P(std::min(hi, eps)) - P(lo));
        }
        inc += m * (cross + 2.0 / 3.0 * eps * eps * eps);
    }
    return inc;
}

/// Replaces the j and k axis coordinates by signed cumulative absolute
/// increments and shifts I0 / I1 rigidly to keep their separation.
inline PathSegment monotonize(const PathSegment& seg, const SeparationWitness& w) {
    if (auto bad = check_witness(seg, w)) throw Error("monotonize: invalid witness: " + *bad);
    const int c = static_cast<int>(w.axis);
    const int K = seg.intervals();
    PathSegment out = seg;
    double xj = seg.at(0, w.j)[c], xk = seg.at(0, w.k)[c];
    for (int s = 1; s <= K; ++s) {
        xj -= std::abs(seg.at(s, w.j)[c] - seg.at(s - 1, w.j)[c]);
        xk += std::abs(seg.at(s, w.k)[c] - seg.at(s - 1, w.k)[c]);
        out.at(s, w.j)[c] = xj;
        out.at(s, w.k)[c] = xk;
    }
    const double off0 = xj - seg.at(K, w.j)[c];
    const double off1 = xk - seg.at(K, w.k)[c];
    for (int s = 0; s <= K; ++s) {
        for (int i : w.I0) out.at(s, i)[c] += off0;
        for (int i : w.I1) out.at(s, i)[c] += off1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Vertical kicks

/// Entries in {0, +-1}, not all zero.
using TauVector = std::vector<int>;

enum class KickShape { start, end, interior };

struct KickProfile {
    double eps = 0.0;
    double t0 = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double delta = 0.0;
    KickShape shape = KickShape::interior;

    void validate() const {
        if (!(0.0 < delta1 && delta1 < delta2 && delta2 < delta))
            throw Error("KickProfile: need 0 < delta1 < delta2 < delta");
    }

    /// 1 on the plateau, linear ramp, 0 beyond delta2.
    double h(double t) const {
        double u;
        switch (shape) {
            case KickShape::start:
                if (t < t0) return 0.0;
                u = t - t0;
                break;
            case KickShape::end:
                if (t > t0) return 0.0;
                u = t0 - t;
                break;
            default: u = std::abs(t - t0);
        }
        if (u <= delta1) return 1.0;
        if (u >= delta2) return 0.0;
        return (delta2 - u) / (delta2 - delta1);
    }

    double support_begin() const { return shape == KickShape::start ? t0 : t0 - delta; }
    double support_end() const { return shape == KickShape::end ? t0 : t0 + delta; }
};

inline void check_tau(const TauVector& tau, int body_count) {
    if (static_cast<int>(tau.size()) != body_count) throw Error("tau: length must equal the body count");
    bool any = false;
    for (int v : tau) {
        if (v < -1 || v > 1) throw Error("tau: entries must be 0 or +-1");
        any = any || v != 0;
    }
    if (!any) throw Error("tau: all entries are zero");
}

/// Adds eps h(t) tau_i e to every body of a segment lying in the plane normal to e.
inline PathSegment vertical_kick(const PathSegment& seg, const TauVector& tau, const KickProfile& profile, Axis direction) {
    check_tau(tau, seg.body_count());
    profile.validate();
    const double slack = 1e-12 * std::max(1.0, std::abs(seg.t_end()));
    if (profile.support_begin() < seg.t_begin() - slack || profile.support_end() > seg.t_end() + slack)
        throw Error("vertical_kick: profile support exceeds the segment");
    const int c = static_cast<int>(direction);
    for (int s = 0; s <= seg.intervals(); ++s)
        for (int i = 0; i < seg.body_count(); ++i)
            if (std::abs(seg.at(s, i)[c]) > 1e-9)
                throw Error("vertical_kick: segment is not contained in the plane normal to the kick direction");
    PathSegment out = seg;
    const Vec3 e = unit(direction);
    for (int s = 0; s <= seg.intervals(); ++s) {
        const double a = profile.eps * profile.h(seg.time(s));
        if (a == 0.0) continue;
        for (int i = 0; i < seg.body_count(); ++i)
            if (tau[static_cast<std::size_t>(i)] != 0) out.at(s, i) += e * (a * tau[static_cast<std::size_t>(i)]);
    }
    return out;
}

/// Elements g with tau(g^-1)(t0) = t0.
inline std::vector<GroupElement> stabilizer(const SymmetrySpec& spec, double t0) {
    std::vector<GroupElement> out;
    for (auto& g : enumerate_group(spec)) {
        const double img = g.inverse().map_time(t0);
        double d = std::fmod(std::abs(img - t0), static_cast<double>(spec.n()));
        d = std::min(d, spec.n() - d);
        if (d < 1e-12) out.push_back(std::move(g));
    }
    return out;
}

/// Checks the three admissibility conditions of tau for a collision cluster at t0.
inline OmegaValidity tau_admissible(const SymmetrySpec& spec, const TauVector& tau, const std::vector<int>& cluster,
                                    double t0, Axis direction) {
    const int N = spec.body_count();
    if (static_cast<int>(tau.size()) != N) return {false, "tau length differs from the body count"};
    if (std::all_of(tau.begin(), tau.end(), [](int v) { return v == 0; })) return {false, "tau is zero"};
    for (int v : tau)
        if (v < -1 || v > 1) return {false, "tau entries must be 0 or +-1"};
    bool differs = false;
    for (int a : cluster)
        for (int b : cluster)
            if (a != b && tau[static_cast<std::size_t>(a)] != tau[static_cast<std::size_t>(b)]) differs = true;
    if (!differs) return {false, "tau must differ on two cluster indices"};

    const int c = static_cast<int>(direction);
    std::set<int> orbit;
    for (const auto& g : stabilizer(spec, t0)) {
        const auto ginv = g.inverse();
        for (int i0 : cluster) {
            const int i1 = ginv.sigma[static_cast<std::size_t>(i0)];
            orbit.insert(i1);
            if (tau[static_cast<std::size_t>(i1)] != g.rho.s[static_cast<std::size_t>(c)] * tau[static_cast<std::size_t>(i0)])
                return {false, "tau is not compatible with the stabilizer of t0 (body " + std::to_string(i0) + " -> " +
                                   std::to_string(i1) + ")"};
        }
    }
    for (int i = 0; i < N; ++i)
        if (!orbit.count(i) && tau[static_cast<std::size_t>(i)] != 0)
            return {false, "tau is nonzero off the cluster orbit (body " + std::to_string(i) + ")"};
    return {true, "admissible"};
}

/// The tau of the even-n planar escape: -1 on {0, n}, +1 on {n/2, 3n/2}.
inline TauVector planar_escape_tau(int n) {
    if (n % 2 != 0) throw Error("planar_escape_tau: n must be even");
    TauVector tau(static_cast<std::size_t>(2 * n), 0);
    tau[0] = tau[static_cast<std::size_t>(n)] = -1;
    tau[static_cast<std::size_t>(n / 2)] = tau[static_cast<std::size_t>(n + n / 2)] = 1;
    return tau;
}

/// Kick on a periodic loop, repeated over the G_n-orbit of t0 so the result stays equivariant.
inline FullLoop vertical_kick(const FullLoop& loop, const SymmetrySpec& spec, const TauVector& tau,
                              const KickProfile& profile, Axis direction) {
    check_tau(tau, loop.body_count());
    profile.validate();
    if (profile.shape != KickShape::interior) throw Error("vertical_kick: periodic loops take the interior profile");
    const int S = loop.sample_count();
    const int N = loop.body_count();
    const double P = loop.period();
    const Vec3 e = unit(direction);
    std::vector<Vec3> field(static_cast<std::size_t>(S) * N);
    for (int s = 0; s < S; ++s) {
        double d = std::fmod(std::abs(loop.time(s) - profile.t0), P);
        d = std::min(d, P - d);
        const double a = profile.eps * profile.h(profile.t0 + d);
        for (int i = 0; i < N; ++i) field[static_cast<std::size_t>(s) * N + i] = e * (a * tau[static_cast<std::size_t>(i)]);
    }
    const FullLoop kick(loop.mass_system(), P, S, field);
    const double weight = 1.0 / static_cast<double>(stabilizer(spec, profile.t0).size());
    std::vector<Vec3> sum(field.size());
    for (const auto& g : enumerate_group(spec)) {
        const FullLoop img = apply_group_element(g, kick);
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += img.positions()[k];
    }
    std::vector<Vec3> out(loop.positions().begin(), loop.positions().end());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += sum[k] * weight;
    return FullLoop(loop.mass_system(), P, S, std::move(out));
}

// ---------------------------------------------------------------------------
// Shift deformations

/// Primary bodies ramp from before*eps (t <= t1) to after*eps (t >= t2);
/// partners get the negated displacement; minus / plus are shifted rigidly.
struct ShiftSpec {
    Axis axis = Axis::x;
    double t1 = 0.0;
    double t2 = 0.0;
    double eps = 0.0;
    double before = 0.0;
    double after = 0.0;
    std::vector<int> primary;
    std::vector<int> partners;
    std::vector<int> minus;
    std::vector<int> plus;
    int case_number = 0;

    double ramp(double t) const {
        if (t <= t1) return before * eps;
        if (t >= t2) return after * eps;
        return (before + (after - before) * (t - t1) / (t2 - t1)) * eps;
    }
};

struct ShiftCase {
    int number;
    double before;
    double after;
    bool partners;
};

/// Case of the plateau shift keyed on the stalled body index k.
inline ShiftCase shift_case(int n, int k) {
    if (k < 0 || k >= n) throw Error("shift_case: k out of range");
    if (n % 2 == 0) {
        if (k >= n / 2) throw Error("shift_case: k must be below n/2 for even n");
        if (k <= (n - 2) / 4) return {1, -1.0, 0.0, true};
        return {2, 0.0, 1.0, true};
    }
    if (k <= n / 4) return {3, -1.0, 0.0, false};
    if (k <= (n - 1) / 2) return {4, 0.0, 1.0, false};
    if (k <= (3 * n) / 4) return {5, 1.0, 0.0, false};
    return {6, 0.0, -1.0, false};
}

/// Window length of the fundamental domain: 1/2 for even n, 1/4 for odd n.
inline double fundamental_window(int n) { return n % 2 == 0 ? 0.5 : 0.25; }

/// Builds the shift for a plateau of body k on [t1, t2] of a segment over the fundamental window.
inline ShiftSpec make_shift_spec(const PathSegment& seg, int n, int k, double t1, double t2, double eps,
                                 Axis axis = Axis::x) {
    if (seg.body_count() != 2 * n) throw Error("make_shift_spec: segment must carry 2n bodies");
    if (!(t1 < t2) || t1 < seg.t_begin() || t2 > seg.t_end()) throw Error("make_shift_spec: bad plateau interval");
    const ShiftCase sc = shift_case(n, k);
    ShiftSpec sp;
    sp.axis = axis;
    sp.t1 = t1;
    sp.t2 = t2;
    sp.eps = eps;
    sp.before = sc.before;
    sp.after = sc.after;
    sp.case_number = sc.number;
    sp.primary = {k, k + n};
    if (sc.partners) sp.partners = {k + n / 2, k + n / 2 + n};

    const int c = static_cast<int>(axis);
    const int K = seg.intervals();
    auto start = [&](int b) { return seg.at(0, b)[c]; };
    auto finish = [&](int b) { return seg.at(K, b)[c]; };
    const int half = n / 2;
    const int three_half = (3 * n) / 2;
    double lo_ref = 0.0, hi_ref = 0.0;
    switch (sc.number) {
        case 1: lo_ref = start(k); hi_ref = start(k + half); break;
        case 2: lo_ref = finish(k + half); hi_ref = finish(k); break;
        case 3: lo_ref = start(k); hi_ref = finish(half - k); break;
        case 4: lo_ref = start(half - k); hi_ref = finish(k); break;
        case 5: lo_ref = finish(three_half - k); hi_ref = start(k); break;
        default: lo_ref = finish(k); hi_ref = start(three_half - k); break;
    }
    std::set<int> moved(sp.primary.begin(), sp.primary.end());
    moved.insert(sp.partners.begin(), sp.partners.end());
    for (int i = 0; i < 2 * n; ++i) {
        if (moved.count(i)) continue;
        bool below = true, above = true;
        for (int s = 1; s < K; ++s) {
            const double v = seg.at(s, i)[c];
            below = below && v < lo_ref;
            above = above && v > hi_ref;
        }
        if (below) sp.minus.push_back(i);
        else if (above) sp.plus.push_back(i);
    }
    return sp;
}

inline PathSegment shift_deform(const PathSegment& seg, const ShiftSpec& sp) {
    if (!(sp.t1 < sp.t2)) throw Error("shift_deform: need t1 < t2");
    const Vec3 e = unit(sp.axis);
    PathSegment out = seg;
    for (int s = 0; s <= seg.intervals(); ++s) {
        const double r = sp.ramp(seg.time(s));
        for (int i : sp.primary) out.at(s, i) += e * r;
        for (int i : sp.partners) out.at(s, i) -= e * r;
        for (int i : sp.minus) out.at(s, i) -= e * sp.eps;
        for (int i : sp.plus) out.at(s, i) += e * sp.eps;
    }
    return out;
}

/// Kinetic increment of a shift when every ramped body is constant along the axis on [t1, t2].
inline double shift_kinetic_increment(const ShiftSpec& sp, const MassSystem& masses) {
    double m = 0.0;
    for (int i : sp.primary) m += masses.mass(i);
    for (int i : sp.partners) m += masses.mass(i);
    const double dv = sp.eps * (sp.after - sp.before) / (sp.t2 - sp.t1);
    return 0.5 * m * dv * dv * (sp.t2 - sp.t1);
}

struct Plateau {
    Axis axis = Axis::x;
    int k_begin = 0;
    int k_end = 0;
};

/// Maximal runs of at least min_nodes arc nodes where x (or y) varies by less than tol.
inline std::vector<Plateau> find_plateaus(const FundamentalArc& arc, double tol = 1e-9, int min_nodes = 3) {
    std::vector<Plateau> out;
    for (Axis ax : {Axis::x, Axis::y}) {
        const int c = static_cast<int>(ax);
        int b = 0;
        for (int k = 1; k <= arc.nodes() + 1; ++k) {
            const bool extend = k <= arc.nodes() && std::abs(arc[k][c] - arc[b][c]) < tol;
            if (extend) continue;
            if (k - b >= min_nodes) out.push_back({ax, b, k - 1});
            b = k;
        }
    }
    return out;
}

/// Arc-time interval covered by body k's local times [t1, t2] (k in 0..n-1).
inline std::pair<double, double> arc_interval_for_body(int n, int k, double t1, double t2) {
    const double q = 0.25 * n;
    auto wrap = [n](double t) {
        double r = std::fmod(t, static_cast<double>(n));
        return r < 0 ? r + n : r;
    };
    const double a = wrap(t1 + k);
    const double b = a + (t2 - t1);
    const int branch = static_cast<int>(std::floor(a / q + 1e-12));
    if (b > (branch + 1) * q + 1e-12) throw Error("arc_interval_for_body: interval straddles a reflection point");
    double u = 0.0, v = 0.0;
    switch (branch) {
        case 0: u = a; v = b; break;
        case 1: u = 2 * q - b; v = 2 * q - a; break;
        case 2: u = a - 2 * q; v = b - 2 * q; break;
        default: u = 4 * q - b; v = 4 * q - a; break;
    }
    return {std::max(0.0, u), std::min(q, v)};
}

/// Breaks a plateau of the arc: x drops by eps before it and ramps back
/// across it; y ramps up by eps across it and stays raised after.
/// The result is projected back onto the feasible set.
inline FundamentalArc shift_escape(const FundamentalArc& arc, const Plateau& p, double eps, const OmegaSequence& omega,
                                   double tol = 1e-9) {
    const int c = static_cast<int>(p.axis);
    if (p.k_begin < 0 || p.k_end > arc.nodes() || p.k_end - p.k_begin < 1) throw Error("shift_escape: no plateau found");
    for (int k = p.k_begin; k <= p.k_end; ++k)
        if (std::abs(arc[k][c] - arc[p.k_begin][c]) >= tol) throw Error("shift_escape: no plateau found");
    if (p.axis == Axis::z) throw Error("shift_escape: plateaus are along x or y");
    std::vector<Vec3> q(arc.samples().begin(), arc.samples().end());
    const double len = p.k_end - p.k_begin;
    for (int k = 0; k <= arc.nodes(); ++k) {
        const double u = std::clamp((k - p.k_begin) / len, 0.0, 1.0);
        if (p.axis == Axis::x)
            q[static_cast<std::size_t>(k)].x -= eps * (1.0 - u);
        else
            q[static_cast<std::size_t>(k)].y += eps * u;
    }
    return project_feasible(arc.with_samples(std::move(q)), omega);
}

/// First plateau along the axis, broken by shift_escape.
inline FundamentalArc shift_escape(const FundamentalArc& arc, Axis axis, double eps, const OmegaSequence& omega) {
    for (const auto& p : find_plateaus(arc))
        if (p.axis == axis) return shift_escape(arc, p, eps, omega);
    throw Error("shift_escape: no plateau found");
}

/// Full-loop kinetic increment of shift_escape on an exact plateau.
inline double shift_escape_kinetic_increment(int n, double eps, double a, double b) { return 4.0 * n * eps * eps / (b - a); }

}  // namespace choreo
