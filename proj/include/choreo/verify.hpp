#pragma once

// Post-hoc audit of a candidate double choreography. Every check records its
// measured value and threshold; nothing here throws on a failed check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "action.hpp"
#include "constraints.hpp"
#include "model.hpp"
#include "optimizer.hpp"
#include "symmetry.hpp"

namespace choreo {

struct Thresholds {
    double equivariance = 1e-12;
    double boundary = 1e-12;
    double collision = kAcceptanceCollisionGuard;
    double el_residual = 1e-3;
    double region = 1e-12;
    /// Segment pairs of q_0 and q_n closer than this count as meeting.
    double intersection_distance = 1e-9;
    /// Meeting points must have |z| below this.
    double intersection_z = 1e-6;
    /// Smallest principal extent of q_0 relative to its largest.
    double spatial = 1e-6;
    /// Endpoint velocity tolerance in units of the time step.
    double endpoint_velocity_steps = 10.0;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct Certificate {
    int n = 0;
    std::string omega;
    std::vector<CheckResult> checks;

    bool passed() const {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }
    const CheckResult& check(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return c;
        throw Error("Certificate: no check named " + name);
    }

    std::string report() const {
        std::ostringstream os;
        os << "certificate for n = " << n << ", omega = " << omega << "\n";
        for (const auto& c : checks) {
            os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << ": value " << c.value << ", threshold "
               << c.threshold;
            if (!c.detail.empty()) os << " (" << c.detail << ")";
            os << "\n";
        }
        os << "overall: " << (passed() ? "pass" : "FAIL") << "\n";
        return os.str();
    }
};

namespace detail {

/// Squared distance between segments [p0, p1] and [q0, q1], with the closest parameters.
inline double segment_distance2(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1, double& s, double& t) {
    const Vec3 d1 = p1 - p0, d2 = q1 - q0, r = p0 - q0;
    const double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
    constexpr double tiny = 1e-300;
    if (a <= tiny && e <= tiny) {
        s = t = 0.0;
        return norm2(r);
    }
    if (a <= tiny) {
        s = 0.0;
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= tiny) {
            t = 0.0;
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return norm2((p0 + d1 * s) - (q0 + d2 * t));
}

/// Proper crossing or touching of 2D segments.
inline bool segments_intersect_2d(double ax, double ay, double bx, double by, double cx, double cy, double dx, double dy) {
    auto orient = [](double px, double py, double qx, double qy, double rx, double ry) {
        const double v = (qx - px) * (ry - py) - (qy - py) * (rx - px);
        return (v > 0) - (v < 0);
    };
    auto on_seg = [](double px, double py, double qx, double qy, double rx, double ry) {
        return std::min(px, qx) <= rx && rx <= std::max(px, qx) && std::min(py, qy) <= ry && ry <= std::max(py, qy);
    };
    const int o1 = orient(ax, ay, bx, by, cx, cy), o2 = orient(ax, ay, bx, by, dx, dy);
    const int o3 = orient(cx, cy, dx, dy, ax, ay), o4 = orient(cx, cy, dx, dy, bx, by);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_seg(ax, ay, bx, by, cx, cy)) return true;
    if (o2 == 0 && on_seg(ax, ay, bx, by, dx, dy)) return true;
    if (o3 == 0 && on_seg(cx, cy, dx, dy, ax, ay)) return true;
    if (o4 == 0 && on_seg(cx, cy, dx, dy, bx, by)) return true;
    return false;
}

}  // namespace detail

/// Runs every check on a loop of 2n bodies with sample count a multiple of 4n... or at least containing the times i/2.
inline Certificate certify(const FullLoop& loop, const OmegaSequence& omega, const Thresholds& th = {}) {
    const int n = omega.n();
    Certificate cert;
    cert.n = n;
    cert.omega = omega.to_string();
    auto add = [&](std::string name, bool ok, double value, double threshold, std::string detail = {}) {
        cert.checks.push_back({std::move(name), ok, value, threshold, std::move(detail)});
    };
    if (loop.body_count() != 2 * n || loop.sample_count() % (4 * n) != 0) {
        add("grid", false, loop.sample_count(), 4.0 * n, "loop must carry 2n bodies on a grid containing t = 1/4");
        return cert;
    }
    const SymmetrySpec spec(n);
    const int S = loop.sample_count();
    const int M = S / 4;
    const double dt = loop.step();
    const FundamentalArc arc = extract_arc(spec, loop);

    const double eq = equivariance_residual(spec, loop);
    add("equivariance", eq <= th.equivariance, eq, th.equivariance);

    {
        const double b = std::max({std::abs(loop.at(0, 0).y), std::abs(loop.at(M, 0).x), std::abs(loop.at(2 * M, 0).y),
                                   std::abs(loop.at(3 * M, 0).x)});
        add("boundary_identities", b <= th.boundary, b, th.boundary, "y0(0), x0(n/4), y0(n/2), x0(3n/4)");
    }

    {
        double worst = std::numeric_limits<double>::infinity();
        std::string bad;
        for (int i = 0; i <= n / 2; ++i) {
            const double v = omega[i] * arc[constraint_node(n, M, i)].z;
            worst = std::min(worst, v);
            if (!(v > 0.0)) bad += (bad.empty() ? "" : ",") + std::to_string(i);
        }
        add("topological_signs", bad.empty(), worst, 0.0, bad.empty() ? "omega_i z0(i/2) > 0" : "violated at i = " + bad);
    }

    double dx_min = std::numeric_limits<double>::infinity(), dy_min = dx_min;
    for (int k = 0; k < M; ++k) {
        dx_min = std::min(dx_min, arc[k + 1].x - arc[k].x);
        dy_min = std::min(dy_min, arc[k + 1].y - arc[k].y);
    }
    add("strict_monotone", dx_min > 0.0 && dy_min > 0.0, std::min(dx_min, dy_min), 0.0, "min node increment of x0, y0");

    {
        // forward differences on (0, n/4] for x and [0, n/4) for y; endpoint slopes vanish
        const double vx0 = std::abs(arc[1].x - arc[0].x) / dt;
        const double vyM = std::abs(arc[M].y - arc[M - 1].y) / dt;
        const double tol = th.endpoint_velocity_steps * dt;
        const bool ok = dx_min > 0.0 && dy_min > 0.0 && vx0 <= tol && vyM <= tol;
        std::ostringstream d;
        d << "one-sided |x0'(0)| = " << vx0 << ", |y0'(n/4)| = " << vyM << ", tolerance " << tol;
        add("velocity_signs", ok, std::max(vx0, vyM), tol, d.str());
    }

    const double dmin = min_pairwise_distance(loop);
    add("collision_distance", dmin > th.collision, dmin, th.collision);

    {
        const auto wells = well_regions(loop);
        std::string d;
        for (auto [a, b] : wells.overlaps) d += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
        add("wells_disjoint", wells.disjoint(), static_cast<double>(wells.overlaps.size()), 0.0, d);
    }

    {
        const auto part = quadrant_partition(n);
        const int last = static_cast<int>(std::lround(part.window / dt));
        double worst = 0.0;
        std::string where;
        for (const auto& set : part.sets)
            for (int b : set.bodies)
                for (int s = 0; s <= last; ++s) {
                    const double v = region_violation(set.region, loop.at(s, b));
                    if (v > worst) {
                        worst = v;
                        where = set.name + " body " + std::to_string(b);
                    }
                }
        add("quadrant_confinement", worst <= th.region, worst, th.region, where);
    }

    {
        double el = std::numeric_limits<double>::infinity();
        try {
            el = el_residual(loop, 0.0);
        } catch (const CollisionError&) {
        }
        add("el_residual", el < th.el_residual, el, th.el_residual);
    }

    {
        try {
            const auto c = coercivity_check(loop, omega);
            add("coercivity", c.holds, c.lhs, c.rhs, "action vs |q|^2_H1 / (2(n^2+1))");
        } catch (const Error& e) {
            add("coercivity", false, 0.0, 0.0, e.what());
        }
    }

    {
        // xy-projection of q0 over one period: non-adjacent segments must not meet
        int hits = 0;
        for (int a = 0; a < S && hits == 0; ++a)
            for (int b = a + 2; b < S; ++b) {
                if (a == 0 && b == S - 1) continue;
                const Vec3 p0 = loop.at(a, 0), p1 = loop.at(a + 1, 0), q0 = loop.at(b, 0), q1 = loop.at(b + 1, 0);
                if (detail::segments_intersect_2d(p0.x, p0.y, p1.x, p1.y, q0.x, q0.y, q1.x, q1.y)) {
                    ++hits;
                    break;
                }
            }
        add("simple_curve", hits == 0, hits, 0.0, "xy-projection of q0");
    }

    {
        // q0 and qn = R_x q0 may meet only in the xy-plane
        int meets = 0;
        double worst_z = 0.0;
        const double scale = detail::length_scale(arc);
        for (int a = 0; a < S; ++a)
            for (int b = 0; b < S; ++b) {
                double s, t;
                const Vec3 p0 = loop.at(a, 0), p1 = loop.at(a + 1, 0), q0 = loop.at(b, n), q1 = loop.at(b + 1, n);
                const double d2 = detail::segment_distance2(p0, p1, q0, q1, s, t);
                if (d2 <= th.intersection_distance * th.intersection_distance * scale * scale) {
                    ++meets;
                    worst_z = std::max({worst_z, std::abs((p0 + (p1 - p0) * s).z), std::abs((q0 + (q1 - q0) * t).z)});
                }
            }
        add("loop_intersection", meets > 0 && worst_z < th.intersection_z, worst_z, th.intersection_z,
            std::to_string(meets) + " meeting segment pairs");
    }

    {
        Eigen::MatrixXd P(S, 3);
        for (int s = 0; s < S; ++s) {
            const Vec3 p = loop.at(s, 0);
            P.row(s) << p.x, p.y, p.z;
        }
        P.rowwise() -= P.colwise().mean();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(P);
        const auto sv = svd.singularValues();
        const double ratio = sv(0) > 0.0 ? sv(2) / sv(0) : 0.0;
        double spans[3] = {0, 0, 0};
        for (int s = 0; s < S; ++s)
            for (int c = 0; c < 3; ++c) spans[c] = std::max(spans[c], std::abs(loop.at(s, 0)[c]));
        const bool planes = spans[0] > 0.0 && spans[1] > 0.0 && spans[2] > 0.0;
        add("spatial", planes && ratio > th.spatial, ratio, th.spatial, "smallest / largest principal extent of q0");
    }

    {
        const double x0 = arc[0].x, yM = arc[M].y;
        add("nondegenerate", x0 < 0.0 && yM > 0.0, std::min(-x0, yM), 0.0, "x0(0) < 0 < y0(n/4)");
    }
    return cert;
}

struct MirrorReport {
    double alignment_error = std::numeric_limits<double>::infinity();
    SignedAxes transform;
    int time_sign = 1;
    int time_shift = 0;
    double action_difference = 0.0;
};

/// Best alignment max_{s,i} |D L1_i(+-t + c) - L2_i(t)| over sign matrices D and grid time maps.
inline MirrorReport compare_mirror(const FullLoop& a, const FullLoop& b) {
    if (a.body_count() != b.body_count()) throw Error("compare_mirror: mismatched n");
    if (a.sample_count() != b.sample_count()) throw Error("compare_mirror: loops use different grids");
    const int S = a.sample_count();
    const int N = a.body_count();
    MirrorReport best;
    for (int m = 0; m < 8; ++m) {
        const SignedAxes D{{m & 1 ? -1 : 1, m & 2 ? -1 : 1, m & 4 ? -1 : 1}};
        for (int sign : {1, -1})
            for (int c = 0; c < S; ++c) {
                double err = 0.0;
                for (int s = 0; s < S && err < best.alignment_error; ++s)
                    for (int i = 0; i < N; ++i)
                        err = std::max(err, norm(D.apply(a.at(static_cast<long>(sign) * s + c, i)) - b.at(s, i)));
                if (err < best.alignment_error) {
                    best.alignment_error = err;
                    best.transform = D;
                    best.time_sign = sign;
                    best.time_shift = c;
                }
            }
    }
    best.action_difference = std::abs(action_value(a, 0.0).action - action_value(b, 0.0).action);
    return best;
}

inline MirrorReport compare_mirror(const SolveResult& plus, const SolveResult& minus) {
    if (plus.n != minus.n) throw Error("compare_mirror: mismatched n");
    if (!plus.arc || !minus.arc) throw Error("compare_mirror: results carry no arc");
    const SymmetrySpec spec(plus.n);
    return compare_mirror(reconstruct_full_loop(spec, *plus.arc), reconstruct_full_loop(spec, *minus.arc));
}

}  // namespace choreo
