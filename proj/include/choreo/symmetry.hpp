#pragma once

// The group G_n acting on loops of 2n bodies: time maps, coordinate sign
// flips and index permutations. Reconstruction of a full loop from q_0 on
// [0, n/4], equivariance audits, and the quadrant and well diagnostics.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "model.hpp"

namespace choreo {

enum class Generator { g1, g2, h1, h2 };

inline const char* to_string(Generator g) {
    switch (g) {
        case Generator::g1: return "g1";
        case Generator::g2: return "g2";
        case Generator::h1: return "h1";
        default: return "h2";
    }
}

/// Diagonal orthogonal map with entries +-1.
struct SignedAxes {
    std::array<int, 3> s{1, 1, 1};

    constexpr Vec3 apply(const Vec3& v) const { return {s[0] * v.x, s[1] * v.y, s[2] * v.z}; }
    constexpr SignedAxes operator*(const SignedAxes& o) const {
        return {{s[0] * o.s[0], s[1] * o.s[1], s[2] * o.s[2]}};
    }
    constexpr bool is_identity() const { return s[0] == 1 && s[1] == 1 && s[2] == 1; }
    friend constexpr bool operator==(const SignedAxes&, const SignedAxes&) = default;
    friend constexpr auto operator<=>(const SignedAxes&, const SignedAxes&) = default;

    static constexpr SignedAxes identity() { return {{1, 1, 1}}; }
    static constexpr SignedAxes R_x() { return {{1, -1, -1}}; }
    static constexpr SignedAxes R_z() { return {{-1, -1, 1}}; }
    static constexpr SignedAxes R_xz() { return {{1, -1, 1}}; }
    static constexpr SignedAxes R_yz() { return {{-1, 1, 1}}; }
    static constexpr SignedAxes R_xy() { return {{1, 1, -1}}; }
};

/// t -> sign * t + offset / 2 on the circle R / nZ; offset counted in half units mod 2n.
struct TimeMap {
    int sign = 1;
    int offset_half = 0;

    friend constexpr bool operator==(const TimeMap&, const TimeMap&) = default;
    friend constexpr auto operator<=>(const TimeMap&, const TimeMap&) = default;
};

/// One element of G_n as the triple (tau, rho, sigma).
struct GroupElement {
    int n = 2;
    TimeMap tau;
    SignedAxes rho;
    std::vector<int> sigma;

    static GroupElement identity(int n) {
        GroupElement e;
        e.n = n;
        e.sigma.resize(static_cast<std::size_t>(2 * n));
        std::iota(e.sigma.begin(), e.sigma.end(), 0);
        return e;
    }

    int modulus() const { return 2 * n; }

    /// (this * o) acts as this after o.
    GroupElement operator*(const GroupElement& o) const {
        GroupElement r;
        r.n = n;
        r.tau.sign = tau.sign * o.tau.sign;
        r.tau.offset_half = ((tau.sign * o.tau.offset_half + tau.offset_half) % modulus() + modulus()) % modulus();
        r.rho = rho * o.rho;
        r.sigma.resize(sigma.size());
        for (std::size_t i = 0; i < sigma.size(); ++i) r.sigma[i] = sigma[static_cast<std::size_t>(o.sigma[i])];
        return r;
    }

    GroupElement inverse() const {
        GroupElement r;
        r.n = n;
        r.tau.sign = tau.sign;
        r.tau.offset_half = ((-tau.sign * tau.offset_half) % modulus() + modulus()) % modulus();
        r.rho = rho;
        r.sigma.resize(sigma.size());
        for (std::size_t i = 0; i < sigma.size(); ++i) r.sigma[static_cast<std::size_t>(sigma[i])] = static_cast<int>(i);
        return r;
    }

    bool is_identity() const { return *this == identity(n); }

    /// Image of a time, reduced to [0, n).
    double map_time(double t) const {
        double r = std::fmod(tau.sign * t + 0.5 * tau.offset_half, static_cast<double>(n));
        return r < 0 ? r + n : r;
    }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
        return std::tie(a.n, a.tau, a.rho, a.sigma) <=> std::tie(b.n, b.tau, b.rho, b.sigma);
    }
};

/// Generator table of G_n for a given n.
class SymmetrySpec {
  public:
    explicit SymmetrySpec(int n) : n_(n) {
        if (n < 2) throw Error("SymmetrySpec: n must be >= 2");
    }

    int n() const noexcept { return n_; }
    bool even() const noexcept { return n_ % 2 == 0; }
    int body_count() const noexcept { return 2 * n_; }

    GroupElement generator(Generator g) const {
        GroupElement e = GroupElement::identity(n_);
        const int n = n_;
        auto& sg = e.sigma;
        auto swap_pair = [&](int a, int b) { std::swap(sg[static_cast<std::size_t>(a)], sg[static_cast<std::size_t>(b)]); };
        switch (g) {
            case Generator::g1:
                // i -> i + 1 on each block; q_i(t) = q_0(t + i) needs tau(g1) t = t - 1
                for (int i = 0; i < n; ++i) {
                    sg[static_cast<std::size_t>(i)] = (i + 1) % n;
                    sg[static_cast<std::size_t>(n + i)] = n + (i + 1) % n;
                }
                e.tau = {1, 2 * n - 2};
                break;
            case Generator::g2:
                for (int i = 0; i <= (n - 1) / 2; ++i) {
                    if (i != n - 1 - i) {
                        swap_pair(i, n - 1 - i);
                        swap_pair(n + i, 2 * n - 1 - i);
                    }
                }
                e.tau = {-1, 2};
                e.rho = SignedAxes::R_xz();
                break;
            case Generator::h1:
                for (int i = 0; i < n; ++i) swap_pair(i, n + i);
                e.rho = SignedAxes::R_x();
                break;
            case Generator::h2:
                if (n % 2 == 0) {
                    for (int i = 0; i < n / 2; ++i) {
                        swap_pair(i, n / 2 + i);
                        swap_pair(n + i, n + n / 2 + i);
                    }
                    e.rho = SignedAxes::R_z();
                } else {
                    const int h = n / 2;
                    for (int i = 0; i <= n / 4; ++i) {
                        if (i != h - i) {
                            swap_pair(i, h - i);
                            swap_pair(n + i, n + h - i);
                        }
                    }
                    for (int i = 1; i <= (n + 1) / 4; ++i) {
                        if (h + i != n - i) {
                            swap_pair(h + i, n - i);
                            swap_pair(n + h + i, 2 * n - i);
                        }
                    }
                    e.tau = {-1, 1};
                    e.rho = SignedAxes::R_yz();
                }
                break;
        }
        return e;
    }

    /// Product of a word, leftmost factor applied last.
    GroupElement element(const std::vector<Generator>& word) const {
        GroupElement e = GroupElement::identity(n_);
        for (Generator g : word) e = e * generator(g);
        return e;
    }

    static constexpr std::array<Generator, 4> generators() {
        return {Generator::g1, Generator::g2, Generator::h1, Generator::h2};
    }

  private:
    int n_;
};

/// Every element of G_n, generated by closure.
inline std::vector<GroupElement> enumerate_group(const SymmetrySpec& spec) {
    std::set<GroupElement> seen{GroupElement::identity(spec.n())};
    std::vector<GroupElement> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& e : frontier)
            for (Generator g : SymmetrySpec::generators()) {
                GroupElement p = spec.generator(g) * e;
                if (seen.insert(p).second) next.push_back(std::move(p));
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

/// Number of loop samples per half unit of time; throws if not integral.
inline int samples_per_half(int n, int sample_count) {
    if (sample_count % (2 * n) != 0)
        throw GridError("sample grid of " + std::to_string(sample_count) + " points is not invariant under G_" +
                        std::to_string(n) + " (need a multiple of " + std::to_string(2 * n) + ")");
    return sample_count / (2 * n);
}

/// g(q)_i(t) = rho(g) q_{sigma(g^-1)(i)}(tau(g^-1) t).
inline FullLoop apply_group_element(const GroupElement& g, const FullLoop& loop) {
    const int n = g.n;
    if (loop.body_count() != 2 * n) throw Error("apply_group_element: loop must have 2n bodies");
    const int S = loop.sample_count();
    const int per_half = samples_per_half(n, S);
    const GroupElement inv = g.inverse();
    const long shift = static_cast<long>(inv.tau.offset_half) * per_half;
    std::vector<Vec3> out(static_cast<std::size_t>(S) * (2 * n));
    for (int s = 0; s < S; ++s) {
        const long src = inv.tau.sign * static_cast<long>(s) + shift;
        for (int i = 0; i < 2 * n; ++i)
            out[static_cast<std::size_t>(s) * (2 * n) + i] = g.rho.apply(loop.at(src, inv.sigma[static_cast<std::size_t>(i)]));
    }
    return FullLoop(loop.mass_system(), loop.period(), S, std::move(out));
}

inline FullLoop apply_group_element(const SymmetrySpec& spec, const std::vector<Generator>& word, const FullLoop& loop) {
    return apply_group_element(spec.element(word), loop);
}

/// Max over generators and samples of sum_i |g(q)_i(t) - q_i(t)|.
inline double equivariance_residual(const SymmetrySpec& spec, const FullLoop& loop) {
    double worst = 0.0;
    for (Generator gen : SymmetrySpec::generators()) {
        const FullLoop image = apply_group_element(spec.generator(gen), loop);
        for (int s = 0; s < loop.sample_count(); ++s) {
            double sum = 0.0;
            for (int i = 0; i < loop.body_count(); ++i) sum += norm(image.at(s, i) - loop.at(s, i));
            worst = std::max(worst, sum);
        }
    }
    return worst;
}

/// True when an arc with M intervals embeds in a G_n-invariant loop grid.
inline bool grid_compatible(int n, int nodes) { return nodes >= 8 && (2 * nodes) % n == 0; }

/// Smallest compatible node count >= nodes.
inline int compatible_nodes(int n, int nodes) {
    int m = std::max(nodes, 8);
    while (!grid_compatible(n, m)) ++m;
    return m;
}

inline constexpr double kBoundaryTolerance = 1e-9;

/// Max of |y_0(0)| and |x_0(n/4)|.
inline double boundary_defect(const FundamentalArc& arc) {
    return std::max(std::abs(arc[0].y), std::abs(arc[arc.nodes()].x));
}

/// q_0 at loop sample s of a 4M-point grid, from the arc on [0, n/4].
inline Vec3 arc_to_loop_sample(const FundamentalArc& arc, long s) {
    const long M = arc.nodes();
    const long S = 4 * M;
    s %= S;
    if (s < 0) s += S;
    if (s <= M) return arc[static_cast<int>(s)];
    if (s <= 2 * M) return SignedAxes::R_yz().apply(arc[static_cast<int>(2 * M - s)]);
    if (s <= 3 * M) return SignedAxes::R_z().apply(arc[static_cast<int>(s - 2 * M)]);
    return SignedAxes::R_xz().apply(arc[static_cast<int>(S - s)]);
}

/// Extends q_0 by its reflection symmetries, then fills every body by g1 and h1.
inline FullLoop reconstruct_full_loop(const SymmetrySpec& spec, const FundamentalArc& arc,
                                      double tolerance = kBoundaryTolerance) {
    const int n = spec.n();
    if (arc.n() != n) throw Error("reconstruct_full_loop: arc is for a different n");
    const int M = arc.nodes();
    if (!grid_compatible(n, M))
        throw GridError("reconstruct_full_loop: " + std::to_string(M) + " arc intervals do not embed for n = " +
                        std::to_string(n) + " (2M must be a multiple of n)");
    if (boundary_defect(arc) > tolerance)
        throw Error("reconstruct_full_loop: boundary identities y0(0) = x0(n/4) = 0 violated by " +
                    std::to_string(boundary_defect(arc)));
    std::vector<Vec3> pinned(arc.samples().begin(), arc.samples().end());
    pinned.front().y = 0.0;
    pinned.back().x = 0.0;
    const FundamentalArc a = arc.with_samples(std::move(pinned));

    const int S = 4 * M;
    const int per_unit = S / n;
    const int N = 2 * n;
    std::vector<Vec3> q0(static_cast<std::size_t>(S));
    for (int s = 0; s < S; ++s) q0[static_cast<std::size_t>(s)] = arc_to_loop_sample(a, s);
    std::vector<Vec3> out(static_cast<std::size_t>(S) * N);
    for (int s = 0; s < S; ++s)
        for (int i = 0; i < n; ++i) {
            const Vec3 p = q0[static_cast<std::size_t>((s + i * per_unit) % S)];
            out[static_cast<std::size_t>(s) * N + i] = p;
            out[static_cast<std::size_t>(s) * N + n + i] = SignedAxes::R_x().apply(p);
        }
    return FullLoop(MassSystem::choreography(n), static_cast<double>(n), S, std::move(out));
}

/// Reads q_0 on [0, n/4] from a loop on a 4M-point grid.
inline FundamentalArc extract_arc(const SymmetrySpec& spec, const FullLoop& loop) {
    if (loop.body_count() != spec.body_count()) throw Error("extract_arc: loop must have 2n bodies");
    if (loop.sample_count() % 4 != 0) throw GridError("extract_arc: sample count must be a multiple of 4");
    const int M = loop.sample_count() / 4;
    std::vector<Vec3> samples(static_cast<std::size_t>(M) + 1);
    for (int k = 0; k <= M; ++k) samples[static_cast<std::size_t>(k)] = loop.at(k, 0);
    return FundamentalArc(spec.n(), std::move(samples));
}

// ---------------------------------------------------------------------------
// Quadrants and wells

/// Q2 = {x <= 0, y >= 0}; Q1, Q3, Q4 by reflection.
enum class Region { Q1, Q2, Q3, Q4, upper_half, lower_half };

inline const char* to_string(Region r) {
    switch (r) {
        case Region::Q1: return "Q1";
        case Region::Q2: return "Q2";
        case Region::Q3: return "Q3";
        case Region::Q4: return "Q4";
        case Region::upper_half: return "Q1+Q2";
        default: return "Q3+Q4";
    }
}

/// Signed distance by which p lies outside the region (0 when inside).
inline double region_violation(Region r, const Vec3& p) {
    switch (r) {
        case Region::Q1: return std::max({0.0, -p.x, -p.y});
        case Region::Q2: return std::max({0.0, p.x, -p.y});
        case Region::Q3: return std::max({0.0, p.x, p.y});
        case Region::Q4: return std::max({0.0, -p.x, p.y});
        case Region::upper_half: return std::max(0.0, -p.y);
        default: return std::max(0.0, p.y);
    }
}

struct QuadrantSet {
    std::string name;
    Region region;
    std::vector<int> bodies;
};

struct QuadrantPartition {
    int n = 0;
    /// Bodies stay in their region for t in [0, window].
    double window = 0.5;
    std::vector<QuadrantSet> sets;

    const QuadrantSet& find(const std::string& name) const {
        for (const auto& s : sets)
            if (s.name == name) return s;
        throw Error("QuadrantPartition: no set named " + name);
    }
};

namespace detail {
inline std::vector<int> ranges(std::initializer_list<std::pair<int, int>> rs) {
    std::vector<int> out;
    for (auto [a, b] : rs)
        for (int i = a; i <= b; ++i) out.push_back(i);
    return out;
}
}  // namespace detail

inline QuadrantPartition quadrant_partition(int n) {
    if (n < 2) throw Error("quadrant_partition: n must be >= 2");
    using detail::ranges;
    QuadrantPartition p;
    p.n = n;
    switch (n % 4) {
        case 0: {
            const int l = n / 4;
            p.sets = {{"I2", Region::Q2, ranges({{0, l - 1}, {7 * l, 8 * l - 1}})},
                      {"I1", Region::Q1, ranges({{l, 2 * l - 1}, {6 * l, 7 * l - 1}})},
                      {"I4", Region::Q4, ranges({{2 * l, 3 * l - 1}, {5 * l, 6 * l - 1}})},
                      {"I3", Region::Q3, ranges({{3 * l, 4 * l - 1}, {4 * l, 5 * l - 1}})}};
            break;
        }
        case 2: {
            const int l = (n - 2) / 4;
            p.sets = {{"J2", Region::Q2, ranges({{0, l}, {7 * l + 4, 8 * l + 3}})},
                      {"J1", Region::Q1, ranges({{l + 1, 2 * l}, {6 * l + 3, 7 * l + 3}})},
                      {"J4", Region::Q4, ranges({{2 * l + 1, 3 * l + 1}, {5 * l + 3, 6 * l + 2}})},
                      {"J3", Region::Q3, ranges({{3 * l + 2, 4 * l + 1}, {4 * l + 2, 5 * l + 2}})}};
            break;
        }
        case 1: {
            const int l = (n - 1) / 4;
            p.window = 0.25;
            p.sets = {{"I5", Region::upper_half, ranges({{0, 2 * l}, {6 * l + 2, 8 * l + 1}})},
                      {"I6", Region::lower_half, ranges({{2 * l + 1, 4 * l}, {4 * l + 1, 6 * l + 1}})}};
            break;
        }
        default: {
            const int l = (n - 3) / 4;
            p.window = 0.25;
            p.sets = {{"J5", Region::upper_half, ranges({{0, 2 * l + 1}, {6 * l + 5, 8 * l + 5}})},
                      {"J6", Region::lower_half, ranges({{2 * l + 2, 4 * l + 2}, {4 * l + 3, 6 * l + 4}})}};
            break;
        }
    }
    return p;
}

/// Axis-aligned slab [x_lo, x_hi] x [y_lo, y_hi] containing body i for t in [0, 1/2].
struct Well {
    int body = 0;
    double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
    /// y-bounds taken at t = 0 and t = 1/4.
    bool quarter_variant = false;

    bool interiors_overlap(const Well& o) const {
        return std::min(x_hi, o.x_hi) > std::max(x_lo, o.x_lo) && std::min(y_hi, o.y_hi) > std::max(y_lo, o.y_lo);
    }
    bool contains(const Vec3& p, double tol) const {
        return p.x >= x_lo - tol && p.x <= x_hi + tol && p.y >= y_lo - tol && p.y <= y_hi + tol;
    }
};

struct WellReport {
    std::vector<Well> wells;
    std::vector<std::pair<int, int>> overlaps;
    bool disjoint() const { return overlaps.empty(); }
};

/// Bodies whose window [0, 1/2] straddles an x_0 = 0 crossing of the loop q_0.
inline bool well_uses_quarter(int n, int body) {
    if (n % 2 == 0) return false;
    const int i = body % n;
    for (int crossing4 : {n, 3 * n}) {
        // crossing time crossing4 / 4, local window time in quarters
        const int local = ((crossing4 - 4 * i) % (4 * n) + 4 * n) % (4 * n);
        if (local > 0 && local < 2) return true;
    }
    return false;
}

inline WellReport well_regions(const FullLoop& loop) {
    const int N = loop.body_count();
    if (N % 2 != 0) throw Error("well_regions: loop must have 2n bodies");
    const int n = N / 2;
    const int S = loop.sample_count();
    const int half = samples_per_half(n, S);
    if (n % 2 != 0 && half % 2 != 0) throw GridError("well_regions: t = 1/4 is not a grid node");
    WellReport rep;
    for (int i = 0; i < N; ++i) {
        Well w;
        w.body = i;
        const Vec3 a = loop.at(0, i);
        const Vec3 b = loop.at(half, i);
        w.quarter_variant = well_uses_quarter(n, i);
        const Vec3 yb = w.quarter_variant ? loop.at(half / 2, i) : b;
        w.x_lo = std::min(a.x, b.x);
        w.x_hi = std::max(a.x, b.x);
        w.y_lo = std::min(a.y, yb.y);
        w.y_hi = std::max(a.y, yb.y);
        rep.wells.push_back(w);
    }
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (rep.wells[static_cast<std::size_t>(i)].interiors_overlap(rep.wells[static_cast<std::size_t>(j)]))
                rep.overlaps.emplace_back(i, j);
    return rep;
}

}  // namespace choreo
