#pragma once

// Core value types: positions, masses, sign words, sampled arcs and loops.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace choreo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Two bodies came closer than the admissible collision guard.
class CollisionError : public Error {
  public:
    CollisionError(const std::string& what, double distance)
        : Error(what), distance_(distance) {}
    double distance() const noexcept { return distance_; }

  private:
    double distance_;
};

/// A sample grid cannot represent the requested time map or constraint time.
class GridError : public Error {
  public:
    using Error::Error;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double& operator[](int c) { return c == 0 ? x : (c == 1 ? y : z); }
    constexpr double operator[](int c) const { return c == 0 ? x : (c == 1 ? y : z); }

    constexpr Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3& operator-=(const Vec3& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

enum class Axis { x = 0, y = 1, z = 2 };

constexpr Vec3 unit(Axis a) {
    Vec3 v;
    v[static_cast<int>(a)] = 1.0;
    return v;
}

/// Positive point masses.
class MassSystem {
  public:
    explicit MassSystem(std::vector<double> masses) : masses_(std::move(masses)) {
        if (masses_.size() < 2) throw Error("MassSystem: need at least two bodies");
        for (double m : masses_)
            if (!(m > 0.0) || !std::isfinite(m)) throw Error("MassSystem: masses must be positive");
    }

    /// `count` unit masses.
    static MassSystem equal(int count) {
        if (count < 2) throw Error("MassSystem: need at least two bodies");
        return MassSystem(std::vector<double>(static_cast<std::size_t>(count), 1.0));
    }

    /// The 2n unit masses of the double-choreography problem.
    static MassSystem choreography(int n) {
        if (n < 2) throw Error("MassSystem: choreography needs n >= 2");
        return equal(2 * n);
    }

    int body_count() const noexcept { return static_cast<int>(masses_.size()); }
    double mass(int i) const { return masses_.at(static_cast<std::size_t>(i)); }
    std::span<const double> masses() const noexcept { return masses_; }

    bool all_unit() const {
        return std::all_of(masses_.begin(), masses_.end(), [](double m) { return m == 1.0; });
    }

    friend bool operator==(const MassSystem&, const MassSystem&) = default;

  private:
    std::vector<double> masses_;
};

/// Sign word of length floor(n/2)+1 prescribing on which side of the xy-plane
/// body 0 sits at the half-integer times i/2.
class OmegaSequence {
  public:
    OmegaSequence(int n, std::vector<int> signs) : n_(n), signs_(std::move(signs)) {
        if (n_ < 2) throw Error("OmegaSequence: n must be >= 2");
        if (signs_.size() != static_cast<std::size_t>(n_ / 2 + 1))
            throw Error("OmegaSequence: expected " + std::to_string(n_ / 2 + 1) + " signs for n = " +
                        std::to_string(n_) + ", got " + std::to_string(signs_.size()));
        for (int s : signs_)
            if (s != 1 && s != -1) throw Error("OmegaSequence: signs must be +1 or -1");
    }

    /// Parses "+,-,+" (ASCII '-' or U+2212 accepted, whitespace ignored).
    static OmegaSequence parse(int n, std::string_view word) {
        std::vector<int> signs;
        std::size_t pos = 0;
        while (pos <= word.size()) {
            std::size_t comma = word.find(',', pos);
            if (comma == std::string_view::npos) comma = word.size();
            std::string token;
            for (char c : word.substr(pos, comma - pos))
                if (c != ' ' && c != '\t') token += c;
            if (token == "+" || token == "+1" || token == "1")
                signs.push_back(1);
            else if (token == "-" || token == "-1" || token == "\xE2\x88\x92")
                signs.push_back(-1);
            else
                throw Error("OmegaSequence: bad token '" + token + "' in \"" + std::string(word) + "\"");
            pos = comma + 1;
        }
        return OmegaSequence(n, std::move(signs));
    }

    int n() const noexcept { return n_; }
    int size() const noexcept { return static_cast<int>(signs_.size()); }
    int operator[](int i) const { return signs_.at(static_cast<std::size_t>(i)); }
    std::span<const int> signs() const noexcept { return signs_; }

    OmegaSequence flipped() const {
        std::vector<int> s(signs_);
        for (int& v : s) v = -v;
        return OmegaSequence(n_, std::move(s));
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < signs_.size(); ++i) {
            if (i) out += ',';
            out += signs_[i] > 0 ? '+' : '-';
        }
        return out;
    }

    friend bool operator==(const OmegaSequence&, const OmegaSequence&) = default;
    friend bool operator<(const OmegaSequence& a, const OmegaSequence& b) {
        return std::pair(a.n_, a.to_string()) < std::pair(b.n_, b.to_string());
    }

  private:
    int n_;
    std::vector<int> signs_;
};

/// q_0 sampled on [0, n/4] at t_k = (n/4) k / M, k = 0..M.
class FundamentalArc {
  public:
    FundamentalArc(int n, std::vector<Vec3> samples) : n_(n), samples_(std::move(samples)) {
        if (n_ < 2) throw Error("FundamentalArc: n must be >= 2");
        if (samples_.size() < 9) throw Error("FundamentalArc: need at least 8 intervals");
    }

    int n() const noexcept { return n_; }
    int nodes() const noexcept { return static_cast<int>(samples_.size()) - 1; }
    double duration() const noexcept { return 0.25 * n_; }
    double step() const noexcept { return duration() / nodes(); }
    double time(int k) const noexcept { return step() * k; }

    const Vec3& operator[](int k) const { return samples_.at(static_cast<std::size_t>(k)); }
    std::span<const Vec3> samples() const noexcept { return samples_; }

    FundamentalArc with_samples(std::vector<Vec3> samples) const {
        return FundamentalArc(n_, std::move(samples));
    }

    friend bool operator==(const FundamentalArc&, const FundamentalArc&) = default;

  private:
    int n_;
    std::vector<Vec3> samples_;
};

/// Positions of every body on a uniform periodic grid t_s = period * s / S.
class FullLoop {
  public:
    FullLoop(MassSystem masses, double period, int sample_count, std::vector<Vec3> positions)
        : masses_(std::move(masses)), period_(period), samples_(sample_count), positions_(std::move(positions)) {
        if (!(period_ > 0.0)) throw Error("FullLoop: period must be positive");
        if (samples_ < 1) throw Error("FullLoop: need at least one sample");
        if (positions_.size() != static_cast<std::size_t>(samples_) * body_count())
            throw Error("FullLoop: positions size does not match samples x bodies");
    }

    const MassSystem& mass_system() const noexcept { return masses_; }
    int body_count() const noexcept { return masses_.body_count(); }
    double period() const noexcept { return period_; }
    int sample_count() const noexcept { return samples_; }
    double step() const noexcept { return period_ / samples_; }
    double time(int s) const noexcept { return step() * s; }

    /// Periodic sample index.
    int wrap(long s) const noexcept {
        long r = s % samples_;
        return static_cast<int>(r < 0 ? r + samples_ : r);
    }

    const Vec3& at(long s, int body) const {
        return positions_[static_cast<std::size_t>(wrap(s)) * body_count() + static_cast<std::size_t>(body)];
    }

    /// Configuration of all bodies at sample s.
    std::span<const Vec3> config(long s) const {
        return std::span<const Vec3>(positions_).subspan(static_cast<std::size_t>(wrap(s)) * body_count(),
                                                         static_cast<std::size_t>(body_count()));
    }

    std::span<const Vec3> positions() const noexcept { return positions_; }

    friend bool operator==(const FullLoop&, const FullLoop&) = default;

  private:
    MassSystem masses_;
    double period_;
    int samples_;
    std::vector<Vec3> positions_;
};

enum class Monotonicity { violated, weak, strict };

inline const char* to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::strict: return "strict";
        case Monotonicity::weak: return "weak";
        default: return "violated";
    }
}

struct ConstraintFlags {
    bool evaluated = false;
    Monotonicity x_monotone = Monotonicity::violated;
    Monotonicity y_monotone = Monotonicity::violated;
    bool topological = false;
    bool boundary = false;
};

struct ActionReport {
    double kinetic_integral = 0.0;
    double potential_integral = 0.0;
    double action = 0.0;
    double gradient_inf_norm = 0.0;
    double min_pairwise_distance = 0.0;
    ConstraintFlags constraint_flags;
};

/// Linear interpolation in time with periodic wraparound.
inline FullLoop resample(const FullLoop& loop, int new_sample_count) {
    if (new_sample_count < 8) throw Error("resample: need at least 8 samples");
    const int S = loop.sample_count();
    const int N = loop.body_count();
    if (new_sample_count == S) return loop;
    std::vector<Vec3> out(static_cast<std::size_t>(new_sample_count) * N);
    for (int s = 0; s < new_sample_count; ++s) {
        // position in old sample units, computed in integer arithmetic where possible
        const long num = static_cast<long>(s) * S;
        const long base = num / new_sample_count;
        const double frac = static_cast<double>(num % new_sample_count) / new_sample_count;
        for (int i = 0; i < N; ++i) {
            const Vec3& a = loop.at(base, i);
            const Vec3& b = loop.at(base + 1, i);
            out[static_cast<std::size_t>(s) * N + i] = frac == 0.0 ? a : a + (b - a) * frac;
        }
    }
    return FullLoop(loop.mass_system(), loop.period(), new_sample_count, std::move(out));
}

/// Linear interpolation of an arc onto a grid with `nodes` intervals.
inline FundamentalArc resample(const FundamentalArc& arc, int nodes) {
    if (nodes < 8) throw Error("resample: need at least 8 arc intervals");
    const int M = arc.nodes();
    if (nodes == M) return arc;
    std::vector<Vec3> out(static_cast<std::size_t>(nodes) + 1);
    for (int k = 0; k <= nodes; ++k) {
        const long num = static_cast<long>(k) * M;
        const long base = num / nodes;
        const double frac = static_cast<double>(num % nodes) / nodes;
        if (base >= M)
            out[static_cast<std::size_t>(k)] = arc[M];
        else
            out[static_cast<std::size_t>(k)] = frac == 0.0 ? arc[static_cast<int>(base)]
                                                           : arc[static_cast<int>(base)] +
                                                                 (arc[static_cast<int>(base) + 1] - arc[static_cast<int>(base)]) * frac;
    }
    return FundamentalArc(arc.n(), std::move(out));
}

}  // namespace choreo
