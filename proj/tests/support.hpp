#pragma once

// Shared fixtures for the test binaries.

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "choreo/choreo.hpp"

namespace choreo::testing {

/// Two unit masses on a circle of separation d rotating at rate w, S samples over one revolution.
inline FullLoop circular_two_body(double d, double w, int S) {
    const double P = 2.0 * std::numbers::pi / w;
    std::vector<Vec3> q;
    for (int s = 0; s < S; ++s) {
        const double th = w * P * s / S;
        const Vec3 p{0.5 * d * std::cos(th), 0.5 * d * std::sin(th), 0.0};
        q.push_back(p);
        q.push_back(-p);
    }
    return FullLoop(MassSystem::equal(2), P, S, std::move(q));
}

/// Weakly feasible arc: the circle guess perturbed by uniform noise and projected.
inline FundamentalArc random_feasible_arc(int n, const OmegaSequence& omega, int nodes, std::mt19937_64& rng,
                                          double jitter = 0.15) {
    std::uniform_real_distribution<double> amp(0.2, 0.8), rad(0.7, 1.5);
    return initial_guess(n, omega, amp(rng), rad(rng), nodes, jitter, rng());
}

inline OmegaSequence random_word(int n, std::mt19937_64& rng) {
    const auto words = enumerate_admissible_omega(n);
    if (words.empty()) throw Error("random_word: no admissible word for n = " + std::to_string(n));
    return words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];
}

}  // namespace choreo::testing
