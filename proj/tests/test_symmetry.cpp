#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"

using namespace choreo;

namespace {

/// Within-block permutation extended to both blocks.
std::vector<int> block_perm(int n, auto f) {
    std::vector<int> p(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        const int j = ((f(i) % n) + n) % n;
        p[static_cast<std::size_t>(i)] = j;
        p[static_cast<std::size_t>(n + i)] = n + j;
    }
    return p;
}

/// Reconstruction of an unconstrained random arc; n = 3 has no admissible word to start from.
FullLoop random_loop(int n, std::uint64_t seed, int nodes = 0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    const int M = nodes ? nodes : compatible_nodes(n, 24);
    std::vector<Vec3> q(static_cast<std::size_t>(M) + 1);
    for (auto& p : q) p = {g(rng), g(rng), g(rng)};
    q.front().y = 0.0;
    q.back().x = 0.0;
    return reconstruct_full_loop(SymmetrySpec(n), FundamentalArc(n, std::move(q)));
}

}  // namespace

TEST(SymmetrySpec, GeneratorPermutationsMatchClosedForms) {
    for (int n = 2; n <= 7; ++n) {
        const SymmetrySpec spec(n);
        EXPECT_EQ(spec.generator(Generator::g1).sigma, block_perm(n, [](int i) { return i + 1; })) << n;
        EXPECT_EQ(spec.generator(Generator::g2).sigma, block_perm(n, [n](int i) { return n - 1 - i; })) << n;
        const auto h2 = n % 2 == 0 ? block_perm(n, [n](int i) { return i + n / 2; })
                                   : block_perm(n, [n](int i) { return (n - 1) / 2 - i; });
        EXPECT_EQ(spec.generator(Generator::h2).sigma, h2) << n;
        std::vector<int> h1(static_cast<std::size_t>(2 * n));
        for (int i = 0; i < 2 * n; ++i) h1[static_cast<std::size_t>(i)] = (i + n) % (2 * n);
        EXPECT_EQ(spec.generator(Generator::h1).sigma, h1) << n;
    }
}

TEST(SymmetrySpec, SmallCasesByHand) {
    EXPECT_EQ(SymmetrySpec(2).generator(Generator::g2).sigma, (std::vector<int>{1, 0, 3, 2}));
    EXPECT_EQ(SymmetrySpec(3).generator(Generator::h2).sigma, (std::vector<int>{1, 0, 2, 4, 3, 5}));
    EXPECT_EQ(SymmetrySpec(5).generator(Generator::h2).sigma, (std::vector<int>{2, 1, 0, 4, 3, 7, 6, 5, 9, 8}));
    EXPECT_EQ(SymmetrySpec(4).generator(Generator::h2).rho, SignedAxes::R_z());
    EXPECT_EQ(SymmetrySpec(5).generator(Generator::h2).rho, SignedAxes::R_yz());
}

TEST(SymmetrySpec, GroupRelations) {
    for (int n = 2; n <= 9; ++n) {
        const SymmetrySpec spec(n);
        using G = Generator;
        EXPECT_TRUE(spec.element(std::vector<G>(static_cast<std::size_t>(n), G::g1)).is_identity()) << n;
        EXPECT_TRUE(spec.element({G::g2, G::g2}).is_identity()) << n;
        EXPECT_TRUE(spec.element({G::g1, G::g2, G::g1, G::g2}).is_identity()) << n;
        EXPECT_TRUE(spec.element({G::h1, G::h1}).is_identity()) << n;
        EXPECT_TRUE(spec.element({G::h2, G::h2}).is_identity()) << n;
        EXPECT_FALSE(spec.element({G::g1}).is_identity()) << n;
        EXPECT_EQ(enumerate_group(spec).size(), static_cast<std::size_t>(8 * n)) << n;
    }
}

TEST(SymmetrySpec, InverseAndComposition) {
    const SymmetrySpec spec(5);
    for (const auto& g : enumerate_group(spec)) {
        EXPECT_TRUE((g * g.inverse()).is_identity());
        EXPECT_TRUE((g.inverse() * g).is_identity());
    }
}

TEST(ApplyGroupElement, RelationsActAsIdentityOnAnyLoop) {
    // a loop with no symmetry at all
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0, 1);
    for (int n : {2, 3, 4, 5}) {
        const int S = 8 * n;
        std::vector<Vec3> q;
        for (int k = 0; k < S * 2 * n; ++k) q.push_back({g(rng), g(rng), g(rng)});
        const FullLoop L(MassSystem::choreography(n), n, S, q);
        const SymmetrySpec spec(n);
        using G = Generator;
        EXPECT_EQ(apply_group_element(spec, std::vector<G>(static_cast<std::size_t>(n), G::g1), L), L);
        EXPECT_EQ(apply_group_element(spec, {G::g2, G::g2}, L), L);
        EXPECT_EQ(apply_group_element(spec, {G::g1, G::g2, G::g1, G::g2}, L), L);
        EXPECT_EQ(apply_group_element(spec, {G::h2, G::h2}, L), L);
        // composition acts as the product
        const auto gh = apply_group_element(spec, {G::g1, G::h2}, L);
        EXPECT_EQ(gh, apply_group_element(spec.generator(G::g1), apply_group_element(spec.generator(G::h2), L)));
    }
}

TEST(ApplyGroupElement, RejectsNonInvariantGrid) {
    std::vector<Vec3> q(10 * 6);
    const FullLoop L(MassSystem::choreography(3), 3.0, 10, q);
    EXPECT_THROW(apply_group_element(SymmetrySpec(3), {Generator::g1}, L), GridError);
}

TEST(ApplyGroupElement, H1MapsBodyToReflectedPartner) {
    const FullLoop L = random_loop(4, 11);
    const auto img = apply_group_element(SymmetrySpec(4), {Generator::h1}, L);
    for (int s = 0; s < L.sample_count(); ++s)
        for (int i = 0; i < 4; ++i) EXPECT_EQ(img.at(s, i + 4), SignedAxes::R_x().apply(L.at(s, i)));
}

TEST(Reconstruct, BodiesFollowBodyZeroWithTimeShift) {
    for (int n : {2, 3, 4, 5, 6}) {
        const FullLoop L = random_loop(n, 100 + n);
        const int per_unit = L.sample_count() / n;
        for (int s = 0; s < L.sample_count(); ++s)
            for (int i = 0; i < n; ++i) {
                EXPECT_EQ(L.at(s, i), L.at(s + i * per_unit, 0));
                EXPECT_EQ(L.at(s, n + i), SignedAxes::R_x().apply(L.at(s, i)));
            }
    }
}

TEST(Reconstruct, ReflectionIdentitiesOfBodyZero) {
    for (int n : {2, 3, 4, 5, 6, 7}) {
        const FullLoop L = random_loop(n, 200 + n);
        const int S = L.sample_count();
        for (int s = 0; s < S; ++s) {
            EXPECT_EQ(L.at(S - s, 0), SignedAxes::R_xz().apply(L.at(s, 0)));
            if (n % 2 == 0)
                EXPECT_EQ(L.at(s, 0), SignedAxes::R_z().apply(L.at(s + S / 2, 0)));
            else
                EXPECT_EQ(L.at(s, 0), SignedAxes::R_yz().apply(L.at(S / 2 - s, 0)));
        }
        // y0(0) = x0(n/4) = y0(n/2) = x0(3n/4) = 0
        EXPECT_EQ(L.at(0, 0).y, 0.0);
        EXPECT_EQ(L.at(S / 4, 0).x, 0.0);
        EXPECT_LE(std::abs(L.at(S / 2, 0).y), 1e-12);
        EXPECT_LE(std::abs(L.at(3 * S / 4, 0).x), 1e-12);
    }
}

TEST(Reconstruct, CircleArcForTwoPairs) {
    std::vector<Vec3> q;
    const int M = 16;
    for (int k = 0; k <= M; ++k) {
        const double t = 0.5 * k / M;
        q.push_back({-std::cos(std::numbers::pi * t), std::sin(std::numbers::pi * t), 0.0});
    }
    q.back().x = 0.0;
    const FullLoop L = reconstruct_full_loop(SymmetrySpec(2), FundamentalArc(2, q));
    for (int s = 0; s < L.sample_count(); ++s) EXPECT_EQ(L.at(s, 2), SignedAxes::R_x().apply(L.at(s, 0)));
    EXPECT_LE(equivariance_residual(SymmetrySpec(2), L), 1e-12);
}

TEST(Reconstruct, Errors) {
    std::vector<Vec3> q(17, Vec3{-1, 0, 0});
    EXPECT_THROW(reconstruct_full_loop(SymmetrySpec(2), FundamentalArc(2, q)), Error);  // x0(n/4) != 0
    q.back().x = 0.0;
    EXPECT_THROW(reconstruct_full_loop(SymmetrySpec(3), FundamentalArc(3, q)), Error);  // wrong n
    std::vector<Vec3> r(18, Vec3{-1, 0, 0});
    r.back().x = 0.0;
    EXPECT_THROW(reconstruct_full_loop(SymmetrySpec(4), FundamentalArc(4, r)), GridError);  // 2M = 34
}

TEST(Grid, CompatibleNodes) {
    EXPECT_TRUE(grid_compatible(2, 8));
    EXPECT_FALSE(grid_compatible(5, 256));
    EXPECT_EQ(compatible_nodes(5, 256), 260);
    EXPECT_EQ(compatible_nodes(3, 8), 9);
    EXPECT_EQ(compatible_nodes(4, 128), 128);
}

TEST(EquivarianceResidual, ZeroOnReconstructedLoops) {
    for (int n = 2; n <= 8; ++n) EXPECT_LE(equivariance_residual(SymmetrySpec(n), random_loop(n, 300 + n)), 1e-12);
}

TEST(EquivarianceResidual, PerturbedPartnerSample) {
    // body n moved by +0.5 in z at one sample: the h1 image disagrees at bodies 0 and n by 0.5 each
    const int n = 3;
    const FullLoop L = random_loop(n, 17);
    std::vector<Vec3> q(L.positions().begin(), L.positions().end());
    const int s = 5;
    q[static_cast<std::size_t>(s) * 2 * n + n].z += 0.5;
    const FullLoop P(L.mass_system(), L.period(), L.sample_count(), q);
    const auto h1 = apply_group_element(SymmetrySpec(n), {Generator::h1}, P);
    double sum = 0.0;
    for (int i = 0; i < 2 * n; ++i) sum += norm(h1.at(s, i) - P.at(s, i));
    EXPECT_NEAR(sum, 1.0, 1e-15);
    EXPECT_NEAR(equivariance_residual(SymmetrySpec(n), P), 1.0, 1e-12);
}

TEST(EquivarianceResidual, InvariantAfterApplyingGenerators) {
    const SymmetrySpec spec(6);
    const FullLoop L = random_loop(6, 21);
    for (Generator g : SymmetrySpec::generators())
        EXPECT_LE(equivariance_residual(spec, apply_group_element(spec.generator(g), L)), 1e-12);
}

TEST(ExtractArc, InvertsReconstruction) {
    for (int n : {2, 5, 6}) {
        const SymmetrySpec spec(n);
        const FullLoop L = random_loop(n, 400 + n);
        EXPECT_EQ(reconstruct_full_loop(spec, extract_arc(spec, L)), L);
    }
}

TEST(QuadrantPartition, KnownSets) {
    const auto p4 = quadrant_partition(4);
    EXPECT_EQ(p4.find("I2").bodies, (std::vector<int>{0, 7}));
    EXPECT_EQ(p4.find("I1").bodies, (std::vector<int>{1, 6}));
    EXPECT_EQ(p4.find("I4").bodies, (std::vector<int>{2, 5}));
    EXPECT_EQ(p4.find("I3").bodies, (std::vector<int>{3, 4}));
    EXPECT_EQ(quadrant_partition(6).find("J2").bodies, (std::vector<int>{0, 1, 11}));
    EXPECT_EQ(quadrant_partition(5).find("I5").bodies, (std::vector<int>{0, 1, 2, 8, 9}));
    EXPECT_THROW(p4.find("J5"), Error);
}

TEST(QuadrantPartition, DisjointCover) {
    for (int n = 2; n <= 21; ++n) {
        const auto p = quadrant_partition(n);
        std::vector<int> seen(static_cast<std::size_t>(2 * n), 0);
        for (const auto& s : p.sets)
            for (int b : s.bodies) {
                ASSERT_GE(b, 0);
                ASSERT_LT(b, 2 * n);
                ++seen[static_cast<std::size_t>(b)];
            }
        for (int c : seen) EXPECT_EQ(c, 1) << "n = " << n;
        EXPECT_EQ(p.sets.size(), n % 2 == 0 ? 4u : 2u);
    }
}

TEST(Wells, DisjointForStrictlyMonotoneLoops) {
    for (int n = 2; n <= 9; ++n) {
        if (n == 3) continue;
        const auto w = enumerate_admissible_omega(n).front();
        const int M = compatible_nodes(n, 4 * n);
        const FullLoop L = reconstruct_full_loop(SymmetrySpec(n), initial_guess(n, w, 0.5, 1.0, M));
        const auto rep = well_regions(L);
        EXPECT_EQ(rep.wells.size(), static_cast<std::size_t>(2 * n));
        EXPECT_TRUE(rep.disjoint()) << "n = " << n;
    }
}

TEST(Wells, IdenticalSlabsOverlap) {
    std::vector<Vec3> q;
    const int S = 16;
    for (int s = 0; s < S; ++s) {
        const Vec3 p{std::cos(2 * std::numbers::pi * s / S), std::sin(2 * std::numbers::pi * s / S), 0.0};
        for (int i = 0; i < 4; ++i) q.push_back(p);
    }
    const auto rep = well_regions(FullLoop(MassSystem::choreography(2), 2.0, S, q));
    EXPECT_FALSE(rep.disjoint());
}

TEST(Wells, QuarterVariantMarksTheBodyCrossingTheYAxis) {
    // oracle: the body whose x changes sign strictly inside its window (0, 1/2)
    for (int n : {5, 7, 9, 11}) {
        const auto w = enumerate_admissible_omega(n).front();
        const int M = compatible_nodes(n, 8 * n);
        const FullLoop L = reconstruct_full_loop(SymmetrySpec(n), initial_guess(n, w, 0.5, 1.0, M));
        const int half = L.sample_count() / (2 * n);
        const auto rep = well_regions(L);
        for (int i = 0; i < 2 * n; ++i) {
            bool crosses = false;
            for (int s = 0; s < half; ++s)
                crosses = crosses || L.at(s, i).x * L.at(s + 1, i).x < 0 || (s > 0 && L.at(s, i).x == 0.0);
            EXPECT_EQ(rep.wells[static_cast<std::size_t>(i)].quarter_variant, crosses) << "n = " << n << " body " << i;
        }
        EXPECT_TRUE(rep.disjoint()) << n;
    }
    EXPECT_TRUE(well_uses_quarter(5, 1));
    EXPECT_TRUE(well_uses_quarter(5, 6));
    EXPECT_FALSE(well_uses_quarter(5, 0));
    EXPECT_FALSE(well_uses_quarter(4, 1));
}
