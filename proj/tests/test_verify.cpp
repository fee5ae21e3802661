#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace choreo;

namespace {

const OmegaSequence kPlusMinus = OmegaSequence::parse(2, "+,-");

const SolveResult& coarse_two_body() {
    static const SolveResult r = minimize(2, kPlusMinus, SolverConfig{});
    return r;
}

const SolveResult& fine_two_body() {
    static const SolveResult r = refine(coarse_two_body(), 512);
    return r;
}

FullLoop loop_of(const SolveResult& r) { return reconstruct_full_loop(SymmetrySpec(r.n), *r.arc); }

FullLoop scaled(const FullLoop& loop, double lam) {
    std::vector<Vec3> q(loop.positions().begin(), loop.positions().end());
    for (auto& p : q) p *= lam;
    return FullLoop(loop.mass_system(), loop.period(), loop.sample_count(), std::move(q));
}

}  // namespace

TEST(SegmentGeometry, Distance) {
    double s, t;
    EXPECT_NEAR(detail::segment_distance2({0, 0, 0}, {1, 0, 0}, {0.5, 1, 0}, {0.5, 2, 0}, s, t), 1.0, 1e-15);
    EXPECT_NEAR(s, 0.5, 1e-15);
    EXPECT_NEAR(t, 0.0, 1e-15);
    EXPECT_NEAR(detail::segment_distance2({0, 0, 0}, {1, 0, 0}, {0.5, -1, 1}, {0.5, 1, 1}, s, t), 1.0, 1e-15);
    EXPECT_NEAR(t, 0.5, 1e-15);
    // parallel, offset along the line
    EXPECT_NEAR(detail::segment_distance2({0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}, s, t), 1.0, 1e-15);
}

TEST(SegmentGeometry, PlanarCrossing) {
    EXPECT_TRUE(detail::segments_intersect_2d(0, 0, 1, 1, 0, 1, 1, 0));
    EXPECT_FALSE(detail::segments_intersect_2d(0, 0, 1, 0, 0, 1, 1, 1));
    EXPECT_FALSE(detail::segments_intersect_2d(0, 0, 1, 1, 2, 0, 3, 1));
}

TEST(Certify, CoarseTwoBodyFailsOnlyOnResidual) {
    const auto cert = certify(loop_of(coarse_two_body()), kPlusMinus);
    EXPECT_FALSE(cert.passed());
    for (const auto& c : cert.checks) {
        if (c.name == "el_residual")
            EXPECT_FALSE(c.passed) << c.value;
        else
            EXPECT_TRUE(c.passed) << c.name << ": " << c.value << " " << c.detail;
    }
}

TEST(Certify, FineTwoBodyPasses) {
    ASSERT_EQ(fine_two_body().status, SolveStatus::converged);
    const auto cert = certify(loop_of(fine_two_body()), kPlusMinus);
    EXPECT_TRUE(cert.passed()) << cert.report();
    EXPECT_EQ(cert.checks.size(), 14u);
    EXPECT_GT(cert.check("collision_distance").value, 0.3);
    EXPECT_LT(cert.check("el_residual").value, 1e-3);
}

TEST(Certify, ThresholdsAreHonoured) {
    Thresholds loose;
    loose.el_residual = 1e-1;
    EXPECT_TRUE(certify(loop_of(coarse_two_body()), kPlusMinus, loose).passed());
    Thresholds strict;
    strict.collision = 1.0;
    EXPECT_FALSE(certify(loop_of(fine_two_body()), kPlusMinus, strict).check("collision_distance").passed);
}

TEST(Certify, ShrunkLoopTripsCollisionGuard) {
    const auto cert = certify(scaled(loop_of(fine_two_body()), 1e-3), kPlusMinus);
    EXPECT_FALSE(cert.check("collision_distance").passed);
    EXPECT_TRUE(cert.check("equivariance").passed);
    EXPECT_TRUE(cert.check("strict_monotone").passed);
}

TEST(Certify, PlanarXzLoopIsDegenerate) {
    const int n = 2, M = 64;
    std::vector<Vec3> q;
    for (int k = 0; k <= M; ++k) {
        const double t = 0.25 * n * k / M;
        q.push_back({-std::cos(2 * std::numbers::pi * t / n), 0.0, 0.5 * omega_profile(kPlusMinus, t)});
    }
    q.back().x = 0.0;
    const auto loop = reconstruct_full_loop(SymmetrySpec(n), FundamentalArc(n, std::move(q)));
    const auto cert = certify(loop, kPlusMinus);
    EXPECT_TRUE(cert.check("equivariance").passed);
    EXPECT_FALSE(cert.check("strict_monotone").passed);
    EXPECT_FALSE(cert.check("nondegenerate").passed);
    EXPECT_FALSE(cert.check("spatial").passed);
    EXPECT_FALSE(cert.passed());
}

TEST(Certify, FlagsTheViolatedSignOnly) {
    const auto omega = OmegaSequence::parse(4, "+,-,+");
    SolverConfig c;
    c.nodes = 64;
    const auto r = minimize(4, omega, c);
    ASSERT_EQ(r.status, SolveStatus::converged);
    const auto loop = loop_of(r);
    EXPECT_TRUE(certify(loop, omega).check("topological_signs").passed);
    const auto bad = certify(loop, OmegaSequence::parse(4, "+,+,+")).check("topological_signs");
    EXPECT_FALSE(bad.passed);
    EXPECT_EQ(bad.detail, "violated at i = 1");
    const auto two = certify(loop, OmegaSequence::parse(4, "-,+,+")).check("topological_signs");
    EXPECT_EQ(two.detail, "violated at i = 0,1");
}

TEST(Certify, Deterministic) {
    const auto loop = loop_of(coarse_two_body());
    EXPECT_EQ(certify(loop, kPlusMinus).report(), certify(loop, kPlusMinus).report());
}

TEST(Certify, WrongShapeIsAGridFailure) {
    const auto loop = loop_of(coarse_two_body());
    const auto cert = certify(loop, OmegaSequence::parse(4, "+,-,+"));
    ASSERT_EQ(cert.checks.size(), 1u);
    EXPECT_EQ(cert.checks.front().name, "grid");
    EXPECT_FALSE(cert.passed());
    EXPECT_THROW(cert.check("equivariance"), Error);
}

TEST(Certify, ReportListsEveryCheck) {
    const auto cert = certify(loop_of(coarse_two_body()), kPlusMinus);
    const std::string rep = cert.report();
    for (const auto& c : cert.checks) EXPECT_NE(rep.find(c.name), std::string::npos) << c.name;
    EXPECT_NE(rep.find("overall: FAIL"), std::string::npos);
}

TEST(Mirror, IdenticalLoopsAlign) {
    const auto m = compare_mirror(coarse_two_body(), coarse_two_body());
    EXPECT_EQ(m.alignment_error, 0.0);
    EXPECT_EQ(m.action_difference, 0.0);
    EXPECT_EQ(m.time_sign, 1);
    EXPECT_EQ(m.time_shift, 0);
}

TEST(Mirror, SignFlipIsAVerticalReflection) {
    const auto minus = minimize(2, kPlusMinus.flipped(), SolverConfig{});
    const auto m = compare_mirror(coarse_two_body(), minus);
    EXPECT_LT(m.alignment_error, 1e-6);
    EXPECT_LT(m.action_difference, 1e-6);
    EXPECT_EQ(m.transform.s, SignedAxes::R_xy().s);
}

TEST(Mirror, DistinctWordsDoNotAlign) {
    const auto words = enumerate_admissible_omega(6, true);
    ASSERT_GE(words.size(), 2u);
    SolverConfig c;
    c.nodes = 48;
    const auto a = minimize(6, words[0], c);
    const auto b = minimize(6, words[1], c);
    EXPECT_GT(compare_mirror(a, b).alignment_error, 1e-2);
}

TEST(Mirror, Errors) {
    SolverConfig c;
    c.nodes = 32;
    const auto four = minimize(4, OmegaSequence::parse(4, "+,-,+"), c);
    EXPECT_THROW(compare_mirror(coarse_two_body(), four), Error);
    SolveResult empty;
    empty.n = 2;
    EXPECT_THROW(compare_mirror(coarse_two_body(), empty), Error);
}
