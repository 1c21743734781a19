#include <gtest/gtest.h>

#include <complex>

#include "osface/face_model.hpp"

using namespace osface;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

} // namespace

TEST(RMatrix, CornerEntry) {
    const context ctx(0.3);
    const r_matrix r = build_r_matrix(0.35, 0.25, 0.41, ctx);
    EXPECT_LT(rel(r(0, 0), theta(cplx(0.6), ctx)), 1e-14);
    EXPECT_EQ(r(3, 3), r(0, 0));
}

TEST(RMatrix, MiddleBlock) {
    const context ctx(0.4);
    const cplx x(0.13, 0.02), h(0.29, -0.03);
    const r_matrix r = build_r_difference(x, h, ctx);
    auto t = [&](cplx z) { return theta(z, ctx); };
    EXPECT_LT(rel(r(1, 1), t(h - 0.5) * t(x) / t(h)), 1e-14);
    EXPECT_LT(rel(r(1, 2), t(h + x) * t(cplx(0.5)) / t(h)), 1e-14);
    EXPECT_LT(rel(r(2, 1), t(h - x) * t(cplx(0.5)) / t(h)), 1e-14);
    EXPECT_LT(rel(r(2, 2), t(h + 0.5) * t(x) / t(h)), 1e-14);
}

TEST(RMatrix, EqualSpectralParameters) {
    const context ctx(0.3);
    const cplx u(0.2, 0.05), h(0.37, 0.01);
    const r_matrix r = build_r_matrix(u, u, h, ctx);
    const cplx half = theta(cplx(0.5), ctx);
    EXPECT_EQ(r(1, 1), cplx(0.0));
    EXPECT_EQ(r(2, 2), cplx(0.0));
    EXPECT_LT(rel(r(0, 0), half), 1e-15);
    EXPECT_LT(rel(r(1, 2), half), 1e-15);
    EXPECT_LT(rel(r(2, 1), half), 1e-15);
}

TEST(RMatrix, HeightPeriodicity) {
    const context ctx(0.5);
    EXPECT_LT(check_h_periodicity(cplx(0.1, 0.02), cplx(-0.2, 0.01), cplx(0.3, 0.04), ctx).residual,
              1e-12);
}

TEST(RMatrix, PoleInHeight) {
    EXPECT_THROW(build_r_matrix(0.1, 0.2, 0.0, context(0.3)), pole_error);
    EXPECT_THROW(build_r_matrix(0.1, 0.2, 1.0, context(0.3)), pole_error);
}

TEST(RMatrix, IceRule) {
    const context ctx(0.3);
    const r_matrix r = build_r_matrix(cplx(0.1, 0.03), cplx(0.33, -0.02), cplx(0.27, 0.01), ctx);
    EXPECT_EQ(r(1, 0), cplx(0.0)); // (01, 00)
    EXPECT_EQ(r(3, 0), cplx(0.0)); // (11, 00)
    const auto rep = check_ice_rule(r);
    EXPECT_EQ(rep.residual, 0.0);
    EXPECT_TRUE(rep.pass);

    r_matrix broken = r;
    broken.weights(1, 0) = 1e-3;
    EXPECT_FALSE(check_ice_rule(broken).pass);
}

TEST(RMatrix, KMatrixIsFlip) {
    const matrix2 k = k_matrix();
    EXPECT_EQ(k(0, 0), cplx(0.0));
    EXPECT_EQ(k(0, 1), cplx(1.0));
    EXPECT_EQ(k(1, 0), cplx(1.0));
    EXPECT_EQ(k(1, 1), cplx(0.0));
}

TEST(Embedding, PairOnAdjacentSitesIsKronecker) {
    matrix4 op;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) op(i, j) = cplx(i + 1, j);
    const auto e = embed_pair<3>(op, 0, 1);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            EXPECT_EQ(e(i, j), (i & 1) == (j & 1) ? op(i >> 1, j >> 1) : cplx(0.0));
}

TEST(Embedding, ReversedPairSwapsRoles) {
    matrix4 op = matrix4::Zero();
    op(1, 2) = 1.0; // |10> -> |01> on (first, second)
    const auto e = embed_pair<2>(op, 1, 0);
    // With site 1 as first, the input |site0 site1> = |01> has first = 1, second = 0.
    EXPECT_EQ(e(2, 1), cplx(1.0));
    EXPECT_EQ(e.cwiseAbs().sum(), 1.0);
}

TEST(Ybe, ReferencePoint) {
    EXPECT_LT(check_dynamical_ybe(0.1, 0.25, 0.4, 0.33, context(0.3)).residual, 1e-11);
}

TEST(Ybe, EqualFirstTwoParameters) {
    EXPECT_LT(check_dynamical_ybe(0.2, 0.2, 0.37, 0.31, context(0.3)).residual, 1e-11);
}

TEST(Ybe, RandomComplex) {
    const cplx u(0.12, 0.03), v(-0.27, 0.01), w(0.33, -0.04), h(0.19, 0.02);
    const auto r = check_dynamical_ybe(u, v, w, h, context(0.6));
    EXPECT_LT(r.residual, 1e-10);
    EXPECT_EQ(r.check_name, "face.ybe");
}

TEST(Ybe, WithoutHalfShiftFails) {
    // Dropping the dynamical shift breaks the relation, so the check has teeth.
    const context ctx(0.3);
    const cplx u(0.12, 0.03), v(-0.27, 0.01), w(0.33, -0.04), h(0.19, 0.02);
    auto r = [&](cplx x, cplx y) { return build_r_matrix(x, y, h, ctx).weights; };
    const matrix8 lhs = embed_pair<3>(r(v, w), 1, 2) * embed_pair<3>(r(u, w), 0, 2) *
                        embed_pair<3>(r(u, v), 0, 1);
    const matrix8 rhs = embed_pair<3>(r(u, v), 0, 1) * embed_pair<3>(r(u, w), 0, 2) *
                        embed_pair<3>(r(v, w), 1, 2);
    EXPECT_GT(max_entry_residual(lhs, rhs, ctx.zero_tolerance), 1e-3);
}

TEST(Reflection, ReferencePoint) {
    const auto r = check_reflection_equation(0.15, 0.3, 0.4, context(0.3));
    EXPECT_LT(r.residual, 1e-11);
    EXPECT_EQ(r.check_name, "face.reflection");
}

TEST(Reflection, DegenerateDifferenceAndSum) {
    const context ctx(0.3);
    EXPECT_LT(check_reflection_equation(0.21, 0.21, 0.4, ctx).residual, 1e-11);
    EXPECT_LT(check_reflection_equation(0.21, -0.21, 0.4, ctx).residual, 1e-11);
}

TEST(Reflection, RandomComplex) {
    const cplx u(0.17, -0.02), v(-0.08, 0.04), h(0.31, 0.03);
    EXPECT_LT(check_reflection_equation(u, v, h, context(0.7)).residual, 1e-10);
}

TEST(Reflection, VariantsAreLabelled) {
    const auto variants = shifted_reflection_variants();
    ASSERT_EQ(variants.size(), 15u);
    for (const auto& s : variants) EXPECT_FALSE(s.literal());
    const auto r = check_reflection_equation(0.15, 0.3, 0.4, context(0.3), 1e-10, variants[0]);
    EXPECT_EQ(r.check_name, "face.reflection_variant[(1/2,0,0,0)]");
}

TEST(MaxProductTerm, MatchesHandComputation) {
    matrix2 a, b;
    a << 1.0, -2.0, 0.5, 0.0;
    b << 3.0, 0.0, 0.0, -4.0;
    // Largest |a_ik b_kj| is |-2 * -4| = 8.
    EXPECT_EQ(max_product_term({a, b}), 8.0);
}
