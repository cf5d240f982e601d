#include <gtest/gtest.h>

#include "tdual/bundle.hpp"
#include "tdual/tools/pairs.hpp"
#include "tdual/tools/random_data.hpp"

namespace tdual {
namespace {

constexpr std::uint64_t kSeed = 20070401;
const Sampling kSampling{kSeed, 16, 1e-9};

/// Rank-k bundle over a 3-box with random closed curvatures and flux with at most one fiber leg.
BundleChart random_chart(tools::RandomData& rd, std::vector<std::string> fibers) {
    BundleChart ch = tools::flat_chart("random", {{"x", {-1, 1}}, {"y", {-1, 1}}, {"z", {-1, 1}}}, std::move(fibers));
    Form h = Form::monomial(ch.frame(), CScalar(rd.scalar(ch.base_vars())), {"dx", "dy", "dz"});
    for (std::size_t i = 0; i < ch.rank(); ++i) {
        ch.set_curvature(i, rd.closed_basic_two_form(ch));
        h += wedge(rd.closed_basic_two_form(ch), ch.gen(ch.fibers()[i]));
    }
    ch.set_flux(h);
    return ch;
}

bool equal_forms(const Form& a, const Form& b, const Domain& dom) {
    if (!(*a.frame() == *b.frame())) return false;
    for (Mask m = 0; m < (Mask(1) << a.frame()->dim()); ++m) {
        const CScalar ca = a.coeff(m);
        const CScalar cb = b.coeff(m);
        if (!equal_numeric(ca.re, cb.re, dom) || !equal_numeric(ca.im, cb.im, dom)) return false;
    }
    return true;
}

TEST(Bundle, ExteriorDerivativeSquaresToZero) {
    tools::RandomData rd(kSeed);
    BundleChart ch = random_chart(rd, {"t1", "t2"});
    const auto pts = ch.sample(kSampling);
    for (int i = 0; i < 16; ++i) {
        Form a = rd.form(ch);
        EXPECT_LE(max_abs(exterior_derivative(exterior_derivative(a, ch), ch), pts), 1e-9);
        EXPECT_LE(max_abs(d_H(d_H(a, ch), ch), pts), 1e-9);
    }
}

TEST(Bundle, RandomChartsValidate) {
    tools::RandomData rd(kSeed);
    for (int i = 0; i < 4; ++i) {
        BundleChart ch = random_chart(rd, {"t1", "t2"});
        EXPECT_TRUE(validate_chart(ch, kSampling).ok(1e-9));
        DualConstruction dc = build_dual_chart(ch);
        EXPECT_TRUE(validate_chart(dc.dual, kSampling).ok(1e-9));
        PairReport pr = validate_pair(dc.corr, kSampling);
        EXPECT_TRUE(pr.ok(1e-9)) << pr.dF;
        EXPECT_TRUE(pr.unimodular);
    }
}

TEST(Bundle, SplitFluxReconstructsHStructurally) {
    tools::RandomData rd(kSeed);
    BundleChart ch = random_chart(rd, {"t1", "t2"});
    FluxSplit s = split_flux(ch);
    Form rebuilt = s.h;
    for (std::size_t i = 0; i < ch.rank(); ++i) rebuilt += wedge(s.c_tilde[i], ch.gen(ch.fibers()[i]));
    EXPECT_TRUE((rebuilt - ch.flux()).is_zero());
}

TEST(Bundle, TwoFiberLegsRaiseHolonomyError) {
    BundleChart ch = tools::flat_chart("bad", {{"x", {-1, 1}}}, {"t1", "t2"});
    ch.set_flux(Form::monomial(ch.frame(), 1, {"dx", "t1", "t2"}));
    EXPECT_THROW((void)split_flux(ch), HolonomyError);
    EXPECT_GT(validate_chart(ch, kSampling).holonomy, 0.5);
}

TEST(Bundle, DualOfDualReproducesTheChart) {
    tools::RandomData rd(kSeed);
    for (int i = 0; i < 4; ++i) {
        BundleChart ch = random_chart(rd, i % 2 ? std::vector<std::string>{"th"} : std::vector<std::string>{"t1", "t2"});
        DualConstruction once = build_dual_chart(ch);
        DualConstruction twice = build_dual_chart(once.dual);
        ASSERT_EQ(twice.dual.fibers(), ch.fibers());
        for (std::size_t k = 0; k < ch.rank(); ++k)
            EXPECT_TRUE(equal_forms(twice.dual.curvature()[k], ch.curvature()[k], ch.domain()));
        EXPECT_TRUE(equal_forms(twice.dual.flux(), ch.flux(), ch.domain()));
    }
}

TEST(Bundle, WrongSignOfFIsDetected) {
    tools::RandomData rd(kSeed);
    BundleChart ch = random_chart(rd, {"th"});
    DualConstruction dc = build_dual_chart(ch);
    PairReport good = validate_pair(dc.corr, kSampling);
    PairReport bad = validate_pair(dc.corr.with_F(-dc.corr.F()), kSampling);
    EXPECT_LE(good.dF, 1e-9);
    EXPECT_GT(bad.dF, 1e-3);
}

TEST(Bundle, DegenerateFiberBlockIsReported) {
    BundleChart ch = tools::flat_chart("flat", {{"x", {-1, 1}}}, {"th"});
    DualConstruction dc = build_dual_chart(ch);
    const CoframePtr& cf = dc.corr.frame();
    PairReport pr = validate_pair(dc.corr.with_F(Form::monomial(cf, 1, {"dx", "th~"})), kSampling);
    EXPECT_FALSE(pr.nondegenerate);
    EXPECT_FALSE(pr.ok(1e-9));
}

TEST(Bundle, MixedRankTwoPairValidates) {
    tools::RandomData rd(kSeed);
    for (Rational s : {Rational(1, 2), Rational(-3), Rational(0)}) {
        tools::MixedPair mp = tools::mixed_pair(rd, s);
        EXPECT_TRUE(validate_chart(mp.m, kSampling).ok(1e-9));
        EXPECT_TRUE(validate_pair(mp.pair.corr(), kSampling).ok(1e-9)) << s.to_string();
    }
}

}  // namespace
}  // namespace tdual
