#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "nsemi/boolcls.hpp"
#include "nsemi/enumerate.hpp"
#include "nsemi/mlpoly.hpp"

using namespace nsemi;

namespace {

const RingSpec Z = RingSpec::integers();
RingSpec GF(std::uint64_t p) { return RingSpec::prime_field(p); }

RingElem z(long long v) { return {Z, v}; }
RingElem gf(std::uint64_t p, long long v) { return {GF(p), v}; }

MultilinearPoly poly(RingSpec r, std::uint32_t n, std::initializer_list<std::pair<std::vector<std::uint32_t>, long long>> terms) {
    MultilinearPoly p(r, n);
    for (const auto& [vars, c] : terms) p.add_term(monomial_of(vars, n), RingElem(r, c));
    return p;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

TEST(Poly, ZeroCoefficientsAreNotStored) {
    MultilinearPoly p(GF(3), 2);
    p.add_term({1}, 2);
    p.add_term({1}, 1);
    EXPECT_TRUE(p.is_zero());
    p.set_coef(monomial_of(std::vector<std::uint32_t>{1, 2}, 2), gf(3, 0));
    EXPECT_EQ(p.term_count(), 0U);
    p.add_term({2, 1}, 5);
    EXPECT_EQ(p.coef(0b11), gf(3, 2));
}

TEST(Poly, MonomialValidation) {
    EXPECT_THROW(monomial_of(std::vector<std::uint32_t>{1, 1}, 2), input_error);
    EXPECT_THROW(monomial_of(std::vector<std::uint32_t>{3}, 2), input_error);
    EXPECT_THROW(monomial_of(std::vector<std::uint32_t>{0}, 2), input_error);
    EXPECT_EQ(monomial_of(std::vector<std::uint32_t>{3, 1}, 3), 0b101U);
    EXPECT_EQ(vars_of(0b101), (std::vector<std::uint32_t>{1, 3}));
    MultilinearPoly p(Z, 2);
    EXPECT_THROW(p.add_term(0b100, z(1)), input_error);
    EXPECT_THROW(p.add_term(0b1, gf(3, 1)), input_error);
    EXPECT_THROW(MultilinearPoly(Z, 0), input_error);
    EXPECT_THROW(MultilinearPoly(Z, kMaxPolyVars + 1), input_error);
}

TEST(Eval, Examples) {
    EXPECT_EQ(eval(poly(Z, 2, {{{1, 2}, 1}}), {z(3), z(4)}), z(12));
    EXPECT_EQ(eval(poly(Z, 2, {{{1, 2}, 2}, {{1}, 1}, {{2}, 1}}), {z(1), z(1)}), z(4));
    EXPECT_EQ(eval(poly(GF(3), 3, {{{1}, 1}, {{2}, 2}, {{3}, 1}}), {gf(3, 1), gf(3, 1), gf(3, 1)}), gf(3, 1));
}

TEST(Eval, Errors) {
    MultilinearPoly p = poly(Z, 2, {{{1}, 1}});
    EXPECT_THROW(eval(p, {z(1)}), input_error);
    EXPECT_THROW(eval(p, {z(1), gf(3, 1)}), input_error);
}

TEST(Compose, Examples) {
    MultilinearPoly sum = poly(Z, 2, {{{1}, 1}, {{2}, 1}});
    EXPECT_EQ(compose_at(sum, 0), poly(Z, 3, {{{1}, 1}, {{2}, 1}, {{3}, 1}}));

    MultilinearPoly prod = poly(Z, 2, {{{1, 2}, 1}});
    EXPECT_EQ(compose_at(prod, 0), poly(Z, 3, {{{1, 2, 3}, 1}}));
    EXPECT_EQ(compose_at(prod, 1), poly(Z, 3, {{{1, 2, 3}, 1}}));

    MultilinearPoly diff = poly(Z, 2, {{{1}, 1}, {{2}, -1}});
    MultilinearPoly q0 = compose_at(diff, 0);
    MultilinearPoly q1 = compose_at(diff, 1);
    EXPECT_EQ(q0, poly(Z, 3, {{{1}, 1}, {{2}, -1}, {{3}, -1}}));
    EXPECT_EQ(q1, poly(Z, 3, {{{1}, 1}, {{2}, -1}, {{3}, 1}}));
    EXPECT_NE(eval(q0, {z(0), z(0), z(1)}), eval(q1, {z(0), z(0), z(1)}));
}

TEST(Compose, MatchesSubstitutionPointwise) {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint32_t n = 2 + trial % 3;
        MultilinearPoly p(Z, n);
        for (Monomial m = 0; m < (Monomial{1} << n); ++m) p.add_term(m, z(coef(rng)));
        for (std::uint32_t i = 0; i < n; ++i) {
            MultilinearPoly q = compose_at(p, i);
            ASSERT_EQ(q.n(), 2 * n - 1);
            for (int s = 0; s < 5; ++s) {
                std::vector<RingElem> x;
                for (std::uint32_t v = 0; v < 2 * n - 1; ++v) x.push_back(z(coef(rng)));
                std::vector<RingElem> outer(x.begin(), x.begin() + i);
                outer.push_back(eval(p, std::span<const RingElem>(x.data() + i, n)));
                outer.insert(outer.end(), x.begin() + i + n, x.end());
                ASSERT_EQ(eval(q, x), eval(p, outer));
            }
        }
    }
}

TEST(Compose, StaysMultilinear) {
    // Keys are bitmasks over 2n - 1 variables, so a repeated variable cannot be written down;
    // check that no key strays past the last variable either.
    for (std::uint64_t idx = 0; idx < 256; ++idx) {
        MultilinearPoly p = polynomial_from_index(idx, GF(2), 3);
        for (std::uint32_t i = 0; i < 3; ++i) {
            MultilinearPoly q = compose_at(p, i);
            for (const auto& [m, c] : q.coeffs()) {
                ASSERT_EQ(m & ~q.full_monomial(), 0U);
                std::vector<std::uint32_t> vars = vars_of(m);
                ASSERT_EQ(std::set<std::uint32_t>(vars.begin(), vars.end()).size(), vars.size());
            }
        }
    }
}

TEST(Compose, PositionOutOfRange) {
    MultilinearPoly p = poly(Z, 2, {{{1}, 1}});
    EXPECT_THROW(compose_at(p, 2), input_error);
    EXPECT_THROW(compose_at(MultilinearPoly(Z, 1), 0), input_error);
}

TEST(Associativity, SymbolicExamples) {
    EXPECT_TRUE(is_associative_poly(poly(Z, 2, {{{1, 2}, 1}})));
    EXPECT_FALSE(is_associative_poly(poly(Z, 2, {{{1}, 1}, {{2}, -1}})));
    EXPECT_TRUE(is_associative_poly(poly(Z, 2, {{{1, 2}, 2}, {{1}, 1}, {{2}, 1}})));
}

TEST(Associativity, PointwiseExamples) {
    EXPECT_TRUE(pointwise_associative(poly(GF(3), 3, {{{1}, 1}, {{2}, 2}, {{3}, 1}})));
    EXPECT_FALSE(pointwise_associative(poly(GF(2), 2, {{{1, 2}, 1}, {{}, 1}})));
    EXPECT_TRUE(pointwise_associative(poly(GF(2), 2, {{{1}, 1}})));
}

TEST(Associativity, PointwiseErrors) {
    EXPECT_THROW(pointwise_associative(poly(Z, 2, {{{1}, 1}})), input_error);
    EXPECT_THROW(pointwise_associative(poly(GF(5), 6, {{{1}, 1}}), Limits{1U << 16}), infeasible_size);
}

TEST(Associativity, SymbolicEqualsPointwiseExhaustive) {
    struct Case {
        std::uint64_t p;
        std::uint32_t n;
        std::uint64_t total;
    };
    for (Case c : {Case{2, 2, 16}, Case{2, 3, 256}, Case{3, 2, 81}}) {
        std::uint64_t agree = 0;
        for (std::uint64_t idx = 0; idx < c.total; ++idx) {
            MultilinearPoly p = polynomial_from_index(idx, GF(c.p), c.n);
            ASSERT_EQ(is_associative_poly(p), pointwise_associative(p)) << c.p << ' ' << c.n << ' ' << idx;
            ++agree;
        }
        EXPECT_EQ(agree, c.total);
    }
}

TEST(Associativity, CoefficientMapsSeparateFunctions) {
    // Over GF(p) distinct multilinear coefficient maps give distinct functions.
    std::mt19937 rng(5);
    for (std::uint64_t p : {2ULL, 3ULL}) {
        for (std::uint32_t m = 1; m <= 3; ++m) {
            const std::uint64_t total = ipow(p, std::uint64_t{1} << m);
            std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
            for (int trial = 0; trial < 60; ++trial) {
                std::uint64_t a = pick(rng), b = pick(rng);
                if (a == b) continue;
                MultilinearPoly pa = polynomial_from_index(a, GF(p), m);
                MultilinearPoly pb = polynomial_from_index(b, GF(p), m);
                ASSERT_NE(pa, pb);
                EXPECT_NE(function_table(pa), function_table(pb));
            }
            // And the map index -> function is injective over the whole space.
            std::set<std::vector<Value>> tables;
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                tables.insert(function_table(polynomial_from_index(idx, GF(p), m)).table());
            }
            EXPECT_EQ(tables.size(), total);
        }
    }
}

TEST(Forms, Examples) {
    EXPECT_EQ(classify_marmat(poly(Z, 2, {{{}, 5}, {{1}, 1}, {{2}, 1}})), MarMatForm(ShiftedSumForm{z(5)}));
    EXPECT_EQ(classify_marmat(poly(GF(3), 3, {{{1}, 1}, {{2}, 2}, {{3}, 1}})), MarMatForm(OmegaSumForm{gf(3, 2)}));

    MarMatForm prod = classify_marmat(poly(Z, 2, {{{1, 2}, 2}, {{1}, 1}, {{2}, 1}}));
    ASSERT_EQ(kind_of(prod), FormKind::Product);
    EXPECT_EQ(std::get<ProductForm>(prod).a, z(2));
    EXPECT_EQ(std::get<ProductForm>(prod).b.to_string(), "1/2");

    EXPECT_EQ(kind_of(classify_marmat(poly(GF(2), 2, {{{1, 2}, 1}, {{}, 1}}))), FormKind::None);
}

TEST(Forms, SimpleShapes) {
    EXPECT_EQ(classify_marmat(MultilinearPoly(Z, 3)), MarMatForm(ConstantForm{z(0)}));
    EXPECT_EQ(classify_marmat(poly(Z, 3, {{{}, -7}})), MarMatForm(ConstantForm{z(-7)}));
    EXPECT_EQ(classify_marmat(poly(Z, 3, {{{1}, 1}})), MarMatForm(FirstProjForm{}));
    EXPECT_EQ(classify_marmat(poly(Z, 3, {{{3}, 1}})), MarMatForm(LastProjForm{}));
    EXPECT_EQ(kind_of(classify_marmat(poly(Z, 3, {{{2}, 1}}))), FormKind::None);
    EXPECT_EQ(kind_of(classify_marmat(poly(Z, 3, {{{1}, 2}}))), FormKind::None);
}

TEST(Forms, OmegaSkippedForBinary) {
    // x1 + 2 x2 over GF(3) at n = 2 would need omega^1 = 1.
    MultilinearPoly p = poly(GF(3), 2, {{{1}, 1}, {{2}, 2}});
    EXPECT_EQ(kind_of(classify_marmat(p)), FormKind::None);
    EXPECT_FALSE(is_associative_poly(p));
}

TEST(Forms, ProductOverIntegersNeedsBaseRingMembership) {
    // a = 2, b = 1/2 at n = 3: a b^2 = 1/2 is not an integer, so no integer polynomial has that shape.
    EXPECT_THROW(from_form(ProductForm{z(2), FractionElem(Rational(1, 2))}, Z, 3), input_error);
    // a = 4, b = 1/2 at n = 3: a b = 2, a b^2 = 1, a b^3 - b = 0.
    MultilinearPoly p = from_form(ProductForm{z(4), FractionElem(Rational(1, 2))}, Z, 3);
    EXPECT_EQ(p.coef(0b111), z(4));
    EXPECT_EQ(p.coef(0b011), z(2));
    EXPECT_EQ(p.coef(0b001), z(1));
    EXPECT_EQ(p.coef(0), z(0));
    EXPECT_TRUE(is_associative_poly(p));
    EXPECT_EQ(classify_marmat(p), MarMatForm(ProductForm{z(4), FractionElem(Rational(1, 2))}));
}

TEST(Forms, FromFormExamples) {
    MultilinearPoly orp = from_form(ProductForm{gf(2, 1), FractionElem(gf(2, 1))}, GF(2), 3);
    EXPECT_EQ(orp, to_anf(canonical_op(BoolForm::Or, 3)));
    EXPECT_EQ(orp.coef(0), gf(2, 0));
    EXPECT_EQ(orp.term_count(), 7U);

    EXPECT_TRUE(from_form(ConstantForm{z(0)}, Z, 2).is_zero());
    EXPECT_THROW(from_form(OmegaSumForm{gf(3, 1)}, GF(3), 3), input_error);
}

TEST(Forms, FromFormErrors) {
    EXPECT_THROW(from_form(OmegaSumForm{gf(5, 2)}, GF(5), 3), input_error);  // 2^2 = 4
    EXPECT_THROW(from_form(OmegaSumForm{gf(3, 2)}, GF(3), 2), input_error);
    EXPECT_THROW(from_form(ProductForm{gf(3, 0), FractionElem(gf(3, 1))}, GF(3), 2), input_error);
    EXPECT_THROW(from_form(ConstantForm{gf(3, 1)}, Z, 2), input_error);
    EXPECT_THROW(from_form(NoForm{}, Z, 2), input_error);
}

TEST(Forms, RoundTripThroughExpansion) {
    std::vector<std::pair<MarMatForm, RingSpec>> forms = {
        {ConstantForm{z(3)}, Z},
        {FirstProjForm{}, Z},
        {LastProjForm{}, GF(5)},
        {ShiftedSumForm{z(-2)}, Z},
        {ShiftedSumForm{gf(7, 4)}, GF(7)},
        {OmegaSumForm{gf(5, 4)}, GF(5)},
        {ProductForm{z(1), FractionElem(Rational(0))}, Z},
        {ProductForm{z(-3), FractionElem(Rational(1))}, Z},
        {ProductForm{gf(5, 2), FractionElem(gf(5, 3))}, GF(5)},
    };
    for (const auto& [form, ring] : forms) {
        for (std::uint32_t n = 2; n <= 5; ++n) {
            if (kind_of(form) == FormKind::OmegaSum && n % 2 == 0) continue;  // 4^(n-1) = 1 needs n odd
            MultilinearPoly p = from_form(form, ring, n);
            EXPECT_EQ(classify_marmat(p), form) << to_string(kind_of(form)) << ' ' << n;
            EXPECT_TRUE(is_associative_poly(p));
        }
    }
}

TEST(Forms, OmegaSumCube) {
    // omega = 2 in GF(7) has order 3, so it qualifies for n = 4 and 7.
    MultilinearPoly p = from_form(OmegaSumForm{gf(7, 2)}, GF(7), 4);
    EXPECT_EQ(p.coef(0b0001), gf(7, 1));
    EXPECT_EQ(p.coef(0b0010), gf(7, 2));
    EXPECT_EQ(p.coef(0b0100), gf(7, 4));
    EXPECT_EQ(p.coef(0b1000), gf(7, 1));
    EXPECT_TRUE(is_associative_poly(p));
    EXPECT_TRUE(pointwise_associative(p));
}

TEST(Forms, TheoremBiImplication) {
    struct Case {
        std::uint64_t p;
        std::uint32_t n;
    };
    for (Case c : {Case{2, 2}, Case{2, 3}, Case{3, 2}, Case{3, 3}, Case{5, 2}}) {
        const std::uint64_t total = ipow(c.p, std::uint64_t{1} << c.n);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            MultilinearPoly p = polynomial_from_index(idx, GF(c.p), c.n);
            ASSERT_EQ(kind_of(classify_marmat(p)) != FormKind::None, is_associative_poly(p))
                << c.p << ' ' << c.n << ' ' << idx;
        }
    }
}

TEST(Forms, MutualExclusivity) {
    struct Case {
        std::uint64_t p;
        std::uint32_t n;
    };
    for (Case c : {Case{2, 2}, Case{2, 3}, Case{2, 4}, Case{3, 2}, Case{3, 3}}) {
        const std::uint64_t total = ipow(c.p, std::uint64_t{1} << c.n);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            ASSERT_LE(matching_forms(polynomial_from_index(idx, GF(c.p), c.n)).size(), 1U)
                << c.p << ' ' << c.n << ' ' << idx;
        }
    }
}

TEST(Forms, IntegerSamplesAgreeWithSymbolicCheck) {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> coef(-2, 2);
    int associative = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        MultilinearPoly p(Z, 2);
        for (Monomial m = 0; m < 4; ++m) p.add_term(m, z(coef(rng)));
        bool assoc = is_associative_poly(p);
        associative += assoc;
        ASSERT_EQ(kind_of(classify_marmat(p)) != FormKind::None, assoc);
    }
    EXPECT_GT(associative, 0);
}

TEST(Forms, RequiresTwoVariables) { EXPECT_THROW(classify_marmat(MultilinearPoly(Z, 1)), input_error); }

TEST(Anf, Examples) {
    EXPECT_EQ(to_anf(canonical_op(BoolForm::And, 2)), poly(GF(2), 2, {{{1, 2}, 1}}));
    EXPECT_EQ(to_anf(canonical_op(BoolForm::Or, 2)), poly(GF(2), 2, {{{1}, 1}, {{2}, 1}, {{1, 2}, 1}}));
    EXPECT_EQ(to_anf(canonical_op(BoolForm::SumBar, 3)), poly(GF(2), 3, {{{}, 1}, {{1}, 1}, {{2}, 1}, {{3}, 1}}));
}

TEST(Anf, RoundTrip) {
    for (std::uint32_t n = 1; n <= 3; ++n) {
        const std::uint64_t cells = std::uint64_t{1} << n;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
            std::vector<Value> t(cells);
            for (std::uint64_t i = 0; i < cells; ++i) t[i] = (bits >> i) & 1U;
            FiniteOp f(2, n, t);
            MultilinearPoly p = to_anf(f);
            ASSERT_EQ(from_anf(p), f);
            ASSERT_EQ(function_table(p), f);
        }
    }
}

TEST(Anf, Errors) {
    EXPECT_THROW(to_anf(FiniteOp(3, 1, {0, 1, 2})), input_error);
    EXPECT_THROW(from_anf(poly(GF(3), 2, {{{1}, 1}})), input_error);
}

TEST(Anf, BooleanCorrespondence) {
    const RingElem zero = gf(2, 0), one = gf(2, 1);
    const std::map<BoolForm, MarMatForm> expected = {
        {BoolForm::Const0, ConstantForm{zero}},
        {BoolForm::Const1, ConstantForm{one}},
        {BoolForm::Proj1, FirstProjForm{}},
        {BoolForm::ProjN, LastProjForm{}},
        {BoolForm::Sum, ShiftedSumForm{zero}},
        {BoolForm::SumBar, ShiftedSumForm{one}},
        {BoolForm::And, ProductForm{one, FractionElem(zero)}},
        {BoolForm::Or, ProductForm{one, FractionElem(one)}},
    };
    for (std::uint32_t n = 2; n <= 4; ++n) {
        for (const auto& [form, mm] : expected) {
            FiniteOp f = canonical_op(form, n);
            EXPECT_EQ(classify_marmat(to_anf(f)), mm) << to_string(form) << ' ' << n;
            EXPECT_EQ(classify_boolean(from_anf(from_form(mm, GF(2), n))), (BoolFormDescriptor{form, n}));
        }
    }
}
