#include <doctest.h>

#include <cmath>
#include <random>

#include "cubeshape/cubic_form.hpp"
#include "cubeshape/number_field.hpp"

using namespace cubeshape;

namespace {

const BinaryCubicForm kCbrt2{1, 0, 0, -2};  // x^3 - 2

FieldElement rational_el(const ContextPtr& ctx, long num, long den = 1) {
    return ctx->from_rational(make_rat(Int(num), Int(den)));
}

FieldElement random_el(const ContextPtr& ctx, std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 9);
    std::array<Rat, 3> c;
    for (auto& q : c) q = make_rat(Int(num(rng)), Int(den(rng)));
    return ctx->element(c);
}

}  // namespace

TEST_CASE("field arithmetic in Q(cbrt 2)") {
    auto ctx = NumberFieldContext::create(kCbrt2);
    FieldElement theta = ctx->theta();
    FieldElement theta2 = theta * theta;
    // defining relation theta^3 = 2
    CHECK((theta * theta2 - rational_el(ctx, 2)).is_zero());
    // additive identity
    FieldElement x = ctx->element({make_rat(Int(1), Int(3)), Rat(2), Rat(-1)});
    CHECK((x + ctx->zero() - x).is_zero());
    // (theta - 1)(theta^2 + theta + 1) = 1
    FieldElement lhs = (theta - ctx->one()) * (theta2 + theta + ctx->one());
    CHECK((lhs - ctx->one()).is_zero());
}

TEST_CASE("field inverses") {
    auto ctx = NumberFieldContext::create(kCbrt2);
    FieldElement theta = ctx->theta();
    // theta^-1 = theta^2 / 2
    FieldElement ti = theta.inverse();
    CHECK((ti - make_rat(Int(1), Int(2)) * (theta * theta)).is_zero());
    CHECK((ti * theta - ctx->one()).is_zero());
    CHECK((ctx->one().inverse() - ctx->one()).is_zero());
    // (1 + theta)^-1 = (theta^2 - theta + 1)/3, cross-checked by multiplication
    FieldElement inv = (ctx->one() + theta).inverse();
    FieldElement expected =
        make_rat(Int(1), Int(3)) * (theta * theta - theta + ctx->one());
    CHECK((inv - expected).is_zero());
    CHECK(((ctx->one() + theta) * inv - ctx->one()).is_zero());
    CHECK_THROWS_AS(ctx->zero().inverse(), std::domain_error);
}

TEST_CASE("signs and floats") {
    auto ctx = NumberFieldContext::create(kCbrt2);
    FieldElement theta = ctx->theta();
    CHECK((theta - ctx->one()).sign() == 1);       // 2^{1/3} > 1
    CHECK(ctx->zero().sign() == 0);
    CHECK((theta * theta - theta - ctx->one()).sign() == -1);  // 2^{2/3} < 2^{1/3} + 1
    double cbrt2 = std::cbrt(2.0);
    CHECK(theta.to_double(1e-12) == doctest::Approx(cbrt2).epsilon(1e-12));
    CHECK(ctx->zero().to_double(1e-12) == 0.0);
    CHECK(theta.inverse().to_double(1e-12) == doctest::Approx(1.0 / cbrt2).epsilon(1e-12));
}

TEST_CASE("context mismatch is rejected") {
    auto ctx1 = NumberFieldContext::create(kCbrt2);
    auto ctx2 = NumberFieldContext::create(BinaryCubicForm{1, 1, 2, 3});
    CHECK_THROWS_AS(ctx1->one() + ctx2->one(), std::invalid_argument);
}

TEST_CASE("basis conversion") {
    auto ctx = NumberFieldContext::create(kCbrt2);
    // (0,1,0) in the theta basis is the constant 1
    auto one = basis_convert({Rat(0), Rat(1), Rat(0)}, BasisDirection::from_theta_basis, *ctx);
    CHECK((ctx->element(one) - ctx->one()).is_zero());
    // (1,0,0) is theta^-1 = theta^2/2 = alpha^2/2 for x^3 - 2
    auto tinv = basis_convert({Rat(1), Rat(0), Rat(0)}, BasisDirection::from_theta_basis, *ctx);
    CHECK(tinv[0] == 0);
    CHECK(tinv[1] == 0);
    CHECK(tinv[2] == make_rat(Int(1), Int(2)));
    // round trip
    std::array<Rat, 3> v{Rat(3), Rat(-5), Rat(7)};
    auto power = basis_convert(v, BasisDirection::from_theta_basis, *ctx);
    auto back = basis_convert(power, BasisDirection::to_theta_basis, *ctx);
    CHECK(back == v);
    // theta^-1 accessor agrees
    CHECK((ctx->theta_inv() * ctx->theta() - ctx->one()).is_zero());
}

TEST_CASE("field axioms on random elements") {
    std::mt19937 rng(2024);
    for (const BinaryCubicForm& f :
         {kCbrt2, BinaryCubicForm{1, 1, 2, 3}, BinaryCubicForm{11, 4, -1, -4},
          BinaryCubicForm{1, 1, 12, -22}}) {
        auto ctx = NumberFieldContext::create(f);
        for (int i = 0; i < 250; ++i) {
            FieldElement x = random_el(ctx, rng), y = random_el(ctx, rng),
                         z = random_el(ctx, rng);
            CHECK(((x * y) * z - x * (y * z)).is_zero());
            CHECK((x * (y + z) - (x * y + x * z)).is_zero());
            CHECK((x * y - y * x).is_zero());
            if (!x.is_zero()) CHECK((x * x.inverse() - ctx->one()).is_zero());
            // sign multiplicativity
            if (!x.is_zero() && !y.is_zero()) CHECK((x * y).sign() == x.sign() * y.sign());
        }
    }
}

TEST_CASE("refinement intervals are nested") {
    auto ctx = NumberFieldContext::create(kCbrt2);
    auto [lo1, hi1] = ctx->interval();
    ctx->refine();
    ctx->refine();
    auto [lo2, hi2] = ctx->interval();
    CHECK(lo2 >= lo1);
    CHECK(hi2 <= hi1);
    CHECK(hi2 - lo2 < hi1 - lo1);
}

TEST_CASE("discriminant") {
    CHECK(disc(kCbrt2) == -108);
    CHECK(disc(BinaryCubicForm{1, 0, 0, 0}) == 0);
    CHECK(disc(BinaryCubicForm{1, 1, 2, 3}) == -175);
    CHECK(disc(BinaryCubicForm{11, 4, -1, -4}) == -48020);
    CHECK(disc(BinaryCubicForm{1, 1, 12, -22}) == -24500);
}

TEST_CASE("hessian and trace-zero gram") {
    CHECK(hessian(kCbrt2) == BQF{0, 18, 0});
    CHECK(hessian(BinaryCubicForm{1, 1, 12, -22}) == BQF{-35, 210, 210});
    CHECK(hessian(BinaryCubicForm{11, 4, -1, -4}) == BQF{49, 392, 49});
    SymMat2 t = trace_zero_gram(kCbrt2);
    CHECK(t.m11 == 0);
    CHECK(t.m12 == 54);
    CHECK(t.m22 == 0);
    SymMat2 t2 = trace_zero_gram(BinaryCubicForm{1, 1, 12, -22});
    CHECK(t2.m11 == -210);
    CHECK(t2.m12 == 630);
    CHECK(t2.m22 == 1260);

    auto [p1, c1] = primitive_tzf(kCbrt2);
    CHECK(p1 == BQF{0, 1, 0});
    CHECK(c1 == 18);
    auto [p2, c2] = primitive_tzf(BinaryCubicForm{1, 1, 12, -22});
    CHECK(p2 == BQF{-1, 6, 6});
    CHECK(c2 == 35);
    auto [p3, c3] = primitive_tzf(BinaryCubicForm{11, 4, -1, -4});
    CHECK(p3 == BQF{1, 8, 1});
    CHECK(c3 == 49);
    CHECK_THROWS_AS(primitive_tzf(BinaryCubicForm{0, 0, 0, 1}), std::domain_error);
}

TEST_CASE("twisted action") {
    BinaryCubicForm f{3, 1, -1, 5};
    CHECK(act(Mat2::identity(), f) == f);
    CHECK(act(Mat2{0, 1, 1, 0}, f) == BinaryCubicForm{-5, 1, -1, -3});
    CHECK(act(Mat2{1, 0, 1, 1}, kCbrt2) == BinaryCubicForm{1, 3, 3, -1});
    CHECK(disc(act(Mat2{1, 0, 1, 1}, kCbrt2)) == -108);
    CHECK_THROWS_AS(act(Mat2{2, 0, 0, 1}, f), std::domain_error);
}

TEST_CASE("twisted action properties, randomized") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> coef(-9, 9);
    auto random_unimodular = [&](std::mt19937& r) {
        std::uniform_int_distribution<int> d(-3, 3);
        Mat2 g = Mat2::identity();
        for (int i = 0; i < 3; ++i) {
            g = g * Mat2{1, Int(d(r)), 0, 1};
            g = g * Mat2{1, 0, Int(d(r)), 1};
        }
        if (d(r) > 0) g = g * Mat2{0, 1, 1, 0};  // mix in a reflection
        return g;
    };
    int done = 0;
    while (done < 500) {
        BinaryCubicForm f{coef(rng), coef(rng), coef(rng), coef(rng)};
        if (sgn(disc(f)) == 0) continue;
        Mat2 g = random_unimodular(rng);
        BinaryCubicForm moved = act(g, f);
        CHECK(disc(moved) == disc(f));
        // hessian is equivariant for the plain substitution action
        CHECK(hessian(moved) == act(g, hessian(f)));
        ++done;
    }
    // delta(hessian) = -3 delta(F)
    for (int i = 0; i < 200; ++i) {
        BinaryCubicForm f{coef(rng), coef(rng), coef(rng), coef(rng)};
        CHECK(hessian(f).disc() == -3 * disc(f));
    }
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(kCbrt2));
    CHECK(!is_irreducible(BinaryCubicForm{3, 1, -1, -3}));  // F(1,1) = 0
    CHECK(!is_irreducible(BinaryCubicForm{0, 1, 0, -2}));   // a = 0
    CHECK(is_irreducible(BinaryCubicForm{1, 1, 2, 3}));
    CHECK(!is_irreducible(BinaryCubicForm{2, 3, 3, 1}));  // root -1/2... F(-1,2) = 0
}

TEST_CASE("maximality") {
    CHECK(is_maximal_at(kCbrt2, Int(2)));
    CHECK(!is_maximal_at(BinaryCubicForm{2, 4, 6, 8}, Int(2)));
    CHECK(!is_maximal_at(BinaryCubicForm{1, 0, 0, -16}, Int(2)));
    CHECK_THROWS_AS(is_maximal_at(kCbrt2, Int(4)), std::domain_error);
    CHECK(is_maximal(kCbrt2));
    CHECK(!is_maximal(BinaryCubicForm{1, 0, 0, -16}));
    CHECK(is_maximal(BinaryCubicForm{1, 1, 2, 3}));
    // maximality at p is invariant under the twisted action
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int i = 0; i < 50; ++i) {
        Mat2 g = Mat2::identity();
        for (int k = 0; k < 3; ++k) g = g * Mat2{1, Int(d(rng)), 0, 1} * Mat2{1, 0, Int(d(rng)), 1};
        for (const Int& p : {Int(2), Int(3), Int(5)}) {
            CHECK(is_maximal_at(act(g, kCbrt2), p) == is_maximal_at(kCbrt2, p));
            CHECK(is_maximal_at(act(g, BinaryCubicForm{1, 0, 0, -16}), p) ==
                  is_maximal_at(BinaryCubicForm{1, 0, 0, -16}, p));
        }
    }
}

TEST_CASE("resolvent discriminant") {
    CHECK(resolvent_disc(kCbrt2) == -3);
    CHECK(resolvent_disc(BinaryCubicForm{11, 4, -1, -4}) == -20);
    CHECK(resolvent_disc(BinaryCubicForm{1, 1, 2, 3}) == -7);
    // totally real cubic (disc 81 > 0) is out of scope here
    CHECK(disc(BinaryCubicForm{1, 0, -3, 1}) == 81);
    CHECK_THROWS_AS(resolvent_disc(BinaryCubicForm{1, 0, -3, 1}), std::domain_error);
    // reducible forms are rejected
    CHECK_THROWS_AS(resolvent_disc(BinaryCubicForm{3, 1, -1, -3}), std::domain_error);
}

TEST_CASE("classification at 3") {
    CHECK(classify_3(kCbrt2) == ThreeClass::wild);  // ord_3(108) = 3
    CHECK(classify_3(BinaryCubicForm{1, 1, 2, 3}) == ThreeClass::unramified_or_split);
    // small-form search for a maximal field of discriminant -87 = -3 * 29 (tame)
    bool found = false;
    for (long a = 1; a <= 3 && !found; ++a)
        for (long b = -4; b <= 4 && !found; ++b)
            for (long c = -4; c <= 4 && !found; ++c)
                for (long d = -4; d <= 4 && !found; ++d) {
                    BinaryCubicForm f{a, b, c, d};
                    if (disc(f) != -87) continue;
                    if (!is_irreducible(f) || !is_maximal(f)) continue;
                    found = true;
                    CHECK(classify_3(f) == ThreeClass::tame);
                }
    CHECK(found);
    // ord_3 = 4 is wild (disc -1620 example has a maximal ring)
    BinaryCubicForm w{-1, 3, 0, 6};
    CHECK(is_maximal(w));
    CHECK(classify_3(w) == ThreeClass::wild);
    // ord_3 = 2 is impossible for maximal rings and reports an error
    BinaryCubicForm bad{1, 2, -1, -2};  // disc 36
    CHECK(disc(bad) == 36);
    CHECK(classify_3_relaxed(bad) == ThreeClass::invalid);
    CHECK_THROWS_AS(classify_3(bad), std::domain_error);
}

TEST_CASE("cubic ring structure constants") {
    for (const BinaryCubicForm& f :
         {kCbrt2, BinaryCubicForm{1, 1, 2, 3}, BinaryCubicForm{11, 4, -1, -4}}) {
        CubicRingStructure ring{f};
        CHECK(ring.trace_alpha() == -f.b);
        CHECK(ring.trace_beta() == f.c);
        // commutativity and associativity on the basis
        std::array<std::array<Int, 3>, 3> basis = {
            std::array<Int, 3>{1, 0, 0}, std::array<Int, 3>{0, 1, 0}, std::array<Int, 3>{0, 0, 1}};
        for (const auto& x : basis)
            for (const auto& y : basis) {
                CHECK(ring.multiply(x, y) == ring.multiply(y, x));
                for (const auto& z : basis) {
                    auto left = ring.multiply(ring.multiply(x, y), z);
                    auto right = ring.multiply(x, ring.multiply(y, z));
                    CHECK(left == right);
                }
            }
        // alpha's minimal polynomial: alpha^3 + b alpha^2 + ac alpha + a^2 d = 0
        std::array<Int, 3> alpha{0, 1, 0};
        auto a2 = ring.multiply(alpha, alpha);
        auto a3 = ring.multiply(a2, alpha);
        std::array<Int, 3> rel;
        for (int i = 0; i < 3; ++i)
            rel[i] = a3[i] + f.b * a2[i] + f.a * f.c * alpha[i] +
                     (i == 0 ? f.a * f.a * f.d : Int(0));
        CHECK(rel == std::array<Int, 3>{0, 0, 0});
    }
}
