#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodge/scalar.hpp"

using namespace hodge;

TEST_CASE("field construction and moduli")
{
    auto F4 = Field::finite(4, Involution::Galois);
    CHECK(F4->characteristic() == 2);
    CHECK(F4->modulus_b() == 1); // t^2 + t + 1
    CHECK(F4->modulus_c() == 1);
    CHECK(F4->fixed_field()->order() == 2);

    auto F9 = Field::finite(9, Involution::Galois);
    CHECK(F9->modulus_b() == 0); // t^2 + 1
    CHECK(F9->modulus_c() == 1);

    auto Q = Field::rationals();
    CHECK(Q->involution() == Involution::Identity);

    CHECK_THROWS(Field::finite(12));
    CHECK_THROWS(Field::finite(8));
    CHECK_THROWS(Field::finite(5, Involution::Galois));
    CHECK_THROWS(Field::rational_quadratic(Rational(4)));
}

TEST_CASE("finite arithmetic and Frobenius")
{
    auto F9 = Field::finite(9, Involution::Galois);
    Scalar t = F9->generator();
    CHECK(t * t == -F9->one()); // t^2 = -1
    CHECK(t.conj() == t.pow(3));
    CHECK(t.norm_to_fixed() == F9->fixed_field()->one()); // t * t^3 = t^4 = 1

    // sigma is an involutory automorphism on all elements
    for (const auto& x : F9->elements())
        for (const auto& y : F9->elements()) {
            CHECK(x.conj().conj() == x);
            CHECK((x + y).conj() == x.conj() + y.conj());
            CHECK((x * y).conj() == x.conj() * y.conj());
            if (!y.is_zero()) CHECK(x / y * y == x);
        }
}

TEST_CASE("norm form multiplicative and surjective on finite fields")
{
    for (long q : {4L, 9L, 25L}) {
        auto F = Field::finite(q, Involution::Galois);
        auto R = F->fixed_field();
        std::vector<Scalar> norms;
        for (const auto& x : F->elements()) {
            for (const auto& y : F->elements())
                CHECK((x * y).norm_to_fixed() == x.norm_to_fixed() * y.norm_to_fixed());
            if (!x.is_zero()) norms.push_back(x.norm_to_fixed());
        }
        // |N(F^x)| = |R^x|
        std::vector<Scalar> distinct;
        for (const auto& n : norms) {
            bool seen = false;
            for (const auto& d : distinct) seen = seen || d == n;
            if (!seen) distinct.push_back(n);
        }
        CHECK(static_cast<long>(distinct.size()) == R->order() - 1);
    }
}

TEST_CASE("norm of x = sigma(x) x lies in the fixed field")
{
    auto Q = Field::rationals();
    CHECK(Q->from_int(3).norm_to_fixed() == Q->from_int(9));
    auto F9 = Field::finite(9, Involution::Galois);
    for (const auto& x : F9->elements()) CHECK(x.norm_to_fixed().field()->order() == 3);
}

TEST_CASE("is_norm and square_class")
{
    auto Q = Field::rationals();
    CHECK(is_norm(Q->from_int(-1)) == Tri::No);
    CHECK(is_norm(Q->from_int(-100)) == Tri::No);
    CHECK(is_norm(Q->from_int(36)) == Tri::Yes);
    CHECK(square_class(Q->from_int(36)) == Q->one());
    CHECK(square_class(Q->from_int(-100)) == Q->from_int(-1));
    CHECK(square_class(Q->from_int(8)) == Q->from_int(2));
    CHECK_THROWS(square_class(Q->zero()));

    auto F9 = Field::finite(9, Involution::Galois);
    auto R = F9->fixed_field();
    for (const auto& c : R->elements())
        if (!c.is_zero()) CHECK(is_norm(F9->embed(c)) == Tri::Yes);

    auto F3 = Field::finite(3);
    CHECK(square_class(F3->from_int(2)) != F3->one());
    CHECK(square_class(F3->from_int(1)) == F3->one());

    // square_class constant on square multiples
    for (long q : {3L, 5L, 9L}) {
        auto F = Field::finite(q, q == 9 ? Involution::Galois : Involution::Identity);
        for (const auto& c : F->elements())
            for (const auto& s : F->elements()) {
                if (c.is_zero() || s.is_zero()) continue;
                CHECK(square_class(c * s * s) == square_class(c));
            }
    }
}

TEST_CASE("rational quadratic fields")
{
    auto K = Field::rational_quadratic(Rational(-1)); // Q(i)
    Scalar i = K->generator();
    CHECK(i * i == -K->one());
    CHECK(i.conj() == -i);
    CHECK((K->one() + i).norm_to_fixed() == Field::rationals()->from_int(2));

    // x^2 + y^2 = 2 solvable, = 3 not, = -1 not
    CHECK(is_norm(K->from_int(2)) == Tri::Yes);
    CHECK(is_norm(K->from_int(3)) == Tri::No);
    CHECK(is_norm(K->from_int(-1)) == Tri::No);
    CHECK(is_norm(K->from_int(5)) == Tri::Yes);

    auto K5 = Field::rational_quadratic(Rational(5));
    CHECK(is_norm(K5->from_int(-1)) == Tri::Yes); // 2^2 - 5 = -1
    CHECK(is_square(K5->element(Rational(9, 4), Rational(0))));
    // (1 + r)^2 = 6 + 2r
    CHECK(is_square(K5->element(Rational(6), Rational(2))));
    CHECK_FALSE(is_square(K5->element(Rational(7), Rational(2))));
}

TEST_CASE("hilbert symbol basics")
{
    // (-1,-1)_2 = -1 = (-1,-1)_oo, trivial elsewhere
    CHECK(hilbert_symbol(-1, -1, 2) == -1);
    CHECK(hilbert_symbol(-1, -1, 0) == -1);
    CHECK(hilbert_symbol(-1, -1, 3) == 1);
    CHECK(hilbert_symbol(2, 3, 3) == -1); // x^2 - 3y^2 = 2 has no Q_3 point
    CHECK(hilbert_symbol(-1, 2, 0) == 1);
}

TEST_CASE("parsing and printing round trips")
{
    auto F9 = Field::finite(9, Involution::Galois);
    CHECK(F9->parse("t+1") == F9->element(1, 1));
    CHECK(F9->parse("2t") == F9->element(0, 2));
    CHECK(F9->parse("-1") == -F9->one());
    auto Q = Field::rationals();
    CHECK(Q->parse("3/4") == Q->from_rational(Rational(3, 4)));
    CHECK(Q->parse("-5") == Q->from_int(-5));
    CHECK(Q->parse(Q->from_rational(Rational(-7, 3)).str()) == Q->from_rational(Rational(-7, 3)));
    CHECK_THROWS(Q->parse("x"));
}

TEST_CASE("canonical element order")
{
    auto F4 = Field::finite(4, Involution::Galois);
    auto els = F4->elements();
    REQUIRE(els.size() == 4);
    CHECK(els[0].is_zero());
    CHECK(els[1].is_one());
    CHECK(els[2] == F4->generator());
    CHECK(els[3] == F4->generator() + F4->one());
    for (long i = 0; i < 4; ++i) CHECK(els[static_cast<std::size_t>(i)].canonical_index() == i);
}

TEST_CASE("norm preimages")
{
    auto F9 = Field::finite(9, Involution::Galois);
    auto R = F9->fixed_field();
    for (const auto& c : R->elements()) {
        if (c.is_zero()) continue;
        auto s = norm_preimage(F9->embed(c));
        REQUIRE(s.has_value());
        CHECK(s->conj() * *s == F9->embed(c));
    }
    auto Q = Field::rationals();
    auto r = norm_preimage(Q->from_int(49));
    REQUIRE(r.has_value());
    CHECK(*r * *r == Q->from_int(49));
}
