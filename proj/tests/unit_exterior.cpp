#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodge/exterior.hpp"

#include <random>

using namespace hodge;

namespace {

ExtVector rnd_ext(std::mt19937& rng, const FieldPtr& F, int n, int deg)
{
    ExtVector x(F, n, deg);
    for (int i = 0; i < x.size(); ++i) x[i] = F->element_by_index(static_cast<long>(rng() % F->order()));
    return x;
}

} // namespace

TEST_CASE("wedge tuple order is tuple-lexicographic")
{
    auto tl = wedge_tuples(4, 2);
    REQUIRE(tl.size() == 6);
    CHECK(tl[0] == 0b0011u); // {1,2}
    CHECK(tl[1] == 0b0101u); // {1,3}
    CHECK(tl[2] == 0b1001u); // {1,4}
    CHECK(tl[3] == 0b0110u); // {2,3}
    CHECK(tl[4] == 0b1010u); // {2,4}
    CHECK(tl[5] == 0b1100u); // {3,4}
}

TEST_CASE("wedge basics")
{
    auto Q = Field::rationals();
    auto e = [&](int i) {
        ExtVector x(Q, 4, 1);
        x[i - 1] = Q->one();
        return x;
    };
    CHECK(wedge(e(1), e(2)) == ExtVector::basis_element(Q, 4, 2, 0b0011u));
    CHECK(wedge(e(1), e(1)).is_zero());
    // (e1^e4)^(e2^e3) = +e1^e2^e3^e4: permutation (1,4,2,3) has 2 inversions
    ExtVector a = wedge(e(1), e(4)), b = wedge(e(2), e(3));
    ExtVector top = wedge(a, b);
    CHECK(top[0].is_one());
    // (e1^e3)^(e2^e4) has sign -1
    CHECK(wedge(wedge(e(1), e(3)), wedge(e(2), e(4)))[0] == -Q->one());

    ExtVector v = e(1) + e(2).scaled(Q->from_int(3));
    CHECK(wedge(v, v).is_zero());
    CHECK_THROWS(wedge(top, e(1)));
}

TEST_CASE("functoriality of exterior powers including mixed companions")
{
    std::mt19937 rng(5);
    auto F5 = Field::finite(5);
    auto F9 = Field::finite(9, Involution::Galois);
    for (const auto& F : {F5, F9}) {
        for (int it = 0; it < 10; ++it) {
            Mat A(F, 4, 4), B(F, 4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    A.at(i, j) = F->element_by_index(static_cast<long>(rng() % F->order()));
                    B.at(i, j) = F->element_by_index(static_cast<long>(rng() % F->order()));
                }
            bool ca = F->galois() && it % 2 == 0;
            bool cb = F->galois() && it % 3 == 0;
            SemiMap ma{A, ca}, mb{B, cb};
            SemiMap comp = ma.compose(mb);
            for (int deg : {1, 2, 3}) {
                SemiMap lhs = ext_power_map(comp, deg);
                SemiMap rhs = ext_power_map(ma, deg).compose(ext_power_map(mb, deg));
                CHECK(lhs.conj_companion == rhs.conj_companion);
                CHECK(lhs.A == rhs.A);
            }
        }
    }
    // identity maps to identity
    auto F3 = Field::finite(3);
    CHECK(ext_power_matrix(Mat::identity(F3, 4), 2).is_identity());
}

TEST_CASE("top exterior power is phi(s) det(lambda')")
{
    auto F9 = Field::finite(9, Involution::Galois);
    std::mt19937 rng(3);
    for (int it = 0; it < 20; ++it) {
        Mat A(F9, 3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) A.at(i, j) = F9->element_by_index(static_cast<long>(rng() % 9));
        if (A.det().is_zero()) continue;
        SemiMap m{A, true};
        Scalar s = F9->element_by_index(static_cast<long>(rng() % 9));
        ExtVector top = ExtVector::basis_element(F9, 3, 3, 0b111u).scaled(s);
        ExtVector img = apply_ext(ext_power_map(m, 3), top);
        CHECK(img[0] == s.conj() * A.det());
    }
}

TEST_CASE("ext_h values")
{
    auto Q = Field::rationals();
    auto sp = diagonal_space(Q, {1, 2, 10, -5});
    auto e13 = ExtVector::basis_element(Q, 4, 2, 0b0101u);
    CHECK(ext_h(sp, 2, e13, e13) == Q->from_int(10));
    auto e12 = ExtVector::basis_element(Q, 4, 2, 0b0011u);
    CHECK(ext_h(sp, 2, e12, e13).is_zero());
    CHECK(ext_h(sp, 2, e12, e12) == Q->from_int(2));

    // Lambda^l h of an orthogonal-basis tuple is the product of the h-values
    auto F5 = Field::finite(5);
    auto sp5 = diagonal_space(F5, {1, 2, 3, 4});
    auto e123 = ExtVector::basis_element(F5, 4, 3, 0b0111u);
    CHECK(ext_h(sp5, 3, e123, e123) == F5->from_int(1 * 2 * 3 % 5));
    // non-degenerate whenever h is
    for (int deg : {1, 2, 3}) CHECK_FALSE(ext_h_gram(sp5, deg).det().is_zero());
}

TEST_CASE("pfaffian pairing")
{
    auto Q = Field::rationals();
    TopForm b{Q->one()};
    auto e12 = ExtVector::basis_element(Q, 4, 2, 0b0011u);
    auto e34 = ExtVector::basis_element(Q, 4, 2, 0b1100u);
    auto e14 = ExtVector::basis_element(Q, 4, 2, 0b1001u);
    auto e23 = ExtVector::basis_element(Q, 4, 2, 0b0110u);
    CHECK(pfaffian(b, e12, e34).is_one());
    CHECK(pfaffian(b, e14, e23).is_one());
    CHECK(pfaffian(b, e12, e12).is_zero()); // decomposable, n = 2l

    // graded symmetry on all basis pairs, several (n, l)
    for (int n : {2, 3, 4}) {
        for (int deg = 0; deg <= n; ++deg) {
            auto rows = wedge_tuples(n, n - deg);
            auto cols = wedge_tuples(n, deg);
            int sign = ((n - deg) * deg) % 2 == 0 ? 1 : -1;
            for (unsigned rm : rows)
                for (unsigned cm : cols) {
                    auto X = ExtVector::basis_element(Q, n, n - deg, rm);
                    auto Y = ExtVector::basis_element(Q, n, deg, cm);
                    Scalar lhs = pfaffian(b, X, Y);
                    Scalar rhs = pfaffian(b, Y, X);
                    CHECK(lhs == (sign > 0 ? rhs : -rhs));
                }
        }
    }
    CHECK_THROWS(pfaffian(b, e12, ExtVector(Q, 4, 1)));
}

TEST_CASE("pfaffian gram agrees with the pairing")
{
    auto F3 = Field::finite(3);
    TopForm b{F3->from_int(2)};
    for (int deg : {1, 2, 3}) {
        Mat G = pfaffian_gram(F3, b, 4, deg);
        auto rows = wedge_tuples(4, 4 - deg);
        auto cols = wedge_tuples(4, deg);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < cols.size(); ++c) {
                auto X = ExtVector::basis_element(F3, 4, 4 - deg, rows[r]);
                auto Y = ExtVector::basis_element(F3, 4, deg, cols[c]);
                CHECK(G.at(static_cast<int>(r), static_cast<int>(c)) == pfaffian(b, X, Y));
            }
        CHECK_FALSE(G.det().is_zero());
    }
}

TEST_CASE("klein quadratic form")
{
    auto Q = Field::rationals();
    TopForm b{Q->one()};
    auto e12 = ExtVector::basis_element(Q, 4, 2, 0b0011u);
    auto e34 = ExtVector::basis_element(Q, 4, 2, 0b1100u);
    CHECK(klein_quadratic(b, e12).is_zero());
    CHECK(klein_quadratic(b, e12 + e34).is_one());

    // polarization identity Pq(X+Y) - Pq(X) - Pq(Y) = Pf(X,Y) on basis pairs
    std::mt19937 rng(17);
    auto F3 = Field::finite(3);
    TopForm b3{F3->from_int(2)};
    auto tl = wedge_tuples(4, 2);
    for (unsigned xm : tl)
        for (unsigned ym : tl) {
            auto X = ExtVector::basis_element(F3, 4, 2, xm);
            auto Y = ExtVector::basis_element(F3, 4, 2, ym);
            CHECK(klein_quadratic(b3, X + Y) - klein_quadratic(b3, X) - klein_quadratic(b3, Y) ==
                  pfaffian(b3, X, Y));
        }

    // Pq vanishes on all decomposables u ^ v, exhaustive over F_3^4
    auto pts = projective_points(F3, 4);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            ExtVector X = ExtVector::wedge_of(F3, {pts[i], pts[j]});
            CHECK(klein_quadratic(b3, X).is_zero());
        }

    // Pq(X)^2 = s det(A_X) for the alternating coefficient matrix, fixed s
    auto F5 = Field::finite(5);
    TopForm b5{F5->from_int(3)};
    Scalar s_fixed;
    for (int it = 0; it < 40; ++it) {
        ExtVector X = rnd_ext(rng, F5, 4, 2);
        Mat A(F5, 4, 4);
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j) {
                Scalar c = X.coeff((1u << (i - 1)) | (1u << (j - 1)));
                A.at(i - 1, j - 1) = c;
                A.at(j - 1, i - 1) = -c;
            }
        Scalar pq = klein_quadratic(b5, X);
        Scalar det = A.det();
        if (det.is_zero()) {
            CHECK(pq.is_zero());
            continue;
        }
        Scalar s = pq * pq / det;
        if (!s_fixed.valid()) s_fixed = s;
        CHECK(s == s_fixed);
    }
}
