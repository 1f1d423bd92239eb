#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodge/hodge_op.hpp"

#include <random>

using namespace hodge;

namespace {

SemiMap semilinear_J(const HodgeOperator& J, const FieldPtr& F)
{
    return SemiMap{J.matrix(), F->galois()};
}

Mat random_invertible(std::mt19937& rng, const FieldPtr& F, int n)
{
    Mat P(F, n, n);
    do {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) P.at(i, j) = F->element_by_index(static_cast<long>(rng() % F->order()));
    } while (P.det().is_zero());
    return P;
}

HermitianSpace random_space(std::mt19937& rng, const FieldPtr& F, int n, bool congruence)
{
    Mat D(F, n, n);
    for (int i = 0; i < n; ++i) {
        Scalar v;
        do {
            v = F->element_by_index(static_cast<long>(rng() % F->order()));
        } while (v.is_zero() || !(v == v.conj()));
        D.at(i, i) = v;
    }
    if (!congruence) return HermitianSpace(F, D);
    Mat P = random_invertible(rng, F, n);
    return HermitianSpace(F, P.conj_transpose() * D * P);
}

} // namespace

TEST_CASE("delta values")
{
    auto Q = Field::rationals();
    TopForm b{Q->one()};
    CHECK(hodge_delta(diagonal_space(Q, {1, 2, 10, -5}), b, 2) == Q->from_int(-100));
    CHECK(hodge_delta(diagonal_space(Q, {1, 1, 1, 1}), b, 2) == Q->one());
    // rescaling b by s divides delta by N(s)
    TopForm b2{Q->from_int(5)};
    CHECK(hodge_delta(diagonal_space(Q, {1, 2, 10, -5}), b2, 2) == Q->from_int(-4));
}

TEST_CASE("reference matrices in dimensions 3 and 2")
{
    auto Q = Field::rationals();
    // standard form on Q^3 with b(e1^e2^e3) = -1
    auto sp3 = diagonal_space(Q, {1, 1, 1});
    HodgeOperator J3 = HodgeOperator::build(sp3, TopForm{-Q->one()}, 1);
    ExtVector e1(Q, 3, 1);
    e1[0] = Q->one();
    ExtVector img = J3.apply(e1);
    CHECK(img == -ExtVector::basis_element(Q, 3, 2, 0b110u)); // -e2^e3
    ExtVector e2(Q, 3, 1);
    e2[1] = Q->one();
    CHECK(J3.apply(e2) == ExtVector::basis_element(Q, 3, 2, 0b101u)); // +e1^e3
    ExtVector e3(Q, 3, 1);
    e3[2] = Q->one();
    CHECK(J3.apply(e3) == -ExtVector::basis_element(Q, 3, 2, 0b011u)); // -e1^e2

    // hyperbolic plane with b0 = 1: J = diag(1, -1) in standard coordinates
    auto hyp = HermitianSpace(Q, Mat::from_rows(Q, {{0, 1}, {1, 0}}));
    HodgeOperator J2 = HodgeOperator::build(hyp, TopForm{Q->one()}, 1);
    CHECK(J2.matrix() == Mat::from_rows(Q, {{1, 0}, {0, -1}}));

    // two-dimensional closed form: J = [[0, c2], [-c1, 0]] for diag(c1, c2), b0 = 1
    auto d2 = diagonal_space(Q, {3, 7});
    HodgeOperator Jd = HodgeOperator::build(d2, TopForm{Q->one()}, 1);
    CHECK(Jd.matrix() == Mat::from_rows(Q, {{0, 7}, {-3, 0}}));
}

TEST_CASE("J squares to delta on generated spaces")
{
    std::mt19937 rng(23);
    std::vector<FieldPtr> fields{Field::finite(3), Field::finite(5),
                                 Field::finite(4, Involution::Galois), Field::finite(9, Involution::Galois)};
    int spaces = 0;
    for (const auto& F : fields)
        for (int n : {2, 4})
            for (int deg : {1, 2}) {
                if (deg > n) continue;
                for (bool congruence : {false, true}) {
                    HermitianSpace sp = [&] {
                        while (true) {
                            try {
                                return random_space(rng, F, n, congruence);
                            } catch (const std::invalid_argument&) { // degenerate draw
                            }
                        }
                    }();
                    TopForm b{F->element_by_index(1 + static_cast<long>(rng() % (F->order() - 1)))};
                    HodgeOperator Jin = HodgeOperator::build(sp, b, deg);
                    HodgeOperator Jout = HodgeOperator::build(sp, b, n - deg);
                    SemiMap J2 = semilinear_J(Jout, F).compose(semilinear_J(Jin, F));
                    CHECK_FALSE(J2.conj_companion);
                    Scalar delta = hodge_delta(sp, b, deg);
                    CHECK(J2.A == Mat::identity(F, J2.A.rows()).scaled(delta));
                    ++spaces;
                }
            }
    CHECK(spaces >= 20);

    auto Q = Field::rationals();
    auto sp = diagonal_space(Q, {1, 2, 10, -5});
    TopForm b{Q->one()};
    HodgeOperator J = HodgeOperator::build(sp, b, 2);
    SemiMap J2 = semilinear_J(J, Q).compose(semilinear_J(J, Q));
    CHECK(J2.A == Mat::identity(Q, 6).scaled(Q->from_int(-100)));
}

TEST_CASE("the six pairing identities")
{
    std::mt19937 rng(29);
    std::vector<FieldPtr> fields{Field::finite(3), Field::finite(5),
                                 Field::finite(4, Involution::Galois), Field::finite(9, Involution::Galois)};
    for (const auto& F : fields) {
        for (int n : {2, 4}) {
            int deg = n / 2;
            HermitianSpace sp = random_space(rng, F, n, true);
            TopForm b{F->one()};
            HodgeOperator J = HodgeOperator::build(sp, b, deg);
            Scalar delta = hodge_delta(sp, b, deg);
            int gs = ((n - deg) * deg) % 2 == 0 ? 1 : -1;
            auto check_pair = [&](const ExtVector& x, const ExtVector& y) {
                ExtVector Jx = J.apply(x), Jy = J.apply(y);
                Scalar hxy = ext_h(sp, deg, x, y);
                Scalar pfxy = pfaffian(b, x, y);
                Scalar pfyx = pfaffian(b, y, x);
                CHECK(pfaffian(b, Jx, y) == hxy);                                     // (1)
                CHECK(pfaffian(b, x, Jy) == (gs > 0 ? hxy.conj() : -hxy.conj()));     // (2)
                CHECK(pfaffian(b, Jx, Jy) == delta * pfyx.conj());                    // (3)
                CHECK(ext_h(sp, n - deg, Jx, y) == delta * pfxy);                     // (4)
                CHECK(ext_h(sp, deg, x, Jy) == delta * pfyx.conj());                  // (5)
                Scalar rhs6 = delta * hxy.conj();
                CHECK(ext_h(sp, n - deg, Jx, Jy) == (gs > 0 ? rhs6 : -rhs6));         // (6)
            };
            auto tuples = wedge_tuples(n, deg);
            for (unsigned tm : tuples)
                for (unsigned um : tuples)
                    check_pair(ExtVector::basis_element(F, n, deg, tm), ExtVector::basis_element(F, n, deg, um));
            for (int it = 0; it < 100; ++it) {
                ExtVector x(F, n, deg), y(F, n, deg);
                for (int i = 0; i < x.size(); ++i) {
                    x[i] = F->element_by_index(static_cast<long>(rng() % F->order()));
                    y[i] = F->element_by_index(static_cast<long>(rng() % F->order()));
                }
                check_pair(x, y);
            }
        }
    }
}

TEST_CASE("conjugate_scalar")
{
    auto F3 = Field::finite(3);
    // the finite orthogonal example: T-gram, delta = 2 (non-square mod 3)
    Mat T = Mat::from_rows(F3, {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -2}});
    HermitianSpace sp(F3, T);
    TopForm b{-F3->one()}; // b(v1^v2^v3^v4) = 2 over the basis e1+e2, e1-e2, e3, e4

    // gamma_s: similitude with multiplier s, det -s^2; conjugation sends J to -J
    long x = 1, y = 1, s = 2; // s = x^2 - 2 y^2 = -1 = 2
    Mat G = Mat::from_rows(F3, {{0, s, 0, 0}, {1, 0, 0, 0}, {0, 0, x, 2 * y}, {0, 0, y, x}});
    SemiMap gs{G, false};
    CHECK(conjugate_scalar(sp, b, 2, gs) == -F3->one());

    // isometries with det 1 centralize J; linear similitudes give r^{-l} det
    auto F9 = Field::finite(9, Involution::Galois);
    HermitianSpace hsp(F9, Mat::identity(F9, 4));
    TopForm b9{F9->one()};
    Vec z;
    for (const auto& v : isotropic_points(hsp)) {
        z = v;
        break;
    }
    Scalar p;
    for (const auto& c : F9->elements())
        if (!c.is_zero() && (c + c.conj()).is_zero()) {
            p = c;
            break;
        }
    SemiMap tau = eichler(hsp, z, zero_vec(F9, 4), p);
    CHECK(conjugate_scalar(hsp, b9, 2, tau).is_one());

    Scalar r = F9->from_int(2);
    SemiMap scale{Mat::identity(F9, 4).scaled(r), false}; // multiplier r^2... wait h(rv, rw) = N(r) h(v,w)
    Scalar mult = similitude_multiplier(hsp, scale);
    CHECK(conjugate_scalar(hsp, b9, 2, scale) == scale.A.det() / mult.pow(2));

    Mat bad = Mat::from_rows(F3, {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 1, 1}});
    CHECK_THROWS(conjugate_scalar(sp, b, 2, SemiMap{bad, false}));
}

TEST_CASE("K algebra arithmetic against the matrix model")
{
    std::mt19937 rng(31);
    for (long q : {5L, 9L}) {
        auto F = Field::finite(q, q == 9 ? Involution::Galois : Involution::Identity);
        KAlgebra K(F, F->from_int(q == 5 ? 2 : -1), 2);
        for (int it = 0; it < 60; ++it) {
            KElement a = K.element(F->element_by_index(static_cast<long>(rng() % q)),
                                   F->element_by_index(static_cast<long>(rng() % q)));
            KElement bk = K.element(F->element_by_index(static_cast<long>(rng() % q)),
                                    F->element_by_index(static_cast<long>(rng() % q)));
            CHECK((a * bk).matrix_model() == a.matrix_model() * bk.matrix_model());
            CHECK((a + bk).matrix_model() == a.matrix_model() + bk.matrix_model());
            // kappa is an anti-automorphism
            CHECK((a * bk).kappa() == bk.kappa() * a.kappa());
            // kappa(x) x = det(x) in R
            Scalar d = a.det();
            CHECK(a.kappa() * a == K.scalar(F->embed(d)));
            CHECK(a.kappa() * a == a * a.kappa());
            CHECK(a.matrix_model().det() == F->embed(d));
            // det is multiplicative
            CHECK((a * bk).det() == a.det() * bk.det());
            if (a.invertible()) CHECK(a * a.inverse() == K.one());
        }
        // j^2 = delta and j x = sigma(x) j
        CHECK(K.j() * K.j() == K.scalar(K.delta()));
        for (const auto& xv : F->elements())
            CHECK(K.j() * K.scalar(xv) == K.scalar(xv.conj()) * K.j());
        CHECK(K.one().det().is_one());
        CHECK(K.j().det() == -K.delta().norm_to_fixed() / K.delta().to_fixed_field()); // -delta in R
    }
}

TEST_CASE("alpha versus kappa")
{
    auto F9 = Field::finite(9, Involution::Galois);
    auto F5 = Field::finite(5);
    auto F4 = Field::finite(4, Involution::Galois);
    Scalar t = F9->generator();
    // odd degree: alpha = kappa
    KAlgebra Kodd(F9, F9->from_int(2), 1);
    KElement a = Kodd.element(t, t + F9->one());
    CHECK(a.alpha() == a.kappa());
    // char 2: alpha = kappa
    KAlgebra K2(F4, F4->one(), 2);
    KElement a2 = K2.element(F4->generator(), F4->one());
    CHECK(a2.alpha() == a2.kappa());
    // sigma = id, even degree: alpha = id
    KAlgebra Keven(F5, F5->from_int(2), 2);
    KElement a5 = Keven.element(F5->from_int(3), F5->from_int(4));
    CHECK(a5.alpha() == a5);
    // sigma != id, even degree: alpha = conjugation of kappa by a trace-zero a
    KAlgebra K9(F9, F9->from_int(2), 2);
    Scalar az = t; // sigma(t) = -t
    for (int i0 = 0; i0 < 9; ++i0)
        for (int i1 = 0; i1 < 9; ++i1) {
            KElement x = K9.element(F9->element_by_index(i0), F9->element_by_index(i1));
            KElement lhs = x.alpha();
            KElement rhs = K9.scalar(az).inverse() * x.kappa() * K9.scalar(az);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("det polarization degeneracy")
{
    CHECK_FALSE(k_det_polarization_degenerate(KAlgebra(Field::finite(3), Field::finite(3)->from_int(2), 2)));
    CHECK_FALSE(k_det_polarization_degenerate(KAlgebra(Field::finite(9, Involution::Galois),
                                                       Field::finite(9, Involution::Galois)->from_int(2), 2)));
    CHECK_FALSE(k_det_polarization_degenerate(
        KAlgebra(Field::finite(4, Involution::Galois), Field::finite(4, Involution::Galois)->one(), 2)));
    CHECK(k_det_polarization_degenerate(KAlgebra(Field::finite(4), Field::finite(4)->one(), 2)));
    CHECK(k_det_polarization_degenerate(KAlgebra(Field::finite(2), Field::finite(2)->one(), 2)));
    CHECK_FALSE(k_det_polarization_degenerate(KAlgebra(Field::rationals(), Field::rationals()->from_int(-100), 2)));
}

TEST_CASE("split detection and normalization")
{
    auto F4 = Field::finite(4, Involution::Galois);
    CHECK(KAlgebra(F4, F4->one(), 2).split());
    auto Q = Field::rationals();
    CHECK_FALSE(KAlgebra(Q, Q->from_int(-100), 2).split());
    CHECK(KAlgebra(Q, Q->from_int(36), 2).split());
    auto F3 = Field::finite(3);
    CHECK_FALSE(KAlgebra(F3, F3->from_int(2), 2).split());

    auto sp = diagonal_space(Q, {1, -2, 3, -6});
    TopForm b{Q->one()};
    CHECK(hodge_delta(sp, b, 2) == Q->from_int(36));
    TopForm nb = normalize_split(sp, b, 2);
    CHECK(hodge_delta(sp, nb, 2).is_one());
    CHECK(nb.b0 == Q->from_int(6));
    CHECK_THROWS(normalize_split(diagonal_space(Q, {1, 2, 10, -5}), b, 2));
}

TEST_CASE("idempotents and nilpotents")
{
    // sigma = id, char != 2, split: exactly (1 +- j)/2 when delta = 1
    auto F5 = Field::finite(5);
    KAlgebra K5(F5, F5->one(), 2);
    auto idem = K5.idempotents();
    REQUIRE(idem.size() == 2);
    Scalar half = F5->from_int(2).inverse();
    CHECK(idem[0] == K5.element(half, half));
    CHECK(idem[1] == K5.element(half, -half));
    for (const auto& p : idem) {
        CHECK(p * p == p);
        CHECK(p.kappa() == K5.one() - p);
    }
    CHECK_FALSE(K5.nilpotent().has_value());

    // sigma != id split: u + j u with smallest u, one conjugacy class
    auto F9 = Field::finite(9, Involution::Galois);
    KAlgebra K9(F9, F9->one(), 2);
    auto idem9 = K9.idempotents();
    REQUIRE(idem9.size() == 2);
    CHECK(idem9[0] * idem9[0] == idem9[0]);
    CHECK(idem9[0].x0() + idem9[0].x0().conj() == F9->one());
    auto a = K9.conjugating_element(idem9[0], idem9[1]);
    REQUIRE(a.has_value());
    CHECK(a->inverse() * idem9[0] * *a == idem9[1]);
    auto nil9 = K9.nilpotent();
    REQUIRE(nil9.has_value());
    CHECK((*nil9 * *nil9).is_zero());
    CHECK_FALSE(nil9->is_zero());

    // char 2, sigma = id, split: no idempotents, z = 1 + j nilpotent
    auto F4 = Field::finite(4);
    KAlgebra K4(F4, F4->one(), 2);
    CHECK(K4.idempotents().empty());
    auto z = K4.nilpotent();
    REQUIRE(z.has_value());
    CHECK(*z == K4.element(F4->one(), F4->one()));
    CHECK((*z * *z).is_zero());

    // non-split over Q: no nontrivial idempotents or nilpotents
    auto Q = Field::rationals();
    KAlgebra KQ(Q, Q->from_int(-100), 2);
    CHECK(KQ.idempotents().empty());
    CHECK_FALSE(KQ.nilpotent().has_value());
    // det(x) = x0^2 + 100 x1^2 = 0 has no nonzero solution
    CHECK(KQ.element(Q->from_int(3), Q->from_int(4)).det() == Q->from_int(9 + 1600));
}

TEST_CASE("delta is invariant under the choice of basis used to compute it")
{
    std::mt19937 rng(41);
    auto F5 = Field::finite(5);
    for (int it = 0; it < 10; ++it) {
        HermitianSpace sp = random_space(rng, F5, 4, true);
        TopForm b{F5->from_int(1 + static_cast<long>(rng() % 4))};
        // working-basis formula agrees with the diagonalizing-basis one
        Scalar direct = sp.gram().det() / F5->embed(b.b0.norm_to_fixed());
        CHECK(hodge_delta(sp, b, 2) == direct);
    }
}
