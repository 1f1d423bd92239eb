#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodge/compalg.hpp"

#include <random>

using namespace hodge;

namespace {

CompositionAlgebra::Elem rnd_elem(std::mt19937& rng, const CompositionAlgebra& A)
{
    CompositionAlgebra::Elem e;
    for (int i = 0; i < A.dim(); ++i)
        e.push_back(A.field()->element_by_index(static_cast<long>(rng() % A.field()->order())));
    return e;
}

} // namespace

TEST_CASE("doubling basics over Q")
{
    auto Q = Field::rationals();
    auto A = CompositionAlgebra::base(Q).doubled(Q->from_int(5));
    // N(x + j y) = x^2 - 5 y^2
    CompositionAlgebra::Elem e{Q->from_int(3), Q->from_int(2)};
    CHECK(A.norm(e) == Q->from_int(9 - 20));
    CHECK(A.trace(e) == Q->from_int(6));
    // x conj(x) = N(x)
    auto prod = A.mul(e, A.conj(e));
    CHECK(prod[0] == A.norm(e));
    CHECK(prod[1].is_zero());
}

TEST_CASE("norm multiplicativity through quaternions and octonions")
{
    std::mt19937 rng(3);
    auto F5 = Field::finite(5);
    auto quat = CompositionAlgebra::base(F5).doubled(F5->from_int(2)).doubled(F5->from_int(3));
    for (int it = 0; it < 50; ++it) {
        auto a = rnd_elem(rng, quat), b = rnd_elem(rng, quat);
        CHECK(quat.norm(quat.mul(a, b)) == quat.norm(a) * quat.norm(b));
        auto prod = quat.mul(a, quat.conj(a));
        CHECK(prod[0] == quat.norm(a));
        for (int i = 1; i < 4; ++i) CHECK(prod[static_cast<std::size_t>(i)].is_zero());
        CHECK(quat.trace(a) == a[0] + a[0]); // x + conj(x) = 2 x0 here
    }
    auto oct = quat.doubled(F5->from_int(2));
    for (int it = 0; it < 50; ++it) {
        auto a = rnd_elem(rng, oct), b = rnd_elem(rng, oct);
        CHECK(oct.norm(oct.mul(a, b)) == oct.norm(a) * oct.norm(b));
    }
    CHECK_THROWS(oct.doubled(F5->one()));
}

TEST_CASE("char-2 artin base")
{
    auto F2 = Field::finite(2);
    auto A = CompositionAlgebra::quad_artin(F2, F2->one()); // X^2 - X + 1
    // N(x0 + x1 t) = x0^2 + x0 x1 + x1^2
    CompositionAlgebra::Elem e{F2->one(), F2->one()};
    CHECK(A.norm(e) == F2->one());
    CHECK(A.trace(e) == F2->one()); // 2 x0 + x1 = x1
    auto d = A.doubled(F2->one());
    std::mt19937 rng(5);
    for (int it = 0; it < 30; ++it) {
        auto a = rnd_elem(rng, d), b = rnd_elem(rng, d);
        CHECK(d.norm(d.mul(a, b)) == d.norm(a) * d.norm(b));
    }
    // polarization of the artin plane is non-degenerate
    CHECK(A.norm_polar(A.basis(0), A.basis(1)).is_one());
}

TEST_CASE("octonion from a hermitian space, sigma != id, char != 2")
{
    auto F9 = Field::finite(9, Involution::Galois);
    auto R = F9->fixed_field();
    long c2 = 2, c3 = 1;
    auto sp = diagonal_space(F9, {1, c2, c3, c2 * c3});
    Scalar q = F9->generator(); // sigma(t) = -t
    auto oct = octonion_from_hermitian(sp, q);

    // N(embed(v)) = h(v, v) on random vectors
    std::mt19937 rng(7);
    for (int it = 0; it < 40; ++it) {
        Vec v;
        for (int i = 0; i < 4; ++i) v.push_back(F9->element_by_index(static_cast<long>(rng() % 9)));
        CHECK(oct.C.norm(oct.embed(v)) == sp.h(v, v).to_fixed_field());
    }
    // quaternion part carries h's diagonal
    Vec nd = oct.C.norm_diagonal();
    CHECK(nd[0] == R->one());
    CHECK(nd[1] == R->from_int(c2));
    CHECK(nd[2] == R->from_int(c3));
    CHECK(nd[3] == R->from_int(c2 * c3));
    // F^perp diagonal: c2, c3, c4, -q^2 c2, -q^2 c3, -q^2 c4
    Scalar mq2 = (-(q * q)).to_fixed_field();
    CHECK(nd[4] == mq2);
    CHECK(nd[5] == mq2 * R->from_int(c2));
    CHECK(nd[6] == mq2 * R->from_int(c3));
    CHECK(nd[7] == mq2 * R->from_int(c2 * c3));

    // wrong normalization reported
    CHECK_THROWS(octonion_from_hermitian(diagonal_space(F9, {2, 1, 1, 1}), q));
    CHECK_THROWS(octonion_from_hermitian(sp, F9->one()));
}

TEST_CASE("octonion in characteristic two")
{
    auto F4 = Field::finite(4, Involution::Galois);
    auto R = F4->fixed_field();
    HermitianSpace sp(F4, Mat::identity(F4, 4));
    Scalar u = F4->generator(); // t + t^2 = 1
    auto oct = octonion_char2(sp, u);
    CHECK(oct.r == R->zero()); // r = conj(u) u + c2 = 1 + 1

    // the four planes are orthogonal under the polarization of N(v) = h(v,v)
    auto fN = [&](const Vec& a, const Vec& b) { return (sp.h(a, b) + sp.h(b, a)).to_fixed_field(); };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            for (const auto& a : oct.planes[static_cast<std::size_t>(i)])
                for (const auto& b : oct.planes[static_cast<std::size_t>(j)]) CHECK(fN(a, b).is_zero());
        }
    // N|C_k matches c_k N|C_1 on the stated bases: values and cross terms
    Vec diag;
    for (int i = 0; i < 4; ++i) diag.push_back(sp.h(oct.orth_basis.col(i), oct.orth_basis.col(i)));
    Vec cks{R->one(), diag[1].to_fixed_field(), diag[2].to_fixed_field(),
            (diag[1] * diag[2]).to_fixed_field()};
    for (int k = 0; k < 4; ++k) {
        const auto& plane = oct.planes[static_cast<std::size_t>(k)];
        CHECK(sp.h(plane[0], plane[0]).to_fixed_field() == cks[static_cast<std::size_t>(k)]);
        CHECK(sp.h(plane[1], plane[1]).to_fixed_field() == cks[static_cast<std::size_t>(k)] * oct.r);
        CHECK(fN(plane[0], plane[1]) == cks[static_cast<std::size_t>(k)]);
    }
    // the embedding is an isometry onto the stated double
    std::mt19937 rng(11);
    for (int it = 0; it < 40; ++it) {
        Vec v;
        for (int i = 0; i < 4; ++i) v.push_back(F4->element_by_index(static_cast<long>(rng() % 4)));
        CHECK(oct.C.norm(oct.embed(v)) == sp.h(v, v).to_fixed_field());
    }
    // N|C1 isotropic exactly when c2 = conj(u) u (here r = 0)
    CHECK(oct.C.norm(CompositionAlgebra::Elem{R->zero(), R->one(), R->zero(), R->zero(), R->zero(),
                                              R->zero(), R->zero(), R->zero()}) == oct.r);
}

TEST_CASE("similar_forms")
{
    auto F5 = Field::finite(5);
    Vec f1{F5->from_int(4), F5->from_int(6), F5->from_int(12)}; // g^o quaternion diagonal, c2=2, c3=3
    Vec f2{F5->from_int(2), F5->from_int(3), F5->from_int(6)};  // pure-part norm diagonal
    auto r = similar_forms(f2, f1);
    CHECK(r.status == Tri::Yes);
    // s f2 isometric to f1: s = 2 gives equal diagonals
    Vec scaledf;
    for (const auto& d : f2) scaledf.push_back(r.scale * d);
    CHECK(similar_forms(scaledf, f1).status == Tri::Yes);

    auto rf = similar_forms(f1, f1);
    CHECK(rf.status == Tri::Yes);
    CHECK(rf.scale.is_one());

    // dimension mismatch
    CHECK(similar_forms(f1, Vec{F5->one()}).status == Tri::No);

    // 1-dimensional non-similar example: <1> vs <2> over F_3 scaled by any s
    auto F3 = Field::finite(3);
    CHECK(similar_forms(Vec{F3->one(), F3->one()}, Vec{F3->one(), F3->from_int(2)}).status == Tri::No);

    auto Q = Field::rationals();
    auto rq = similar_forms(Vec{Q->from_int(1), Q->from_int(2)}, Vec{Q->from_int(9), Q->from_int(18)});
    CHECK(rq.status == Tri::Yes);
    auto runk = similar_forms(Vec{Q->from_int(1), Q->from_int(1)}, Vec{Q->from_int(2), Q->from_int(3)});
    CHECK(runk.status == Tri::Unknown);
}
