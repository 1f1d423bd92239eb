#pragma once

#include "hodge/kmodule.hpp"

namespace hodge {

/// Composition algebra over R built by doubling from R itself or from a
/// two-dimensional algebra R[X]/(X^2 - d) resp. R[X]/(X^2 - X + r) (the
/// latter kind also covers characteristic two). Doubling with scalar c uses
/// (a, b)(c', d') = (a c' + c conj(d') b, d' a + b conj(c')) and
/// N((a, b)) = N(a) - c N(b).
class CompositionAlgebra
{
public:
    enum class BaseKind { Unit, QuadSqrt, QuadArtin };
    using Elem = Vec;

    static CompositionAlgebra base(FieldPtr R);
    static CompositionAlgebra quad_sqrt(FieldPtr R, Scalar d);
    static CompositionAlgebra quad_artin(FieldPtr R, Scalar r);
    CompositionAlgebra doubled(const Scalar& c) const;

    const FieldPtr& field() const { return R_; }
    int dim() const { return dim_; }
    BaseKind base_kind() const { return base_kind_; }
    const std::vector<Scalar>& doubling_scalars() const { return doublings_; }

    Elem zero() const { return zero_vec(R_, dim_); }
    Elem one() const;
    Elem basis(int i) const { return unit_vec(R_, dim_, i); }
    Elem mul(const Elem& a, const Elem& b) const;
    Elem conj(const Elem& a) const;
    Scalar norm(const Elem& a) const;
    Scalar trace(const Elem& a) const; // a + conj(a), as a scalar
    Scalar norm_polar(const Elem& a, const Elem& b) const;
    /// N on the canonical basis (the norm form is diagonal on it except for
    /// Artin-type planes, whose cross terms norm_polar reports).
    Vec norm_diagonal() const;

    std::string tree_str() const;

    CompositionAlgebra() = default;

private:
    FieldPtr R_;
    BaseKind base_kind_ = BaseKind::Unit;
    Scalar base_scalar_; // d resp. r
    std::vector<Scalar> doublings_;
    int dim_ = 1;
    int base_dim_ = 1;

    Elem mul_level(const Elem& a, const Elem& b, int dim) const;
    Elem conj_level(const Elem& a, int dim) const;
};

/// The octonion algebra attached to a hermitian space with sigma != id,
/// char != 2, split K, scaled so that h(v1,v1) = 1 and
/// h(v4,v4) = h(v2,v2) h(v3,v3) on the deterministic orthogonal basis.
/// V = H + H q for the quaternion part H and a chosen trace-zero q, and
/// N(v) = h(v, v) is the norm of the q^2-double of H.
struct OctonionFromHermitian
{
    CompositionAlgebra C;
    Mat orth_basis;       // columns v1..v4
    Scalar q;             // sigma(q) = -q
    std::vector<Vec> f_copy;      // octonion images of v1, v1 q (the embedded F)
    std::vector<Vec> fperp_basis; // octonion images of v2, v3, v4, v2 q, v3 q, v4 q
    std::vector<Vec> fperp_space; // the same vectors in V (F-coordinates)
    /// Octonion coordinates of v in V.
    Vec embed(const Vec& v) const;
};
OctonionFromHermitian octonion_from_hermitian(const HermitianSpace& space, const Scalar& q);

/// The characteristic-two counterpart: V decomposes into four planes
/// C1 .. C4 with N|C_k equal to c_k N|C1 on the stated bases, and N is the
/// norm of the c3-double of the c2-double of R[X]/(X^2 - X + r),
/// r = conj(u) u + c2.
struct OctonionChar2
{
    CompositionAlgebra C;
    Mat orth_basis;
    Scalar u; // u + sigma(u) = 1
    Scalar r;
    std::vector<std::vector<Vec>> planes; // bases of C1..C4 inside V
    Vec embed(const Vec& v) const;        // octonion coordinates
    Mat embed_matrix;                     // 8 x 8 over R
    const HermitianSpace* space = nullptr;
};
OctonionChar2 octonion_char2(const HermitianSpace& space, const Scalar& u);

/// A scalar s with s f1 isometric to f2 for diagonal forms (finite fields,
/// char != 2: decided through dimension and discriminant). Over Q the answer
/// is certified (entry multisets match after scaling) or Unknown.
struct SimilarityResult
{
    Tri status = Tri::Unknown;
    Scalar scale;
};
SimilarityResult similar_forms(const Vec& f1, const Vec& f2);

} // namespace hodge
