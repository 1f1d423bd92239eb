#pragma once

#include "hodge/exterior.hpp"

namespace hodge {

/// The sigma-semilinear operator J from the degree-deg to the
/// degree-(n-deg) exterior power determined by h and the top form b:
/// Pf(J(x), y) = (induced form)(x, y) for all y.
///
/// Construction computes J twice -- from the closed product formula on the
/// deterministic orthogonal basis, and by solving against the Pfaffian Gram
/// matrix -- and refuses to return when the two disagree.
class HodgeOperator
{
public:
    static HodgeOperator build(const HermitianSpace& space, const TopForm& b, int deg);

    const Mat& matrix() const { return M_; } // J(x) = M * sigma(x)
    int deg_in() const { return deg_; }
    int deg_out() const { return n_ - deg_; }
    ExtVector apply(const ExtVector& x) const;

private:
    Mat M_;
    int n_ = 0, deg_ = 0;
};

/// delta_deg = (-1)^{(n-deg) deg} det(H) / N_{F|R}(b(c_1 ^ ... ^ c_n)),
/// evaluated on the deterministic diagonalizing basis.
Scalar hodge_delta(const HermitianSpace& space, const TopForm& b, int deg);

/// The scalar t with (ext m) o J o (ext m)^{-1} = t J for a (semi-)similitude
/// m, computed from the closed formula and from direct matrix conjugation;
/// throws when m is not a semi-similitude or the two computations disagree.
Scalar conjugate_scalar(const HermitianSpace& space, const TopForm& b, int deg, const SemiMap& m);

class KElement;

/// The R-algebra F + jF with j^2 = delta and j x = sigma(x) j, together with
/// the parity of deg (which the involution alpha depends on).
class KAlgebra
{
public:
    KAlgebra() = default;
    KAlgebra(FieldPtr F, Scalar delta, int deg);
    static KAlgebra from_space(const HermitianSpace& space, const TopForm& b, int deg);

    const FieldPtr& field() const { return F_; }
    const Scalar& delta() const { return delta_; }
    int deg_parity() const { return parity_; }
    bool same(const KAlgebra& o) const;

    KElement element(Scalar x0, Scalar x1) const;
    KElement scalar(const Scalar& x0) const;
    KElement zero() const;
    KElement one() const;
    KElement j() const;

    /// delta in N_{F|R}(F^x)? Finite fields and Q decide exactly;
    /// Q(sqrt d) may throw on Unknown.
    bool split() const;

    /// Nontrivial idempotents: both of (1 +- j')/2 when sigma = id and
    /// char != 2; the canonical u + j' u with u + sigma(u) = 1 (smallest u in
    /// index order) when sigma != id; none in the remaining cases.
    /// j' = j / s for the first s with N(s) = delta, so split algebras need no
    /// prior normalization.
    std::vector<KElement> idempotents() const;
    /// A nonzero nilpotent when one exists (split with char 2 or sigma != id).
    std::optional<KElement> nilpotent() const;
    /// Some a with a^{-1} p a = q for idempotents p, q (sigma != id, split).
    std::optional<KElement> conjugating_element(const KElement& p, const KElement& q) const;

private:
    FieldPtr F_;
    Scalar delta_;
    int parity_ = 0;
};

/// x0 + j x1 in a KAlgebra.
class KElement
{
public:
    KElement() = default;
    KElement(KAlgebra alg, Scalar x0, Scalar x1);

    const KAlgebra& algebra() const { return alg_; }
    const Scalar& x0() const { return x0_; }
    const Scalar& x1() const { return x1_; }
    bool valid() const { return x0_.valid(); }
    bool is_zero() const { return x0_.is_zero() && x1_.is_zero(); }
    bool is_one() const { return x0_.is_one() && x1_.is_zero(); }

    KElement operator+(const KElement& o) const;
    KElement operator-(const KElement& o) const;
    KElement operator*(const KElement& o) const;
    KElement operator-() const;
    KElement& operator+=(const KElement& o) { return *this = *this + o; }
    KElement& operator-=(const KElement& o) { return *this = *this - o; }
    bool operator==(const KElement& o) const;
    bool operator!=(const KElement& o) const { return !(*this == o); }

    /// Standard involution kappa(x0 + j x1) = sigma(x0) - j x1.
    KElement kappa() const;
    /// alpha(x0 + j x1) = sigma(x0) + (-1)^deg j x1.
    KElement alpha() const;
    /// kappa(x) x = N(x0) - delta N(x1), an element of the fixed field R.
    Scalar det() const;
    bool invertible() const { return !det().is_zero(); }
    KElement inverse() const;

    /// The 2x2 matrix model [[x0, delta sigma(x1)], [x1, sigma(x0)]].
    Mat matrix_model() const;

    std::string str() const;

private:
    KAlgebra alg_;
    Scalar x0_, x1_;
};

/// Is the polarization of det on K degenerate? (Exactly when char F = 2 and
/// sigma = id.) Computed from the R-Gram of the polar form.
bool k_det_polarization_degenerate(const KAlgebra& K);

/// Rescale b so that the Hodge delta becomes 1 (split algebras only): the new
/// top form is s b for the first s with N(s) = delta.
TopForm normalize_split(const HermitianSpace& space, const TopForm& b, int deg);

} // namespace hodge
