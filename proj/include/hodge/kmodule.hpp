#pragma once

#include "hodge/hodge_op.hpp"

namespace hodge {

/// R-coordinates of an F-vector under the basis {1, generator} of F over its
/// fixed field (identity when sigma = id): the result interleaves the two
/// component rows per F-coordinate.
Vec restrict_scalars(const FieldPtr& F, const Vec& v);

/// The middle exterior power of (V, h) as a free right module over the
/// algebra K, with the hermitian K-valued form g and the induced map eta on
/// semi-similitudes. Requires dim V = 2 deg.
///
/// The K-basis is B1 = { wedge of orthogonal basis vectors over tuples
/// containing index 1 }, in tuple order; expansion through {1, j} against
/// that basis is an F-linear bijection.
class KModule
{
public:
    KModule(HermitianSpace space, TopForm b, int deg);

    const HermitianSpace& space() const { return space_; }
    const TopForm& top_form() const { return b_; }
    int deg() const { return deg_; }
    const KAlgebra& algebra() const { return K_; }
    const HodgeOperator& J() const { return J_; }
    const Mat& orth_basis() const { return C_; }
    int rank() const { return static_cast<int>(b1_vectors_.size()); }
    const ExtVector& basis_vector(int i) const { return b1_vectors_[static_cast<std::size_t>(i)]; }

    /// K-coordinates of X over B1 (the free-module expansion).
    std::vector<KElement> expand(const ExtVector& X) const;
    ExtVector assemble(const std::vector<KElement>& coords) const;

    /// Right action X (x0 + j x1) = X x0 + J(X) x1.
    ExtVector k_action(const ExtVector& X, const KElement& k) const;

    /// g(u, v) by its Pfaffian expression.
    KElement g(const ExtVector& u, const ExtVector& v) const;
    /// g by both of its defining expressions; throws when they disagree.
    KElement g_two_path(const ExtVector& u, const ExtVector& v) const;
    /// Gram of g over B1.
    std::vector<std::vector<KElement>> g_gram() const;

    struct Eta
    {
        std::vector<std::vector<KElement>> mat; // over B1
        bool conj_companion = false;            // phi of the input map
        Scalar t;                               // companion twist on j
        KElement multiplier;                    // g(eta X, eta Y) = multiplier * psi(g(X, Y))
        Mat f_matrix;                           // plain F-matrix on the exterior power
        KElement psi(const KElement& k) const;  // companion automorphism of K
    };
    /// The induced K-semilinear map of a semi-similitude m; asserts
    /// K-semilinearity and the semi-similitude property of g.
    Eta eta(const SemiMap& m) const;

private:
    HermitianSpace space_;
    TopForm b_;
    int deg_;
    Mat C_;
    HodgeOperator J_;
    KAlgebra K_;
    std::vector<unsigned> b1_masks_;
    std::vector<ExtVector> b1_vectors_;
    Mat expand_inv_; // inverse of [w_gamma | J(w_gamma)] columns
};

/// Split-case submodule data (requires delta = 1, i.e. a normalized top
/// form): the basis of Wz with pre-z representatives, and for char != 2 the
/// idempotent p = (1+j)/2 with the complementary submodule.
struct SplitModule
{
    FieldPtr R;
    Scalar mu;                      // F|R extension scalar used for the basis (1 when sigma = id)
    Scalar a_ell;                   // the trace-zero factor in the reduction map (1 unless deg odd, sigma != id, char != 2)
    std::vector<ExtVector> wz_reps; // X with X z = basis vector
    std::vector<ExtVector> wz_basis;
    std::vector<ExtVector> wp_basis;  // char != 2 only (equals Wz as a subspace)
    std::vector<ExtVector> w1p_basis; // basis of W(1-p), char != 2 only
    Mat wz_r_matrix;                  // restricted-scalar columns of wz_basis
    Mat wz_proj;                      // left inverse of wz_r_matrix
};

/// Build the split submodules; mu overrides the canonical extension scalar
/// (trace-zero resp. trace-one element) when provided.
SplitModule split_submodules(const KModule& km, std::optional<Scalar> mu = std::nullopt);

/// The R-linear reduction K -> R with alpha(z) k z = r(k) a_ell^{-1} z.
Scalar reduce_r(const KModule& km, const SplitModule& sm, const KElement& k);

/// g^o(X z, Y z) = r(g(X, Y)) on Wz; Gram over the Wz basis.
Mat g_o_gram(const KModule& km, const SplitModule& sm);
/// Evaluate g^o on arbitrary elements of Wz (throws when an argument lies
/// outside Wz).
Scalar g_o(const KModule& km, const SplitModule& sm, const ExtVector& Xz, const ExtVector& Yz);

/// R-coordinates of an element of Wz over the Wz basis.
Vec wz_coordinates(const KModule& km, const SplitModule& sm, const ExtVector& Xz);

/// Restriction of eta(m) to Wz as an R-matrix (throws when Wz is not
/// invariant, which would be an internal inconsistency).
Mat eta_o(const KModule& km, const SplitModule& sm, const SemiMap& m);

/// Isotropic vector for g built from an isotropic vector of h following the
/// w1 + w2 construction (deg 1 and 2).
ExtVector isotropy_transfer_witness(const KModule& km);

} // namespace hodge
