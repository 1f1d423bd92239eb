#pragma once

#include <optional>
#include <variant>

#include "hodge/linalg.hpp"

namespace hodge {

/// A semilinear map on F^n: v -> A * phi(v) where the companion phi is the
/// identity or the field involution sigma.
struct SemiMap
{
    Mat A;
    bool conj_companion = false;

    Vec apply(const Vec& v) const { return conj_companion ? A * hodge::conj(v) : A * v; }
    SemiMap compose(const SemiMap& inner) const; // (*this) o inner
    SemiMap inverse() const;
    bool operator==(const SemiMap& o) const { return conj_companion == o.conj_companion && A == o.A; }
};

/// Non-degenerate sigma-hermitian space (V, h): h(v, w) = sigma(v)^T H w,
/// linear in the right slot, sigma-semilinear in the left.
class HermitianSpace
{
public:
    HermitianSpace(FieldPtr F, Mat gram);

    const FieldPtr& field() const { return F_; }
    int dim() const { return gram_.rows(); }
    const Mat& gram() const { return gram_; }

    Scalar h(const Vec& v, const Vec& w) const;

private:
    FieldPtr F_;
    Mat gram_;
};

HermitianSpace diagonal_space(const FieldPtr& F, std::initializer_list<long> diag);

/// Orthogonal basis as matrix columns, produced deterministically: pivots are
/// taken in index order preferring anisotropic vectors; when char F = 2 and
/// sigma = id leaves only an alternating block, an already-chosen pivot u is
/// recombined with a hyperbolic pair x, y of the block ("v1 := y + u") to
/// restore anisotropic vectors. Columns are normalized (first nonzero entry 1;
/// primitive integral with positive leading entry over Q).
/// Throws std::domain_error on alternating char-2 bilinear input.
Mat orthogonal_basis(const HermitianSpace& space);

/// Norm class of det(gram): canonical square-class representative when
/// sigma = id, otherwise the class modulo N_{F|R}(F^x).
Scalar discriminant(const HermitianSpace& space);

struct WittIndex
{
    int value = 0;  // exact index, or a lower bound when exact = false
    bool exact = true;
    long certificate_prime = 0; // anisotropy certificate modulus over Q, if used
};

/// Exact Witt index for finite fields (exhaustive search). Over Q: bounded
/// search for totally isotropic subspaces plus, for diagonal forms, a descent
/// oracle modulo a derived prime that certifies anisotropy.
WittIndex witt_index(const HermitianSpace& space);

struct Isometry {};
struct Similitude { Scalar multiplier; };
struct SemiSimilitude { Scalar multiplier; };
using MapClass = std::variant<std::monostate, Isometry, Similitude, SemiSimilitude>;

/// Detects r and phi with h(m v, m w) = r * phi(h(v, w)); monostate when m is
/// none of isometry / similitude / semi-similitude.
MapClass classify_map(const HermitianSpace& space, const SemiMap& m);
bool is_isometry(const HermitianSpace& space, const SemiMap& m);
/// Multiplier of a similitude or semi-similitude (throws when m is neither).
Scalar similitude_multiplier(const HermitianSpace& space, const SemiMap& m);

/// Eichler (Siegel) transformation x -> x + z h(w,x) - (w + z p) h(z,x);
/// requires h(z,z) = 0 = h(z,w) and sigma(p) + p = h(w,w). Always a special
/// isometry of h.
SemiMap eichler(const HermitianSpace& space, const Vec& z, const Vec& w, const Scalar& p);

/// Hyperplane reflection in an anisotropic vector v (sigma = id, char != 2).
SemiMap reflection(const HermitianSpace& space, const Vec& v);

/// All isotropic vectors up to scalar (finite fields).
std::vector<Vec> isotropic_points(const HermitianSpace& space);

/// Projective points of F^n, normalized with first nonzero coordinate 1.
std::vector<Vec> projective_points(const FieldPtr& F, int n);

} // namespace hodge
