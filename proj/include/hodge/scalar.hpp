#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hodge {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class FieldKind { FinitePrime, FiniteQuadratic, Rationals, RationalQuadratic };
enum class Involution { Identity, Galois };
enum class Tri { Yes, No, Unknown };

class Scalar;
class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// An exact field F with an involution sigma of order <= 2 and fixed field R.
///
/// Supported kinds:
///  - prime fields F_p,
///  - quadratic extensions F_{p^2} = F_p[t]/(t^2 + bt + c) with the Frobenius
///    involution x -> x^p when requested,
///  - the rationals Q,
///  - quadratic extensions Q(sqrt d) for a non-square rational d.
///
/// The modulus for F_{p^2} is the first irreducible t^2 + bt + c in
/// lexicographic (b, c) order, so equal orders always produce the same
/// representation (F_4 uses t^2+t+1, F_9 uses t^2+1, F_25 uses t^2+2).
class Field : public std::enable_shared_from_this<Field>
{
public:
    static FieldPtr finite(long order, Involution inv = Involution::Identity);
    static FieldPtr rationals();
    static FieldPtr rational_quadratic(const Rational& d, Involution inv = Involution::Galois);

    FieldKind kind() const noexcept { return kind_; }
    Involution involution() const noexcept { return inv_; }
    bool galois() const noexcept { return inv_ == Involution::Galois; }
    long characteristic() const noexcept { return p_; }
    long order() const noexcept { return order_; } // 0 for infinite fields
    bool is_finite() const noexcept { return order_ != 0; }
    const Rational& quad_d() const noexcept { return d_; }
    long modulus_b() const noexcept { return mod_b_; }
    long modulus_c() const noexcept { return mod_c_; }

    /// The fixed field R of sigma (the field itself when sigma = id).
    FieldPtr fixed_field() const;
    /// Degree of F over the fixed field (1 or 2).
    int fixed_degree() const noexcept { return galois() ? 2 : 1; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long v) const;
    Scalar from_rational(const Rational& a) const;
    Scalar element(long c0, long c1) const;                    // finite kinds: c0 + c1 t
    Scalar element(const Rational& a, const Rational& b) const; // rational kinds: a + b sqrt(d)
    Scalar element_by_index(long idx) const;                   // finite: idx = c0 + c1 p
    /// Generator of F over its prime/rational base: t resp. sqrt(d).
    Scalar generator() const;
    /// All field elements in canonical index order (finite fields only).
    std::vector<Scalar> elements() const;
    /// Embed an element of the fixed field R into F.
    Scalar embed(const Scalar& r_elt) const;

    Scalar parse(const std::string& text) const;

    bool same(const Field& other) const noexcept;
    std::string name() const;

private:
    Field() = default;
    friend class Scalar;

    FieldKind kind_ = FieldKind::Rationals;
    Involution inv_ = Involution::Identity;
    long p_ = 0;
    long order_ = 0;
    long mod_b_ = 0, mod_c_ = 0; // t^2 + bt + c
    long tp0_ = 0, tp1_ = 0;     // t^p = tp0 + tp1 t
    Rational d_ = 0;
};

/// An exact element of a Field. Values are kept in canonical form, so
/// operator== decides mathematical equality.
class Scalar
{
public:
    Scalar() = default;

    const FieldPtr& field() const { return field_; }
    bool valid() const noexcept { return field_ != nullptr; }

    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inverse() const;
    Scalar pow(long e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// sigma(x) for the involution attached to the field.
    Scalar conj() const;
    /// Frobenius x -> x^p on finite quadratic fields, independent of the
    /// involution kind; identity elsewhere.
    Scalar frobenius() const;
    /// N_{F|R}(x) = sigma(x) * x, returned as an element of R.
    Scalar norm_to_fixed() const;
    /// sigma(x) + x, returned as an element of R.
    Scalar trace_to_fixed() const;
    bool in_fixed_field() const;
    /// Reinterpret a sigma-fixed element as an element of fixed_field().
    Scalar to_fixed_field() const;

    long canonical_index() const; // finite kinds
    long coeff0() const { return c0_; }
    long coeff1() const { return c1_; }
    const Rational& rat0() const { return a_; }
    const Rational& rat1() const { return b_; }

    std::string str() const;
    std::size_t hash() const;

private:
    friend class Field;
    FieldPtr field_;
    long c0_ = 0, c1_ = 0; // finite kinds
    Rational a_ = 0, b_ = 0; // rational kinds
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// True iff c is an exact square in its field (decidable for all kinds here).
bool is_square(const Scalar& c);
std::optional<Scalar> sqrt_exact(const Scalar& c);

/// Is c a norm from F, i.e. c in N_{F|R}(F^x)?  Exact for finite fields and
/// for Q; for Q(sqrt d)|Q it decides through Hilbert-symbol conditions after
/// trial-division factoring (bound 10^6) and reports Unknown when the inputs
/// cannot be factored within that bound.
Tri is_norm(const Scalar& c);

/// Canonical representative of c modulo nonzero squares.
/// Finite fields: 1 or the first non-square in index order. Q: the signed
/// square-free part. Unsupported for Q(sqrt d).
Scalar square_class(const Scalar& c);

/// Canonical representative of c modulo N_{F|R}(F^x); agrees with
/// square_class when sigma = id.
Scalar norm_class(const Scalar& c);

/// Some s with sigma(s) * s = c, if one exists (exhaustive for finite fields,
/// square roots for Q).
std::optional<Scalar> norm_preimage(const Scalar& c);

/// Signed square-free part of a nonzero integer via trial division.
Integer squarefree_part(Integer n);

/// Hilbert symbol (a, b)_p over Q_p (p = 0 encodes the real place).
int hilbert_symbol(Integer a, Integer b, const Integer& p);

} // namespace hodge
