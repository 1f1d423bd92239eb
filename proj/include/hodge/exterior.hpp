#pragma once

#include "hodge/forms.hpp"

namespace hodge {

/// Index sets for the wedge basis: strictly increasing l-tuples from {1..n},
/// encoded as bitmasks (bit i-1 for index i) and ordered lexicographically as
/// tuples. All signs are inversion counts against that ordering.
std::vector<unsigned> wedge_tuples(int n, int deg);
int wedge_index(int n, int deg, unsigned mask);
long binomial(int n, int k);
/// Sign of merging disjoint masks a, b into the sorted tuple a|b; 0 if they
/// intersect.
int merge_sign(unsigned a, unsigned b);

/// Element of the degree-deg part of the exterior algebra of F^n, stored as
/// coefficients over the wedge tuple basis.
class ExtVector
{
public:
    ExtVector() = default;
    ExtVector(FieldPtr F, int n, int deg);
    static ExtVector basis_element(const FieldPtr& F, int n, int deg, unsigned mask);
    /// Wedge of column vectors (degree = number of vectors).
    static ExtVector wedge_of(const FieldPtr& F, const std::vector<Vec>& vs);

    const FieldPtr& field() const { return F_; }
    int space_dim() const { return n_; }
    int degree() const { return deg_; }
    int size() const { return static_cast<int>(coeff_.size()); }

    Scalar& operator[](int i) { return coeff_[static_cast<std::size_t>(i)]; }
    const Scalar& operator[](int i) const { return coeff_[static_cast<std::size_t>(i)]; }
    const Scalar& coeff(unsigned mask) const { return coeff_[static_cast<std::size_t>(wedge_index(n_, deg_, mask))]; }

    ExtVector operator+(const ExtVector& o) const;
    ExtVector operator-(const ExtVector& o) const;
    ExtVector scaled(const Scalar& s) const; // right scalar action
    ExtVector operator-() const;
    bool operator==(const ExtVector& o) const;
    bool is_zero() const;

    Vec as_vec() const { return coeff_; }
    static ExtVector from_vec(const FieldPtr& F, int n, int deg, Vec v);

    std::string str() const; // signed sum of wedge monomials

private:
    FieldPtr F_;
    int n_ = 0, deg_ = 0;
    Vec coeff_;
};

ExtVector wedge(const ExtVector& x, const ExtVector& y);

/// Matrix of the degree-deg exterior power of A over the wedge basis
/// (entries are deg x deg minors).
Mat ext_power_matrix(const Mat& A, int deg);
/// Induced semilinear map on the degree-deg exterior power.
SemiMap ext_power_map(const SemiMap& m, int deg);
ExtVector apply_ext(const SemiMap& ext_m, const ExtVector& x);

/// Gram matrix of the induced form on the degree-deg exterior power
/// (determinants of deg x deg minors of the Gram of h).
Mat ext_h_gram(const HermitianSpace& space, int deg);
Scalar ext_h(const HermitianSpace& space, int deg, const ExtVector& X, const ExtVector& Y);

/// F-linear isomorphism b on the top exterior power, represented by its value
/// b0 on the working-basis top vector e_1 ^ ... ^ e_n.
struct TopForm
{
    Scalar b0;
};

/// Pf(X, Y) = b(X ^ Y) for complementary degrees.
Scalar pfaffian(const TopForm& b, const ExtVector& X, const ExtVector& Y);
/// Gram of the pairing: rows indexed by degree-(n-deg) tuples, columns by
/// degree-deg tuples.
Mat pfaffian_gram(const FieldPtr& F, const TopForm& b, int n, int deg);

/// The quadratic form defining the Klein quadric on degree-2 vectors of F^4:
/// b0 (x12 x34 - x13 x24 + x14 x23); its polarization is the Pfaffian pairing.
Scalar klein_quadratic(const TopForm& b, const ExtVector& X);

} // namespace hodge
