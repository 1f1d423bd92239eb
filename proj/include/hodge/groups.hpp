#pragma once

#include "hodge/kmodule.hpp"

namespace hodge {

/// Finite matrix group produced by breadth-first closure. Elements are kept
/// as packed canonical encodings (field-element indices row-major plus a
/// companion bit) in insertion order, so identical generator lists always
/// produce identical element orderings.
class GeneratedGroup
{
public:
    GeneratedGroup(FieldPtr F, int dim);

    const FieldPtr& field() const { return F_; }
    int dim() const { return dim_; }
    std::size_t order() const { return count_; }
    const std::vector<SemiMap>& generators() const { return gens_; }

    SemiMap element(std::size_t i) const;
    const uint8_t* raw_element(std::size_t i) const
    {
        return blob_.data() + i * static_cast<std::size_t>(stride_);
    }
    bool contains(const SemiMap& m) const;
    /// Insert; returns true when the element was new.
    bool insert(const SemiMap& m);
    bool insert_raw(const uint8_t* key);
    void reserve(std::size_t n);

    /// Apply f to every element in insertion order (decoding on the fly).
    template <typename F2>
    void for_each(F2&& f) const
    {
        for (std::size_t i = 0; i < count_; ++i) f(element(i));
    }

    std::vector<SemiMap> gens_;

private:
    friend GeneratedGroup generate_group(const FieldPtr&, int, const std::vector<SemiMap>&, std::size_t);
    FieldPtr F_;
    int dim_ = 0;
    int stride_ = 0;
    long q_ = 0;
    std::size_t count_ = 0;
    std::vector<uint8_t> blob_;
    std::vector<uint32_t> slots_; // index + 1, linear probing
    std::vector<uint8_t> mul_, add_, conj_;

    void encode(const SemiMap& m, uint8_t* out) const;
    SemiMap decode(const uint8_t* p) const;
    std::size_t find_slot(const uint8_t* key) const;
    void rehash(std::size_t want);
    void compose_packed(const uint8_t* a, const uint8_t* b, uint8_t* out) const;
    friend struct PackedAccess;
};

/// Breadth-first closure of the generators under multiplication; throws
/// std::length_error when the closure exceeds cap.
GeneratedGroup generate_group(const FieldPtr& F, int dim, const std::vector<SemiMap>& gens,
                              std::size_t cap = 2000000);

/// Closed-form orders: SU4(e) = e^6 (e^2-1)(e^3+1)(e^4-1), Ominus6 = twice
/// that, Ominus4(e) = 2 e^2 (e^2+1)(e^2-1) with SOminus4 / EOminus4 its half
/// and quarter, PSL2(q) = q(q^2-1)/gcd(2, q-1).
unsigned long long order_formula(const std::string& family, long e);

/// All Eichler transformations of a finite space (deduplicated maps).
std::vector<SemiMap> eichler_generators(const HermitianSpace& space);
/// Isotropic transvections only (w = 0); at most max_count maps in
/// enumeration order (0 = all).
std::vector<SemiMap> transvection_generators(const HermitianSpace& space, std::size_t max_count = 0);

/// Subgroup generated by all Eichler transformations.
GeneratedGroup eo_subgroup(const HermitianSpace& space, std::size_t cap = 2000000);

/// Image of G under the induced action on the middle exterior power (the
/// plain F-matrices), or under the restriction to Wz over R when sm is given.
/// Checks the homomorphism property on generator pairs and preservation of
/// the Gram of g (resp. of g^o) on every generator.
GeneratedGroup image_under_eta(const KModule& km, const GeneratedGroup& G, const SplitModule* sm = nullptr,
                               std::size_t cap = 2000000);

struct EichlerImage
{
    ExtVector Z;         // z ^ w (or z ^ w0 for transvections)
    ExtVector W;         // z ^ u in the bilinear case; zero for transvections
    KElement P;          // the predicted parameter
    bool matched = false; // exact matrix equality of the two maps
};

/// Predicted image of an Eichler transformation under the induced map:
/// the recipe (z^w, z^u, -1/2) for sigma = id, char != 2, w != 0; a
/// transvection with solved parameter for w = 0. Asserts exact matrix
/// equality.
EichlerImage eta_of_eichler(const KModule& km, const Vec& z, const Vec& w, const Scalar& p);

/// Square class of the product of reflection norms in a Cartan-Dieudonne
/// decomposition (sigma = id, char != 2, isometries only).
Scalar spinor_norm(const HermitianSpace& space, const SemiMap& m);

} // namespace hodge
