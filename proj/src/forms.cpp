#include "hodge/forms.hpp"

#include <algorithm>

namespace hodge {

SemiMap SemiMap::compose(const SemiMap& inner) const
{
    // (A, phi) o (B, psi): v -> A phi(B psi(v)) = A phi(B) (phi o psi)(v)
    SemiMap r;
    r.A = conj_companion ? A * inner.A.conj() : A * inner.A;
    r.conj_companion = conj_companion != inner.conj_companion;
    return r;
}

SemiMap SemiMap::inverse() const
{
    SemiMap r;
    Mat inv = A.inverse();
    r.A = conj_companion ? inv.conj() : inv;
    r.conj_companion = conj_companion;
    return r;
}

HermitianSpace::HermitianSpace(FieldPtr F, Mat gram) : F_(std::move(F)), gram_(std::move(gram))
{
    if (gram_.rows() != gram_.cols() || gram_.rows() < 1)
        throw std::invalid_argument("HermitianSpace: gram must be square, dim >= 1");
    if (!(gram_.conj_transpose() == gram_))
        throw std::invalid_argument("HermitianSpace: gram is not sigma-hermitian");
    if (gram_.det().is_zero())
        throw std::invalid_argument("HermitianSpace: form is degenerate");
    if (F_->characteristic() == 2 && !F_->galois())
        orthogonal_basis(*this); // diagonalizability is part of the contract here
}

Scalar HermitianSpace::h(const Vec& v, const Vec& w) const
{
    if (static_cast<int>(v.size()) != dim() || static_cast<int>(w.size()) != dim())
        throw std::invalid_argument("h: dimension mismatch");
    return dot(hodge::conj(v), gram_ * w);
}

HermitianSpace diagonal_space(const FieldPtr& F, std::initializer_list<long> diag)
{
    Vec d;
    for (long v : diag) d.push_back(F->from_int(v));
    return HermitianSpace(F, Mat::diagonal(F, d));
}

namespace {

Vec normalize_basis_vector(const FieldPtr& F, Vec v)
{
    if (F->kind() == FieldKind::Rationals) {
        // primitive integral with positive leading entry
        Integer lcm_den = 1, gcd_num = 0;
        for (const auto& x : v) {
            lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(x.rat0()));
        }
        for (auto& x : v) x = x * F->from_rational(Rational(lcm_den));
        for (const auto& x : v) gcd_num = boost::multiprecision::gcd(gcd_num, boost::multiprecision::numerator(x.rat0()));
        if (!gcd_num.is_zero())
            for (auto& x : v) x = x * F->from_rational(Rational(1, gcd_num));
        for (const auto& x : v) {
            if (x.is_zero()) continue;
            if (x.rat0() < 0)
                for (auto& y : v) y = -y;
            break;
        }
        return v;
    }
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        Scalar inv = x.inverse();
        for (auto& y : v) y *= inv;
        break;
    }
    return v;
}

} // namespace

Mat orthogonal_basis(const HermitianSpace& space)
{
    const FieldPtr& F = space.field();
    const int n = space.dim();
    const bool char2_sym = F->characteristic() == 2 && !F->galois();

    std::vector<Vec> pivots;
    std::vector<Vec> rest;
    for (int i = 0; i < n; ++i) rest.push_back(unit_vec(F, n, i));

    auto reduce_against = [&](const Vec& p, Vec w) {
        Scalar c = space.h(p, w) / space.h(p, p);
        return w - scaled(p, c);
    };

    while (!rest.empty()) {
        int pick = -1;
        for (std::size_t i = 0; i < rest.size(); ++i)
            if (!space.h(rest[i], rest[i]).is_zero()) {
                pick = static_cast<int>(i);
                break;
            }
        if (pick < 0) {
            // Remaining block has all-zero diagonal. Try to fix a pivot by
            // mixing two block vectors; in char 2 with sigma = id the block is
            // alternating and we must borrow an anisotropic pivot instead.
            bool fixed = false;
            if (!char2_sym) {
                for (std::size_t i = 0; i < rest.size() && !fixed; ++i)
                    for (std::size_t j = i + 1; j < rest.size() && !fixed; ++j) {
                        Scalar hij = space.h(rest[i], rest[j]);
                        if (hij.is_zero()) continue;
                        // h(w_i + w_j c, w_i + w_j c) = Tr(h(w_i, w_j) c); pick the
                        // first c making the trace nonzero.
                        if (!F->galois()) {
                            rest[i] = rest[i] + rest[j]; // trace is 2 h_ij != 0
                            fixed = true;
                        } else if (F->is_finite()) {
                            for (long ci = 0; ci < F->order() && !fixed; ++ci) {
                                Scalar c = F->element_by_index(ci);
                                if (!(hij * c + (hij * c).conj()).is_zero()) {
                                    rest[i] = rest[i] + scaled(rest[j], c);
                                    fixed = true;
                                }
                            }
                        } else {
                            for (const Scalar& c : {F->one(), F->generator()}) {
                                if (!(hij * c + (hij * c).conj()).is_zero()) {
                                    rest[i] = rest[i] + scaled(rest[j], c);
                                    fixed = true;
                                    break;
                                }
                            }
                        }
                    }
            } else {
                // char 2, sigma = id: the stuck block is alternating; recombine
                // with the last pivot u via v1 := y + u.
                if (pivots.empty())
                    throw std::domain_error("orthogonal_basis: form is alternating, not diagonalizable");
                Vec u = pivots.back();
                pivots.pop_back();
                int xi = -1, yi = -1;
                for (std::size_t i = 0; i < rest.size() && xi < 0; ++i)
                    for (std::size_t j = i + 1; j < rest.size() && xi < 0; ++j)
                        if (!space.h(rest[i], rest[j]).is_zero()) {
                            xi = static_cast<int>(i);
                            yi = static_cast<int>(j);
                        }
                if (xi < 0)
                    throw std::domain_error("orthogonal_basis: degenerate alternating block");
                Vec x = rest[xi], y = rest[yi];
                // normalize h(x, y) = 1
                x = scaled(x, space.h(y, x).inverse());
                Scalar c = space.h(u, u);
                Vec v1 = y + u;
                Vec v2 = scaled(x, c) + v1;
                Vec v3 = u + scaled(x, c);
                rest.erase(rest.begin() + yi);
                rest.erase(rest.begin() + xi);
                for (auto& w : rest) {
                    w = reduce_against(v1, w);
                    w = reduce_against(v2, w);
                    w = reduce_against(v3, w);
                }
                pivots.push_back(normalize_basis_vector(F, v1));
                pivots.push_back(normalize_basis_vector(F, v2));
                pivots.push_back(normalize_basis_vector(F, v3));
                continue;
            }
            if (!fixed) throw std::domain_error("orthogonal_basis: cannot find anisotropic vector");
            continue;
        }
        Vec p = rest[static_cast<std::size_t>(pick)];
        rest.erase(rest.begin() + pick);
        for (auto& w : rest) w = reduce_against(p, w);
        pivots.push_back(normalize_basis_vector(F, p));
    }

    Mat B = mat_from_cols(F, pivots);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < pivots.size(); ++j) {
            Scalar v = space.h(pivots[i], pivots[j]);
            if (i == j ? v.is_zero() : !v.is_zero())
                throw std::logic_error("orthogonal_basis: postcondition failed");
        }
    return B;
}

Scalar discriminant(const HermitianSpace& space)
{
    return norm_class(space.gram().det());
}

namespace {

// p-adic anisotropy certificate for a diagonal rational form: the form is
// anisotropic over Q_p when both unit parts (even and odd valuation) reduce
// to anisotropic forms over F_p. Valid for odd p not dividing the units.
bool anisotropic_mod_p(const std::vector<Integer>& diag, long p)
{
    std::vector<long> unit_even, unit_odd;
    for (Integer d : diag) {
        long v = 0;
        while (d % p == 0) {
            d /= p;
            ++v;
        }
        long u = static_cast<long>(d % p);
        if (u < 0) u += p;
        (v % 2 == 0 ? unit_even : unit_odd).push_back(u);
    }
    auto aniso_over_fp = [p](const std::vector<long>& us) {
        if (us.size() >= 3) return false; // Chevalley-Warning
        if (us.size() <= 1) return true;
        // <a, b> anisotropic iff -ab is a non-residue
        long m = ((-us[0] * us[1]) % p + p) % p;
        for (long x = 0; x < p; ++x)
            if ((x * x) % p == m) return false;
        return true;
    };
    return aniso_over_fp(unit_even) && aniso_over_fp(unit_odd);
}

std::optional<long> rational_anisotropy_certificate(const HermitianSpace& space)
{
    const Mat& H = space.gram();
    std::vector<Integer> diag;
    for (int i = 0; i < H.rows(); ++i) {
        for (int j = 0; j < H.cols(); ++j)
            if (i != j && !H.at(i, j).is_zero()) return std::nullopt; // diagonal forms only
        Rational d = H.at(i, i).rat0();
        diag.push_back(boost::multiprecision::numerator(d) * boost::multiprecision::denominator(d));
    }
    // candidate moduli: odd primes dividing some entry, plus a few small ones
    std::vector<long> candidates{3, 5, 7, 11, 13};
    for (const auto& d : diag) {
        Integer sf = squarefree_part(d);
        for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L})
            if (sf % p == 0 && std::find(candidates.begin(), candidates.end(), p) == candidates.end())
                candidates.push_back(p);
    }
    for (long p : candidates)
        if (anisotropic_mod_p(diag, p)) return p;
    return std::nullopt;
}

std::vector<Vec> all_nonzero_vectors(const FieldPtr& F, int n)
{
    std::vector<Vec> out;
    long q = F->order();
    std::vector<long> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        Vec v;
        bool nonzero = false;
        for (long i : idx) {
            v.push_back(F->element_by_index(i));
            nonzero = nonzero || i != 0;
        }
        if (nonzero) out.push_back(v);
        int k = 0;
        while (k < n && ++idx[static_cast<std::size_t>(k)] == q) idx[static_cast<std::size_t>(k++)] = 0;
        if (k == n) break;
    }
    return out;
}

} // namespace

std::vector<Vec> projective_points(const FieldPtr& F, int n)
{
    std::vector<Vec> out;
    for (auto& v : all_nonzero_vectors(F, n)) {
        bool lead_one = false;
        for (const auto& x : v) {
            if (x.is_zero()) continue;
            lead_one = x.is_one();
            break;
        }
        if (lead_one) out.push_back(v);
    }
    return out;
}

std::vector<Vec> isotropic_points(const HermitianSpace& space)
{
    std::vector<Vec> out;
    for (auto& v : projective_points(space.field(), space.dim()))
        if (space.h(v, v).is_zero()) out.push_back(v);
    return out;
}

WittIndex witt_index(const HermitianSpace& space)
{
    const FieldPtr& F = space.field();
    const int n = space.dim();
    const int max_index = n / 2;

    if (F->is_finite()) {
        auto iso = isotropic_points(space);
        WittIndex w;
        if (iso.empty()) return w; // 0, exact
        w.value = 1;
        if (max_index >= 2) {
            for (std::size_t i = 0; i < iso.size() && w.value < 2; ++i)
                for (std::size_t j = i + 1; j < iso.size(); ++j) {
                    if (!space.h(iso[i], iso[j]).is_zero()) continue;
                    // distinct projective points spanning a totally isotropic plane
                    w.value = 2;
                    break;
                }
        }
        return w;
    }

    if (F->kind() != FieldKind::Rationals)
        return WittIndex{0, false, 0};

    if (auto p = rational_anisotropy_certificate(space))
        return WittIndex{0, true, *p};

    // bounded search for isotropic vectors with small integer entries
    WittIndex w{0, false, 0};
    std::vector<Vec> found;
    const long B = 12;
    std::vector<long> idx(static_cast<std::size_t>(n), -B);
    while (true) {
        Vec v;
        bool nonzero = false;
        for (long i : idx) {
            v.push_back(F->from_int(i));
            nonzero = nonzero || i != 0;
        }
        if (nonzero && space.h(v, v).is_zero()) found.push_back(v);
        int k = 0;
        while (k < n && ++idx[static_cast<std::size_t>(k)] > B) idx[static_cast<std::size_t>(k++)] = -B;
        if (k == n) break;
        if (found.size() > 400) break;
    }
    if (!found.empty()) {
        w.value = 1;
        for (std::size_t i = 0; i < found.size() && w.value < max_index; ++i)
            for (std::size_t j = i + 1; j < found.size(); ++j)
                if (space.h(found[i], found[j]).is_zero()) {
                    Mat span = mat_from_cols(F, {found[i], found[j]});
                    if (span.rank() == 2) {
                        w.value = 2;
                        break;
                    }
                }
        w.exact = w.value == max_index; // an upper bound would need an anisotropy proof
    }
    return w;
}

MapClass classify_map(const HermitianSpace& space, const SemiMap& m)
{
    // h(m v, m w) = sigma(v)^T [sigma(A)^T H A] w (companion id) resp.
    // v^T [sigma(A)^T H A] sigma(w); both reduce to sigma(A)^T H A = r phi(H).
    Mat lhs = m.A.conj_transpose() * space.gram() * m.A;
    Mat target = m.conj_companion ? space.gram().conj() : space.gram();
    Scalar r;
    for (int i = 0; i < lhs.rows() && !r.valid(); ++i)
        for (int j = 0; j < lhs.cols(); ++j)
            if (!target.at(i, j).is_zero()) {
                r = lhs.at(i, j) / target.at(i, j);
                break;
            }
    if (!r.valid() || r.is_zero()) return std::monostate{};
    if (!(lhs == target.scaled(r))) return std::monostate{};
    if (m.conj_companion) return SemiSimilitude{r};
    if (r.is_one()) return Isometry{};
    return Similitude{r};
}

bool is_isometry(const HermitianSpace& space, const SemiMap& m)
{
    return std::holds_alternative<Isometry>(classify_map(space, m));
}

Scalar similitude_multiplier(const HermitianSpace& space, const SemiMap& m)
{
    MapClass c = classify_map(space, m);
    if (std::holds_alternative<Isometry>(c)) return space.field()->one();
    if (auto* s = std::get_if<Similitude>(&c)) return s->multiplier;
    if (auto* s = std::get_if<SemiSimilitude>(&c)) return s->multiplier;
    throw std::domain_error("similitude_multiplier: map does not preserve h up to scalar");
}

SemiMap eichler(const HermitianSpace& space, const Vec& z, const Vec& w, const Scalar& p)
{
    if (!space.h(z, z).is_zero()) throw std::invalid_argument("eichler: h(z,z) != 0");
    if (!space.h(z, w).is_zero()) throw std::invalid_argument("eichler: h(z,w) != 0");
    if (!(p.conj() + p == space.h(w, w)))
        throw std::invalid_argument("eichler: sigma(p) + p != h(w,w)");
    const FieldPtr& F = space.field();
    const int n = space.dim();
    SemiMap m{Mat(F, n, n), false};
    for (int j = 0; j < n; ++j) {
        Vec x = unit_vec(F, n, j);
        Vec img = x + scaled(z, space.h(w, x)) - scaled(w + scaled(z, p), space.h(z, x));
        m.A.set_col(j, img);
    }
    return m;
}

SemiMap reflection(const HermitianSpace& space, const Vec& v)
{
    if (space.field()->galois() || space.field()->characteristic() == 2)
        throw std::invalid_argument("reflection: needs sigma = id and char != 2");
    Scalar c = space.h(v, v);
    if (c.is_zero()) throw std::invalid_argument("reflection: isotropic vector");
    const FieldPtr& F = space.field();
    const int n = space.dim();
    SemiMap m{Mat(F, n, n), false};
    Scalar two = F->from_int(2);
    for (int j = 0; j < n; ++j) {
        Vec x = unit_vec(F, n, j);
        Vec img = x - scaled(v, two * space.h(v, x) / c);
        m.A.set_col(j, img);
    }
    return m;
}

} // namespace hodge
