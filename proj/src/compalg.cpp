#include "hodge/compalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hodge {

CompositionAlgebra CompositionAlgebra::base(FieldPtr R)
{
    CompositionAlgebra a;
    a.R_ = std::move(R);
    a.base_kind_ = BaseKind::Unit;
    a.dim_ = a.base_dim_ = 1;
    return a;
}

CompositionAlgebra CompositionAlgebra::quad_sqrt(FieldPtr R, Scalar d)
{
    CompositionAlgebra a;
    a.R_ = std::move(R);
    a.base_kind_ = BaseKind::QuadSqrt;
    a.base_scalar_ = std::move(d);
    a.dim_ = a.base_dim_ = 2;
    return a;
}

CompositionAlgebra CompositionAlgebra::quad_artin(FieldPtr R, Scalar r)
{
    CompositionAlgebra a;
    a.R_ = std::move(R);
    a.base_kind_ = BaseKind::QuadArtin;
    a.base_scalar_ = std::move(r);
    a.dim_ = a.base_dim_ = 2;
    return a;
}

CompositionAlgebra CompositionAlgebra::doubled(const Scalar& c) const
{
    if (dim_ >= 8) throw std::invalid_argument("CompositionAlgebra: cannot double beyond octonions");
    if (c.is_zero()) throw std::invalid_argument("CompositionAlgebra: doubling scalar must be nonzero");
    CompositionAlgebra a = *this;
    a.doublings_.push_back(c);
    a.dim_ *= 2;
    return a;
}

CompositionAlgebra::Elem CompositionAlgebra::one() const
{
    Elem e = zero();
    e[0] = R_->one();
    return e;
}

CompositionAlgebra::Elem CompositionAlgebra::mul_level(const Elem& a, const Elem& b, int dim) const
{
    if (dim == base_dim_) {
        switch (base_kind_) {
        case BaseKind::Unit:
            return Elem{a[0] * b[0]};
        case BaseKind::QuadSqrt:
            return Elem{a[0] * b[0] + base_scalar_ * a[1] * b[1], a[0] * b[1] + a[1] * b[0]};
        case BaseKind::QuadArtin: // t^2 = t - r
            return Elem{a[0] * b[0] - base_scalar_ * a[1] * b[1], a[0] * b[1] + a[1] * b[0] + a[1] * b[1]};
        }
    }
    int h = dim / 2;
    int level = 0;
    for (int d = base_dim_ * 2; d < dim; d *= 2) ++level;
    const Scalar& gamma = doublings_[static_cast<std::size_t>(level)];
    auto lo = [&](const Elem& v) { return Elem(v.begin(), v.begin() + h); };
    auto hi = [&](const Elem& v) { return Elem(v.begin() + h, v.begin() + dim); };
    Elem a1 = lo(a), a2 = hi(a), b1 = lo(b), b2 = hi(b);
    // (a1, a2)(b1, b2) = (a1 b1 + gamma conj(b2) a2, b2 a1 + a2 conj(b1))
    Elem first = mul_level(a1, b1, h);
    Elem gterm = mul_level(conj_level(b2, h), a2, h);
    for (int i = 0; i < h; ++i) first[static_cast<std::size_t>(i)] += gamma * gterm[static_cast<std::size_t>(i)];
    Elem second = mul_level(b2, a1, h);
    Elem sterm = mul_level(a2, conj_level(b1, h), h);
    for (int i = 0; i < h; ++i) second[static_cast<std::size_t>(i)] += sterm[static_cast<std::size_t>(i)];
    Elem out;
    out.reserve(static_cast<std::size_t>(dim));
    out.insert(out.end(), first.begin(), first.end());
    out.insert(out.end(), second.begin(), second.end());
    return out;
}

CompositionAlgebra::Elem CompositionAlgebra::conj_level(const Elem& a, int dim) const
{
    if (dim == base_dim_) {
        switch (base_kind_) {
        case BaseKind::Unit:
            return a;
        case BaseKind::QuadSqrt:
            return Elem{a[0], -a[1]};
        case BaseKind::QuadArtin: // conj(t) = 1 - t
            return Elem{a[0] + a[1], -a[1]};
        }
    }
    int h = dim / 2;
    Elem first = conj_level(Elem(a.begin(), a.begin() + h), h);
    Elem out;
    out.reserve(static_cast<std::size_t>(dim));
    out.insert(out.end(), first.begin(), first.end());
    for (int i = h; i < dim; ++i) out.push_back(-a[static_cast<std::size_t>(i)]);
    return out;
}

CompositionAlgebra::Elem CompositionAlgebra::mul(const Elem& a, const Elem& b) const
{
    if (static_cast<int>(a.size()) != dim_ || static_cast<int>(b.size()) != dim_)
        throw std::invalid_argument("CompositionAlgebra::mul: wrong element size");
    return mul_level(a, b, dim_);
}

CompositionAlgebra::Elem CompositionAlgebra::conj(const Elem& a) const { return conj_level(a, dim_); }

Scalar CompositionAlgebra::norm(const Elem& a) const
{
    // recursive N((x, y)) = N(x) - gamma N(y)
    std::function<Scalar(const Elem&, int)> go = [&](const Elem& v, int dim) -> Scalar {
        if (dim == base_dim_) {
            switch (base_kind_) {
            case BaseKind::Unit:
                return v[0] * v[0];
            case BaseKind::QuadSqrt:
                return v[0] * v[0] - base_scalar_ * v[1] * v[1];
            case BaseKind::QuadArtin:
                return v[0] * v[0] + v[0] * v[1] + base_scalar_ * v[1] * v[1];
            }
            throw std::logic_error("unreachable");
        }
        int h = dim / 2;
        int level = 0;
        for (int d = base_dim_ * 2; d < dim; d *= 2) ++level;
        return go(Elem(v.begin(), v.begin() + h), h) -
               doublings_[static_cast<std::size_t>(level)] * go(Elem(v.begin() + h, v.begin() + dim), h);
    };
    return go(a, dim_);
}

Scalar CompositionAlgebra::trace(const Elem& a) const
{
    Elem s = conj(a);
    return a[0] + s[0]; // x + conj(x) is a multiple of 1
}

Scalar CompositionAlgebra::norm_polar(const Elem& a, const Elem& b) const
{
    Elem sum = a;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b[i];
    return norm(sum) - norm(a) - norm(b);
}

Vec CompositionAlgebra::norm_diagonal() const
{
    Vec d;
    for (int i = 0; i < dim_; ++i) d.push_back(norm(basis(i)));
    return d;
}

std::string CompositionAlgebra::tree_str() const
{
    std::ostringstream os;
    switch (base_kind_) {
    case BaseKind::Unit: os << R_->name(); break;
    case BaseKind::QuadSqrt: os << R_->name() << "[X]/(X^2-(" << base_scalar_.str() << "))"; break;
    case BaseKind::QuadArtin: os << R_->name() << "[X]/(X^2-X+(" << base_scalar_.str() << "))"; break;
    }
    for (const auto& c : doublings_) os << " -> double(" << c.str() << ")";
    return os.str();
}

namespace {

Scalar fixed(const Scalar& s) { return s.to_fixed_field(); }

void check_octonion_normalization(const Vec& diag, const FieldPtr& F)
{
    if (!diag[0].is_one())
        throw std::invalid_argument("octonion: normalization h(v1,v1) = 1 violated");
    if (!(diag[3] == diag[1] * diag[2]))
        throw std::invalid_argument("octonion: normalization h(v4,v4) = h(v2,v2) h(v3,v3) violated");
    (void)F;
}

} // namespace

Vec OctonionFromHermitian::embed(const Vec& v) const
{
    const FieldPtr& F = orth_basis.field();
    FieldPtr R = F->fixed_field();
    Vec z = *orth_basis.solve(v);
    Scalar two = F->from_int(2);
    Vec out;
    out.resize(8, R->zero());
    for (int k = 0; k < 4; ++k) {
        Scalar a = (z[static_cast<std::size_t>(k)] + z[static_cast<std::size_t>(k)].conj()) / two;
        Scalar bq = (z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(k)].conj()) / (two * q);
        out[static_cast<std::size_t>(k)] = fixed(a);
        out[static_cast<std::size_t>(k + 4)] = fixed(bq);
    }
    return out;
}

OctonionFromHermitian octonion_from_hermitian(const HermitianSpace& space, const Scalar& q)
{
    const FieldPtr& F = space.field();
    if (!F->galois()) throw std::invalid_argument("octonion_from_hermitian: needs sigma != id");
    if (F->characteristic() == 2) throw std::invalid_argument("octonion_from_hermitian: needs char != 2");
    if (q.is_zero() || !(q.conj() == -q))
        throw std::invalid_argument("octonion_from_hermitian: q must be nonzero with sigma(q) = -q");
    KAlgebra K = KAlgebra::from_space(space, TopForm{F->one()}, 2);
    if (!K.split()) throw std::invalid_argument("octonion_from_hermitian: K must be split");

    OctonionFromHermitian out;
    out.orth_basis = orthogonal_basis(space);
    out.q = q;
    Vec diag;
    for (int i = 0; i < 4; ++i) diag.push_back(space.h(out.orth_basis.col(i), out.orth_basis.col(i)));
    check_octonion_normalization(diag, F);

    FieldPtr R = F->fixed_field();
    Scalar c2 = fixed(diag[1]), c3 = fixed(diag[2]);
    CompositionAlgebra H = CompositionAlgebra::base(R).doubled(-c2).doubled(-c3);
    out.C = H.doubled(fixed(q * q));

    for (int k : {0}) {
        out.f_copy.push_back(out.C.basis(k));
        out.f_copy.push_back(out.C.basis(k + 4));
    }
    for (int k : {1, 2, 3}) {
        out.fperp_basis.push_back(out.C.basis(k));
        out.fperp_space.push_back(out.orth_basis.col(k));
    }
    for (int k : {1, 2, 3}) {
        out.fperp_basis.push_back(out.C.basis(k + 4));
        out.fperp_space.push_back(scaled(out.orth_basis.col(k), q));
    }
    return out;
}

Vec OctonionChar2::embed(const Vec& v) const
{
    const FieldPtr& F = orth_basis.field();
    Vec z = *orth_basis.solve(v);
    auto sol = embed_matrix.solve(restrict_scalars(F, z));
    if (!sol) throw std::logic_error("OctonionChar2::embed: plane basis incomplete");
    return *sol;
}

OctonionChar2 octonion_char2(const HermitianSpace& space, const Scalar& u)
{
    const FieldPtr& F = space.field();
    if (!F->galois() || F->characteristic() != 2)
        throw std::invalid_argument("octonion_char2: needs sigma != id in characteristic 2");
    if (!(u + u.conj() == F->one()))
        throw std::invalid_argument("octonion_char2: u must satisfy u + sigma(u) = 1");

    OctonionChar2 out;
    out.orth_basis = orthogonal_basis(space);
    out.u = u;
    Vec diag;
    for (int i = 0; i < 4; ++i) diag.push_back(space.h(out.orth_basis.col(i), out.orth_basis.col(i)));
    check_octonion_normalization(diag, F);

    FieldPtr R = F->fixed_field();
    Scalar c2 = fixed(diag[1]), c3 = fixed(diag[2]);
    out.r = fixed(u.conj() * u + F->embed(c2));
    out.C = CompositionAlgebra::quad_artin(R, out.r).doubled(c2).doubled(c3);

    const Mat& Cb = out.orth_basis;
    Vec v1 = Cb.col(0), v2 = Cb.col(1), v3 = Cb.col(2), v4 = Cb.col(3);
    out.planes = {
        {v1, scaled(v1, u) + v2},
        {v2, scaled(v1, F->embed(c2)) + scaled(v2, u)},
        {v3, scaled(v3, u) + v4},
        {v4, scaled(v3, F->embed(c2)) + scaled(v4, u)},
    };
    // columns: octonion basis order e0..e7 matched to the plane bases
    std::vector<Vec> cols;
    for (const auto& plane : out.planes)
        for (const auto& w : plane) cols.push_back(restrict_scalars(F, *Cb.solve(w)));
    out.embed_matrix = mat_from_cols(R, cols);
    if (out.embed_matrix.rank() != 8) throw std::logic_error("octonion_char2: planes do not span V");
    return out;
}

SimilarityResult similar_forms(const Vec& f1, const Vec& f2)
{
    SimilarityResult res;
    if (f1.size() != f2.size() || f1.empty()) {
        res.status = Tri::No;
        return res;
    }
    const FieldPtr& F = f1[0].field();
    for (const auto& d : f1)
        if (d.is_zero()) throw std::invalid_argument("similar_forms: degenerate diagonal");
    auto prod = [&](const Vec& f) {
        Scalar p = F->one();
        for (const auto& d : f) p *= d;
        return p;
    };
    if (F->is_finite()) {
        if (F->characteristic() == 2) {
            // perfect base field: every diagonal form is congruent to the identity
            res.status = Tri::Yes;
            res.scale = F->one();
            return res;
        }
        // dimension + discriminant class decide isometry over finite fields
        Scalar d1 = prod(f1), d2 = prod(f2);
        for (long i = 1; i < F->order(); ++i) {
            Scalar s = F->element_by_index(i);
            if (square_class(s.pow(static_cast<long>(f1.size())) * d1) == square_class(d2)) {
                res.status = Tri::Yes;
                res.scale = s;
                return res;
            }
        }
        res.status = Tri::No;
        return res;
    }
    // Q: certify via square-class multiset match for candidate scales
    std::vector<Scalar> candidates{F->one(), -F->one()};
    for (const auto& a : f2)
        for (const auto& b : f1) candidates.push_back(a / b);
    auto classes = [&](const Vec& f, const Scalar& s) {
        std::vector<std::string> cl;
        for (const auto& d : f) cl.push_back(square_class(s * d).str());
        std::sort(cl.begin(), cl.end());
        return cl;
    };
    auto target = classes(f2, F->one());
    for (const auto& s : candidates)
        if (classes(f1, s) == target) {
            res.status = Tri::Yes;
            res.scale = s;
            return res;
        }
    res.status = Tri::Unknown;
    return res;
}

} // namespace hodge
