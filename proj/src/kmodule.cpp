#include "hodge/kmodule.hpp"

namespace hodge {

Vec restrict_scalars(const FieldPtr& F, const Vec& v)
{
    if (!F->galois()) return v;
    FieldPtr R = F->fixed_field();
    Vec out;
    out.reserve(v.size() * 2);
    for (const auto& x : v) {
        if (F->is_finite()) {
            out.push_back(R->from_int(x.coeff0()));
            out.push_back(R->from_int(x.coeff1()));
        } else {
            out.push_back(R->from_rational(x.rat0()));
            out.push_back(R->from_rational(x.rat1()));
        }
    }
    return out;
}

KModule::KModule(HermitianSpace space, TopForm b, int deg)
    : space_(std::move(space)), b_(b), deg_(deg),
      C_(orthogonal_basis(space_)),
      J_(HodgeOperator::build(space_, b, deg)),
      K_(KAlgebra::from_space(space_, b, deg))
{
    const int n = space_.dim();
    if (n != 2 * deg_) throw std::invalid_argument("KModule: needs dim V = 2 deg");
    const FieldPtr& F = space_.field();
    for (unsigned m : wedge_tuples(n, deg_)) {
        if (!(m & 1u)) continue; // tuples containing index 1
        b1_masks_.push_back(m);
        std::vector<Vec> cols;
        for (int i = 0; i < n; ++i)
            if (m & (1u << i)) cols.push_back(C_.col(i));
        b1_vectors_.push_back(ExtVector::wedge_of(F, cols));
    }
    // expansion matrix [w_gamma | J(w_gamma)]
    int m = rank();
    Mat E(F, 2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        E.set_col(i, b1_vectors_[static_cast<std::size_t>(i)].as_vec());
        E.set_col(m + i, J_.apply(b1_vectors_[static_cast<std::size_t>(i)]).as_vec());
    }
    expand_inv_ = E.inverse(); // free-module property: columns form an F-basis
}

std::vector<KElement> KModule::expand(const ExtVector& X) const
{
    if (X.degree() != deg_) throw std::invalid_argument("KModule::expand: wrong degree");
    Vec c = expand_inv_ * X.as_vec();
    int m = rank();
    std::vector<KElement> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) out.push_back(K_.element(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(m + i)]));
    return out;
}

ExtVector KModule::assemble(const std::vector<KElement>& coords) const
{
    ExtVector X(space_.field(), space_.dim(), deg_);
    for (int i = 0; i < rank(); ++i) X = X + k_action(b1_vectors_[static_cast<std::size_t>(i)], coords[static_cast<std::size_t>(i)]);
    return X;
}

ExtVector KModule::k_action(const ExtVector& X, const KElement& k) const
{
    return X.scaled(k.x0()) + J_.apply(X).scaled(k.x1());
}

KElement KModule::g(const ExtVector& u, const ExtVector& v) const
{
    Scalar hx = ext_h(space_, deg_, u, v);
    Scalar pf = pfaffian(b_, u, v);
    return K_.element(hx, deg_ % 2 == 0 ? pf : -pf);
}

KElement KModule::g_two_path(const ExtVector& u, const ExtVector& v) const
{
    KElement second = g(u, v);
    // first expression: h-induced(u, v) + h-induced(u, v j) j^{-1}
    Scalar c = ext_h(space_, deg_, u, J_.apply(v));
    KElement first = K_.element(second.x0(), c.conj() / K_.delta());
    if (!(first == second)) throw std::logic_error("g_two_path: defining expressions disagree");
    return second;
}

std::vector<std::vector<KElement>> KModule::g_gram() const
{
    int m = rank();
    std::vector<std::vector<KElement>> G(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            G[static_cast<std::size_t>(i)].push_back(
                g(b1_vectors_[static_cast<std::size_t>(i)], b1_vectors_[static_cast<std::size_t>(j)]));
    return G;
}

KElement KModule::Eta::psi(const KElement& k) const
{
    const KAlgebra& K = k.algebra();
    Scalar x0 = conj_companion ? k.x0().conj() : k.x0();
    Scalar x1 = conj_companion ? k.x1().conj() : k.x1();
    return K.element(x0, t * x1);
}

KModule::Eta KModule::eta(const SemiMap& m) const
{
    MapClass cls = classify_map(space_, m);
    if (std::holds_alternative<std::monostate>(cls))
        throw std::invalid_argument("eta: map is not a semi-similitude of h");

    Eta out;
    out.conj_companion = m.conj_companion;
    out.t = conjugate_scalar(space_, b_, deg_, m);
    SemiMap ext = ext_power_map(m, deg_);
    out.f_matrix = ext.A;

    int r = rank();
    out.mat.resize(static_cast<std::size_t>(r));
    for (int bcol = 0; bcol < r; ++bcol) {
        ExtVector img = apply_ext(ext, b1_vectors_[static_cast<std::size_t>(bcol)]);
        auto coords = expand(img);
        for (int a = 0; a < r; ++a) out.mat[static_cast<std::size_t>(a)].push_back(coords[static_cast<std::size_t>(a)]);
    }

    // K-semilinearity on the generator j: eta(X j) = eta(X) psi(j)
    KElement psi_j = out.psi(K_.j());
    for (int bcol = 0; bcol < r; ++bcol) {
        ExtVector lhs = apply_ext(ext, J_.apply(b1_vectors_[static_cast<std::size_t>(bcol)]));
        std::vector<KElement> rhs;
        for (int a = 0; a < r; ++a) rhs.push_back(out.mat[static_cast<std::size_t>(a)][static_cast<std::size_t>(bcol)] * psi_j);
        if (!(lhs == assemble(rhs))) throw std::logic_error("eta: image is not K-semilinear");
    }

    // semi-similitude property of g with a single K-valued multiplier
    KElement rho;
    for (int i = 0; i < r && !rho.valid(); ++i) {
        KElement gii = g(b1_vectors_[static_cast<std::size_t>(i)], b1_vectors_[static_cast<std::size_t>(i)]);
        if (!gii.invertible()) continue;
        ExtVector ei = apply_ext(ext, b1_vectors_[static_cast<std::size_t>(i)]);
        rho = g(ei, ei) * out.psi(gii).inverse();
    }
    if (!rho.valid()) throw std::logic_error("eta: no invertible diagonal g-value");
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            ExtVector ei = apply_ext(ext, b1_vectors_[static_cast<std::size_t>(i)]);
            ExtVector ej = apply_ext(ext, b1_vectors_[static_cast<std::size_t>(j)]);
            KElement lhs = g(ei, ej);
            KElement rhs = rho * out.psi(g(b1_vectors_[static_cast<std::size_t>(i)], b1_vectors_[static_cast<std::size_t>(j)]));
            if (!(lhs == rhs)) throw std::logic_error("eta: image is not a semi-similitude of g");
        }
    out.multiplier = rho;
    return out;
}

namespace {

Scalar canonical_trace_zero(const FieldPtr& F)
{
    if (F->is_finite()) {
        for (long i = 1; i < F->order(); ++i) {
            Scalar c = F->element_by_index(i);
            if ((c + c.conj()).is_zero()) return c;
        }
        throw std::logic_error("canonical_trace_zero: none found");
    }
    return F->generator();
}

Scalar canonical_trace_one(const FieldPtr& F)
{
    if (F->is_finite()) {
        for (long i = 0; i < F->order(); ++i) {
            Scalar c = F->element_by_index(i);
            if (c + c.conj() == F->one()) return c;
        }
        throw std::logic_error("canonical_trace_one: none found");
    }
    return F->from_rational(Rational(1, 2));
}

} // namespace

SplitModule split_submodules(const KModule& km, std::optional<Scalar> mu_in)
{
    const KAlgebra& K = km.algebra();
    const FieldPtr& F = K.field();
    if (!K.delta().is_one())
        throw std::invalid_argument("split_submodules: needs a normalized top form (delta = 1)");

    SplitModule sm;
    sm.R = F->fixed_field();
    const bool char2 = F->characteristic() == 2;
    if (F->galois())
        sm.mu = mu_in ? *mu_in : (char2 ? canonical_trace_one(F) : canonical_trace_zero(F));
    else
        sm.mu = F->one();
    sm.a_ell = km.deg() % 2 == 1 && F->galois() && !char2 ? canonical_trace_zero(F) : F->one();

    KElement z = K.one() + K.j();
    std::vector<ExtVector> reps;
    for (int i = 0; i < km.rank(); ++i) reps.push_back(km.basis_vector(i));
    if (F->galois())
        for (int i = 0; i < km.rank(); ++i) reps.push_back(km.basis_vector(i).scaled(sm.mu));
    for (const auto& X : reps) {
        sm.wz_reps.push_back(X);
        sm.wz_basis.push_back(km.k_action(X, z));
    }
    if (!char2) {
        Scalar half = F->from_int(2).inverse();
        KElement p = K.element(half, half);
        KElement q = K.one() - p;
        for (const auto& X : reps) {
            sm.wp_basis.push_back(km.k_action(X, p));
            sm.w1p_basis.push_back(km.k_action(X, q));
        }
    }
    std::vector<Vec> rcols;
    for (const auto& w : sm.wz_basis) rcols.push_back(restrict_scalars(F, w.as_vec()));
    sm.wz_r_matrix = mat_from_cols(sm.R, rcols);
    if (sm.wz_r_matrix.rank() != static_cast<int>(sm.wz_basis.size()))
        throw std::logic_error("split_submodules: Wz basis is dependent");
    auto pt = sm.wz_r_matrix.transpose().solve(Mat::identity(sm.R, sm.wz_r_matrix.cols()));
    if (!pt) throw std::logic_error("split_submodules: no left inverse");
    sm.wz_proj = pt->transpose();
    return sm;
}

Scalar reduce_r(const KModule& km, const SplitModule& sm, const KElement& k)
{
    int sign = km.deg() % 2 == 0 ? 1 : -1;
    Scalar w = sign > 0 ? k.x0() + k.x1() : k.x0() - k.x1();
    Scalar v = sign > 0 ? w + w.conj() : w - w.conj();
    return (v * sm.a_ell).to_fixed_field();
}

Mat g_o_gram(const KModule& km, const SplitModule& sm)
{
    int d = static_cast<int>(sm.wz_reps.size());
    Mat G(sm.R, d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            G.at(i, j) = reduce_r(km, sm, km.g(sm.wz_reps[static_cast<std::size_t>(i)], sm.wz_reps[static_cast<std::size_t>(j)]));
    return G;
}

Vec wz_coordinates(const KModule& km, const SplitModule& sm, const ExtVector& Xz)
{
    Vec rv = restrict_scalars(km.space().field(), Xz.as_vec());
    Vec coords = sm.wz_proj * rv;
    if (!(sm.wz_r_matrix * coords == rv)) throw std::invalid_argument("wz_coordinates: element lies outside Wz");
    return coords;
}

Scalar g_o(const KModule& km, const SplitModule& sm, const ExtVector& Xz, const ExtVector& Yz)
{
    Vec cx = wz_coordinates(km, sm, Xz);
    Vec cy = wz_coordinates(km, sm, Yz);
    Mat G = g_o_gram(km, sm);
    return dot(cx, G * cy);
}

Mat eta_o(const KModule& km, const SplitModule& sm, const SemiMap& m)
{
    SemiMap ext = ext_power_map(m, km.deg());
    int d = static_cast<int>(sm.wz_basis.size());
    Mat M(sm.R, d, d);
    for (int j = 0; j < d; ++j) {
        ExtVector img = apply_ext(ext, sm.wz_basis[static_cast<std::size_t>(j)]);
        M.set_col(j, wz_coordinates(km, sm, img)); // throws when Wz is not invariant
    }
    return M;
}

namespace {

std::optional<Vec> find_isotropic_vector(const HermitianSpace& sp)
{
    const FieldPtr& F = sp.field();
    if (F->is_finite()) {
        auto iso = isotropic_points(sp);
        if (iso.empty()) return std::nullopt;
        return iso.front();
    }
    const int n = sp.dim();
    const long B = 8;
    std::vector<long> idx(static_cast<std::size_t>(n), -B);
    while (true) {
        Vec v;
        bool nonzero = false;
        for (long i : idx) {
            v.push_back(F->from_int(i));
            nonzero = nonzero || i != 0;
        }
        if (nonzero && sp.h(v, v).is_zero()) return v;
        int k = 0;
        while (k < n && ++idx[static_cast<std::size_t>(k)] > B) idx[static_cast<std::size_t>(k++)] = -B;
        if (k == n) break;
    }
    return std::nullopt;
}

} // namespace

ExtVector isotropy_transfer_witness(const KModule& km)
{
    const HermitianSpace& sp = km.space();
    const FieldPtr& F = sp.field();
    const int n = sp.dim();
    auto x_opt = find_isotropic_vector(sp);
    if (!x_opt) throw std::domain_error("isotropy_transfer_witness: h is anisotropic");
    Vec x = *x_opt;
    if (km.deg() == 1) return ExtVector::wedge_of(F, {x});
    if (km.deg() != 2) throw std::invalid_argument("isotropy_transfer_witness: deg 1 or 2 only");

    // y with h(x, y) = 1
    Mat row(F, 1, n);
    for (int j = 0; j < n; ++j) row.at(0, j) = sp.h(x, unit_vec(F, n, j));
    Vec y = *row.solve(Vec{F->one()});

    Vec v1, v2;
    if (F->characteristic() != 2) {
        // make y isotropic: y -= x c with trace(c) = h(y,y)
        y = y - scaled(x, sp.h(y, y) / F->from_int(2));
        v1 = x + y;
        v2 = x - y;
    } else {
        // make y anisotropic, borrowing an orthogonal anisotropic u if needed
        if (sp.h(y, y).is_zero()) {
            bool fixed = false;
            if (F->is_finite()) {
                Mat perp(F, 1, n);
                for (int j = 0; j < n; ++j) perp.at(0, j) = sp.h(x, unit_vec(F, n, j));
                Mat ker = perp.kernel();
                for (int c = 0; c < ker.cols() && !fixed; ++c)
                    for (long ci = 1; ci < F->order() && !fixed; ++ci) {
                        Vec cand = y + scaled(ker.col(c), F->element_by_index(ci));
                        if (!sp.h(cand, cand).is_zero()) {
                            y = cand;
                            fixed = true;
                        }
                    }
            }
            if (!fixed) {
                // first case of the construction: u anisotropic orthogonal to {x, y}
                Mat perp2(F, 2, n);
                for (int j = 0; j < n; ++j) {
                    perp2.at(0, j) = sp.h(x, unit_vec(F, n, j));
                    perp2.at(1, j) = sp.h(y, unit_vec(F, n, j));
                }
                Mat ker = perp2.kernel();
                bool found = false;
                for (int c = 0; c < ker.cols() && !found; ++c)
                    if (!sp.h(ker.col(c), ker.col(c)).is_zero()) {
                        y = y + ker.col(c);
                        found = true;
                    }
                if (!found) throw std::domain_error("isotropy_transfer_witness: no anisotropic companion");
            }
        }
        v1 = y;
        v2 = scaled(x, sp.h(v1, v1) / sp.h(v1, x)) + v1;
    }

    // v3 orthogonal to v1, v2 and anisotropic
    Mat perp(F, 2, n);
    for (int j = 0; j < n; ++j) {
        perp.at(0, j) = sp.h(v1, unit_vec(F, n, j));
        perp.at(1, j) = sp.h(v2, unit_vec(F, n, j));
    }
    Mat ker = perp.kernel();
    Vec v3;
    for (int c = 0; c < ker.cols() && v3.empty(); ++c)
        if (!sp.h(ker.col(c), ker.col(c)).is_zero()) v3 = ker.col(c);
    if (v3.empty() && ker.cols() >= 2) {
        Vec cand = ker.col(0) + ker.col(1);
        if (!sp.h(cand, cand).is_zero()) v3 = cand;
    }
    if (v3.empty()) throw std::domain_error("isotropy_transfer_witness: no anisotropic v3");

    ExtVector w1 = ExtVector::wedge_of(F, {v1, v3});
    ExtVector w2 = ExtVector::wedge_of(F, {v2, v3});
    ExtVector w = w1 + w2;
    if (!km.g(w, w).is_zero()) throw std::logic_error("isotropy_transfer_witness: construction failed");
    return w;
}

} // namespace hodge
