#include "hodge/hodge_op.hpp"

namespace hodge {

namespace {

struct OrthData
{
    Mat C;          // columns = deterministic orthogonal basis
    Scalar det_h;   // det of the Gram over that basis
    Scalar b_top;   // b(c_1 ^ ... ^ c_n)
    Vec diag;       // h(c_i, c_i)
};

OrthData orth_data(const HermitianSpace& space, const TopForm& b)
{
    OrthData d;
    d.C = orthogonal_basis(space);
    const FieldPtr& F = space.field();
    d.det_h = F->one();
    for (int i = 0; i < space.dim(); ++i) {
        Scalar hii = space.h(d.C.col(i), d.C.col(i));
        d.diag.push_back(hii);
        d.det_h *= hii;
    }
    d.b_top = b.b0 * d.C.det();
    return d;
}

int power_sign(int e) { return e % 2 == 0 ? 1 : -1; }

} // namespace

Scalar hodge_delta(const HermitianSpace& space, const TopForm& b, int deg)
{
    if (b.b0.is_zero()) throw std::invalid_argument("hodge_delta: b must be an isomorphism");
    OrthData od = orth_data(space, b);
    const FieldPtr& F = space.field();
    int n = space.dim();
    Scalar delta = od.det_h / F->embed(od.b_top.norm_to_fixed());
    if (power_sign((n - deg) * deg) < 0) delta = -delta;
    return delta;
}

HodgeOperator HodgeOperator::build(const HermitianSpace& space, const TopForm& b, int deg)
{
    const FieldPtr& F = space.field();
    const int n = space.dim();
    if (deg < 0 || deg > n) throw std::invalid_argument("HodgeOperator: degree out of range");
    if (b.b0.is_zero()) throw std::invalid_argument("HodgeOperator: b must be an isomorphism");

    // (a) closed formula on the orthogonal basis, transported back.
    OrthData od = orth_data(space, b);
    const auto cols_t = wedge_tuples(n, deg);
    const auto rows_t = wedge_tuples(n, n - deg);
    unsigned full = n == 0 ? 0u : (1u << n) - 1u;
    Mat J_orth(F, static_cast<int>(rows_t.size()), static_cast<int>(cols_t.size()));
    for (std::size_t c = 0; c < cols_t.size(); ++c) {
        unsigned gamma = cols_t[c];
        unsigned comp = full & ~gamma;
        Scalar prod = F->one();
        for (int i = 0; i < n; ++i)
            if (gamma & (1u << i)) prod *= od.diag[static_cast<std::size_t>(i)];
        int eps = merge_sign(comp, gamma);
        Scalar val = prod / od.b_top;
        if (eps < 0) val = -val;
        J_orth.at(wedge_index(n, n - deg, comp), static_cast<int>(c)) = val;
    }
    Mat Tin = ext_power_matrix(od.C, deg);
    Mat Tout = ext_power_matrix(od.C, n - deg);
    Mat Ma = Tout * J_orth * Tin.conj().inverse();

    // (b) solve Pf(J(x), -) = (induced h)(x, -) against the Pfaffian Gram.
    Mat P = pfaffian_gram(F, b, n, deg);
    Mat G = ext_h_gram(space, deg);
    Mat Mb = P.transpose().inverse() * G.transpose();

    if (!(Ma == Mb)) throw std::logic_error("HodgeOperator: construction paths disagree");

    HodgeOperator J;
    J.M_ = Ma;
    J.n_ = n;
    J.deg_ = deg;
    return J;
}

ExtVector HodgeOperator::apply(const ExtVector& x) const
{
    if (x.degree() != deg_) throw std::invalid_argument("HodgeOperator::apply: wrong degree");
    return ExtVector::from_vec(x.field(), n_, n_ - deg_, M_ * conj(x.as_vec()));
}

Scalar conjugate_scalar(const HermitianSpace& space, const TopForm& b, int deg, const SemiMap& m)
{
    const FieldPtr& F = space.field();
    const int n = space.dim();
    MapClass cls = classify_map(space, m);
    if (std::holds_alternative<std::monostate>(cls))
        throw std::invalid_argument("conjugate_scalar: map is not a semi-similitude of h");
    Scalar r = similitude_multiplier(space, m);

    // direct conjugation
    HodgeOperator J = HodgeOperator::build(space, b, deg);
    SemiMap Jmap{J.matrix(), F->galois()};
    SemiMap conj_map = ext_power_map(m, n - deg).compose(Jmap).compose(ext_power_map(m, deg).inverse());
    if (conj_map.conj_companion != Jmap.conj_companion)
        throw std::logic_error("conjugate_scalar: companion mismatch");
    Scalar t_direct;
    for (int i = 0; i < J.matrix().rows() && !t_direct.valid(); ++i)
        for (int j = 0; j < J.matrix().cols(); ++j)
            if (!J.matrix().at(i, j).is_zero()) {
                t_direct = conj_map.A.at(i, j) / J.matrix().at(i, j);
                break;
            }
    if (!(conj_map.A == J.matrix().scaled(t_direct)))
        throw std::logic_error("conjugate_scalar: conjugate is not a scalar multiple of J");

    // closed formula; phi(det m') over the orthogonal basis, with the
    // b-quotient taken there as well.
    OrthData od = orth_data(space, b);
    Scalar t_formula;
    Scalar r_pow = r.pow(deg);
    if (!m.conj_companion) {
        t_formula = m.A.det() / r_pow;
    } else {
        Mat Aorth = od.C.inverse() * m.A * od.C.conj();
        Scalar det_prime = Aorth.det();
        t_formula = det_prime.conj() / r_pow * od.b_top / od.b_top.conj();
    }
    if (!(t_formula == t_direct)) throw std::logic_error("conjugate_scalar: formula and conjugation disagree");
    return t_direct;
}

KAlgebra::KAlgebra(FieldPtr F, Scalar delta, int deg) : F_(std::move(F)), delta_(std::move(delta)), parity_(deg % 2)
{
    if (delta_.is_zero()) throw std::invalid_argument("KAlgebra: delta must be nonzero");
}

KAlgebra KAlgebra::from_space(const HermitianSpace& space, const TopForm& b, int deg)
{
    return KAlgebra(space.field(), hodge_delta(space, b, deg), deg);
}

bool KAlgebra::same(const KAlgebra& o) const
{
    return F_->same(*o.F_) && delta_ == o.delta_ && parity_ == o.parity_;
}

KElement KAlgebra::element(Scalar x0, Scalar x1) const { return KElement(*this, std::move(x0), std::move(x1)); }
KElement KAlgebra::scalar(const Scalar& x0) const { return element(x0, F_->zero()); }
KElement KAlgebra::zero() const { return element(F_->zero(), F_->zero()); }
KElement KAlgebra::one() const { return element(F_->one(), F_->zero()); }
KElement KAlgebra::j() const { return element(F_->zero(), F_->one()); }

bool KAlgebra::split() const
{
    Tri t = is_norm(delta_);
    if (t == Tri::Unknown) throw std::domain_error("KAlgebra::split: norm membership undecided");
    return t == Tri::Yes;
}

namespace {

Scalar split_scale(const KAlgebra& K)
{
    auto s = norm_preimage(K.delta());
    if (!s) throw std::domain_error("split_scale: delta is not a norm");
    return *s;
}

} // namespace

std::vector<KElement> KAlgebra::idempotents() const
{
    std::vector<KElement> out;
    if (!split()) return out;
    Scalar s = split_scale(*this);
    Scalar sinv = s.inverse();
    if (!F_->galois()) {
        if (F_->characteristic() == 2) return out; // F[X]/(X^2): none
        Scalar half = F_->from_int(2).inverse();
        out.push_back(element(half, half * sinv));
        out.push_back(element(half, -half * sinv));
        return out;
    }
    // sigma != id: smallest u with u + sigma(u) = 1, idempotent u + j' u
    Scalar u;
    if (F_->is_finite()) {
        for (long i = 0; i < F_->order(); ++i) {
            Scalar c = F_->element_by_index(i);
            if (c + c.conj() == F_->one()) {
                u = c;
                break;
            }
        }
    } else {
        u = F_->from_rational(Rational(1, 2));
    }
    out.push_back(element(u, u * sinv));
    out.push_back(one() - out[0]);
    return out;
}

std::optional<KElement> KAlgebra::nilpotent() const
{
    if (!split()) return std::nullopt;
    Scalar s = split_scale(*this);
    Scalar sinv = s.inverse();
    if (!F_->galois()) {
        if (F_->characteristic() != 2) return std::nullopt; // F x F has none
        return element(F_->one(), sinv);                    // z = 1 + j'
    }
    if (F_->characteristic() == 2) return element(F_->one(), sinv);
    // sigma != id, char != 2: first nonzero trace-zero v gives v + j' v
    if (F_->is_finite()) {
        for (long i = 1; i < F_->order(); ++i) {
            Scalar v = F_->element_by_index(i);
            if ((v + v.conj()).is_zero()) return element(v, v * sinv);
        }
        return std::nullopt;
    }
    Scalar v = F_->generator(); // sigma negates sqrt(d)
    return element(v, v * sinv);
}

std::optional<KElement> KAlgebra::conjugating_element(const KElement& p, const KElement& q) const
{
    if (!F_->is_finite()) return std::nullopt;
    for (long i0 = 0; i0 < F_->order(); ++i0)
        for (long i1 = 0; i1 < F_->order(); ++i1) {
            KElement a = element(F_->element_by_index(i0), F_->element_by_index(i1));
            if (!a.invertible()) continue;
            if (p * a == a * q) return a;
        }
    return std::nullopt;
}

KElement::KElement(KAlgebra alg, Scalar x0, Scalar x1) : alg_(std::move(alg)), x0_(std::move(x0)), x1_(std::move(x1)) {}

static void check_same_algebra(const KElement& a, const KElement& b)
{
    if (!a.algebra().same(b.algebra())) throw std::invalid_argument("KElement: mixed algebras");
}

KElement KElement::operator+(const KElement& o) const
{
    check_same_algebra(*this, o);
    return KElement(alg_, x0_ + o.x0_, x1_ + o.x1_);
}

KElement KElement::operator-(const KElement& o) const
{
    check_same_algebra(*this, o);
    return KElement(alg_, x0_ - o.x0_, x1_ - o.x1_);
}

KElement KElement::operator-() const { return KElement(alg_, -x0_, -x1_); }

KElement KElement::operator*(const KElement& o) const
{
    check_same_algebra(*this, o);
    // (x0 + j x1)(y0 + j y1) = x0 y0 + delta sigma(x1) y1 + j (sigma(x0) y1 + x1 y0)
    return KElement(alg_,
                    x0_ * o.x0_ + alg_.delta() * x1_.conj() * o.x1_,
                    x0_.conj() * o.x1_ + x1_ * o.x0_);
}

bool KElement::operator==(const KElement& o) const
{
    return alg_.same(o.alg_) && x0_ == o.x0_ && x1_ == o.x1_;
}

KElement KElement::kappa() const { return KElement(alg_, x0_.conj(), -x1_); }

KElement KElement::alpha() const
{
    return KElement(alg_, x0_.conj(), alg_.deg_parity() == 0 ? x1_ : -x1_);
}

Scalar KElement::det() const
{
    Scalar n0 = x0_.norm_to_fixed();
    Scalar n1 = x1_.norm_to_fixed();
    Scalar deltaR = alg_.delta().conj() == alg_.delta() ? alg_.delta().to_fixed_field() : alg_.delta();
    return n0 - deltaR * n1;
}

KElement KElement::inverse() const
{
    Scalar d = det();
    if (d.is_zero()) throw std::domain_error("KElement::inverse: zero divisor");
    Scalar dinv = alg_.field()->embed(d).inverse();
    return KElement(alg_, x0_.conj() * dinv, -x1_ * dinv);
}

Mat KElement::matrix_model() const
{
    Mat m(alg_.field(), 2, 2);
    m.at(0, 0) = x0_;
    m.at(0, 1) = alg_.delta() * x1_.conj();
    m.at(1, 0) = x1_;
    m.at(1, 1) = x0_.conj();
    return m;
}

std::string KElement::str() const
{
    if (x1_.is_zero()) return x0_.str();
    std::string s;
    if (!x0_.is_zero()) s = x0_.str() + "+";
    return s + "j*(" + x1_.str() + ")";
}

bool k_det_polarization_degenerate(const KAlgebra& K)
{
    const FieldPtr& F = K.field();
    FieldPtr R = F->fixed_field();
    std::vector<KElement> basis{K.one(), K.j()};
    if (F->galois()) {
        Scalar mu = F->generator();
        basis = {K.one(), K.scalar(mu), K.j(), K.element(F->zero(), mu)};
    }
    int d = static_cast<int>(basis.size());
    Mat gram(R, d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            gram.at(i, j) = (basis[static_cast<std::size_t>(i)] + basis[static_cast<std::size_t>(j)]).det() -
                            basis[static_cast<std::size_t>(i)].det() - basis[static_cast<std::size_t>(j)].det();
    return gram.rank() < d;
}

TopForm normalize_split(const HermitianSpace& space, const TopForm& b, int deg)
{
    Scalar delta = hodge_delta(space, b, deg);
    auto s = norm_preimage(delta);
    if (!s) throw std::domain_error("normalize_split: algebra is not split");
    TopForm nb{b.b0 * *s};
    if (!hodge_delta(space, nb, deg).is_one()) throw std::logic_error("normalize_split: postcondition failed");
    return nb;
}

} // namespace hodge
