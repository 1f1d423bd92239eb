#include "hodge/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace hodge {

namespace {

bool is_prime(long n)
{
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long mod_pos(long v, long p)
{
    long r = v % p;
    return r < 0 ? r + p : r;
}

long inv_mod(long a, long p)
{
    long t = 0, nt = 1, r = p, nr = mod_pos(a, p);
    while (nr != 0) {
        long q = r / nr;
        std::swap(t, nt); nt -= q * t;
        std::swap(r, nr); nr -= q * r;
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    return mod_pos(t, p);
}

bool irreducible_quadratic(long b, long c, long p)
{
    for (long x = 0; x < p; ++x)
        if (mod_pos(x * x + b * x + c, p) == 0) return false;
    return true;
}

} // namespace

FieldPtr Field::finite(long order, Involution inv)
{
    long p = 0;
    int deg = 0;
    if (is_prime(order)) {
        p = order;
        deg = 1;
    } else {
        for (long q = 2; q * q <= order; ++q) {
            if (q * q == order && is_prime(q)) {
                p = q;
                deg = 2;
                break;
            }
        }
    }
    if (deg == 0) throw std::invalid_argument("Field::finite: order must be p or p^2");
    if (inv == Involution::Galois && deg == 1)
        throw std::invalid_argument("Field::finite: galois involution needs a quadratic extension");

    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = deg == 1 ? FieldKind::FinitePrime : FieldKind::FiniteQuadratic;
    f->inv_ = inv;
    f->p_ = p;
    f->order_ = order;
    if (deg == 2) {
        bool found = false;
        for (long b = 0; b < p && !found; ++b)
            for (long c = 0; c < p && !found; ++c)
                if (irreducible_quadratic(b, c, p)) {
                    f->mod_b_ = b;
                    f->mod_c_ = c;
                    found = true;
                }
        // t^p by square-and-multiply in F_p[t]/(t^2+bt+c)
        auto mul = [&](std::pair<long, long> x, std::pair<long, long> y) {
            long e0 = mod_pos(-f->mod_c_, p), e1 = mod_pos(-f->mod_b_, p);
            long r0 = mod_pos(x.first * y.first + x.second * y.second % p * e0, p);
            long r1 = mod_pos(x.first * y.second + x.second * y.first + x.second * y.second % p * e1, p);
            return std::pair<long, long>(r0, r1);
        };
        std::pair<long, long> acc(1, 0), base(0, 1);
        long e = p;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        f->tp0_ = acc.first;
        f->tp1_ = acc.second;
    }
    return f;
}

FieldPtr Field::rationals()
{
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::Rationals;
    f->inv_ = Involution::Identity;
    return f;
}

FieldPtr Field::rational_quadratic(const Rational& d, Involution inv)
{
    Integer num = boost::multiprecision::numerator(d);
    Integer den = boost::multiprecision::denominator(d);
    Integer prod = num * den;
    Integer s = boost::multiprecision::sqrt(Integer(boost::multiprecision::abs(prod)));
    if (num > 0 && s * s == prod)
        throw std::invalid_argument("Field::rational_quadratic: d must be a non-square");
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::RationalQuadratic;
    f->inv_ = inv;
    f->d_ = d;
    return f;
}

FieldPtr Field::fixed_field() const
{
    if (!galois()) return shared_from_this();
    if (kind_ == FieldKind::FiniteQuadratic) return Field::finite(p_);
    return Field::rationals();
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long v) const
{
    Scalar s;
    s.field_ = shared_from_this();
    if (is_finite())
        s.c0_ = mod_pos(v, p_);
    else
        s.a_ = v;
    return s;
}

Scalar Field::from_rational(const Rational& a) const
{
    if (is_finite()) {
        Integer num = boost::multiprecision::numerator(a);
        Integer den = boost::multiprecision::denominator(a);
        long n = static_cast<long>(num % p_);
        long dn = static_cast<long>(den % p_);
        Scalar s = from_int(n);
        return s * from_int(dn).inverse();
    }
    Scalar s;
    s.field_ = shared_from_this();
    s.a_ = a;
    return s;
}

Scalar Field::element(long c0, long c1) const
{
    if (!is_finite()) throw std::invalid_argument("Field::element(long,long): finite fields only");
    if (c1 != 0 && kind_ == FieldKind::FinitePrime)
        throw std::invalid_argument("Field::element: no generator in a prime field");
    Scalar s;
    s.field_ = shared_from_this();
    s.c0_ = mod_pos(c0, p_);
    s.c1_ = mod_pos(c1, p_);
    return s;
}

Scalar Field::element(const Rational& a, const Rational& b) const
{
    if (is_finite()) throw std::invalid_argument("Field::element(Rational): rational kinds only");
    if (!b.is_zero() && kind_ == FieldKind::Rationals)
        throw std::invalid_argument("Field::element: no sqrt(d) in Q");
    Scalar s;
    s.field_ = shared_from_this();
    s.a_ = a;
    s.b_ = b;
    return s;
}

Scalar Field::element_by_index(long idx) const
{
    if (!is_finite() || idx < 0 || idx >= order_)
        throw std::invalid_argument("Field::element_by_index: out of range");
    Scalar s;
    s.field_ = shared_from_this();
    s.c0_ = idx % p_;
    s.c1_ = idx / p_;
    return s;
}

Scalar Field::generator() const
{
    if (kind_ == FieldKind::FiniteQuadratic) return element(0, 1);
    if (kind_ == FieldKind::RationalQuadratic) return element(Rational(0), Rational(1));
    throw std::invalid_argument("Field::generator: field has no quadratic generator");
}

std::vector<Scalar> Field::elements() const
{
    if (!is_finite()) throw std::invalid_argument("Field::elements: infinite field");
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(order_));
    for (long i = 0; i < order_; ++i) out.push_back(element_by_index(i));
    return out;
}

Scalar Field::embed(const Scalar& r_elt) const
{
    const Field& rf = *r_elt.field();
    if (same(rf)) return r_elt;
    if (!fixed_field()->same(rf))
        throw std::invalid_argument("Field::embed: element is not from the fixed field");
    if (is_finite()) return element(r_elt.coeff0(), 0);
    return element(r_elt.rat0(), Rational(0));
}

bool Field::same(const Field& other) const noexcept
{
    return kind_ == other.kind_ && inv_ == other.inv_ && order_ == other.order_ && d_ == other.d_;
}

std::string Field::name() const
{
    switch (kind_) {
    case FieldKind::FinitePrime: return "F" + std::to_string(order_);
    case FieldKind::FiniteQuadratic: return "F" + std::to_string(order_);
    case FieldKind::Rationals: return "Q";
    case FieldKind::RationalQuadratic: return "Q(sqrt " + d_.str() + ")";
    }
    return "?";
}

bool Scalar::is_zero() const
{
    if (field_->is_finite()) return c0_ == 0 && c1_ == 0;
    return a_.is_zero() && b_.is_zero();
}

bool Scalar::is_one() const
{
    if (field_->is_finite()) return c0_ == 1 && c1_ == 0;
    return a_ == 1 && b_.is_zero();
}

static void check_same_field(const Scalar& x, const Scalar& y)
{
    if (!x.field()->same(*y.field()))
        throw std::invalid_argument("Scalar: mixed fields in arithmetic");
}

Scalar Scalar::operator+(const Scalar& o) const
{
    check_same_field(*this, o);
    Scalar r;
    r.field_ = field_;
    if (field_->is_finite()) {
        r.c0_ = mod_pos(c0_ + o.c0_, field_->characteristic());
        r.c1_ = mod_pos(c1_ + o.c1_, field_->characteristic());
    } else {
        r.a_ = a_ + o.a_;
        r.b_ = b_ + o.b_;
    }
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const
{
    Scalar r;
    r.field_ = field_;
    if (field_->is_finite()) {
        long p = field_->characteristic();
        r.c0_ = mod_pos(-c0_, p);
        r.c1_ = mod_pos(-c1_, p);
    } else {
        r.a_ = -a_;
        r.b_ = -b_;
    }
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const
{
    check_same_field(*this, o);
    Scalar r;
    r.field_ = field_;
    if (field_->is_finite()) {
        long p = field_->characteristic();
        if (field_->kind() == FieldKind::FinitePrime) {
            r.c0_ = mod_pos(c0_ * o.c0_, p);
        } else {
            long e0 = mod_pos(-field_->modulus_c(), p);
            long e1 = mod_pos(-field_->modulus_b(), p);
            long hi = mod_pos(c1_ * o.c1_, p);
            r.c0_ = mod_pos(c0_ * o.c0_ + hi * e0, p);
            r.c1_ = mod_pos(c0_ * o.c1_ + c1_ * o.c0_ + hi * e1, p);
        }
    } else {
        r.a_ = a_ * o.a_ + field_->quad_d() * b_ * o.b_;
        r.b_ = a_ * o.b_ + b_ * o.a_;
    }
    return r;
}

Scalar Scalar::inverse() const
{
    if (is_zero()) throw std::domain_error("Scalar::inverse: zero");
    Scalar r;
    r.field_ = field_;
    switch (field_->kind()) {
    case FieldKind::FinitePrime:
        r.c0_ = inv_mod(c0_, field_->characteristic());
        break;
    case FieldKind::FiniteQuadratic: {
        // x^{-1} = frob(x) / (x * frob(x)); the denominator lies in F_p.
        Scalar fx = frobenius();
        Scalar n = *this * fx;
        long ninv = inv_mod(n.c0_, field_->characteristic());
        r = fx * field_->from_int(ninv);
        break;
    }
    case FieldKind::Rationals:
        r.a_ = Rational(1) / a_;
        break;
    case FieldKind::RationalQuadratic: {
        Rational n = a_ * a_ - field_->quad_d() * b_ * b_;
        r.a_ = a_ / n;
        r.b_ = -b_ / n;
        break;
    }
    }
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(long e) const
{
    if (e < 0) return inverse().pow(-e);
    Scalar acc = field_->one(), base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool Scalar::operator==(const Scalar& o) const
{
    if (!field_->same(*o.field_)) return false;
    if (field_->is_finite()) return c0_ == o.c0_ && c1_ == o.c1_;
    return a_ == o.a_ && b_ == o.b_;
}

Scalar Scalar::frobenius() const
{
    if (field_->kind() != FieldKind::FiniteQuadratic) return *this;
    // (c0 + c1 t)^p = c0 + c1 t^p
    long p = field_->characteristic();
    Scalar r;
    r.field_ = field_;
    r.c0_ = mod_pos(c0_ + c1_ * field_->tp0_, p);
    r.c1_ = mod_pos(c1_ * field_->tp1_, p);
    return r;
}

Scalar Scalar::conj() const
{
    if (!field_->galois()) return *this;
    if (field_->kind() == FieldKind::FiniteQuadratic) return frobenius();
    Scalar r;
    r.field_ = field_;
    r.a_ = a_;
    r.b_ = -b_;
    return r;
}

Scalar Scalar::norm_to_fixed() const { return (conj() * *this).to_fixed_field(); }

Scalar Scalar::trace_to_fixed() const { return (conj() + *this).to_fixed_field(); }

bool Scalar::in_fixed_field() const { return conj() == *this; }

Scalar Scalar::to_fixed_field() const
{
    if (!field_->galois()) return *this;
    if (!in_fixed_field()) throw std::domain_error("Scalar::to_fixed_field: not sigma-fixed");
    FieldPtr R = field_->fixed_field();
    if (field_->kind() == FieldKind::FiniteQuadratic) {
        if (c1_ != 0) throw std::domain_error("Scalar::to_fixed_field: not in the prime field");
        return R->from_int(c0_);
    }
    return R->from_rational(a_);
}

long Scalar::canonical_index() const
{
    if (!field_->is_finite()) throw std::invalid_argument("Scalar::canonical_index: finite only");
    return c0_ + c1_ * field_->characteristic();
}

std::string Scalar::str() const
{
    std::ostringstream os;
    if (field_->is_finite()) {
        if (c1_ == 0) {
            os << c0_;
        } else {
            if (c1_ == 1) os << "t";
            else os << c1_ << "t";
            if (c0_ != 0) os << "+" << c0_;
        }
    } else {
        if (b_.is_zero()) {
            os << a_;
        } else {
            if (!a_.is_zero()) os << a_ << (b_ > 0 ? "+" : "");
            if (b_ == 1) os << "r";
            else if (b_ == -1) os << "-r";
            else os << b_ << "r";
        }
    }
    return os.str();
}

std::size_t Scalar::hash() const
{
    std::size_t h = std::hash<int>()(static_cast<int>(field_->kind()));
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
    if (field_->is_finite()) {
        mix(static_cast<std::size_t>(canonical_index()));
    } else {
        mix(std::hash<std::string>()(a_.str()));
        mix(std::hash<std::string>()(b_.str()));
    }
    return h;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar Field::parse(const std::string& text) const
{
    // Sums of terms: integer or fraction coefficients, optional generator
    // symbol "t" (finite quadratic) or "r" (rational quadratic).
    std::string in;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) in.push_back(ch);
    if (in.empty()) throw std::invalid_argument("parse: empty scalar");

    Scalar acc = zero();
    std::size_t i = 0;
    while (i < in.size()) {
        int sign = 1;
        while (i < in.size() && (in[i] == '+' || in[i] == '-')) {
            if (in[i] == '-') sign = -sign;
            ++i;
        }
        std::size_t start = i;
        Integer num = 0, den = 1;
        bool have_digits = false;
        while (i < in.size() && std::isdigit(static_cast<unsigned char>(in[i]))) {
            num = num * 10 + (in[i] - '0');
            have_digits = true;
            ++i;
        }
        if (i < in.size() && in[i] == '/') {
            ++i;
            den = 0;
            while (i < in.size() && std::isdigit(static_cast<unsigned char>(in[i]))) {
                den = den * 10 + (in[i] - '0');
                ++i;
            }
            if (den.is_zero()) throw std::invalid_argument("parse: bad fraction");
        }
        if (i < in.size() && in[i] == '*') ++i;
        bool gen = false;
        if (i < in.size() && (in[i] == 't' || in[i] == 'r')) {
            gen = true;
            ++i;
        }
        if (!have_digits && !gen)
            throw std::invalid_argument("parse: bad term in '" + text + "' at " + std::to_string(start));
        if (!have_digits) num = 1;
        Rational coeff = Rational(num, den) * sign;
        Scalar term = from_rational(coeff);
        if (gen) term = term * generator();
        acc = acc + term;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// square / norm class machinery
// ---------------------------------------------------------------------------

Integer squarefree_part(Integer n)
{
    if (n.is_zero()) return 0;
    Integer sign = n < 0 ? -1 : 1;
    n = boost::multiprecision::abs(n);
    Integer out = 1;
    for (Integer d = 2; d * d <= n && d <= 1000000; ++d) {
        while (n % (d * d) == 0) n /= d * d;
        if (n % d == 0) {
            out *= d;
            n /= d;
        }
    }
    Integer s = boost::multiprecision::sqrt(n);
    if (s * s == n) return sign * out;
    return sign * out * n;
}

bool is_square(const Scalar& c)
{
    const Field& F = *c.field();
    if (c.is_zero()) return true;
    switch (F.kind()) {
    case FieldKind::FinitePrime:
    case FieldKind::FiniteQuadratic: {
        if (F.characteristic() == 2) return true; // Frobenius is onto
        long q = F.order();
        return c.pow((q - 1) / 2).is_one();
    }
    case FieldKind::Rationals: {
        if (c.rat0() < 0) return false;
        Integer num = boost::multiprecision::numerator(c.rat0());
        Integer den = boost::multiprecision::denominator(c.rat0());
        Integer sn = boost::multiprecision::sqrt(num), sd = boost::multiprecision::sqrt(den);
        return sn * sn == num && sd * sd == den;
    }
    case FieldKind::RationalQuadratic: {
        // (x + y r)^2 = a + b r  =>  x^2 + d y^2 = a, 2xy = b.
        const Rational& a = c.rat0();
        const Rational& b = c.rat1();
        const Rational& d = F.quad_d();
        Rational disc = a * a - d * b * b;
        auto rat_sqrt = [](const Rational& v) -> std::optional<Rational> {
            if (v < 0) return std::nullopt;
            Integer num = boost::multiprecision::numerator(v);
            Integer den = boost::multiprecision::denominator(v);
            Integer sn = boost::multiprecision::sqrt(num), sd = boost::multiprecision::sqrt(den);
            if (sn * sn == num && sd * sd == den) return Rational(sn, sd);
            return std::nullopt;
        };
        auto e = rat_sqrt(disc);
        if (!e) return false;
        for (int pm : {1, -1}) {
            Rational x2 = (a + *e * pm) / 2;
            auto x = rat_sqrt(x2);
            if (!x) continue;
            if (b.is_zero()) {
                if (x2.is_zero()) {
                    // pure r-multiple: need b/(2x) with x = 0 -> c = d y^2
                    Rational y2 = a / d;
                    if (rat_sqrt(y2)) return true;
                    continue;
                }
                if (*x * *x == a) return true;
                continue;
            }
            if (x->is_zero()) continue;
            Rational y = b / (2 * *x);
            if (*x * *x + d * y * y == a) return true;
        }
        return false;
    }
    }
    return false;
}

std::optional<Scalar> sqrt_exact(const Scalar& c)
{
    const Field& F = *c.field();
    if (F.is_finite()) {
        for (long i = 0; i < F.order(); ++i) {
            Scalar s = F.element_by_index(i);
            if (s * s == c) return s;
        }
        return std::nullopt;
    }
    if (F.kind() == FieldKind::Rationals) {
        if (!is_square(c)) return std::nullopt;
        Integer num = boost::multiprecision::numerator(c.rat0());
        Integer den = boost::multiprecision::denominator(c.rat0());
        return F.from_rational(Rational(boost::multiprecision::sqrt(num), boost::multiprecision::sqrt(den)));
    }
    throw std::invalid_argument("sqrt_exact: unsupported field kind");
}

namespace {

int legendre(Integer a, const Integer& p)
{
    a %= p;
    if (a < 0) a += p;
    if (a.is_zero()) return 0;
    Integer r = boost::multiprecision::powm(a, (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

// valuation and unit part
std::pair<long, Integer> val_unit(Integer a, const Integer& p)
{
    long v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return {v, a};
}

} // namespace

int hilbert_symbol(Integer a, Integer b, const Integer& p)
{
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("hilbert_symbol: zero argument");
    if (p.is_zero()) // real place
        return (a < 0 && b < 0) ? -1 : 1;
    if (p == 2) {
        auto [al, u] = val_unit(a, 2);
        auto [be, v] = val_unit(b, 2);
        auto eps = [](const Integer& x) { return static_cast<long>(((x - 1) / 2) % 2 != 0); };
        auto om = [](const Integer& x) { return static_cast<long>(((x * x - 1) / 8) % 2 != 0); };
        long e = eps(u) * eps(v) + al * om(v) + be * om(u);
        return e % 2 == 0 ? 1 : -1;
    }
    auto [al, u] = val_unit(a, p);
    auto [be, v] = val_unit(b, p);
    int r = 1;
    if (be % 2 != 0) r *= legendre(u, p);
    if (al % 2 != 0) r *= legendre(v, p);
    if ((al % 2 != 0) && (be % 2 != 0) && legendre(-1, p) == -1) r = -r;
    return r;
}

namespace {

// Distinct prime factors by trial division; nullopt when a factor above the
// bound remains.
std::optional<std::vector<Integer>> prime_factors(Integer n, const Integer& bound)
{
    std::vector<Integer> out;
    n = boost::multiprecision::abs(n);
    for (Integer d = 2; d * d <= n && d <= bound; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) {
        if (n > bound * bound) return std::nullopt;
        out.push_back(n);
    }
    return out;
}

} // namespace

Tri is_norm(const Scalar& c)
{
    if (c.is_zero()) throw std::invalid_argument("is_norm: zero input");
    const Field& F = *c.field();
    switch (F.kind()) {
    case FieldKind::FinitePrime:
        return is_square(c) ? Tri::Yes : Tri::No; // sigma = id
    case FieldKind::FiniteQuadratic:
        if (!F.galois()) return is_square(c) ? Tri::Yes : Tri::No;
        // The norm of a finite quadratic extension is onto the fixed field.
        return c.in_fixed_field() ? Tri::Yes : Tri::No;
    case FieldKind::Rationals:
        return is_square(c) ? Tri::Yes : Tri::No;
    case FieldKind::RationalQuadratic: {
        if (!F.galois()) return is_square(c) ? Tri::Yes : Tri::No;
        if (!c.rat1().is_zero()) return Tri::No; // norms lie in Q
        // c is a norm iff x^2 - d y^2 = c has a rational solution, i.e. the
        // Hilbert symbol (c, d)_v is trivial at every place.
        Rational cv = c.rat0();
        Rational dv = F.quad_d();
        Integer cz = squarefree_part(boost::multiprecision::numerator(cv) * boost::multiprecision::denominator(cv));
        Integer dz = squarefree_part(boost::multiprecision::numerator(dv) * boost::multiprecision::denominator(dv));
        auto cf = prime_factors(cz, 1000000);
        auto df = prime_factors(dz, 1000000);
        if (!cf || !df) return Tri::Unknown;
        std::vector<Integer> places{0, 2};
        for (const auto& q : *cf)
            if (q != 2) places.push_back(q);
        for (const auto& q : *df)
            if (q != 2 && std::find(places.begin(), places.end(), q) == places.end()) places.push_back(q);
        for (const auto& v : places)
            if (hilbert_symbol(cz, dz, v) != 1) return Tri::No;
        return Tri::Yes;
    }
    }
    return Tri::Unknown;
}

Scalar square_class(const Scalar& c)
{
    if (c.is_zero()) throw std::invalid_argument("square_class: zero input");
    const Field& F = *c.field();
    switch (F.kind()) {
    case FieldKind::FinitePrime:
    case FieldKind::FiniteQuadratic: {
        if (is_square(c)) return F.one();
        for (long i = 0; i < F.order(); ++i) {
            Scalar s = F.element_by_index(i);
            if (!s.is_zero() && !is_square(s)) return s;
        }
        throw std::logic_error("square_class: no non-square found");
    }
    case FieldKind::Rationals: {
        Integer n = boost::multiprecision::numerator(c.rat0()) * boost::multiprecision::denominator(c.rat0());
        return F.from_rational(Rational(squarefree_part(n)));
    }
    case FieldKind::RationalQuadratic:
        throw std::invalid_argument("square_class: not supported over Q(sqrt d)");
    }
    throw std::logic_error("square_class: unreachable");
}

Scalar norm_class(const Scalar& c)
{
    if (c.is_zero()) throw std::invalid_argument("norm_class: zero input");
    const Field& F = *c.field();
    if (!F.galois()) return square_class(c);
    if (F.kind() == FieldKind::FiniteQuadratic) {
        // surjective norm: every fixed-field unit is a norm
        if (!c.in_fixed_field()) throw std::invalid_argument("norm_class: value not in the fixed field");
        return F.one();
    }
    Tri t = is_norm(c);
    if (t == Tri::Unknown) throw std::domain_error("norm_class: undecided for this input");
    return t == Tri::Yes ? F.one() : c;
}

std::optional<Scalar> norm_preimage(const Scalar& c)
{
    const Field& F = *c.field();
    if (F.is_finite()) {
        for (long i = 0; i < F.order(); ++i) {
            Scalar s = F.element_by_index(i);
            if (s.conj() * s == c) return s;
        }
        return std::nullopt;
    }
    if (!F.galois()) return sqrt_exact(c);
    return std::nullopt; // bounded search not needed by callers over Q(sqrt d)
}

} // namespace hodge
