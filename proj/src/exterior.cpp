#include "hodge/exterior.hpp"

#include <bit>
#include <map>
#include <sstream>

namespace hodge {

long binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

std::vector<unsigned> wedge_tuples(int n, int deg)
{
    std::vector<unsigned> out;
    if (deg < 0 || deg > n) return out;
    if (deg == 0) {
        out.push_back(0u);
        return out;
    }
    // strictly increasing tuples in lexicographic order
    std::vector<int> t(static_cast<std::size_t>(deg));
    for (int i = 0; i < deg; ++i) t[static_cast<std::size_t>(i)] = i;
    while (true) {
        unsigned m = 0;
        for (int v : t) m |= 1u << v;
        out.push_back(m);
        int i = deg - 1;
        while (i >= 0 && t[static_cast<std::size_t>(i)] == n - deg + i) --i;
        if (i < 0) break;
        ++t[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < deg; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

namespace {

const std::vector<unsigned>& tuple_cache(int n, int deg)
{
    static std::map<std::pair<int, int>, std::vector<unsigned>> cache;
    auto key = std::make_pair(n, deg);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, wedge_tuples(n, deg)).first;
    return it->second;
}

} // namespace

int wedge_index(int n, int deg, unsigned mask)
{
    const auto& tl = tuple_cache(n, deg);
    for (std::size_t i = 0; i < tl.size(); ++i)
        if (tl[i] == mask) return static_cast<int>(i);
    throw std::invalid_argument("wedge_index: mask is not a degree-" + std::to_string(deg) + " tuple");
}

int merge_sign(unsigned a, unsigned b)
{
    if ((a & b) != 0) return 0;
    // inversions: pairs (i in a, j in b) with i > j
    int inv = 0;
    for (unsigned bb = b; bb; bb &= bb - 1) {
        unsigned low = (bb & ~(bb - 1)) - 1; // bits below the lowest set bit of bb
        inv += std::popcount(a & ~low);
    }
    return inv % 2 == 0 ? 1 : -1;
}

ExtVector::ExtVector(FieldPtr F, int n, int deg)
    : F_(std::move(F)), n_(n), deg_(deg),
      coeff_(static_cast<std::size_t>(binomial(n, deg)), F_->zero())
{
    if (deg < 0 || deg > n) throw std::invalid_argument("ExtVector: degree out of range");
}

ExtVector ExtVector::basis_element(const FieldPtr& F, int n, int deg, unsigned mask)
{
    ExtVector x(F, n, deg);
    x[wedge_index(n, deg, mask)] = F->one();
    return x;
}

ExtVector ExtVector::wedge_of(const FieldPtr& F, const std::vector<Vec>& vs)
{
    int n = static_cast<int>(vs.empty() ? 0 : vs[0].size());
    ExtVector acc(F, n, 0);
    acc[0] = F->one();
    for (const auto& v : vs) {
        ExtVector x(F, n, 1);
        for (int i = 0; i < n; ++i) x[i] = v[static_cast<std::size_t>(i)];
        acc = wedge(acc, x);
    }
    return acc;
}

ExtVector ExtVector::operator+(const ExtVector& o) const
{
    ExtVector r = *this;
    for (std::size_t i = 0; i < coeff_.size(); ++i) r.coeff_[i] += o.coeff_[i];
    return r;
}

ExtVector ExtVector::operator-(const ExtVector& o) const
{
    ExtVector r = *this;
    for (std::size_t i = 0; i < coeff_.size(); ++i) r.coeff_[i] -= o.coeff_[i];
    return r;
}

ExtVector ExtVector::scaled(const Scalar& s) const
{
    ExtVector r = *this;
    for (auto& c : r.coeff_) c *= s;
    return r;
}

ExtVector ExtVector::operator-() const
{
    ExtVector r = *this;
    for (auto& c : r.coeff_) c = -c;
    return r;
}

bool ExtVector::operator==(const ExtVector& o) const
{
    return n_ == o.n_ && deg_ == o.deg_ && coeff_ == o.coeff_;
}

bool ExtVector::is_zero() const
{
    for (const auto& c : coeff_)
        if (!c.is_zero()) return false;
    return true;
}

ExtVector ExtVector::from_vec(const FieldPtr& F, int n, int deg, Vec v)
{
    ExtVector x(F, n, deg);
    if (v.size() != x.coeff_.size()) throw std::invalid_argument("ExtVector::from_vec: size mismatch");
    x.coeff_ = std::move(v);
    return x;
}

std::string ExtVector::str() const
{
    const auto& tl = tuple_cache(n_, deg_);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < tl.size(); ++i) {
        if (coeff_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coeff_[i].str() << ")";
        if (deg_ > 0) {
            os << "*";
            bool fi = true;
            for (int b = 0; b < n_; ++b)
                if (tl[i] & (1u << b)) {
                    os << (fi ? "e" : "^e") << (b + 1);
                    fi = false;
                }
        }
    }
    if (first) os << "0";
    return os.str();
}

ExtVector wedge(const ExtVector& x, const ExtVector& y)
{
    if (x.space_dim() != y.space_dim()) throw std::invalid_argument("wedge: mixed spaces");
    int n = x.space_dim();
    int d = x.degree() + y.degree();
    if (d > n) throw std::invalid_argument("wedge: degree overflow");
    ExtVector r(x.field(), n, d);
    const auto& tx = wedge_tuples(n, x.degree());
    const auto& ty = wedge_tuples(n, y.degree());
    for (std::size_t i = 0; i < tx.size(); ++i) {
        if (x[static_cast<int>(i)].is_zero()) continue;
        for (std::size_t j = 0; j < ty.size(); ++j) {
            if (y[static_cast<int>(j)].is_zero()) continue;
            int s = merge_sign(tx[i], ty[j]);
            if (s == 0) continue;
            Scalar term = x[static_cast<int>(i)] * y[static_cast<int>(j)];
            if (s < 0) term = -term;
            r[wedge_index(n, d, tx[i] | ty[j])] += term;
        }
    }
    return r;
}

namespace {

Scalar minor_det(const Mat& A, unsigned rows, unsigned cols)
{
    std::vector<int> ri, ci;
    for (int b = 0; b < A.rows(); ++b)
        if (rows & (1u << b)) ri.push_back(b);
    for (int b = 0; b < A.cols(); ++b)
        if (cols & (1u << b)) ci.push_back(b);
    Mat sub(A.field(), static_cast<int>(ri.size()), static_cast<int>(ci.size()));
    for (std::size_t i = 0; i < ri.size(); ++i)
        for (std::size_t j = 0; j < ci.size(); ++j) sub.at(static_cast<int>(i), static_cast<int>(j)) = A.at(ri[i], ci[j]);
    return sub.det();
}

} // namespace

Mat ext_power_matrix(const Mat& A, int deg)
{
    int n = A.rows();
    const auto& tl = wedge_tuples(n, deg);
    Mat M(A.field(), static_cast<int>(tl.size()), static_cast<int>(tl.size()));
    if (deg == 0) {
        M.at(0, 0) = A.field()->one();
        return M;
    }
    for (std::size_t r = 0; r < tl.size(); ++r)
        for (std::size_t c = 0; c < tl.size(); ++c)
            M.at(static_cast<int>(r), static_cast<int>(c)) = minor_det(A, tl[r], tl[c]);
    return M;
}

SemiMap ext_power_map(const SemiMap& m, int deg)
{
    return SemiMap{ext_power_matrix(m.A, deg), m.conj_companion};
}

ExtVector apply_ext(const SemiMap& ext_m, const ExtVector& x)
{
    Vec v = ext_m.apply(x.as_vec());
    return ExtVector::from_vec(x.field(), x.space_dim(), x.degree(), std::move(v));
}

Mat ext_h_gram(const HermitianSpace& space, int deg)
{
    // det(h(v_i, w_j)) over basis tuples = minors of the Gram matrix.
    return ext_power_matrix(space.gram(), deg);
}

Scalar ext_h(const HermitianSpace& space, int deg, const ExtVector& X, const ExtVector& Y)
{
    Mat G = ext_h_gram(space, deg);
    return dot(conj(X.as_vec()), G * Y.as_vec());
}

Scalar pfaffian(const TopForm& b, const ExtVector& X, const ExtVector& Y)
{
    if (X.degree() + Y.degree() != X.space_dim())
        throw std::invalid_argument("pfaffian: degrees are not complementary");
    ExtVector top = wedge(X, Y);
    return top[0] * b.b0;
}

Mat pfaffian_gram(const FieldPtr& F, const TopForm& b, int n, int deg)
{
    const auto& rows = wedge_tuples(n, n - deg);
    const auto& cols = wedge_tuples(n, deg);
    Mat M(F, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) {
            int s = merge_sign(rows[r], cols[c]);
            if (s == 0) continue;
            M.at(static_cast<int>(r), static_cast<int>(c)) = s > 0 ? b.b0 : -b.b0;
        }
    return M;
}

Scalar klein_quadratic(const TopForm& b, const ExtVector& X)
{
    if (X.space_dim() != 4 || X.degree() != 2)
        throw std::invalid_argument("klein_quadratic: needs degree 2 over F^4");
    auto c = [&X](int i, int j) { return X.coeff((1u << (i - 1)) | (1u << (j - 1))); };
    return b.b0 * (c(1, 2) * c(3, 4) - c(1, 3) * c(2, 4) + c(1, 4) * c(2, 3));
}

} // namespace hodge
