#include "hodge/linalg.hpp"

#include <sstream>

namespace hodge {

Mat Mat::identity(const FieldPtr& F, int n)
{
    Mat m(F, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = F->one();
    return m;
}

Mat Mat::from_rows(const FieldPtr& F, std::initializer_list<std::initializer_list<long>> rows)
{
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    Mat m(F, r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (long v : row) m.at(i, j++) = F->from_int(v);
        ++i;
    }
    return m;
}

Mat Mat::diagonal(const FieldPtr& F, const Vec& d)
{
    Mat m(F, static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

Mat Mat::operator*(const Mat& o) const
{
    if (cols_ != o.rows_) throw std::invalid_argument("Mat::operator*: shape mismatch");
    Mat r(F_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

Vec Mat::operator*(const Vec& v) const
{
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("Mat * Vec: shape mismatch");
    Vec r(static_cast<std::size_t>(rows_), F_->zero());
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k)
            if (!at(i, k).is_zero()) r[i] += at(i, k) * v[k];
    return r;
}

Mat Mat::operator+(const Mat& o) const
{
    Mat r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const
{
    Mat r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

Mat Mat::scaled(const Scalar& s) const
{
    Mat r = *this;
    for (auto& x : r.data_) x *= s;
    return r;
}

Mat Mat::transpose() const
{
    Mat r(F_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::conj() const
{
    Mat r = *this;
    for (auto& x : r.data_) x = x.conj();
    return r;
}

bool Mat::operator==(const Mat& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (data_[i] != o.data_[i]) return false;
    return true;
}

bool Mat::is_identity() const
{
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (i == j && !at(i, j).is_one()) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

bool Mat::is_zero() const
{
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

Scalar Mat::det() const
{
    if (rows_ != cols_) throw std::invalid_argument("Mat::det: not square");
    Mat a = *this;
    Scalar d = F_->one();
    for (int col = 0; col < cols_; ++col) {
        int piv = -1;
        for (int r = col; r < rows_; ++r)
            if (!a.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return F_->zero();
        if (piv != col) {
            for (int j = 0; j < cols_; ++j) std::swap(a.at(piv, j), a.at(col, j));
            d = -d;
        }
        d *= a.at(col, col);
        Scalar inv = a.at(col, col).inverse();
        for (int r = col + 1; r < rows_; ++r) {
            if (a.at(r, col).is_zero()) continue;
            Scalar f = a.at(r, col) * inv;
            for (int j = col; j < cols_; ++j) a.at(r, j) -= f * a.at(col, j);
        }
    }
    return d;
}

namespace {

// Gauss-Jordan on [A | B]; returns pivot columns of A.
std::vector<int> gauss_jordan(Mat& a, Mat* b)
{
    std::vector<int> pivots;
    int r = 0;
    for (int col = 0; col < a.cols() && r < a.rows(); ++col) {
        int piv = -1;
        for (int i = r; i < a.rows(); ++i)
            if (!a.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(r, j));
            if (b)
                for (int j = 0; j < b->cols(); ++j) std::swap(b->at(piv, j), b->at(r, j));
        }
        Scalar inv = a.at(r, col).inverse();
        for (int j = 0; j < a.cols(); ++j) a.at(r, j) *= inv;
        if (b)
            for (int j = 0; j < b->cols(); ++j) b->at(r, j) *= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, col).is_zero()) continue;
            Scalar f = a.at(i, col);
            for (int j = 0; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
            if (b)
                for (int j = 0; j < b->cols(); ++j) b->at(i, j) -= f * b->at(r, j);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

} // namespace

Mat Mat::inverse() const
{
    if (rows_ != cols_) throw std::invalid_argument("Mat::inverse: not square");
    Mat a = *this;
    Mat b = identity(F_, rows_);
    auto piv = gauss_jordan(a, &b);
    if (static_cast<int>(piv.size()) != rows_) throw std::domain_error("Mat::inverse: singular");
    return b;
}

int Mat::rank() const
{
    Mat a = *this;
    return static_cast<int>(gauss_jordan(a, nullptr).size());
}

Mat Mat::rref() const
{
    Mat a = *this;
    gauss_jordan(a, nullptr);
    return a;
}

Mat Mat::kernel() const
{
    Mat a = *this;
    auto piv = gauss_jordan(a, nullptr);
    std::vector<bool> is_piv(static_cast<std::size_t>(cols_), false);
    for (int c : piv) is_piv[static_cast<std::size_t>(c)] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols_; ++c)
        if (!is_piv[static_cast<std::size_t>(c)]) free_cols.push_back(c);
    Mat k(F_, cols_, static_cast<int>(free_cols.size()));
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        int fc = free_cols[fi];
        k.at(fc, static_cast<int>(fi)) = F_->one();
        for (std::size_t pr = 0; pr < piv.size(); ++pr)
            k.at(piv[pr], static_cast<int>(fi)) = -a.at(static_cast<int>(pr), fc);
    }
    return k;
}

std::optional<Vec> Mat::solve(const Vec& b) const
{
    Mat bb(F_, rows_, 1);
    for (int i = 0; i < rows_; ++i) bb.at(i, 0) = b[i];
    auto X = solve(bb);
    if (!X) return std::nullopt;
    return X->col(0);
}

std::optional<Mat> Mat::solve(const Mat& B) const
{
    Mat a = *this;
    Mat b = B;
    auto piv = gauss_jordan(a, &b);
    // consistency: zero rows of a must have zero rhs
    for (int i = static_cast<int>(piv.size()); i < rows_; ++i)
        for (int j = 0; j < b.cols(); ++j)
            if (!b.at(i, j).is_zero()) return std::nullopt;
    Mat x(F_, cols_, B.cols());
    for (std::size_t pr = 0; pr < piv.size(); ++pr)
        for (int j = 0; j < B.cols(); ++j) x.at(piv[pr], j) = b.at(static_cast<int>(pr), j);
    return x;
}

Vec Mat::col(int c) const
{
    Vec v(static_cast<std::size_t>(rows_), F_->zero());
    for (int i = 0; i < rows_; ++i) v[i] = at(i, c);
    return v;
}

Vec Mat::row(int r) const
{
    Vec v(static_cast<std::size_t>(cols_), F_->zero());
    for (int j = 0; j < cols_; ++j) v[j] = at(r, j);
    return v;
}

void Mat::set_col(int c, const Vec& v)
{
    for (int i = 0; i < rows_; ++i) at(i, c) = v[i];
}

Mat Mat::cols_subset(const std::vector<int>& idx) const
{
    Mat m(F_, rows_, static_cast<int>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) m.set_col(static_cast<int>(j), col(idx[j]));
    return m;
}

std::string Mat::str() const
{
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < cols_; ++j) os << (j ? ", " : "[") << at(i, j).str();
        os << "]" << (i + 1 == rows_ ? "]" : "\n");
    }
    return os.str();
}

Vec operator+(const Vec& a, const Vec& b)
{
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b)
{
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scaled(const Vec& v, const Scalar& s)
{
    Vec r = v;
    for (auto& x : r) x *= s;
    return r;
}

Vec conj(const Vec& v)
{
    Vec r = v;
    for (auto& x : r) x = x.conj();
    return r;
}

Scalar dot(const Vec& a, const Vec& b)
{
    Scalar s = a.at(0).field()->zero();
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const Vec& v)
{
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec zero_vec(const FieldPtr& F, int n) { return Vec(static_cast<std::size_t>(n), F->zero()); }

Vec unit_vec(const FieldPtr& F, int n, int i)
{
    Vec v = zero_vec(F, n);
    v[static_cast<std::size_t>(i)] = F->one();
    return v;
}

Mat mat_from_cols(const FieldPtr& F, const std::vector<Vec>& cols)
{
    if (cols.empty()) return Mat(F, 0, 0);
    Mat m(F, static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(static_cast<int>(j), cols[j]);
    return m;
}

} // namespace hodge
