#pragma once

#include <functional>
#include <initializer_list>
#include <optional>
#include <vector>

#include "hodge/scalar.hpp"

namespace hodge {

using Vec = std::vector<Scalar>;

/// Dense matrix over an exact field. Vectors are columns, matrices act from
/// the left; pivoting is first-nonzero, so all reductions are deterministic.
class Mat
{
public:
    Mat() = default;
    Mat(FieldPtr F, int rows, int cols)
        : F_(std::move(F)), rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows) * cols, F_->zero())
    {
    }
    static Mat identity(const FieldPtr& F, int n);
    static Mat from_rows(const FieldPtr& F, std::initializer_list<std::initializer_list<long>> rows);
    static Mat diagonal(const FieldPtr& F, const Vec& d);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const FieldPtr& field() const { return F_; }

    Scalar& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Scalar& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    Mat operator*(const Mat& o) const;
    Vec operator*(const Vec& v) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(const Scalar& s) const;
    Mat transpose() const;
    Mat conj() const; // entrywise sigma
    Mat conj_transpose() const { return conj().transpose(); }

    bool operator==(const Mat& o) const;
    bool is_identity() const;
    bool is_zero() const;

    Scalar det() const;
    Mat inverse() const;
    int rank() const;
    /// Reduced row echelon form (canonical representative of the row space).
    Mat rref() const;
    /// Basis of the right kernel, as columns.
    Mat kernel() const;
    /// Solve A x = b; nullopt when inconsistent (A need not be square).
    std::optional<Vec> solve(const Vec& b) const;
    /// Solve A X = B columnwise.
    std::optional<Mat> solve(const Mat& B) const;

    Vec col(int c) const;
    Vec row(int r) const;
    void set_col(int c, const Vec& v);
    Mat cols_subset(const std::vector<int>& idx) const;

    std::string str() const;

private:
    FieldPtr F_;
    int rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec scaled(const Vec& v, const Scalar& s);
Vec conj(const Vec& v);
Scalar dot(const Vec& a, const Vec& b);
bool is_zero(const Vec& v);
Vec zero_vec(const FieldPtr& F, int n);
Vec unit_vec(const FieldPtr& F, int n, int i);

/// Columns of m assembled into a matrix.
Mat mat_from_cols(const FieldPtr& F, const std::vector<Vec>& cols);

} // namespace hodge
