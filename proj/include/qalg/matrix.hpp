#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qalg/field.hpp"

namespace qalg {

/* Dense matrix over a field context F. Row-major. All elimination is plain
 * Gauss-Jordan with first-nonzero pivoting, so results are canonical and
 * deterministic: same input, same output. */
template <class F>
class Matrix {
public:
    using Elem = typename F::Elem;

    Matrix() : f_(nullptr), rows_(0), cols_(0) {}
    Matrix(const F& f, int rows, int cols)
        : f_(&f), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, f.zero())
    {
    }

    static Matrix identity(const F& f, int n)
    {
        Matrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const F& field() const { return *f_; }

    Elem& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Elem& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool is_zero() const
    {
        for (const auto& x : a_)
            if (!f_->is_zero(x)) return false;
        return true;
    }

    bool operator==(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (!f_->eq(a_[i], o.a_[i])) return false;
        return true;
    }

    Matrix mul(const Matrix& o) const
    {
        if (cols_ != o.rows_) throw error("matrix product: shape mismatch");
        Matrix r(*f_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Elem& x = at(i, k);
                if (f_->is_zero(x)) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const Elem& y = o.at(k, j);
                    if (!f_->is_zero(y)) r.at(i, j) = f_->add(r.at(i, j), f_->mul(x, y));
                }
            }
        return r;
    }

    Matrix add(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw error("matrix sum: shape mismatch");
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(r.a_[i], o.a_[i]);
        return r;
    }

    Matrix sub(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw error("matrix diff: shape mismatch");
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->sub(r.a_[i], o.a_[i]);
        return r;
    }

    Matrix scale(const Elem& c) const
    {
        Matrix r = *this;
        for (auto& x : r.a_) x = f_->mul(x, c);
        return r;
    }

    Matrix transpose() const
    {
        Matrix r(*f_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    std::vector<Elem> apply(const std::vector<Elem>& v) const
    {
        if (static_cast<int>(v.size()) != cols_) throw error("matrix apply: shape mismatch");
        std::vector<Elem> r(rows_, f_->zero());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!f_->is_zero(at(i, j))) r[i] = f_->add(r[i], f_->mul(at(i, j), v[j]));
        return r;
    }

    // Reduced row echelon form in place; returns the pivot columns.
    std::vector<int> rref_inplace()
    {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < cols_ && row < rows_; ++col) {
            int pr = -1;
            for (int i = row; i < rows_; ++i)
                if (!f_->is_zero(at(i, col))) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            if (pr != row)
                for (int j = 0; j < cols_; ++j) std::swap(at(pr, j), at(row, j));
            Elem piv_inv = f_->inv(at(row, col));
            for (int j = col; j < cols_; ++j) at(row, j) = f_->mul(at(row, j), piv_inv);
            for (int i = 0; i < rows_; ++i) {
                if (i == row || f_->is_zero(at(i, col))) continue;
                Elem c = at(i, col);
                for (int j = col; j < cols_; ++j)
                    at(i, j) = f_->sub(at(i, j), f_->mul(c, at(row, j)));
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const
    {
        Matrix m = *this;
        return static_cast<int>(m.rref_inplace().size());
    }

    /* Canonical kernel basis from the RREF: one column per free column,
     * with a 1 in the free position. Returned as columns of a matrix. */
    std::pair<int, Matrix> rank_and_kernel() const
    {
        Matrix m = *this;
        std::vector<int> pivots = m.rref_inplace();
        std::vector<bool> is_pivot(cols_, false);
        for (int c : pivots) is_pivot[c] = true;
        int nfree = cols_ - static_cast<int>(pivots.size());
        Matrix ker(*f_, cols_, nfree);
        int k = 0;
        for (int col = 0; col < cols_; ++col) {
            if (is_pivot[col]) continue;
            ker.at(col, k) = f_->one();
            for (int r = 0; r < static_cast<int>(pivots.size()); ++r)
                ker.at(pivots[r], k) = f_->neg(m.at(r, col));
            ++k;
        }
        return {static_cast<int>(pivots.size()), std::move(ker)};
    }

    struct Solve {
        std::optional<std::vector<Elem>> solution;       // canonical: free variables = 0
        std::optional<std::vector<Elem>> inconsistency;  // y with y·m = 0, y·b ≠ 0
    };

    Solve solve(const std::vector<Elem>& b) const
    {
        if (static_cast<int>(b.size()) != rows_) throw error("solve: shape mismatch");
        // eliminate [m | I]; read the solution off the reduced b
        Matrix aug(*f_, rows_, cols_ + rows_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = f_->one();
        }
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < cols_ && row < rows_; ++col) {
            int pr = -1;
            for (int i = row; i < rows_; ++i)
                if (!f_->is_zero(aug.at(i, col))) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            if (pr != row)
                for (int j = 0; j < aug.cols_; ++j) std::swap(aug.at(pr, j), aug.at(row, j));
            Elem piv_inv = f_->inv(aug.at(row, col));
            for (int j = 0; j < aug.cols_; ++j) aug.at(row, j) = f_->mul(aug.at(row, j), piv_inv);
            for (int i = 0; i < rows_; ++i) {
                if (i == row || f_->is_zero(aug.at(i, col))) continue;
                Elem c = aug.at(i, col);
                for (int j = 0; j < aug.cols_; ++j)
                    aug.at(i, j) = f_->sub(aug.at(i, j), f_->mul(c, aug.at(row, j)));
            }
            pivots.push_back(col);
            ++row;
        }
        // transformed rhs: T·b where T is the accumulated row transform
        std::vector<Elem> tb(rows_, f_->zero());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < rows_; ++j)
                if (!f_->is_zero(aug.at(i, cols_ + j)))
                    tb[i] = f_->add(tb[i], f_->mul(aug.at(i, cols_ + j), b[j]));
        Solve out;
        for (int i = static_cast<int>(pivots.size()); i < rows_; ++i) {
            if (!f_->is_zero(tb[i])) {
                std::vector<Elem> y(rows_, f_->zero());
                for (int j = 0; j < rows_; ++j) y[j] = aug.at(i, cols_ + j);
                out.inconsistency = std::move(y);
                return out;
            }
        }
        std::vector<Elem> x(cols_, f_->zero());
        for (int r = 0; r < static_cast<int>(pivots.size()); ++r) x[pivots[r]] = tb[r];
        out.solution = std::move(x);
        return out;
    }

    /* Column span membership: expresses v in terms of the columns if possible. */
    std::optional<std::vector<Elem>> express_in_columns(const std::vector<Elem>& v) const
    {
        Solve s = solve(v);
        return s.solution;
    }

    // Horizontal concatenation.
    static Matrix hcat(const Matrix& a, const Matrix& b)
    {
        if (a.rows() != b.rows()) throw error("hcat: shape mismatch");
        Matrix r(a.field(), a.rows(), a.cols() + b.cols());
        for (int i = 0; i < a.rows(); ++i) {
            for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
            for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
        }
        return r;
    }

    std::vector<Elem> column(int j) const
    {
        std::vector<Elem> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    std::vector<Elem> row(int i) const
    {
        std::vector<Elem> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

private:
    const F* f_;
    int rows_, cols_;
    std::vector<Elem> a_;
};

/* Row space in canonical (RREF) form; used wherever a deterministic basis of a
 * subspace is needed. Rows are the basis. */
template <class F>
Matrix<F> row_space(const Matrix<F>& m)
{
    Matrix<F> r = m;
    std::vector<int> piv = r.rref_inplace();
    Matrix<F> out(m.field(), static_cast<int>(piv.size()), m.cols());
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = r.at(i, j);
    return out;
}

/* Membership of v in the row space of an RREF matrix; returns coordinates. */
template <class F>
std::optional<std::vector<typename F::Elem>> reduce_against_rref(
    const Matrix<F>& rref, const std::vector<int>& pivots, std::vector<typename F::Elem> v)
{
    const F& f = rref.field();
    std::vector<typename F::Elem> coords(rref.rows(), f.zero());
    for (int r = 0; r < static_cast<int>(pivots.size()); ++r) {
        const typename F::Elem c = v[pivots[r]];  // copy: the loop below clears v[pivots[r]]
        if (f.is_zero(c)) continue;
        coords[r] = c;
        for (int j = 0; j < rref.cols(); ++j) v[j] = f.sub(v[j], f.mul(c, rref.at(r, j)));
    }
    for (const auto& x : v)
        if (!f.is_zero(x)) return std::nullopt;
    return coords;
}

}  // namespace qalg
