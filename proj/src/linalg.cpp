#include "hgx/linalg.hpp"

#include "hgx/error.hpp"

#include <algorithm>

namespace hgx {

namespace {
// Row updates below this many scalar operations stay serial; the cutoff
// only depends on shapes, never on values, so it cannot perturb results.
constexpr size_t kParallelGrain = 4096;
} // namespace

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InternalError("vector size mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InternalError("vector size mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scaled(const Scalar& c, const Vec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec unit_vec(size_t n, size_t i) {
    Vec r(n);
    r[i] = Scalar(1);
    return r;
}

Vec kron_vec(const Vec& a, const Vec& b) {
    Vec r(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) r[i * b.size() + j] = a[i] * b[j];
    }
    return r;
}

Mat Mat::identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, size_t cols) {
    Mat m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InternalError("row length mismatch");
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols, size_t rows) {
    Mat m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw InternalError("column length mismatch");
        for (size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

Vec Mat::row(size_t i) const {
    return Vec(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
}

Vec Mat::col(size_t j) const {
    Vec r(rows_);
    for (size_t i = 0; i < rows_; ++i) r[i] = at(i, j);
    return r;
}

void Mat::set_col(size_t j, const Vec& v) {
    if (v.size() != rows_) throw InternalError("column length mismatch");
    for (size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw InternalError("matmul shape mismatch");
    Mat r(rows_, o.cols_);
    const long n = static_cast<long>(rows_);
#pragma omp parallel for schedule(static) if (rows_ * cols_ * o.cols_ > kParallelGrain)
    for (long i = 0; i < n; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            const Scalar& a = at(static_cast<size_t>(i), k);
            if (a.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const Scalar& b = o.at(k, j);
                if (b.is_zero()) continue;
                r.at(static_cast<size_t>(i), j) += a * b;
            }
        }
    }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("shape mismatch");
    Mat r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("shape mismatch");
    Mat r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

Mat Mat::transpose() const {
    Mat r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Vec Mat::apply(const Vec& v) const {
    if (v.size() != cols_) throw InternalError("apply shape mismatch");
    Vec r(rows_);
    for (size_t i = 0; i < rows_; ++i) {
        Scalar acc;
        for (size_t j = 0; j < cols_; ++j) {
            if (at(i, j).is_zero() || v[j].is_zero()) continue;
            acc += at(i, j) * v[j];
        }
        r[i] = acc;
    }
    return r;
}

bool Mat::is_identity() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
        }
    return true;
}

bool Mat::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    const long n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static) \
    if (a.rows() * a.cols() * b.rows() * b.cols() > kParallelGrain)
    for (long i = 0; i < n; ++i) {
        for (size_t j = 0; j < a.cols(); ++j) {
            const Scalar& f = a.at(static_cast<size_t>(i), j);
            if (f.is_zero()) continue;
            for (size_t k = 0; k < b.rows(); ++k)
                for (size_t l = 0; l < b.cols(); ++l) {
                    if (b.at(k, l).is_zero()) continue;
                    r.at(static_cast<size_t>(i) * b.rows() + k,
                         j * b.cols() + l) = f * b.at(k, l);
                }
        }
    }
    return r;
}

Rref rref(Mat a) {
    const size_t rows = a.rows(), cols = a.cols();
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a.at(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r)
            for (size_t j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(r, j));
        if (!a.at(r, c).is_one()) {
            const Scalar inv = a.at(r, c).inverse();
            for (size_t j = c; j < cols; ++j)
                if (!a.at(r, j).is_zero()) a.at(r, j) = inv * a.at(r, j);
        }
        const long nrows = static_cast<long>(rows);
        // Each iteration touches only its own row, so the parallel
        // result is bit-identical to the serial one.
#pragma omp parallel for schedule(static) if (rows * (cols - c) > kParallelGrain)
        for (long li = 0; li < nrows; ++li) {
            const size_t i = static_cast<size_t>(li);
            if (i == r) continue;
            const Scalar f = a.at(i, c);
            if (f.is_zero()) continue;
            for (size_t j = c; j < cols; ++j) {
                if (a.at(r, j).is_zero()) continue;
                a.at(i, j) -= f * a.at(r, j);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

Subspace Subspace::span(size_t ambient, const std::vector<Vec>& vectors) {
    for (const auto& v : vectors)
        if (v.size() != ambient) throw InternalError("span: ambient mismatch");
    Rref rr = rref(Mat::from_rows(vectors, ambient));
    Subspace s(ambient);
    for (size_t i = 0; i < rr.pivots.size(); ++i) s.basis_.push_back(rr.mat.row(i));
    return s;
}

bool Subspace::contains(const Vec& v) const {
    if (v.size() != ambient_) throw InternalError("contains: ambient mismatch");
    Vec w = v;
    for (const auto& row : basis_) {
        size_t p = 0;
        while (p < ambient_ && row[p].is_zero()) ++p;
        if (p == ambient_) continue;
        if (w[p].is_zero()) continue;
        const Scalar f = w[p];
        for (size_t j = p; j < ambient_; ++j)
            if (!row[j].is_zero()) w[j] -= f * row[j];
    }
    return is_zero_vec(w);
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) return false;
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [this](const Vec& v) { return contains(v); });
}

Subspace Subspace::sum(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw InternalError("sum: ambient mismatch");
    std::vector<Vec> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, all);
}

RowReduceResult row_reduce(const Mat& m) {
    Rref rr = rref(m);
    RowReduceResult out;
    out.rank = rr.pivots.size();

    // Kernel basis from the free columns, re-reduced so Subspace
    // equality stays decidable by list comparison.
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : rr.pivots) is_pivot[c] = true;
    std::vector<Vec> kernel_vecs;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = Scalar(1);
        for (size_t i = 0; i < rr.pivots.size(); ++i)
            v[rr.pivots[i]] = -rr.mat.at(i, f);
        kernel_vecs.push_back(std::move(v));
    }
    out.kernel = Subspace::span(m.cols(), kernel_vecs);

    std::vector<Vec> cols;
    cols.reserve(m.cols());
    for (size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
    out.image = Subspace::span(m.rows(), cols);
    if (out.image.dim() != out.rank)
        throw InternalError("row_reduce: column rank disagrees with row rank");
    return out;
}

std::optional<Vec> solve(const Mat& m, const Vec& target) {
    if (target.size() != m.rows()) throw PreconditionError("solve: target length != rows");
    Mat aug(m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = target[i];
    }
    Rref rr = rref(std::move(aug));
    for (size_t c : rr.pivots)
        if (c == m.cols()) return std::nullopt; // pivot in the target column
    Vec x(m.cols());
    for (size_t i = 0; i < rr.pivots.size(); ++i)
        x[rr.pivots[i]] = rr.mat.at(i, m.cols());
    return x;
}

Quotient quotient(size_t ambient_dim, const Subspace& relations) {
    if (relations.ambient_dim() != ambient_dim)
        throw PreconditionError("quotient: relations ambient mismatch");
    const auto& rel = relations.basis();
    std::vector<size_t> pivot_of_row(rel.size());
    std::vector<bool> is_pivot(ambient_dim, false);
    for (size_t i = 0; i < rel.size(); ++i) {
        size_t p = 0;
        while (p < ambient_dim && rel[i][p].is_zero()) ++p;
        pivot_of_row[i] = p;
        is_pivot[p] = true;
    }
    std::vector<size_t> free_cols;
    for (size_t j = 0; j < ambient_dim; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);

    Quotient q;
    q.dim = free_cols.size();
    q.project = Mat(q.dim, ambient_dim);
    q.section = Mat(ambient_dim, q.dim);
    for (size_t t = 0; t < free_cols.size(); ++t) {
        q.project.at(t, free_cols[t]) = Scalar(1);
        q.section.at(free_cols[t], t) = Scalar(1);
    }
    // A pivot coordinate maps to minus the relation row's free part.
    for (size_t i = 0; i < rel.size(); ++i)
        for (size_t t = 0; t < free_cols.size(); ++t)
            if (!rel[i][free_cols[t]].is_zero())
                q.project.at(t, pivot_of_row[i]) = -rel[i][free_cols[t]];
    return q;
}

Mat Tensor3::as_map_from_pair() const {
    Mat m(d2, d0 * d1);
    for (size_t i = 0; i < d0; ++i)
        for (size_t j = 0; j < d1; ++j)
            for (size_t k = 0; k < d2; ++k)
                if (!at(i, j, k).is_zero()) m.at(k, i * d1 + j) = at(i, j, k);
    return m;
}

Mat Tensor3::as_map_to_pair() const {
    Mat m(d1 * d2, d0);
    for (size_t i = 0; i < d0; ++i)
        for (size_t j = 0; j < d1; ++j)
            for (size_t k = 0; k < d2; ++k)
                if (!at(i, j, k).is_zero()) m.at(j * d2 + k, i) = at(i, j, k);
    return m;
}

} // namespace hgx
