#pragma once

#include "hgx/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hgx {

using Vec = std::vector<Scalar>;

Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Scalar& c, const Vec& v);
bool is_zero_vec(const Vec& v);
Vec unit_vec(size_t n, size_t i);
/// Lexicographic tensor coordinates: (a o b)[i*len(b)+j] = a[i]*b[j].
Vec kron_vec(const Vec& a, const Vec& b);

/// Dense matrix of exact scalars, row-major. Value type; all operations
/// are pure and deterministic (the OpenMP kernels only distribute
/// independent row/entry computations, so results are bit-identical to
/// the serial reference in hgx::ref).
class Mat {
public:
    Mat() = default;
    Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static Mat identity(size_t n);
    static Mat from_rows(const std::vector<Vec>& rows, size_t cols);
    static Mat from_cols(const std::vector<Vec>& cols, size_t rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Scalar& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const Scalar& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    Vec row(size_t i) const;
    Vec col(size_t j) const;
    void set_col(size_t j, const Vec& v);

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transpose() const;
    Vec apply(const Vec& v) const;
    bool is_identity() const;
    bool is_zero() const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> e_;
};

/// Kronecker product on the lexicographic tensor basis.
Mat kron(const Mat& a, const Mat& b);

/// Reduced row echelon form with the fixed pivot rule (first row with a
/// nonzero entry, columns scanned left to right). Canonical: every
/// derived object (Subspace bases, kernel vectors, solve results)
/// inherits determinism from this.
struct Rref {
    Mat mat;
    std::vector<size_t> pivots; // pivot column of each pivot row
};
Rref rref(Mat a);

/// Subspace of k^n held by its canonical reduced basis, so equality is
/// plain list equality.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(size_t ambient) : ambient_(ambient) {}
    static Subspace span(size_t ambient, const std::vector<Vec>& vectors);

    size_t ambient_dim() const { return ambient_; }
    size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    size_t ambient_ = 0;
    std::vector<Vec> basis_;
};

struct RowReduceResult {
    size_t rank = 0;
    Subspace kernel;
    Subspace image;
};
RowReduceResult row_reduce(const Mat& m);

/// Some x with m*x = target, or nullopt when the system is
/// inconsistent. Free variables are set to zero under the fixed pivot
/// rule, so the returned solution is deterministic.
std::optional<Vec> solve(const Mat& m, const Vec& target);

/// Coordinates for k^ambient / relations: project*section = identity,
/// and project annihilates exactly the relations.
struct Quotient {
    size_t dim = 0;
    Mat project;
    Mat section;
};
Quotient quotient(size_t ambient_dim, const Subspace& relations);

/// Order-3 structure-constant tensor t[i][j][k], stored dense.
struct Tensor3 {
    size_t d0 = 0, d1 = 0, d2 = 0;
    std::vector<Scalar> v;

    Tensor3() = default;
    Tensor3(size_t a, size_t b, size_t c) : d0(a), d1(b), d2(c), v(a * b * c) {}

    Scalar& at(size_t i, size_t j, size_t k) { return v[(i * d1 + j) * d2 + k]; }
    const Scalar& at(size_t i, size_t j, size_t k) const {
        return v[(i * d1 + j) * d2 + k];
    }

    bool operator==(const Tensor3& o) const {
        return d0 == o.d0 && d1 == o.d1 && d2 == o.d2 && v == o.v;
    }

    /// e_i o e_j -> sum_k t[i][j][k] e_k as a (d2 x d0*d1) matrix.
    Mat as_map_from_pair() const;
    /// e_i -> sum_{j,k} t[i][j][k] e_j o e_k as a (d1*d2 x d0) matrix.
    Mat as_map_to_pair() const;
};

namespace ref {

/// Serial reference elimination. Independent of the OpenMP kernels;
/// tests assert bit-identical agreement and the benchmark compares
/// their running times.
Rref rref(Mat a);
Mat matmul(const Mat& a, const Mat& b);

} // namespace ref

} // namespace hgx
