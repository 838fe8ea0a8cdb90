#include "hgx/linalg.hpp"

#include "hgx/error.hpp"

// Serial twins of the parallel kernels.  Same pivot rule, same update
// order per row; tests assert the pair agrees entry for entry.

namespace hgx::ref {

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
        for (size_t i = 0; i < rows; ++i) {
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

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw InternalError("matmul shape mismatch");
    Mat r(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const Scalar& f = a.at(i, k);
            if (f.is_zero()) continue;
            for (size_t j = 0; j < b.cols(); ++j) {
                if (b.at(k, j).is_zero()) continue;
                r.at(i, j) += f * b.at(k, j);
            }
        }
    return r;
}

} // namespace hgx::ref
