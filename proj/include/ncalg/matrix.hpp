#ifndef NCALG_MATRIX_HPP
#define NCALG_MATRIX_HPP

#include <vector>

#include "ncalg/scalar.hpp"

namespace ncalg {

/* Dense matrix of exact scalars, row-major. */
struct Mat {
    int r = 0, c = 0;
    std::vector<Scalar> a;

    Mat() = default;
    Mat(int rows, int cols) : r(rows), c(cols), a(static_cast<size_t>(rows) * cols) {}
    Scalar& at(int i, int j) { return a[static_cast<size_t>(i) * c + j]; }
    const Scalar& at(int i, int j) const { return a[static_cast<size_t>(i) * c + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
        return m;
    }
    Mat transposed() const {
        Mat m(c, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(j, i) = at(i, j);
        return m;
    }
};

Mat mat_mul(const Mat& x, const Mat& y);
std::vector<Scalar> mat_apply(const Mat& m, const std::vector<Scalar>& v);

/* Exact rank by fraction-free elimination, first-nonzero pivoting. */
int rank_ff(Mat m);

/* Reduced row echelon form in place; returns pivot columns. */
std::vector<int> rref(Mat& m);

/* Basis of the right null space {v : m v = 0}, deterministic order. */
std::vector<std::vector<Scalar>> kernel_basis(const Mat& m);

/* Inverse; throws Error if singular. */
Mat inverse(const Mat& m);

/* Is v in the column span of m? */
bool in_column_span(const Mat& m, const std::vector<Scalar>& v);

}  // namespace ncalg

#endif
