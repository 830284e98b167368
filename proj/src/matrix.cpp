#include "ncalg/matrix.hpp"

namespace ncalg {

Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.c != y.r) throw Error("matrix dimension mismatch");
    Mat m(x.r, y.c);
    for (int i = 0; i < x.r; ++i)
        for (int k = 0; k < x.c; ++k) {
            const Scalar& xik = x.at(i, k);
            if (xik.is_zero()) continue;
            for (int j = 0; j < y.c; ++j) {
                const Scalar& ykj = y.at(k, j);
                if (!ykj.is_zero()) m.at(i, j) += xik * ykj;
            }
        }
    return m;
}

std::vector<Scalar> mat_apply(const Mat& m, const std::vector<Scalar>& v) {
    if (static_cast<int>(v.size()) != m.c) throw Error("matrix/vector dimension mismatch");
    std::vector<Scalar> r(m.r, Scalar(0));
    for (int j = 0; j < m.c; ++j) {
        if (v[j].is_zero()) continue;
        for (int i = 0; i < m.r; ++i) {
            const Scalar& mij = m.at(i, j);
            if (!mij.is_zero()) r[i] += mij * v[j];
        }
    }
    return r;
}

int rank_ff(Mat m) {
    int rank = 0;
    Scalar prev(1);
    for (int col = 0; col < m.c && rank < m.r; ++col) {
        int piv = -1;
        for (int i = rank; i < m.r; ++i)
            if (!m.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = col; j < m.c; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        const Scalar p = m.at(rank, col);
        for (int i = rank + 1; i < m.r; ++i) {
            const Scalar f = m.at(i, col);
            if (f.is_zero()) {
                // Bareiss step still rescales untouched rows
                for (int j = col + 1; j < m.c; ++j)
                    if (!m.at(i, j).is_zero()) m.at(i, j) = m.at(i, j) * p / prev;
            } else {
                for (int j = col + 1; j < m.c; ++j)
                    m.at(i, j) = (m.at(i, j) * p - f * m.at(rank, j)) / prev;
                m.at(i, col) = Scalar(0);
            }
        }
        prev = p;
        ++rank;
    }
    return rank;
}

std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.c && row < m.r; ++col) {
        int piv = -1;
        for (int i = row; i < m.r; ++i)
            if (!m.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.c; ++j) std::swap(m.at(piv, j), m.at(row, j));
        Scalar inv = m.at(row, col).inverse();
        for (int j = col; j < m.c; ++j)
            if (!m.at(row, j).is_zero()) m.at(row, j) = m.at(row, j) * inv;
        for (int i = 0; i < m.r; ++i) {
            if (i == row) continue;
            const Scalar f = m.at(i, col);
            if (f.is_zero()) continue;
            for (int j = col; j < m.c; ++j)
                if (!m.at(row, j).is_zero()) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<Scalar>> kernel_basis(const Mat& m) {
    Mat e = m;
    std::vector<int> pivots = rref(e);
    std::vector<bool> is_pivot(m.c, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int free = 0; free < m.c; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(m.c, Scalar(0));
        v[free] = Scalar(1);
        for (size_t pi = 0; pi < pivots.size(); ++pi) v[pivots[pi]] = -e.at(static_cast<int>(pi), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

Mat inverse(const Mat& m) {
    if (m.r != m.c) throw Error("inverse of a non-square matrix");
    Mat aug(m.r, 2 * m.c);
    for (int i = 0; i < m.r; ++i) {
        for (int j = 0; j < m.c; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.c + i) = Scalar(1);
    }
    std::vector<int> pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != m.r || pivots.back() >= m.c)
        throw Error("singular matrix");
    Mat inv(m.r, m.c);
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) inv.at(i, j) = aug.at(i, m.c + j);
    return inv;
}

bool in_column_span(const Mat& m, const std::vector<Scalar>& v) {
    Mat aug(m.r, m.c + 1);
    for (int i = 0; i < m.r; ++i) {
        for (int j = 0; j < m.c; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.c) = v[i];
    }
    Mat base = m;
    return rank_ff(base) == rank_ff(aug);
}

}  // namespace ncalg
