#pragma once

#include <vector>

#include "daha/rational.hpp"

namespace daha {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Null space of an r x c matrix by exact Gaussian elimination; basis vectors
// have a unit pivot in each free column.
inline std::vector<std::vector<Rational>> kernel_basis(RationalMatrix a, int cols) {
    const int rows = static_cast<int>(a.size());
    std::vector<int> pivot_col_of_row;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(row)]);
        Rational d = a[static_cast<size_t>(row)][static_cast<size_t>(col)];
        for (int c = col; c < cols; ++c) a[static_cast<size_t>(row)][static_cast<size_t>(c)] /= d;
        for (int r = 0; r < rows; ++r) {
            if (r == row) continue;
            Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c < cols; ++c)
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] -= f * a[static_cast<size_t>(row)][static_cast<size_t>(c)];
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int c : pivot_col_of_row) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<size_t>(cols), Rational(0));
        v[static_cast<size_t>(free)] = 1;
        for (size_t r = 0; r < pivot_col_of_row.size(); ++r)
            v[static_cast<size_t>(pivot_col_of_row[r])] = -a[r][static_cast<size_t>(free)];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace daha
