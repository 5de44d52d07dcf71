#include "gitstab/linalg.hpp"

#include <stdexcept>

namespace gitstab {

Rational determinant(RationalMatrix m)
{
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n)
            throw std::invalid_argument("determinant of a non-square matrix");
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0)
            ++pivot;
        if (pivot == n)
            return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0)
                continue;
            Rational factor = m[row][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j)
                m[row][j] -= factor * m[col][j];
        }
    }
    return det;
}

std::vector<int> rref(RationalMatrix& m)
{
    std::vector<int> pivots;
    if (m.empty())
        return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && m[pivot][col] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[row]);
        Rational inv = Rational(1) / m[row][col];
        for (std::size_t j = col; j < cols; ++j)
            m[row][j] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0)
                continue;
            Rational factor = m[r][col];
            for (std::size_t j = col; j < cols; ++j)
                m[r][j] -= factor * m[row][j];
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    return pivots;
}

int rank(RationalMatrix m)
{
    return static_cast<int>(rref(m).size());
}

std::optional<std::vector<Rational>> solve_full_column_rank(const RationalMatrix& m,
                                                            const std::vector<Rational>& rhs)
{
    if (m.size() != rhs.size())
        throw std::invalid_argument("solve: rhs size mismatch");
    if (m.empty())
        return std::vector<Rational>();
    const std::size_t cols = m[0].size();
    RationalMatrix aug = m;
    for (std::size_t r = 0; r < aug.size(); ++r)
        aug[r].push_back(rhs[r]);
    std::vector<int> pivots = rref(aug);
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == static_cast<int>(cols))
            return std::nullopt; // 0 = 1 row: inconsistent
        x[static_cast<std::size_t>(pivots[r])] = aug[r].back();
    }
    // Full column rank expected by callers; verify to catch misuse.
    if (pivots.size() < cols && static_cast<int>(pivots.size()) != rank(m))
        throw std::logic_error("solve_full_column_rank: rank drop");
    // Check the solution (covers the underdetermined-rank case safely).
    for (std::size_t r = 0; r < m.size(); ++r) {
        Rational acc = 0;
        for (std::size_t c = 0; c < cols; ++c)
            acc += m[r][c] * x[c];
        if (acc != rhs[r])
            return std::nullopt;
    }
    return x;
}

std::optional<std::vector<Rational>> kernel_vector(const RationalMatrix& m, int n_cols)
{
    RationalMatrix work = m;
    for (auto& row : work)
        if (static_cast<int>(row.size()) != n_cols)
            throw std::invalid_argument("kernel_vector: ragged matrix");
    std::vector<int> pivots = rref(work);
    if (static_cast<int>(pivots.size()) == n_cols)
        return std::nullopt;
    // First free column gives a kernel vector.
    std::vector<char> is_pivot(static_cast<std::size_t>(n_cols), 0);
    for (int p : pivots)
        is_pivot[static_cast<std::size_t>(p)] = 1;
    int free_col = 0;
    while (free_col < n_cols && is_pivot[static_cast<std::size_t>(free_col)])
        ++free_col;
    std::vector<Rational> v(static_cast<std::size_t>(n_cols), Rational(0));
    v[static_cast<std::size_t>(free_col)] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] < free_col)
            v[static_cast<std::size_t>(pivots[r])] = -work[r][static_cast<std::size_t>(free_col)];
    }
    return v;
}

RationalMatrix inverse(const RationalMatrix& m)
{
    const std::size_t n = m.size();
    RationalMatrix aug = m;
    for (std::size_t r = 0; r < n; ++r) {
        if (aug[r].size() != n)
            throw std::invalid_argument("inverse of a non-square matrix");
        for (std::size_t c = 0; c < n; ++c)
            aug[r].push_back(r == c ? Rational(1) : Rational(0));
    }
    std::vector<int> pivots = rref(aug);
    if (pivots.size() != n)
        throw std::invalid_argument("matrix is singular");
    RationalMatrix inv(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            inv[r][c] = aug[r][n + c];
    return inv;
}

} // namespace gitstab
