#pragma once

#include <optional>
#include <vector>

#include "iwasawa/zmod.hpp"

namespace iwasawa {

// Dense row-major matrix of residues.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<u64> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    u64& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    u64 at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    void set_column(int c, const std::vector<u64>& v) {
        for (int r = 0; r < rows; ++r) at(r, c) = v[r];
    }
    std::vector<u64> column(int c) const {
        std::vector<u64> v(rows);
        for (int r = 0; r < rows; ++r) v[r] = at(r, c);
        return v;
    }
};

std::vector<u64> mat_vec(const Zmod& R, const Matrix& A, const std::vector<u64>& x);

// Smith normal form over the local ring Z/p^m:  U * A * V = diag(p^{e_0}, ..., p^{e_{r-1}}, 0, ...).
// U and V are only accumulated when requested; they are needed for solving, not for counting.
class SmithForm {
public:
    SmithForm(const Zmod& R, Matrix A, bool track_rows, bool track_cols);

    // exponents e_i < m of the nonzero invariant factors, in pivot order
    const std::vector<int>& exponents() const { return exps_; }
    int rank() const { return static_cast<int>(exps_.size()); }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    // log_p of |ker A| as a subgroup of (Z/p^m)^cols
    long log_kernel_order() const;
    // log_p of |im A|
    long log_image_order() const;

    // generators of ker A (needs column tracking)
    std::vector<std::vector<u64>> kernel_generators() const;
    // a solution of A x = b, or nothing (needs row and column tracking)
    std::optional<std::vector<u64>> solve(const std::vector<u64>& b) const;

private:
    Zmod R_;
    int rows_, cols_;
    std::vector<int> exps_;
    std::optional<Matrix> U_, V_;
};

// Solve A x = b for square invertible A by Gaussian elimination with unit pivots.
// Throws NonUnit when some column has no unit pivot (A is then not invertible).
std::vector<u64> solve_invertible(const Zmod& R, Matrix A, std::vector<u64> b);
// Determinant over Z/p^m of a matrix with unit determinant; throws NonUnit otherwise.
u64 determinant(const Zmod& R, Matrix A);

// Column span of a generator family with a reusable membership oracle.
class ColumnSpan {
public:
    ColumnSpan(const Zmod& R, const Matrix& generators);
    bool contains(const std::vector<u64>& b) const { return sf_.solve(b).has_value(); }
    std::optional<std::vector<u64>> coefficients(const std::vector<u64>& b) const { return sf_.solve(b); }
    long log_order() const { return sf_.log_image_order(); }
    const Matrix& generators() const { return gens_; }

private:
    Matrix gens_;
    SmithForm sf_;
};

}  // namespace iwasawa
