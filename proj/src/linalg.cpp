#include "iwasawa/linalg.hpp"

#include <utility>

namespace iwasawa {

std::vector<u64> mat_vec(const Zmod& R, const Matrix& A, const std::vector<u64>& x) {
    std::vector<u64> y(A.rows, 0);
    for (int r = 0; r < A.rows; ++r) {
        u64 s = 0;
        for (int c = 0; c < A.cols; ++c) s = R.add(s, R.mul(A.at(r, c), x[c]));
        y[r] = s;
    }
    return y;
}

namespace {

void swap_rows(Matrix& M, int i, int j) {
    if (i == j) return;
    for (int c = 0; c < M.cols; ++c) std::swap(M.at(i, c), M.at(j, c));
}
void swap_cols(Matrix& M, int i, int j) {
    if (i == j) return;
    for (int r = 0; r < M.rows; ++r) std::swap(M.at(r, i), M.at(r, j));
}
// row_dst -= f * row_src, starting at column c0
void axpy_row(const Zmod& R, Matrix& M, int dst, int src, u64 f, int c0 = 0) {
    if (f == 0) return;
    const u64 q = R.modulus();
    const u64 nf = q - f;
    u64* d = &M.a[static_cast<size_t>(dst) * M.cols];
    const u64* s = &M.a[static_cast<size_t>(src) * M.cols];
    for (int c = c0; c < M.cols; ++c)
        if (s[c]) d[c] = (d[c] + nf * s[c]) % q;
}
void axpy_col(const Zmod& R, Matrix& M, int dst, int src, u64 f) {
    if (f == 0) return;
    for (int r = 0; r < M.rows; ++r) {
        u64 s = M.at(r, src);
        if (s) M.at(r, dst) = R.sub(M.at(r, dst), R.mul(f, s));
    }
}
void scale_row(const Zmod& R, Matrix& M, int r, u64 f) {
    for (int c = 0; c < M.cols; ++c) M.at(r, c) = R.mul(M.at(r, c), f);
}

}  // namespace

SmithForm::SmithForm(const Zmod& R, Matrix A, bool track_rows, bool track_cols)
    : R_(R), rows_(A.rows), cols_(A.cols) {
    if (R.modulus() >= (u64{1} << 31)) throw BoundExceeded("matrix arithmetic needs p^m < 2^31");
    if (track_rows) U_ = Matrix::identity(rows_);
    if (track_cols) V_ = Matrix::identity(cols_);
    const u64 p = R.p();
    const int n = std::min(rows_, cols_);
    for (int k = 0; k < n; ++k) {
        // pivot: first unit found, otherwise an entry of minimal valuation
        int pr = -1, pc = -1, best = R.m();
        for (int c = k; c < cols_ && best > 0; ++c) {
            for (int r = k; r < rows_; ++r) {
                u64 v = A.at(r, c);
                if (v == 0) continue;
                int e = R.val(v);
                if (e < best) {
                    best = e;
                    pr = r;
                    pc = c;
                    if (e == 0) break;
                }
            }
        }
        if (pr < 0) break;
        swap_rows(A, k, pr);
        if (U_) swap_rows(*U_, k, pr);
        swap_cols(A, k, pc);
        if (V_) swap_cols(*V_, k, pc);
        // normalise the pivot to exactly p^best
        u64 piv = A.at(k, k);
        u64 unit = piv;
        for (int i = 0; i < best; ++i) unit /= p;
        u64 uinv = R.inv(unit);
        scale_row(R, A, k, uinv);
        if (U_) scale_row(R, *U_, k, uinv);
        const u64 pe = ipow(p, static_cast<unsigned>(best));
        // clear column k below the pivot
        for (int r = k + 1; r < rows_; ++r) {
            u64 v = A.at(r, k);
            if (v == 0) continue;
            u64 f = v / pe;  // exact: v has valuation >= best
            axpy_row(R, A, r, k, f, k);
            if (U_) axpy_row(R, *U_, r, k, f);
        }
        // clear row k to the right; only row k changes in A
        for (int c = k + 1; c < cols_; ++c) {
            u64 v = A.at(k, c);
            if (v == 0) continue;
            u64 f = v / pe;
            A.at(k, c) = 0;
            if (V_) axpy_col(R, *V_, c, k, f);
        }
        exps_.push_back(best);
    }
}

long SmithForm::log_kernel_order() const {
    long s = 0;
    for (int e : exps_) s += e;
    s += static_cast<long>(R_.m()) * (cols_ - rank());
    return s;
}

long SmithForm::log_image_order() const { return static_cast<long>(R_.m()) * cols_ - log_kernel_order(); }

std::vector<std::vector<u64>> SmithForm::kernel_generators() const {
    if (!V_) throw InvalidArgument("kernel generators need column tracking");
    std::vector<std::vector<u64>> gens;
    const u64 p = R_.p();
    auto vcol = [&](int i, u64 scale) {
        std::vector<u64> g(cols_);
        for (int r = 0; r < cols_; ++r) g[r] = R_.mul(V_->at(r, i), scale);
        return g;
    };
    for (int i = 0; i < rank(); ++i)
        if (exps_[i] > 0) gens.push_back(vcol(i, ipow(p, static_cast<unsigned>(R_.m() - exps_[i]))));
    for (int i = rank(); i < cols_; ++i) gens.push_back(vcol(i, 1));
    return gens;
}

std::optional<std::vector<u64>> SmithForm::solve(const std::vector<u64>& b) const {
    if (!U_ || !V_) throw InvalidArgument("solving needs row and column tracking");
    std::vector<u64> y = mat_vec(R_, *U_, b);
    std::vector<u64> z(cols_, 0);
    const u64 p = R_.p();
    for (int i = 0; i < rows_; ++i) {
        if (i < rank()) {
            int e = exps_[i];
            if (R_.val(y[i]) < e) return std::nullopt;
            z[i] = y[i] / ipow(p, static_cast<unsigned>(e));
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return mat_vec(R_, *V_, z);
}

std::vector<u64> solve_invertible(const Zmod& R, Matrix A, std::vector<u64> b) {
    const int n = A.rows;
    if (A.cols != n || static_cast<int>(b.size()) != n) throw InvalidArgument("solve_invertible needs a square system");
    for (int k = 0; k < n; ++k) {
        int pr = -1;
        for (int r = k; r < n; ++r)
            if (R.is_unit(A.at(r, k))) {
                pr = r;
                break;
            }
        if (pr < 0) throw NonUnit("matrix is not invertible over Z/p^m");
        swap_rows(A, k, pr);
        std::swap(b[k], b[pr]);
        u64 inv = R.inv(A.at(k, k));
        scale_row(R, A, k, inv);
        b[k] = R.mul(b[k], inv);
        for (int r = 0; r < n; ++r) {
            if (r == k) continue;
            u64 f = A.at(r, k);
            if (!f) continue;
            axpy_row(R, A, r, k, f, k);
            b[r] = R.sub(b[r], R.mul(f, b[k]));
        }
    }
    return b;
}

u64 determinant(const Zmod& R, Matrix A) {
    const int n = A.rows;
    if (A.cols != n) throw InvalidArgument("determinant needs a square matrix");
    u64 det = 1 % R.modulus();
    for (int k = 0; k < n; ++k) {
        int pr = -1;
        for (int r = k; r < n; ++r)
            if (R.is_unit(A.at(r, k))) {
                pr = r;
                break;
            }
        if (pr < 0) throw NonUnit("determinant is not a unit");
        if (pr != k) {
            swap_rows(A, k, pr);
            det = R.neg(det);
        }
        u64 piv = A.at(k, k);
        det = R.mul(det, piv);
        u64 inv = R.inv(piv);
        for (int r = k + 1; r < n; ++r) {
            u64 f = R.mul(A.at(r, k), inv);
            axpy_row(R, A, r, k, f, k);
        }
    }
    return det;
}

ColumnSpan::ColumnSpan(const Zmod& R, const Matrix& generators)
    : gens_(generators), sf_(R, generators, true, true) {}

}  // namespace iwasawa
