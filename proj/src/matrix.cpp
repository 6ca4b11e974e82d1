#include "fdrm/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace fdrm {

bool MatFq::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](u32 v) { return v == 0; });
}

static void check_same(const MatFq& x, const MatFq& y) {
    if (x.ctx != y.ctx || x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("matrix shape or field mismatch");
}

MatFq mat_add(const MatFq& x, const MatFq& y) {
    check_same(x, y);
    MatFq r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.ctx->badd(x.a[i], y.a[i]);
    return r;
}

MatFq mat_sub(const MatFq& x, const MatFq& y) {
    check_same(x, y);
    MatFq r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.ctx->bsub(x.a[i], y.a[i]);
    return r;
}

MatFq mat_scale(u32 c, const MatFq& x) {
    MatFq r = x;
    for (auto& v : r.a) v = x.ctx->bmul(c, v);
    return r;
}

MatFq mat_transpose(const MatFq& x) {
    MatFq r(x.ctx, x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

std::size_t mat_rank(const MatFq& x, std::size_t cap) {
    MatFq w = x;
    const FieldCtx* F = x.ctx;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < w.cols && rank < w.rows; ++col) {
        std::size_t piv = rank;
        while (piv < w.rows && w.at(piv, col) == 0) ++piv;
        if (piv == w.rows) continue;
        if (piv != rank)
            for (std::size_t j = col; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(rank, j));
        u32 il = F->binv(w.at(rank, col));
        for (std::size_t i = rank + 1; i < w.rows; ++i) {
            u32 f = w.at(i, col);
            if (f == 0) continue;
            u32 c = F->bmul(f, il);
            for (std::size_t j = col; j < w.cols; ++j)
                w.at(i, j) = F->bsub(w.at(i, j), F->bmul(c, w.at(rank, j)));
        }
        ++rank;
        if (cap != 0 && rank >= cap) return cap;
    }
    return rank;
}

std::vector<std::vector<u32>> mat_kernel_basis(const MatFq& x) {
    MatFq w = x;
    const FieldCtx* F = x.ctx;
    std::size_t n = w.cols;
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < w.rows; ++col) {
        std::size_t piv = rank;
        while (piv < w.rows && w.at(piv, col) == 0) ++piv;
        if (piv == w.rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(piv, j), w.at(rank, j));
        u32 il = F->binv(w.at(rank, col));
        for (std::size_t j = 0; j < n; ++j) w.at(rank, j) = F->bmul(il, w.at(rank, j));
        for (std::size_t i = 0; i < w.rows; ++i) {
            if (i == rank) continue;
            u32 f = w.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                w.at(i, j) = F->bsub(w.at(i, j), F->bmul(f, w.at(rank, j)));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<u32>> basis;
    for (std::size_t fc = 0; fc < n; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<u32> v(n, 0);
        v[fc] = 1;
        for (std::size_t r = 0; r < rank; ++r)
            v[pivot_col[r]] = F->bneg(w.at(r, fc));
        basis.push_back(std::move(v));
    }
    return basis;
}

MatExt::MatExt(const FieldCtx* c, std::size_t r, std::size_t n)
    : ctx(c), rows(r), cols(n), a(r * n, c->zero()) {}

MatExt ext_mul(const MatExt& x, const MatExt& y) {
    if (x.ctx != y.ctx || x.cols != y.rows)
        throw std::invalid_argument("ext_mul: shape or field mismatch");
    const FieldCtx* F = x.ctx;
    MatExt r(F, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                r.at(i, j) = F->add(r.at(i, j), F->mul(x.at(i, k), y.at(k, j)));
        }
    return r;
}

std::size_t ext_rref(MatExt& w) {
    const FieldCtx* F = w.ctx;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < w.cols && rank < w.rows; ++col) {
        std::size_t piv = rank;
        while (piv < w.rows && w.at(piv, col).is_zero()) ++piv;
        if (piv == w.rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(rank, j));
        Felt il = F->inv(w.at(rank, col));
        for (std::size_t j = 0; j < w.cols; ++j) w.at(rank, j) = F->mul(il, w.at(rank, j));
        for (std::size_t i = 0; i < w.rows; ++i) {
            if (i == rank) continue;
            Felt f = w.at(i, col);
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < w.cols; ++j)
                w.at(i, j) = F->sub(w.at(i, j), F->mul(f, w.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

std::size_t ext_rank(MatExt x) { return ext_rref(x); }

Felt ext_det(MatExt w) {
    if (w.rows != w.cols) throw std::invalid_argument("ext_det: matrix not square");
    const FieldCtx* F = w.ctx;
    Felt det = F->one();
    for (std::size_t col = 0; col < w.cols; ++col) {
        std::size_t piv = col;
        while (piv < w.rows && w.at(piv, col).is_zero()) ++piv;
        if (piv == w.rows) return F->zero();
        if (piv != col) {
            for (std::size_t j = col; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(col, j));
            det = F->neg(det);
        }
        det = F->mul(det, w.at(col, col));
        Felt il = F->inv(w.at(col, col));
        for (std::size_t i = col + 1; i < w.rows; ++i) {
            Felt f = w.at(i, col);
            if (f.is_zero()) continue;
            Felt c = F->mul(f, il);
            for (std::size_t j = col; j < w.cols; ++j)
                w.at(i, j) = F->sub(w.at(i, j), F->mul(c, w.at(col, j)));
        }
    }
    return det;
}

std::optional<std::vector<Felt>> ext_solve(const MatExt& x, const std::vector<Felt>& b) {
    if (x.rows != x.cols || b.size() != x.rows)
        throw std::invalid_argument("ext_solve: shape mismatch");
    const FieldCtx* F = x.ctx;
    MatExt w(F, x.rows, x.cols + 1);
    for (std::size_t i = 0; i < x.rows; ++i) {
        for (std::size_t j = 0; j < x.cols; ++j) w.at(i, j) = x.at(i, j);
        w.at(i, x.cols) = b[i];
    }
    ext_rref(w);
    std::vector<Felt> s(x.cols, F->zero());
    for (std::size_t i = 0; i < x.rows; ++i) {
        std::size_t lead = x.cols + 1;
        for (std::size_t j = 0; j <= x.cols; ++j)
            if (!w.at(i, j).is_zero()) {
                lead = j;
                break;
            }
        if (lead == x.cols) return std::nullopt;  // inconsistent row
        if (lead < x.cols) s[lead] = w.at(i, x.cols);
    }
    // verify (guards the singular-but-consistent case)
    for (std::size_t i = 0; i < x.rows; ++i) {
        Felt acc = F->zero();
        for (std::size_t j = 0; j < x.cols; ++j) acc = F->add(acc, F->mul(x.at(i, j), s[j]));
        if (!(acc == b[i])) return std::nullopt;
    }
    return s;
}

u64 binomial(u64 n, u64 k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (u64 i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact at each step
        if (r > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
    }
    return static_cast<u64>(r);
}

bool all_maximal_minors_nonzero(const MatExt& x, u64 budget) {
    std::size_t k = x.rows, n = x.cols;
    if (k > n) throw std::invalid_argument("all_maximal_minors_nonzero: needs rows <= cols");
    if (k == 0) return true;
    if (binomial(n, k) > budget)
        throw std::runtime_error("all_maximal_minors_nonzero: minor count exceeds budget");
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    const FieldCtx* F = x.ctx;
    while (true) {
        MatExt sub(F, k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = x.at(i, idx[j]);
        if (ext_det(sub).is_zero()) return false;
        // next combination
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] + (k - i) < n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return true;
        }
    }
}

}  // namespace fdrm
