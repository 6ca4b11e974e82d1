#ifndef FDRM_MATRIX_HPP
#define FDRM_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "fdrm/field.hpp"

namespace fdrm {

/// Dense matrix over the base field F_q of a context. Entries are the
/// integer codes used by FieldCtx base-field operations.
struct MatFq {
    const FieldCtx* ctx = nullptr;
    std::size_t rows = 0, cols = 0;
    std::vector<u32> a;  // row-major

    MatFq() = default;
    MatFq(const FieldCtx* c, std::size_t r, std::size_t n)
        : ctx(c), rows(r), cols(n), a(r * n, 0) {}

    u32& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    u32 at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    bool is_zero() const;
    bool operator==(const MatFq& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

MatFq mat_add(const MatFq& x, const MatFq& y);
MatFq mat_sub(const MatFq& x, const MatFq& y);
MatFq mat_scale(u32 c, const MatFq& x);
MatFq mat_transpose(const MatFq& x);

/// Rank by Gaussian elimination. If cap is nonzero, stop early once the
/// rank is known to be >= cap and report cap.
std::size_t mat_rank(const MatFq& x, std::size_t cap = 0);

/// Basis of the right kernel {v : x v = 0}, one column vector per entry.
std::vector<std::vector<u32>> mat_kernel_basis(const MatFq& x);

/// Dense matrix over the extension field F_{q^m}.
struct MatExt {
    const FieldCtx* ctx = nullptr;
    std::size_t rows = 0, cols = 0;
    std::vector<Felt> a;

    MatExt() = default;
    MatExt(const FieldCtx* c, std::size_t r, std::size_t n);

    Felt& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Felt& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

MatExt ext_mul(const MatExt& x, const MatExt& y);
std::size_t ext_rank(MatExt x);
Felt ext_det(MatExt x);  // square only

/// Solve x * s = b for s (x square). Returns nullopt when singular.
std::optional<std::vector<Felt>> ext_solve(const MatExt& x, const std::vector<Felt>& b);

/// Reduced row echelon form in place; returns the rank.
std::size_t ext_rref(MatExt& x);

/// True when every maximal (k x k, for a k x n matrix with k <= n) minor is
/// nonzero. Throws when C(n, k) exceeds the enumeration budget.
bool all_maximal_minors_nonzero(const MatExt& x, u64 budget = 1000000);

u64 binomial(u64 n, u64 k);  // saturates at UINT64_MAX

}  // namespace fdrm

#endif
