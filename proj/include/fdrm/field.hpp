#ifndef FDRM_FIELD_HPP
#define FDRM_FIELD_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdrm {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

class FieldCtx;

/// Element of F_{q^m}, stored as coefficients in the polynomial basis
/// (1, beta, ..., beta^{m-1}). Each coefficient is an F_q value encoded
/// as an integer in [0, q) (base-p digits of the residue polynomial).
struct Felt {
    const FieldCtx* ctx = nullptr;
    std::vector<u32> coeffs;

    bool is_zero() const;
    bool operator==(const Felt& o) const { return ctx == o.ctx && coeffs == o.coeffs; }
    bool operator!=(const Felt& o) const { return !(*this == o); }
};

/// F_{q^m} presented as an m-dimensional space over F_q = F_{p^e}.
/// Immutable after construction; safe to share across threads.
class FieldCtx {
  public:
    u64 p, e, m;
    u64 q;        // p^e
    u64 order;    // q^m = p^{e*m}
    std::vector<u32> base_modulus;  // degree e over F_p, coeffs low-to-high, monic
    std::vector<u32> top_modulus;   // degree m over F_q, coeffs low-to-high, monic

    // --- base field F_q, elements encoded in [0, q) ---
    u32 badd(u32 a, u32 b) const;
    u32 bsub(u32 a, u32 b) const;
    u32 bneg(u32 a) const;
    u32 bmul(u32 a, u32 b) const;
    u32 binv(u32 a) const;  // throws on 0

    // --- extension field F_{q^m} ---
    Felt zero() const;
    Felt one() const;
    Felt beta() const;                    // the basis generator
    Felt beta_pow(u64 i) const;           // beta^i
    Felt from_base(u32 a) const;          // embed F_q element
    Felt make(std::vector<u32> coeffs) const;

    Felt add(const Felt& a, const Felt& b) const;
    Felt sub(const Felt& a, const Felt& b) const;
    Felt neg(const Felt& a) const;
    Felt mul(const Felt& a, const Felt& b) const;
    Felt scalar_mul(u32 c, const Felt& a) const;  // c in F_q
    Felt inv(const Felt& a) const;                // throws on 0
    Felt pow(const Felt& a, u64 exp) const;
    Felt frobenius(const Felt& a, u64 i) const;   // a^{q^i}

    friend std::shared_ptr<const FieldCtx> make_field(u64 p, u64 e, u64 m);

  private:
    FieldCtx() = default;
    void check(const Felt& a) const;
    // reduction rows: beta^{m+t} expressed in the basis, t in [m-1]
    std::vector<std::vector<u32>> red_;
    // lookup tables for small q
    bool tables_ = false;
    std::vector<u32> mul_tab_, add_tab_, inv_tab_;
    u32 bmul_slow(u32 a, u32 b) const;
    u32 badd_slow(u32 a, u32 b) const;
};

using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

/// Deterministic field construction: moduli are the lexicographically
/// smallest irreducibles of their degree (coefficients compared
/// low-to-high). Throws if p is not prime or p^{e*m} > 2^64.
FieldCtxPtr make_field(u64 p, u64 e, u64 m);

/// Convenience: factor a prime power q = p^e and build F_{q^m}.
FieldCtxPtr make_field_q(u64 q, u64 m);

bool is_prime(u64 n);

/// Irreducibility of a monic polynomial (coeffs low-to-high, values in
/// [0, Q)) over a field of size Q whose arithmetic is given by add/mul/inv
/// callables. Used for modulus selection and exposed for tests.
struct SmallFieldOps {
    u64 q;
    std::function<u32(u32, u32)> add;
    std::function<u32(u32, u32)> mul;
    std::function<u32(u32)> inv;
};
bool poly_irreducible(const std::vector<u32>& f, const SmallFieldOps& ops);

std::string to_string(const Felt& a);

}  // namespace fdrm

#endif
