#include "fdrm/field.hpp"

#include <algorithm>
#include <sstream>

namespace fdrm {

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool Felt::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](u32 c) { return c == 0; });
}

// ---------------------------------------------------------------------------
// generic polynomial helpers over a small field given by SmallFieldOps
// ---------------------------------------------------------------------------

namespace {

using Poly = std::vector<u32>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, const SmallFieldOps& ops) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) r[i + j] = ops.add(r[i + j], ops.mul(a[i], b[j]));
    }
    return r;
}

u32 field_neg(u32 a, const SmallFieldOps& ops) {
    if (a == 0) return 0;
    // -a = a * (q-2 additions)? cheaper: find b with a+b=0 by scanning is
    // wasteful; use char-p structure only available to the caller. Instead
    // derive from add: -a = (p-1)*a in the prime field sense. We do not know
    // p here, so iterate: b = a added until wrap. q is tiny in practice.
    u32 s = a;
    u32 prev = a;
    while (s != 0) {
        prev = s;
        s = ops.add(s, a);
    }
    // prev + a == 0
    return prev;
}

u32 field_sub(u32 a, u32 b, const SmallFieldOps& ops) {
    return ops.add(a, field_neg(b, ops));
}

// remainder of a mod f (f monic)
Poly poly_mod(Poly a, const Poly& f, const SmallFieldOps& ops) {
    trim(a);
    size_t df = f.size() - 1;
    while (a.size() > df) {
        u32 lead = a.back();
        size_t shift = a.size() - 1 - df;
        if (lead != 0) {
            for (size_t i = 0; i < df; ++i)
                if (f[i] != 0) a[shift + i] = field_sub(a[shift + i], ops.mul(lead, f[i]), ops);
        }
        a.pop_back();
        trim(a);
        if (a.size() <= df && (a.empty() || a.size() - 1 < df)) break;
    }
    trim(a);
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, const SmallFieldOps& ops) {
    return poly_mod(poly_mul(a, b, ops), f, ops);
}

Poly poly_gcd(Poly a, Poly b, const SmallFieldOps& ops) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic for the mod step
        Poly bm = b;
        u32 ilead = ops.inv(bm.back());
        for (auto& c : bm) c = ops.mul(c, ilead);
        Poly r = poly_mod(a, bm, ops);
        a = std::move(b);
        b = std::move(r);
        trim(a);
        trim(b);
    }
    return a;
}

// x^(Q^reps) mod f, computed by repeated Frobenius (power Q) steps
Poly poly_frob_power(const Poly& f, u64 reps, const SmallFieldOps& ops) {
    Poly t = {0, 1};  // x
    t = poly_mod(t, f, ops);
    for (u64 r = 0; r < reps; ++r) {
        // t = t^Q mod f by square-and-multiply
        Poly acc = {1};
        Poly base = t;
        u64 exp = ops.q;
        while (exp > 0) {
            if (exp & 1) acc = poly_mulmod(acc, base, f, ops);
            base = poly_mulmod(base, base, f, ops);
            exp >>= 1;
        }
        t = std::move(acc);
    }
    return t;
}

std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> ps;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace

bool poly_irreducible(const Poly& f, const SmallFieldOps& ops) {
    if (f.size() < 2) return false;
    size_t d = f.size() - 1;
    if (f.back() != 1) throw std::invalid_argument("poly_irreducible: f must be monic");
    if (d == 1) return true;
    // Rabin test: x^(Q^d) == x mod f, and gcd(x^(Q^(d/l)) - x, f) = 1
    // for every prime l dividing d.
    Poly xd = poly_frob_power(f, d, ops);
    Poly x = poly_mod({0, 1}, f, ops);
    Poly diff = xd;
    diff.resize(std::max(diff.size(), x.size()), 0);
    for (size_t i = 0; i < x.size(); ++i) diff[i] = field_sub(diff[i], x[i], ops);
    trim(diff);
    if (!diff.empty()) return false;
    for (u64 l : prime_divisors(d)) {
        Poly xe = poly_frob_power(f, d / l, ops);
        Poly g = xe;
        g.resize(std::max(g.size(), x.size()), 0);
        for (size_t i = 0; i < x.size(); ++i) g[i] = field_sub(g[i], x[i], ops);
        trim(g);
        Poly gc = poly_gcd(f, g, ops);
        if (gc.size() != 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// FieldCtx
// ---------------------------------------------------------------------------

namespace {

// lexicographically smallest monic irreducible of degree d over the field
// described by ops ("lexicographic" compares (c_0, ..., c_{d-1})).
Poly smallest_irreducible(size_t d, const SmallFieldOps& ops) {
    if (d == 1) return {0, 1};  // x itself
    Poly f(d + 1, 0);
    f[d] = 1;
    std::vector<u32> c(d, 0);
    c[0] = 1;  // degree >= 2 irreducibles have a nonzero constant term
    // cheap root filter, worthwhile for small fields
    auto has_root = [&](const Poly& g) {
        if (ops.q > 4096) return false;
        for (u64 x = 0; x < ops.q; ++x) {
            u32 acc = 0;
            for (size_t i = g.size(); i-- > 0;)
                acc = ops.add(ops.mul(acc, static_cast<u32>(x)), g[i]);
            if (acc == 0) return true;
        }
        return false;
    };
    while (true) {
        for (size_t i = 0; i < d; ++i) f[i] = c[i];
        if (!has_root(f) && poly_irreducible(f, ops)) return f;
        // increment: c is compared lexicographically with c[0] most
        // significant, so advance the last position first
        size_t i = d;
        while (i > 0) {
            --i;
            if (++c[i] < ops.q) break;
            c[i] = 0;
            if (i == 0) throw std::logic_error("no irreducible found");
        }
    }
}

}  // namespace

u32 FieldCtx::badd_slow(u32 a, u32 b) const {
    // digitwise addition base p
    u32 r = 0, mult = 1;
    for (u64 i = 0; i < e; ++i) {
        u32 da = a % p, db = b % p;
        r += ((da + db) % p) * mult;
        a /= static_cast<u32>(p);
        b /= static_cast<u32>(p);
        mult *= static_cast<u32>(p);
    }
    return r;
}

u32 FieldCtx::bmul_slow(u32 a, u32 b) const {
    // polynomial multiplication mod base_modulus over F_p
    std::vector<u32> da(e), db(e);
    for (u64 i = 0; i < e; ++i) {
        da[i] = a % p;
        a /= static_cast<u32>(p);
        db[i] = b % p;
        b /= static_cast<u32>(p);
    }
    std::vector<u32> prod(2 * e - 1, 0);
    for (u64 i = 0; i < e; ++i)
        for (u64 j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % static_cast<u32>(p);
    // reduce
    for (size_t i = prod.size(); i-- > e;) {
        u32 lead = prod[i];
        if (lead != 0) {
            prod[i] = 0;
            for (u64 j = 0; j < e; ++j) {
                u32 sub = (lead * base_modulus[j]) % static_cast<u32>(p);
                prod[i - e + j] = (prod[i - e + j] + static_cast<u32>(p) - sub) % static_cast<u32>(p);
            }
        }
    }
    u32 r = 0, mult = 1;
    for (u64 i = 0; i < e; ++i) {
        r += prod[i] * mult;
        mult *= static_cast<u32>(p);
    }
    return r;
}

u32 FieldCtx::badd(u32 a, u32 b) const {
    if (tables_) return add_tab_[a * q + b];
    return badd_slow(a, b);
}

u32 FieldCtx::bneg(u32 a) const {
    // negate each base-p digit
    u32 r = 0, mult = 1, x = a;
    for (u64 i = 0; i < e; ++i) {
        u32 d = x % p;
        r += (d == 0 ? 0 : static_cast<u32>(p) - d) * mult;
        x /= static_cast<u32>(p);
        mult *= static_cast<u32>(p);
    }
    return r;
}

u32 FieldCtx::bsub(u32 a, u32 b) const { return badd(a, bneg(b)); }

u32 FieldCtx::bmul(u32 a, u32 b) const {
    if (tables_) return mul_tab_[a * q + b];
    return bmul_slow(a, b);
}

u32 FieldCtx::binv(u32 a) const {
    if (a == 0) throw std::domain_error("binv: zero has no inverse");
    if (tables_) return inv_tab_[a];
    // a^(q-2)
    u32 r = 1, base = a;
    u64 exp = q - 2;
    while (exp > 0) {
        if (exp & 1) r = bmul_slow(r, base);
        base = bmul_slow(base, base);
        exp >>= 1;
    }
    return r;
}

void FieldCtx::check(const Felt& a) const {
    if (a.ctx != this) throw std::invalid_argument("field element from wrong context");
    if (a.coeffs.size() != m) throw std::invalid_argument("field element has wrong length");
}

Felt FieldCtx::zero() const { return Felt{this, std::vector<u32>(m, 0)}; }

Felt FieldCtx::one() const {
    Felt r = zero();
    r.coeffs[0] = 1;
    return r;
}

Felt FieldCtx::beta() const {
    if (m == 1) return make({bneg(top_modulus[0])});  // residue of x mod a linear modulus
    Felt r = zero();
    r.coeffs[1] = 1;
    return r;
}

Felt FieldCtx::beta_pow(u64 i) const {
    if (m == 1) {
        // beta is the residue class of x mod a degree-1 modulus: x = -c0
        Felt b = make({bneg(top_modulus[0])});
        return pow(b, i);
    }
    if (i < m) {
        Felt r = zero();
        r.coeffs[i] = 1;
        return r;
    }
    return pow(beta(), i);
}

Felt FieldCtx::from_base(u32 a) const {
    if (a >= q) throw std::invalid_argument("from_base: value out of range");
    Felt r = zero();
    r.coeffs[0] = a;
    return r;
}

Felt FieldCtx::make(std::vector<u32> coeffs) const {
    if (coeffs.size() != m) throw std::invalid_argument("make: wrong coefficient count");
    for (u32 c : coeffs)
        if (c >= q) throw std::invalid_argument("make: coefficient out of range");
    return Felt{this, std::move(coeffs)};
}

Felt FieldCtx::add(const Felt& a, const Felt& b) const {
    check(a);
    check(b);
    Felt r = zero();
    for (u64 i = 0; i < m; ++i) r.coeffs[i] = badd(a.coeffs[i], b.coeffs[i]);
    return r;
}

Felt FieldCtx::neg(const Felt& a) const {
    check(a);
    Felt r = zero();
    for (u64 i = 0; i < m; ++i) r.coeffs[i] = bneg(a.coeffs[i]);
    return r;
}

Felt FieldCtx::sub(const Felt& a, const Felt& b) const { return add(a, neg(b)); }

Felt FieldCtx::scalar_mul(u32 c, const Felt& a) const {
    check(a);
    Felt r = zero();
    for (u64 i = 0; i < m; ++i) r.coeffs[i] = bmul(c, a.coeffs[i]);
    return r;
}

Felt FieldCtx::mul(const Felt& a, const Felt& b) const {
    check(a);
    check(b);
    if (m == 1) return Felt{this, {bmul(a.coeffs[0], b.coeffs[0])}};
    std::vector<u32> prod(2 * m - 1, 0);
    for (u64 i = 0; i < m; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (u64 j = 0; j < m; ++j)
            if (b.coeffs[j] != 0) prod[i + j] = badd(prod[i + j], bmul(a.coeffs[i], b.coeffs[j]));
    }
    Felt r = zero();
    for (u64 i = 0; i < m; ++i) r.coeffs[i] = prod[i];
    for (u64 t = 0; t + m < prod.size() + 0; ++t) {
        u32 c = prod[m + t];
        if (c == 0) continue;
        for (u64 i = 0; i < m; ++i) r.coeffs[i] = badd(r.coeffs[i], bmul(c, red_[t][i]));
    }
    return r;
}

Felt FieldCtx::pow(const Felt& a, u64 exp) const {
    check(a);
    Felt r = one();
    Felt base = a;
    while (exp > 0) {
        if (exp & 1) r = mul(r, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return r;
}

Felt FieldCtx::inv(const Felt& a) const {
    check(a);
    if (a.is_zero()) throw std::domain_error("inv: zero has no inverse");
    // extended Euclid in F_q[x] on (a, top_modulus)
    Poly r0 = top_modulus;
    Poly r1(a.coeffs);
    trim(r1);
    Poly s0 = {};  // coefficients of top_modulus in the combination (unused)
    Poly t0 = {};
    Poly t1 = {1};
    SmallFieldOps ops{q, [this](u32 x, u32 y) { return badd(x, y); },
                      [this](u32 x, u32 y) { return bmul(x, y); },
                      [this](u32 x) { return binv(x); }};
    while (!r1.empty() && r1.size() > 1) {
        // quotient of r0 by r1
        Poly quot(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
        Poly rem = r0;
        u32 il = binv(r1.back());
        while (rem.size() >= r1.size() && !rem.empty()) {
            u32 c = bmul(rem.back(), il);
            size_t sh = rem.size() - r1.size();
            quot[sh] = c;
            for (size_t i = 0; i < r1.size(); ++i)
                rem[sh + i] = bsub(rem[sh + i], bmul(c, r1[i]));
            trim(rem);
            if (rem.size() < r1.size()) break;
        }
        // (r0, r1) <- (r1, rem); (t0, t1) <- (t1, t0 - quot*t1)
        Poly qt = poly_mul(quot, t1, ops);
        Poly tn = t0;
        tn.resize(std::max(tn.size(), qt.size()), 0);
        for (size_t i = 0; i < qt.size(); ++i) tn[i] = bsub(tn[i], qt[i]);
        trim(tn);
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(tn);
    }
    if (r1.empty()) throw std::logic_error("inv: element not coprime to modulus");
    // r1 is a nonzero constant: scale t1 by its inverse
    u32 ic = binv(r1[0]);
    Felt res = zero();
    for (size_t i = 0; i < t1.size(); ++i) res.coeffs[i] = bmul(ic, t1[i]);
    return res;
}

Felt FieldCtx::frobenius(const Felt& a, u64 i) const {
    check(a);
    Felt r = a;
    for (u64 t = 0; t < i; ++t) r = pow(r, q);
    return r;
}

FieldCtxPtr make_field(u64 p, u64 e, u64 m) {
    if (!is_prime(p)) throw std::invalid_argument("make_field: p must be prime");
    if (e == 0 || m == 0) throw std::invalid_argument("make_field: e and m must be positive");
    // reject fields whose size does not fit in 64 bits
    u64 total = 1;
    for (u64 i = 0; i < e * m; ++i) {
        if (total > UINT64_MAX / p)
            throw std::invalid_argument("make_field: field larger than 2^64");
        total *= p;
    }
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p = p;
    ctx->e = e;
    ctx->m = m;
    u64 q = 1;
    for (u64 i = 0; i < e; ++i) q *= p;
    ctx->q = q;
    ctx->order = total;
    if (q > 0x10000) throw std::invalid_argument("make_field: base field larger than 2^16");

    // prime field ops for base modulus selection
    SmallFieldOps pops{p,
                       [p](u32 a, u32 b) { return static_cast<u32>((a + b) % p); },
                       [p](u32 a, u32 b) { return static_cast<u32>((static_cast<u64>(a) * b) % p); },
                       [p](u32 a) {
                           // a^(p-2) mod p
                           u64 r = 1, base = a, exp = p - 2;
                           while (exp) {
                               if (exp & 1) r = r * base % p;
                               base = base * base % p;
                               exp >>= 1;
                           }
                           return static_cast<u32>(r);
                       }};
    ctx->base_modulus = (e == 1) ? Poly{0, 1} : smallest_irreducible(e, pops);
    if (e == 1) ctx->base_modulus = {0, 1};  // x itself: residue field is F_p directly

    // optional lookup tables for the base field
    if (q <= 256) {
        ctx->tables_ = false;  // fill using slow paths first
        ctx->add_tab_.resize(q * q);
        ctx->mul_tab_.resize(q * q);
        ctx->inv_tab_.resize(q);
        for (u64 a = 0; a < q; ++a)
            for (u64 b = 0; b < q; ++b) {
                ctx->add_tab_[a * q + b] = ctx->badd_slow(static_cast<u32>(a), static_cast<u32>(b));
                ctx->mul_tab_[a * q + b] = ctx->bmul_slow(static_cast<u32>(a), static_cast<u32>(b));
            }
        for (u64 a = 1; a < q; ++a) {
            for (u64 b = 1; b < q; ++b)
                if (ctx->mul_tab_[a * q + b] == 1) {
                    ctx->inv_tab_[a] = static_cast<u32>(b);
                    break;
                }
        }
        ctx->tables_ = true;
    }

    // top modulus over F_q
    const FieldCtx* raw = ctx.get();
    SmallFieldOps qops{q, [raw](u32 a, u32 b) { return raw->badd(a, b); },
                       [raw](u32 a, u32 b) { return raw->bmul(a, b); },
                       [raw](u32 a) { return raw->binv(a); }};
    ctx->top_modulus = smallest_irreducible(m, qops);

    // reduction rows: beta^(m+t) in the basis
    if (m >= 1) {
        std::vector<u32> r0(m);
        for (u64 i = 0; i < m; ++i) r0[i] = ctx->bneg(ctx->top_modulus[i]);
        ctx->red_.push_back(r0);
        for (u64 t = 1; t + 1 < m; ++t) {
            const auto& prev = ctx->red_.back();
            std::vector<u32> cur(m, 0);
            // multiply prev by beta: shift up, reduce overflow with r0
            u32 top = prev[m - 1];
            for (u64 i = m; i-- > 1;) cur[i] = prev[i - 1];
            cur[0] = 0;
            if (top != 0)
                for (u64 i = 0; i < m; ++i) cur[i] = ctx->badd(cur[i], ctx->bmul(top, r0[i]));
            ctx->red_.push_back(cur);
        }
    }
    return ctx;
}

FieldCtxPtr make_field_q(u64 q, u64 m) {
    if (q < 2) throw std::invalid_argument("make_field_q: q must be at least 2");
    u64 p = q;
    for (u64 d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    u64 e = 0, t = q;
    while (t > 1) {
        if (t % p != 0) throw std::invalid_argument("make_field_q: q is not a prime power");
        t /= p;
        ++e;
    }
    return make_field(p, e, m);
}

std::string to_string(const Felt& a) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (i) os << ",";
        os << a.coeffs[i];
    }
    os << ")";
    return os.str();
}

}  // namespace fdrm
