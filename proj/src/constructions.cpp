#include "fdrm/constructions.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace fdrm {

namespace {

using Dict = std::map<Cell, Cell>;

Dict map_dict(const CellMap& m) {
    Dict d;
    for (const auto& pr : m.pairs) {
        if (!d.emplace(pr.first, pr.second).second)
            throw std::invalid_argument("cell map repeats a source cell");
    }
    return d;
}

u64 pow_sat(u64 base, u64 exp) {
    u64 r = 1;
    for (u64 i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

/// Rank of the F_q-span of a list of extension elements.
std::size_t felt_span_rank(const FieldCtx* cx, const std::vector<Felt>& v) {
    if (v.empty()) return 0;
    MatFq mat(cx, cx->m, v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        for (std::size_t i = 0; i < cx->m; ++i) mat.at(i, j) = v[j].coeffs[i];
    return mat_rank(mat);
}

/// Smallest beta power outside the F_q-span of v. Throws when the span is
/// already the whole field.
Felt independent_beta_power(const FieldCtx* cx, const std::vector<Felt>& v) {
    std::size_t base = felt_span_rank(cx, v);
    for (u64 e = 0; e < cx->m; ++e) {
        std::vector<Felt> ext = v;
        ext.push_back(cx->beta_pow(e));
        if (felt_span_rank(cx, ext) > base) return cx->beta_pow(e);
    }
    throw std::logic_error("no independent element: span already full");
}

void check_same_base_field(const FieldCtxPtr& a, const FieldCtxPtr& b, const char* where) {
    if (!a || !b) throw std::invalid_argument(std::string(where) + ": missing field context");
    if (a->p != b->p || a->e != b->e)
        throw std::invalid_argument(std::string(where) + ": base fields differ");
}

}  // namespace

MatFq SysMrdSpec::a1() const {
    if (a.cols == 0) return MatFq(a.ctx, a.rows, 0);
    MatFq out(a.ctx, a.rows, a.cols - 1);
    for (std::size_t i = 0; i < out.rows; ++i)
        for (std::size_t j = 0; j < out.cols; ++j) out.at(i, j) = a.at(i, j);
    return out;
}

MatFq SysMrdSpec::a2() const {
    if (a.rows == 0) return a;
    MatFq out(a.ctx, a.rows - 1, a.cols);
    for (std::size_t i = 0; i < out.rows; ++i)
        for (std::size_t j = 0; j < out.cols; ++j) out.at(i, j) = a.at(i + 1, j);
    return out;
}

bool all_minors_nonzero(const MatFq& x) {
    const FieldCtx* cx = x.ctx;
    std::size_t maxo = std::min(x.rows, x.cols);
    // Determinant of the selected submatrix over F_q by Gaussian elimination.
    auto subdet = [&](const std::vector<std::size_t>& ri, const std::vector<std::size_t>& ci) {
        std::size_t o = ri.size();
        std::vector<u32> s(o * o);
        for (std::size_t i = 0; i < o; ++i)
            for (std::size_t j = 0; j < o; ++j) s[i * o + j] = x.at(ri[i], ci[j]);
        u32 det = 1;
        for (std::size_t c = 0; c < o; ++c) {
            std::size_t piv = c;
            while (piv < o && s[piv * o + c] == 0) ++piv;
            if (piv == o) return u32(0);
            if (piv != c) {
                for (std::size_t j = 0; j < o; ++j) std::swap(s[piv * o + j], s[c * o + j]);
                det = cx->bneg(det);
            }
            det = cx->bmul(det, s[c * o + c]);
            u32 inv = cx->binv(s[c * o + c]);
            for (std::size_t r = c + 1; r < o; ++r) {
                if (s[r * o + c] == 0) continue;
                u32 f = cx->bmul(s[r * o + c], inv);
                for (std::size_t j = c; j < o; ++j)
                    s[r * o + j] = cx->bsub(s[r * o + j], cx->bmul(f, s[c * o + j]));
            }
        }
        return det;
    };
    // Enumerate all row and column subsets of each order.
    for (std::size_t o = 1; o <= maxo; ++o) {
        std::vector<std::size_t> ri(o), ci(o);
        for (std::size_t i = 0; i < o; ++i) ri[i] = i;
        while (true) {
            for (std::size_t i = 0; i < o; ++i) ci[i] = i;
            while (true) {
                if (subdet(ri, ci) == 0) return false;
                // advance column subset
                std::size_t t = o;
                while (t > 0 && ci[t - 1] == x.cols - (o - t) - 1) --t;
                if (t == 0) break;
                ++ci[t - 1];
                for (std::size_t u = t; u < o; ++u) ci[u] = ci[u - 1] + 1;
            }
            std::size_t t = o;
            while (t > 0 && ri[t - 1] == x.rows - (o - t) - 1) --t;
            if (t == 0) break;
            ++ri[t - 1];
            for (std::size_t u = t; u < o; ++u) ri[u] = ri[u - 1] + 1;
        }
    }
    return true;
}

RankCode subcode_select(const ExtGenerator& g, const std::vector<std::size_t>& lambda) {
    const FieldCtx* cx = g.ctx.get();
    std::size_t k = g.k(), n = g.n(), m = cx->m;
    if (lambda.size() != k) throw std::invalid_argument("subcode_select: lambda length != k");
    for (std::size_t v : lambda)
        if (v > m) throw std::invalid_argument("subcode_select: lambda entry exceeds m");
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (g.G.at(i, j) != (i == j ? cx->one() : cx->zero()))
                throw std::invalid_argument("subcode_select: generator not systematic");
    RankCode c;
    c.ctx = g.ctx;
    c.m = m;
    c.n = n;
    c.delta_claimed = n - k + 1;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < lambda[i]; ++j) {
            Felt coef = cx->beta_pow(j);
            std::vector<Felt> word(n, cx->zero());
            for (std::size_t col = 0; col < n; ++col) word[col] = cx->mul(coef, g.G.at(i, col));
            c.basis.push_back(psi(word));
        }
    if (!basis_independent(c)) throw std::runtime_error("subcode_select: dependent basis");
    return c;
}

ExtGenerator sys_mrd_build(FieldCtxPtr ctx, const SysMrdSpec& spec) {
    const FieldCtx* cx = ctx.get();
    std::size_t n = spec.n, delta = spec.delta;
    if (delta < 2 || delta > n) throw std::invalid_argument("sys_mrd_build: need 2 <= delta <= n");
    std::size_t k = n - delta + 1;
    if (cx->m < n) throw std::invalid_argument("sys_mrd_build: field degree below n");
    if (cx->m < k * n - k * k + 2)
        throw std::invalid_argument("sys_mrd_build: field degree below k n - k^2 + 2");
    if (spec.a.rows != k || spec.a.cols != n - k)
        throw std::invalid_argument("sys_mrd_build: coefficient matrix shape");
    for (u32 v : spec.a.a)
        if (v == 0) throw std::invalid_argument("sys_mrd_build: zero coefficient");
    if (!all_minors_nonzero(spec.a1()) || !all_minors_nonzero(spec.a2()))
        throw std::invalid_argument("sys_mrd_build: minor condition violated");
    ExtGenerator g{ctx, MatExt(cx, k, n)};
    for (std::size_t i = 0; i < k; ++i) g.G.at(i, i) = cx->one();
    for (std::size_t j = k; j + 1 < n; ++j)
        for (std::size_t i = 0; i < k; ++i)
            g.G.at(i, j) = cx->scalar_mul(spec.a.at(i, j - k), cx->beta_pow(j - i));
    g.G.at(0, n - 1) = cx->scalar_mul(spec.a.at(0, n - 1 - k), cx->beta_pow(n));
    for (std::size_t i = 1; i < k; ++i)
        g.G.at(i, n - 1) = cx->scalar_mul(spec.a.at(i, n - 1 - k), cx->beta_pow(n - 1 - i));
    return g;
}

std::optional<SysMrdSpec> sys_mrd_search(u64 q, std::size_t n, std::size_t delta, u64 budget) {
    if (delta < 2 || delta > n) throw std::invalid_argument("sys_mrd_search: need 2 <= delta <= n");
    std::size_t k = n - delta + 1;
    std::size_t cells = k * (n - k);
    if (pow_sat(q - 1, cells) > budget) throw std::invalid_argument("sys_mrd_search: budget exceeded");
    FieldCtxPtr base = make_field_q(q, 1);
    SysMrdSpec spec;
    spec.n = n;
    spec.delta = delta;
    spec.a = MatFq(base.get(), k, n - k);
    for (u32& v : spec.a.a) v = 1;
    while (true) {
        if (all_minors_nonzero(spec.a1()) && all_minors_nonzero(spec.a2())) return spec;
        // advance last cell first, over values 1..q-1
        std::size_t t = cells;
        while (t > 0 && spec.a.a[t - 1] == q - 1) --t;
        if (t == 0) return std::nullopt;
        ++spec.a.a[t - 1];
        for (std::size_t u = t; u < cells; ++u) spec.a.a[u] = 1;
    }
}

RankCode construct_from_sys_mrd(const ExtGenerator& g, const SysMrdSpec& spec,
                                const FerrersDiagram& f) {
    const FieldCtx* cx = g.ctx.get();
    std::size_t n = spec.n, k = spec.k(), m = cx->m;
    if (f.n() != n) throw std::invalid_argument("construct_from_sys_mrd: column count mismatch");
    const auto& gamma = f.gamma();
    auto height = [&](std::size_t i) {
        std::size_t best = 0;
        for (std::size_t l = 0; l < k; ++l) best = std::max(best, gamma[l] + i - l);
        return std::min(best, m);
    };
    for (std::size_t i = k; i + 1 < n; ++i)
        if (gamma[i] != height(i))
            throw std::invalid_argument("construct_from_sys_mrd: column profile mismatch (middle)");
    std::size_t last = gamma[0] + n;
    for (std::size_t l = 1; l < k; ++l) last = std::max(last, gamma[l] + n - 1 - l);
    last = std::min(last, m);
    if (f.m() != last)
        throw std::invalid_argument("construct_from_sys_mrd: column profile mismatch (last)");
    std::vector<std::size_t> lambda(gamma.begin(), gamma.begin() + k);
    RankCode full = subcode_select(g, lambda);
    RankCode c;
    c.ctx = g.ctx;
    c.m = f.m();
    c.n = n;
    c.delta_claimed = spec.delta;
    c.diagram = f;
    for (const MatFq& b : full.basis) {
        MatFq t(cx, c.m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i < c.m)
                    t.at(i, j) = b.at(i, j);
                else if (b.at(i, j) != 0)
                    throw std::logic_error("construct_from_sys_mrd: content below diagram height");
            }
        c.basis.push_back(std::move(t));
    }
    if (!supported_on(c, f)) throw std::logic_error("construct_from_sys_mrd: support escaped diagram");
    return c;
}

u64 vandermonde_min_m(std::size_t n, std::size_t delta) {
    if (delta < 1 || delta > n) throw std::invalid_argument("vandermonde_min_m: delta range");
    long long nn = (long long)n, k = nn - (long long)delta + 1, t = nn - k;
    long long v;
    if (nn < 2 * k)
        v = (3 * (nn - 1) * t * t + (3 * nn + 1) * t - 4 * t * t * t) / 6 + 1;
    else
        v = k * (3 * k * nn - 4 * k * k - 3 * k + 3 * nn + 1) / 6 + 1;
    return v < 1 ? 1 : u64(v);
}

ExtGenerator vandermonde_mrd_build(FieldCtxPtr ctx, std::size_t n, std::size_t delta) {
    const FieldCtx* cx = ctx.get();
    if (delta < 1 || delta > n) throw std::invalid_argument("vandermonde_mrd_build: delta range");
    std::size_t k = n - delta + 1;
    if (cx->m < vandermonde_min_m(n, delta))
        throw std::invalid_argument("vandermonde_mrd_build: field degree below required bound");
    ExtGenerator g{ctx, MatExt(cx, k, n)};
    for (std::size_t l = 0; l < k; ++l) {
        g.G.at(l, l) = cx->one();
        for (std::size_t j = k; j < n; ++j)
            g.G.at(l, j) = cx->beta_pow(u64(j - k + 1) * (k - l));
    }
    return g;
}

RankCode construct_from_vandermonde(const ExtGenerator& g, const FerrersDiagram& f) {
    const FieldCtx* cx = g.ctx.get();
    std::size_t k = g.k(), n = g.n(), m = cx->m;
    if (f.n() != n) throw std::invalid_argument("construct_from_vandermonde: column count mismatch");
    const auto& gamma = f.gamma();
    for (std::size_t i = k; i < n; ++i) {
        std::size_t best = 0;
        for (std::size_t l = 0; l < k; ++l)
            best = std::max(best, gamma[l] + (i - k + 1) * (k - l));
        if (gamma[i] != std::min(best, m))
            throw std::invalid_argument("construct_from_vandermonde: column profile mismatch");
    }
    std::vector<std::size_t> lambda(gamma.begin(), gamma.begin() + k);
    RankCode full = subcode_select(g, lambda);
    RankCode c;
    c.ctx = g.ctx;
    c.m = f.m();
    c.n = n;
    c.delta_claimed = n - k + 1;
    c.diagram = f;
    for (const MatFq& b : full.basis) {
        MatFq t(cx, c.m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i < c.m)
                    t.at(i, j) = b.at(i, j);
                else if (b.at(i, j) != 0)
                    throw std::logic_error("construct_from_vandermonde: content below diagram height");
            }
        c.basis.push_back(std::move(t));
    }
    if (!supported_on(c, f))
        throw std::logic_error("construct_from_vandermonde: support escaped diagram");
    return c;
}

namespace {

/// One kernel-shortening attempt on fd (which must satisfy m >= n). gsel
/// selects among deterministic generator vectors.
std::optional<RankCode> shorten_attempt(const FerrersDiagram& fd, std::size_t delta, u64 q,
                                        int gsel, std::size_t target) {
    std::size_t m = fd.m(), n = fd.n();
    if (m < n || delta > n) return std::nullopt;
    FieldCtxPtr ctx = make_field_q(q, m);
    const FieldCtx* cx = ctx.get();
    std::vector<Felt> gv(n);
    for (std::size_t j = 0; j < n; ++j) {
        u64 e = 0;
        if (gsel == 0)
            e = j;
        else if (gsel == 1)
            e = m - n + j;
        else
            e = j * (m / n);
        gv[j] = cx->beta_pow(e);
    }
    ExtGenerator g = gabidulin_generator(ctx, gv, n - delta + 1);
    RankCode full = expand_generator(g, delta);
    // Kernel of the off-diagram entry constraints, in basis coordinates.
    std::vector<std::pair<std::size_t, std::size_t>> holes;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!fd.has_dot(i, j)) holes.emplace_back(i, j);
    MatFq cons(cx, holes.size(), full.k());
    for (std::size_t r = 0; r < holes.size(); ++r)
        for (std::size_t b = 0; b < full.k(); ++b)
            cons.at(r, b) = full.basis[b].at(holes[r].first, holes[r].second);
    auto kern = mat_kernel_basis(cons);
    if (kern.size() != target) return std::nullopt;
    RankCode c;
    c.ctx = ctx;
    c.m = m;
    c.n = n;
    c.delta_claimed = delta;
    c.diagram = fd;
    for (const auto& coef : kern) {
        MatFq acc(cx, m, n);
        for (std::size_t b = 0; b < full.k(); ++b) {
            if (coef[b] == 0) continue;
            for (std::size_t t = 0; t < acc.a.size(); ++t)
                acc.a[t] = cx->badd(acc.a[t], cx->bmul(coef[b], full.basis[b].a[t]));
        }
        c.basis.push_back(std::move(acc));
    }
    if (!supported_on(c, fd) || !basis_independent(c)) return std::nullopt;
    return c;
}

}  // namespace

RankCode shorten_to_diagram(const FerrersDiagram& f, std::size_t delta, u64 q) {
    if (delta == 0) throw std::invalid_argument("shorten_to_diagram: delta must be positive");
    if (delta > std::min(f.m(), f.n())) {
        RankCode c;
        c.ctx = make_field_q(q, 1);
        c.m = f.m();
        c.n = f.n();
        c.delta_claimed = delta;
        c.diagram = f;
        return c;  // only the zero codeword has rank >= delta
    }
    std::size_t target = singleton_like_bound(f, delta).k_max;
    if (delta == 1) {
        // one single-dot matrix per cell
        FieldCtxPtr ctx = make_field_q(q, 1);
        RankCode c;
        c.ctx = ctx;
        c.m = f.m();
        c.n = f.n();
        c.delta_claimed = 1;
        c.diagram = f;
        for (const auto& cell : f.cells()) {
            MatFq b(ctx.get(), f.m(), f.n());
            b.at(cell.first, cell.second) = 1;
            c.basis.push_back(std::move(b));
        }
        return c;
    }
    for (int gsel = 0; gsel < 3; ++gsel)
        if (auto c = shorten_attempt(f, delta, q, gsel, target)) return *c;
    FerrersDiagram ft = transpose(f);
    for (int gsel = 0; gsel < 3; ++gsel)
        if (auto c = shorten_attempt(ft, delta, q, gsel, target)) {
            RankCode out;
            out.ctx = c->ctx;
            out.m = f.m();
            out.n = f.n();
            out.delta_claimed = delta;
            out.diagram = f;
            // cell (i, j) of f corresponds to (n-1-j, m-1-i) of the
            // transposed diagram; rank is preserved
            for (const MatFq& b : c->basis) {
                MatFq t(b.ctx, f.m(), f.n());
                for (std::size_t i = 0; i < f.m(); ++i)
                    for (std::size_t j = 0; j < f.n(); ++j)
                        t.at(i, j) = b.at(f.n() - 1 - j, f.m() - 1 - i);
                out.basis.push_back(std::move(t));
            }
            if (!supported_on(out, f))
                throw std::logic_error("shorten_to_diagram: support escaped after transpose");
            return out;
        }
    throw std::runtime_error("shorten_to_diagram: bound " + std::to_string(target) +
                             " not attained by any attempt");
}

RankCode mds_diagonal_construct(const FerrersDiagram& f, std::size_t delta, u64 q) {
    if (delta < 1 || delta > f.n())
        throw std::invalid_argument("mds_diagonal_construct: delta range");
    Profile prof = profile(f);
    std::size_t tmax = 0;
    for (std::size_t t : prof.theta) tmax = std::max(tmax, t);
    if (tmax >= 2 && q < tmax - 1)
        throw std::invalid_argument("mds_diagonal_construct: q below theta_max - 1");
    FieldCtxPtr ctx = make_field_q(q, 1);
    const FieldCtx* cx = ctx.get();
    RankCode c;
    c.ctx = ctx;
    c.m = f.m();
    c.n = f.n();
    c.delta_claimed = delta;
    c.diagram = f;
    for (std::size_t i = 0; i < f.m(); ++i) {
        if (prof.theta[i] < delta) continue;
        // dot cells of the diagonal through (i, n-1), topmost first
        std::vector<Cell> cells;
        for (std::size_t t = std::min(i, f.n() - 1) + 1; t-- > 0;) {
            std::size_t r = i - t, col = f.n() - 1 - t;
            if (f.has_dot(r, col)) cells.emplace_back(r, col);
        }
        std::sort(cells.begin(), cells.end());  // topmost (smallest row) first
        MatFq gen = mds_generator(cx, prof.theta[i], delta);
        for (std::size_t r = 0; r < gen.rows; ++r) {
            MatFq b(cx, f.m(), f.n());
            for (std::size_t t = 0; t < cells.size(); ++t)
                b.at(cells[t].first, cells[t].second) = gen.at(r, t);
            c.basis.push_back(std::move(b));
        }
    }
    return c;
}

ExtGenerator gab_subcode_matrix(FieldCtxPtr ctx, const GabSubcodeSpec& sp) {
    const FieldCtx* cx = ctx.get();
    std::size_t eta = sp.eta, r = sp.r, d = sp.d, kappa = sp.kappa, mu = sp.mu;
    if (r < 1 || d < 1 || kappa != eta - r - d + 1 || r >= kappa || eta > mu + r)
        throw std::invalid_argument("gab_subcode_matrix: parameter constraints violated");
    if (cx->m != mu) throw std::invalid_argument("gab_subcode_matrix: context degree != mu");
    std::size_t w = eta - r;
    std::vector<Felt> g0(w);
    for (std::size_t j = 0; j < w; ++j) g0[j] = cx->beta_pow(j);
    MatExt G = gabidulin_generator(ctx, g0, kappa).G;  // kappa x w
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t wid = G.cols;
        MatExt H = G;
        // subtract the pivot row from the lower rows
        for (std::size_t s = i + 1; s < kappa; ++s)
            for (std::size_t c = 0; c < wid; ++c) H.at(s, c) = cx->sub(H.at(s, c), G.at(i, c));
        // choose t coefficients so columns i+1..kappa-1 of the pivot row vanish
        std::size_t nt = kappa - 1 - i;
        if (nt > 0) {
            MatExt M(cx, nt, nt);
            std::vector<Felt> b(nt, cx->zero());
            for (std::size_t e = 0; e < nt; ++e) {
                for (std::size_t l = 0; l < nt; ++l) M.at(e, l) = H.at(i + 1 + l, i + 1 + e);
                b[e] = cx->neg(H.at(i, i + 1 + e));
            }
            auto sol = ext_solve(M, b);
            if (!sol) throw std::logic_error("gab_subcode_matrix: pivot row system singular");
            for (std::size_t c = 0; c < wid; ++c) {
                Felt acc = H.at(i, c);
                for (std::size_t l = 0; l < nt; ++l)
                    acc = cx->add(acc, cx->mul((*sol)[l], H.at(i + 1 + l, c)));
                H.at(i, c) = acc;
            }
            for (std::size_t c = i + 1; c < kappa; ++c)
                if (!H.at(i, c).is_zero())
                    throw std::logic_error("gab_subcode_matrix: pivot row not cleared");
        }
        // consecutive differences from the bottom: rows become Frobenius
        // powers of f = g^{[1]} - g
        for (std::size_t s = kappa; s-- > i + 2;)
            for (std::size_t c = 0; c < wid; ++c)
                H.at(s, c) = cx->sub(H.at(s, c), H.at(s - 1, c));
        // fresh independent element for the appended column
        std::vector<Felt> fvals;
        for (std::size_t c = i + 1; c < wid; ++c) fvals.push_back(H.at(i + 1, c));
        Felt fnew = independent_beta_power(cx, fvals);
        MatExt G2(cx, kappa, wid + 1);
        for (std::size_t rr = 0; rr < kappa; ++rr)
            for (std::size_t c = 0; c < wid; ++c) G2.at(rr, c) = H.at(rr, c);
        for (std::size_t s = 0; i + 1 + s < kappa; ++s)
            G2.at(i + 1 + s, wid) = cx->frobenius(fnew, s);
        // renormalize so the new pivot column entry is 1 in every lower row
        Felt piv = H.at(i + 1, i + 1);
        if (piv.is_zero()) throw std::logic_error("gab_subcode_matrix: zero pivot");
        for (std::size_t s = 0; i + 1 + s < kappa; ++s) {
            Felt sc = cx->inv(cx->frobenius(piv, s));
            for (std::size_t c = 0; c <= wid; ++c)
                G2.at(i + 1 + s, c) = cx->mul(sc, G2.at(i + 1 + s, c));
        }
        G = std::move(G2);
    }
    // restore the identity block across the bottom rows
    std::size_t kr = kappa - r;
    if (kr > 0) {
        MatExt aug(cx, kr, 2 * kr);
        for (std::size_t i = 0; i < kr; ++i) {
            for (std::size_t j = 0; j < kr; ++j) aug.at(i, j) = G.at(r + i, r + j);
            aug.at(i, kr + i) = cx->one();
        }
        if (ext_rref(aug) != kr) throw std::logic_error("gab_subcode_matrix: singular tail block");
        MatExt nb(cx, kr, eta);
        for (std::size_t i = 0; i < kr; ++i)
            for (std::size_t c = 0; c < eta; ++c) {
                Felt acc = cx->zero();
                for (std::size_t j = 0; j < kr; ++j)
                    acc = cx->add(acc, cx->mul(aug.at(i, kr + j), G.at(r + j, c)));
                nb.at(i, c) = acc;
            }
        for (std::size_t i = 0; i < kr; ++i)
            for (std::size_t c = 0; c < eta; ++c) G.at(r + i, c) = nb.at(i, c);
    }
    // sanity: identity block and the staircase of zeros
    for (std::size_t i = 0; i < kappa; ++i)
        for (std::size_t j = 0; j < kappa; ++j)
            if (G.at(i, j) != (i == j ? cx->one() : cx->zero()))
                throw std::logic_error("gab_subcode_matrix: identity block broken");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = eta - (r - i); c < eta; ++c)
            if (!G.at(i, c).is_zero())
                throw std::logic_error("gab_subcode_matrix: staircase zeros broken");
    return {ctx, std::move(G)};
}

GabSubcodeSpec gab_subcode_spec(const FerrersDiagram& f, std::size_t delta, std::size_t r) {
    std::size_t n = f.n();
    if (r < 1 || r + 1 > delta || delta > n - r)
        throw std::invalid_argument("gab_subcode_spec: need r+1 <= delta <= n-r");
    const auto& gamma = f.gamma();
    for (std::size_t j = n - delta + 1; j < n; ++j)
        if (gamma[j] < n - r)
            throw std::invalid_argument("gab_subcode_spec: rightmost columns too short");
    GabSubcodeSpec sp;
    sp.eta = n;
    sp.r = r;
    sp.d = delta - r;
    sp.kappa = n - delta + 1;
    sp.mu = n - r;
    std::size_t acc = 0;
    for (std::size_t l = 0; l < r; ++l) {
        long a = long(gamma[l]) - 1;
        long b = long(gamma[n - r + l]) - long(n - r) - long(acc) - 1;
        long sl = std::min(a, b);
        if (sl < 0) throw std::invalid_argument("gab_subcode_spec: negative truncation length");
        if (!sp.s.empty() && std::size_t(sl) < sp.s.back())
            throw std::invalid_argument("gab_subcode_spec: truncation lengths not nondecreasing");
        sp.s.push_back(sl);
        acc += sl + 1;
    }
    return sp;
}

RankCode construct_gab_subcode(const FerrersDiagram& f, std::size_t delta, std::size_t r, u64 q) {
    GabSubcodeSpec sp = gab_subcode_spec(f, delta, r);
    std::size_t n = f.n(), mu = sp.mu, kappa = sp.kappa;
    const auto& gamma = f.gamma();
    std::size_t bottom = 0;
    for (std::size_t sl : sp.s) bottom += sl + 1;
    if (f.m() < mu + bottom)
        throw std::invalid_argument("construct_gab_subcode: diagram shorter than code rows");
    FieldCtxPtr ctx = make_field_q(q, mu);
    const FieldCtx* cx = ctx.get();
    ExtGenerator g = gab_subcode_matrix(ctx, sp);
    // row where the echeloned coefficient block of u_l starts in column n-r+t
    auto block_start = [&](std::size_t t, std::size_t l) {
        std::size_t off = mu;
        for (std::size_t lp = l + 1; lp <= t; ++lp) off += sp.s[lp] + 1;
        return off;
    };
    RankCode c;
    c.ctx = ctx;
    c.m = f.m();
    c.n = n;
    c.delta_claimed = delta;
    c.diagram = f;
    for (std::size_t l = 0; l < kappa; ++l) {
        std::size_t lim = l < r ? sp.s[l] + 1 : std::min<std::size_t>(gamma[l], mu);
        for (std::size_t j = 0; j < lim; ++j) {
            Felt coef = cx->beta_pow(j);
            MatFq b(cx, f.m(), n);
            for (std::size_t col = 0; col < n; ++col) {
                Felt v = cx->mul(coef, g.G.at(l, col));
                for (std::size_t i = 0; i < mu; ++i) b.at(i, col) = v.coeffs[i];
            }
            if (l < r)
                for (std::size_t t = l; t < r; ++t) b.at(block_start(t, l) + j, n - r + t) = 1;
            c.basis.push_back(std::move(b));
        }
    }
    if (!supported_on(c, f))
        throw std::logic_error("construct_gab_subcode: support escaped diagram");
    if (!basis_independent(c)) throw std::logic_error("construct_gab_subcode: dependent basis");
    return c;
}

RankCode optimal_gab_subcode(const FerrersDiagram& f, std::size_t delta, u64 q) {
    std::size_t n = f.n();
    const auto& gamma = f.gamma();
    for (std::size_t r = 1; r + 1 <= delta; ++r) {
        if (delta > n - r) continue;
        if (gamma[n - r - 1] > n - r) continue;
        bool ok = true;
        std::size_t acc = 0;
        for (std::size_t i = 0; i < r && ok; ++i) {
            acc += gamma[i];
            if (gamma[n - r + i] < n - r + acc) ok = false;
        }
        for (std::size_t i = n - delta + 1; i < n && ok; ++i)
            if (gamma[i] < n - r) ok = false;
        if (!ok) continue;
        return construct_gab_subcode(f, delta, r, q);
    }
    throw std::invalid_argument("optimal_gab_subcode: no valid column-extension width");
}

RankCode combine_block(const RankCode& c1, const RankCode& c2, const RankCode& c3) {
    if (!c1.diagram || !c2.diagram || !c3.diagram)
        throw std::invalid_argument("combine_block: all inputs need diagrams");
    if (c1.k() != c2.k()) throw std::invalid_argument("combine_block: dimension mismatch");
    check_same_base_field(c1.ctx, c2.ctx, "combine_block");
    check_same_base_field(c1.ctx, c3.ctx, "combine_block");
    const FerrersDiagram &f1 = *c1.diagram, &f2 = *c2.diagram, &fd = *c3.diagram;
    std::size_t m1 = f1.m(), n1 = f1.n(), m2 = f2.m(), n2 = f2.n();
    std::size_t m3 = fd.m(), n3 = fd.n();
    if (m3 < m1 || n3 < n2)
        throw std::invalid_argument("combine_block: block diagram too small");
    // pad the block diagram so the assembled profile is a Ferrers diagram
    std::vector<std::size_t> prof;
    for (std::size_t j = 0; j < n1; ++j) prof.push_back(f1.gamma()[j]);
    std::size_t floor = n1 ? f1.gamma()[n1 - 1] : 0;
    for (std::size_t t = 0; t < n3; ++t) {
        std::size_t hat = fd.gamma()[t];
        if (t + n2 >= n3) hat = m3;  // a column of f2 sits below
        hat = std::max(hat, floor);
        floor = hat;
        std::size_t low = t + n2 >= n3 ? f2.gamma()[t + n2 - n3] : 0;
        prof.push_back(hat + low);
    }
    FerrersDiagram f = FerrersDiagram::from_profile(prof);
    RankCode c;
    c.ctx = c1.ctx;
    c.m = m3 + m2;
    c.n = n1 + n3;
    c.diagram = f;
    for (std::size_t t = 0; t < c1.k(); ++t) {
        MatFq b(c.ctx.get(), c.m, c.n);
        for (std::size_t i = 0; i < m1; ++i)
            for (std::size_t j = 0; j < n1; ++j) b.at(i, j) = c1.basis[t].at(i, j);
        for (std::size_t i = 0; i < m2; ++i)
            for (std::size_t j = 0; j < n2; ++j)
                b.at(m3 + i, n1 + n3 - n2 + j) = c2.basis[t].at(i, j);
        c.basis.push_back(std::move(b));
    }
    for (std::size_t s = 0; s < c3.k(); ++s) {
        MatFq b(c.ctx.get(), c.m, c.n);
        for (std::size_t i = 0; i < m3; ++i)
            for (std::size_t j = 0; j < n3; ++j) b.at(i, n1 + j) = c3.basis[s].at(i, j);
        c.basis.push_back(std::move(b));
    }
    std::size_t d12 = c1.delta_claimed + c2.delta_claimed;
    c.delta_claimed = c3.k() ? std::min(d12, c3.delta_claimed) : d12;
    if (c1.k() == 0) c.delta_claimed = c3.k() ? c3.delta_claimed : std::min(f.m(), f.n());
    if (!supported_on(c, f)) throw std::logic_error("combine_block: support escaped diagram");
    if (!basis_independent(c)) throw std::logic_error("combine_block: dependent basis");
    return c;
}

namespace {

/// Shared validation for the region combinations: the merged pieces must be
/// a proper combination, every region map must land on dots of f, and the
/// regions must partition the dot set of f exactly.
void validate_regions(const FerrersDiagram& f, const std::vector<ComPiece>& pieces,
                      const FerrersDiagram& combined,
                      const std::vector<const CellMap*>& extra_regions,
                      const char* where) {
    std::vector<const FerrersDiagram*> shapes;
    std::vector<const CellMap*> phis;
    for (const auto& p : pieces) {
        shapes.push_back(&p.shape);
        phis.push_back(&p.into_combined);
    }
    if (!proper_combination_check(shapes, phis, combined))
        throw std::invalid_argument(std::string(where) + ": pieces are not a proper combination");
    std::map<Cell, int> seen;
    auto absorb = [&](const FerrersDiagram* shape, const CellMap& m) {
        Dict d = map_dict(m);
        if (shape && d.size() != shape->dots())
            throw std::invalid_argument(std::string(where) + ": region map misses cells");
        for (const auto& pr : d) {
            if (shape && !shape->has_dot(pr.first.first, pr.first.second))
                throw std::invalid_argument(std::string(where) + ": region map source off shape");
            if (!f.has_dot(pr.second.first, pr.second.second))
                throw std::invalid_argument(std::string(where) + ": region map target off diagram");
            if (++seen[pr.second] > 1)
                throw std::invalid_argument(std::string(where) + ": overlapping regions");
        }
    };
    for (const auto& p : pieces) absorb(&p.shape, p.into_whole);
    for (const CellMap* m : extra_regions) absorb(nullptr, *m);
    if (seen.size() != f.dots())
        throw std::invalid_argument(std::string(where) + ": regions do not cover the diagram");
}

/// Embed a matrix living on `combined` coordinates into f via the pieces.
void embed_combined(MatFq& dst, const MatFq& src, const std::vector<ComPiece>& pieces) {
    for (const auto& p : pieces) {
        Dict whole = map_dict(p.into_whole);
        for (const auto& pr : p.into_combined.pairs) {
            Cell w = whole.at(pr.first);
            dst.at(w.first, w.second) = src.at(pr.second.first, pr.second.second);
        }
    }
}

void embed_region(MatFq& dst, const MatFq& src, const CellMap& map) {
    for (const auto& pr : map.pairs)
        dst.at(pr.second.first, pr.second.second) = src.at(pr.first.first, pr.first.second);
}

}  // namespace

RankCode combine_com1(const FerrersDiagram& f, const std::vector<ComPiece>& pieces,
                      const FerrersDiagram& f12, const RankCode& c12,
                      const FerrersDiagram& f3, const CellMap& f3_into_whole,
                      const RankCode& c3, const FerrersDiagram& f4,
                      const CellMap& f4_into_whole, const RankCode& c4) {
    validate_regions(f, pieces, f12, {&f3_into_whole, &f4_into_whole}, "combine_com1");
    check_same_base_field(c12.ctx, c3.ctx, "combine_com1");
    check_same_base_field(c12.ctx, c4.ctx, "combine_com1");
    if (!supported_on(c12, f12) || !supported_on(c3, f3) || !supported_on(c4, f4))
        throw std::invalid_argument("combine_com1: component code support mismatch");
    RankCode c;
    c.ctx = c12.ctx;
    c.m = f.m();
    c.n = f.n();
    c.diagram = f;
    std::size_t kp = std::min(c12.k(), c3.k());
    for (std::size_t t = 0; t < kp; ++t) {
        MatFq b(c.ctx.get(), c.m, c.n);
        embed_combined(b, c12.basis[t], pieces);
        embed_region(b, c3.basis[t], f3_into_whole);
        c.basis.push_back(std::move(b));
    }
    for (std::size_t s = 0; s < c4.k(); ++s) {
        MatFq b(c.ctx.get(), c.m, c.n);
        embed_region(b, c4.basis[s], f4_into_whole);
        c.basis.push_back(std::move(b));
    }
    std::size_t dsum = c12.delta_claimed + c3.delta_claimed;
    c.delta_claimed = c4.k() ? std::min(dsum, c4.delta_claimed) : dsum;
    if (kp == 0) c.delta_claimed = c4.k() ? c4.delta_claimed : std::min(f.m(), f.n());
    if (!supported_on(c, f)) throw std::logic_error("combine_com1: support escaped diagram");
    if (!basis_independent(c)) throw std::logic_error("combine_com1: dependent basis");
    return c;
}

RankCode combine_com2(const FerrersDiagram& f, const std::vector<ComPiece>& pieces,
                      const FerrersDiagram& f123, const RankCode& c123,
                      const FerrersDiagram& f4, const CellMap& f4_into_whole,
                      const RankCode& c4) {
    validate_regions(f, pieces, f123, {&f4_into_whole}, "combine_com2");
    check_same_base_field(c123.ctx, c4.ctx, "combine_com2");
    if (!supported_on(c123, f123) || !supported_on(c4, f4))
        throw std::invalid_argument("combine_com2: component code support mismatch");
    RankCode c;
    c.ctx = c123.ctx;
    c.m = f.m();
    c.n = f.n();
    c.diagram = f;
    for (std::size_t t = 0; t < c123.k(); ++t) {
        MatFq b(c.ctx.get(), c.m, c.n);
        embed_combined(b, c123.basis[t], pieces);
        c.basis.push_back(std::move(b));
    }
    for (std::size_t s = 0; s < c4.k(); ++s) {
        MatFq b(c.ctx.get(), c.m, c.n);
        embed_region(b, c4.basis[s], f4_into_whole);
        c.basis.push_back(std::move(b));
    }
    if (c123.k() && c4.k())
        c.delta_claimed = std::min(c123.delta_claimed, c4.delta_claimed);
    else if (c123.k())
        c.delta_claimed = c123.delta_claimed;
    else if (c4.k())
        c.delta_claimed = c4.delta_claimed;
    else
        c.delta_claimed = std::min(f.m(), f.n());
    if (!supported_on(c, f)) throw std::logic_error("combine_com2: support escaped diagram");
    if (!basis_independent(c)) throw std::logic_error("combine_com2: dependent basis");
    return c;
}

RankCode combine_com3(const FerrersDiagram& f, const std::vector<ComPiece>& pieces,
                      const FerrersDiagram& f123, const RankCode& c123,
                      const FerrersDiagram& f4, const CellMap& f4_into_whole,
                      const RankCode& c4) {
    if (pieces.size() != 3)
        throw std::invalid_argument("combine_com3: expected pieces (f1, dot, f3)");
    const FerrersDiagram& f1 = pieces[0].shape;
    const FerrersDiagram& f2 = pieces[1].shape;
    const FerrersDiagram& f3 = pieces[2].shape;
    if (f2.dots() != 1) throw std::invalid_argument("combine_com3: middle piece must be one dot");
    if (f4.dots() != f4.m() * f4.n())
        throw std::invalid_argument("combine_com3: block diagram must be full");
    std::vector<std::size_t> alpha{1};
    for (std::size_t v : profile(f1).rho) alpha.push_back(v);
    for (std::size_t v : f3.gamma()) alpha.push_back(v);
    std::sort(alpha.begin(), alpha.end());
    if (alpha != f123.gamma())
        throw std::invalid_argument("combine_com3: merged profile differs from sorted heights");
    return combine_com2(f, pieces, f123, c123, f4, f4_into_whole, c4);
}

RankCode recipe_thm_com1(const FerrersDiagram& f, std::size_t y, std::size_t delta, u64 q) {
    std::size_t m = f.m(), n = f.n();
    if (delta < 2) throw std::invalid_argument("recipe_thm_com1: need delta >= 2");
    if (y < delta || y + delta + 1 > n || y + delta > m + 2)
        throw std::invalid_argument("recipe_thm_com1: band width out of range");
    const auto& gamma = f.gamma();
    for (std::size_t j = 0; j + y < n; ++j)
        if (gamma[j] != delta - 1)
            throw std::invalid_argument("recipe_thm_com1: left columns must have delta-1 dots");
    std::vector<std::size_t> z(y - delta + 1);
    for (std::size_t t = 0; t < z.size(); ++t) {
        std::size_t v = gamma[n - y + t];
        if (v < delta - 1 || v > y - 1)
            throw std::invalid_argument("recipe_thm_com1: middle column height out of range");
        z[t] = v - (delta - 1);
    }
    for (std::size_t j = n - delta + 1; j + 1 < n; ++j)
        if (gamma[j] != y - 1)
            throw std::invalid_argument("recipe_thm_com1: right columns must have y-1 dots");
    std::size_t z0 = z[0];
    if (z0 > n - y) throw std::invalid_argument("recipe_thm_com1: first middle column too tall");
    std::size_t l3 = m - y - delta + 2;
    // region shapes
    FerrersDiagram f1 = FerrersDiagram::from_profile(std::vector<std::size_t>(n - y, delta - 1));
    std::vector<std::size_t> g4;
    for (std::size_t t = 0; t < y; ++t) {
        if (t + 1 == y)
            g4.push_back(y + delta - 2);
        else if (t >= y - delta + 1)
            g4.push_back(y - 1);
        else if (t >= 1)
            g4.push_back(delta - 1 + z[t]);
        else
            g4.push_back(delta - 1);
    }
    FerrersDiagram f4 = FerrersDiagram::from_profile(g4);
    FerrersDiagram f3 = FerrersDiagram::from_profile({l3});
    // merged diagram: stacked rows of f1, the flattened last column, and
    // the flattened first middle column, ordered by the case split
    bool tall = m + 2 > n + delta;  // m - n > delta - 2
    std::vector<std::size_t> rows;
    std::size_t r3, r2;  // merged rows receiving f3 and the z0 column
    std::size_t off1;    // column offset of f1 in the merged diagram
    if (!tall) {
        off1 = 0;
        for (std::size_t i = 0; i + 1 < delta; ++i) rows.push_back(n - y);
        if (l3 >= z0) {
            rows.push_back(l3);
            r3 = delta - 1;
            if (z0) rows.push_back(z0);
            r2 = delta;
        } else {
            if (z0) rows.push_back(z0);
            r2 = delta - 1;
            rows.push_back(l3);
            r3 = delta - (z0 ? 0 : 1);
        }
    } else {
        rows.push_back(l3);
        r3 = 0;
        for (std::size_t i = 0; i + 1 < delta; ++i) rows.push_back(n - y);
        if (z0) rows.push_back(z0);
        r2 = delta;
        off1 = l3 - (n - y);
    }
    FerrersDiagram f123 = FerrersDiagram::from_rows(rows);
    std::size_t w123 = f123.n();
    std::vector<ComPiece> pieces;
    {
        ComPiece p1{f1, {}, {}};
        for (std::size_t i = 0; i + 1 < delta; ++i)
            for (std::size_t j = 0; j + y < n; ++j) {
                p1.into_whole.pairs.push_back({{i, j}, {i, j}});
                p1.into_combined.pairs.push_back({{i, j}, {i + (tall ? 1 : 0), j + off1}});
            }
        pieces.push_back(std::move(p1));
    }
    if (z0) {
        FerrersDiagram f2 = FerrersDiagram::from_profile({z0});
        ComPiece p2{f2, {}, {}};
        for (std::size_t i = 0; i < z0; ++i) {
            p2.into_whole.pairs.push_back({{i, 0}, {delta - 1 + i, n - y}});
            p2.into_combined.pairs.push_back({{i, 0}, {r2, w123 - z0 + i}});
        }
        pieces.push_back(std::move(p2));
    }
    {
        ComPiece p3{f3, {}, {}};
        for (std::size_t i = 0; i < l3; ++i) {
            p3.into_whole.pairs.push_back({{i, 0}, {y + delta - 2 + i, n - 1}});
            p3.into_combined.pairs.push_back({{i, 0}, {r3, w123 - l3 + i}});
        }
        pieces.push_back(std::move(p3));
    }
    CellMap map4 = CellMap::translate(f4, 0, n - y);
    RankCode c123 = shorten_to_diagram(f123, delta, q);
    RankCode c4;
    try {
        c4 = construct_gab_subcode(f4, delta, 1, q);
    } catch (const std::invalid_argument&) {
        c4 = shorten_to_diagram(f4, delta, q);
    }
    RankCode out = combine_com2(f, pieces, f123, c123, f4, map4, c4);
    out.delta_claimed = delta;
    std::size_t psize = 0;
    for (std::size_t v : z) psize += v;
    std::size_t expect = tall ? n - 1 + (y - delta) * (delta - 2) + psize
                              : m - y + 1 + (y - delta) * (delta - 1) + psize;
    if (out.k() != expect)
        throw std::runtime_error("recipe_thm_com1: dimension " + std::to_string(out.k()) +
                                 " != expected " + std::to_string(expect));
    return out;
}

RankCode recipe_thm_com3(const FerrersDiagram& f, std::size_t delta, u64 q) {
    std::size_t m = f.m(), n = f.n();
    if (delta < 2) throw std::invalid_argument("recipe_thm_com3: need delta >= 2");
    const auto& gamma = f.gamma();
    Profile fp = profile(f);
    std::string reason = "recipe_thm_com3: no admissible split";
    for (std::size_t n1 = 1; n1 < n; ++n1) {
        if (gamma[n1 - 1] < 2) continue;
        std::size_t m1 = gamma[n1 - 1] - 1;
        if (m1 >= m) continue;
        std::size_t m3 = m - m1, n3 = n - n1;
        bool shape = true;
        for (std::size_t j = 0; j + 1 < n1; ++j)
            if (gamma[j] > m1) shape = false;
        for (std::size_t j = n1; j < n; ++j)
            if (gamma[j] < m1 + 1) shape = false;
        if (!shape) continue;
        if (delta > m1 + 1) {
            reason = "recipe_thm_com3: delta exceeds top band height + 1";
            continue;
        }
        if (delta < m1 + 1 && n3 < m1) {
            reason = "recipe_thm_com3: right block narrower than top band";
            continue;
        }
        if (1 + m1 + n3 > std::max(n1, m3)) {
            reason = "recipe_thm_com3: merged diagram wider than both margins";
            continue;
        }
        std::vector<std::size_t> g1;
        for (std::size_t j = 0; j < n1; ++j) g1.push_back(std::min(gamma[j], m1));
        FerrersDiagram f1 = FerrersDiagram::from_profile(g1);
        std::vector<std::size_t> g3;
        for (std::size_t j = n1; j < n; ++j) g3.push_back(gamma[j] - m1);
        FerrersDiagram f3 = FerrersDiagram::from_profile(g3);
        std::vector<std::size_t> rho1 = profile(f1).rho;
        // items merged into one diagram: the dot, one column per row of f1,
        // one column per column of f3
        struct Item {
            std::size_t h;
            int kind;  // 0 dot, 1 f1 row, 2 f3 col
            std::size_t idx;
        };
        std::vector<Item> items{{1, 0, 0}};
        for (std::size_t i = 0; i < m1; ++i) items.push_back({rho1[i], 1, i});
        for (std::size_t t = 0; t < n3; ++t) items.push_back({f3.gamma()[t], 2, t});
        std::stable_sort(items.begin(), items.end(),
                         [](const Item& a, const Item& b) {
                             if (a.h != b.h) return a.h < b.h;
                             return a.kind < b.kind;
                         });
        std::vector<std::size_t> alpha;
        for (const Item& it : items) alpha.push_back(it.h);
        if (alpha[m1 + n3 - delta + 2] < m1 + n3) {
            reason = "recipe_thm_com3: merged columns too short for the staircase step";
            continue;
        }
        if (fp.rho[delta - 2] < n3 + m3) {
            reason = "recipe_thm_com3: pivotal row too short";
            continue;
        }
        FerrersDiagram f123 = FerrersDiagram::from_profile(alpha);
        std::vector<std::size_t> col_of_row(m1), col_of_col(n3);
        std::size_t dot_col = 0;
        for (std::size_t c = 0; c < items.size(); ++c) {
            if (items[c].kind == 0) dot_col = c;
            if (items[c].kind == 1) col_of_row[items[c].idx] = c;
            if (items[c].kind == 2) col_of_col[items[c].idx] = c;
        }
        if (dot_col != 0) {
            reason = "recipe_thm_com3: pivotal dot not at the shortest column";
            continue;
        }
        std::vector<ComPiece> pieces(3);
        pieces[0].shape = f1;
        for (std::size_t i = 0; i < m1; ++i)
            for (std::size_t j = n1 - rho1[i]; j < n1; ++j) {
                pieces[0].into_whole.pairs.push_back({{i, j}, {i, j}});
                pieces[0].into_combined.pairs.push_back({{i, j}, {n1 - 1 - j, col_of_row[i]}});
            }
        pieces[1].shape = FerrersDiagram::from_profile({1});
        pieces[1].into_whole.pairs.push_back({{0, 0}, {m1, n1 - 1}});
        pieces[1].into_combined.pairs.push_back({{0, 0}, {0, dot_col}});
        pieces[2].shape = f3;
        for (std::size_t t = 0; t < n3; ++t)
            for (std::size_t i = 0; i < f3.gamma()[t]; ++i) {
                pieces[2].into_whole.pairs.push_back({{i, t}, {m1 + i, n1 + t}});
                pieces[2].into_combined.pairs.push_back({{i, t}, {i, col_of_col[t]}});
            }
        FerrersDiagram f4 = FerrersDiagram::from_profile(std::vector<std::size_t>(n3, m1));
        CellMap map4 = CellMap::translate(f4, 0, n1);
        RankCode c4;
        if (delta == m1 + 1) {
            c4.ctx = make_field_q(q, 1);
            c4.m = m1;
            c4.n = n3;
            c4.delta_claimed = delta;
            c4.diagram = f4;
        } else {
            c4 = shorten_to_diagram(f4, delta, q);
        }
        std::size_t k1e = 0;  // optimal dimension of the merged diagram
        for (std::size_t i = 0; i + delta < alpha.size() + 1; ++i) k1e += alpha[i];
        RankCode c123;
        try {
            c123 = optimal_gab_subcode(f123, delta, q);
        } catch (const std::invalid_argument&) {
        }
        if (c123.k() != k1e) c123 = shorten_to_diagram(f123, delta, q);
        RankCode out = combine_com3(f, pieces, f123, c123, f4, map4, c4);
        out.delta_claimed = delta;
        std::size_t expect = 0;
        for (std::size_t i = delta - 1; i < m; ++i) expect += fp.rho[i];
        if (out.k() != expect)
            throw std::runtime_error("recipe_thm_com3: dimension " + std::to_string(out.k()) +
                                     " != expected " + std::to_string(expect));
        return out;
    }
    throw std::invalid_argument(reason);
}

}  // namespace fdrm
