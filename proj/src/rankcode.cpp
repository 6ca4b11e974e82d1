#include "fdrm/rankcode.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace fdrm {

MatFq psi(const std::vector<Felt>& v) {
    if (v.empty()) throw std::invalid_argument("psi: empty vector");
    const FieldCtx* ctx = v[0].ctx;
    MatFq out(ctx, ctx->m, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].ctx != ctx) throw std::invalid_argument("psi: mixed contexts");
        for (std::size_t i = 0; i < ctx->m; ++i) out.at(i, j) = v[j].coeffs[i];
    }
    return out;
}

std::vector<Felt> psi_inv(const FieldCtx* ctx, const MatFq& mat) {
    if (mat.rows != ctx->m) throw std::invalid_argument("psi_inv: row count differs from m");
    std::vector<Felt> v;
    v.reserve(mat.cols);
    for (std::size_t j = 0; j < mat.cols; ++j) {
        std::vector<u32> c(ctx->m);
        for (std::size_t i = 0; i < ctx->m; ++i) c[i] = mat.at(i, j);
        v.push_back(ctx->make(std::move(c)));
    }
    return v;
}

bool basis_independent(const RankCode& c) {
    if (c.basis.empty()) return true;
    MatFq flat(c.ctx.get(), c.basis.size(), c.m * c.n);
    for (std::size_t t = 0; t < c.basis.size(); ++t)
        for (std::size_t i = 0; i < c.m * c.n; ++i) flat.at(t, i) = c.basis[t].a[i];
    return mat_rank(flat) == c.basis.size();
}

bool supported_on(const RankCode& c, const FerrersDiagram& f) {
    if (c.m != f.m() || c.n != f.n()) return false;
    for (const auto& b : c.basis)
        for (std::size_t i = 0; i < c.m; ++i)
            for (std::size_t j = 0; j < c.n; ++j)
                if (b.at(i, j) != 0 && !f.has_dot(i, j)) return false;
    return true;
}

RankCode expand_generator(const ExtGenerator& g, std::size_t delta_claimed) {
    const FieldCtx* F = g.ctx.get();
    RankCode c;
    c.ctx = g.ctx;
    c.m = F->m;
    c.n = g.n();
    c.delta_claimed = delta_claimed;
    for (std::size_t i = 0; i < g.k(); ++i)
        for (u64 j = 0; j < F->m; ++j) {
            // message beta^j e_i
            Felt coef = F->beta_pow(j);
            std::vector<Felt> word(g.n(), F->zero());
            for (std::size_t col = 0; col < g.n(); ++col)
                word[col] = F->mul(coef, g.G.at(i, col));
            c.basis.push_back(psi(word));
        }
    if (!basis_independent(c))
        throw std::invalid_argument("expand_generator: dependent basis (G not full rank)");
    return c;
}

namespace {

u64 pow_sat(u64 base, std::size_t exp) {
    u64 r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

// in-place entrywise addition of src into dst (same shape, same field)
inline void add_into(MatFq& dst, const MatFq& src) {
    const FieldCtx* F = dst.ctx;
    for (std::size_t i = 0; i < dst.a.size(); ++i) dst.a[i] = F->badd(dst.a[i], src.a[i]);
}

}  // namespace

DistanceResult min_rank_distance(const RankCode& c, u64 budget, unsigned workers) {
    if (c.k() == 0) throw std::invalid_argument("min_rank_distance: zero-dimensional code");
    const FieldCtx* F = c.ctx.get();
    const u64 q = F->q;
    const std::size_t k = c.k();
    const std::size_t max_rank = std::min(c.m, c.n);
    // with one row or column every nonzero codeword has rank exactly 1
    if (max_rank <= 1) return {1, DistanceMethod::exhaustive, 0};
    u64 total = pow_sat(q, k);

    if (total > budget) {
        // sampled mode: fixed seed for reproducibility
        std::mt19937_64 rng(0x5eed0001u);
        std::set<std::vector<u32>> seen;
        std::size_t best = max_rank;
        u64 drawn = 0;
        while (drawn < kSampleCount) {
            std::vector<u32> msg(k);
            bool nonzero = false;
            for (std::size_t i = 0; i < k; ++i) {
                msg[i] = static_cast<u32>(rng() % q);
                nonzero |= msg[i] != 0;
            }
            if (!nonzero || !seen.insert(msg).second) continue;
            MatFq cur(F, c.m, c.n);
            for (std::size_t i = 0; i < k; ++i)
                if (msg[i] != 0) add_into(cur, mat_scale(msg[i], c.basis[i]));
            std::size_t r = mat_rank(cur, best);
            best = std::min(best, std::max<std::size_t>(r, 1));
            ++drawn;
            if (best == 1) break;
        }
        return {best, DistanceMethod::sampled, drawn};
    }

    // exhaustive mode: partition the message space by a digit prefix and
    // walk each block with an odometer so consecutive codewords differ by
    // one precomputed matrix addition
    std::size_t prefix_len = 0;
    u64 ntasks = 1;
    while (prefix_len < k && ntasks < u64(workers) * 4) {
        ntasks *= q;
        ++prefix_len;
    }
    const std::size_t suf = k - prefix_len;

    // scaled[i][x] = x * basis[i]; diff[i][x] = scaled[i][x+1 mod q] - scaled[i][x]
    std::vector<std::vector<MatFq>> scaled(k), diff(k);
    for (std::size_t i = 0; i < k; ++i) {
        scaled[i].reserve(q);
        for (u64 x = 0; x < q; ++x) scaled[i].push_back(mat_scale(static_cast<u32>(x), c.basis[i]));
        diff[i].reserve(q);
        for (u64 x = 0; x < q; ++x)
            diff[i].push_back(mat_sub(scaled[i][(x + 1) % q], scaled[i][x]));
    }

    std::atomic<std::size_t> global_best{max_rank == 0 ? std::size_t(1) : max_rank};
    std::atomic<u64> next_task{0};
    std::atomic<u64> visited{0};
    const u64 suffix_count = pow_sat(q, suf);

    auto run = [&]() {
        std::size_t best = global_best.load(std::memory_order_relaxed);
        u64 local_visited = 0;
        while (true) {
            u64 task = next_task.fetch_add(1);
            if (task >= ntasks) break;
            if (global_best.load(std::memory_order_relaxed) <= 1) break;
            // decode prefix digits
            MatFq cur(F, c.m, c.n);
            u64 t = task;
            bool prefix_zero = true;
            for (std::size_t i = 0; i < prefix_len; ++i) {
                u32 d = static_cast<u32>(t % q);
                t /= q;
                if (d != 0) {
                    add_into(cur, scaled[suf + i][d]);
                    prefix_zero = false;
                }
            }
            std::vector<u32> digits(suf, 0);
            for (u64 step = 0; step < suffix_count; ++step) {
                if (step > 0) {
                    std::size_t j = 0;
                    while (true) {
                        u32 x = digits[j];
                        add_into(cur, diff[j][x]);
                        digits[j] = static_cast<u32>((x + 1) % q);
                        if (digits[j] != 0) break;
                        ++j;
                    }
                } else if (prefix_zero) {
                    continue;  // the all-zero codeword
                }
                ++local_visited;
                std::size_t cap = std::min(best, global_best.load(std::memory_order_relaxed));
                std::size_t r = mat_rank(cur, cap);
                if (r < best) {
                    best = std::max<std::size_t>(r, 1);
                    std::size_t cur_best = global_best.load();
                    while (best < cur_best && !global_best.compare_exchange_weak(cur_best, best)) {
                    }
                    if (best <= 1) break;
                }
            }
        }
        visited.fetch_add(local_visited);
    };

    unsigned nthreads = std::max(1u, workers);
    if (nthreads == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }
    return {global_best.load(), DistanceMethod::exhaustive, visited.load()};
}

ExtGenerator gabidulin_generator(FieldCtxPtr ctx, const std::vector<Felt>& g, std::size_t k) {
    const FieldCtx* F = ctx.get();
    std::size_t n = g.size();
    if (k > n) throw std::invalid_argument("gabidulin_generator: k > n");
    if (n > F->m) throw std::invalid_argument("gabidulin_generator: n > m");
    if (mat_rank(psi(g)) != n)
        throw std::invalid_argument("gabidulin_generator: g not independent over F_q");
    ExtGenerator out;
    out.ctx = ctx;
    out.G = MatExt(F, k, n);
    for (std::size_t j = 0; j < n; ++j) {
        Felt cur = g[j];
        for (std::size_t i = 0; i < k; ++i) {
            out.G.at(i, j) = cur;
            cur = F->frobenius(cur, 1);
        }
    }
    return out;
}

ExtGenerator systematic_form(const ExtGenerator& g) {
    const FieldCtx* F = g.ctx.get();
    std::size_t k = g.k(), n = g.n();
    if (k > n) throw std::invalid_argument("systematic_form: k > n");
    MatExt aug = g.G;
    std::size_t rank = ext_rref(aug);
    if (rank != k) throw std::invalid_argument("systematic_form: rows dependent");
    // rref must have pivots exactly in the first k columns
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (!(aug.at(i, j) == (i == j ? F->one() : F->zero())))
                throw std::invalid_argument("systematic_form: leading block singular");
    ExtGenerator out;
    out.ctx = g.ctx;
    out.G = std::move(aug);
    return out;
}

bool mrd_criterion_check(const ExtGenerator& g, u64 budget) {
    const FieldCtx* F = g.ctx.get();
    std::size_t n = g.n();
    if (F->m < n) throw std::invalid_argument("mrd_criterion_check: needs m >= n");
    std::size_t free_cells = n * (n - 1) / 2;
    if (pow_sat(F->q, free_cells) > budget)
        throw std::runtime_error("mrd_criterion_check: q^(n(n-1)/2) exceeds budget");
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) cells.emplace_back(i, j);
    std::vector<u32> vals(free_cells, 0);
    while (true) {
        MatExt b(F, n, n);
        for (std::size_t i = 0; i < n; ++i) b.at(i, i) = F->one();
        for (std::size_t t = 0; t < free_cells; ++t)
            b.at(cells[t].first, cells[t].second) = F->from_base(vals[t]);
        if (!all_maximal_minors_nonzero(ext_mul(g.G, b))) return false;
        std::size_t i = 0;
        while (i < vals.size() && ++vals[i] == F->q) vals[i++] = 0;
        if (i == vals.size()) break;
    }
    return true;
}

MatFq mds_generator(const FieldCtx* ctx, std::size_t theta, std::size_t delta) {
    const u64 q = ctx->q;
    if (theta > q + 1) throw std::invalid_argument("mds_generator: theta > q+1");
    if (delta < 1 || delta > theta) throw std::invalid_argument("mds_generator: delta out of range");
    std::size_t k = theta - delta + 1;
    MatFq g(ctx, k, theta);
    bool infinity = theta == q + 1;
    std::size_t npoints = infinity ? theta - 1 : theta;
    for (std::size_t j = 0; j < npoints; ++j) {
        u32 x = static_cast<u32>(j);  // the j-th field element by code
        u32 p = 1;
        for (std::size_t i = 0; i < k; ++i) {
            g.at(i, j) = p;
            p = ctx->bmul(p, x);
        }
    }
    if (infinity) g.at(k - 1, theta - 1) = 1;  // coefficient of x^{k-1}
    return g;
}

Certificate certify(const RankCode& c, const FerrersDiagram& f, std::size_t delta, u64 budget,
                    unsigned workers) {
    if (c.m != f.m() || c.n != f.n())
        throw std::invalid_argument("certify: code and diagram shapes differ");
    Certificate cert;
    cert.k_observed = c.k();
    cert.independent = basis_independent(c);
    cert.support_ok = supported_on(c, f);
    cert.bound_value = singleton_like_bound(f, delta).k_max;
    if (c.k() == 0) {
        cert.distance_method = DistanceMethod::bound_only;
        cert.distance_observed = 0;
        cert.optimal = cert.bound_value == 0 ? Tri::yes : Tri::no;
        return cert;
    }
    DistanceResult d = min_rank_distance(c, budget, workers);
    cert.distance_observed = d.distance;
    cert.distance_method = d.method;
    cert.distance_checked = d.checked;
    // a sampled distance below delta is conclusive (the sampled minimum is
    // an upper bound on the true distance), as is any structural failure;
    // "sampled and everything looks fine" stays unknown
    if (!cert.independent || !cert.support_ok || d.distance < delta ||
        cert.k_observed != cert.bound_value)
        cert.optimal = Tri::no;
    else
        cert.optimal = d.method == DistanceMethod::exhaustive ? Tri::yes : Tri::unknown;
    return cert;
}

const char* to_string(DistanceMethod m) {
    switch (m) {
        case DistanceMethod::exhaustive: return "exhaustive";
        case DistanceMethod::sampled: return "sampled";
        case DistanceMethod::bound_only: return "bound_only";
    }
    return "?";
}

const char* to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::unknown: return "unknown";
    }
    return "?";
}

}  // namespace fdrm
