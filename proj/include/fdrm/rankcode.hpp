#ifndef FDRM_RANKCODE_HPP
#define FDRM_RANKCODE_HPP

#include <optional>
#include <string>
#include <vector>

#include "fdrm/ferrers.hpp"
#include "fdrm/matrix.hpp"

namespace fdrm {

/// F_q-linear rank-metric code given by a basis of m x n matrices over F_q.
struct RankCode {
    FieldCtxPtr ctx;  // base field ops are taken from here
    std::size_t m = 0, n = 0;
    std::vector<MatFq> basis;
    std::size_t delta_claimed = 1;
    std::optional<FerrersDiagram> diagram;

    std::size_t k() const { return basis.size(); }
};

/// Generator matrix over the extension field F_{q^m}.
struct ExtGenerator {
    FieldCtxPtr ctx;
    MatExt G;  // k x n

    std::size_t k() const { return G.rows; }
    std::size_t n() const { return G.cols; }
};

enum class DistanceMethod { exhaustive, sampled, bound_only };

struct DistanceResult {
    std::size_t distance = 0;
    DistanceMethod method = DistanceMethod::exhaustive;
    u64 checked = 0;  // codewords examined
};

enum class Tri { yes, no, unknown };

struct Certificate {
    std::size_t k_observed = 0;
    bool independent = false;
    bool support_ok = false;
    std::size_t distance_observed = 0;
    DistanceMethod distance_method = DistanceMethod::bound_only;
    u64 distance_checked = 0;
    std::size_t bound_value = 0;
    Tri optimal = Tri::unknown;
};

/// Column j of the result holds the basis coordinates of v[j]:
/// v[j] = sum_i out(i,j) * beta^i.
MatFq psi(const std::vector<Felt>& v);
std::vector<Felt> psi_inv(const FieldCtx* ctx, const MatFq& mat);

/// The F_q-code {psi(u G)}: one basis matrix per message beta^j e_i.
/// Throws if the resulting matrices are dependent (G not full rank).
RankCode expand_generator(const ExtGenerator& g, std::size_t delta_claimed = 1);

constexpr u64 kDefaultDistanceBudget = u64(1) << 22;
constexpr u64 kSampleCount = 10000;

/// Minimum rank over nonzero codewords. Exhaustive when q^k fits in the
/// budget; otherwise the minimum over kSampleCount distinct random nonzero
/// codewords (an upper bound only), drawn from a fixed-seed generator.
DistanceResult min_rank_distance(const RankCode& c, u64 budget = kDefaultDistanceBudget,
                                 unsigned workers = 1);

/// Moore-style generator: row i is the entrywise q^i power of g.
ExtGenerator gabidulin_generator(FieldCtxPtr ctx, const std::vector<Felt>& g, std::size_t k);

/// Row-reduce to (I_k | A). Throws when the leading k x k block is singular.
ExtGenerator systematic_form(const ExtGenerator& g);

/// True iff G B has all maximal minors nonzero for every upper-unitriangular
/// B over F_q (equivalently, the expanded code is MRD). Throws when
/// q^{n(n-1)/2} exceeds the budget.
bool mrd_criterion_check(const ExtGenerator& g, u64 budget = 1u << 20);

/// Generator of a [theta, theta-delta+1, delta] MDS code over the base
/// field of ctx (Reed-Solomon on the q field elements, plus the point at
/// infinity when theta = q+1).
MatFq mds_generator(const FieldCtx* ctx, std::size_t theta, std::size_t delta);

Certificate certify(const RankCode& c, const FerrersDiagram& f, std::size_t delta,
                    u64 budget = kDefaultDistanceBudget, unsigned workers = 1);

/// Flatten the basis and check F_q-linear independence.
bool basis_independent(const RankCode& c);
/// Every basis matrix vanishes outside the dot set of f.
bool supported_on(const RankCode& c, const FerrersDiagram& f);

const char* to_string(DistanceMethod m);
const char* to_string(Tri t);

}  // namespace fdrm

#endif
