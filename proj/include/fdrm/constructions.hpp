#ifndef FDRM_CONSTRUCTIONS_HPP
#define FDRM_CONSTRUCTIONS_HPP

#include <optional>
#include <vector>

#include "fdrm/ferrers.hpp"
#include "fdrm/rankcode.hpp"

namespace fdrm {

/// Coefficient pattern for the systematic MRD generator family: a is a
/// k x (n-k) matrix of nonzero base-field values, k = n - delta + 1. The
/// generator is valid when every minor (of every order) of both derived
/// blocks a1 (a without its last column) and a2 (a without its first row)
/// is nonzero.
struct SysMrdSpec {
    std::size_t n = 0, delta = 0;
    MatFq a;

    std::size_t k() const { return n - delta + 1; }
    MatFq a1() const;
    MatFq a2() const;
};

/// Every square submatrix (of any order >= 1) has nonzero determinant.
bool all_minors_nonzero(const MatFq& x);

/// Subcode of the expanded code of a systematic generator G = (I_k | A):
/// message coordinate u_i is restricted to its first lambda[i] basis
/// coefficients. Basis = psi(beta^j e_i G), i in [k], j in [lambda_i].
RankCode subcode_select(const ExtGenerator& g, const std::vector<std::size_t>& lambda);

/// Assemble the systematic MRD generator from a coefficient spec: identity
/// block, then column j in [k, n-2] holds a(i, j-k) beta^{j-i}, and the
/// last column holds a(0) beta^n on row 0, a(i) beta^{n-1-i} below.
ExtGenerator sys_mrd_build(FieldCtxPtr ctx, const SysMrdSpec& spec);

/// First coefficient matrix (lexicographic over nonzero values) whose a1/a2
/// minor conditions all hold; nullopt when the space is exhausted.
std::optional<SysMrdSpec> sys_mrd_search(u64 q, std::size_t n, std::size_t delta,
                                         u64 budget = u64(1) << 20);

/// Optimal code on f from a sys_mrd_build generator. Validates that f's
/// column profile matches the valid-length pattern the generator induces,
/// then restricts message coordinates to the first k column heights.
RankCode construct_from_sys_mrd(const ExtGenerator& g, const SysMrdSpec& spec,
                                const FerrersDiagram& f);

/// Smallest extension degree for which the Vandermonde-power generator is
/// known MRD (case split on n < 2k).
u64 vandermonde_min_m(std::size_t n, std::size_t delta);

/// Generator with identity block and beta^{(j-k+1)(k-l)} in row l, col j>=k.
ExtGenerator vandermonde_mrd_build(FieldCtxPtr ctx, std::size_t n, std::size_t delta);

/// Analogue of construct_from_sys_mrd for the Vandermonde-power generator.
RankCode construct_from_vandermonde(const ExtGenerator& g, const FerrersDiagram& f);

/// Subcode of an expanded Gabidulin MRD code supported on f, found by
/// solving for the kernel of the off-diagram entry constraints. Retries
/// with the transposed diagram and alternative generator vectors; throws
/// (reporting the achieved dimension) when the bound is not attained.
RankCode shorten_to_diagram(const FerrersDiagram& f, std::size_t delta, u64 q);

/// One MDS code per diagonal: dimension sum max(0, theta_i - delta + 1).
/// Requires q >= theta_max - 1.
RankCode mds_diagonal_construct(const FerrersDiagram& f, std::size_t delta, u64 q);

/// Parameters of the staircase generator built by iterative column
/// extension of a Gabidulin generator: kappa = eta - r - d + 1, r < kappa,
/// eta <= mu + r. s is used by construct_gab_subcode only.
struct GabSubcodeSpec {
    std::size_t eta = 0, r = 0, d = 0, kappa = 0, mu = 0;
    std::vector<std::size_t> s;
};

/// kappa x eta staircase generator over F_{q^mu} (ctx degree must be mu):
/// removing the first i rows, leftmost i columns and rightmost r-i columns
/// leaves a generator whose expansion has minimum rank distance d+i, for
/// every 0 <= i <= r.
ExtGenerator gab_subcode_matrix(FieldCtxPtr ctx, const GabSubcodeSpec& spec);

/// Derive the column-truncation sequence s for f: s_l = min(gamma_l - 1,
/// gamma_{n-r+l} - (n-r) - sum_{j<l}(s_j+1) - 1). Throws when out of range
/// or not nondecreasing.
GabSubcodeSpec gab_subcode_spec(const FerrersDiagram& f, std::size_t delta, std::size_t r);

/// Two-block code on f from a staircase generator: expanded message rows on
/// top, echeloned coefficient columns below. Dimension
/// sum_{l<r}(s_l+1) + sum_{i=r}^{n-delta} gamma_i.
RankCode construct_gab_subcode(const FerrersDiagram& f, std::size_t delta, std::size_t r,
                               u64 q);

/// Picks the smallest r in [1, delta-1] whose column-profile conditions
/// guarantee the bound is attained, then delegates to construct_gab_subcode.
RankCode optimal_gab_subcode(const FerrersDiagram& f, std::size_t delta, u64 q);

/// Block combination [[X, D], [0, phi(X)]]: c1 and c2 must have equal
/// dimension (bases paired by index); c3 fills the top-right block, padded
/// minimally so the result is a Ferrers diagram. Distance claim
/// min(delta1 + delta2, delta3).
RankCode combine_block(const RankCode& c1, const RankCode& c2, const RankCode& c3);

/// One source diagram of a combination: where its cells sit in the whole
/// diagram, and where they sit in the combined (merged) diagram.
struct ComPiece {
    FerrersDiagram shape;
    CellMap into_whole;
    CellMap into_combined;
};

/// Region-combination with a merged code on pieces 1+2, an index-paired
/// code on f3, and an independent code on f4. Dimension
/// min(k12, k3) + k4; distance claim min(delta12 + delta3, delta4).
RankCode combine_com1(const FerrersDiagram& f, const std::vector<ComPiece>& pieces,
                      const FerrersDiagram& f12, const RankCode& c12,
                      const FerrersDiagram& f3, const CellMap& f3_into_whole,
                      const RankCode& c3, const FerrersDiagram& f4,
                      const CellMap& f4_into_whole, const RankCode& c4);

/// Region-combination with a merged code on pieces 1+2+3 and an independent
/// code on f4. Dimension k123 + k4; distance claim min(delta123, delta4).
RankCode combine_com2(const FerrersDiagram& f, const std::vector<ComPiece>& pieces,
                      const FerrersDiagram& f123, const RankCode& c123,
                      const FerrersDiagram& f4, const CellMap& f4_into_whole,
                      const RankCode& c4);

/// Variant of combine_com2 for a single relocated dot: pieces must be
/// (f1, single-dot f2, f3), f4 must be a full rectangle, and f123's column
/// profile must equal the sorted multiset {1} u rows(f1) u cols(f3).
RankCode combine_com3(const FerrersDiagram& f, const std::vector<ComPiece>& pieces,
                      const FerrersDiagram& f123, const RankCode& c123,
                      const FerrersDiagram& f4, const CellMap& f4_into_whole,
                      const RankCode& c4);

/// Optimal code on the banded family (top band of delta-1 full rows, a
/// middle block P, a full last column): derives the four regions, builds
/// the merged edge code by shortening and the block code from a staircase
/// subcode, and assembles with combine_com2.
RankCode recipe_thm_com1(const FerrersDiagram& f, std::size_t y, std::size_t delta, u64 q);

/// Optimal code on split diagrams with one pivotal dot: infers the
/// (m1, n1) split, checks the row/column-profile conditions, and assembles
/// shorten + staircase components with combine_com3.
RankCode recipe_thm_com3(const FerrersDiagram& f, std::size_t delta, u64 q);

}  // namespace fdrm

#endif
