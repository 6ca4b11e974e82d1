#ifndef FDRM_SERIALIZE_HPP
#define FDRM_SERIALIZE_HPP

#include <string>

#include "fdrm/rankcode.hpp"

namespace fdrm {

/// Parsed form of a code document. The header fields are kept separate from
/// the basis so that a verifier can cross-check them; parsing alone never
/// compares the two.
struct CodeDocument {
    u64 p = 0, e = 0;
    std::size_t m = 0, n = 0;
    std::size_t k_header = 0;
    std::size_t delta = 0;
    FerrersDiagram diagram;
    std::vector<MatFq> basis;
    FieldCtxPtr ctx;  // base-field arithmetic only (degree-1 extension)
};

/// Flat text form, bit-exact: fixed key order (p, e, m, n, k, delta,
/// diagram), `\n` endings, then `basis:` and k blocks of m lines of n
/// base-field values (contiguous digits, space-separated when q > 9),
/// consecutive blocks separated by one blank line. Requires c.diagram.
std::string serialize_code(const RankCode& c);

/// Inverse of serialize_code on the structural level. Throws
/// std::invalid_argument on malformed input (bad keys, wrong line shapes,
/// out-of-range values, diagram/matrix size mismatch). A header `k=` that
/// disagrees with the number of basis blocks is NOT an error here.
CodeDocument parse_code_document(const std::string& text);

/// View the document as a code: delta becomes the claimed distance.
RankCode to_rank_code(const CodeDocument& doc);

}  // namespace fdrm

#endif
