#ifndef FDRM_FERRERS_HPP
#define FDRM_FERRERS_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fdrm/matrix.hpp"

namespace fdrm {

/// Ferrers diagram in the right-shifted, top-aligned convention: cell
/// (i, j) is a dot iff i < gamma[j], with gamma nondecreasing and
/// gamma[n-1] = m. Stored canonically by column profile.
class FerrersDiagram {
  public:
    static FerrersDiagram from_profile(std::vector<std::size_t> gamma);
    /// Rows given top to bottom as dot counts (nonincreasing, right-aligned).
    static FerrersDiagram from_rows(const std::vector<std::size_t>& rho);

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    const std::vector<std::size_t>& gamma() const { return gamma_; }
    std::size_t dots() const;
    bool has_dot(std::size_t i, std::size_t j) const {
        return i < m_ && j < n_ && i < gamma_[j];
    }
    /// All dots in column-major order (j ascending, i ascending).
    std::vector<std::pair<std::size_t, std::size_t>> cells() const;

    bool operator==(const FerrersDiagram& o) const { return gamma_ == o.gamma_; }

  private:
    std::size_t m_ = 0, n_ = 0;
    std::vector<std::size_t> gamma_;
};

/// Text form: either `cols:a,b,...` or a right-aligned `.`/`*` grid.
FerrersDiagram parse_diagram(const std::string& text);
std::string diagram_profile_string(const FerrersDiagram& f);
std::string diagram_grid_string(const FerrersDiagram& f);

FerrersDiagram transpose(const FerrersDiagram& f);

struct Profile {
    std::vector<std::size_t> gamma;  // dots per column
    std::vector<std::size_t> rho;    // dots per row
    std::size_t dot_count;
    std::vector<std::size_t> theta;  // dots per up-left diagonal, theta[i]
                                     // for the diagonal through (i, n-1)
};
Profile profile(const FerrersDiagram& f);

struct BoundResult {
    std::size_t k_max;
    std::vector<std::size_t> v;  // v[i], i in [0, delta)
};
/// Singleton-like dimension bound: v[i] counts dots outside the first i
/// rows and the rightmost delta-1-i columns; k_max is the minimum.
BoundResult singleton_like_bound(const FerrersDiagram& f, std::size_t delta);

using Cell = std::pair<std::size_t, std::size_t>;

/// Explicit bijection piece of a proper combination: source dot -> target dot.
struct CellMap {
    std::vector<std::pair<Cell, Cell>> pairs;

    /// Identity on all dots of f.
    static CellMap identity(const FerrersDiagram& f);
    /// Identity shifted by (di, dj).
    static CellMap translate(const FerrersDiagram& f, std::size_t di, std::size_t dj);
};

bool proper_combination_check(const FerrersDiagram& f1, const FerrersDiagram& f2,
                              const CellMap& phi1, const CellMap& phi2,
                              const FerrersDiagram& f);
/// Same, for any number of pieces.
bool proper_combination_check(const std::vector<const FerrersDiagram*>& parts,
                              const std::vector<const CellMap*>& phis,
                              const FerrersDiagram& f);

/// Build M12: entry at phi_l(i,j) is M_l(i,j); zero elsewhere.
MatFq proper_embed(const MatFq& m1, const MatFq& m2, const CellMap& phi1,
                   const CellMap& phi2, const FerrersDiagram& f);

enum class ShapeClass { invariant, transposed, single_row, single_col };

/// Classify the image of one piece of a proper combination.
ShapeClass degeneration_shape(const FerrersDiagram& fl, const CellMap& phi);

const char* to_string(ShapeClass s);

}  // namespace fdrm

#endif
