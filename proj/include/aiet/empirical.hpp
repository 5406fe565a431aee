#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aiet/errors.hpp"
#include "aiet/regularity.hpp"

namespace aiet {

/// Positions of the tower floors T^i I^(n)_a inside [0, 1), obtained by
/// iterating the exchange on floor midpoints.
struct LevelOneGeometry {
  Vector<double> left;       ///< per vertex
  Vector<double> length;     ///< per vertex
  Vector<double> top_left;   ///< left endpoint of I_a before the exchange
  double contraction = 0;    ///< exp(-rho0)
};

/// Throws InvariantError if the simulated orbit disagrees with the tower
/// words or the floors do not tile [0, 1).
LevelOneGeometry level_one_geometry(const RegularityModel& model);

/// Cell of an admissible word x_0 ... x_k: the image of the level-1 floor
/// of x_k under F_{x_0} o ... o F_{x_{k-1}}, where F_x maps I_{letter(x)}
/// affinely onto the floor of x.
struct RefinementCell {
  std::vector<Vertex> word;
  double left = 0;
  double right = 0;
  double nu_mass = 0;
  double leb_length = 0;
};

/// Depth-k refinement exceeded the cell budget.
class RefinementTooLarge : public InputError {
 public:
  RefinementTooLarge(double cells, std::uint64_t cap, int suggested_depth);
  double cells;
  int suggested_depth;
};

struct EmpiricalOptions {
  int depth = 1;  ///< number of symbols per word
  std::uint64_t max_cells = 20'000'000;
};

struct EmpiricalResult {
  int depth = 0;
  double t = 0;
  std::uint64_t cell_count = 0;
  double est_holder_h = 0;     ///< min log(leb) / log(nu)
  double est_holder_hinv = 0;  ///< min log(nu) / log(leb)
  double nu_total = 0;
  double leb_total = 0;
  double max_gap = 0;          ///< largest |left - previous right|
};

/// Receives cells in increasing spatial order together with the cumulative
/// nu-mass up to the right endpoint.
using CellVisitor = std::function<void(const RefinementCell&, double cumulative_nu)>;

/// Number of admissible words with `depth` symbols.
double refinement_cell_count(const Digraph& graph, int depth);

/// Folds over every depth-k cell. Throws RefinementTooLarge above the cap and
/// InvariantError if masses or lengths fail to sum to 1 within 1e-9 or the
/// cells leave gaps.
EmpiricalResult empirical_conjugacy(const RegularityModel& model, double t, const EmpiricalOptions& options,
                                    const CellVisitor& visit = {});

/// "A0.E3.C1".
std::string cell_word(const TowerGraph& towers, const std::vector<Vertex>& word);

}  // namespace aiet
