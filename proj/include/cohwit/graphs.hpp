#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cohwit/core.hpp"

namespace cohwit {

/// Symmetric matrix of pairwise overlaps on the complete graph K_n.
/// Only the strict upper triangle is stored, row-major:
/// (0,1), (0,2), ..., (0,n-1), (1,2), ..., (n-2,n-1).
class OverlapSet {
 public:
  explicit OverlapSet(std::size_t n);
  OverlapSet(std::size_t n, std::vector<double> upper);

  std::size_t n() const { return n_; }
  std::size_t edge_count() const { return upper_.size(); }
  const std::vector<double>& upper() const { return upper_; }

  /// r(i, i) == 1; r(i, j) == r(j, i).
  double operator()(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double value);

  /// Position of edge (i, j), i < j, in upper().
  static std::size_t edge_index(std::size_t n, std::size_t i, std::size_t j);

  Eigen::MatrixXd to_matrix() const;

 private:
  std::size_t n_;
  std::vector<double> upper_;
};

/// Pairwise overlaps Tr(rho_i rho_j) of a list of states.
OverlapSet overlap_matrix(const std::vector<DensityMatrix>& states);
OverlapSet overlap_matrix(const std::vector<PureState>& states);

using Edge = std::pair<std::size_t, std::size_t>;

/// Signed edge weights plus classical bound: sum_e w_e r_e <= bound.
struct InequalitySpec {
  std::string name;
  std::size_t n = 0;
  std::map<Edge, double> weights;
  double classical_bound = 0.0;

  /// Throws ValidationError on out-of-range pairs, i >= j, or non-finite weights.
  void validate() const;
};

InequalitySpec make_hn(std::size_t n);
InequalitySpec make_h_mzi();
/// Six-state robust h3 functional on the hexagon fragment:
/// r01 + r02 - r12 - r03 - r14 - r25 <= 1.
InequalitySpec make_h3_robust();

/// Looks up "h3".."hN", "h_mzi" / "mzi", "h3_robust".
InequalitySpec inequality_by_name(const std::string& name);

double evaluate(const InequalitySpec& spec, const OverlapSet& r);
double evaluate_states(const InequalitySpec& spec, const std::vector<DensityMatrix>& states);
double evaluate_states(const InequalitySpec& spec, const std::vector<PureState>& states);

/// Sum of all off-diagonal overlaps (upper triangle).
double hn_plus(const OverlapSet& r);

/// Restriction of r to the listed nodes, in the listed order.
OverlapSet restrict_nodes(const OverlapSet& r, const std::vector<std::size_t>& nodes);

struct Threshold {
  std::size_t d = 0;
  double max_value = 0.0;
};

struct WitnessVerdict {
  double value = 0.0;
  bool coherence_witnessed = false;
  std::size_t min_dimension = 1;
  /// Set when no thresholds were supplied, so min_dimension carries no information.
  bool dimension_undetermined = false;
  std::vector<Threshold> thresholds_used;
};

/// value > bound + slack witnesses coherence; min_dimension is one more than the
/// largest d whose maximum (plus slack) is exceeded.
WitnessVerdict classify(const InequalitySpec& spec, double value, const std::vector<Threshold>& thresholds,
                        double slack = 0.0);

}  // namespace cohwit
