#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "cohwit/graphs.hpp"
#include "cohwit/rng.hpp"
#include "cohwit/sdp.hpp"

namespace cohwit {

struct AscentConfig {
  std::size_t restarts = 200;
  std::size_t max_iterations = 4000;
  double grad_tol = 1e-9;  ///< Riemannian gradient norm for convergence
};

struct MaximizationResult {
  double value = 0.0;
  std::vector<PureState> states;
  std::size_t restarts_used = 0;
  bool converged = false;
};

/// Multi-start Riemannian gradient ascent of spec over tuples of d-dimensional
/// pure states (one unit sphere per state, Armijo step control). Restart k
/// uses stream split(seed, k); the first restart reaching the best value wins.
MaximizationResult maximize_pure(const InequalitySpec& spec, std::size_t d, std::size_t restarts, Seed seed,
                                 const AscentConfig& config = {});

/// A restricted family of states: params (size num_params) -> PureState.
struct StateFamily {
  std::size_t num_params = 0;
  std::function<PureState(const std::vector<double>&)> make;
};

struct FamilyResult {
  double value = 0.0;
  std::vector<std::vector<double>> params;
  std::vector<PureState> states;
  std::size_t restarts_used = 0;
  bool converged = false;
};

/// Multi-start ascent over spec.n members of a parameterised family, using
/// central-difference gradients and Armijo backtracking.
FamilyResult maximize_family(const InequalitySpec& spec, const StateFamily& family, std::size_t restarts, Seed seed,
                             const AscentConfig& config = {});

struct SamplingReport {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t num_sets = 0;
  std::vector<double> values;
  double max_value = 0.0;
  std::size_t violation_count = 0;  ///< values strictly above the classical bound
};

SamplingReport haar_experiment(const InequalitySpec& spec, std::size_t d, std::size_t num_sets, Seed seed);

struct ThresholdCell {
  std::size_t n = 0;
  std::size_t d = 0;
  std::optional<double> pure_value;  ///< lower bound from maximize_pure
  std::optional<double> sdp_value;   ///< upper bound from the SDP
  double max_value = 0.0;            ///< pure value when available, else SDP
  bool agree = true;                 ///< |pure - sdp| <= 1e-3 when both exist
};

struct ThresholdConfig {
  std::size_t pure_n_max = 12;  ///< maximize_pure runs only for n <= this
  std::size_t restarts = 200;
  Seed seed{};
  SdpConfig sdp{};
};

/// Cells (n, d) for 3 <= n <= n_max and 2 <= d <= min(d_max, n). For d >= n-1
/// the SDP value at d = n-1 is used since larger dimensions add nothing.
std::vector<ThresholdCell> dimension_thresholds(std::size_t n_max, std::size_t d_max,
                                                const ThresholdConfig& config = {});

/// Thresholds for one n in the form classify() expects.
std::vector<Threshold> thresholds_for(const std::vector<ThresholdCell>& table, std::size_t n);

struct MonotonicityFlag {
  std::size_t n = 0;
  std::size_t d = 0;
  double value = 0.0;
  double previous = 0.0;
};

/// Cells whose value drops below the value at the next smaller d by more than tol.
std::vector<MonotonicityFlag> monotonicity_violations(const std::vector<ThresholdCell>& table, double tol = 1e-8);

}  // namespace cohwit
