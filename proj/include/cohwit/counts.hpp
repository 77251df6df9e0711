#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cohwit/graphs.hpp"
#include "cohwit/optimize.hpp"
#include "cohwit/rng.hpp"

namespace cohwit {

/// Photon counts at the output ports of a prepare-and-measure run. Port 0 is
/// the projection onto the measured state.
struct CountRecord {
  std::vector<std::size_t> counts;
  std::size_t total_trials = 0;
  std::vector<double> estimated_probability;  ///< counts / total_trials
  std::vector<double> sigma_c;                ///< sqrt(counts) / total_trials

  double estimate() const { return estimated_probability.at(0); }
  double sigma() const { return sigma_c.at(0); }
};

/// Relative (eps) and additive (delta, radians) angle errors: every circuit
/// angle a becomes a (1 + eps u) + delta v with u, v uniform on [-1, 1].
struct AngleNoise {
  double eps = 0.0;
  double delta = 0.0;
};

struct DetectorModel {
  double efficiency = 1.0;  ///< probability a photon reaching a port is counted
  double dark_rate = 0.0;   ///< mean dark counts per trial per port (added Poisson)
};

/// Simulates `trials` heralded photons: multinomial over the ports of a
/// measurement basis whose first vector is `meas`.
CountRecord overlap_via_counts(const PureState& prep, const PureState& meas, std::size_t trials, Seed seed,
                               const DetectorModel& detector = {});

/// Same, but prep and meas are given as circuit angles of `family`; with
/// noise each stage is perturbed independently before the run.
CountRecord overlap_via_counts(const StateFamily& family, const std::vector<double>& prep_params,
                               const std::vector<double>& meas_params, std::size_t trials, Seed seed,
                               const std::optional<AngleNoise>& noise = std::nullopt);

struct InequalityEstimate {
  OverlapSet overlaps;
  std::vector<CountRecord> records;  ///< one per edge, upper-triangular order
  double value = 0.0;
  /// sqrt(sum_e w_e^2 r_e / N) propagated from the per-edge Poisson errors.
  double sigma_c = 0.0;
};

/// Estimates every overlap r_ij (i < j) from counts and evaluates spec.
InequalityEstimate inequality_via_counts(const InequalitySpec& spec, const std::vector<PureState>& states,
                                         std::size_t trials, Seed seed);

/// Poissonian sigma of spec evaluated from N-count overlap estimates of r.
double inequality_sigma_c(const InequalitySpec& spec, const OverlapSet& r, std::size_t trials);

/// Applies AngleNoise to a parameter vector.
std::vector<double> perturb(const std::vector<double>& params, const AngleNoise& noise, Engine& rng);

struct Dispersion {
  double ideal = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<double> samples;

  double width() const { return max - min; }
  double half_width() const { return 0.5 * (max - min); }
};

/// Monte Carlo over independently perturbed preparation and measurement
/// angles. r_ij = |<meas_j | prep_i>|^2 for i < j, so the sampled overlap
/// matrix need not be symmetric.
Dispersion dispersion(const InequalitySpec& spec, const StateFamily& family,
                      const std::vector<std::vector<double>>& state_params, const AngleNoise& noise,
                      std::size_t trials_mc, Seed seed);

}  // namespace cohwit
