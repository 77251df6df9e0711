#pragma once

#include <cstddef>
#include <vector>

#include "cohwit/core.hpp"
#include "cohwit/rng.hpp"

namespace cohwit {

/// Sweep data cannot constrain the model (e.g. a dead heater).
class CoverageError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Thermo-optic model: theta_i = theta0_i + sum_j alpha_ij I_j^2 (1 + beta_j I_j^2).
/// Heater j sits on MZI j; alpha_ij is zero unless MZIs i and j share a column.
struct CalibrationModel {
  std::vector<std::size_t> column;  ///< mesh column of each MZI
  Eigen::VectorXd theta0;           ///< rad
  Eigen::MatrixXd alpha;            ///< rad / A^2
  Eigen::VectorXd beta;             ///< 1 / A^2

  std::size_t size() const { return column.size(); }
  void validate() const;
};

/// (1 + cos theta) / 2.
double cross_power(double theta);

Eigen::VectorXd calibration_forward(const CalibrationModel& model, const Eigen::VectorXd& currents);

/// Cross-port power of `mzi` recorded while only `heater` is driven.
struct Sweep {
  std::size_t heater = 0;
  std::size_t mzi = 0;
  std::vector<double> currents;
  std::vector<double> cross_power;
};

struct CalibrationFit {
  CalibrationModel model;
  double rms_residual = 0.0;
  std::vector<double> sweep_rms;  ///< per input sweep
};

/// Least-squares fit of P = (1 + cos theta(I))/2. Diagonal sweeps (mzi ==
/// heater) fix theta0, alpha_jj > 0 and beta_j; cross sweeps then fix alpha_ij.
/// Each MZI needs a diagonal sweep with >= 8 points spanning >= 2 pi of phase.
CalibrationFit calibration_fit(const std::vector<Sweep>& sweeps, const std::vector<std::size_t>& columns);

/// Heater currents that realise the target phases (mod 2 pi).
Eigen::VectorXd currents_for_phases(const CalibrationModel& model, const Eigen::VectorXd& targets);

/// Sweeps generated from a model: one diagonal sweep per MZI plus one cross
/// sweep per coupled pair, `points` currents in [0, i_max], multiplicative
/// Gaussian power noise of relative size `power_noise`.
std::vector<Sweep> synthesize_sweeps(const CalibrationModel& model, std::size_t points, double i_max,
                                     double power_noise, Seed seed);

}  // namespace cohwit
