#pragma once

#include <cstddef>
#include <vector>

#include "cohwit/core.hpp"
#include "cohwit/rng.hpp"

namespace cohwit {

/// One Mach-Zehnder cell acting on modes (mode, mode + 1).
struct MziCell {
  std::size_t mode = 0;
  std::size_t column = 0;
  double theta = 0.0;  ///< internal phase between the two splitters
  double phi = 0.0;    ///< external phase on the upper input
};

/// Rectangular mesh of m(m-1)/2 cells: column c holds the cells whose mode
/// index has the parity of c.
struct MeshConfig {
  std::size_t modes = 0;
  std::vector<MziCell> cells;
  std::vector<double> output_phases;  ///< empty means all zero

  /// Throws ValidationError unless cells tile the rectangular layout exactly.
  void validate() const;
};

/// The (mode, column) slots of the rectangular layout in column-major order.
std::vector<MziCell> rectangular_layout(std::size_t modes);

/// Two-mode transfer matrix: splitter * diag(e^{i theta}, 1) * splitter *
/// diag(e^{i phi}, 1) with splitter (1/sqrt2)[[1, i], [i, 1]]. Cross-port
/// power is (1 + cos theta)/2.
Eigen::Matrix2cd mzi_transfer(double theta, double phi);

/// Product of cell transfers in column order, then the output phases.
CMatrix compose(const MeshConfig& config);

/// Rectangular decomposition of a unitary. Cells with nothing to null are set
/// to bar (theta = pi), so the identity maps to an all-bar mesh.
MeshConfig decompose(const CMatrix& u, double tol = 1e-10);

/// (1/m) sum_ij |T_ij| |T_exp,ij|.
double fidelity(const CMatrix& t, const CMatrix& t_exp);

/// Reduces an angle to [0, 2 pi).
double wrap_angle(double a);

struct FidelityStudy {
  std::vector<double> fidelities;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Decomposes `count` Haar unitaries, perturbs every theta and phi with
/// independent Gaussian noise of width sigma (radians), recomposes and scores.
FidelityStudy fidelity_study(std::size_t modes, std::size_t count, double sigma, Seed seed);

}  // namespace cohwit
