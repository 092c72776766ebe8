#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "smovqe/pauli.hpp"
#include "smovqe/statevector.hpp"

namespace smovqe {

inline constexpr std::size_t kMaxDiagonalizationQubits = 14;
inline constexpr double kDefaultDegeneracyTolerance = 1e-5;

/// Exact ground-state data from dense diagonalization.
struct GroundTruth {
  double gs_energy = 0.0;
  double max_energy = 0.0;
  std::size_t degeneracy = 0;
  double tolerance = kDefaultDegeneracyTolerance;
  // Orthonormal columns spanning the ground subspace (dimension x degeneracy).
  Eigen::MatrixXcd ground_basis;

  Eigen::MatrixXcd projector() const { return ground_basis * ground_basis.adjoint(); }
};

/// Groups every eigenvalue within `tolerance` of the minimum into the ground
/// subspace. Throws ResourceError above kMaxDiagonalizationQubits.
GroundTruth ground_truth(const Hamiltonian& hamiltonian, double tolerance = kDefaultDegeneracyTolerance);

/// <psi|P_GS|psi>, clamped to [0, 1].
double fidelity_to_gs(const Statevector& psi, const GroundTruth& gt);

}  // namespace smovqe
