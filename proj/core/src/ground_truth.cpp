#include "smovqe/ground_truth.hpp"

#include <algorithm>
#include <string>

#include "smovqe/error.hpp"

namespace smovqe {

GroundTruth ground_truth(const Hamiltonian& hamiltonian, double tolerance) {
  if (hamiltonian.num_qubits() > kMaxDiagonalizationQubits) {
    throw ResourceError("dense diagonalization limited to " + std::to_string(kMaxDiagonalizationQubits) +
                        " qubits, got " + std::to_string(hamiltonian.num_qubits()));
  }
  if (!(tolerance >= 0.0)) throw InvalidInputError("degeneracy tolerance must be nonnegative");

  const Eigen::MatrixXcd h = hamiltonian.dense_matrix();
  Eigen::VectorXd evals;
  Eigen::MatrixXcd evecs;
  // All-real Hamiltonians (even number of Y factors per term) take the faster
  // real symmetric path.
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real());
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
    evals = solver.eigenvalues();
    evecs = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
    evals = solver.eigenvalues();
    evecs = solver.eigenvectors();
  }

  GroundTruth gt;
  gt.tolerance = tolerance;
  gt.gs_energy = evals(0);
  gt.max_energy = evals(evals.size() - 1);
  Eigen::Index k = 0;
  while (k < evals.size() && evals(k) - gt.gs_energy <= tolerance) ++k;
  gt.degeneracy = static_cast<std::size_t>(k);
  gt.ground_basis = evecs.leftCols(k);
  return gt;
}

double fidelity_to_gs(const Statevector& psi, const GroundTruth& gt) {
  if (static_cast<Eigen::Index>(psi.dimension()) != gt.ground_basis.rows()) {
    throw DimensionError("state dimension does not match ground-truth dimension");
  }
  const auto amps = psi.amplitudes();
  Eigen::Map<const Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
  const double f = (gt.ground_basis.adjoint() * v).squaredNorm();
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace smovqe
