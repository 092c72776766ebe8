#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace smovqe {

enum class PauliAxis : std::uint8_t { I, X, Y, Z };

char to_char(PauliAxis axis);

/// A real-weighted tensor product of single-qubit Pauli operators.
///
/// Qubit q corresponds to bit q of a computational-basis index. The operator
/// acts on a basis state as P|b> = i^{n_Y} (-1)^{popcount(b & z_mask)} |b ^ x_mask>,
/// which is how expectation values and dense matrices are evaluated.
class PauliTerm {
 public:
  PauliTerm(double coefficient, std::vector<PauliAxis> axes);

  /// Parses a label such as "XXI" (qubit 0 first).
  static PauliTerm from_label(double coefficient, std::string_view label);

  double coefficient() const noexcept { return coefficient_; }
  std::span<const PauliAxis> axes() const noexcept { return axes_; }
  std::size_t num_qubits() const noexcept { return axes_.size(); }

  std::uint64_t x_mask() const noexcept { return x_mask_; }
  std::uint64_t z_mask() const noexcept { return z_mask_; }
  int y_count() const noexcept { return y_count_; }
  bool is_identity() const noexcept { return x_mask_ == 0 && z_mask_ == 0; }

  std::string label() const;

 private:
  double coefficient_;
  std::vector<PauliAxis> axes_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  int y_count_ = 0;
};

enum class Model { TFIM, XX, XXZ, XXX };

Model parse_model(std::string_view name);
std::string_view model_name(Model model);

// Model-specific couplings. TFIM uses (j, h), XX uses j, XXZ uses (j, delta),
// XXX uses (j, h).
struct Couplings {
  double j = -1.0;
  double h = -1.0;
  double delta = -0.5;
};

class Hamiltonian {
 public:
  /// Terms with a zero coefficient are dropped. Every term must act on
  /// exactly `num_qubits` qubits.
  Hamiltonian(std::size_t num_qubits, std::vector<PauliTerm> terms);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << num_qubits_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  std::span<const PauliTerm> terms() const noexcept { return terms_; }

  Eigen::MatrixXcd dense_matrix() const;

 private:
  std::size_t num_qubits_;
  std::vector<PauliTerm> terms_;
};

/// Open-boundary spin chains: TFIM, XX, XXZ and the isotropic Heisenberg
/// chain with a uniform (h, h, h) field.
Hamiltonian build_hamiltonian(Model model, std::size_t num_qubits, const Couplings& couplings);

}  // namespace smovqe
