#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "smovqe/pauli.hpp"

namespace smovqe {

using Complex = std::complex<double>;

/// Dense pure state on n qubits; amplitude b belongs to basis state |b> with
/// qubit q stored in bit q.
class Statevector {
 public:
  static constexpr std::size_t kMaxQubits = 24;

  /// |0...0>.
  explicit Statevector(std::size_t num_qubits);
  Statevector(std::size_t num_qubits, std::vector<Complex> amplitudes);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }

  void apply_ry(std::size_t qubit, double angle);
  void apply_rz(std::size_t qubit, double angle);
  void apply_cx(std::size_t control, std::size_t target);

  double norm_squared() const;
  void normalize();

 private:
  std::size_t num_qubits_;
  std::vector<Complex> amplitudes_;
};

/// <a|b>.
Complex inner_product(const Statevector& a, const Statevector& b);

/// <psi|P|psi> for the bare Pauli string (coefficient excluded).
double pauli_expectation(const PauliTerm& term, const Statevector& psi);

/// <psi|H|psi>, the infinite-shot energy.
double exact_expectation(const Hamiltonian& hamiltonian, const Statevector& psi);

}  // namespace smovqe
