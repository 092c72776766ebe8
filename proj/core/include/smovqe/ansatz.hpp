#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "smovqe/statevector.hpp"

namespace smovqe {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps an angle onto [0, 2*pi).
double reduce_angle(double angle);

/// Hardware-efficient layered circuit: a rotation layer, then `num_layers`
/// repetitions of [CX chain (q -> q+1), rotation layer]. A rotation layer
/// applies RY then RZ to every qubit, each gate with its own parameter.
///
/// The linear CX chain is an assumption; circular or all-to-all entanglers
/// would equally satisfy the one-parameter-per-gate structure.
class AnsatzSpec {
 public:
  AnsatzSpec(std::size_t num_qubits, std::size_t num_layers);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t num_layers() const noexcept { return num_layers_; }
  std::size_t num_parameters() const noexcept { return 2 * num_qubits_ * (num_layers_ + 1); }

  // Flattening is layer-major, qubit-minor, RY before RZ.
  std::size_t ry_index(std::size_t layer, std::size_t qubit) const { return 2 * (layer * num_qubits_ + qubit); }
  std::size_t rz_index(std::size_t layer, std::size_t qubit) const { return ry_index(layer, qubit) + 1; }

 private:
  std::size_t num_qubits_;
  std::size_t num_layers_;
};

/// Point on the parameter torus; every stored value lies in [0, 2*pi).
class ParameterVector {
 public:
  ParameterVector() = default;
  explicit ParameterVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t d) const { return values_[d]; }
  std::span<const double> values() const noexcept { return values_; }

  void set(std::size_t d, double angle);
  /// Copy with component d moved by `offset`.
  ParameterVector shifted(std::size_t d, double offset) const;

  friend bool operator==(const ParameterVector&, const ParameterVector&) = default;

 private:
  std::vector<double> values_;
};

Statevector apply_ansatz(const AnsatzSpec& spec, const ParameterVector& theta);

}  // namespace smovqe
