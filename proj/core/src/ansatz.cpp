#include "smovqe/ansatz.hpp"

#include <cmath>
#include <string>

#include "smovqe/error.hpp"

namespace smovqe {

double reduce_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number plus 2*pi can round up to exactly 2*pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

AnsatzSpec::AnsatzSpec(std::size_t num_qubits, std::size_t num_layers)
    : num_qubits_(num_qubits), num_layers_(num_layers) {
  if (num_qubits_ == 0) throw InvalidSpecError("ansatz needs at least one qubit");
  if (num_qubits_ > Statevector::kMaxQubits) {
    throw ResourceError("ansatz limited to " + std::to_string(Statevector::kMaxQubits) + " qubits");
  }
}

ParameterVector::ParameterVector(std::vector<double> values) : values_(std::move(values)) {
  for (auto& v : values_) {
    if (!std::isfinite(v)) throw InvalidInputError("parameter values must be finite");
    v = reduce_angle(v);
  }
}

void ParameterVector::set(std::size_t d, double angle) {
  if (d >= values_.size()) throw DimensionError("parameter index out of range");
  if (!std::isfinite(angle)) throw InvalidInputError("parameter values must be finite");
  values_[d] = reduce_angle(angle);
}

ParameterVector ParameterVector::shifted(std::size_t d, double offset) const {
  ParameterVector out = *this;
  out.set(d, values_.at(d) + offset);
  return out;
}

Statevector apply_ansatz(const AnsatzSpec& spec, const ParameterVector& theta) {
  if (theta.size() != spec.num_parameters()) {
    throw DimensionError("ansatz expects " + std::to_string(spec.num_parameters()) +
                         " parameters, got " + std::to_string(theta.size()));
  }
  const std::size_t n = spec.num_qubits();
  Statevector psi(n);
  for (std::size_t layer = 0; layer <= spec.num_layers(); ++layer) {
    if (layer > 0) {
      for (std::size_t q = 0; q + 1 < n; ++q) psi.apply_cx(q, q + 1);
    }
    for (std::size_t q = 0; q < n; ++q) {
      psi.apply_ry(q, theta[spec.ry_index(layer, q)]);
      psi.apply_rz(q, theta[spec.rz_index(layer, q)]);
    }
  }
  return psi;
}

}  // namespace smovqe
