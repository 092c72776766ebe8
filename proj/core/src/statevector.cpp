#include "smovqe/statevector.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "smovqe/error.hpp"

namespace smovqe {

namespace {

constexpr double kImagResidualTol = 1e-10;

void check_qubit(std::size_t q, std::size_t n) {
  if (q >= n) throw DimensionError("qubit index " + std::to_string(q) + " out of range");
}

void check_match(std::size_t hamiltonian_qubits, const Statevector& psi) {
  if (hamiltonian_qubits != psi.num_qubits()) {
    throw DimensionError("operator acts on " + std::to_string(hamiltonian_qubits) +
                         " qubits but state has " + std::to_string(psi.num_qubits()));
  }
}

Complex pauli_expectation_complex(const PauliTerm& term, const Statevector& psi) {
  const auto amps = psi.amplitudes();
  const std::uint64_t xm = term.x_mask();
  const std::uint64_t zm = term.z_mask();
  Complex acc{0.0, 0.0};
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    const Complex prod = std::conj(amps[b ^ xm]) * amps[b];
    if (std::popcount(b & zm) & 1) {
      acc -= prod;
    } else {
      acc += prod;
    }
  }
  switch (term.y_count() & 3) {
    case 0: return acc;
    case 1: return {-acc.imag(), acc.real()};
    case 2: return -acc;
    default: return {acc.imag(), -acc.real()};
  }
}

}  // namespace

Statevector::Statevector(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits_ == 0) throw InvalidSpecError("statevector needs at least one qubit");
  if (num_qubits_ > kMaxQubits) {
    throw ResourceError("statevector limited to " + std::to_string(kMaxQubits) + " qubits");
  }
  amplitudes_.assign(std::size_t{1} << num_qubits_, Complex{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

Statevector::Statevector(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (num_qubits_ == 0) throw InvalidSpecError("statevector needs at least one qubit");
  if (num_qubits_ > kMaxQubits) {
    throw ResourceError("statevector limited to " + std::to_string(kMaxQubits) + " qubits");
  }
  if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
    throw DimensionError("amplitude count does not match 2^" + std::to_string(num_qubits_));
  }
}

void Statevector::apply_ry(std::size_t qubit, double angle) {
  check_qubit(qubit, num_qubits_);
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < amplitudes_.size(); base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const Complex a0 = amplitudes_[k];
      const Complex a1 = amplitudes_[k + stride];
      amplitudes_[k] = c * a0 - s * a1;
      amplitudes_[k + stride] = s * a0 + c * a1;
    }
  }
}

void Statevector::apply_rz(std::size_t qubit, double angle) {
  check_qubit(qubit, num_qubits_);
  const Complex phase0 = std::polar(1.0, -0.5 * angle);
  const Complex phase1 = std::conj(phase0);
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < amplitudes_.size(); base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      amplitudes_[k] *= phase0;
      amplitudes_[k + stride] *= phase1;
    }
  }
}

void Statevector::apply_cx(std::size_t control, std::size_t target) {
  check_qubit(control, num_qubits_);
  check_qubit(target, num_qubits_);
  if (control == target) throw InvalidSpecError("CX control and target must differ");
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t b = 0; b < amplitudes_.size(); ++b) {
    if ((b & cbit) && !(b & tbit)) std::swap(amplitudes_[b], amplitudes_[b | tbit]);
  }
}

double Statevector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return acc;
}

void Statevector::normalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw InvalidInputError("cannot normalize the zero vector");
  for (auto& a : amplitudes_) a /= n;
}

Complex inner_product(const Statevector& a, const Statevector& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("inner product of mismatched states");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.dimension(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double pauli_expectation(const PauliTerm& term, const Statevector& psi) {
  check_match(term.num_qubits(), psi);
  const Complex e = pauli_expectation_complex(term, psi);
  if (std::abs(e.imag()) > kImagResidualTol) {
    throw Error("Pauli expectation has imaginary residual " + std::to_string(e.imag()));
  }
  return e.real();
}

double exact_expectation(const Hamiltonian& hamiltonian, const Statevector& psi) {
  check_match(hamiltonian.num_qubits(), psi);
  Complex total{0.0, 0.0};
  for (const auto& term : hamiltonian.terms()) {
    total += term.coefficient() * pauli_expectation_complex(term, psi);
  }
  if (std::abs(total.imag()) > kImagResidualTol) {
    throw Error("energy has imaginary residual " + std::to_string(total.imag()));
  }
  return total.real();
}

}  // namespace smovqe
