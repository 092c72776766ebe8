#include "smovqe/pauli.hpp"

#include <bit>
#include <cmath>
#include <complex>

#include "smovqe/error.hpp"

namespace smovqe {

namespace {

constexpr std::size_t kMaxMaskQubits = 63;

std::complex<double> i_power(int n) {
  switch (n & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::vector<PauliAxis> single(std::size_t n, std::size_t q, PauliAxis a) {
  std::vector<PauliAxis> axes(n, PauliAxis::I);
  axes[q] = a;
  return axes;
}

std::vector<PauliAxis> bond(std::size_t n, std::size_t q, PauliAxis a) {
  std::vector<PauliAxis> axes(n, PauliAxis::I);
  axes[q] = a;
  axes[q + 1] = a;
  return axes;
}

}  // namespace

char to_char(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::I: return 'I';
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
  }
  return '?';
}

PauliTerm::PauliTerm(double coefficient, std::vector<PauliAxis> axes)
    : coefficient_(coefficient), axes_(std::move(axes)) {
  if (!std::isfinite(coefficient_)) {
    throw InvalidSpecError("Pauli term coefficient must be finite");
  }
  if (axes_.empty() || axes_.size() > kMaxMaskQubits) {
    throw InvalidSpecError("Pauli term must act on 1.." + std::to_string(kMaxMaskQubits) + " qubits");
  }
  for (std::size_t q = 0; q < axes_.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (axes_[q]) {
      case PauliAxis::I: break;
      case PauliAxis::X: x_mask_ |= bit; break;
      case PauliAxis::Y:
        x_mask_ |= bit;
        z_mask_ |= bit;
        ++y_count_;
        break;
      case PauliAxis::Z: z_mask_ |= bit; break;
    }
  }
}

PauliTerm PauliTerm::from_label(double coefficient, std::string_view label) {
  std::vector<PauliAxis> axes;
  axes.reserve(label.size());
  for (char c : label) {
    switch (c) {
      case 'I': axes.push_back(PauliAxis::I); break;
      case 'X': axes.push_back(PauliAxis::X); break;
      case 'Y': axes.push_back(PauliAxis::Y); break;
      case 'Z': axes.push_back(PauliAxis::Z); break;
      default: throw InvalidSpecError(std::string("invalid Pauli label character '") + c + "'");
    }
  }
  return PauliTerm(coefficient, std::move(axes));
}

std::string PauliTerm::label() const {
  std::string s;
  s.reserve(axes_.size());
  for (auto a : axes_) s.push_back(to_char(a));
  return s;
}

Model parse_model(std::string_view name) {
  if (name == "tfim" || name == "TFIM") return Model::TFIM;
  if (name == "xx" || name == "XX") return Model::XX;
  if (name == "xxz" || name == "XXZ") return Model::XXZ;
  if (name == "xxx" || name == "XXX" || name == "heisenberg") return Model::XXX;
  throw InvalidSpecError("unknown model '" + std::string(name) + "'");
}

std::string_view model_name(Model model) {
  switch (model) {
    case Model::TFIM: return "tfim";
    case Model::XX: return "xx";
    case Model::XXZ: return "xxz";
    case Model::XXX: return "xxx";
  }
  return "unknown";
}

Hamiltonian::Hamiltonian(std::size_t num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits) {
  if (num_qubits_ == 0) throw InvalidSpecError("Hamiltonian needs at least one qubit");
  terms_.reserve(terms.size());
  for (auto& term : terms) {
    if (term.num_qubits() != num_qubits_) {
      throw InvalidSpecError("Pauli term '" + term.label() + "' does not act on " +
                             std::to_string(num_qubits_) + " qubits");
    }
    if (term.coefficient() != 0.0) terms_.push_back(std::move(term));
  }
  if (terms_.empty()) throw InvalidSpecError("Hamiltonian has no nonzero terms");
}

Eigen::MatrixXcd Hamiltonian::dense_matrix() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : terms_) {
    const std::complex<double> base = term.coefficient() * i_power(term.y_count());
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(dim); ++b) {
      const double sign = (std::popcount(b & term.z_mask()) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(b ^ term.x_mask()), static_cast<Eigen::Index>(b)) += sign * base;
    }
  }
  return m;
}

Hamiltonian build_hamiltonian(Model model, std::size_t n, const Couplings& c) {
  if (n == 0) throw InvalidSpecError("number of qubits must be positive");
  if (n > kMaxMaskQubits) throw InvalidSpecError("number of qubits exceeds 63");

  std::vector<PauliTerm> terms;
  auto add_bonds = [&](PauliAxis a, double coeff) {
    for (std::size_t q = 0; q + 1 < n; ++q) terms.emplace_back(coeff, bond(n, q, a));
  };
  auto add_fields = [&](PauliAxis a, double coeff) {
    for (std::size_t q = 0; q < n; ++q) terms.emplace_back(coeff, single(n, q, a));
  };

  switch (model) {
    case Model::TFIM:
      add_bonds(PauliAxis::X, c.j);
      add_fields(PauliAxis::Z, c.h);
      break;
    case Model::XX:
      add_bonds(PauliAxis::X, c.j);
      add_bonds(PauliAxis::Y, c.j);
      break;
    case Model::XXZ:
      add_bonds(PauliAxis::X, c.j);
      add_bonds(PauliAxis::Y, c.j);
      add_bonds(PauliAxis::Z, c.delta);
      break;
    case Model::XXX:
      add_bonds(PauliAxis::X, c.j);
      add_bonds(PauliAxis::Y, c.j);
      add_bonds(PauliAxis::Z, c.j);
      add_fields(PauliAxis::X, c.h);
      add_fields(PauliAxis::Y, c.h);
      add_fields(PauliAxis::Z, c.h);
      break;
    default:
      throw InvalidSpecError("unknown model tag");
  }
  return Hamiltonian(n, std::move(terms));
}

}  // namespace smovqe
