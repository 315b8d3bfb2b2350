#include "mzm/ite.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "mzm/errors.hpp"

namespace mzm {

namespace {

int sites_for_dim(Eigen::Index dim) {
  int sites = 0;
  Eigen::Index d = dim;
  while (d > 1) {
    if (d % 2 != 0) throw ConfigError("state dimension is not a power of two");
    d /= 2;
    ++sites;
  }
  if (sites == 0) throw ConfigError("state dimension must be at least 2");
  return sites;
}

std::size_t weight(const PauliString& s) {
  return static_cast<std::size_t>(
      std::count_if(s.letters.begin(), s.letters.end(),
                    [](Pauli p) { return p != Pauli::I; }));
}

}  // namespace

SpectralDecomposition eig_hermitian(const DenseOperator& op) {
  if (!op.hermitian) throw ConfigError("eig_hermitian: non-Hermitian input");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.entries);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eig_hermitian: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXcd expm_neg(const DenseOperator& h, double t) {
  const SpectralDecomposition d = eig_hermitian(h);
  const Eigen::VectorXd weights = (-t * d.eigenvalues.array()).exp();
  return d.eigenvectors * weights.asDiagonal() * d.eigenvectors.adjoint();
}

StateVector ite_apply(const OperatorSum& h, double t, const StateVector& s) {
  if (t < 0) throw ConfigError("ite_apply: negative duration");
  if (t == 0.0) return s;
  const int sites = sites_for_dim(s.size());
  const DenseOperator dense = to_dense(h, sites);
  if (dense.dim() != s.size()) throw ConfigError("ite_apply: dimension mismatch");
  return expm_neg(dense, t) * s;
}

DenseOperator ground_projector(const DenseOperator& h, double degeneracy_tol) {
  const SpectralDecomposition d = eig_hermitian(h);
  const double emin = d.eigenvalues(0);
  Eigen::Index rank = 0;
  while (rank < d.eigenvalues.size() &&
         d.eigenvalues(rank) <= emin + degeneracy_tol) {
    ++rank;
  }
  const Eigen::MatrixXcd g = d.eigenvectors.leftCols(rank);
  DenseOperator out;
  out.entries = g * g.adjoint();
  out.hermitian = true;
  return out;
}

DenseOperator ground_projector(const OperatorSum& h, double degeneracy_tol) {
  return ground_projector(to_dense(h, static_cast<int>(h.sites())),
                          degeneracy_tol);
}

double ground_energy(const DenseOperator& h, double degeneracy_tol) {
  (void)degeneracy_tol;
  return eig_hermitian(h).eigenvalues(0);
}

std::vector<OperatorSum> factor_commuting(const OperatorSum& h) {
  const OperatorSum canon = canonicalize(h);
  if (canon.empty()) return {};

  std::vector<PauliString> scalars;
  std::vector<PauliString> strings;
  for (const auto& t : canon.terms) {
    (t.is_identity() ? scalars : strings).push_back(t);
  }
  if (strings.empty()) return {OperatorSum(scalars)};

  bool all_commute = true;
  for (std::size_t i = 0; i < strings.size() && all_commute; ++i) {
    for (std::size_t j = i + 1; j < strings.size(); ++j) {
      if (!commutes(OperatorSum({strings[i]}), OperatorSum({strings[j]}))) {
        all_commute = false;
        break;
      }
    }
  }

  std::vector<OperatorSum> factors;
  if (all_commute) {
    for (const auto& s : strings) factors.emplace_back(std::vector{s});
    if (!scalars.empty()) {
      // Scalars ride with the most local factor, as in the printed
      // grouping -X2X3, +(Z1 + 1)/2.
      std::size_t best = 0;
      for (std::size_t i = 1; i < factors.size(); ++i) {
        if (weight(factors[i].terms.front()) <
            weight(factors[best].terms.front())) {
          best = i;
        }
      }
      for (const auto& s : scalars) {
        factors[best] = add(factors[best], OperatorSum({s}));
      }
    }
    return factors;
  }

  // Greedy first-fit grouping of mutually commuting terms.
  for (const auto& s : strings) {
    bool placed = false;
    for (auto& group : factors) {
      if (commutes(group, OperatorSum({s}))) {
        group = add(group, OperatorSum({s}));
        placed = true;
        break;
      }
    }
    if (!placed) factors.emplace_back(std::vector{s});
  }
  if (!scalars.empty()) factors.front() = add(factors.front(), OperatorSum(scalars));
  return factors;
}

ScheduleResult ite_schedule(const Schedule& sched, const StateVector& s) {
  if (sched.steps.empty()) throw ConfigError("ite_schedule: empty schedule");
  ScheduleResult result;
  result.final_state = s;
  for (const auto& step : sched.steps) {
    if (!is_hermitian(step.hamiltonian)) {
      throw ConfigError("ite_schedule: non-Hermitian step Hamiltonian");
    }
    result.final_state = ite_apply(step.hamiltonian, step.t, result.final_state);
    const double norm = result.final_state.norm();
    if (norm < kAnnihilationNorm) {
      throw NumericError(
          "ite_schedule: projection annihilation (input orthogonal to every "
          "surviving sector)");
    }
    const DenseOperator p = ground_projector(step.hamiltonian);
    const double kept = (p.entries * result.final_state).squaredNorm() /
                        result.final_state.squaredNorm();
    result.leakage.push_back(1.0 - kept);
  }
  return result;
}

}  // namespace mzm
