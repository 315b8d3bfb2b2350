#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mzm/pauli.hpp"

namespace mzm {

// Possibly unnormalized amplitude vector over the 2^L computational space.
using StateVector = Eigen::VectorXcd;

inline constexpr double kDegeneracyTol = 1e-8;
inline constexpr double kDefaultIteTime = 5.0;
inline constexpr double kAnnihilationNorm = 1e-300;

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd eigenvectors;  // orthonormal columns
};

SpectralDecomposition eig_hermitian(const DenseOperator& op);

// e^{-Ht} via the spectral decomposition (never by series).
Eigen::MatrixXcd expm_neg(const DenseOperator& h, double t);

// Sum_k q_k e^{-t E_k} |e_k>, unnormalized. t = 0 returns the input.
StateVector ite_apply(const OperatorSum& h, double t, const StateVector& s);

// Orthogonal projector onto the span of eigenvectors within degeneracy_tol
// of the minimum eigenvalue.
DenseOperator ground_projector(const OperatorSum& h,
                               double degeneracy_tol = kDegeneracyTol);
DenseOperator ground_projector(const DenseOperator& h,
                               double degeneracy_tol = kDegeneracyTol);
double ground_energy(const DenseOperator& h,
                     double degeneracy_tol = kDegeneracyTol);

// Pairwise-commuting parts summing to h. When all terms commute, each
// non-identity term is its own factor and scalar terms attach to the most
// local factor; otherwise greedy grouping of mutually commuting terms.
std::vector<OperatorSum> factor_commuting(const OperatorSum& h);

struct ScheduleStep {
  OperatorSum hamiltonian;
  double t = kDefaultIteTime;
};

struct Schedule {
  std::vector<ScheduleStep> steps;
};

struct ScheduleResult {
  StateVector final_state;
  // Per step: 1 - |P_g psi|^2 / |psi|^2 after applying the step.
  std::vector<double> leakage;
};

// Applies ite_apply left-to-right; throws NumericError on annihilation.
ScheduleResult ite_schedule(const Schedule& sched, const StateVector& s);

}  // namespace mzm
