#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mzm/ite.hpp"
#include "mzm/majorana.hpp"
#include "mzm/pauli.hpp"

namespace mzm {

// Ordered orthonormal basis of the H0 ground space:
//   |0_3s> = (|xxx> + |x~x~x~>)/sqrt(2),  |1_3s> = (|xxx> - |x~x~x~>)/sqrt(2),
// realized as dense vectors in the sigma-z computational basis.
struct GroundSpacePair {
  StateVector basis0;
  StateVector basis1;
};

struct BlochVector {
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
};

struct ExchangeResult {
  // Unitary factor of the polar decomposition of the dissipative-readout
  // matrix <a| P(H2) e^{-H2 t} P(H1) e^{-H1 t} |b>, global phase aligned so
  // U00 is real positive.
  Eigen::Matrix2cd matrix;
  double relative_phase = 0.0;  // arg(U11) - arg(U00)
  double off_diagonal = 0.0;    // |U01| + |U10|
  double singular_spread = 0.0;  // convergence diagnostic of the raw readout
  // Raw ITE product <a| e^{-H2 t} e^{-H1 t} |b> without interleaved
  // dissipation; converges to the same unitary as t grows.
  Eigen::Matrix2cd raw_matrix;
  double raw_relative_phase = 0.0;
  // Global-phase-aligned max-entry distances to diag(1, e^{-i pi/2}) and
  // its phase mirror diag(1, e^{+i pi/2}).
  double distance_to_printed = 0.0;
  double distance_to_mirror = 0.0;
};

// Single-site x eigenvectors and the |xxx>, |x~x~x~> product states.
StateVector x_product_state(const std::string& pattern);  // e.g. "xx~x"
GroundSpacePair ground_basis_h0();

// The 8x8 dissipative braid operator P0 P(H2) e^{-H2 t} P(H1) e^{-H1 t},
// the dense image of the experimental pipeline at ITE duration t.
Eigen::MatrixXcd dissipative_braid_operator(double t = kDefaultIteTime);

ExchangeResult exchange_operator(double t = kDefaultIteTime);

// Pancharatnam/Bargmann phase -arg(<m| P1 P2 ... Pn |m>).
double geometric_phase(const StateVector& m,
                       const std::vector<DenseOperator>& projectors);

// Logical Bloch coordinates: logical Z axis = (|xxx>, |x~x~x~>),
// logical X axis = (|0_3s>, |1_3s>).
BlochVector bloch_from_state(const StateVector& s, const GroundSpacePair& pair);

struct LabeledState {
  std::string label;
  StateVector state;
};

// The six canonical inputs: +X, -X, +Y, -Y, +Z, -Z logical directions.
std::vector<LabeledState> braid_initial_states();

struct TrajectoryPoint {
  std::string label;
  BlochVector initial;
  BlochVector final_;
};

std::vector<TrajectoryPoint> braid_trajectory(
    const std::vector<LabeledState>& initial, double t = kDefaultIteTime);

struct NoiseOperators {
  ErrorOperator flip;   // spin form 1/4 (i Y1X2 + Y1Y2 + X1X2 - i X1Y2)
  ErrorOperator phase;  // spin form 1/2 (Z1 + 1)
};
NoiseOperators noise_operators();

struct ImmunityResult {
  cplx lambda;       // scalar minimizing |P0 d P0 - lambda P0|
  double deviation;  // that residual (Frobenius)
};
ImmunityResult noise_immunity_check(const OperatorSum& d);

struct ProtectionResult {
  Eigen::Matrix2cd logical;  // renormalized logical action
  double fidelity = 0.0;     // process fidelity vs the identity channel
  double success_basis0 = 0.0;  // post-selection probability, input |0_3s>
  double success_basis1 = 0.0;
};
ProtectionResult protection_channel(const OperatorSum& d,
                                    double t = kDefaultIteTime);

}  // namespace mzm
