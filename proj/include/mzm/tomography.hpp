#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <random>

#include "mzm/braiding.hpp"
#include "mzm/pauli.hpp"

namespace mzm {

// Analyzer settings, the H/V, D, R analogs.
enum class Setting { ZLike, XLike, YLike };

struct MeasurementRecord {
  Setting setting = Setting::ZLike;
  double prob_plus = 0.0;   // exact or estimated frequency
  double prob_minus = 0.0;
  std::optional<long> shots;  // nullopt = exact mode
  long counts_plus = 0;
  long counts_minus = 0;
};

// Exact mode returns Born probabilities; sampled mode draws binomial counts.
MeasurementRecord measure_logical(const Eigen::Vector2cd& state, Setting setting,
                                  std::optional<long> shots,
                                  std::mt19937_64& rng);
MeasurementRecord measure_logical(const Eigen::Vector2cd& state, Setting setting);

// Linear inversion p_i = <sigma_i>; radially rescaled onto the unit sphere
// when sampling noise pushes |p| past 1.
BlochVector state_tomography(const MeasurementRecord& z,
                             const MeasurementRecord& x,
                             const MeasurementRecord& y);

// 4x4 chi matrix in the {I, X, Y, Z} operator basis, trace-normalized.
struct ProcessMatrix {
  Eigen::Matrix4cd chi = Eigen::Matrix4cd::Zero();
  bool psd_repaired = false;
};

using Channel = std::function<Eigen::Vector2cd(const Eigen::Vector2cd&)>;

// Probes {Z+, Z-, X+, Y+} (the H, V, D, R inputs), reconstructs chi by
// single-qubit linear inversion, then projects onto the PSD cone
// (trace-preserving eigenvalue clipping) if sampling noise produced
// negative eigenvalues.
ProcessMatrix process_tomography(const Channel& channel,
                                 std::optional<long> shots,
                                 std::mt19937_64& rng);
ProcessMatrix process_tomography(const Channel& channel);

ProcessMatrix chi_of_unitary(const Eigen::Matrix2cd& u);

// Re-synthesized channel action rho -> sum_mn chi_mn sigma_m rho sigma_n.
Eigen::Matrix2cd apply_chi(const ProcessMatrix& chi, const Eigen::Matrix2cd& rho);

// Tr(chi_a chi_b); the overlap fidelity for a pure (rank-one) reference.
double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b);

}  // namespace mzm
