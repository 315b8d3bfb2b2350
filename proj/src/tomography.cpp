#include "mzm/tomography.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "mzm/errors.hpp"

namespace mzm {

namespace {

double born_plus(const Eigen::Vector2cd& state, Setting setting) {
  const Eigen::Vector2cd s = state.normalized();
  switch (setting) {
    case Setting::ZLike:
      return std::norm(s(0));
    case Setting::XLike:
      return std::norm((s(0) + s(1)) / std::sqrt(2.0));
    case Setting::YLike:
      // +1 eigenvector of sigma-y is (1, i)/sqrt(2).
      return std::norm((s(0) - cplx(0, 1) * s(1)) / std::sqrt(2.0));
  }
  return 0.0;
}

Eigen::Matrix2cd density_from_bloch(const BlochVector& b) {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Identity();
  rho += b.p1 * pauli_matrix(Pauli::X).topLeftCorner<2, 2>();
  rho += b.p2 * pauli_matrix(Pauli::Y).topLeftCorner<2, 2>();
  rho += b.p3 * pauli_matrix(Pauli::Z).topLeftCorner<2, 2>();
  return 0.5 * rho;
}

Eigen::Matrix2cd pauli2(int m) {
  return pauli_matrix(static_cast<Pauli>(m)).topLeftCorner<2, 2>();
}

BlochVector tomograph_state(const Eigen::Vector2cd& out,
                            std::optional<long> shots, std::mt19937_64& rng) {
  const MeasurementRecord rz = measure_logical(out, Setting::ZLike, shots, rng);
  const MeasurementRecord rx = measure_logical(out, Setting::XLike, shots, rng);
  const MeasurementRecord ry = measure_logical(out, Setting::YLike, shots, rng);
  return state_tomography(rz, rx, ry);
}

// Trace-preserving PSD projection: zero the negative eigenvalues in
// ascending order, carrying their deficit into the remaining ones.
Eigen::Matrix4cd psd_project(const Eigen::Matrix4cd& chi, bool& repaired) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(chi);
  Eigen::Vector4d w = es.eigenvalues();
  repaired = w(0) < -1e-12;
  if (!repaired) return chi;
  double carry = 0.0;
  for (int i = 0; i < 4; ++i) {
    const int remaining = 4 - i;
    if (w(i) + carry / remaining < 0.0) {
      carry += w(i);
      w(i) = 0.0;
    } else {
      for (int j = i; j < 4; ++j) w(j) += carry / remaining;
      carry = 0.0;
      break;
    }
  }
  Eigen::Matrix4cd out =
      es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  const double tr = out.trace().real();
  if (tr > 0) out /= tr;
  return out;
}

}  // namespace

MeasurementRecord measure_logical(const Eigen::Vector2cd& state, Setting setting,
                                  std::optional<long> shots,
                                  std::mt19937_64& rng) {
  const double p = std::clamp(born_plus(state, setting), 0.0, 1.0);
  MeasurementRecord r;
  r.setting = setting;
  r.shots = shots;
  if (!shots) {
    r.prob_plus = p;
    r.prob_minus = 1.0 - p;
    return r;
  }
  if (*shots <= 0) throw ConfigError("measure_logical: shots must be positive");
  std::binomial_distribution<long> dist(*shots, p);
  r.counts_plus = dist(rng);
  r.counts_minus = *shots - r.counts_plus;
  r.prob_plus = static_cast<double>(r.counts_plus) / static_cast<double>(*shots);
  r.prob_minus = 1.0 - r.prob_plus;
  return r;
}

MeasurementRecord measure_logical(const Eigen::Vector2cd& state, Setting setting) {
  std::mt19937_64 unused(0);
  return measure_logical(state, setting, std::nullopt, unused);
}

BlochVector state_tomography(const MeasurementRecord& z,
                             const MeasurementRecord& x,
                             const MeasurementRecord& y) {
  if (z.setting != Setting::ZLike || x.setting != Setting::XLike ||
      y.setting != Setting::YLike) {
    throw ConfigError("state_tomography: records must cover Z, X, Y settings");
  }
  BlochVector b;
  b.p1 = x.prob_plus - x.prob_minus;
  b.p2 = y.prob_plus - y.prob_minus;
  b.p3 = z.prob_plus - z.prob_minus;
  const double len2 = b.p1 * b.p1 + b.p2 * b.p2 + b.p3 * b.p3;
  if (len2 > 1.0) {
    const double inv = 1.0 / std::sqrt(len2);
    b.p1 *= inv;
    b.p2 *= inv;
    b.p3 *= inv;
  }
  return b;
}

ProcessMatrix process_tomography(const Channel& channel,
                                 std::optional<long> shots,
                                 std::mt19937_64& rng) {
  const double s2 = 1.0 / std::sqrt(2.0);
  const Eigen::Vector2cd probes[4] = {
      Eigen::Vector2cd(1, 0),                 // Z+ (H)
      Eigen::Vector2cd(0, 1),                 // Z- (V)
      Eigen::Vector2cd(s2, s2),               // X+ (D)
      Eigen::Vector2cd(s2, cplx(0, 1) * s2),  // Y+ (R)
  };
  Eigen::Matrix2cd outs[4];
  for (int k = 0; k < 4; ++k) {
    outs[k] = density_from_bloch(tomograph_state(channel(probes[k]), shots, rng));
  }
  // Channel action on the Pauli basis by linearity of the probe set.
  Eigen::Matrix2cd eps[4];
  eps[0] = outs[0] + outs[1];                    // E(I)
  eps[1] = 2.0 * outs[2] - eps[0];               // E(X)
  eps[2] = 2.0 * outs[3] - eps[0];               // E(Y)
  eps[3] = outs[0] - outs[1];                    // E(Z)

  // Choi matrix C[(i,k),(j,l)] = E(|i><j|)[k,l].
  Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Eigen::Matrix2cd eij = Eigen::Matrix2cd::Zero();
      eij(i, j) = 1.0;
      Eigen::Matrix2cd image = Eigen::Matrix2cd::Zero();
      for (int m = 0; m < 4; ++m) {
        image += (pauli2(m).adjoint() * eij).trace() / 2.0 * eps[m];
      }
      choi.block<2, 2>(2 * i, 2 * j) = image;
    }
  }
  // chi_mn = <v_m| C |v_n> / 4 with v_m = sum_i |i> (x) sigma_m |i>.
  Eigen::Vector4cd v[4];
  for (int m = 0; m < 4; ++m) {
    for (int i = 0; i < 2; ++i) v[m].segment<2>(2 * i) = pauli2(m).col(i);
  }
  ProcessMatrix result;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      result.chi(m, n) = v[m].dot(choi * v[n]) / 4.0;
    }
  }
  result.chi = 0.5 * (result.chi + result.chi.adjoint()).eval();
  const double tr = result.chi.trace().real();
  if (std::abs(tr) < 1e-12) {
    throw NumericError("process_tomography: traceless reconstruction");
  }
  result.chi /= tr;
  if (shots) result.chi = psd_project(result.chi, result.psd_repaired);
  return result;
}

ProcessMatrix process_tomography(const Channel& channel) {
  std::mt19937_64 unused(0);
  return process_tomography(channel, std::nullopt, unused);
}

ProcessMatrix chi_of_unitary(const Eigen::Matrix2cd& u) {
  Eigen::Vector4cd c;
  for (int m = 0; m < 4; ++m) c(m) = (pauli2(m).adjoint() * u).trace() / 2.0;
  ProcessMatrix out;
  out.chi = c * c.adjoint();
  out.chi /= out.chi.trace().real();
  return out;
}

Eigen::Matrix2cd apply_chi(const ProcessMatrix& chi, const Eigen::Matrix2cd& rho) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      out += chi.chi(m, n) * pauli2(m) * rho * pauli2(n);
    }
  }
  return out;
}

double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b) {
  const double f = (a.chi * b.chi).trace().real();
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace mzm
