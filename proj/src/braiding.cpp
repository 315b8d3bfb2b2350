#include "mzm/braiding.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "mzm/errors.hpp"

namespace mzm {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::Vector2cd x_plus() { return Eigen::Vector2cd(1, 1) / std::sqrt(2.0); }
Eigen::Vector2cd x_minus() { return Eigen::Vector2cd(1, -1) / std::sqrt(2.0); }

Eigen::Matrix2cd polar_unitary(const Eigen::Matrix2cd& m) {
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Global phase aligned so the largest-magnitude diagonal entry of the first
// column chain is real positive; for this protocol U00 is always dominant.
Eigen::Matrix2cd align_phase(const Eigen::Matrix2cd& u) {
  cplx anchor = u(0, 0);
  if (std::abs(anchor) < 1e-8) anchor = u(1, 0);
  return u * std::exp(cplx(0.0, -std::arg(anchor)));
}

double max_entry_distance(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

StateVector x_product_state(const std::string& pattern) {
  std::vector<bool> minus;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == 'x') {
      const bool bar = (i + 1 < pattern.size() && pattern[i + 1] == '~');
      minus.push_back(bar);
      if (bar) ++i;
    } else {
      throw ConfigError("x_product_state: bad pattern " + pattern);
    }
  }
  StateVector out = StateVector::Ones(1);
  for (bool bar : minus) {
    const Eigen::Vector2cd site = bar ? x_minus() : x_plus();
    StateVector next(out.size() * 2);
    for (Eigen::Index k = 0; k < out.size(); ++k) {
      next(2 * k) = out(k) * site(0);
      next(2 * k + 1) = out(k) * site(1);
    }
    out = std::move(next);
  }
  return out;
}

GroundSpacePair ground_basis_h0() {
  const StateVector xxx = x_product_state("xxx");
  const StateVector barred = x_product_state("x~x~x~");
  GroundSpacePair pair;
  pair.basis0 = (xxx + barred) / std::sqrt(2.0);
  pair.basis1 = (xxx - barred) / std::sqrt(2.0);
  return pair;
}

Eigen::MatrixXcd dissipative_braid_operator(double t) {
  const SpinHamiltonians h = spin_hamiltonians();
  const DenseOperator d0 = to_dense(h.h0, 3);
  const DenseOperator d1 = to_dense(h.h1, 3);
  const DenseOperator d2 = to_dense(h.h2, 3);
  const Eigen::MatrixXcd p0 = ground_projector(d0).entries;
  const Eigen::MatrixXcd p1 = ground_projector(d1).entries;
  const Eigen::MatrixXcd p2 = ground_projector(d2).entries;
  return p0 * p2 * expm_neg(d2, t) * p1 * expm_neg(d1, t);
}

ExchangeResult exchange_operator(double t) {
  if (t <= 0) throw ConfigError("exchange_operator: t must be positive");
  const SpinHamiltonians h = spin_hamiltonians();
  const DenseOperator d1 = to_dense(h.h1, 3);
  const DenseOperator d2 = to_dense(h.h2, 3);
  const GroundSpacePair pair = ground_basis_h0();

  const Eigen::MatrixXcd diss = dissipative_braid_operator(t);
  const Eigen::MatrixXcd raw = expm_neg(d2, t) * expm_neg(d1, t);

  Eigen::Matrix2cd m_diss, m_raw;
  const StateVector* basis[2] = {&pair.basis0, &pair.basis1};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      m_diss(a, b) = basis[a]->dot(diss * (*basis[b]));
      m_raw(a, b) = basis[a]->dot(raw * (*basis[b]));
    }
  }
  if (m_diss.norm() < 1e-150) {
    throw NumericError("exchange_operator: ground space annihilated");
  }

  ExchangeResult r;
  r.matrix = align_phase(polar_unitary(m_diss));
  r.relative_phase =
      std::remainder(std::arg(r.matrix(1, 1)) - std::arg(r.matrix(0, 0)),
                     2.0 * kPi);
  r.off_diagonal = std::abs(r.matrix(0, 1)) + std::abs(r.matrix(1, 0));

  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m_raw);
  r.singular_spread =
      (svd.singularValues()(0) - svd.singularValues()(1)) /
      svd.singularValues()(0);
  r.raw_matrix = align_phase(polar_unitary(m_raw));
  r.raw_relative_phase =
      std::remainder(std::arg(r.raw_matrix(1, 1)) - std::arg(r.raw_matrix(0, 0)),
                     2.0 * kPi);

  Eigen::Matrix2cd printed = Eigen::Matrix2cd::Identity();
  printed(1, 1) = std::exp(cplx(0.0, -kPi / 2.0));
  Eigen::Matrix2cd mirror = printed.adjoint();
  r.distance_to_printed = max_entry_distance(r.matrix, printed);
  r.distance_to_mirror = max_entry_distance(r.matrix, mirror);
  return r;
}

double geometric_phase(const StateVector& m,
                       const std::vector<DenseOperator>& projectors) {
  StateVector v = m;
  for (auto it = projectors.rbegin(); it != projectors.rend(); ++it) {
    v = it->entries * v;
  }
  const cplx amp = m.dot(v);
  if (std::abs(amp) <= 1e-12) {
    throw NumericError("geometric_phase: vanishing amplitude, phase undefined");
  }
  return -std::arg(amp);
}

BlochVector bloch_from_state(const StateVector& s, const GroundSpacePair& pair) {
  const StateVector xxx = (pair.basis0 + pair.basis1) / std::sqrt(2.0);
  const StateVector barred = (pair.basis0 - pair.basis1) / std::sqrt(2.0);
  cplx alpha = xxx.dot(s);
  cplx beta = barred.dot(s);
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (norm2 < 1e-24) {
    throw NumericError("bloch_from_state: zero projection onto the pair span");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  alpha *= inv;
  beta *= inv;
  BlochVector b;
  const cplx cross = std::conj(alpha) * beta;
  b.p1 = 2.0 * cross.real();
  b.p2 = 2.0 * cross.imag();
  b.p3 = std::norm(alpha) - std::norm(beta);
  return b;
}

std::vector<LabeledState> braid_initial_states() {
  const StateVector xxx = x_product_state("xxx");
  const StateVector barred = x_product_state("x~x~x~");
  const cplx i{0.0, 1.0};
  const double s2 = std::sqrt(2.0);
  std::vector<LabeledState> states = {
      {"+X", (xxx + barred) / s2},      {"-X", (xxx - barred) / s2},
      {"+Y", (xxx + i * barred) / s2},  {"-Y", (xxx - i * barred) / s2},
      {"+Z", xxx},                      {"-Z", barred},
  };
  // Mirror the experimental flow: the DE0 projection precedes the braid
  // (a no-op in exact arithmetic for these inputs).
  const Eigen::MatrixXcd p0 =
      ground_projector(spin_hamiltonians().h0).entries;
  for (auto& st : states) st.state = p0 * st.state;
  return states;
}

std::vector<TrajectoryPoint> braid_trajectory(
    const std::vector<LabeledState>& initial, double t) {
  const GroundSpacePair pair = ground_basis_h0();
  const Eigen::MatrixXcd braid = dissipative_braid_operator(t);
  std::vector<TrajectoryPoint> out;
  out.reserve(initial.size());
  for (const auto& st : initial) {
    TrajectoryPoint p;
    p.label = st.label;
    p.initial = bloch_from_state(st.state, pair);
    p.final_ = bloch_from_state(braid * st.state, pair);
    out.push_back(std::move(p));
  }
  return out;
}

NoiseOperators noise_operators() {
  const cplx i{0.0, 1.0};
  NoiseOperators ops;
  ops.flip.kind = ErrorOperator::Kind::Flip;
  ops.flip.site = 1;
  ops.flip.fermionic = majorana_multiply(creation_op(1, 3), annihilation_op(2, 3), 6);
  ops.flip.spin = add(add(pauli_term(0.25 * i, "YXI"), pauli_term(0.25, "YYI")),
                      add(pauli_term(0.25, "XXI"), pauli_term(-0.25 * i, "XYI")));
  ops.phase.kind = ErrorOperator::Kind::Phase;
  ops.phase.site = 1;
  ops.phase.fermionic = majorana_multiply(creation_op(1, 3), annihilation_op(1, 3), 6);
  ops.phase.spin = add(pauli_term(0.5, "ZII"), pauli_term(0.5, "III"));
  return ops;
}

ImmunityResult noise_immunity_check(const OperatorSum& d) {
  const Eigen::MatrixXcd p0 =
      ground_projector(spin_hamiltonians().h0).entries;
  const Eigen::MatrixXcd dd = to_dense(d, 3).entries;
  const Eigen::MatrixXcd a = p0 * dd * p0;
  const double rank = p0.trace().real();
  ImmunityResult r;
  r.lambda = a.trace() / rank;
  r.deviation = (a - r.lambda * p0).norm();
  return r;
}

ProtectionResult protection_channel(const OperatorSum& d, double t) {
  const DenseOperator h0 = to_dense(spin_hamiltonians().h0, 3);
  // e^{-(H0 - E_g) t}: the ITE projection with the ground scale divided out.
  const Eigen::MatrixXcd proj =
      std::exp(t * ground_energy(h0)) * expm_neg(h0, t);
  const Eigen::MatrixXcd dd = to_dense(d, 3).entries;
  const GroundSpacePair pair = ground_basis_h0();

  Eigen::Matrix2cd c;
  const StateVector* basis[2] = {&pair.basis0, &pair.basis1};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      c(a, b) = basis[a]->dot(proj * dd * (*basis[b]));
    }
  }
  const double fnorm2 = c.squaredNorm();
  if (fnorm2 < 1e-150) {
    throw NumericError("protection_channel: error operator annihilates the "
                       "ground space");
  }
  ProtectionResult r;
  r.logical = c / std::sqrt(fnorm2 / 2.0);
  r.fidelity = std::norm(c.trace()) / (2.0 * fnorm2);
  auto success = [&](const StateVector& psi) {
    const StateVector noisy = dd * psi;
    const double denom = noisy.squaredNorm();
    if (denom < 1e-150) {
      throw NumericError("protection_channel: error operator annihilates input");
    }
    return (proj * noisy).squaredNorm() / denom;
  };
  r.success_basis0 = success(pair.basis0);
  r.success_basis1 = success(pair.basis1);
  return r;
}

}  // namespace mzm
