// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "json.hpp"
#include "mzm/braiding.hpp"
#include "mzm/ite.hpp"
#include "mzm/majorana.hpp"
#include "mzm/optics.hpp"
#include "mzm/pauli.hpp"
#include "mzm/tomography.hpp"
#include "mzmsim.h"

using namespace mzm;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int criterion, const char* summary, bool pass,
            const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
              summary, detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

Schedule braid_schedule(double t = 5.0) {
  const SpinHamiltonians h = spin_hamiltonians();
  Schedule s;
  s.steps = {{h.h0, t}, {h.h1, t}, {h.h2, t}, {h.h0, t}};
  return s;
}

void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const ExchangeResult ex = exchange_operator(5.0);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  const double dist = std::min(ex.distance_to_printed, ex.distance_to_mirror);
  const bool pass = dist <= 1e-3 && ex.off_diagonal <= 1e-4 && ms < 1000.0;
  report(1, "exchange matrix diag(1, e^{+-i pi/2}) at t = 5", pass,
         "aligned distance " + fmt(dist) + ", off-diagonal " +
             fmt(ex.off_diagonal) + ", " + fmt(ms) + " ms");
}

void criterion_2() {
  const GroundSpacePair pair = ground_basis_h0();
  const SpinHamiltonians h = spin_hamiltonians();
  const DenseOperator p1 = ground_projector(to_dense(h.h1, 3));
  const DenseOperator p2 = ground_projector(to_dense(h.h2, 3));
  const double phi0 = geometric_phase(pair.basis0, {p1, p2});
  const double phi1 = geometric_phase(pair.basis1, {p1, p2});
  const double magnitude_err = std::abs(std::abs(phi1 - phi0) - kPi / 2);

  // gauge perturbation: rebuild P1 from a randomly re-phased eigenbasis
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  const SpectralDecomposition d1 = eig_hermitian(to_dense(h.h1, 3));
  double gauge_spread = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(8, 8);
    for (int k = 0; k < 8; ++k) {
      if (d1.eigenvalues(k) <= d1.eigenvalues(0) + kDegeneracyTol) {
        const Eigen::VectorXcd v =
            d1.eigenvectors.col(k) * std::exp(cplx(0.0, angle(rng)));
        p += v * v.adjoint();
      }
    }
    const double phi = geometric_phase(pair.basis0, {{p, true}, p2});
    gauge_spread = std::max(gauge_spread, std::abs(phi - phi0));
  }
  const bool pass = magnitude_err <= 1e-3 && gauge_spread <= 1e-12;
  report(2, "geometric phase difference pi/2, gauge invariant", pass,
         "|phi1-phi0| error " + fmt(magnitude_err) + ", gauge spread " +
             fmt(gauge_spread));
}

void criterion_3() {
  const std::vector<LabeledState> initial = braid_initial_states();
  const std::vector<TrajectoryPoint> traj = braid_trajectory(initial, 5.0);
  // try both rotation senses, require a single consistent one
  double best = 1e9;
  for (int sense : {+1, -1}) {
    double worst = 0.0;
    for (const TrajectoryPoint& p : traj) {
      const double w1 = p.initial.p1;
      const double w2 = -sense * p.initial.p3;
      const double w3 = sense * p.initial.p2;
      worst = std::max({worst, std::abs(p.final_.p1 - w1),
                        std::abs(p.final_.p2 - w2), std::abs(p.final_.p3 - w3)});
    }
    best = std::min(best, worst);
  }
  double fixed_dev = 0.0;
  for (const TrajectoryPoint& p : traj) {
    if (p.label == "+X" || p.label == "-X") {
      fixed_dev = std::max({fixed_dev, std::abs(p.final_.p1 - p.initial.p1),
                            std::abs(p.final_.p2), std::abs(p.final_.p3)});
    }
  }
  const bool pass = best <= 1e-3 && fixed_dev <= 1e-3;
  report(3, "six Bloch trajectories rotate about X by pi/2", pass,
         "worst coordinate error " + fmt(best) + ", +-X fixed-point error " +
             fmt(fixed_dev));
}

void criterion_4() {
  const ProcessMatrix ideal = chi_of_unitary(exchange_operator(5.0).matrix);
  const GroundSpacePair pair = ground_basis_h0();
  const Eigen::MatrixXcd op = dissipative_braid_operator(5.0);
  const Channel braid = [&](const Eigen::Vector2cd& c) {
    const StateVector s = c(0) * pair.basis0 + c(1) * pair.basis1;
    const StateVector out = op * s;
    Eigen::Vector2cd logical(pair.basis0.dot(out), pair.basis1.dot(out));
    return Eigen::Vector2cd(logical.normalized());
  };
  const double exact_fid = process_fidelity(process_tomography(braid), ideal);
  int good = 0;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    if (process_fidelity(process_tomography(braid, 10000, rng), ideal) >= 0.99) {
      ++good;
    }
  }
  const bool pass = exact_fid >= 0.999 && good >= 95;
  report(4, "process tomography fidelity (exact and sampled)", pass,
         "exact " + fmt(exact_fid) + ", sampled >=0.99 in " +
             std::to_string(good) + "/100 seeds");
}

void criterion_5() {
  const NoiseOperators ops = noise_operators();
  const ImmunityResult flip = noise_immunity_check(ops.flip.spin);
  const ImmunityResult phase = noise_immunity_check(ops.phase.spin);
  const ProtectionResult pf = protection_channel(ops.flip.spin, 5.0);
  const ProtectionResult pp = protection_channel(ops.phase.spin, 5.0);
  const bool pass = std::abs(flip.lambda - cplx(0.25, 0.0)) <= 1e-10 &&
                    flip.deviation <= 1e-10 &&
                    std::abs(phase.lambda - cplx(0.5, 0.0)) <= 1e-10 &&
                    phase.deviation <= 1e-10 && pf.fidelity >= 0.999 &&
                    pp.fidelity >= 0.999;
  report(5, "noise immunity lambda = 1/4, 1/2 and protection fidelity", pass,
         "deviations " + fmt(flip.deviation) + "/" + fmt(phase.deviation) +
             ", fidelities " + fmt(pf.fidelity) + "/" + fmt(pp.fidelity));
}

void criterion_6() {
  const KitaevHamiltonians kh = kitaev_hamiltonians();
  const SpinHamiltonians sh = spin_hamiltonians();
  const auto jw = [](const MajoranaOperatorSum& m) {
    return jordan_wigner(m, JWConvention::A, 3);
  };
  const SpectraMatchResult m0 =
      spectra_match(to_dense(jw(kh.h0), 3), to_dense(sh.h0, 3), 1e-10);
  const OperatorSum h1 = add(jw(kh.h1), pauli_term(0.5, "III"));
  const SpectraMatchResult m1 =
      spectra_match(to_dense(h1, 3), to_dense(sh.h1, 3), 1e-10);
  const SpectraMatchResult m2 =
      spectra_match(to_dense(jw(kh.h2), 3), to_dense(sh.h2, 3), 1e-10);
  const bool pass = m0.match && m1.match && m2.match;
  report(6, "fermionic vs spin spectral equivalence (H1 reconciled)", pass,
         "max deviations " + fmt(m0.max_deviation) + "/" +
             fmt(m1.max_deviation) + "/" + fmt(m2.max_deviation));
}

void criterion_7() {
  const SpinHamiltonians h = spin_hamiltonians();
  double worst = 0.0;
  for (const OperatorSum* ham : {&h.h0, &h.h1, &h.h2}) {
    const Eigen::MatrixXcd whole = expm_neg(to_dense(*ham, 3), 5.0);
    Eigen::MatrixXcd product = Eigen::MatrixXcd::Identity(8, 8);
    for (const OperatorSum& f : factor_commuting(*ham)) {
      product = expm_neg(to_dense(f, 3), 5.0) * product;
    }
    worst = std::max(worst, (whole - product).cwiseAbs().maxCoeff());
  }
  report(7, "commuting factorization operator identity at t = 5", worst <= 1e-10,
         "max entry deviation " + fmt(worst));
}

void criterion_8() {
  const SpinHamiltonians h = spin_hamiltonians();
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const struct {
    const OperatorSum* ham;
    double gap;
  } cases[] = {{&h.h0, 2.0}, {&h.h1, 1.0}};
  double worst_rel = 0.0;
  for (const auto& c : cases) {
    StateVector s(8);
    for (int k = 0; k < 8; ++k) s(k) = cplx(gauss(rng), gauss(rng));
    s.normalize();
    const StateVector target =
        (ground_projector(*c.ham).entries * s).normalized();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int t = 1; t <= 6; ++t) {
      const double err = (ite_apply(*c.ham, t, s).normalized() - target).norm();
      sx += t;
      sy += std::log(err);
      sxx += t * t;
      sxy += t * std::log(err);
    }
    const double slope = (6 * sxy - sx * sy) / (6 * sxx - sx * sx);
    worst_rel = std::max(worst_rel, std::abs(slope + c.gap) / c.gap);
  }
  report(8, "ITE leakage log-slope matches the spectral gap", worst_rel <= 0.05,
         "worst relative deviation " + fmt(worst_rel));
}

void criterion_9() {
  const Schedule sched = braid_schedule();
  const LoweringReport rep = verify_lowering(sched, 100, 12345);

  Schedule first;
  first.steps = {sched.steps.front()};
  // |000> in the z basis is the uniform superposition over the 8 x modes
  StateVector uniform = StateVector::Zero(8);
  uniform(0) = 1.0;
  const double de0 =
      simulate_pipeline(lower(first), uniform).success_probability;

  const bool pass = rep.passes == 100 && rep.max_state_deviation <= 1e-10 &&
                    rep.max_probability_deviation <= 1e-10 &&
                    std::abs(de0 - 0.25) <= 1e-12;
  report(9, "optics lowering equivalence and DE0 success 1/4", pass,
         std::to_string(rep.passes) + "/100 passes, state dev " +
             fmt(rep.max_state_deviation) + ", prob dev " +
             fmt(rep.max_probability_deviation) + ", DE0 " + fmt(de0));
}

void criterion_10() {
  const char* configs[] = {
      "{\"experiment\":\"braid\",\"t\":5,\"seed\":42}",
      "{\"experiment\":\"tomography\",\"shots\":10000,\"seed\":42}",
      "{\"experiment\":\"lower\",\"trials\":20,\"seed\":42}"};
  bool pass = true;
  for (const char* config : configs) {
    std::string payloads[2];
    for (int k = 0; k < 2 && pass; ++k) {
      mzm_result* result = nullptr;
      if (mzm_run_json(config, &result) != MZM_OK) {
        pass = false;
        break;
      }
      payloads[k] =
          nlohmann::json::parse(mzm_result_record(result)).at("payload").dump();
      mzm_result_release(result);
    }
    pass = pass && !payloads[0].empty() && payloads[0] == payloads[1];
  }
  report(10, "byte-identical payloads for identical config + seed", pass,
         pass ? "3 experiment configs replayed" : "payload mismatch");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures != 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
