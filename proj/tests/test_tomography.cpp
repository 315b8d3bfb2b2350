#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mzm/braiding.hpp"
#include "mzm/errors.hpp"
#include "mzm/tomography.hpp"

using namespace mzm;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Vector2cd random_pure(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector2cd v(cplx(gauss(rng), gauss(rng)), cplx(gauss(rng), gauss(rng)));
  return v.normalized();
}

Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix2cd m;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) m(r, c) = cplx(gauss(rng), gauss(rng));
  }
  const Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
  return qr.householderQ();
}

BlochVector bloch_of(const Eigen::Vector2cd& s) {
  return state_tomography(measure_logical(s, Setting::ZLike),
                          measure_logical(s, Setting::XLike),
                          measure_logical(s, Setting::YLike));
}

}  // namespace

TEST_CASE("measure_logical exact probabilities") {
  const Eigen::Vector2cd plus_z(1.0, 0.0);
  const MeasurementRecord z = measure_logical(plus_z, Setting::ZLike);
  CHECK(z.prob_plus == doctest::Approx(1.0));
  CHECK(z.prob_minus == doctest::Approx(0.0));

  const MeasurementRecord x = measure_logical(plus_z, Setting::XLike);
  CHECK(x.prob_plus == doctest::Approx(0.5));
  CHECK(x.prob_minus == doctest::Approx(0.5));
}

TEST_CASE("measure_logical sampled counts stay within 5 sigma") {
  std::mt19937_64 rng(47);
  const Eigen::Vector2cd plus_x =
      Eigen::Vector2cd(1.0, 1.0) / std::sqrt(2.0);
  const long shots = 10000;
  const MeasurementRecord rec =
      measure_logical(plus_x, Setting::XLike, shots, rng);
  CHECK(rec.counts_plus + rec.counts_minus == shots);
  // p = 1: all counts land on the plus outcome (sigma = 0 edge case)
  CHECK(rec.counts_plus == shots);

  // a genuinely random outcome: +Z measured in the X basis, p = 1/2
  const MeasurementRecord coin =
      measure_logical(Eigen::Vector2cd(1.0, 0.0), Setting::XLike, shots, rng);
  const double sigma = std::sqrt(0.25 * shots);
  CHECK(std::abs(coin.counts_plus - 0.5 * shots) < 5.0 * sigma);

  std::mt19937_64 rng2(48);
  CHECK_THROWS_AS(measure_logical(plus_x, Setting::XLike, 0, rng2), ConfigError);
}

TEST_CASE("state tomography round trip on random pure states") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Vector2cd s = random_pure(rng);
    const BlochVector p = bloch_of(s);
    // compare against the density-matrix expansion
    const Eigen::Matrix2cd rho = s * s.adjoint();
    const double want1 = 2.0 * rho(0, 1).real();
    const double want2 = -2.0 * rho(0, 1).imag();
    const double want3 = (rho(0, 0) - rho(1, 1)).real();
    CHECK(std::abs(p.p1 - want1) < 1e-12);
    CHECK(std::abs(p.p2 - want2) < 1e-12);
    CHECK(std::abs(p.p3 - want3) < 1e-12);
  }
}

TEST_CASE("sampled tomography converges at the 1/sqrt(shots) rate") {
  const Eigen::Vector2cd plus_y(cplx(1.0, 0.0) / std::sqrt(2.0),
                                cplx(0.0, 1.0) / std::sqrt(2.0));
  const long budgets[4] = {100, 1000, 10000, 100000};
  double mean_err[4] = {0, 0, 0, 0};
  const int seeds = 100;
  for (int seed = 0; seed < seeds; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    for (int b = 0; b < 4; ++b) {
      const BlochVector p = state_tomography(
          measure_logical(plus_y, Setting::ZLike, budgets[b], rng),
          measure_logical(plus_y, Setting::XLike, budgets[b], rng),
          measure_logical(plus_y, Setting::YLike, budgets[b], rng));
      const double err = std::sqrt(p.p1 * p.p1 + (p.p2 - 1.0) * (p.p2 - 1.0) +
                                   p.p3 * p.p3);
      mean_err[b] += err / seeds;
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int b = 0; b < 4; ++b) {
    const double x = std::log10(static_cast<double>(budgets[b]));
    const double y = std::log10(mean_err[b]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
  CHECK(std::abs(slope + 0.5) < 0.1);
}

TEST_CASE("process tomography of reference channels") {
  const Channel identity = [](const Eigen::Vector2cd& v) { return v; };
  const ProcessMatrix chi_id = process_tomography(identity);
  CHECK(chi_id.chi(0, 0).real() == doctest::Approx(1.0));
  CHECK(chi_id.chi.cwiseAbs().sum() == doctest::Approx(1.0));
  CHECK_FALSE(chi_id.psd_repaired);

  const Channel flip = [](const Eigen::Vector2cd& v) {
    return Eigen::Vector2cd(v(1), v(0));
  };
  const ProcessMatrix chi_x = process_tomography(flip);
  CHECK(chi_x.chi(1, 1).real() == doctest::Approx(1.0));
  CHECK(chi_x.chi.cwiseAbs().sum() == doctest::Approx(1.0));

  CHECK(process_fidelity(chi_id, chi_id) == doctest::Approx(1.0));
  CHECK(process_fidelity(chi_id, chi_x) == doctest::Approx(0.0));

  // ideal exchange: diag(1, i) = aI + bZ with |a| = |b| = 1/sqrt(2)
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = cplx(0.0, 1.0);
  const ProcessMatrix chi_u = chi_of_unitary(u);
  CHECK(std::abs(chi_u.chi(0, 0) - cplx(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(chi_u.chi(3, 3) - cplx(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(chi_u.chi(0, 3) - cplx(0.0, 0.5)) < 1e-12);
  CHECK(std::abs(chi_u.chi(1, 1)) < 1e-12);
}

TEST_CASE("chi reconstruction round trip on random unitaries") {
  std::mt19937_64 rng(59);
  const Eigen::Vector2cd probes[4] = {
      Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0),
      Eigen::Vector2cd(1.0, 1.0) / std::sqrt(2.0),
      Eigen::Vector2cd(cplx(1.0, 0.0), cplx(0.0, 1.0)) / std::sqrt(2.0)};
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Matrix2cd u = random_unitary(rng);
    const Channel channel = [&u](const Eigen::Vector2cd& v) {
      return Eigen::Vector2cd(u * v);
    };
    const ProcessMatrix chi = process_tomography(channel);
    CHECK_FALSE(chi.psd_repaired);
    CHECK((chi.chi - chi.chi.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs(chi.chi.trace() - cplx(1.0, 0.0)) < 1e-9);
    for (const Eigen::Vector2cd& probe : probes) {
      const Eigen::Matrix2cd rho_in = probe * probe.adjoint();
      const Eigen::Matrix2cd rho_out = apply_chi(chi, rho_in);
      const Eigen::Vector2cd mapped = u * probe;
      const Eigen::Matrix2cd want = mapped * mapped.adjoint();
      CHECK((rho_out - want).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("simulated braid channel reaches the ideal process fidelity") {
  const ProcessMatrix ideal = chi_of_unitary(exchange_operator(5.0).matrix);
  const GroundSpacePair pair = ground_basis_h0();
  const Eigen::MatrixXcd op = dissipative_braid_operator(5.0);
  const Channel braid = [&](const Eigen::Vector2cd& c) {
    const StateVector s = c(0) * pair.basis0 + c(1) * pair.basis1;
    const StateVector out = op * s;
    Eigen::Vector2cd logical(pair.basis0.dot(out), pair.basis1.dot(out));
    return Eigen::Vector2cd(logical.normalized());
  };
  const ProcessMatrix exact = process_tomography(braid);
  CHECK(process_fidelity(exact, ideal) >= 0.999);

  // sampled mode with 1e4 shots: >= 0.99 in at least 95 of 100 seeds
  int good = 0;
  bool any_repair = false;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const ProcessMatrix sampled = process_tomography(braid, 10000, rng);
    any_repair = any_repair || sampled.psd_repaired;
    if (process_fidelity(sampled, ideal) >= 0.99) ++good;
  }
  CHECK(good >= 95);
  CHECK(any_repair);  // PSD repair exercises at this shot budget
}
