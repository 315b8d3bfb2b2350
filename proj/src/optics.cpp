#include "mzm/optics.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "mzm/braiding.hpp"
#include "mzm/errors.hpp"
#include "mzm/majorana.hpp"

namespace mzm {

namespace {

bool op_equal(const OperatorSum& a, const OperatorSum& b) {
  return subtract(a, b).empty();
}

// Which of the three preset Hamiltonians this is, if any (0, 1, 2, or -1).
int preset_index(const OperatorSum& h) {
  const SpinHamiltonians presets = spin_hamiltonians();
  if (op_equal(h, presets.h0)) return 0;
  if (op_equal(h, presets.h1)) return 1;
  if (op_equal(h, presets.h2)) return 2;
  return -1;
}

// Wire-format enumeration of the H0 eigenbasis (the documented mode order).
const char* kH0Patterns[8] = {"xxx",    "xx~x",  "xxx~",  "xx~x~",
                              "x~x~x~", "x~xx~", "x~x~x", "x~xx"};

Eigen::MatrixXcd h0_frame() {
  Eigen::MatrixXcd f(8, 8);
  for (int k = 0; k < 8; ++k) f.col(k) = x_product_state(kH0Patterns[k]);
  return f;
}

// H1 eigenbasis: site 1 in the z basis, sites 2-3 in the x basis, with the
// site-2/3 suborder inherited from the H0 mode order.
Eigen::MatrixXcd h1_frame() {
  Eigen::MatrixXcd f(8, 8);
  const Eigen::Vector2cd z_plus(1, 0), z_minus(0, 1);
  const char* tail[8] = {"xx", "x~x", "xx~", "x~x~", "x~x~", "xx~", "x~x", "xx"};
  for (int k = 0; k < 8; ++k) {
    const Eigen::Vector2cd site1 = (k < 4) ? z_plus : z_minus;
    const StateVector rest = x_product_state(tail[k]);
    StateVector col(8);
    col.segment(0, 4) = site1(0) * rest;
    col.segment(4, 4) = site1(1) * rest;
    f.col(k) = col;
  }
  return f;
}

Eigen::MatrixXcd frame_for(const OperatorSum& h, const DenseOperator& dense) {
  switch (preset_index(h)) {
    case 0: return h0_frame();
    case 1: return h1_frame();
    default: return eig_hermitian(dense).eigenvectors;
  }
}

std::vector<int> kept_modes(const Eigen::MatrixXcd& frame,
                            const DenseOperator& dense) {
  const Eigen::VectorXd energies =
      (frame.adjoint() * dense.entries * frame).diagonal().real();
  const double off =
      (frame.adjoint() * dense.entries * frame).cwiseAbs().sum() -
      energies.cwiseAbs().sum();
  if (off > 1e-8) {
    throw ConfigError("lower: frame does not diagonalize the step Hamiltonian");
  }
  const double emin = energies.minCoeff();
  std::vector<int> kept;
  for (int k = 0; k < energies.size(); ++k) {
    if (energies(k) <= emin + kDegeneracyTol) kept.push_back(k);
  }
  return kept;
}

// Givens factorization: U = M_1 ... M_k diag(phases).
void factor_mixers(const Eigen::MatrixXcd& u, std::vector<Mixer>& mixers,
                   Eigen::VectorXcd& phases) {
  Eigen::MatrixXcd work = u;
  const int n = static_cast<int>(u.rows());
  mixers.clear();
  for (int j = 0; j < n - 1; ++j) {
    for (int i = n - 1; i > j; --i) {
      const cplx a = work(i - 1, j);
      const cplx b = work(i, j);
      const double r = std::sqrt(std::norm(a) + std::norm(b));
      if (std::abs(b) < 1e-14) continue;
      Eigen::Matrix2cd g;
      g << std::conj(a) / r, std::conj(b) / r, -b / r, a / r;
      Eigen::MatrixXcd two(2, n);
      two.row(0) = work.row(i - 1);
      two.row(1) = work.row(i);
      two = g * two;
      work.row(i - 1) = two.row(0);
      work.row(i) = two.row(1);
      Mixer m;
      m.m1 = i - 1;
      m.m2 = i;
      m.u = g.adjoint();
      mixers.push_back(m);
    }
  }
  phases = work.diagonal();
}

Stage make_rotation_stage(StageKind kind, const std::string& name,
                          const Eigen::MatrixXcd& u) {
  Stage s;
  s.kind = kind;
  s.name = name;
  s.modes_in = static_cast<int>(u.cols());
  s.modes_out = static_cast<int>(u.rows());
  s.unitary = u;
  factor_mixers(u, s.mixers, s.phases);
  return s;
}

const char* kind_name(StageKind k) {
  switch (k) {
    case StageKind::Prepare: return "Prepare";
    case StageKind::BasisRotation: return "BasisRotation";
    case StageKind::Dissipate: return "Dissipate";
    case StageKind::Measure: return "Measure";
  }
  return "?";
}

}  // namespace

Eigen::MatrixXcd reconstruct_unitary(const Stage& stage) {
  const int n = stage.modes_in;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  out.diagonal() = stage.phases;
  for (auto it = stage.mixers.rbegin(); it != stage.mixers.rend(); ++it) {
    Eigen::MatrixXcd two(2, n);
    two.row(0) = out.row(it->m1);
    two.row(1) = out.row(it->m2);
    two = it->u * two;
    out.row(it->m1) = two.row(0);
    out.row(it->m2) = two.row(1);
  }
  return out;
}

void validate_pipeline(const OpticalPipeline& p) {
  if (p.stages.empty()) throw ConfigError("pipeline: no stages");
  if (p.stages.front().kind != StageKind::Prepare) {
    throw ConfigError("pipeline: first stage must be Prepare");
  }
  if (p.stages.back().kind != StageKind::Measure) {
    throw ConfigError("pipeline: last stage must be Measure");
  }
  int modes = p.stages.front().modes_in;
  for (const auto& s : p.stages) {
    if (s.modes_in != modes) {
      throw ConfigError("pipeline: stage '" + s.name +
                        "' mode count does not chain");
    }
    if (s.kind == StageKind::Dissipate) {
      if (s.kept.empty()) {
        throw ConfigError("pipeline: Dissipate stage keeps nothing");
      }
      for (int k : s.kept) {
        if (k < 0 || k >= s.modes_in) {
          throw ConfigError("pipeline: kept mode out of range");
        }
      }
      if (s.modes_out != s.modes_in) {
        throw ConfigError("pipeline: Dissipate must preserve the mode bus");
      }
    } else {
      if (s.unitary.rows() != s.modes_out || s.unitary.cols() != s.modes_in) {
        throw ConfigError("pipeline: declared mode counts do not match the "
                          "operator dimensions");
      }
      const double dev = (s.unitary.adjoint() * s.unitary -
                          Eigen::MatrixXcd::Identity(s.modes_in, s.modes_in))
                             .cwiseAbs()
                             .maxCoeff();
      if (dev > 1e-10) {
        throw ConfigError("pipeline: stage '" + s.name + "' is not unitary");
      }
    }
    modes = s.modes_out;
  }
}

OpticalPipeline lower(const Schedule& sched) {
  if (sched.steps.empty()) throw ConfigError("lower: empty schedule");
  const int sites = static_cast<int>(sched.steps.front().hamiltonian.sites());
  const int dim = 1 << sites;

  OpticalPipeline p;
  p.dim = dim;

  int rotation_count = 0;
  Eigen::MatrixXcd prev_frame;
  for (std::size_t k = 0; k < sched.steps.size(); ++k) {
    const OperatorSum h = canonicalize(sched.steps[k].hamiltonian);
    if (!is_hermitian(h)) {
      throw ConfigError("lower: non-Hermitian schedule step");
    }
    const DenseOperator dense = to_dense(h, sites);
    const Eigen::MatrixXcd frame = frame_for(h, dense);
    const int preset = preset_index(h);
    const std::string de_name =
        preset >= 0 ? "DE" + std::to_string(preset) : "DE" + std::to_string(k);

    if (k == 0) {
      p.stages.push_back(
          make_rotation_stage(StageKind::Prepare, "Pre", frame.adjoint()));
    } else {
      ++rotation_count;
      p.stages.push_back(make_rotation_stage(
          StageKind::BasisRotation, "BR" + std::to_string(rotation_count),
          frame.adjoint() * prev_frame));
    }
    Stage de;
    de.kind = StageKind::Dissipate;
    de.name = de_name;
    de.modes_in = dim;
    de.modes_out = dim;
    de.kept = kept_modes(frame, dense);
    p.stages.push_back(std::move(de));
    prev_frame = frame;
  }
  p.stages.push_back(
      make_rotation_stage(StageKind::Measure, "Measure", prev_frame));
  validate_pipeline(p);
  return p;
}

PipelineRun simulate_pipeline(const OpticalPipeline& p, const StateVector& input) {
  validate_pipeline(p);
  if (input.size() != p.stages.front().modes_in) {
    throw ConfigError("simulate_pipeline: input dimension mismatch");
  }
  const double in_norm = input.norm();
  if (in_norm < kAnnihilationNorm) {
    throw NumericError("simulate_pipeline: zero input");
  }
  PipelineRun run;
  StateVector v = input / in_norm;
  const double residual = std::sqrt(p.leakage);
  for (const auto& s : p.stages) {
    if (s.kind == StageKind::Dissipate) {
      StateVector w = residual * v;
      for (int k : s.kept) w(k) = v(k);
      const double kept_frac = w.squaredNorm() / v.squaredNorm();
      run.success_probability *= kept_frac;
      if (w.squaredNorm() < kAnnihilationNorm) {
        throw NumericError("simulate_pipeline: annihilation at stage " + s.name);
      }
      v = w.normalized();
    } else {
      v = s.unitary * v;
    }
    int active = 0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (std::abs(v(k)) > 1e-12) ++active;
    }
    std::ostringstream line;
    line << s.name << " (" << kind_name(s.kind) << "): modes " << s.modes_in
         << "->" << s.modes_out << ", active " << active
         << ", cumulative success " << run.success_probability;
    run.trace.push_back(line.str());
  }
  run.final_state = v;
  return run;
}

OpticalPipeline imperfect_dissipation(const OpticalPipeline& p, double leakage) {
  if (leakage < 0.0 || leakage >= 1.0) {
    throw ConfigError("imperfect_dissipation: leakage must be in [0, 1)");
  }
  OpticalPipeline out = p;
  out.leakage = leakage;
  return out;
}

Eigen::MatrixXcd dense_projection_sequence(const Schedule& sched) {
  if (sched.steps.empty()) throw ConfigError("dense_projection_sequence: empty");
  const int sites = static_cast<int>(sched.steps.front().hamiltonian.sites());
  const int dim = 1 << sites;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& step : sched.steps) {
    out = ground_projector(to_dense(step.hamiltonian, sites)).entries * out;
  }
  return out;
}

LoweringReport verify_lowering(const Schedule& sched, int trials,
                               std::uint64_t seed) {
  const OpticalPipeline p = lower(sched);
  const Eigen::MatrixXcd reference = dense_projection_sequence(sched);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  LoweringReport report;
  report.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    StateVector input(p.dim);
    for (int k = 0; k < p.dim; ++k) input(k) = cplx(gauss(rng), gauss(rng));
    input.normalize();

    const PipelineRun run = simulate_pipeline(p, input);
    StateVector dense_out = reference * input;
    const double dense_prob = dense_out.squaredNorm();
    dense_out.normalize();
    // Align the physically irrelevant global phase before comparing.
    const cplx overlap = dense_out.dot(run.final_state);
    const StateVector aligned =
        run.final_state * std::exp(cplx(0.0, -std::arg(overlap)));
    const double state_dev = (aligned - dense_out).norm();
    const double prob_dev = std::abs(run.success_probability - dense_prob);
    report.max_state_deviation = std::max(report.max_state_deviation, state_dev);
    report.max_probability_deviation =
        std::max(report.max_probability_deviation, prob_dev);
    report.success_probabilities.push_back(run.success_probability);
    if (state_dev <= 1e-10 && prob_dev <= 1e-10) ++report.passes;
  }
  return report;
}

}  // namespace mzm
