#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mzm/ite.hpp"
#include "mzm/pauli.hpp"

namespace mzm {

enum class StageKind { Prepare, BasisRotation, Dissipate, Measure };

// A two-mode mixer acting on mode indices (m1, m2).
struct Mixer {
  int m1 = 0;
  int m2 = 0;
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
};

struct Stage {
  StageKind kind = StageKind::Prepare;
  std::string name;
  int modes_in = 0;
  int modes_out = 0;
  // Prepare / BasisRotation / Measure: the unitary applied to the mode
  // amplitudes, together with its mixer-and-phases factorization
  // U = M_1 M_2 ... M_k diag(phases).
  Eigen::MatrixXcd unitary;
  std::vector<Mixer> mixers;
  Eigen::VectorXcd phases;
  // Dissipate: kept mode indices.
  std::vector<int> kept;
};

// Rebuilds the stage unitary from its mixer/phase factorization.
Eigen::MatrixXcd reconstruct_unitary(const Stage& stage);

struct OpticalPipeline {
  std::vector<Stage> stages;
  int dim = 0;
  double leakage = 0.0;  // residual amplitude kept on discarded modes: sqrt(leakage)
};

// Static validation: stage ordering, mode-count chaining, unitarity,
// nonempty kept sets. Throws ConfigError on violations.
void validate_pipeline(const OpticalPipeline& p);

// Lowers an ITE schedule onto the staged pipeline: per step, a basis
// rotation into the step Hamiltonian's eigenbasis followed by a dissipative
// post-selection keeping the minimum-eigenvalue modes.
OpticalPipeline lower(const Schedule& sched);

struct PipelineRun {
  StateVector final_state;  // back in the computational basis, normalized
  double success_probability = 1.0;
  std::vector<std::string> trace;  // one line per stage
};

PipelineRun simulate_pipeline(const OpticalPipeline& p, const StateVector& input);

// Copy of the pipeline whose Dissipate stages retain discarded modes with
// amplitude sqrt(leakage); leakage = 0 reproduces the ideal pipeline.
OpticalPipeline imperfect_dissipation(const OpticalPipeline& p, double leakage);

struct LoweringReport {
  int trials = 0;
  int passes = 0;
  double max_state_deviation = 0.0;
  double max_probability_deviation = 0.0;
  std::vector<double> success_probabilities;
};

// Pipeline-vs-dense equivalence on random inputs; failures are reported,
// not thrown.
LoweringReport verify_lowering(const Schedule& sched, int trials,
                               std::uint64_t seed = 12345);

// The dense reference: the product of ground projectors of the schedule
// steps, applied left-to-right.
Eigen::MatrixXcd dense_projection_sequence(const Schedule& sched);

}  // namespace mzm
