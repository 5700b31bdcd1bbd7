#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mmf/cmatrix.hpp"
#include "mmf/image.hpp"
#include "mmf/rng.hpp"

namespace mmf::fibersim {

// One conformation of the fiber: normalized vertical displacement of every
// actuator, each component in [0, 1].
struct Configuration {
  std::vector<double> theta;
};

struct TransmissionMatrix {
  CMatrix u;  // N x N, unitary
};

// Fixed per-fiber randomness. Immutable after construction apart from the
// coupling scale, which calibrate_sigma tunes against the target speckle
// decorrelation. Construction is a pure function of
// (seed, n_modes, n_actuators, in_dims, out_dims).
struct FiberModel {
  int n_modes = 0;
  int n_actuators = 0;
  Dims in_dims, out_dims;
  uint64_t seed = 0;
  double sigma = 1.0;

  CMatrix input_proj;                  // N x (in W*H), rows unit norm
  CMatrix output_proj;                 // (out W*H) x N, orthonormal columns
  std::vector<CMatrix> bend_generators;  // K Hermitian, unit spectral norm
  std::vector<HermEig> bend_eigs;        // eigendecompositions of the above
  std::vector<std::vector<cplx>> seg_phases;  // K diagonal unitaries
  std::shared_ptr<const std::vector<uint8_t>> core_mask;

  // Macro-bend variants freeze all but a few generators.
  std::vector<uint8_t> active_bends;  // length K, 1 = excitable

  double effective_theta(const Configuration& c, int k) const {
    return active_bends[k] ? c.theta[k] : 0.0;
  }
};

FiberModel new_fiber(uint64_t seed, int n_modes, int n_actuators, Dims in_dims, Dims out_dims);

// exp(i*scale*h) for Hermitian h, via eigendecomposition.
CMatrix hermitian_exp(const CMatrix& h, double scale);

// Ordered product over segments k = 1..K of D_k * exp(i*sigma*theta_k*H_k),
// segment 1 applied first.
TransmissionMatrix assemble_tm(const FiberModel& model, const Configuration& config);
// Product over segments 1..upto_segment only (0 gives the identity).
CMatrix assemble_tm_prefix(const FiberModel& model, const Configuration& config, int upto_segment);

SpecklePattern propagate(const FiberModel& model, const TransmissionMatrix& tm,
                         const DigitImage& input);

// Mode amplitudes coupled in by a binary input; the speckle energy equals
// the squared norm of this vector.
std::vector<cplx> couple_input(const FiberModel& model, const BinaryImage& input);

Configuration random_configuration(int n_actuators, Rng& rng);

// Shifts one uniformly chosen component by +-delta, clamped to [0, 1].
Configuration perturb_step(const Configuration& config, Rng& rng, double delta);

// Fixed probe inputs used for PCC estimation; independent of the model seed
// so calibration noise is decoupled from digit statistics.
std::vector<DigitImage> calibration_probes(Dims in_dims, int count = 32);

// Mean masked PCC between speckles of the same input under two independent
// random configurations, averaged over `n_pairs` pairs and the probe set.
double mean_cross_configuration_pcc(const FiberModel& model, int n_pairs, Rng& rng,
                                    const std::vector<DigitImage>& probes);

// Bisection on the monotone map sigma -> mean cross-configuration PCC.
// Returns the calibrated sigma and updates model.sigma.
double calibrate_sigma(FiberModel& model, double target_pcc, double tol, Rng& rng);

// Mean masked PCC between speckles before and after one perturbation step.
double mean_adjacent_step_pcc(const FiberModel& model, double delta, int n_pairs, Rng& rng,
                              const std::vector<DigitImage>& probes);

// Bisection on delta so the adjacent-step PCC hits `target_pcc`.
double calibrate_step_delta(const FiberModel& model, double target_pcc, double tol, Rng& rng);

// Variant whose configurations excite only `n_bends` randomly chosen
// generators; the caller re-calibrates sigma to restore the PCC target.
FiberModel macro_bend_model(const FiberModel& model, int n_bends, Rng& rng);

}  // namespace mmf::fibersim
