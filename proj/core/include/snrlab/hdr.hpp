#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "snrlab/curve.hpp"
#include "snrlab/errors.hpp"
#include "snrlab/pfm.hpp"
#include "snrlab/rng.hpp"

namespace snrlab {

struct Bracket {
  double tau;                  // relative integration time
  std::vector<double> frames;  // digital numbers for this bracket
};

struct BracketSet {
  std::vector<Bracket> brackets;
  std::uint32_t full_well = 1;

  // Throws std::invalid_argument: taus strictly monotone, equal frame counts.
  void validate() const;
};

enum class WeightScheme {
  exposure_referred,  // w_m proportional to the squared exposure-referred SNR
  output_referred,    // w_m proportional to tau_m while tau_m * theta < L
};

struct FusionWeights {
  std::vector<double> values;  // nonnegative, sum to 1
  WeightScheme scheme;
};

// Per-bracket combination weights at true exposure theta. Weights below 1e-9
// of the total are clamped to zero (their brackets carry no usable signal and
// are typically fully saturated) and the rest renormalized. Throws
// SaturationError if every bracket's weight vanishes.
FusionWeights fusion_weights(double theta, std::span<const double> taus,
                             std::uint32_t full_well, unsigned n_frames,
                             WeightScheme scheme);

// theta_hat = sum_m w_m * mu^{-1}(frame average of bracket m) / tau_m over
// contributing (w_m > 0) brackets. Propagates SaturationError with the
// bracket index when a contributing bracket average is not invertible.
double fuse_estimate(const BracketSet& set, const FusionWeights& weights);

// Predicted SNR of the fused estimate across the grid:
// theta / sqrt(sum_m (w_m / tau_m)^2 * sigma_m^2), with sigma_m^2 the
// delta-method variance Var[frame avg] / (dmu/dtheta)^2 at tau_m * theta.
// Grid points where no bracket is usable become NaN.
SnrCurve snr_hdr_curve(std::span<const double> taus, std::uint32_t full_well,
                       unsigned n_frames, WeightScheme scheme,
                       const ExposureGrid& grid);

// Draws n_frames clipped-Poisson frames per bracket at exposures tau_m*theta.
BracketSet simulate_bracket_set(double theta, std::span<const double> taus,
                                std::uint32_t full_well, unsigned n_frames,
                                SeededRng& rng);

struct FuseImageResult {
  Image estimate;
  double psnr_db;             // log-radiance PSNR against the known scene
  std::size_t failed_pixels;  // pixels that fell back to a single bracket
};

// Simulates the bracketed capture of a known radiance scene pixel by pixel
// (pixel i uses stream base.stream_id() + i) and fuses it with weights taken
// from the true radiance. Pixels whose fusion hits a saturated contributing
// bracket fall back to the largest-tau bracket with an interior average.
FuseImageResult fuse_image(const Image& scene, std::span<const double> taus,
                           std::uint32_t full_well, unsigned n_frames,
                           WeightScheme scheme, const SeededRng& base);

// Horizontal log-uniform radiance ramp from lo to hi, constant per column.
Image make_log_ramp_scene(std::size_t width, std::size_t height, double lo, double hi);

// PSNR in the log10-radiance domain after normalizing both images by the
// scene peak; the reference level is the scene's log-dynamic range.
// Infinite when the estimate matches the scene exactly. Estimates are
// floored at 1e-2 of the scene minimum before taking logs.
double log_radiance_psnr(const Image& scene, const Image& estimate);

}  // namespace snrlab
