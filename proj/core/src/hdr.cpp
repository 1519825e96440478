#include "snrlab/hdr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "snrlab/analytic.hpp"
#include "snrlab/estimator.hpp"
#include "snrlab/parallel.hpp"
#include "snrlab/sensor.hpp"

namespace snrlab {
namespace {

constexpr double kWeightFloor = 1e-9;  // relative; smaller weights carry no information

void check_taus(std::span<const double> taus, const char* fn) {
  if (taus.empty()) throw std::invalid_argument(std::string(fn) + ": no exposure ratios");
  for (double t : taus)
    if (!(t > 0.0))
      throw std::invalid_argument(std::string(fn) + ": exposure ratios must be > 0");
}

// Shared core: fuse per-bracket frame averages under fixed weights.
double fuse_from_averages(std::span<const double> taus, std::span<const double> y_bars,
                          const FusionWeights& w, const MeanFunction& mean) {
  long double acc = 0.0L;
  for (std::size_t m = 0; m < taus.size(); ++m) {
    if (w.values[m] <= 0.0) continue;  // discarded bracket; its frames are never inverted
    // An all-zeros average inverts exactly to exposure zero; the numeric
    // inverter would reject it because its bisection bracket is positive.
    if (y_bars[m] <= 0.0) continue;
    double local;
    try {
      local = invert_mean(mean, y_bars[m], 1e-10);
    } catch (const SaturationError& e) {
      throw SaturationError("fuse_estimate: bracket " + std::to_string(m) +
                                " carries weight but cannot be inverted",
                            e.bound(), (int)m);
    }
    acc += (long double)w.values[m] * (long double)(local / taus[m]);
  }
  return (double)acc;
}

}  // namespace

void BracketSet::validate() const {
  if (brackets.empty()) throw std::invalid_argument("BracketSet: no brackets");
  if (full_well < 1) throw std::invalid_argument("BracketSet: full_well must be >= 1");
  const std::size_t n = brackets.front().frames.size();
  if (n == 0) throw std::invalid_argument("BracketSet: brackets must hold at least one frame");
  bool inc = true, dec = true;
  for (std::size_t m = 0; m < brackets.size(); ++m) {
    if (!(brackets[m].tau > 0.0))
      throw std::invalid_argument("BracketSet: exposure ratios must be > 0");
    if (brackets[m].frames.size() != n)
      throw std::invalid_argument("BracketSet: all brackets must hold the same frame count");
    if (m > 0) {
      inc = inc && brackets[m].tau > brackets[m - 1].tau;
      dec = dec && brackets[m].tau < brackets[m - 1].tau;
    }
  }
  if (brackets.size() > 1 && !inc && !dec)
    throw std::invalid_argument("BracketSet: exposure ratios must be strictly monotone");
}

FusionWeights fusion_weights(double theta, std::span<const double> taus,
                             std::uint32_t full_well, unsigned n_frames, WeightScheme scheme) {
  check_taus(taus, "fusion_weights");
  if (full_well < 1) throw std::invalid_argument("fusion_weights: full_well must be >= 1");
  if (n_frames < 1) throw std::invalid_argument("fusion_weights: n_frames must be >= 1");
  if (!(theta > 0.0)) throw std::domain_error("fusion_weights: theta must be > 0");

  FusionWeights w;
  w.scheme = scheme;
  w.values.resize(taus.size());
  long double total = 0.0L;
  for (std::size_t m = 0; m < taus.size(); ++m) {
    double v = 0.0;
    if (scheme == WeightScheme::exposure_referred) {
      const double s = snr_exp_truncated_poisson(taus[m] * theta, full_well, n_frames);
      v = s * s;
    } else {
      v = taus[m] * theta < (double)full_well ? taus[m] : 0.0;
    }
    w.values[m] = v;
    total += v;
  }
  if (!(total > 0.0L))
    throw SaturationError("fusion_weights: every bracket is fully saturated",
                          (double)full_well);

  // Normalize, then zero out weights too small to matter; a bracket whose
  // weight underflows is in deep saturation and its inversion would only
  // inject noise (or fail outright).
  long double kept = 0.0L;
  for (double& v : w.values) {
    v = (double)((long double)v / total);
    if (v < kWeightFloor) v = 0.0;
    kept += v;
  }
  for (double& v : w.values) v = (double)((long double)v / kept);
  return w;
}

double fuse_estimate(const BracketSet& set, const FusionWeights& weights) {
  set.validate();
  if (weights.values.size() != set.brackets.size())
    throw std::invalid_argument("fuse_estimate: weight count does not match bracket count");

  std::vector<double> taus(set.brackets.size());
  std::vector<double> y_bars(set.brackets.size());
  for (std::size_t m = 0; m < set.brackets.size(); ++m) {
    taus[m] = set.brackets[m].tau;
    long double s = 0.0L;
    for (double y : set.brackets[m].frames) s += (long double)y;
    y_bars[m] = (double)(s / (long double)set.brackets[m].frames.size());
  }
  const MeanFunction mean = truncated_poisson_mean_function(set.full_well);
  return fuse_from_averages(taus, y_bars, weights, mean);
}

SnrCurve snr_hdr_curve(std::span<const double> taus, std::uint32_t full_well,
                       unsigned n_frames, WeightScheme scheme, const ExposureGrid& grid) {
  check_taus(taus, "snr_hdr_curve");
  grid.validate();
  if (n_frames < 1) throw std::invalid_argument("snr_hdr_curve: n_frames must be >= 1");

  SnrCurve curve;
  curve.kind = SnrKind::exposure_referred;
  curve.n_frames = n_frames;
  curve.points.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double theta = grid.thetas[k];
    curve.points[k].theta = theta;
    double snr = std::numeric_limits<double>::quiet_NaN();
    try {
      const FusionWeights w = fusion_weights(theta, taus, full_well, n_frames, scheme);
      // Delta method: Var[theta_hat] = sum (w_m / tau_m)^2 sigma_m^2 with
      // sigma_m^2 = Var[Y]/(N (dmu/dtheta)^2) evaluated at tau_m theta.
      long double acc = 0.0L;
      bool ok = false;
      for (std::size_t m = 0; m < taus.size(); ++m) {
        if (w.values[m] <= 0.0) continue;
        const Moments mm = truncated_poisson_moments(taus[m] * theta, full_well);
        if (!(mm.mean_derivative > 0.0)) continue;
        const long double sigma2 =
            (long double)mm.variance /
            ((long double)n_frames * (long double)mm.mean_derivative *
             (long double)mm.mean_derivative);
        const long double f = (long double)w.values[m] / (long double)taus[m];
        acc += f * f * sigma2;
        ok = true;
      }
      if (ok && acc > 0.0L) snr = theta / (double)sqrtl(acc);
    } catch (const SaturationError&) {
      // leave NaN: no usable bracket at this exposure
    }
    curve.points[k].snr = snr;
  }
  return curve;
}

BracketSet simulate_bracket_set(double theta, std::span<const double> taus,
                                std::uint32_t full_well, unsigned n_frames, SeededRng& rng) {
  check_taus(taus, "simulate_bracket_set");
  if (full_well < 1) throw std::invalid_argument("simulate_bracket_set: full_well must be >= 1");
  if (n_frames < 1) throw std::invalid_argument("simulate_bracket_set: n_frames must be >= 1");
  if (!(theta > 0.0)) throw std::domain_error("simulate_bracket_set: theta must be > 0");

  BracketSet set;
  set.full_well = full_well;
  set.brackets.resize(taus.size());
  for (std::size_t m = 0; m < taus.size(); ++m) {
    set.brackets[m].tau = taus[m];
    set.brackets[m].frames.resize(n_frames);
    for (unsigned i = 0; i < n_frames; ++i)
      set.brackets[m].frames[i] =
          (double)draw_truncated_poisson(taus[m] * theta, (std::uint32_t)full_well, rng);
  }
  return set;
}

Image make_log_ramp_scene(std::size_t width, std::size_t height, double theta_min,
                          double theta_max) {
  if (width < 2) throw std::invalid_argument("make_log_ramp_scene: width must be >= 2");
  if (height < 1) throw std::invalid_argument("make_log_ramp_scene: height must be >= 1");
  if (!(theta_min > 0.0) || !(theta_max > theta_min))
    throw std::invalid_argument("make_log_ramp_scene: require 0 < theta_min < theta_max");
  Image img;
  img.width = width;
  img.height = height;
  img.pixels.resize(width * height);
  const double l0 = std::log(theta_min);
  const double l1 = std::log(theta_max);
  for (std::size_t y = 0; y < height; ++y)
    for (std::size_t x = 0; x < width; ++x) {
      const double f = (double)x / (double)(width - 1);
      img.at(x, y) = std::exp(l0 + f * (l1 - l0));
    }
  return img;
}

double log_radiance_psnr(const Image& scene, const Image& estimate) {
  if (scene.width != estimate.width || scene.height != estimate.height)
    throw std::invalid_argument("log_radiance_psnr: image sizes differ");
  if (scene.pixels.empty()) throw std::invalid_argument("log_radiance_psnr: empty image");

  double smin = std::numeric_limits<double>::infinity();
  double smax = 0.0;
  for (double s : scene.pixels) {
    if (!(s > 0.0)) throw std::domain_error("log_radiance_psnr: scene pixels must be > 0");
    smin = std::min(smin, s);
    smax = std::max(smax, s);
  }
  const double floor_value = 1e-2 * smin;

  long double mse = 0.0L;
  for (std::size_t i = 0; i < scene.pixels.size(); ++i) {
    const double e = std::max(estimate.pixels[i], floor_value);
    const long double d = (long double)std::log10(e / scene.pixels[i]);
    mse += d * d;
  }
  mse /= (long double)scene.pixels.size();
  if (mse == 0.0L) return std::numeric_limits<double>::infinity();

  const double range = std::log10(smax / smin);
  if (!(range > 0.0)) throw std::domain_error("log_radiance_psnr: scene has no dynamic range");
  return 20.0 * std::log10(range / (double)std::sqrt((double)mse));
}

FuseImageResult fuse_image(const Image& scene, std::span<const double> taus,
                           std::uint32_t full_well, unsigned n_frames, WeightScheme scheme,
                           const SeededRng& base) {
  check_taus(taus, "fuse_image");
  if (full_well < 1) throw std::invalid_argument("fuse_image: full_well must be >= 1");
  if (n_frames < 1) throw std::invalid_argument("fuse_image: n_frames must be >= 1");
  if (scene.pixels.empty() || scene.width * scene.height != scene.pixels.size())
    throw std::invalid_argument("fuse_image: malformed scene");

  // Weights depend on the true radiance (oracle weighting); precompute one
  // table per distinct pixel value so repeated values share the work. A value
  // that saturates every bracket gets an empty entry: those pixels go
  // straight to the fallback path below and are counted as failures.
  std::unordered_map<double, FusionWeights> weight_table;
  weight_table.reserve(scene.pixels.size());
  for (double s : scene.pixels) {
    if (!(s > 0.0)) throw std::domain_error("fuse_image: scene pixels must be > 0");
    if (weight_table.count(s)) continue;
    FusionWeights w;
    w.scheme = scheme;
    try {
      w = fusion_weights(s, taus, full_well, n_frames, scheme);
    } catch (const SaturationError&) {
      // leave w.values empty to mark the pixel unfusable
    }
    weight_table.emplace(s, w);
  }

  FuseImageResult result;
  result.estimate.width = scene.width;
  result.estimate.height = scene.height;
  result.estimate.pixels.assign(scene.pixels.size(), 0.0);
  std::vector<unsigned char> failed(scene.pixels.size(), 0);

  const MeanFunction mean = truncated_poisson_mean_function(full_well);

  parallel_for(0, scene.pixels.size(), [&](std::size_t i) {
    const double theta = scene.pixels[i];
    // Pixel i draws from stream base + i: the frame data is independent of
    // the weighting scheme, so two calls with the same base differ only in
    // how the brackets are combined.
    SeededRng rng(base.seed(), base.stream_id() + (std::uint64_t)i);
    std::vector<double> y_bars(taus.size());
    for (std::size_t m = 0; m < taus.size(); ++m) {
      long double s = 0.0L;
      for (unsigned f = 0; f < n_frames; ++f)
        s += (long double)draw_truncated_poisson(taus[m] * theta, (std::uint32_t)full_well, rng);
      y_bars[m] = (double)(s / (long double)n_frames);
    }
    const FusionWeights& w = weight_table.at(theta);
    bool fused = false;
    if (!w.values.empty()) {
      try {
        result.estimate.pixels[i] = fuse_from_averages(taus, y_bars, w, mean);
        fused = true;
      } catch (const SaturationError&) {
      }
    }
    if (!fused) {
      failed[i] = 1;
      // Fall back to the largest-ratio bracket whose average is interior.
      double est = 0.0;
      std::size_t pick = taus.size();
      for (std::size_t m = 0; m < taus.size(); ++m) {
        if (!(y_bars[m] > 0.0) || !(y_bars[m] < (double)full_well)) continue;
        if (pick == taus.size() || taus[m] > taus[pick]) pick = m;
      }
      if (pick < taus.size()) {
        try {
          est = invert_mean(mean, y_bars[pick], 1e-10) / taus[pick];
        } catch (const SaturationError&) {
          est = 0.0;
        }
      }
      result.estimate.pixels[i] = est;
    }
  });

  result.failed_pixels = 0;
  for (unsigned char f : failed) result.failed_pixels += f;
  result.psnr_db = log_radiance_psnr(scene, result.estimate);
  return result;
}

}  // namespace snrlab
