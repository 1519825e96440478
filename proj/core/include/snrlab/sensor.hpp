#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "snrlab/rng.hpp"

namespace snrlab {

// One digital number read off the sensor.
using Sample = std::uint32_t;

struct SensorConfig {
  std::uint32_t full_well = 1;   // electrons before the pixel saturates
  double read_noise = 0.0;       // Gaussian sigma, electrons
  double dark_current = 0.0;     // mean dark electrons per exposure
  std::uint32_t adc_bits = 1;    // quantizer width; codes span [0, 2^bits - 1]
  double threshold = 0.5;        // one-bit decision level q, electrons

  std::uint32_t adc_max() const { return (1u << adc_bits) - 1u; }

  // Throws std::invalid_argument naming the violated field.
  void validate() const;
};

// Y = min(Poisson(theta), L): shot noise only, hard full-well clip.
Sample draw_truncated_poisson(double theta, std::uint32_t full_well, SeededRng& rng);

// Y = 1{X >= q}, X = Poisson(theta + dark) + N(0, read_noise^2).
Sample draw_one_bit(double theta, const SensorConfig& cfg, SeededRng& rng);

// Y = clip(round(Poisson(theta + dark) + N(0, read_noise^2)), 0, 2^bits - 1).
// Rounding is half-away-from-zero. When read_noise == 0 no Gaussian is
// drawn, so the stream consumption matches draw_truncated_poisson exactly.
Sample draw_full_pipeline(double theta, const SensorConfig& cfg, SeededRng& rng);

std::vector<Sample> sample_truncated_poisson(double theta, std::uint32_t full_well,
                                             SeededRng& rng, std::size_t n);
std::vector<Sample> sample_one_bit(double theta, const SensorConfig& cfg,
                                   SeededRng& rng, std::size_t n);
std::vector<Sample> sample_full_pipeline(double theta, const SensorConfig& cfg,
                                         SeededRng& rng, std::size_t n);

// A forward model maps exposure to one simulated digital number.
using ForwardModel = std::function<double(double theta, SeededRng& rng)>;

ForwardModel truncated_poisson_model(std::uint32_t full_well);
ForwardModel one_bit_model(SensorConfig cfg);
ForwardModel full_pipeline_model(SensorConfig cfg);
ForwardModel constant_model(double value);  // deterministic, for degenerate cases

}  // namespace snrlab
