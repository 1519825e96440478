#include "snrlab/sensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace snrlab {
namespace {

void check_theta(double theta, const char* fn) {
  if (!(theta >= 0.0)) throw std::domain_error(std::string(fn) + ": theta must be >= 0");
}

}  // namespace

void SensorConfig::validate() const {
  if (full_well < 1) throw std::invalid_argument("SensorConfig: full_well must be >= 1");
  if (adc_bits < 1 || adc_bits > 31)
    throw std::invalid_argument("SensorConfig: adc_bits must lie in [1, 31]");
  if ((std::uint64_t)full_well > (std::uint64_t)adc_max())
    throw std::invalid_argument("SensorConfig: full_well must not exceed adc_max");
  if (!(read_noise >= 0.0)) throw std::invalid_argument("SensorConfig: read_noise must be >= 0");
  if (!(dark_current >= 0.0))
    throw std::invalid_argument("SensorConfig: dark_current must be >= 0");
  if (!(threshold > 0.0)) throw std::invalid_argument("SensorConfig: threshold must be > 0");
}

Sample draw_truncated_poisson(double theta, std::uint32_t full_well, SeededRng& rng) {
  check_theta(theta, "draw_truncated_poisson");
  if (full_well < 1) throw std::invalid_argument("draw_truncated_poisson: full_well must be >= 1");
  const long x = rng.next_poisson(theta);
  return (Sample)std::min<std::uint64_t>((std::uint64_t)x, full_well);
}

Sample draw_one_bit(double theta, const SensorConfig& cfg, SeededRng& rng) {
  check_theta(theta, "draw_one_bit");
  cfg.validate();
  double v = (double)rng.next_poisson(theta + cfg.dark_current);
  if (cfg.read_noise > 0.0) v += cfg.read_noise * rng.next_gaussian();
  return v >= cfg.threshold ? 1u : 0u;
}

Sample draw_full_pipeline(double theta, const SensorConfig& cfg, SeededRng& rng) {
  check_theta(theta, "draw_full_pipeline");
  cfg.validate();
  double v = (double)rng.next_poisson(theta + cfg.dark_current);
  // Skipping the Gaussian draw when read_noise == 0 keeps the uniform stream
  // aligned with draw_truncated_poisson, so the two models produce identical
  // sequences under identical configs.
  if (cfg.read_noise > 0.0) v += cfg.read_noise * rng.next_gaussian();
  v = std::round(v);
  if (v <= 0.0) return 0u;
  const double cap = (double)cfg.adc_max();
  return v >= cap ? cfg.adc_max() : (Sample)v;
}

std::vector<Sample> sample_truncated_poisson(double theta, std::uint32_t full_well,
                                             SeededRng& rng, std::size_t n) {
  std::vector<Sample> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = draw_truncated_poisson(theta, full_well, rng);
  return out;
}

std::vector<Sample> sample_one_bit(double theta, const SensorConfig& cfg, SeededRng& rng,
                                   std::size_t n) {
  cfg.validate();
  std::vector<Sample> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = draw_one_bit(theta, cfg, rng);
  return out;
}

std::vector<Sample> sample_full_pipeline(double theta, const SensorConfig& cfg, SeededRng& rng,
                                         std::size_t n) {
  cfg.validate();
  std::vector<Sample> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = draw_full_pipeline(theta, cfg, rng);
  return out;
}

ForwardModel truncated_poisson_model(std::uint32_t full_well) {
  if (full_well < 1) throw std::invalid_argument("truncated_poisson_model: full_well must be >= 1");
  return [full_well](double theta, SeededRng& rng) {
    return (double)draw_truncated_poisson(theta, full_well, rng);
  };
}

ForwardModel one_bit_model(SensorConfig cfg) {
  cfg.validate();
  return [cfg](double theta, SeededRng& rng) { return (double)draw_one_bit(theta, cfg, rng); };
}

ForwardModel full_pipeline_model(SensorConfig cfg) {
  cfg.validate();
  return [cfg](double theta, SeededRng& rng) {
    return (double)draw_full_pipeline(theta, cfg, rng);
  };
}

ForwardModel constant_model(double value) {
  return [value](double, SeededRng&) { return value; };
}

}  // namespace snrlab
