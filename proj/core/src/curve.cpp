#include "snrlab/curve.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace snrlab {

ExposureGrid ExposureGrid::log_spaced(double theta_min, double theta_max, std::size_t count) {
  if (!(theta_min > 0.0) || !(theta_max > theta_min))
    throw std::invalid_argument("ExposureGrid: require 0 < theta_min < theta_max");
  if (count < 2) throw std::invalid_argument("ExposureGrid: count must be >= 2");
  ExposureGrid g;
  g.thetas.resize(count);
  const double l0 = std::log(theta_min);
  const double l1 = std::log(theta_max);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = (double)i / (double)(count - 1);
    g.thetas[i] = std::exp(l0 + f * (l1 - l0));
  }
  g.thetas.front() = theta_min;
  g.thetas.back() = theta_max;
  return g;
}

void ExposureGrid::validate() const {
  if (thetas.empty()) throw std::invalid_argument("ExposureGrid: empty grid");
  double prev = 0.0;
  for (double t : thetas) {
    if (!(t > prev))
      throw std::invalid_argument("ExposureGrid: thetas must be positive and strictly increasing");
    prev = t;
  }
}

const char* to_string(SnrKind kind) {
  return kind == SnrKind::exposure_referred ? "exposure" : "output";
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_labeled_curve_csv(std::ostream& os, const std::vector<SnrPoint>& points,
                             const std::string& kind_label, unsigned n_frames,
                             const std::string& metadata) {
  if (!metadata.empty()) os << "# snrlab-config: " << metadata << "\n";
  os << "theta,snr,kind,n_frames\n";
  for (const auto& p : points)
    os << format_double(p.theta) << ',' << format_double(p.snr) << ',' << kind_label << ','
       << n_frames << "\n";
}

void write_curve_csv(std::ostream& os, const SnrCurve& curve) {
  write_labeled_curve_csv(os, curve.points, to_string(curve.kind), curve.n_frames,
                          curve.metadata);
}

}  // namespace snrlab
