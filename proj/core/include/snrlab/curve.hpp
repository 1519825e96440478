#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace snrlab {

// Strictly increasing positive exposure values.
struct ExposureGrid {
  std::vector<double> thetas;

  static ExposureGrid log_spaced(double theta_min, double theta_max, std::size_t count);

  std::size_t size() const { return thetas.size(); }

  // Throws std::invalid_argument; requires >= 2 strictly increasing positives.
  void validate() const;
};

enum class SnrKind { exposure_referred, output_referred };

const char* to_string(SnrKind kind);

struct SnrPoint {
  double theta;
  double snr;  // NaN marks a point the estimator could not resolve
};

struct SnrCurve {
  std::vector<SnrPoint> points;
  SnrKind kind = SnrKind::exposure_referred;
  unsigned n_frames = 1;
  std::string metadata;  // optional one-line config snapshot echoed into the CSV
};

// Shortest decimal form that round-trips the exact double (to_chars).
std::string format_double(double value);

// Layout: optional "# snrlab-config: <metadata>" comment, then the header
// row "theta,snr,kind,n_frames", then one row per point.
void write_curve_csv(std::ostream& out, const SnrCurve& curve);

// Same row format with a caller-chosen kind label; used for value curves
// (response, tail probabilities) that share the curve file schema.
void write_labeled_curve_csv(std::ostream& out, const std::vector<SnrPoint>& points,
                             const std::string& kind_label, unsigned n_frames,
                             const std::string& metadata);

}  // namespace snrlab
