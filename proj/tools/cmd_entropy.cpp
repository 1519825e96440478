#include <limits>
#include <memory>

#include "commands.hpp"
#include "snrlab/qis.hpp"
#include "snrlab/special.hpp"

namespace snrtool {
namespace {

struct Opts {
  long long threshold = 1;
  std::string theta = "1e-1:1e2:60";
  std::string out;
};

void run(const Opts& o, CliContext& ctx) {
  ctx.out_path = o.out;
  if (o.threshold < 1) throw CLI::ValidationError("--threshold", "must be >= 1");
  const auto thetas = parse_range(o.theta, /*log=*/true, "--theta");

  json config = config_base(ctx, "entropy");
  config["resolved"] = {{"threshold", o.threshold},
                        {"theta", o.theta},
                        {"method", "analytic"}};

  json points = json::array();
  double best_entropy = -1.0;
  double best_theta = std::numeric_limits<double>::quiet_NaN();
  double best_p1 = std::numeric_limits<double>::quiet_NaN();
  for (double theta : thetas) {
    const double p1 = snrlab::psi_lower(o.threshold, theta);
    const double h = snrlab::binary_entropy(theta, o.threshold);
    points.push_back({{"theta", theta}, {"p_one", p1}, {"entropy_bits", h}});
    if (h > best_entropy) {
      best_entropy = h;
      best_theta = theta;
      best_p1 = p1;
    }
  }

  json result;
  result["config"] = config;
  result["points"] = points;
  result["argmax"] = {{"theta", best_theta},
                      {"p_one", best_p1},
                      {"entropy_bits", best_entropy}};
  write_text_file(o.out, result.dump(2) + "\n");
  ctx.written.push_back("json");
}

}  // namespace

void register_entropy(CLI::App& app, CliContext& ctx) {
  auto opts = std::make_shared<Opts>();
  CLI::App* sc = app.add_subcommand(
      "entropy", "Output entropy of a one-bit sensor across exposure levels");
  sc->add_option("--threshold", opts->threshold, "Integer comparator threshold q >= 1")
      ->capture_default_str();
  sc->add_option("--theta", opts->theta, "Exposures: value, list, or lo:hi:count (log-spaced)")
      ->capture_default_str();
  sc->add_option("-o,--out", opts->out, "Output JSON path")->required();
  sc->callback([opts, &ctx]() { run(*opts, ctx); });
}

}  // namespace snrtool
