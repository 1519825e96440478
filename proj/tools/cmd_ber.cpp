#include <memory>

#include "commands.hpp"
#include "snrlab/qis.hpp"

namespace snrtool {
namespace {

struct Opts {
  double theta = 1.0;
  double threshold = 0.5;
  double read_noise = 0.25;
  double invert = -1.0;  // when >= 0, solve for the read noise giving this error rate
  std::string out;
};

void run(const Opts& o, CliContext& ctx) {
  ctx.out_path = o.out;
  json config = config_base(ctx, "ber");
  json result;
  if (o.invert >= 0.0) {
    config["resolved"] = {{"invert", o.invert}, {"method", "analytic"}};
    result["config"] = config;
    result["read_noise"] = snrlab::read_noise_from_ber(o.invert);
  } else {
    config["resolved"] = {{"theta", o.theta},
                          {"threshold", o.threshold},
                          {"read_noise", o.read_noise},
                          {"method", "analytic"}};
    result["config"] = config;
    result["ber"] = snrlab::bit_error_rate(o.theta, o.threshold, o.read_noise);
  }
  write_text_file(o.out, result.dump(2) + "\n");
  ctx.written.push_back("json");
}

}  // namespace

void register_ber(CLI::App& app, CliContext& ctx) {
  auto opts = std::make_shared<Opts>();
  CLI::App* sc = app.add_subcommand(
      "ber", "Bit-error rate of a one-bit sensor, or the read noise implied by a target rate");
  sc->add_option("--theta", opts->theta, "Exposure level")->capture_default_str();
  sc->add_option("--threshold,--q", opts->threshold, "Comparator threshold q")
      ->capture_default_str();
  sc->add_option("--read-noise", opts->read_noise, "Read noise (electrons)")
      ->capture_default_str();
  sc->add_option("--invert", opts->invert,
                 "Target bit-error rate in (0, 0.5); solves for the read noise at q = 1/2");
  sc->add_option("-o,--out", opts->out, "Output JSON path")->required();
  sc->callback([opts, &ctx]() { run(*opts, ctx); });
}

}  // namespace snrtool
