#include <memory>
#include <sstream>

#include "commands.hpp"
#include "snrlab/qis.hpp"

namespace snrtool {
namespace {

struct Opts {
  double theta = 1.0;
  std::string q = "0.05:0.95:19";
  std::string read_noise = "0";
  unsigned n_frames = 1;
  std::string out;
};

void run(const Opts& o, CliContext& ctx) {
  ctx.out_path = o.out;
  const auto q_values = parse_range(o.q, /*log=*/false, "--q");
  const auto read_noises = parse_range(o.read_noise, /*log=*/false, "--read-noise");

  json config = config_base(ctx, "threshold-sweep");
  config["resolved"] = {{"theta", o.theta},
                        {"q", o.q},
                        {"read_noise", o.read_noise},
                        {"n_frames", o.n_frames},
                        {"method", "analytic"}};

  std::ostringstream body;
  body << "# snrlab-config: " << metadata_line(config) << "\n";
  body << "q,snr,theta,read_noise\n";
  for (double rn : read_noises) {
    const auto sweep = snrlab::threshold_sweep(o.theta, q_values, rn, o.n_frames);
    for (std::size_t i = 0; i < sweep.q_values.size(); ++i)
      body << snrlab::format_double(sweep.q_values[i]) << ','
           << snrlab::format_double(sweep.snr_values[i]) << ','
           << snrlab::format_double(o.theta) << ',' << snrlab::format_double(rn) << "\n";
  }
  write_text_file(o.out, body.str());
  ctx.written.push_back("csv");
}

}  // namespace

void register_threshold_sweep(CLI::App& app, CliContext& ctx) {
  auto opts = std::make_shared<Opts>();
  CLI::App* sc = app.add_subcommand(
      "threshold-sweep", "One-bit SNR as a function of the threshold q at fixed exposure");
  sc->add_option("--theta", opts->theta, "Exposure level")->capture_default_str();
  sc->add_option("--q", opts->q, "Thresholds: value, list, or lo:hi:count (linear)")
      ->capture_default_str();
  sc->add_option("--read-noise", opts->read_noise,
                 "Read noise values: value, list, or lo:hi:count (linear)")
      ->capture_default_str();
  sc->add_option("--n-frames", opts->n_frames, "Frame count N")->capture_default_str();
  sc->add_option("-o,--out", opts->out, "Output CSV path")->required();
  sc->callback([opts, &ctx]() { run(*opts, ctx); });
}

}  // namespace snrtool
