#include <memory>
#include <sstream>
#include <stdexcept>

#include "commands.hpp"
#include "snrlab/hdr.hpp"

namespace snrtool {
namespace {

struct Opts {
  std::string taus = "1,0.1,0.01,0.001";
  long full_well = 7;
  unsigned n_frames = 100;
  std::string scheme = "both";
  std::string theta = "1e-2:1e4:120";
  std::string scene_path;
  double scene_min = 0.1;
  double scene_max = 10000.0;
  std::size_t width = 256;
  std::size_t height = 256;
  bool no_image = false;
  std::string weights_at = "0.1,1,10,100,1000";
  unsigned long long seed = 0;
  std::string out;
};

snrlab::WeightScheme parse_scheme(const std::string& name) {
  if (name == "exposure") return snrlab::WeightScheme::exposure_referred;
  if (name == "output") return snrlab::WeightScheme::output_referred;
  throw std::invalid_argument("--scheme must be exposure, output, or both");
}

void run(const Opts& o, CliContext& ctx) {
  ctx.out_path = o.out;
  ctx.seed = o.seed;
  const auto taus = parse_range(o.taus, /*log=*/false, "--taus");
  const auto thetas = parse_range(o.theta, /*log=*/true, "--theta");
  snrlab::ExposureGrid grid{thetas};
  grid.validate();
  const auto weight_thetas = parse_range(o.weights_at, /*log=*/false, "--weights-at");

  std::vector<std::string> schemes;
  if (o.scheme == "both")
    schemes = {"exposure", "output"};
  else {
    parse_scheme(o.scheme);  // validates the name
    schemes = {o.scheme};
  }

  json config = config_base(ctx, "hdr-fuse");
  config["resolved"] = {{"taus", o.taus},
                        {"full_well", o.full_well},
                        {"n_frames", o.n_frames},
                        {"scheme", o.scheme},
                        {"theta", o.theta},
                        {"grid_points", grid.size()},
                        {"scene", o.scene_path.empty() ? "log-ramp" : "file"},
                        {"scene_min", o.scene_min},
                        {"scene_max", o.scene_max},
                        {"width", o.width},
                        {"height", o.height},
                        {"simulate_image", !o.no_image},
                        {"weights_at", o.weights_at}};

  json report = config;
  report["schemes"] = json::object();

  // Per-bracket weights at the sampled exposures; an unsatisfiable sample
  // (every bracket saturated) is a numeric failure and exits with code 2.
  json weight_rows = json::array();
  for (double t : weight_thetas) {
    json row;
    row["theta"] = t;
    for (const auto& name : schemes) {
      const auto w =
          snrlab::fusion_weights(t, taus, o.full_well, o.n_frames, parse_scheme(name));
      row[name] = w.values;
    }
    weight_rows.push_back(row);
  }
  report["weights_at_theta"] = weight_rows;

  json artifacts = json::array();

  for (const auto& name : schemes) {
    const auto scheme = parse_scheme(name);
    snrlab::SnrCurve curve =
        snrlab::snr_hdr_curve(taus, o.full_well, o.n_frames, scheme, grid);
    json curve_config = config;
    curve_config["resolved"]["scheme"] = name;
    curve_config["resolved"]["method"] = "analytic-hdr";
    curve.metadata = metadata_line(curve_config);
    curve.n_frames = o.n_frames;

    const std::string logical = name + ".csv";
    std::ostringstream body;
    snrlab::write_curve_csv(body, curve);
    write_text_file(derive_path(o.out, logical), body.str());
    ctx.written.push_back(logical);
    artifacts.push_back(logical);
  }

  if (!o.no_image) {
    snrlab::Image scene;
    if (!o.scene_path.empty())
      scene = snrlab::read_pfm(o.scene_path);
    else
      scene = snrlab::make_log_ramp_scene(o.width, o.height, o.scene_min, o.scene_max);

    snrlab::write_pfm(derive_path(o.out, "scene.pfm"), scene);
    ctx.written.push_back("scene.pfm");
    artifacts.push_back("scene.pfm");

    for (const auto& name : schemes) {
      const auto scheme = parse_scheme(name);
      // Same base stream for both schemes: identical simulated frames, so
      // the PSNR difference isolates the weighting rule.
      const snrlab::SeededRng base(o.seed, 0);
      const auto fused =
          snrlab::fuse_image(scene, taus, o.full_well, o.n_frames, scheme, base);
      const std::string logical = name + ".pfm";
      snrlab::write_pfm(derive_path(o.out, logical), fused.estimate);
      ctx.written.push_back(logical);
      artifacts.push_back(logical);
      report["schemes"][name] = {{"psnr_db", fused.psnr_db},
                                 {"failed_pixels", fused.failed_pixels},
                                 {"pixels", scene.pixels.size()}};
    }
  }

  report["artifacts"] = artifacts;
  write_text_file(o.out, report.dump(2) + "\n");
  ctx.written.push_back("report");
}

}  // namespace

void register_hdr_fuse(CLI::App& app, CliContext& ctx) {
  auto opts = std::make_shared<Opts>();
  CLI::App* sc = app.add_subcommand(
      "hdr-fuse", "HDR bracket fusion: SNR curves, weight report, synthetic-image PSNR");
  sc->add_option("--taus", opts->taus, "Exposure ratios, e.g. 1,0.1,0.01,0.001")
      ->capture_default_str();
  sc->add_option("--full-well", opts->full_well, "Full-well capacity L")->capture_default_str();
  sc->add_option("--n-frames", opts->n_frames, "Frames per bracket N")->capture_default_str();
  sc->add_option("--scheme", opts->scheme, "Weighting: exposure, output, or both")
      ->capture_default_str();
  sc->add_option("--theta", opts->theta, "Curve grid lo:hi:count (log)")->capture_default_str();
  sc->add_option("--scene", opts->scene_path, "Input scene PFM (default: synthetic log ramp)");
  sc->add_option("--scene-min", opts->scene_min, "Ramp minimum radiance")->capture_default_str();
  sc->add_option("--scene-max", opts->scene_max, "Ramp maximum radiance")->capture_default_str();
  sc->add_option("--width", opts->width, "Ramp width in pixels")->capture_default_str();
  sc->add_option("--height", opts->height, "Ramp height in pixels")->capture_default_str();
  sc->add_flag("--no-image", opts->no_image, "Skip image simulation (curves and weights only)");
  sc->add_option("--weights-at", opts->weights_at, "Exposures for the weight report")
      ->capture_default_str();
  sc->add_option("--seed", opts->seed, "RNG seed")->capture_default_str();
  sc->add_option("-o,--out", opts->out, "Output JSON report path (derives CSV/PFM siblings)")
      ->required();
  sc->callback([opts, &ctx]() { run(*opts, ctx); });
}

}  // namespace snrtool
