#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "snrlab/errors.hpp"
#include "util.hpp"

namespace {

// The argv recorded in output metadata must reproduce the run when replayed
// with a fresh -o destination, so the output flag itself (and its value) is
// stripped.  Handles "-o PATH", "-oPATH", "--out PATH", and "--out=PATH".
std::vector<std::string> rerun_args(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "-o" || a == "--out") {
      ++i;  // skip the path argument too
      continue;
    }
    if (a.rfind("--out=", 0) == 0) continue;
    if (a.rfind("-o", 0) == 0 && a.size() > 2 && a != "--out") continue;
    out.push_back(a);
  }
  return out;
}

void write_failure_manifest(const snrtool::CliContext& ctx, const std::string& kind,
                            const std::string& message) {
  if (ctx.out_path.empty()) return;
  snrtool::json manifest;
  manifest["schema_version"] = "1";
  manifest["error"] = kind;
  manifest["message"] = message;
  manifest["partial_outputs"] = ctx.written;
  try {
    snrtool::write_text_file(ctx.out_path + ".failure.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "snrlab: could not write failure manifest: " << e.what() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exposure-referred SNR toolkit for image sensor models"};
  app.require_subcommand(1);

  snrtool::CliContext ctx;
  ctx.rerun_argv = rerun_args(argc, argv);

  snrtool::register_snr_curve(app, ctx);
  snrtool::register_mc_sim(app, ctx);
  snrtool::register_hdr_fuse(app, ctx);
  snrtool::register_threshold_sweep(app, ctx);
  snrtool::register_ber(app, ctx);
  snrtool::register_entropy(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const snrlab::SaturationError& e) {
    std::cerr << "snrlab: saturation: " << e.what() << "\n";
    write_failure_manifest(ctx, "saturation", e.what());
    return 2;
  } catch (const snrlab::ConvergenceError& e) {
    std::cerr << "snrlab: convergence: " << e.what() << "\n";
    write_failure_manifest(ctx, "convergence", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "snrlab: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
