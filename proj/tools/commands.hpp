#pragma once

#include "CLI11.hpp"
#include "util.hpp"

namespace snrtool {

void register_snr_curve(CLI::App& app, CliContext& ctx);
void register_mc_sim(CLI::App& app, CliContext& ctx);
void register_hdr_fuse(CLI::App& app, CliContext& ctx);
void register_threshold_sweep(CLI::App& app, CliContext& ctx);
void register_ber(CLI::App& app, CliContext& ctx);
void register_entropy(CLI::App& app, CliContext& ctx);

}  // namespace snrtool
