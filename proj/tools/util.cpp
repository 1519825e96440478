#include "util.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace snrtool {
namespace {

double parse_double(const std::string& token, const std::string& flag_name) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(flag_name + ": cannot parse number '" + token + "'");
  }
}

}  // namespace

std::vector<double> parse_range(const std::string& text, bool log_spacing,
                                const std::string& flag_name) {
  if (text.empty()) throw std::invalid_argument(flag_name + ": empty value");

  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string lo_s, hi_s, count_s;
    if (!std::getline(ss, lo_s, ':') || !std::getline(ss, hi_s, ':') ||
        !std::getline(ss, count_s) || count_s.empty())
      throw std::invalid_argument(flag_name + ": range must be lo:hi:count");
    const double lo = parse_double(lo_s, flag_name);
    const double hi = parse_double(hi_s, flag_name);
    const long count = (long)parse_double(count_s, flag_name);
    if (count < 2) throw std::invalid_argument(flag_name + ": range count must be >= 2");
    if (!(hi > lo)) throw std::invalid_argument(flag_name + ": range needs hi > lo");
    std::vector<double> out((std::size_t)count);
    if (log_spacing) {
      if (!(lo > 0.0))
        throw std::invalid_argument(flag_name + ": log-spaced range needs lo > 0");
      const double l0 = std::log(lo), l1 = std::log(hi);
      for (long i = 0; i < count; ++i)
        out[(std::size_t)i] = std::exp(l0 + (l1 - l0) * (double)i / (double)(count - 1));
    } else {
      for (long i = 0; i < count; ++i)
        out[(std::size_t)i] = lo + (hi - lo) * (double)i / (double)(count - 1);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
  }

  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(parse_double(token, flag_name));
  if (out.empty()) throw std::invalid_argument(flag_name + ": empty list");
  return out;
}

std::string derive_path(const std::string& out_path, const std::string& logical) {
  const std::size_t slash = out_path.find_last_of('/');
  const std::size_t dot = out_path.find_last_of('.');
  std::string stem = out_path;
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    stem = out_path.substr(0, dot);
  return stem + "." + logical;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  os << content;
  if (!os) throw std::runtime_error("write failed for " + path);
}

json config_base(const CliContext& ctx, const std::string& command) {
  json j;
  j["schema_version"] = "1";
  j["command"] = command;
  j["seed"] = ctx.seed;
  j["argv"] = ctx.rerun_argv;
  j["resolved"] = json::object();
  return j;
}

std::string metadata_line(const json& config) { return config.dump(); }

}  // namespace snrtool
