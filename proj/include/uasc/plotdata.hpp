#pragma once

#include <string>
#include <vector>

#include "uasc/sweep.hpp"

namespace uasc::harness {

struct PlotOptions {
  std::string axes = "h";  // "h", "dx" or "eps"
  std::string outdir = ".";
  std::string svg_path;  // optional log-log rendering
};

/// Splits sweep CSV output into one whitespace-delimited series file per
/// curve plus a manifest; returns the written file names (manifest first).
std::vector<std::string> emit_plotdata(const std::string& csv_text,
                                       const PlotOptions& opt);

std::vector<ErrorRecord> parse_csv(const std::string& csv_text);

}  // namespace uasc::harness
