#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "fastsda/regression.hpp"

namespace fastsda {

/// Text container:
///   FASTSDA-MODEL v1 <linear|kernel|approx-kernel|mv-linear|mv-kernel>
///   # invocation: <command line>
///   key value lines and `matrix NAME rows cols` blocks, one row per line,
///   17 significant digits.
/// Multi-view files hold `views V`, `fusion F`, then one `view i` section per
/// view with the single-view body.
using AnyModel = std::variant<ProjectionModel, MultiViewModel>;

void write_model(std::ostream& out, const AnyModel& model, const std::string& invocation = {});
AnyModel read_model(std::istream& in, const std::string& origin = "<stream>");

void save_model(const AnyModel& model, const std::filesystem::path& path,
                const std::string& invocation = {});
AnyModel load_model(const std::filesystem::path& path);

/// Variant name written in the header.
std::string model_variant(const AnyModel& model);

}  // namespace fastsda
