#pragma once

// Line-oriented model files:
//   name <IDENT>
//   generator <IDENT> <DEGREE> [domain] [stage=<k>]
//   d <IDENT> = <lie-expr>
// `#` starts a comment. Generators without a `d` line are cycles.

#include <filesystem>
#include <string>
#include <string_view>

#include "quillen/models.hpp"

namespace quillen {

/// Throws InputError (with the line number) on malformed input.
MapModel parse_model(std::string_view text);
MapModel load_model(const std::filesystem::path& path);

std::string serialize_model(const MapModel& m);
std::string serialize_model(const Dgl& l);
void save_model(const std::filesystem::path& path, const MapModel& m);
void save_model(const std::filesystem::path& path, const Dgl& l);

}  // namespace quillen
