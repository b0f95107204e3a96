#pragma once

#include <string>

namespace popuc {

/// Doubles formatted with 17 significant digits: lossless round-trip,
/// byte-stable across runs.
std::string fmt17(double x);

/// Writes content to path via a temp file + rename, so readers never see
/// a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace popuc
