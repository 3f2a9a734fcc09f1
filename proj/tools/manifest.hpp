#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace crsim::cli {

// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string fnv1a64_hex(const std::filesystem::path& file);

// Reproducibility record; one per output directory.  Reruns agree on every
// field except wall_time_s, and equal manifests imply byte-identical CSVs.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> flags;   // resolved values, default or not
  std::uint64_t seed = 0;
  std::map<std::string, std::string> inputs;  // input path -> digest
  double wall_time_s = 0.0;
};

// Writes <out_dir>/manifest.json (keys sorted, toolkit version included).
void write_manifest(const std::filesystem::path& out_dir, const RunManifest& manifest);

}  // namespace crsim::cli
