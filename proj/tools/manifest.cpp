#include "manifest.hpp"

#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "crsim/version.hpp"

namespace crsim::cli {

std::string fnv1a64_hex(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input for digest: " + file.string());
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buffer[4096];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i, hash >>= 4) hex[i] = "0123456789abcdef"[hash & 0xf];
  return hex;
}

void write_manifest(const std::filesystem::path& out_dir, const RunManifest& manifest) {
  nlohmann::json j;
  j["command"] = manifest.command;
  j["flags"] = manifest.flags;
  j["inputs"] = manifest.inputs;
  j["seed"] = manifest.seed;
  j["version"] = std::string(kVersion);
  j["wall_time_s"] = manifest.wall_time_s;
  std::ofstream out(out_dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest in " + out_dir.string());
  out << j.dump(2) << "\n";
}

}  // namespace crsim::cli
