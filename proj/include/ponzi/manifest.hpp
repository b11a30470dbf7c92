#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ponzi::cli {

constexpr const char* kToolVersion = "ponzidetect 1.0.0";

/// Reproducibility record written next to every command's outputs; `rerun`
/// re-executes the stored argument vector.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;            // original argv without the program name
    uint64_t seed = 0;
    std::map<std::string, std::string> input_digests;  // path -> fnv1a64 hex
    std::vector<std::string> outputs;
    std::string version = kToolVersion;
    double wall_time_s = 0.0;
};

uint64_t fnv1a64_file(const std::string& path);
std::string digest_hex(uint64_t digest);

void write_manifest(const RunManifest& manifest, const std::string& path);
RunManifest read_manifest(const std::string& path);

}  // namespace ponzi::cli
