#include "ponzi/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ponzi::cli {

uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for digest: " + path);
    uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
        if (got < static_cast<std::streamsize>(sizeof(buf))) break;
    }
    return hash;
}

std::string digest_hex(uint64_t digest) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    nlohmann::json j;
    j["command"] = manifest.command;
    j["argv"] = manifest.argv;
    j["seed"] = manifest.seed;
    j["input_digests"] = manifest.input_digests;
    j["outputs"] = manifest.outputs;
    j["version"] = manifest.version;
    j["wall_time_s"] = manifest.wall_time_s;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << j.dump(2) << '\n';
}

RunManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    const nlohmann::json j = nlohmann::json::parse(in);
    RunManifest manifest;
    manifest.command = j.at("command").get<std::string>();
    manifest.argv = j.at("argv").get<std::vector<std::string>>();
    manifest.seed = j.at("seed").get<uint64_t>();
    manifest.input_digests = j.at("input_digests").get<std::map<std::string, std::string>>();
    manifest.outputs = j.at("outputs").get<std::vector<std::string>>();
    manifest.version = j.at("version").get<std::string>();
    manifest.wall_time_s = j.at("wall_time_s").get<double>();
    return manifest;
}

}  // namespace ponzi::cli
