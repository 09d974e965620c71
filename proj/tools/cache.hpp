#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <openssl/evp.h>

#include "orbitforge/json_io.hpp"
#include "orbitforge/version.hpp"

namespace orbitforge::cli {

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

/// Content-addressed store of JSON payloads. The key covers the artifact
/// version, the monomial order and a normalized config, so equal configs
/// hit regardless of how the flags were spelled.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::string key_for(const Json& config) {
    Json material;
    material["version"] = kVersion;
    material["monomial_order"] = kMonomialOrder;
    material["config"] = config;
    return sha256_hex(material.dump());
  }

  /// Payload for key, or nullopt on a miss or an unreadable entry.
  std::optional<Json> load(const std::string& key) const {
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    std::stringstream buffer;
    buffer << in.rdbuf();
    const Json entry = Json::parse(buffer.str(), nullptr, false);
    if (entry.is_discarded() || !entry.is_object() || !entry.contains("payload") || entry.value("key", "") != key)
      return std::nullopt;
    return entry.at("payload");
  }

  void store(const std::string& key, const Json& config, const Json& payload) const {
    std::filesystem::create_directories(dir_);
    Json entry;
    entry["key"] = key;
    entry["version"] = kVersion;
    entry["monomial_order"] = kMonomialOrder;
    entry["config"] = config;
    entry["created_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count();
    entry["payload"] = payload;
    const auto target = path(key);
    auto temp = target;
    temp += ".tmp";
    {
      std::ofstream out(temp, std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write cache entry " + temp.string());
      out << entry.dump();
    }
    std::filesystem::rename(temp, target);
  }

 private:
  std::filesystem::path path(const std::string& key) const { return dir_ / (key + ".json"); }
  std::filesystem::path dir_;
};

}  // namespace orbitforge::cli
