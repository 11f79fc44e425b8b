#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace mwkt {

using json = nlohmann::json;

// typed error: code is machine-readable ("MalformedSpec", "TooLarge", ...);
// cap errors carry the cap name, parse errors the offending position.
struct mwkt_error : std::runtime_error {
  std::string code;
  std::string cap;   // nonempty for resource-cap errors
  long pos = -1;     // >= 0 for spec-parse errors

  mwkt_error(std::string code_, const std::string& what_, std::string cap_ = "",
             long pos_ = -1)
      : std::runtime_error(what_), code(std::move(code_)), cap(std::move(cap_)), pos(pos_) {}
};

// FNV-1a 64-bit, used for content-addressed cache keys and report hashes.
inline std::uint64_t fnv1a64(const void* data, size_t len, std::uint64_t h = 0xcbf29ce484222325ull) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string fnv_hex(const std::string& s) {
  std::uint64_t h = fnv1a64(s.data(), s.size());
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mwkt
