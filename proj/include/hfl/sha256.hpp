#pragma once

#include <string>

namespace hfl::io {

// hex digest of the bytes of `data`; self-contained so certificate
// fingerprints do not pull in a crypto dependency
std::string sha256_hex(const std::string &data);

} // namespace hfl::io
