#pragma once

#include <string>

namespace selbound {

// hex digest of a byte string
std::string sha256_hex(const std::string& data);

}  // namespace selbound
