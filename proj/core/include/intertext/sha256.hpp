#pragma once

#include <string>
#include <string_view>

namespace intertext {

// SHA-256 of a byte string, lowercase hex. Used for input digests in the run
// manifest; not security-sensitive.
std::string sha256_hex(std::string_view data);

}  // namespace intertext
