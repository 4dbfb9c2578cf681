#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace intertext::csv {

// RFC-4180-ish: quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

// Splits one document into rows of fields, handling quoted fields. Trailing
// newline optional; LF and CRLF both accepted.
std::vector<std::vector<std::string>> parse(std::string_view document);

// Shortest decimal form with up to 6 significant digits ("%.6g"), "-0"
// normalized to "0".
std::string format_number(double value);

}  // namespace intertext::csv
