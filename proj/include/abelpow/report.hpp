#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace abelpow::report {

/// Shortest text for a double at 17 significant digits. Integral values keep
/// a trailing ".0" so they read back as floating point; non-finite values
/// become the strings "inf", "-inf", "nan".
std::string format_double(double v);

/// Deterministic JSON: sorted keys, two-space indent, doubles via
/// format_double.
std::string dump(const nlohmann::json& j);

/// "sha256:<hex>" of the given bytes.
std::string digest(std::string_view bytes);

}  // namespace abelpow::report
