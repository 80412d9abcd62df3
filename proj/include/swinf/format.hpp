#pragma once

#include <string>

namespace swinf {

/// 17 significant digits: enough for any double to re-parse bit-exactly.
std::string format_double(double v);

}  // namespace swinf
