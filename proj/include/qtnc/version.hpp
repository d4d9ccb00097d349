#pragma once

namespace qtnc {

inline constexpr const char* version = "1.0.0";

}  // namespace qtnc
