#pragma once

namespace clb {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace clb
