#pragma once

namespace lincx {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lincx
