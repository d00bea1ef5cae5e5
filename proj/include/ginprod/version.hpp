#pragma once

namespace ginprod {

inline constexpr const char* kVersion = "0.1.0";

}
