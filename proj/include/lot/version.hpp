#pragma once

namespace lot {

inline constexpr const char* kPipelineVersion = "0.1.0";

}  // namespace lot
