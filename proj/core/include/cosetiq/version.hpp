#pragma once

namespace cosetiq {

inline constexpr const char* kToolName = "cosetiq";
inline constexpr const char* kToolVersion = "0.1.0";
// Canonical-form recipe identifiers; cache keys include these so a change
// to any deterministic recipe invalidates cached artifacts.
inline constexpr const char* kRecipeIds = "gamma-v1;completion-v1;pbw-v1";

}  // namespace cosetiq
