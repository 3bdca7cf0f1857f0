#pragma once

namespace eigenflow {

inline const char* version_string() { return "1.0.0"; }

}  // namespace eigenflow
