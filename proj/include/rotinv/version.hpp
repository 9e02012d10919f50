#pragma once

namespace rotinv {

inline constexpr const char* kToolName = "rotinv-cli";
inline constexpr const char* kToolVersion = "0.1.0";
/// Version of every JSON report and encoding file the tool writes.
inline constexpr int kReportSchemaVersion = 1;

}  // namespace rotinv
