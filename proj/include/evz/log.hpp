#pragma once

namespace evz {

/// Sets the global log level from EVZ_LOG (error, info, debug); default error.
/// Logs go to stderr.
void init_logging();

}  // namespace evz
