#pragma once

#include <string>

namespace tsrep {

/// Reads TSREP_LOG={error|warn|info|debug} (default warn). Idempotent.
void init_logging();

void log_debug(const std::string& msg);
void log_info(const std::string& msg);
void log_warn(const std::string& msg);
void log_error(const std::string& msg);

}  // namespace tsrep
