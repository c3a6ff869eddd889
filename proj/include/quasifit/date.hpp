#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace quasifit {

using Date = std::chrono::sys_days;

/// Parses an ISO 8601 calendar date (YYYY-MM-DD). Throws quasifit::Error.
Date parse_iso_date(std::string_view text);

std::string format_iso_date(Date date);

/// Inclusive day count of [begin, end]; 0 when end < begin.
long inclusive_days(Date begin, Date end);

inline Date add_days(Date date, long days) { return date + std::chrono::days{days}; }

}  // namespace quasifit
