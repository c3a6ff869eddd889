/**
 * @file ingest.hpp
 * @brief Daily-count CSV input, centered 7-day smoothing, analysis windows
 *        and the unit-mass histogram of a window.
 *
 * CSV layout: UTF-8, comma separated, a header naming a `date` column
 * (YYYY-MM-DD) and one or more numeric columns. Dates must be contiguous
 * and counts non-negative; missing cells are rejected, never imputed.
 */
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quasifit/date.hpp"

namespace quasifit {

struct DailyValue {
    Date date;
    double value = 0.0;
    friend bool operator==(const DailyValue&, const DailyValue&) = default;
};

struct RawSeries {
    std::string label;
    std::vector<DailyValue> entries;
    friend bool operator==(const RawSeries&, const RawSeries&) = default;
};

/// Centered 7-day means, in cases/day.
struct SmoothedSeries {
    static constexpr int kWindow = 7;
    static constexpr int kHalfWindow = kWindow / 2;
    std::string label;
    std::vector<DailyValue> entries;
};

struct HistogramDistribution {
    std::vector<double> f;
    Date start_date;
    std::size_t size() const { return f.size(); }
};

struct WindowSpec {
    std::string country;
    Date begin;
    Date end;
    long days() const { return inclusive_days(begin, end); }
    friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

std::vector<RawSeries> parse_csv(std::string_view text);
std::vector<RawSeries> parse_csv(std::istream& in);

/// Serializes series sharing one date axis. Values are written with 17
/// significant digits so parse_csv reproduces them exactly.
std::string write_csv(std::span<const RawSeries> series);

SmoothedSeries moving_average_7(const RawSeries& raw);

/// Raw dates needed to smooth every day of window: three extra on each side.
WindowSpec raw_coverage(const WindowSpec& window);

SmoothedSeries extract_window(const SmoothedSeries& smoothed, const WindowSpec& window);

HistogramDistribution histogram(const SmoothedSeries& smoothed);

/// Preset file: header `country,begin,end`, one row per country.
std::vector<WindowSpec> parse_presets(std::string_view text);

/// The country windows shipped in data/presets.csv.
const std::vector<WindowSpec>& builtin_presets();

/// Case-insensitive lookup by country name.
std::optional<WindowSpec> find_preset(std::span<const WindowSpec> presets, std::string_view country);

}  // namespace quasifit
