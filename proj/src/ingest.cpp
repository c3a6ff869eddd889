#include "quasifit/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <numeric>

#include "quasifit/error.hpp"

namespace quasifit {

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        cells.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t pos = text.find('\n', start);
        if (pos == std::string_view::npos) pos = text.size();
        std::string_view line = text.substr(start, pos - start);
        if (!trim(line).empty()) lines.push_back(line);
        start = pos + 1;
    }
    return lines;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

double parse_count(std::string_view cell, std::string_view column, std::string_view date) {
    const std::string where = " in column '" + std::string(column) + "' on " + std::string(date);
    if (cell.empty()) throw Error("missing value" + where);
    double value = 0.0;
    const char* first = cell.data();
    if (*first == '+') ++first;
    auto [end, ec] = std::from_chars(first, cell.data() + cell.size(), value);
    if (ec != std::errc{} || end != cell.data() + cell.size() || !std::isfinite(value)) {
        throw Error("malformed number '" + std::string(cell) + "'" + where);
    }
    if (value < 0.0) throw Error("negative count " + std::string(cell) + where);
    return value;
}

}  // namespace

std::vector<RawSeries> parse_csv(std::string_view text) {
    const std::vector<std::string_view> lines = lines_of(text);
    if (lines.empty()) throw Error("missing header: input is empty");

    const std::vector<std::string_view> header = split(lines.front(), ',');
    const auto date_it = std::find_if(header.begin(), header.end(),
                                      [](std::string_view h) { return iequals(h, "date"); });
    if (date_it == header.end()) throw Error("missing header: no 'date' column");
    const auto date_col = static_cast<std::size_t>(date_it - header.begin());

    std::vector<RawSeries> series;
    std::vector<std::size_t> columns;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == date_col) continue;
        if (header[c].empty()) throw Error("missing header: column " + std::to_string(c + 1) + " is unnamed");
        series.push_back({std::string(header[c]), {}});
        columns.push_back(c);
    }
    if (series.empty()) throw Error("missing header: no value columns besides 'date'");
    if (lines.size() < 2) throw Error("no data rows");

    std::optional<Date> previous;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::vector<std::string_view> cells = split(lines[r], ',');
        if (cells.size() > header.size()) {
            throw Error("line " + std::to_string(r + 1) + " has more cells than the header");
        }
        if (date_col >= cells.size() || cells[date_col].empty()) {
            throw Error("missing date on line " + std::to_string(r + 1));
        }
        const std::string_view date_text = cells[date_col];
        const Date date = parse_iso_date(date_text);
        if (previous && date != add_days(*previous, 1)) {
            throw Error("non-contiguous dates: " + format_iso_date(*previous) + " is followed by " +
                        format_iso_date(date));
        }
        previous = date;
        for (std::size_t s = 0; s < series.size(); ++s) {
            const std::size_t c = columns[s];
            const std::string_view cell = c < cells.size() ? cells[c] : std::string_view{};
            series[s].entries.push_back({date, parse_count(cell, series[s].label, date_text)});
        }
    }
    return series;
}

std::vector<RawSeries> parse_csv(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_csv(std::string_view{text});
}

std::string write_csv(std::span<const RawSeries> series) {
    if (series.empty()) throw Error("nothing to write");
    const std::size_t rows = series.front().entries.size();
    std::string out = "date";
    for (const RawSeries& s : series) {
        if (s.entries.size() != rows) throw Error("series '" + s.label + "' has a different length");
        out += ',';
        out += s.label;
    }
    out += '\n';
    char buf[32];
    for (std::size_t r = 0; r < rows; ++r) {
        const Date date = series.front().entries[r].date;
        out += format_iso_date(date);
        for (const RawSeries& s : series) {
            if (s.entries[r].date != date) throw Error("series '" + s.label + "' has a different date axis");
            std::snprintf(buf, sizeof buf, "%.17g", s.entries[r].value);
            out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

SmoothedSeries moving_average_7(const RawSeries& raw) {
    constexpr auto window = static_cast<std::size_t>(SmoothedSeries::kWindow);
    if (raw.entries.size() < window) {
        throw Error("7-day moving average needs at least 7 days, series '" + raw.label + "' has " +
                    std::to_string(raw.entries.size()));
    }
    SmoothedSeries out;
    out.label = raw.label;
    out.entries.reserve(raw.entries.size() - window + 1);
    for (std::size_t j = 0; j + window <= raw.entries.size(); ++j) {
        double sum = 0.0;
        for (std::size_t m = j; m < j + window; ++m) sum += raw.entries[m].value;
        out.entries.push_back({raw.entries[j + SmoothedSeries::kHalfWindow].date, sum / window});
    }
    return out;
}

WindowSpec raw_coverage(const WindowSpec& window) {
    return {window.country, add_days(window.begin, -SmoothedSeries::kHalfWindow),
            add_days(window.end, SmoothedSeries::kHalfWindow)};
}

SmoothedSeries extract_window(const SmoothedSeries& smoothed, const WindowSpec& window) {
    if (window.end < window.begin) {
        throw Error("window end " + format_iso_date(window.end) + " precedes begin " +
                    format_iso_date(window.begin));
    }
    const WindowSpec raw = raw_coverage(window);
    const std::string needed = "window " + format_iso_date(window.begin) + ".." +
                               format_iso_date(window.end) + " needs raw data " +
                               format_iso_date(raw.begin) + ".." + format_iso_date(raw.end);
    if (smoothed.entries.empty()) throw Error(needed + " but the series is empty");

    const Date first = smoothed.entries.front().date;
    const Date last = smoothed.entries.back().date;
    const long short_start = (first - window.begin).count();
    const long short_end = (window.end - last).count();
    if (short_start > 0 || short_end > 0) {
        std::string msg = needed + "; '" + smoothed.label + "' is short by";
        if (short_start > 0) msg += " " + std::to_string(short_start) + " day(s) at the start";
        if (short_start > 0 && short_end > 0) msg += " and";
        if (short_end > 0) msg += " " + std::to_string(short_end) + " day(s) at the end";
        throw Error(msg);
    }

    const auto offset = static_cast<std::size_t>((window.begin - first).count());
    const auto count = static_cast<std::size_t>(window.days());
    SmoothedSeries out;
    out.label = smoothed.label;
    out.entries.assign(smoothed.entries.begin() + static_cast<std::ptrdiff_t>(offset),
                       smoothed.entries.begin() + static_cast<std::ptrdiff_t>(offset + count));
    return out;
}

HistogramDistribution histogram(const SmoothedSeries& smoothed) {
    if (smoothed.entries.empty()) throw Error("histogram of an empty window");
    double total = 0.0;
    for (const DailyValue& e : smoothed.entries) total += e.value;
    if (!(total > 0.0)) throw Error("zero total in window of '" + smoothed.label + "'");

    HistogramDistribution h;
    h.start_date = smoothed.entries.front().date;
    h.f.reserve(smoothed.entries.size());
    for (const DailyValue& e : smoothed.entries) h.f.push_back(e.value / total);
    return h;
}

std::vector<WindowSpec> parse_presets(std::string_view text) {
    const std::vector<std::string_view> lines = lines_of(text);
    if (lines.empty()) throw Error("preset file is empty");
    const std::vector<std::string_view> header = split(lines.front(), ',');
    if (header.size() != 3 || !iequals(header[0], "country") || !iequals(header[1], "begin") ||
        !iequals(header[2], "end")) {
        throw Error("preset file header must be 'country,begin,end'");
    }
    std::vector<WindowSpec> presets;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::vector<std::string_view> cells = split(lines[r], ',');
        if (cells.size() != 3 || cells[0].empty()) {
            throw Error("preset line " + std::to_string(r + 1) + " must have country,begin,end");
        }
        WindowSpec w{std::string(cells[0]), parse_iso_date(cells[1]), parse_iso_date(cells[2])};
        if (w.end < w.begin) throw Error("preset '" + w.country + "' ends before it begins");
        presets.push_back(std::move(w));
    }
    return presets;
}

std::optional<WindowSpec> find_preset(std::span<const WindowSpec> presets, std::string_view country) {
    for (const WindowSpec& w : presets) {
        if (iequals(w.country, country)) return w;
    }
    return std::nullopt;
}

}  // namespace quasifit
