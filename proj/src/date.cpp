#include "quasifit/date.hpp"

#include <charconv>
#include <cstdio>

#include "quasifit/error.hpp"

namespace quasifit {

namespace {

int parse_digits(std::string_view text, std::string_view field, std::string_view whole) {
    int value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw Error("malformed date '" + std::string(whole) + "': bad " + std::string(field));
    }
    return value;
}

}  // namespace

Date parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw Error("malformed date '" + std::string(text) + "': expected YYYY-MM-DD");
    }
    const int y = parse_digits(text.substr(0, 4), "year", text);
    const int m = parse_digits(text.substr(5, 2), "month", text);
    const int d = parse_digits(text.substr(8, 2), "day", text);
    const std::chrono::year_month_day ymd{std::chrono::year{y},
                                          std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        throw Error("malformed date '" + std::string(text) + "': no such calendar day");
    }
    return Date{ymd};
}

std::string format_iso_date(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

long inclusive_days(Date begin, Date end) {
    const long span = (end - begin).count();
    return span < 0 ? 0 : span + 1;
}

}  // namespace quasifit
