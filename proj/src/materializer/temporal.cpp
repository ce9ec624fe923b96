#include <chrono>
#include <cctype>

#include "sml/materializer/materializer.h"

namespace sml::materializer {

namespace {

std::optional<unsigned> digits(std::string_view s, std::size_t pos, std::size_t n) {
  if (pos + n > s.size()) return std::nullopt;
  unsigned v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    v = v * 10 + static_cast<unsigned>(s[i] - '0');
  }
  return v;
}

}  // namespace

std::optional<LocalTime> parse_timestamp(std::string_view s) {
  if (s.size() < 19 || s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' || s[16] != ':') {
    return std::nullopt;
  }
  auto y = digits(s, 0, 4), mo = digits(s, 5, 2), d = digits(s, 8, 2);
  auto h = digits(s, 11, 2), mi = digits(s, 14, 2), se = digits(s, 17, 2);
  if (!y || !mo || !d || !h || !mi || !se) return std::nullopt;
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year(static_cast<int>(*y)), std::chrono::month(*mo),
                                  std::chrono::day(*d)};
  if (!ymd.ok() || *h > 23 || *mi > 59 || *se > 60) return std::nullopt;
  return LocalTime{static_cast<int>(*y), *mo, *d, *h, *mi, *se};
}

std::optional<std::string> extract_weekday(std::string_view timestamp) {
  static constexpr const char* kNames[] = {"Sunday", "Monday", "Tuesday", "Wednesday",
                                           "Thursday", "Friday", "Saturday"};
  auto t = parse_timestamp(timestamp);
  if (!t) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year(t->year), std::chrono::month(t->month), std::chrono::day(t->day)};
  std::chrono::weekday wd{std::chrono::sys_days(ymd)};
  return std::string(kNames[wd.c_encoding()]);
}

std::optional<int> extract_hour(std::string_view timestamp) {
  auto t = parse_timestamp(timestamp);
  if (!t) return std::nullopt;
  return static_cast<int>(t->hour);
}

}  // namespace sml::materializer
