// Copyright 2026 The roadwx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "roadwx/time.hpp"

#include <cctype>
#include <cstdio>

#include "roadwx/errors.hpp"

namespace roadwx {

namespace {

int digits(std::string_view s, std::size_t pos, std::size_t n, std::string_view text) {
  if (pos + n > s.size()) throw InvalidInput("truncated timestamp '" + std::string(text) + "'");
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw InvalidInput("bad timestamp '" + std::string(text) + "'");
    }
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

void expect(std::string_view s, std::size_t pos, char c, std::string_view text) {
  if (pos >= s.size() || s[pos] != c) {
    throw InvalidInput("bad timestamp '" + std::string(text) + "'");
  }
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  const std::string_view s = text;
  const int y = digits(s, 0, 4, text);
  expect(s, 4, '-', text);
  const int mo = digits(s, 5, 2, text);
  expect(s, 7, '-', text);
  const int d = digits(s, 8, 2, text);
  if (s.size() <= 10 || (s[10] != 'T' && s[10] != ' ')) {
    throw InvalidInput("bad timestamp '" + std::string(text) + "'");
  }
  const int h = digits(s, 11, 2, text);
  expect(s, 13, ':', text);
  const int mi = digits(s, 14, 2, text);
  expect(s, 16, ':', text);
  const int se = digits(s, 17, 2, text);
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  int offset_minutes = 0;
  if (pos < s.size() && s[pos] == 'Z' && pos + 1 == s.size()) {
    // UTC
  } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    const int sign = s[pos] == '-' ? -1 : 1;
    const int oh = digits(s, pos + 1, 2, text);
    expect(s, pos + 3, ':', text);
    const int om = digits(s, pos + 4, 2, text);
    if (pos + 6 != s.size()) throw InvalidInput("bad timestamp '" + std::string(text) + "'");
    offset_minutes = sign * (oh * 60 + om);
  } else {
    throw InvalidInput("timestamp needs a UTC designator: '" + std::string(text) + "'");
  }

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || se > 60) {
    throw InvalidInput("timestamp out of range '" + std::string(text) + "'");
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{se} - minutes{offset_minutes};
}

std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02lldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<long>(hms.hours().count()),
                static_cast<long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()));
  return buf;
}

}  // namespace roadwx
