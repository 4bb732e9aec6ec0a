/*
 * Copyright 2026 The rmtk authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmtk::io {

/// 17 significant digits: enough for an exact double round trip.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::invalid_argument("parse_double: not a number: " + s);
  return v;
}

/// Inclusive-of-lo grid lo, lo+step, ... up to hi with half-step endpoint fuzz.
inline std::vector<double> parse_grid(const std::string& s) {
  const auto c1 = s.find(':');
  const auto c2 = s.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("grid spec must be lo:hi:step");
  const double lo = parse_double(s.substr(0, c1));
  const double hi = parse_double(s.substr(c1 + 1, c2 - c1 - 1));
  const double step = parse_double(s.substr(c2 + 1));
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("grid spec must satisfy lo <= hi, step > 0");
  std::vector<double> xs;
  for (double x = lo; x < hi + 0.5 * step; x += step) xs.push_back(x);
  return xs;
}

inline std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(parse_double(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

/// A simple numeric table with preformatted cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size())
      throw std::invalid_argument("Table: row arity mismatch");
    rows.push_back(std::move(cells));
  }
};

inline void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? "," : "\n");
}

}  // namespace rmtk::io
