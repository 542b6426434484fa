/*
 * Copyright 2026 The randepth Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "randepth/csv.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "randepth/error.h"

namespace randepth {
namespace {

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void StripCarriageReturn(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::string FormatReal(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

double ParseReal(const std::string& field) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw IoError("malformed real value '" + field + "'");
  }
  return value;
}

Dataset ReadCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("CSV is empty (no header)");
  StripCarriageReturn(line);
  std::vector<std::string> header = SplitFields(line);
  if (header.size() < 2) {
    throw IoError("CSV header needs at least one feature and a target");
  }
  const std::size_t p = header.size() - 1;
  header.pop_back();

  std::vector<double> features;
  std::vector<double> target;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitFields(line);
    if (fields.size() != p + 1) {
      throw IoError("CSV line " + std::to_string(line_no) + ": expected " +
                    std::to_string(p + 1) + " fields, got " +
                    std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < p; ++j) features.push_back(ParseReal(fields[j]));
    target.push_back(ParseReal(fields[p]));
  }
  if (target.empty()) throw IoError("CSV has no data rows");
  const std::size_t n = target.size();
  try {
    return Dataset(n, p, features, std::move(target),
                   std::move(header));
  } catch (const ContractViolation& e) {
    throw IoError(std::string("invalid CSV dataset: ") + e.what());
  }
}

Dataset ReadCsvFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return ReadCsv(in);
}

void WriteCsv(const Dataset& data, std::ostream& out) {
  for (const auto& name : data.column_names()) out << name << ',';
  out << "y\n";
  for (std::size_t i = 0; i < data.num_rows(); ++i) {
    for (std::size_t j = 0; j < data.num_features(); ++j) {
      out << FormatReal(data.feature(i, j)) << ',';
    }
    out << FormatReal(data.target()[i]) << '\n';
  }
}

void WriteCsvFile(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  WriteCsv(data, out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace randepth
