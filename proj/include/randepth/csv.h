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

#ifndef RANDEPTH_CSV_H_
#define RANDEPTH_CSV_H_

#include <iosfwd>
#include <string>

#include "randepth/dataset.h"

namespace randepth {

// Dataset CSV: header `x1,...,xp,y`, one observation per row, reals written
// with 17 significant digits so a write/read cycle is bit-exact. The last
// column is always the target.
Dataset ReadCsv(std::istream& in);
Dataset ReadCsvFile(const std::string& path);
void WriteCsv(const Dataset& data, std::ostream& out);
void WriteCsvFile(const Dataset& data, const std::string& path);

// Formats a double with 17 significant digits.
std::string FormatReal(double value);
// Parses a full-field real; throws IoError on garbage.
double ParseReal(const std::string& field);

}  // namespace randepth

#endif  // RANDEPTH_CSV_H_
