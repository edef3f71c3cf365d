/*
 * Copyright 2026 The Roadsense Authors
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

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace roadsense::io {

/// Numeric CSV writer; values print with enough digits to round-trip
/// bit-exactly.
class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

    void row(std::initializer_list<double> values);

  private:
    std::ofstream out_;
    std::size_t columns_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads a numeric CSV with a header row. Throws MalformedFile.
CsvTable read_numeric_csv(const std::filesystem::path& path);

}  // namespace roadsense::io
