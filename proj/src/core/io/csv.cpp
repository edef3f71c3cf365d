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

#include "core/io/csv.hpp"

#include <sstream>

#include "core/errors.hpp"

namespace roadsense::io {

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : out_(path), columns_(header.size()) {
    if (!out_) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    out_.precision(17);
    for (std::size_t i = 0; i < header.size(); ++i) {
        out_ << header[i] << (i + 1 < header.size() ? "," : "\n");
    }
}

void CsvWriter::row(std::initializer_list<double> values) {
    if (values.size() != columns_) {
        throw Error(ErrorCode::DimensionMismatch, "csv row width differs from header");
    }
    std::size_t i = 0;
    for (double v : values) {
        out_ << v << (++i < columns_ ? "," : "\n");
    }
}

CsvTable read_numeric_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MalformedFile, "cannot open " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::MalformedFile, "empty " + path.string());
    std::stringstream head(line);
    std::string cell;
    while (std::getline(head, cell, ',')) table.header.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::vector<double> values;
        while (std::getline(row, cell, ',')) {
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw Error(ErrorCode::MalformedFile,
                            "non-numeric cell '" + cell + "' in " + path.string());
            }
        }
        if (values.size() != table.header.size()) {
            throw Error(ErrorCode::MalformedFile, "ragged row in " + path.string());
        }
        table.rows.push_back(std::move(values));
    }
    return table;
}

}  // namespace roadsense::io
