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
#include <optional>
#include <vector>

#include "core/ilc/learning.hpp"

namespace roadsense::fleet {

/// File-backed store of the records agents publish for their successors.
/// One JSON file per cascade position, content-checksummed, immutable once
/// written.
class RecordStore {
  public:
    explicit RecordStore(std::filesystem::path directory);

    const std::filesystem::path& directory() const { return directory_; }

    /// Writes agent_<position>.json. Throws IoError when the record already
    /// exists (records are immutable) or the directory is not writable.
    void put(const ilc::SharedRecord& record);

    /// Loads the record at a cascade position; nullopt when absent.
    /// Throws CorruptRecord on checksum mismatch.
    std::optional<ilc::SharedRecord> get(int position) const;

    /// Record of the predecessor of `position`; nullopt for the first slot.
    /// Throws MissingRecord when a non-first predecessor is absent.
    std::optional<ilc::SharedRecord> predecessor(int position) const;

    /// Stored positions in cascade order.
    std::vector<int> list() const;

  private:
    std::filesystem::path path_for(int position) const;

    std::filesystem::path directory_;
};

}  // namespace roadsense::fleet
