#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "rmra/combinatorics.hpp"
#include "rmra/search.hpp"

namespace rmra {

/// Progress of one aperture stage: ranks [0, next_rank) are done.
struct StageCheckpoint {
    int aperture = 0;
    Count next_rank = 0;
    bool complete = false;
    bool truncated = false;
    Count candidates_evaluated = 0;
    std::vector<std::vector<int>> valid;  ///< found so far, ascending
};

/// On-disk state of a resumable search. JSON document keyed by stage aperture.
struct SearchCheckpoint {
    int n = 0;
    Fixation fixation;
    std::optional<Count> early_stop;
    std::vector<StageCheckpoint> stages;

    /// Fresh checkpoint for `cfg`.
    static SearchCheckpoint for_config(const SearchConfig& cfg);
    /// nullopt when the file does not exist; CheckpointError when unreadable.
    static std::optional<SearchCheckpoint> load(const std::filesystem::path& path);
    /// Writes through a temporary file and rename.
    void save(const std::filesystem::path& path) const;

    /// CheckpointError if the file was written by a different search.
    void require_matches(const SearchConfig& cfg) const;

    [[nodiscard]] StageCheckpoint* find(int aperture);
    StageCheckpoint& upsert(int aperture);
};

}  // namespace rmra
