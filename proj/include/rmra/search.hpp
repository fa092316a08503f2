#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rmra/array.hpp"
#include "rmra/combinatorics.hpp"
#include "rmra/errors.hpp"

namespace rmra {

/// Sensors pinned before enumeration: a ULA prefix 0..prefix-1 and a ULA
/// suffix L-suffix+1..L.
struct Fixation {
    enum class Kind { endpoints_only, standard, custom };

    Kind kind = Kind::endpoints_only;
    int prefix = 1;
    int suffix = 1;

    /// {0, L}
    static constexpr Fixation endpoints_only() { return {Kind::endpoints_only, 1, 1}; }
    /// {0, 1, 2, L-1, L}
    static constexpr Fixation standard() { return {Kind::standard, 3, 2}; }
    static constexpr Fixation custom(int first, int last) { return {Kind::custom, first, last}; }

    /// "endpoints", "standard" or "custom(first=4,last=3)".
    [[nodiscard]] std::string label() const;

    friend bool operator==(const Fixation&, const Fixation&) = default;
};

/// Parses a Fixation::label() string back.
Fixation parse_fixation(const std::string& label);

struct SearchProgress {
    int aperture = 0;
    Count evaluated = 0;   ///< candidates finished in the current stage
    Count stage_size = 0;
    Count valid = 0;       ///< valid arrays found so far in the stage
    double rate = 0.0;     ///< candidates per second
};

inline constexpr Count kDefaultStageBudget = 2'000'000'000ULL;

struct SearchConfig {
    int n = 0;
    Fixation fixation = Fixation::standard();
    /// Stop a stage once this many valid arrays are known (lexicographically first).
    std::optional<Count> early_stop;
    /// Extra stages scanned after the first exhaustively empty one.
    int persist_stages = 0;
    /// First aperture to try; defaults to n.
    std::optional<int> l_start;
    unsigned workers = 1;
    /// Largest stage (in candidates) the engine will attempt.
    Count budget = kDefaultStageBudget;

    /// Resumable state file, read on start and rewritten as ranks complete.
    std::optional<std::filesystem::path> checkpoint;
    std::function<void(const SearchProgress&)> on_progress;
    std::chrono::milliseconds progress_interval{1000};
};

/// Throws InvalidConfig when the configuration cannot describe a search.
void validate_config(const SearchConfig& cfg);

struct StageResult {
    int aperture = 0;
    Count search_space = 0;          ///< candidates in the stage
    Count candidates_evaluated = 0;  ///< == search_space unless truncated
    bool truncated = false;          ///< early_stop ended the stage
    bool infeasible = false;         ///< fixed sensors leave no room for the rest
    std::vector<SensorArray> valid_arrays;  ///< ascending lexicographic order
    std::chrono::duration<double> elapsed{0};

    /// Exhaustive with no valid array.
    [[nodiscard]] bool exhaustively_empty() const noexcept {
        return valid_arrays.empty() && !truncated;
    }
};

enum class Optimality { proven, frontier };

std::string to_string(Optimality o);

struct SearchOutcome {
    int n = 0;
    Fixation fixation;
    std::vector<StageResult> stages;
    int optimal_aperture = 0;  ///< 0 when no stage produced a valid array
    std::vector<SensorArray> optimal_arrays;
    Optimality optimality = Optimality::frontier;
};

/// Raised when a stage is larger than SearchConfig::budget; carries the
/// stages finished so far (optimality = frontier).
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, SearchOutcome partial)
        : Error(what), partial_(std::move(partial)) {}
    [[nodiscard]] const SearchOutcome& partial() const noexcept { return partial_; }

private:
    SearchOutcome partial_;
};

/// Candidates in stage L: C(free slots, free sensors), 0 when infeasible.
Count search_space_size(const SearchConfig& cfg, int aperture);

/// Enumerates every placement of the free sensors at aperture L and keeps
/// the TFRSAs. Output is independent of cfg.workers.
StageResult search_stage(const SearchConfig& cfg, int aperture);

/// Sweeps L upward until an exhaustive stage is empty (plus persist_stages).
/// Requires early_stop unset.
SearchOutcome find_optimal(const SearchConfig& cfg);

/// Same sweep with early_stop and/or custom fixation; always frontier.
SearchOutcome find_near_optimal(const SearchConfig& cfg);

}  // namespace rmra
