#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "rmra/checkpoint.hpp"
#include "rmra/search.hpp"

namespace fs = std::filesystem;
using rmra::Fixation;
using rmra::SearchConfig;

namespace {

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name)
        : path(fs::temp_directory_path() / ("rmra_test_" + name)) {
        fs::remove(path);
    }
    ~TempFile() { fs::remove(path); }
};

SearchConfig config11() {
    SearchConfig cfg;
    cfg.n = 11;
    cfg.fixation = Fixation::standard();
    return cfg;
}

void check_same(const rmra::SearchOutcome& a, const rmra::SearchOutcome& b) {
    CHECK(a.optimal_aperture == b.optimal_aperture);
    CHECK(a.optimal_arrays == b.optimal_arrays);
    REQUIRE(a.stages.size() == b.stages.size());
    for (std::size_t i = 0; i < a.stages.size(); ++i) {
        CHECK(a.stages[i].aperture == b.stages[i].aperture);
        CHECK(a.stages[i].candidates_evaluated == b.stages[i].candidates_evaluated);
        CHECK(a.stages[i].valid_arrays == b.stages[i].valid_arrays);
    }
}

struct Interrupted : std::runtime_error {
    Interrupted() : std::runtime_error("interrupted") {}
};

}  // namespace

TEST_CASE("checkpointed search matches a plain one and records every stage") {
    TempFile file("cp_full.json");
    const auto fresh = rmra::find_optimal(config11());
    auto cfg = config11();
    cfg.checkpoint = file.path;
    const auto checkpointed = rmra::find_optimal(cfg);
    check_same(fresh, checkpointed);

    const auto saved = rmra::SearchCheckpoint::load(file.path);
    REQUIRE(saved.has_value());
    CHECK(saved->stages.size() == 13);
    for (const auto& st : saved->stages) CHECK(st.complete);

    // A second run reuses the finished stages verbatim.
    const auto reused = rmra::find_optimal(cfg);
    check_same(fresh, reused);
    CHECK(reused.stages.back().elapsed.count() == 0.0);
}

TEST_CASE("interrupted search resumes from the last completed rank") {
    TempFile file("cp_resume.json");
    auto cfg = config11();
    cfg.checkpoint = file.path;
    cfg.progress_interval = std::chrono::milliseconds(0);
    cfg.on_progress = [](const rmra::SearchProgress& p) {
        if (p.aperture == 22 && p.evaluated >= 8192 && p.evaluated < p.stage_size) throw Interrupted();
    };
    CHECK_THROWS_AS(rmra::find_optimal(cfg), Interrupted);

    auto saved = rmra::SearchCheckpoint::load(file.path);
    REQUIRE(saved.has_value());
    auto* partial = saved->find(22);
    REQUIRE(partial != nullptr);
    CHECK_FALSE(partial->complete);
    CHECK(partial->next_rank >= 8192);
    CHECK(partial->next_rank < 18564);

    cfg.on_progress = nullptr;
    const auto resumed = rmra::find_optimal(cfg);
    check_same(rmra::find_optimal(config11()), resumed);
}

TEST_CASE("checkpoint from another search is refused") {
    TempFile file("cp_mismatch.json");
    auto other = config11();
    other.n = 10;
    rmra::SearchCheckpoint::for_config(other).save(file.path);
    auto cfg = config11();
    cfg.checkpoint = file.path;
    CHECK_THROWS_AS(rmra::find_optimal(cfg), rmra::CheckpointError);
}

TEST_CASE("corrupt checkpoint is reported") {
    TempFile file("cp_corrupt.json");
    {
        std::ofstream out(file.path);
        out << "{\"n\": 11";
    }
    CHECK_THROWS_AS(rmra::SearchCheckpoint::load(file.path), rmra::CheckpointError);
    CHECK_FALSE(rmra::SearchCheckpoint::load(file.path.string() + ".absent").has_value());
}
