#include "rmra/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <regex>
#include <stdexcept>
#include <thread>

#include "rmra/checkpoint.hpp"
#include "rmra/robustness.hpp"

namespace rmra {

std::string Fixation::label() const {
    switch (kind) {
        case Kind::endpoints_only: return "endpoints";
        case Kind::standard: return "standard";
        case Kind::custom:
            return "custom(first=" + std::to_string(prefix) + ",last=" + std::to_string(suffix) + ")";
    }
    return "custom";
}

Fixation parse_fixation(const std::string& label) {
    if (label == "endpoints") return Fixation::endpoints_only();
    if (label == "standard") return Fixation::standard();
    static const std::regex custom(R"(custom\(first=(\d+),last=(\d+)\))");
    std::smatch m;
    if (std::regex_match(label, m, custom)) {
        return Fixation::custom(std::stoi(m[1].str()), std::stoi(m[2].str()));
    }
    throw InvalidConfig("unknown fixation '" + label + "'");
}

std::string to_string(Optimality o) { return o == Optimality::proven ? "proven" : "frontier"; }

void validate_config(const SearchConfig& cfg) {
    auto fail = [](const std::string& why) { throw InvalidConfig(why); };
    if (cfg.n < 6) fail("search needs n >= 6");
    const auto& fx = cfg.fixation;
    if (fx.prefix < 1 || fx.suffix < 1) fail("fixation must pin both endpoints (first, last >= 1)");
    if (fx.prefix + fx.suffix >= cfg.n) fail("fixed sensors must leave at least one free sensor");
    if (fx.kind == Fixation::Kind::endpoints_only && (fx.prefix != 1 || fx.suffix != 1))
        fail("endpoints fixation pins exactly {0, L}");
    if (fx.kind == Fixation::Kind::standard && (fx.prefix != 3 || fx.suffix != 2))
        fail("standard fixation pins exactly {0, 1, 2, L-1, L}");
    if (cfg.workers < 1) fail("workers must be >= 1");
    if (cfg.early_stop && *cfg.early_stop == 0) fail("early stop must be >= 1");
    if (cfg.persist_stages < 0) fail("persist stages must be >= 0");
    if (cfg.l_start && *cfg.l_start < 2) fail("start aperture must be >= 2");
}

namespace {

struct StageLayout {
    Universe free_slots;
    int free_sensors = 0;
    bool feasible = false;
};

StageLayout layout(const SearchConfig& cfg, int L) {
    const auto& fx = cfg.fixation;
    StageLayout s;
    s.free_slots = {fx.prefix, L - fx.suffix};
    s.free_sensors = cfg.n - fx.prefix - fx.suffix;
    // Prefix 0..prefix-1 and suffix L-suffix+1..L must stay disjoint.
    s.feasible = L >= cfg.n - 1 && fx.prefix <= L - fx.suffix + 1 && s.free_sensors >= 0 &&
                 s.free_slots.size() >= s.free_sensors;
    return s;
}

struct Found {
    Count rank;
    std::vector<int> positions;
};

struct ChunkSlot {
    bool done = false;
    std::vector<Found> found;
};

// Candidate = fixed prefix + interior subset + fixed suffix, rebuilt in place.
class CandidateBuffer {
public:
    CandidateBuffer(const SearchConfig& cfg, int L)
        : prefix_(cfg.fixation.prefix), buf_(static_cast<std::size_t>(cfg.n)) {
        for (int i = 0; i < prefix_; ++i) buf_[static_cast<std::size_t>(i)] = i;
        const int suffix = cfg.fixation.suffix;
        for (int i = 0; i < suffix; ++i) {
            buf_[static_cast<std::size_t>(cfg.n - suffix + i)] = L - suffix + 1 + i;
        }
    }
    std::span<const int> assemble(std::span<const int> interior) {
        std::ranges::copy(interior, buf_.begin() + prefix_);
        return buf_;
    }

private:
    int prefix_;
    std::vector<int> buf_;
};

void verify_accepted(const SensorArray& a) {
    const auto report = assess(a, AssessMode::full);
    const std::vector<int> endpoints{0, a.aperture()};
    if (!report.is_tfrsa || report.essential != endpoints) {
        throw std::logic_error("search accepted " + a.to_string() +
                               " but full assessment disagrees");
    }
}

StageResult run_stage(const SearchConfig& cfg, int L, StageCheckpoint* resume,
                      SearchCheckpoint* checkpoint) {
    using Clock = std::chrono::steady_clock;
    const auto started = Clock::now();

    StageResult result;
    result.aperture = L;
    const auto lay = layout(cfg, L);
    if (!lay.feasible) {
        result.infeasible = true;
        return result;
    }
    result.search_space = binomial(lay.free_slots.size(), lay.free_sensors);

    const Count base = resume ? resume->next_rank : 0;
    std::vector<std::vector<int>> accepted;
    if (resume) accepted = resume->valid;

    const Count remaining = result.search_space - std::min(base, result.search_space);
    const unsigned workers = std::max(1u, cfg.workers);
    const Count chunk = std::clamp<Count>(remaining / (Count{workers} * 64), 4096, Count{1} << 20);
    const Count num_chunks = (remaining + chunk - 1) / chunk;

    std::vector<ChunkSlot> slots(static_cast<std::size_t>(num_chunks));
    std::atomic<Count> next_chunk{0};
    std::atomic<bool> stop{cfg.early_stop && accepted.size() >= *cfg.early_stop};
    std::mutex mu;
    Count prefix_chunks = 0;     // chunks [0, prefix_chunks) merged into `accepted`
    std::optional<Count> cutoff_rank;  // rank of the early_stop-th valid array
    auto last_report = started;

    auto merge_prefix = [&] {
        while (prefix_chunks < num_chunks && slots[static_cast<std::size_t>(prefix_chunks)].done) {
            auto& slot = slots[static_cast<std::size_t>(prefix_chunks)];
            for (auto& f : slot.found) {
                if (cutoff_rank) break;
                accepted.push_back(std::move(f.positions));
                if (cfg.early_stop && accepted.size() >= *cfg.early_stop) {
                    cutoff_rank = f.rank;
                    stop = true;
                }
            }
            slot.found.clear();
            slot.found.shrink_to_fit();
            ++prefix_chunks;
        }
    };

    auto finished_rank = [&] {
        return std::min(result.search_space, base + prefix_chunks * chunk);
    };

    auto report = [&](bool force) {
        const auto now = Clock::now();
        if (!force && now - last_report < cfg.progress_interval) return;
        last_report = now;
        const Count done = finished_rank();
        if (checkpoint && cfg.checkpoint && !cutoff_rank) {
            auto& st = checkpoint->upsert(L);
            st.next_rank = done;
            st.valid = accepted;
            checkpoint->save(*cfg.checkpoint);
        }
        if (cfg.on_progress) {
            const double secs = std::chrono::duration<double>(now - started).count();
            cfg.on_progress({L, done, result.search_space, static_cast<Count>(accepted.size()),
                             secs > 0 ? static_cast<double>(done - base) / secs : 0.0});
        }
    };

    auto work = [&] {
        CandidateBuffer candidate(cfg, L);
        for (;;) {
            if (stop.load(std::memory_order_relaxed)) return;
            const Count c = next_chunk.fetch_add(1);
            if (c >= num_chunks) return;
            const Count first = base + c * chunk;
            const Count last = std::min(result.search_space, first + chunk);
            std::vector<Found> found;
            CombinationCursor cursor(lay.free_slots, lay.free_sensors, first);
            for (Count r = first; r < last; ++r, cursor.advance()) {
                const auto positions = candidate.assemble(cursor.current());
                if (is_tfrsa(positions)) found.push_back({r, {positions.begin(), positions.end()}});
                if ((r & 0xFFF) == 0 && stop.load(std::memory_order_relaxed)) return;
            }
            std::lock_guard lock(mu);
            slots[static_cast<std::size_t>(c)] = {true, std::move(found)};
            merge_prefix();
            report(false);
        }
    };

    if (!stop) {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
        work();
    }  // pool joins here

    {
        std::lock_guard lock(mu);
        merge_prefix();
        if (cutoff_rank) {
            result.candidates_evaluated = *cutoff_rank + 1;
        } else if (cfg.early_stop && accepted.size() >= *cfg.early_stop) {
            // Limit already reached when the stage was resumed.
            result.candidates_evaluated = resume ? resume->candidates_evaluated : base;
        } else {
            result.candidates_evaluated = result.search_space;
        }
        result.truncated = result.candidates_evaluated < result.search_space;
    }

    result.valid_arrays.reserve(accepted.size());
    for (auto& p : accepted) {
        result.valid_arrays.push_back(SensorArray::from_normalized(std::move(p)));
        verify_accepted(result.valid_arrays.back());
    }
    result.elapsed = Clock::now() - started;

    if (checkpoint && cfg.checkpoint) {
        auto& st = checkpoint->upsert(L);
        st.next_rank = result.candidates_evaluated;
        st.complete = true;
        st.truncated = result.truncated;
        st.candidates_evaluated = result.candidates_evaluated;
        st.valid.clear();
        for (const auto& a : result.valid_arrays) st.valid.push_back(a.vec());
        checkpoint->save(*cfg.checkpoint);
    }
    if (cfg.on_progress) {
        const double secs = result.elapsed.count();
        cfg.on_progress({L, result.candidates_evaluated, result.search_space,
                         static_cast<Count>(result.valid_arrays.size()),
                         secs > 0 ? static_cast<double>(result.candidates_evaluated - base) / secs
                                  : 0.0});
    }
    return result;
}

StageResult from_checkpoint(const SearchConfig& cfg, const StageCheckpoint& st) {
    StageResult r;
    r.aperture = st.aperture;
    r.search_space = search_space_size(cfg, st.aperture);
    r.infeasible = !layout(cfg, st.aperture).feasible;
    r.candidates_evaluated = st.candidates_evaluated;
    r.truncated = st.truncated;
    for (const auto& p : st.valid) r.valid_arrays.push_back(SensorArray(p));
    return r;
}

void summarize(SearchOutcome& out) {
    out.optimal_aperture = 0;
    out.optimal_arrays.clear();
    for (const auto& st : out.stages) {
        if (!st.valid_arrays.empty() && st.aperture > out.optimal_aperture) {
            out.optimal_aperture = st.aperture;
            out.optimal_arrays = st.valid_arrays;
        }
    }
}

SearchOutcome sweep(const SearchConfig& cfg, bool exhaustive) {
    validate_config(cfg);

    std::optional<SearchCheckpoint> checkpoint;
    if (cfg.checkpoint) {
        checkpoint = SearchCheckpoint::load(*cfg.checkpoint);
        if (checkpoint) {
            checkpoint->require_matches(cfg);
        } else {
            checkpoint = SearchCheckpoint::for_config(cfg);
        }
    }

    SearchOutcome out;
    out.n = cfg.n;
    out.fixation = cfg.fixation;
    int empty_streak = 0;
    for (int L = cfg.l_start.value_or(cfg.n);; ++L) {
        const Count size = search_space_size(cfg, L);
        StageCheckpoint* saved = checkpoint ? checkpoint->find(L) : nullptr;
        StageResult stage;
        if (saved && saved->complete) {
            stage = from_checkpoint(cfg, *saved);
        } else {
            if (size > cfg.budget) {
                summarize(out);
                out.optimality = Optimality::frontier;
                throw BudgetExceeded("stage L=" + std::to_string(L) + " has " +
                                         std::to_string(size) + " candidates, budget is " +
                                         std::to_string(cfg.budget),
                                     std::move(out));
            }
            stage = run_stage(cfg, L, saved, checkpoint ? &*checkpoint : nullptr);
        }
        const bool infeasible = stage.infeasible;
        const bool empty = stage.exhaustively_empty();
        out.stages.push_back(std::move(stage));
        if (infeasible) continue;
        if (empty) {
            if (++empty_streak > cfg.persist_stages) break;
        } else {
            empty_streak = 0;
        }
    }
    summarize(out);
    const bool provable = exhaustive && cfg.fixation.kind != Fixation::Kind::custom;
    out.optimality = provable ? Optimality::proven : Optimality::frontier;
    return out;
}

}  // namespace

Count search_space_size(const SearchConfig& cfg, int aperture) {
    const auto lay = layout(cfg, aperture);
    if (!lay.feasible) return 0;
    return binomial(lay.free_slots.size(), lay.free_sensors);
}

StageResult search_stage(const SearchConfig& cfg, int aperture) {
    validate_config(cfg);
    return run_stage(cfg, aperture, nullptr, nullptr);
}

SearchOutcome find_optimal(const SearchConfig& cfg) {
    if (cfg.early_stop) throw InvalidConfig("optimal search cannot use early stop");
    return sweep(cfg, true);
}

SearchOutcome find_near_optimal(const SearchConfig& cfg) { return sweep(cfg, false); }

}  // namespace rmra
