#include "rmra/checkpoint.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace rmra {

using json = nlohmann::ordered_json;

SearchCheckpoint SearchCheckpoint::for_config(const SearchConfig& cfg) {
    SearchCheckpoint cp;
    cp.n = cfg.n;
    cp.fixation = cfg.fixation;
    cp.early_stop = cfg.early_stop;
    return cp;
}

std::optional<SearchCheckpoint> SearchCheckpoint::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        const json doc = json::parse(in);
        SearchCheckpoint cp;
        cp.n = doc.at("n").get<int>();
        cp.fixation = parse_fixation(doc.at("fixation").get<std::string>());
        if (!doc.at("early_stop").is_null()) cp.early_stop = doc.at("early_stop").get<Count>();
        for (const auto& s : doc.at("stages")) {
            StageCheckpoint st;
            st.aperture = s.at("aperture").get<int>();
            st.next_rank = s.at("next_rank").get<Count>();
            st.complete = s.at("complete").get<bool>();
            st.truncated = s.at("truncated").get<bool>();
            st.candidates_evaluated = s.at("candidates_evaluated").get<Count>();
            st.valid = s.at("valid").get<std::vector<std::vector<int>>>();
            cp.stages.push_back(std::move(st));
        }
        return cp;
    } catch (const json::exception& e) {
        throw CheckpointError("cannot read checkpoint " + path.string() + ": " + e.what());
    } catch (const Error& e) {
        throw CheckpointError("cannot read checkpoint " + path.string() + ": " + e.what());
    }
}

void SearchCheckpoint::save(const std::filesystem::path& path) const {
    json doc;
    doc["n"] = n;
    doc["fixation"] = fixation.label();
    doc["early_stop"] = early_stop ? json(*early_stop) : json(nullptr);
    doc["stages"] = json::array();
    for (const auto& st : stages) {
        doc["stages"].push_back({{"aperture", st.aperture},
                                 {"next_rank", st.next_rank},
                                 {"complete", st.complete},
                                 {"truncated", st.truncated},
                                 {"candidates_evaluated", st.candidates_evaluated},
                                 {"valid", st.valid}});
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw CheckpointError("cannot write checkpoint " + tmp.string());
        out << doc.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

void SearchCheckpoint::require_matches(const SearchConfig& cfg) const {
    if (n != cfg.n || fixation != cfg.fixation || early_stop != cfg.early_stop) {
        throw CheckpointError("checkpoint belongs to a different search (n=" + std::to_string(n) +
                              ", fixation=" + fixation.label() + ")");
    }
}

StageCheckpoint* SearchCheckpoint::find(int aperture) {
    auto it = std::ranges::find(stages, aperture, &StageCheckpoint::aperture);
    return it == stages.end() ? nullptr : &*it;
}

StageCheckpoint& SearchCheckpoint::upsert(int aperture) {
    if (auto* st = find(aperture)) return *st;
    StageCheckpoint st;
    st.aperture = aperture;
    stages.push_back(std::move(st));
    std::ranges::sort(stages, {}, &StageCheckpoint::aperture);
    return *find(aperture);
}

}  // namespace rmra
