#include "rmra/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rmra {

using json = nlohmann::ordered_json;

std::string to_string(Generator g) {
    switch (g) {
        case Generator::search_optimal: return "search-optimal";
        case Generator::search_near_optimal: return "search-near-optimal";
        case Generator::cfe: return "cfe";
        case Generator::external: return "external";
    }
    return "external";
}

std::string to_string(RecordOptimality o) {
    switch (o) {
        case RecordOptimality::proven: return "proven";
        case RecordOptimality::frontier: return "frontier";
        case RecordOptimality::not_applicable: return "n/a";
    }
    return "n/a";
}

Generator parse_generator(const std::string& s) {
    for (auto g : {Generator::search_optimal, Generator::search_near_optimal, Generator::cfe,
                   Generator::external}) {
        if (to_string(g) == s) return g;
    }
    throw CatalogError("unknown generator '" + s + "'");
}

RecordOptimality parse_record_optimality(const std::string& s) {
    for (auto o : {RecordOptimality::proven, RecordOptimality::frontier,
                   RecordOptimality::not_applicable}) {
        if (to_string(o) == s) return o;
    }
    throw CatalogError("unknown optimality '" + s + "'");
}

SensorArray canonicalize(const SensorArray& a) {
    auto m = a.mirror();
    return m < a ? m : a;
}

namespace {

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

CatalogRecord CatalogRecord::describe(const SensorArray& a, Generator generator,
                                      RecordOptimality optimality,
                                      std::optional<std::string> fixation) {
    CatalogRecord r;
    r.n = a.size();
    r.aperture = a.aperture();
    r.positions = a.vec();
    r.generator = generator;
    r.optimality = optimality;
    r.fixation = std::move(fixation);
    r.canonical = canonicalize(a) == a;
    r.created_at = utc_now();
    r.tool_version = RMRA_VERSION;
    return r;
}

std::string to_jsonl(const CatalogRecord& r) {
    json j;
    j["n"] = r.n;
    j["aperture"] = r.aperture;
    j["positions"] = r.positions;
    j["generator"] = to_string(r.generator);
    j["optimality"] = to_string(r.optimality);
    j["fixation"] = r.fixation ? json(*r.fixation) : json(nullptr);
    j["canonical"] = r.canonical;
    j["created_at"] = r.created_at;
    j["tool_version"] = r.tool_version;
    return j.dump();
}

CatalogRecord from_jsonl(const std::string& line) {
    try {
        const json j = json::parse(line);
        CatalogRecord r;
        r.n = j.at("n").get<int>();
        r.aperture = j.at("aperture").get<int>();
        r.positions = j.at("positions").get<std::vector<int>>();
        r.generator = parse_generator(j.at("generator").get<std::string>());
        r.optimality = parse_record_optimality(j.at("optimality").get<std::string>());
        if (!j.at("fixation").is_null()) r.fixation = j.at("fixation").get<std::string>();
        r.canonical = j.at("canonical").get<bool>();
        r.created_at = j.at("created_at").get<std::string>();
        r.tool_version = j.at("tool_version").get<std::string>();
        return r;
    } catch (const json::exception& e) {
        throw CatalogError(std::string("malformed catalog record: ") + e.what());
    }
}

CatalogQuery CatalogQuery::parse(const std::string& text) {
    CatalogQuery q;
    std::istringstream in(text);
    std::string term;
    while (std::getline(in, term, ',')) {
        std::erase(term, ' ');
        if (term.empty()) continue;
        const auto eq = term.find('=');
        if (eq == std::string::npos) throw CatalogError("query term '" + term + "' lacks '='");
        const std::string key = term.substr(0, eq);
        const std::string value = term.substr(eq + 1);
        try {
            if (key == "n") {
                q.n = std::stoi(value);
            } else if (key == "aperture") {
                const auto colon = value.find(':');
                if (colon == std::string::npos) {
                    q.aperture_lo = q.aperture_hi = std::stoi(value);
                } else {
                    if (colon > 0) q.aperture_lo = std::stoi(value.substr(0, colon));
                    if (colon + 1 < value.size()) q.aperture_hi = std::stoi(value.substr(colon + 1));
                }
            } else if (key == "generator") {
                q.generator = parse_generator(value);
            } else {
                throw CatalogError("unknown query key '" + key + "'");
            }
        } catch (const std::logic_error&) {
            throw CatalogError("bad value in query term '" + term + "'");
        }
    }
    return q;
}

bool CatalogQuery::matches(const CatalogRecord& r) const {
    if (n && r.n != *n) return false;
    if (aperture_lo && r.aperture < *aperture_lo) return false;
    if (aperture_hi && r.aperture > *aperture_hi) return false;
    if (generator && r.generator != *generator) return false;
    return true;
}

Catalog::Catalog(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(*path_);
    if (!in) return;
    std::string line;
    std::size_t lineno = 0;
    bool duplicates = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            duplicates |= !insert_locked(from_jsonl(line), false);
        } catch (const Error& e) {
            throw CatalogError(path_->string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    in.close();
    if (duplicates) compact();
}

bool Catalog::insert(CatalogRecord record) {
    std::lock_guard lock(mu_);
    return insert_locked(std::move(record), true);
}

bool Catalog::insert_locked(CatalogRecord record, bool append) {
    const SensorArray a(record.positions);
    if (a.vec() != record.positions) {
        throw CatalogError("positions must be sorted, distinct and start at 0");
    }
    auto report = assess(a, AssessMode::full);
    if (!report.is_tfrsa) {
        throw RejectedRecord(a.to_string() + " is not a two-fold redundant sparse array",
                             std::move(report));
    }
    record.n = a.size();
    record.aperture = a.aperture();
    const auto canon = canonicalize(a);
    record.canonical = canon == a;

    std::pair<int, std::vector<int>> key{record.n, canon.vec()};
    auto it = std::ranges::lower_bound(keys_, key);
    if (it != keys_.end() && *it == key) return false;
    keys_.insert(it, std::move(key));

    if (append && path_) {
        std::ofstream out(*path_, std::ios::app);
        if (!out) throw CatalogError("cannot append to " + path_->string());
        out << to_jsonl(record) << '\n';
    }
    records_.push_back(std::move(record));
    return true;
}

std::vector<CatalogRecord> Catalog::query(const CatalogQuery& q) const {
    std::lock_guard lock(mu_);
    std::vector<CatalogRecord> out;
    std::ranges::copy_if(records_, std::back_inserter(out), [&](const auto& r) { return q.matches(r); });
    return out;
}

std::vector<CatalogRecord> Catalog::records() const {
    std::lock_guard lock(mu_);
    return records_;
}

std::size_t Catalog::size() const {
    std::lock_guard lock(mu_);
    return records_.size();
}

void Catalog::export_to(std::ostream& os, ExportFormat format, const CatalogQuery& q) const {
    const auto rows = query(q);
    if (format == ExportFormat::jsonl) {
        for (const auto& r : rows) os << to_jsonl(r) << '\n';
        return;
    }
    os << "n,aperture,positions,generator,optimality,fixation,canonical,created_at,tool_version\n";
    for (const auto& r : rows) {
        std::string pos;
        for (std::size_t i = 0; i < r.positions.size(); ++i) {
            if (i) pos += ' ';
            pos += std::to_string(r.positions[i]);
        }
        os << r.n << ',' << r.aperture << ',' << csv_quote(pos) << ',' << to_string(r.generator)
           << ',' << to_string(r.optimality) << ',' << csv_quote(r.fixation.value_or("")) << ','
           << (r.canonical ? "true" : "false") << ',' << r.created_at << ',' << r.tool_version
           << '\n';
    }
}

std::size_t Catalog::import_from(std::istream& is) {
    std::size_t added = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (insert(from_jsonl(line))) ++added;
    }
    return added;
}

void Catalog::compact() const {
    if (!path_) return;
    std::lock_guard lock(mu_);
    auto tmp = *path_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw CatalogError("cannot write " + tmp.string());
        for (const auto& r : records_) out << to_jsonl(r) << '\n';
    }
    std::filesystem::rename(tmp, *path_);
}

}  // namespace rmra
