#pragma once

#include <filesystem>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rmra/array.hpp"
#include "rmra/errors.hpp"
#include "rmra/robustness.hpp"

namespace rmra {

enum class Generator { search_optimal, search_near_optimal, cfe, external };
enum class RecordOptimality { proven, frontier, not_applicable };

std::string to_string(Generator g);
std::string to_string(RecordOptimality o);
Generator parse_generator(const std::string& s);
RecordOptimality parse_record_optimality(const std::string& s);

/// Lexicographically smaller of `a` and its mirror image.
SensorArray canonicalize(const SensorArray& a);

struct CatalogRecord {
    int n = 0;
    int aperture = 0;
    std::vector<int> positions;
    Generator generator = Generator::external;
    RecordOptimality optimality = RecordOptimality::not_applicable;
    std::optional<std::string> fixation;
    bool canonical = false;
    std::string created_at;  ///< ISO-8601 UTC
    std::string tool_version;

    /// Fills n, aperture, canonical, created_at and tool_version from `a`.
    static CatalogRecord describe(const SensorArray& a, Generator generator,
                                  RecordOptimality optimality,
                                  std::optional<std::string> fixation = std::nullopt);

    friend bool operator==(const CatalogRecord&, const CatalogRecord&) = default;
};

/// One JSON-Lines row; field order is fixed.
std::string to_jsonl(const CatalogRecord& r);
CatalogRecord from_jsonl(const std::string& line);

/// Insert refused because the array is not a TFRSA.
class RejectedRecord : public Error {
public:
    RejectedRecord(const std::string& what, RobustnessReport report)
        : Error(what), report_(std::move(report)) {}
    [[nodiscard]] const RobustnessReport& report() const noexcept { return report_; }

private:
    RobustnessReport report_;
};

/// Conjunction of optional constraints; parsed from "n=12,aperture=20:30,generator=cfe".
struct CatalogQuery {
    std::optional<int> n;
    std::optional<int> aperture_lo;
    std::optional<int> aperture_hi;
    std::optional<Generator> generator;

    static CatalogQuery parse(const std::string& text);
    [[nodiscard]] bool matches(const CatalogRecord& r) const;
};

enum class ExportFormat { jsonl, csv };

/// Deduplicated set of verified TFRSAs, optionally backed by an append-only
/// JSON-Lines file. Inserts are serialized; reads take the same lock.
class Catalog {
public:
    Catalog() = default;
    /// Loads `path` if present (duplicates in the file are dropped) and appends
    /// future inserts to it.
    explicit Catalog(std::filesystem::path path);

    /// Re-assesses the positions; throws RejectedRecord for a non-TFRSA.
    /// Returns false when (n, canonical positions) is already present.
    bool insert(CatalogRecord record);

    [[nodiscard]] std::vector<CatalogRecord> query(const CatalogQuery& q) const;
    [[nodiscard]] std::vector<CatalogRecord> records() const;
    [[nodiscard]] std::size_t size() const;

    void export_to(std::ostream& os, ExportFormat format, const CatalogQuery& q = {}) const;
    /// Parses JSON-Lines from `is`, inserting each record; returns how many were new.
    std::size_t import_from(std::istream& is);

    /// Rewrites the backing file with exactly the current records.
    void compact() const;

private:
    bool insert_locked(CatalogRecord record, bool append);

    std::optional<std::filesystem::path> path_;
    mutable std::mutex mu_;
    std::vector<CatalogRecord> records_;
    std::vector<std::pair<int, std::vector<int>>> keys_;  // sorted (n, canonical positions)
};

}  // namespace rmra
