#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace zerosum {

/**
 * One cached exact value. kind is "D", "Ds" (with s set) or "ZS";
 * group_key is the canonical invariant-factor string.
 */
struct CacheRecord {
    std::string group_key;
    std::string kind;
    std::int64_t s = 0;  // meaningful for kind == "Ds"
    std::int64_t value = 0;
    std::string method;
    bool exact = true;
    std::int64_t timestamp = 0;
};

/**
 * Append-only line-delimited JSON result cache. Last record per
 * (group_key, kind, s) wins on load; corrupt lines are skipped with a
 * warning. Appends take an advisory lock on the file.
 */
class ResultCache {
public:
    explicit ResultCache(std::string path);

    std::optional<CacheRecord> get(const std::string& group_key, const std::string& kind,
                                   std::int64_t s = 0) const;

    /// Stores and appends to disk. Non-exact records are rejected.
    void put(const CacheRecord& rec);

    const std::string& path() const { return path_; }
    std::size_t size() const { return records_.size(); }

private:
    void load();
    std::string path_;
    std::map<std::string, CacheRecord> records_;
};

/// Cache path resolution: explicit flag value, else ZEROSUM_CACHE env var,
/// else $XDG_DATA_HOME/zerosum/cache.jsonl (or ~/.local/share/...).
std::string default_cache_path(const std::string& flag_value = "");

}  // namespace zerosum
