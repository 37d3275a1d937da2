#include "zerosum/cache.hpp"

#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace zerosum {

using nlohmann::json;

static std::string record_key(const std::string& group_key, const std::string& kind,
                              std::int64_t s) {
    std::ostringstream os;
    os << group_key << '|' << kind;
    if (kind == "Ds") os << '|' << s;
    return os.str();
}

ResultCache::ResultCache(std::string path) : path_(std::move(path)) { load(); }

void ResultCache::load() {
    std::ifstream in(path_);
    if (!in.is_open()) return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("group") || !j.contains("kind") ||
            !j.contains("value")) {
            std::cerr << "zerosum: cache " << path_ << ":" << lineno
                      << ": skipping corrupt record\n";
            continue;
        }
        try {
            CacheRecord rec;
            rec.group_key = j.at("group").get<std::string>();
            rec.kind = j.at("kind").get<std::string>();
            rec.s = j.value("s", std::int64_t{0});
            rec.value = j.at("value").get<std::int64_t>();
            rec.method = j.value("method", std::string{});
            rec.exact = j.value("exact", true);
            rec.timestamp = j.value("timestamp", std::int64_t{0});
            if (!rec.exact) continue;  // never trust truncated results
            records_[record_key(rec.group_key, rec.kind, rec.s)] = rec;
        } catch (const std::exception&) {
            std::cerr << "zerosum: cache " << path_ << ":" << lineno
                      << ": skipping corrupt record\n";
        }
    }
}

std::optional<CacheRecord> ResultCache::get(const std::string& group_key, const std::string& kind,
                                            std::int64_t s) const {
    auto it = records_.find(record_key(group_key, kind, s));
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

void ResultCache::put(const CacheRecord& rec) {
    if (!rec.exact) throw std::invalid_argument("ResultCache::put: only exact records are stored");
    CacheRecord stored = rec;
    if (stored.timestamp == 0) stored.timestamp = static_cast<std::int64_t>(std::time(nullptr));
    records_[record_key(stored.group_key, stored.kind, stored.s)] = stored;

    std::filesystem::path p(path_);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    json j{{"group", stored.group_key}, {"kind", stored.kind},   {"value", stored.value},
           {"method", stored.method},  {"exact", stored.exact}, {"timestamp", stored.timestamp}};
    if (stored.kind == "Ds") j["s"] = stored.s;

    FILE* f = std::fopen(path_.c_str(), "a");
    if (!f) {
        std::cerr << "zerosum: cannot append to cache " << path_ << "\n";
        return;
    }
    int fd = fileno(f);
    if (fd >= 0) flock(fd, LOCK_EX);  // single writer; readers unrestricted
    std::string line = j.dump();
    line.push_back('\n');
    std::fwrite(line.data(), 1, line.size(), f);
    std::fflush(f);
    if (fd >= 0) flock(fd, LOCK_UN);
    std::fclose(f);
}

std::string default_cache_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("ZEROSUM_CACHE"); env && *env) return env;
    std::string base;
    if (const char* xdg = std::getenv("XDG_DATA_HOME"); xdg && *xdg)
        base = xdg;
    else if (const char* home = std::getenv("HOME"); home && *home)
        base = std::string(home) + "/.local/share";
    else
        base = ".";
    return base + "/zerosum/cache.jsonl";
}

}  // namespace zerosum
