#ifndef PACESTATS_INGEST_HPP
#define PACESTATS_INGEST_HPP

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cricket.hpp"
#include "errors.hpp"

namespace pacestats {

/// A data row that failed validation, with its 1-based line number.
struct RowRejection {
    std::size_t row = 0;
    std::string reason;
};

struct ParseResult {
    std::vector<BowlerRecord> records;
    std::vector<RowRejection> rejections;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

// Split one line of comma-separated text, honoring double-quoted fields
// with "" escapes.
inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

inline bool parse_count(const std::string& text, std::int64_t& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (errno != 0 || end != t.c_str() + t.size()) return false;
    out = v;
    return true;
}

inline bool parse_real(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (errno != 0 || end != t.c_str() + t.size() || !std::isfinite(v)) return false;
    out = v;
    return true;
}

} // namespace detail

/// Read bowler records from comma-separated text with a header row.
/// Structural problems with the header throw; invalid data rows are
/// collected as rejections with their line numbers, never dropped.
inline ParseResult parse_records(std::istream& in) {
    static const char* const required[] = {
        "player_id",     "name",         "date_of_birth",  "matches",
        "balls_bowled",  "runs_conceded", "wickets_total",  "wickets_top",
        "wickets_middle", "wickets_lower", "avg_release_speed_kmh", "speed_category"};

    std::string line;
    if (!std::getline(in, line)) throw SchemaError("input is empty: no header row");
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF)
        line.erase(0, 3);

    const std::vector<std::string> header = detail::split_csv(line);
    std::map<std::string, std::size_t> columns;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = detail::trim(header[i]);
        if (columns.contains(name)) throw SchemaError("duplicate column '" + name + "'");
        columns[name] = i;
    }
    for (const char* name : required) {
        if (!columns.contains(name)) throw SchemaError("missing required column '" + std::string(name) + "'");
    }

    ParseResult result;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        const std::vector<std::string> fields = detail::split_csv(line);
        auto reject = [&](const std::string& reason) {
            result.rejections.push_back({row, reason});
        };
        if (fields.size() != header.size()) {
            reject("expected " + std::to_string(header.size()) + " fields, found " +
                   std::to_string(fields.size()));
            continue;
        }
        auto field = [&](const char* name) { return detail::trim(fields[columns.at(name)]); };

        BowlerRecord r;
        r.player_id = field("player_id");
        r.name = field("name");

        const std::optional<Date> dob = Date::parse(field("date_of_birth"));
        if (!dob) {
            reject("malformed date_of_birth '" + field("date_of_birth") + "'");
            continue;
        }
        r.date_of_birth = *dob;

        struct CountField {
            const char* name;
            std::int64_t* slot;
        };
        const CountField counts[] = {
            {"matches", &r.matches},
            {"balls_bowled", &r.balls_bowled},
            {"runs_conceded", &r.runs_conceded},
            {"wickets_total", &r.wickets_total},
            {"wickets_top", &r.wickets_top},
            {"wickets_middle", &r.wickets_middle},
            {"wickets_lower", &r.wickets_lower},
        };
        bool counts_ok = true;
        for (const CountField& cf : counts) {
            if (!detail::parse_count(field(cf.name), *cf.slot)) {
                reject(std::string("non-integer ") + cf.name + " '" + field(cf.name) + "'");
                counts_ok = false;
                break;
            }
            if (*cf.slot < 0) {
                reject(std::string("negative ") + cf.name);
                counts_ok = false;
                break;
            }
        }
        if (!counts_ok) continue;
        if (r.matches < 1) {
            reject("matches must be at least 1");
            continue;
        }
        if (r.wickets_top + r.wickets_middle + r.wickets_lower > r.wickets_total) {
            reject("stratum wickets exceed wickets_total");
            continue;
        }

        const std::string speed_text = field("avg_release_speed_kmh");
        const std::string category_text = field("speed_category");
        if (speed_text.empty() && category_text.empty()) {
            reject("need avg_release_speed_kmh or speed_category");
            continue;
        }
        if (!speed_text.empty()) {
            double speed = 0.0;
            if (!detail::parse_real(speed_text, speed)) {
                reject("malformed avg_release_speed_kmh '" + speed_text + "'");
                continue;
            }
            if (speed <= 0.0) {
                reject("avg_release_speed_kmh must be positive");
                continue;
            }
            r.avg_release_speed = speed;
        }
        if (!category_text.empty()) {
            const std::optional<SpeedCategory> category = parse_speed_category(category_text);
            if (!category) {
                reject("unknown speed_category '" + category_text + "'");
                continue;
            }
            r.speed_category = category;
        }
        if (r.avg_release_speed && r.speed_category) {
            // The measured speed wins; a declared category must agree with it.
            const std::optional<SpeedCategory> derived = category_of(r);
            if (!derived || *derived != *r.speed_category) {
                reject("speed_category disagrees with avg_release_speed_kmh");
                continue;
            }
        }
        result.records.push_back(std::move(r));
    }
    return result;
}

inline ParseResult parse_records_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return parse_records(in);
}

} // namespace pacestats

#endif
