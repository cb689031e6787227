#ifndef PACESTATS_CRICKET_HPP
#define PACESTATS_CRICKET_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "hypothesis.hpp"

namespace pacestats {

/// Calendar date with lexicographic ordering.
struct Date {
    int year = 1900;
    int month = 1;
    int day = 1;

    friend auto operator<=>(const Date&, const Date&) = default;

    [[nodiscard]] bool valid() const {
        if (month < 1 || month > 12 || day < 1) return false;
        static constexpr int days_in_month[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        int limit = days_in_month[month - 1];
        const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        if (month == 2 && leap) limit = 29;
        return day <= limit;
    }

    /// Parse a strict ISO-8601 calendar date (YYYY-MM-DD).
    static std::optional<Date> parse(std::string_view text) {
        if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
        auto digits = [](std::string_view s) {
            for (char c : s)
                if (c < '0' || c > '9') return false;
            return true;
        };
        if (!digits(text.substr(0, 4)) || !digits(text.substr(5, 2)) || !digits(text.substr(8, 2)))
            return std::nullopt;
        auto num = [](std::string_view s) {
            int v = 0;
            for (char c : s) v = v * 10 + (c - '0');
            return v;
        };
        const Date d{num(text.substr(0, 4)), num(text.substr(5, 2)), num(text.substr(8, 2))};
        if (!d.valid()) return std::nullopt;
        return d;
    }

    [[nodiscard]] std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
        return buf;
    }
};

/// Pace band by average release speed.
enum class SpeedCategory { Fast, FM, MF };

inline constexpr std::array<SpeedCategory, 3> all_speed_categories{
    SpeedCategory::Fast, SpeedCategory::FM, SpeedCategory::MF};

inline std::string_view to_string(SpeedCategory category) {
    switch (category) {
        case SpeedCategory::Fast: return "fast";
        case SpeedCategory::FM: return "FM";
        case SpeedCategory::MF: return "MF";
    }
    return "unknown";
}

inline std::optional<SpeedCategory> parse_speed_category(std::string_view text) {
    auto lower = [](std::string_view s) {
        std::string out(s);
        for (char& c : out)
            if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
        return out;
    };
    const std::string t = lower(text);
    if (t == "fast") return SpeedCategory::Fast;
    if (t == "fm") return SpeedCategory::FM;
    if (t == "mf") return SpeedCategory::MF;
    return std::nullopt;
}

/// Career aggregate for one bowler. Release speed may be absent when a
/// pre-assigned category is supplied instead.
struct BowlerRecord {
    std::string player_id;
    std::string name;
    Date date_of_birth;
    std::int64_t matches = 0;
    std::int64_t balls_bowled = 0;
    std::int64_t runs_conceded = 0;
    std::int64_t wickets_total = 0;
    std::int64_t wickets_top = 0;
    std::int64_t wickets_middle = 0;
    std::int64_t wickets_lower = 0;
    std::optional<double> avg_release_speed;
    std::optional<SpeedCategory> speed_category;
};

/// Band assignment: (142, inf) fast, [130, 142] FM, [120, 130) MF.
/// Speeds below 120 km/h are outside the pace cohort.
inline SpeedCategory classify_speed(double kmh) {
    if (!(kmh > 0.0)) throw DomainError("release speed must be positive");
    if (kmh > 142.0) return SpeedCategory::Fast;
    if (kmh >= 130.0) return SpeedCategory::FM;
    if (kmh >= 120.0) return SpeedCategory::MF;
    throw NotPaceError("release speed below 120 km/h is outside the pace bands");
}

/// Band for a record: a measured speed takes precedence over a declared
/// category; unclassifiable records (slow, no category) yield nullopt.
inline std::optional<SpeedCategory> category_of(const BowlerRecord& record) {
    if (record.avg_release_speed) {
        if (*record.avg_release_speed >= 120.0) return classify_speed(*record.avg_release_speed);
        return std::nullopt;
    }
    return record.speed_category;
}

/// Performance indicators. av/sr/cbr are undefined without a wicket and
/// er is undefined without a ball bowled; wicket rates are always defined.
struct BowlerIndicators {
    std::optional<double> av;
    std::optional<double> sr;
    std::optional<double> er;
    std::optional<double> cbr;
    double wpm_top = 0.0;
    double wpm_middle = 0.0;
    double wpm_lower = 0.0;
};

inline BowlerIndicators compute_indicators(const BowlerRecord& r) {
    if (r.matches < 1) throw DomainError("record must cover at least one match");
    if (r.balls_bowled < 0 || r.runs_conceded < 0 || r.wickets_total < 0 || r.wickets_top < 0 ||
        r.wickets_middle < 0 || r.wickets_lower < 0)
        throw DomainError("counts must be nonnegative");
    if (r.wickets_top + r.wickets_middle + r.wickets_lower > r.wickets_total)
        throw DomainError("stratum wickets exceed total wickets");

    BowlerIndicators ind;
    const double runs = static_cast<double>(r.runs_conceded);
    if (r.wickets_total > 0) {
        const double w = static_cast<double>(r.wickets_total);
        ind.av = runs / w;
        ind.sr = static_cast<double>(r.balls_bowled) / w;
    }
    if (r.balls_bowled > 0) ind.er = runs / (static_cast<double>(r.balls_bowled) / 6.0);
    if (ind.av && ind.sr && ind.er) {
        if (*ind.av > 0.0 && *ind.sr > 0.0 && *ind.er > 0.0)
            ind.cbr = 3.0 / (1.0 / *ind.av + 1.0 / *ind.sr + 1.0 / *ind.er);
        else
            ind.cbr = 0.0;
    }
    const double m = static_cast<double>(r.matches);
    ind.wpm_top = static_cast<double>(r.wickets_top) / m;
    ind.wpm_middle = static_cast<double>(r.wickets_middle) / m;
    ind.wpm_lower = static_cast<double>(r.wickets_lower) / m;
    return ind;
}

/// The seven dependent variables of the study.
enum class DependentVariable { Av, Sr, Er, Cbr, WpmTop, WpmMiddle, WpmLower };

inline constexpr std::array<DependentVariable, 7> all_dependent_variables{
    DependentVariable::Av,      DependentVariable::Sr,        DependentVariable::Er,
    DependentVariable::Cbr,     DependentVariable::WpmTop,    DependentVariable::WpmMiddle,
    DependentVariable::WpmLower};

inline std::string_view to_string(DependentVariable variable) {
    switch (variable) {
        case DependentVariable::Av: return "av";
        case DependentVariable::Sr: return "sr";
        case DependentVariable::Er: return "er";
        case DependentVariable::Cbr: return "cbr";
        case DependentVariable::WpmTop: return "wpm_top";
        case DependentVariable::WpmMiddle: return "wpm_middle";
        case DependentVariable::WpmLower: return "wpm_lower";
    }
    return "unknown";
}

inline std::optional<DependentVariable> parse_dependent_variable(std::string_view text) {
    for (DependentVariable v : all_dependent_variables)
        if (text == to_string(v)) return v;
    return std::nullopt;
}

inline std::optional<double> indicator_value(const BowlerIndicators& ind,
                                             DependentVariable variable) {
    switch (variable) {
        case DependentVariable::Av: return ind.av;
        case DependentVariable::Sr: return ind.sr;
        case DependentVariable::Er: return ind.er;
        case DependentVariable::Cbr: return ind.cbr;
        case DependentVariable::WpmTop: return ind.wpm_top;
        case DependentVariable::WpmMiddle: return ind.wpm_middle;
        case DependentVariable::WpmLower: return ind.wpm_lower;
    }
    return std::nullopt;
}

/// Study population filter: more than 5 matches, more than 15 overs per
/// match on average, born strictly after the reference date, and
/// classifiable into a pace band.
inline std::vector<BowlerRecord> filter_eligible(std::span<const BowlerRecord> records,
                                                 const Date& reference_date = Date{1955, 1, 1}) {
    std::vector<BowlerRecord> kept;
    for (const BowlerRecord& r : records) {
        if (r.matches <= 5) continue;
        const double overs_per_match =
            static_cast<double>(r.balls_bowled) / 6.0 / static_cast<double>(r.matches);
        if (!(overs_per_match > 15.0)) continue;
        if (!(r.date_of_birth > reference_date)) continue;
        if (!category_of(r)) continue;
        kept.push_back(r);
    }
    return kept;
}

/// Raw groups for one dependent variable in fixed band order (fast, FM,
/// MF), with a tally of records whose indicator was undefined.
struct GroupedValues {
    std::array<RawGroup, 3> groups;
    std::size_t excluded_undefined = 0;
};

inline GroupedValues build_groups(std::span<const BowlerRecord> records,
                                  DependentVariable variable) {
    GroupedValues out;
    for (std::size_t i = 0; i < 3; ++i)
        out.groups[i].label = std::string(to_string(all_speed_categories[i]));

    for (const BowlerRecord& r : records) {
        const std::optional<SpeedCategory> category = category_of(r);
        if (!category) throw DomainError("record is not classifiable into a pace band");
        const BowlerIndicators ind = compute_indicators(r);
        const std::optional<double> value = indicator_value(ind, variable);
        if (!value) {
            ++out.excluded_undefined;
            continue;
        }
        out.groups[static_cast<std::size_t>(*category)].values.push_back(*value);
    }

    for (std::size_t i = 0; i < 3; ++i) {
        if (out.groups[i].values.empty())
            throw EmptyGroupError("no records in category " +
                                  std::string(to_string(all_speed_categories[i])));
    }
    return out;
}

} // namespace pacestats

#endif
