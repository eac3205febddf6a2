#ifndef PCT_SCORING_HPP
#define PCT_SCORING_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "error.hpp"
#include "model.hpp"
#include "ranking.hpp"
#include "rational.hpp"

namespace pct {

enum class CountingRule { CountWorse, CountWorseOrEqual, Midpoint, Fractional };

enum class RoundingMode { NoRounding, FloorToPercentile, CeilToPercentile, HalfUpToPercentile };

/// What a point rule does when its value lands exactly on an interior boundary.
enum class BoundaryPolicy { Lower, Upper, Error };

/// Midpoint with rounding: take the exact midpoint and round it (Exact), or
/// round both interval ends to percentiles and round their middle (Endpoints).
enum class MidpointRoute { Exact, Endpoints };

inline constexpr std::array<CountingRule, 3> point_rules{CountingRule::CountWorse, CountingRule::CountWorseOrEqual,
                                                         CountingRule::Midpoint};

inline std::string_view to_string(CountingRule rule) {
    switch (rule) {
        case CountingRule::CountWorse: return "count-worse";
        case CountingRule::CountWorseOrEqual: return "count-worse-or-equal";
        case CountingRule::Midpoint: return "midpoint";
        case CountingRule::Fractional: return "fractional";
    }
    return "?";
}

inline std::string_view to_string(RoundingMode mode) {
    switch (mode) {
        case RoundingMode::NoRounding: return "none";
        case RoundingMode::FloorToPercentile: return "floor";
        case RoundingMode::CeilToPercentile: return "ceil";
        case RoundingMode::HalfUpToPercentile: return "half-up";
    }
    return "?";
}

inline std::string_view to_string(BoundaryPolicy policy) {
    switch (policy) {
        case BoundaryPolicy::Lower: return "lower";
        case BoundaryPolicy::Upper: return "upper";
        case BoundaryPolicy::Error: return "error";
    }
    return "?";
}

inline std::string_view to_string(MidpointRoute route) {
    return route == MidpointRoute::Exact ? "exact" : "endpoints";
}

inline CountingRule parse_counting_rule(std::string_view s) {
    if (s == "count-worse" || s == "worse") return CountingRule::CountWorse;
    if (s == "count-worse-or-equal" || s == "worse-or-equal") return CountingRule::CountWorseOrEqual;
    if (s == "midpoint") return CountingRule::Midpoint;
    if (s == "fractional") return CountingRule::Fractional;
    throw ConfigError("unknown counting rule '" + std::string(s) + "'");
}

inline RoundingMode parse_rounding_mode(std::string_view s) {
    if (s == "none") return RoundingMode::NoRounding;
    if (s == "floor") return RoundingMode::FloorToPercentile;
    if (s == "ceil") return RoundingMode::CeilToPercentile;
    if (s == "half-up") return RoundingMode::HalfUpToPercentile;
    throw ConfigError("unknown rounding mode '" + std::string(s) + "'");
}

inline BoundaryPolicy parse_boundary_policy(std::string_view s) {
    if (s == "lower") return BoundaryPolicy::Lower;
    if (s == "upper") return BoundaryPolicy::Upper;
    if (s == "error") return BoundaryPolicy::Error;
    throw ConfigError("unknown boundary policy '" + std::string(s) + "'");
}

inline MidpointRoute parse_midpoint_route(std::string_view s) {
    if (s == "exact") return MidpointRoute::Exact;
    if (s == "endpoints") return MidpointRoute::Endpoints;
    throw ConfigError("unknown midpoint route '" + std::string(s) + "'");
}

struct PointOptions {
    RoundingMode rounding = RoundingMode::NoRounding;
    BoundaryPolicy boundary = BoundaryPolicy::Error;
    MidpointRoute route = MidpointRoute::Exact;
};

struct PointAttribution {
    std::string doc_id;
    CountingRule rule = CountingRule::Midpoint;
    QuantileInterval interval;
    Rational quantile;                       // the rule's exact point value
    Rational percent;                        // value on the 0..100 scale that was classified
    std::optional<std::int64_t> percentile;  // set when a rounding mode applied
    int class_index = 1;
    bool ambiguous = false;
    std::optional<Rational> boundary_hit;
};

struct FractionalAttribution {
    std::string doc_id;
    QuantileInterval interval;
    std::vector<Rational> fractions;  // one per scheme class
};

using Attribution = std::variant<PointAttribution, FractionalAttribution>;

inline const std::string& doc_id_of(const Attribution& a) {
    return std::visit([](const auto& v) -> const std::string& { return v.doc_id; }, a);
}

inline Rational point_quantile(const std::string& doc_id, const RankedSet& ranked, CountingRule rule) {
    const QuantileInterval iv = ranked.interval_of(doc_id);
    switch (rule) {
        case CountingRule::CountWorse: return iv.low;
        case CountingRule::CountWorseOrEqual: return iv.high;
        case CountingRule::Midpoint: return iv.midpoint();
        case CountingRule::Fractional: break;
    }
    throw ArgumentError("the fractional rule has no point quantile; use fractional_attribution");
}

/// Rounds a value on the percent scale to a whole percentile. Halves go up.
inline Rational round_percent(const Rational& percent, RoundingMode mode) {
    switch (mode) {
        case RoundingMode::NoRounding: return percent;
        case RoundingMode::FloorToPercentile: return percent.floor();
        case RoundingMode::CeilToPercentile: return percent.ceil();
        case RoundingMode::HalfUpToPercentile: return (percent + Rational(1, 2)).floor();
    }
    return percent;
}

/// 100q under the given rounding; exact 100q for NoRounding.
inline Rational to_percentile(const Rational& q, RoundingMode mode) {
    if (q < 0 || q > 1) throw ArgumentError("quantile " + q.str() + " outside [0, 1]");
    return round_percent(q * 100, mode);
}

struct ClassHit {
    int class_index = 1;
    bool ambiguous = false;
    std::optional<Rational> boundary_hit;
};

/// Classes are [lower, upper) with the top class closed. A value equal to an
/// interior boundary is ambiguous and resolved by the policy.
inline ClassHit classify_point(const Rational& q, const PRScheme& scheme, BoundaryPolicy policy) {
    if (q < 0 || q > 1) throw ArgumentError("quantile " + q.str() + " outside [0, 1]");
    const auto& classes = scheme.classes();
    for (const auto& c : classes) {
        if (c.index > 1 && q == c.lower) {
            switch (policy) {
                case BoundaryPolicy::Lower: return {c.index - 1, true, q};
                case BoundaryPolicy::Upper: return {c.index, true, q};
                case BoundaryPolicy::Error:
                    throw BoundaryError("value " + q.str() + " lies on the boundary between classes " +
                                        std::to_string(c.index - 1) + " and " + std::to_string(c.index) +
                                        " of " + scheme.name());
            }
        }
        if (q >= c.lower && q < c.upper) return {c.index, false, std::nullopt};
    }
    return {classes.back().index, false, std::nullopt};
}

inline PointAttribution point_attribution(const std::string& doc_id, const RankedSet& ranked,
                                          const PRScheme& scheme, CountingRule rule,
                                          const PointOptions& options = {}) {
    PointAttribution out;
    out.doc_id = doc_id;
    out.rule = rule;
    out.interval = ranked.interval_of(doc_id);
    out.quantile = point_quantile(doc_id, ranked, rule);

    if (rule == CountingRule::Midpoint && options.route == MidpointRoute::Endpoints &&
        options.rounding != RoundingMode::NoRounding) {
        Rational low = to_percentile(out.interval.low, options.rounding);
        Rational high = to_percentile(out.interval.high, options.rounding);
        out.percent = round_percent((low + high) / 2, options.rounding);
    } else {
        out.percent = to_percentile(out.quantile, options.rounding);
    }
    if (options.rounding != RoundingMode::NoRounding) out.percentile = out.percent.num();

    ClassHit hit;
    try {
        hit = classify_point(out.percent / 100, scheme, options.boundary);
    } catch (const BoundaryError& e) {
        throw BoundaryError("document '" + doc_id + "' (" + std::string(to_string(rule)) + "): " + e.what());
    }
    out.class_index = hit.class_index;
    out.ambiguous = hit.ambiguous;
    out.boundary_hit = hit.boundary_hit;
    return out;
}

/// Splits the document's interval across classes in proportion to overlap length.
inline FractionalAttribution fractional_attribution(const std::string& doc_id, const RankedSet& ranked,
                                                    const PRScheme& scheme) {
    FractionalAttribution out;
    out.doc_id = doc_id;
    out.interval = ranked.interval_of(doc_id);
    const Rational width = out.interval.width();
    out.fractions.reserve(scheme.size());
    for (const auto& c : scheme.classes()) {
        Rational overlap = min(out.interval.high, c.upper) - max(out.interval.low, c.lower);
        out.fractions.push_back(overlap > 0 ? overlap / width : Rational(0));
    }
    return out;
}

/// One attribution per document in rank order. Rounding and boundary options
/// do not affect the fractional rule.
inline std::vector<Attribution> attribute_all(const RankedSet& ranked, const PRScheme& scheme, CountingRule rule,
                                              const PointOptions& options = {}) {
    std::vector<Attribution> out;
    out.reserve(ranked.documents().size());
    for (const auto& doc : ranked.documents()) {
        if (rule == CountingRule::Fractional)
            out.emplace_back(fractional_attribution(doc.doc_id, ranked, scheme));
        else
            out.emplace_back(point_attribution(doc.doc_id, ranked, scheme, rule, options));
    }
    return out;
}

}

#endif
