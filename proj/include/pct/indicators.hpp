#ifndef PCT_INDICATORS_HPP
#define PCT_INDICATORS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "model.hpp"
#include "ranking.hpp"
#include "rational.hpp"
#include "scoring.hpp"

namespace pct {

/// Possibly fractional number of documents per class.
struct ClassCounts {
    PRScheme scheme;
    std::vector<Rational> counts;

    Rational total() const {
        Rational sum;
        for (const auto& c : counts) sum += c;
        return sum;
    }
};

inline ClassCounts class_counts(const std::vector<Attribution>& attributions, const PRScheme& scheme) {
    ClassCounts out{scheme, std::vector<Rational>(scheme.size())};
    for (const auto& a : attributions) {
        if (const auto* f = std::get_if<FractionalAttribution>(&a)) {
            if (f->fractions.size() != scheme.size())
                throw ArgumentError("attribution for '" + f->doc_id + "' has " + std::to_string(f->fractions.size()) +
                                    " fractions, scheme has " + std::to_string(scheme.size()) + " classes");
            for (std::size_t k = 0; k < scheme.size(); ++k) out.counts[k] += f->fractions[k];
        } else {
            const auto& p = std::get<PointAttribution>(a);
            if (p.class_index < 1 || static_cast<std::size_t>(p.class_index) > scheme.size())
                throw ArgumentError("attribution for '" + p.doc_id + "' names class " +
                                    std::to_string(p.class_index) + " outside the scheme");
            out.counts[static_cast<std::size_t>(p.class_index - 1)] += 1;
        }
    }
    return out;
}

/// Integrated impact: sum over classes of weight times count.
inline Rational i3(const ClassCounts& counts) {
    Rational sum;
    for (std::size_t k = 0; k < counts.counts.size(); ++k) sum += counts.scheme.classes()[k].weight * counts.counts[k];
    return sum;
}

inline Rational per_doc_score(const Attribution& attribution, const PRScheme& scheme) {
    if (const auto* f = std::get_if<FractionalAttribution>(&attribution)) {
        if (f->fractions.size() != scheme.size()) throw ArgumentError("attribution/scheme class count mismatch");
        Rational score;
        for (std::size_t k = 0; k < scheme.size(); ++k) score += f->fractions[k] * scheme.classes()[k].weight;
        return score;
    }
    return scheme.at(std::get<PointAttribution>(attribution).class_index).weight;
}

inline Rational r_indicator(const Rational& i3_value, std::int64_t n) {
    if (n < 1) throw ArgumentError("R needs at least one document");
    return i3_value / n;
}

/// Share of documents in the top class of a two-class scheme.
inline Rational pp_top(const ClassCounts& counts, std::int64_t n) {
    if (counts.scheme.size() != 2)
        throw ArgumentError("PP_top needs a two-class scheme, " + counts.scheme.name() + " has " +
                            std::to_string(counts.scheme.size()));
    if (n < 1) throw ArgumentError("PP_top needs at least one document");
    return counts.counts[1] / n;
}

struct IndicatorResult {
    std::string scheme_name;
    CountingRule rule = CountingRule::Fractional;
    std::int64_t n = 0;
    std::vector<Rational> counts;
    Rational i3;
    Rational r;
    std::optional<Rational> pp;
    Rational theoretical_total;
    Rational difference;  // i3 - theoretical_total
    std::vector<std::pair<std::string, Rational>> per_doc_scores;  // rank order
};

inline IndicatorResult indicators_from(const std::vector<Attribution>& attributions, const PRScheme& scheme,
                                       CountingRule rule, std::int64_t n) {
    IndicatorResult out;
    out.scheme_name = scheme.name();
    out.rule = rule;
    out.n = n;
    ClassCounts counts = class_counts(attributions, scheme);
    out.counts = counts.counts;
    out.i3 = i3(counts);
    out.r = r_indicator(out.i3, n);
    if (scheme.size() == 2) out.pp = pp_top(counts, n);
    out.theoretical_total = theoretical_total(scheme, n);
    out.difference = out.i3 - out.theoretical_total;
    out.per_doc_scores.reserve(attributions.size());
    for (const auto& a : attributions) out.per_doc_scores.emplace_back(doc_id_of(a), per_doc_score(a, scheme));
    return out;
}

inline IndicatorResult compute_indicators(const RankedSet& ranked, const PRScheme& scheme, CountingRule rule,
                                          const PointOptions& options = {}) {
    return indicators_from(attribute_all(ranked, scheme, rule, options), scheme, rule, ranked.n());
}

struct BoundaryHitEntry {
    std::string doc_id;
    CountingRule rule = CountingRule::Midpoint;
    QuantileInterval interval;
    Rational quantile;
    Rational percent;
    std::optional<std::int64_t> percentile;
    Rational boundary;
};

struct RuleDisagreement {
    std::string doc_id;
    QuantileInterval interval;
    std::array<int, 3> classes{};  // indexed like point_rules
};

/// Boundary hits of every point rule and documents whose class depends on
/// the rule, with the fractional counts for reference.
struct AmbiguityReport {
    std::string scheme_name;
    std::int64_t n = 0;
    PointOptions options;
    std::vector<BoundaryHitEntry> hits;  // rank order, then rule order
    std::vector<RuleDisagreement> disagreements;
    std::array<std::vector<Rational>, 3> point_counts;
    std::array<Rational, 3> point_i3;
    std::vector<Rational> fractional_counts;
    Rational fractional_i3;
    Rational theoretical_total;

    std::vector<BoundaryHitEntry> hits_for(CountingRule rule) const {
        std::vector<BoundaryHitEntry> out;
        for (const auto& h : hits)
            if (h.rule == rule) out.push_back(h);
        return out;
    }

    std::set<std::string> flagged_docs() const {
        std::set<std::string> out;
        for (const auto& h : hits) out.insert(h.doc_id);
        for (const auto& d : disagreements) out.insert(d.doc_id);
        return out;
    }

    bool empty() const { return hits.empty() && disagreements.empty(); }
};

/// Runs all three point rules. A boundary policy of Error is treated as Lower
/// here since every boundary hit is reported anyway.
inline AmbiguityReport compare_rules(const RankedSet& ranked, const PRScheme& scheme, PointOptions options = {}) {
    if (options.boundary == BoundaryPolicy::Error) options.boundary = BoundaryPolicy::Lower;

    AmbiguityReport report;
    report.scheme_name = scheme.name();
    report.n = ranked.n();
    report.options = options;

    std::array<std::vector<Attribution>, 3> per_rule;
    for (std::size_t r = 0; r < point_rules.size(); ++r)
        per_rule[r] = attribute_all(ranked, scheme, point_rules[r], options);

    for (std::size_t i = 0; i < ranked.documents().size(); ++i) {
        RuleDisagreement row;
        row.doc_id = ranked.documents()[i].doc_id;
        for (std::size_t r = 0; r < point_rules.size(); ++r) {
            const auto& p = std::get<PointAttribution>(per_rule[r][i]);
            row.interval = p.interval;
            row.classes[r] = p.class_index;
            if (p.ambiguous)
                report.hits.push_back({p.doc_id, p.rule, p.interval, p.quantile, p.percent, p.percentile,
                                       *p.boundary_hit});
        }
        if (row.classes[0] != row.classes[1] || row.classes[1] != row.classes[2])
            report.disagreements.push_back(std::move(row));
    }

    for (std::size_t r = 0; r < point_rules.size(); ++r) {
        ClassCounts counts = class_counts(per_rule[r], scheme);
        report.point_counts[r] = counts.counts;
        report.point_i3[r] = i3(counts);
    }
    ClassCounts fractional = class_counts(attribute_all(ranked, scheme, CountingRule::Fractional), scheme);
    report.fractional_counts = fractional.counts;
    report.fractional_i3 = i3(fractional);
    report.theoretical_total = theoretical_total(scheme, ranked.n());
    return report;
}

/// Splits records by their group key; records without one go to "default".
inline std::map<std::string, DocumentSet> partition_by_group(const std::vector<CitationRecord>& records) {
    std::map<std::string, std::vector<CitationRecord>> buckets;
    for (const auto& r : records) buckets[r.group.value_or("default")].push_back(r);
    std::map<std::string, DocumentSet> out;
    for (auto& [key, recs] : buckets) out.emplace(key, DocumentSet(std::move(recs)));
    return out;
}

/// Ranks and scores each group on its own; nothing is pooled across groups.
inline std::map<std::string, IndicatorResult> grouped_indicators(const std::map<std::string, DocumentSet>& groups,
                                                                 const PRScheme& scheme, CountingRule rule,
                                                                 const PointOptions& options = {}) {
    std::map<std::string, IndicatorResult> out;
    for (const auto& [key, set] : groups) {
        if (set.records().empty()) throw ArgumentError("group '" + key + "' is empty");
        out.emplace(key, compute_indicators(rank(set), scheme, rule, options));
    }
    return out;
}

}

#endif
