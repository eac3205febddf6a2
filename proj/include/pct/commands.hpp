#ifndef PCT_COMMANDS_HPP
#define PCT_COMMANDS_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "indicators.hpp"
#include "io.hpp"
#include "model.hpp"
#include "ranking.hpp"
#include "scoring.hpp"

namespace pct::cli {

inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { Table, Csv, Json };

inline OutputFormat parse_output_format(std::string_view s) {
    if (s == "table") return OutputFormat::Table;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format '" + std::string(s) + "'");
}

struct RunConfig {
    std::string scheme = "top50";
    CountingRule rule = CountingRule::Fractional;
    RoundingMode rounding = RoundingMode::NoRounding;
    std::optional<BoundaryPolicy> boundary;  // unset: lower, with a warning when a boundary is hit
    MidpointRoute route = MidpointRoute::Exact;
    OutputFormat format = OutputFormat::Table;
    int precision = 4;  // significant digits of decimal renderings

    PointOptions point_options() const { return {rounding, boundary.value_or(BoundaryPolicy::Lower), route}; }
};

/// "top50", "pr6", "pr100", "topx=<x>" or "custom=<path>".
inline PRScheme resolve_scheme(const std::string& selector) {
    if (selector.starts_with("custom=")) {
        std::string path = selector.substr(7);
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("cannot open scheme file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return load_custom_scheme(ss.str());
    }
    return builtin_scheme(selector);
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline std::size_t display_width(std::string_view s) {
    std::size_t w = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++w;
    return w;
}

/// Left-aligned columns separated by two spaces.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& os) const {
        std::vector<std::size_t> widths;
        for (const auto& r : rows_) {
            if (widths.size() < r.size()) widths.resize(r.size(), 0);
            for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], display_width(r[i]));
        }
        for (const auto& r : rows_) {
            std::string line;
            for (std::size_t i = 0; i < r.size(); ++i) {
                line += r[i];
                if (i + 1 < r.size()) line.append(widths[i] - display_width(r[i]) + 2, ' ');
            }
            os << line << '\n';
        }
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

inline std::string join_csv(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += io::csv_field(fields[i]);
    }
    return out;
}

inline ojson scheme_json(const PRScheme& scheme) {
    ojson j;
    j["name"] = scheme.name();
    j["boundaries"] = ojson::array();
    for (const auto& b : scheme.boundaries()) j["boundaries"].push_back(b.str());
    j["weights"] = ojson::array();
    for (const auto& w : scheme.weights()) j["weights"].push_back(w.str());
    return j;
}

inline ojson interval_json(const QuantileInterval& iv) {
    ojson j;
    j["low"] = iv.low.str();
    j["high"] = iv.high.str();
    return j;
}

inline std::string exact_and_decimal(const Rational& r, int precision) {
    if (r.is_integer()) return r.str();
    return r.str() + " (" + r.to_significant(precision) + ")";
}

inline std::string nonzero_fractions(const std::vector<Rational>& fractions) {
    std::string out;
    for (std::size_t k = 0; k < fractions.size(); ++k) {
        if (fractions[k] == 0) continue;
        if (!out.empty()) out += ' ';
        out += std::to_string(k + 1) + ":" + fractions[k].str();
    }
    return out;
}

inline void warn_boundary_hits(const RunConfig& config, std::size_t hits, std::ostream& err) {
    if (hits == 0 || config.boundary) return;
    err << "warning: " << hits << " point value(s) fell exactly on a class boundary and were assigned to the lower "
        << "class; choose explicitly with --boundary lower|upper|error\n";
}

inline ojson run_header(const std::string& command, const RunConfig& config, const PRScheme& scheme) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["scheme"] = scheme_json(scheme);
    if (command != "report") j["rule"] = std::string(to_string(config.rule));
    j["rounding"] = std::string(to_string(config.rounding));
    j["boundary"] = std::string(to_string(config.point_options().boundary));
    j["midpoint_route"] = std::string(to_string(config.route));
    return j;
}

}

/// Column order of `attribute --format csv`.
inline std::vector<std::string> attribution_csv_header(CountingRule rule, const PRScheme& scheme) {
    std::vector<std::string> h{"group", "id", "citations", "rank_low", "rank_high", "low", "high"};
    if (rule == CountingRule::Fractional) {
        for (const auto& c : scheme.classes()) h.push_back("class_" + std::to_string(c.index));
    } else {
        for (const char* col : {"rule", "quantile", "percent", "percentile", "class", "ambiguous", "boundary"})
            h.emplace_back(col);
    }
    h.emplace_back("score");
    return h;
}

inline void cmd_attribute(const RunConfig& config, const io::InputDataset& data, std::ostream& out,
                          std::ostream& err) {
    const PRScheme scheme = resolve_scheme(config.scheme);
    const PointOptions options = config.point_options();
    const bool fractional = config.rule == CountingRule::Fractional;
    std::size_t hits = 0;

    detail::ojson json = detail::run_header("attribute", config, scheme);
    json["groups"] = detail::ojson::array();
    if (config.format == OutputFormat::Csv) out << detail::join_csv(attribution_csv_header(config.rule, scheme)) << '\n';

    for (const auto& [key, set] : data.groups) {
        const RankedSet ranked = rank(set);
        const auto attributions = attribute_all(ranked, scheme, config.rule, options);

        std::vector<std::string> header{"id", "citations", "ranks", "interval", "percent range"};
        if (fractional) {
            header.insert(header.end(), {"fractions (class:share)"});
        } else {
            header.insert(header.end(), {"quantile", "percent", "class", "ambiguous"});
        }
        header.emplace_back("score");
        detail::TextTable table(header);
        detail::ojson docs = detail::ojson::array();

        for (std::size_t i = 0; i < attributions.size(); ++i) {
            const auto& doc = ranked.documents()[i];
            const auto& group = ranked.groups()[doc.group];
            const QuantileInterval iv = ranked.group_interval(doc.group);
            const Rational score = per_doc_score(attributions[i], scheme);
            const std::string ranks = group.rank_low == group.rank_high
                                          ? std::to_string(group.rank_low)
                                          : std::to_string(group.rank_low) + "-" + std::to_string(group.rank_high);

            std::vector<std::string> csv{key,
                                         doc.doc_id,
                                         std::to_string(doc.citations),
                                         std::to_string(group.rank_low),
                                         std::to_string(group.rank_high),
                                         iv.low.str(),
                                         iv.high.str()};
            std::vector<std::string> row{doc.doc_id, std::to_string(doc.citations), ranks,
                                         iv.low.str() + "–" + iv.high.str(), io::percent_range(iv.low, iv.high)};
            detail::ojson j;
            j["id"] = doc.doc_id;
            j["citations"] = doc.citations;
            j["rank_low"] = group.rank_low;
            j["rank_high"] = group.rank_high;
            j["interval"] = detail::interval_json(iv);

            if (const auto* f = std::get_if<FractionalAttribution>(&attributions[i])) {
                for (const auto& x : f->fractions) csv.push_back(x.str());
                row.push_back(detail::nonzero_fractions(f->fractions));
                j["fractions"] = detail::ojson::array();
                for (const auto& x : f->fractions) j["fractions"].push_back(x.str());
            } else {
                const auto& p = std::get<PointAttribution>(attributions[i]);
                if (p.ambiguous) ++hits;
                csv.insert(csv.end(), {std::string(to_string(p.rule)), p.quantile.str(), p.percent.str(),
                                       p.percentile ? std::to_string(*p.percentile) : "",
                                       std::to_string(p.class_index), p.ambiguous ? "true" : "false",
                                       p.boundary_hit ? p.boundary_hit->str() : ""});
                row.insert(row.end(), {detail::exact_and_decimal(p.quantile, config.precision),
                                       p.percent.to_significant(config.precision) + "%", std::to_string(p.class_index),
                                       p.ambiguous ? "yes (at " + io::percent(*p.boundary_hit) + ")" : "no"});
                j["quantile"] = p.quantile.str();
                j["percent"] = p.percent.str();
                j["percentile"] = p.percentile ? detail::ojson(*p.percentile) : detail::ojson(nullptr);
                j["class"] = p.class_index;
                j["ambiguous"] = p.ambiguous;
                j["boundary"] = p.boundary_hit ? detail::ojson(p.boundary_hit->str()) : detail::ojson(nullptr);
            }
            csv.push_back(score.str());
            row.push_back(detail::exact_and_decimal(score, config.precision));
            j["score"] = score.str();

            if (config.format == OutputFormat::Csv) out << detail::join_csv(csv) << '\n';
            table.add(std::move(row));
            docs.push_back(std::move(j));
        }

        if (config.format == OutputFormat::Table) {
            out << "# group " << key << ": N = " << ranked.n() << ", scheme " << scheme.name() << ", rule "
                << to_string(config.rule);
            if (!fractional)
                out << ", rounding " << to_string(options.rounding) << ", boundary " << to_string(options.boundary)
                    << ", midpoint route " << to_string(options.route);
            out << '\n';
            table.print(out);
            out << '\n';
        }
        detail::ojson g;
        g["group"] = key;
        g["n"] = ranked.n();
        g["documents"] = std::move(docs);
        json["groups"].push_back(std::move(g));
    }
    if (config.format == OutputFormat::Json) out << json.dump(2) << '\n';
    detail::warn_boundary_hits(config, hits, err);
}

/// One row of `attribute --format csv`, read back with exact values.
struct AttributionRow {
    std::string group;
    std::string doc_id;
    std::int64_t citations = 0;
    std::int64_t rank_low = 0;
    std::int64_t rank_high = 0;
    QuantileInterval interval;
    std::vector<Rational> fractions;  // fractional rule
    std::optional<CountingRule> rule;  // point rules
    std::optional<Rational> quantile;
    std::optional<Rational> percent;
    std::optional<std::int64_t> percentile;
    std::optional<int> class_index;
    bool ambiguous = false;
    std::optional<Rational> boundary;
    Rational score;
};

inline std::vector<AttributionRow> read_attribution_csv(std::string_view text) {
    const io::DelimitedTable table = io::read_delimited(text);
    auto col = [&](std::string_view name) {
        auto c = table.column(name);
        if (!c) throw ParseError("attribution table lacks column '" + std::string(name) + "'", 1);
        return *c;
    };
    auto exact = [](const std::string& s, std::size_t line) {
        try {
            return Rational::parse(s);
        } catch (const ArgumentError& e) {
            throw ParseError(e.what(), line);
        }
    };
    std::vector<std::size_t> class_cols;
    for (std::size_t k = 1;; ++k) {
        auto c = table.column("class_" + std::to_string(k));
        if (!c) break;
        class_cols.push_back(*c);
    }
    const bool point = table.column("rule").has_value();

    std::vector<AttributionRow> rows;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        const std::size_t line = table.lines[i];
        AttributionRow row;
        row.group = r[col("group")];
        row.doc_id = r[col("id")];
        row.citations = io::parse_citations(r[col("citations")], line);
        row.rank_low = io::parse_citations(r[col("rank_low")], line);
        row.rank_high = io::parse_citations(r[col("rank_high")], line);
        row.interval = {exact(r[col("low")], line), exact(r[col("high")], line)};
        for (auto c : class_cols) row.fractions.push_back(exact(r[c], line));
        if (point) {
            row.rule = parse_counting_rule(r[col("rule")]);
            row.quantile = exact(r[col("quantile")], line);
            row.percent = exact(r[col("percent")], line);
            if (!r[col("percentile")].empty()) row.percentile = io::parse_citations(r[col("percentile")], line);
            row.class_index = static_cast<int>(io::parse_citations(r[col("class")], line));
            row.ambiguous = r[col("ambiguous")] == "true";
            if (!r[col("boundary")].empty()) row.boundary = exact(r[col("boundary")], line);
        }
        row.score = exact(r[col("score")], line);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void cmd_indicators(const RunConfig& config, const io::InputDataset& data, std::ostream& out,
                           std::ostream& err) {
    const PRScheme scheme = resolve_scheme(config.scheme);
    const PointOptions options = config.point_options();
    const int p = config.precision;
    const bool point = config.rule != CountingRule::Fractional;

    std::size_t hits = 0;
    std::map<std::string, IndicatorResult> results;
    for (const auto& [key, set] : data.groups) {
        const RankedSet ranked = rank(set);
        const auto attributions = attribute_all(ranked, scheme, config.rule, options);
        for (const auto& a : attributions)
            if (const auto* pa = std::get_if<PointAttribution>(&a); pa && pa->ambiguous) ++hits;
        results.emplace(key, indicators_from(attributions, scheme, config.rule, ranked.n()));
    }

    switch (config.format) {
        case OutputFormat::Csv: {
            out << detail::join_csv({"group", "n", "scheme", "rule", "i3", "r", "pp", "theoretical_total",
                                     "difference"})
                << '\n';
            for (const auto& [key, r] : results)
                out << detail::join_csv({key, std::to_string(r.n), r.scheme_name, std::string(to_string(r.rule)),
                                         r.i3.str(), r.r.str(), r.pp ? r.pp->str() : "", r.theoretical_total.str(),
                                         r.difference.str()})
                    << '\n';
            break;
        }
        case OutputFormat::Json: {
            detail::ojson json = detail::run_header("indicators", config, scheme);
            json["groups"] = detail::ojson::array();
            for (const auto& [key, r] : results) {
                detail::ojson g;
                g["group"] = key;
                g["n"] = r.n;
                g["i3"] = r.i3.str();
                g["r"] = r.r.str();
                g["pp"] = r.pp ? detail::ojson(r.pp->str()) : detail::ojson(nullptr);
                g["theoretical_total"] = r.theoretical_total.str();
                g["difference"] = r.difference.str();
                g["class_counts"] = detail::ojson::array();
                for (const auto& c : r.counts) g["class_counts"].push_back(c.str());
                g["per_doc_scores"] = detail::ojson::array();
                for (const auto& [id, s] : r.per_doc_scores) {
                    detail::ojson d;
                    d["id"] = id;
                    d["score"] = s.str();
                    g["per_doc_scores"].push_back(std::move(d));
                }
                json["groups"].push_back(std::move(g));
            }
            out << json.dump(2) << '\n';
            break;
        }
        case OutputFormat::Table: {
            for (const auto& [key, r] : results) {
                out << "# group " << key << ": N = " << r.n << ", scheme " << r.scheme_name << ", rule "
                    << to_string(r.rule) << '\n';
                detail::TextTable t({"indicator", "exact", "decimal"});
                t.add({"I3", r.i3.str(), r.i3.to_significant(p)});
                t.add({point ? "R (rule-dependent)" : "R", r.r.str(), r.r.to_significant(p)});
                if (r.pp) t.add({"PP_top", r.pp->str(), io::percent(*r.pp)});
                t.add({"theoretical I3", r.theoretical_total.str(), r.theoretical_total.to_significant(p)});
                t.add({"I3 - theoretical", r.difference.str(), r.difference.to_significant(p)});
                t.print(out);
                out << "class counts:";
                for (std::size_t k = 0; k < r.counts.size(); ++k)
                    if (r.counts[k] != 0) out << ' ' << (k + 1) << ':' << r.counts[k].str();
                out << "\n\n";
            }
            break;
        }
    }
    detail::warn_boundary_hits(config, hits, err);
}

inline void cmd_report(const RunConfig& config, const io::InputDataset& data, std::ostream& out) {
    const PRScheme scheme = resolve_scheme(config.scheme);
    const PointOptions options = config.point_options();
    const int p = config.precision;

    std::map<std::string, AmbiguityReport> reports;
    for (const auto& [key, set] : data.groups) reports.emplace(key, compare_rules(rank(set), scheme, options));

    auto class_cols = [](const RuleDisagreement& d) {
        std::vector<std::string> out;
        for (int c : d.classes) out.push_back(std::to_string(c));
        return out;
    };

    switch (config.format) {
        case OutputFormat::Csv: {
            out << detail::join_csv({"group", "kind", "id", "rule", "low", "high", "quantile", "percent", "percentile",
                                     "boundary", "class_count_worse", "class_count_worse_or_equal",
                                     "class_midpoint"})
                << '\n';
            for (const auto& [key, rep] : reports) {
                for (const auto& h : rep.hits)
                    out << detail::join_csv({key, "boundary_hit", h.doc_id, std::string(to_string(h.rule)),
                                             h.interval.low.str(), h.interval.high.str(), h.quantile.str(),
                                             h.percent.str(), h.percentile ? std::to_string(*h.percentile) : "",
                                             h.boundary.str(), "", "", ""})
                        << '\n';
                for (const auto& d : rep.disagreements) {
                    auto c = class_cols(d);
                    out << detail::join_csv({key, "disagreement", d.doc_id, "", d.interval.low.str(),
                                             d.interval.high.str(), "", "", "", "", c[0], c[1], c[2]})
                        << '\n';
                }
            }
            break;
        }
        case OutputFormat::Json: {
            detail::ojson json = detail::run_header("report", config, scheme);
            json["groups"] = detail::ojson::array();
            for (const auto& [key, rep] : reports) {
                detail::ojson g;
                g["group"] = key;
                g["n"] = rep.n;
                g["boundary_hits"] = detail::ojson::array();
                for (const auto& h : rep.hits) {
                    detail::ojson j;
                    j["id"] = h.doc_id;
                    j["rule"] = std::string(to_string(h.rule));
                    j["interval"] = detail::interval_json(h.interval);
                    j["quantile"] = h.quantile.str();
                    j["percent"] = h.percent.str();
                    j["percentile"] = h.percentile ? detail::ojson(*h.percentile) : detail::ojson(nullptr);
                    j["boundary"] = h.boundary.str();
                    g["boundary_hits"].push_back(std::move(j));
                }
                g["disagreements"] = detail::ojson::array();
                for (const auto& d : rep.disagreements) {
                    detail::ojson j;
                    j["id"] = d.doc_id;
                    j["interval"] = detail::interval_json(d.interval);
                    for (std::size_t r = 0; r < point_rules.size(); ++r)
                        j["classes"][std::string(to_string(point_rules[r]))] = d.classes[r];
                    g["disagreements"].push_back(std::move(j));
                }
                detail::ojson summary;
                for (std::size_t r = 0; r < point_rules.size(); ++r) {
                    detail::ojson s;
                    s["boundary_hits"] = rep.hits_for(point_rules[r]).size();
                    s["i3"] = rep.point_i3[r].str();
                    s["class_counts"] = detail::ojson::array();
                    for (const auto& c : rep.point_counts[r]) s["class_counts"].push_back(c.str());
                    summary[std::string(to_string(point_rules[r]))] = std::move(s);
                }
                detail::ojson frac;
                frac["i3"] = rep.fractional_i3.str();
                frac["class_counts"] = detail::ojson::array();
                for (const auto& c : rep.fractional_counts) frac["class_counts"].push_back(c.str());
                summary["fractional"] = std::move(frac);
                summary["theoretical_total"] = rep.theoretical_total.str();
                summary["disagreements"] = rep.disagreements.size();
                g["summary"] = std::move(summary);
                json["groups"].push_back(std::move(g));
            }
            out << json.dump(2) << '\n';
            break;
        }
        case OutputFormat::Table: {
            for (const auto& [key, rep] : reports) {
                out << "# group " << key << ": N = " << rep.n << ", scheme " << rep.scheme_name << ", rounding "
                    << to_string(options.rounding) << ", midpoint route " << to_string(options.route) << '\n';
                if (rep.empty()) {
                    out << "no boundary hits and no rule disagreements\n\n";
                    continue;
                }
                if (!rep.hits.empty()) {
                    out << "boundary hits:\n";
                    detail::TextTable t({"id", "rule", "interval", "exact interval", "value", "boundary"});
                    for (const auto& h : rep.hits)
                        t.add({h.doc_id, std::string(to_string(h.rule)),
                               io::percent_range(h.interval.low, h.interval.high),
                               h.interval.low.str() + "–" + h.interval.high.str(), h.percent.str() + "%",
                               h.boundary.str() + " (" + io::percent(h.boundary) + ")"});
                    t.print(out);
                }
                if (!rep.disagreements.empty()) {
                    out << "rule disagreements (class per rule):\n";
                    detail::TextTable t({"id", "interval", "count-worse", "count-worse-or-equal", "midpoint"});
                    for (const auto& d : rep.disagreements) {
                        auto c = class_cols(d);
                        t.add({d.doc_id, io::percent_range(d.interval.low, d.interval.high), c[0], c[1], c[2]});
                    }
                    t.print(out);
                }
                out << "I3 by rule:";
                for (std::size_t r = 0; r < point_rules.size(); ++r)
                    out << ' ' << to_string(point_rules[r]) << '=' << rep.point_i3[r].str();
                out << " fractional=" << rep.fractional_i3.str() << " theoretical="
                    << rep.theoretical_total.to_significant(p) << "\n\n";
            }
            break;
        }
    }
}

inline void cmd_schemes_list(std::ostream& out) {
    detail::TextTable t({"selector", "classes", "boundaries", "weights"});
    auto describe = [&](const std::string& sel, const PRScheme& s) {
        std::string b, w;
        auto bs = s.boundaries();
        auto ws = s.weights();
        if (s.size() > 10) {
            b = bs[0].str() + ", " + bs[1].str() + ", ..., " + bs.back().str();
            w = ws[0].str() + ", ..., " + ws.back().str();
        } else {
            for (std::size_t i = 0; i < bs.size(); ++i) b += (i ? ", " : "") + bs[i].str();
            for (std::size_t i = 0; i < ws.size(); ++i) w += (i ? ", " : "") + ws[i].str();
        }
        t.add({sel, std::to_string(s.size()), b, w});
    };
    describe("top50", top50_scheme());
    describe("pr6", pr6_scheme());
    describe("pr100", pr100_scheme());
    describe("topx=1/10", topx_scheme(Rational(1, 10)));
    t.print(out);
    out << "custom schemes: custom=<path> (JSON or 'key = values' text with boundaries and weights)\n";
}

/// Prints the canonical JSON definition of a scheme selector.
inline void cmd_schemes_show(const std::string& selector, std::ostream& out) {
    out << detail::scheme_json(resolve_scheme(selector)).dump(2) << '\n';
}

inline void cmd_schemes_validate(const std::string& path, std::ostream& out) {
    const PRScheme s = resolve_scheme("custom=" + path);
    out << "ok: " << s.name() << " with " << s.size() << " classes, theoretical I3 per document "
        << theoretical_total(s, 1).str() << '\n';
}

}

#endif
