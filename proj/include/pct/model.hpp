#ifndef PCT_MODEL_HPP
#define PCT_MODEL_HPP

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "rational.hpp"

namespace pct {

struct CitationRecord {
    std::string doc_id;
    std::int64_t citations = 0;
    std::optional<std::string> group;
};

/// Non-empty list of citation records. Id uniqueness is checked by rank().
class DocumentSet {
public:
    explicit DocumentSet(std::vector<CitationRecord> records) : records_(std::move(records)) {
        if (records_.empty()) throw ArgumentError("document set must contain at least one record");
        for (const auto& r : records_)
            if (r.citations < 0) throw ArgumentError("negative citation count for '" + r.doc_id + "'");
    }

    const std::vector<CitationRecord>& records() const noexcept { return records_; }
    std::int64_t n() const noexcept { return static_cast<std::int64_t>(records_.size()); }

private:
    std::vector<CitationRecord> records_;
};

/// Builds a set from bare citation counts, naming documents "d1", "d2", ...
inline DocumentSet make_document_set(const std::vector<std::int64_t>& citations) {
    std::vector<CitationRecord> records;
    records.reserve(citations.size());
    for (std::size_t i = 0; i < citations.size(); ++i)
        records.push_back({"d" + std::to_string(i + 1), citations[i], std::nullopt});
    return DocumentSet(std::move(records));
}

/// Percentile rank class k covering [lower, upper), or [lower, 1] for the top class.
struct PRClass {
    int index = 1;
    Rational lower;
    Rational upper;
    Rational weight;

    Rational width() const { return upper - lower; }

    friend bool operator==(const PRClass&, const PRClass&) = default;
};

/// Contiguous, exhaustive partition of [0, 1] into weighted classes.
class PRScheme {
public:
    /// boundaries must run strictly upward from 0 to 1, one weight per class.
    static PRScheme from_boundaries(std::string name, const std::vector<Rational>& boundaries,
                                    const std::vector<Rational>& weights) {
        if (boundaries.size() < 2) throw ConfigError("a scheme needs at least two boundaries");
        if (weights.size() != boundaries.size() - 1)
            throw ConfigError("expected " + std::to_string(boundaries.size() - 1) + " weights, got " +
                              std::to_string(weights.size()));
        for (const auto& b : boundaries)
            if (b < 0 || b > 1) throw ConfigError("boundary " + b.str() + " outside [0, 1]");
        if (boundaries.front() != 0) throw ConfigError("first boundary must be 0");
        if (boundaries.back() != 1) throw ConfigError("last boundary must be 1");

        PRScheme scheme;
        scheme.name_ = std::move(name);
        for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
            if (!(boundaries[i] < boundaries[i + 1]))
                throw ConfigError("boundaries not strictly increasing at " + boundaries[i + 1].str());
            scheme.classes_.push_back({static_cast<int>(i) + 1, boundaries[i], boundaries[i + 1], weights[i]});
        }
        return scheme;
    }

    const std::string& name() const noexcept { return name_; }
    const std::vector<PRClass>& classes() const noexcept { return classes_; }
    std::size_t size() const noexcept { return classes_.size(); }
    const PRClass& at(int index) const { return classes_.at(static_cast<std::size_t>(index - 1)); }

    std::vector<Rational> boundaries() const {
        std::vector<Rational> out;
        out.reserve(classes_.size() + 1);
        for (const auto& c : classes_) out.push_back(c.lower);
        out.push_back(Rational(1));
        return out;
    }

    std::vector<Rational> weights() const {
        std::vector<Rational> out;
        out.reserve(classes_.size());
        for (const auto& c : classes_) out.push_back(c.weight);
        return out;
    }

    /// Equality of the partition and weights; the name is ignored.
    bool same_classes(const PRScheme& other) const { return classes_ == other.classes_; }

private:
    PRScheme() = default;

    std::string name_;
    std::vector<PRClass> classes_;
};

inline PRScheme top50_scheme() {
    return PRScheme::from_boundaries("top50", {0, Rational(1, 2), 1}, {0, 1});
}

inline PRScheme pr6_scheme() {
    return PRScheme::from_boundaries(
        "pr6", {0, Rational(1, 2), Rational(3, 4), Rational(9, 10), Rational(19, 20), Rational(99, 100), 1},
        {1, 2, 3, 4, 5, 6});
}

inline PRScheme pr100_scheme() {
    std::vector<Rational> boundaries, weights;
    for (int k = 0; k <= 100; ++k) boundaries.emplace_back(k, 100);
    for (int k = 1; k <= 100; ++k) weights.emplace_back(k);
    return PRScheme::from_boundaries("pr100", boundaries, weights);
}

/// Two classes, bottom [0, 1-x) with weight 0 and top [1-x, 1] with weight 1.
inline PRScheme topx_scheme(const Rational& x) {
    if (x <= 0 || x >= 1) throw ConfigError("top-x share must lie strictly between 0 and 1, got " + x.str());
    return PRScheme::from_boundaries("topx(" + x.str() + ")", {0, 1 - x, 1}, {0, 1});
}

/// Accepts "top50", "pr6", "pr100", and "topx(x)" / "topx=x" with x exact (e.g. "1/10", "0.1", "10%").
inline PRScheme builtin_scheme(std::string_view name) {
    if (name == "top50") return top50_scheme();
    if (name == "pr6") return pr6_scheme();
    if (name == "pr100") return pr100_scheme();
    if (name.starts_with("topx")) {
        std::string_view arg = name.substr(4);
        if (arg.size() >= 2 && arg.front() == '(' && arg.back() == ')')
            arg = arg.substr(1, arg.size() - 2);
        else if (!arg.empty() && (arg.front() == '=' || arg.front() == ':'))
            arg.remove_prefix(1);
        else
            throw ConfigError("malformed top-x scheme '" + std::string(name) + "'");
        Rational x;
        try {
            x = Rational::parse(arg);
        } catch (const ArgumentError& e) {
            throw ConfigError(e.what());
        }
        return topx_scheme(x);
    }
    throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

namespace detail {

inline Rational exact_from_json(const nlohmann::json& v, const char* field) {
    if (v.is_string()) {
        try {
            return Rational::parse(v.get<std::string>());
        } catch (const ArgumentError& e) {
            throw ConfigError(std::string(field) + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    throw ConfigError(std::string(field) + ": values must be integers or exact strings such as \"1/2\" or \"0.75\"");
}

inline std::vector<Rational> exact_list(const nlohmann::json& doc, const char* field) {
    if (!doc.contains(field) || !doc[field].is_array())
        throw ConfigError(std::string("scheme document needs a '") + field + "' list");
    std::vector<Rational> out;
    for (const auto& v : doc[field]) out.push_back(exact_from_json(v, field));
    return out;
}

inline std::vector<Rational> exact_tokens(std::string_view text, const char* field) {
    std::vector<Rational> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find_first_of(", \t", pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view tok = text.substr(pos, end - pos);
        if (!tok.empty()) {
            try {
                out.push_back(Rational::parse(tok));
            } catch (const ArgumentError& e) {
                throw ConfigError(std::string(field) + ": " + e.what());
            }
        }
        pos = end + 1;
    }
    return out;
}

}

/// Reads a scheme definition. JSON form:
///   {"name": "...", "boundaries": ["0", "1/2", "1"], "weights": ["0", "1"]}
/// Plain-text form, one field per line ('#' starts a comment):
///   name = mine
///   boundaries = 0, 1/2, 1
///   weights = 0, 1
inline PRScheme load_custom_scheme(std::string_view definition) {
    std::size_t first = definition.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && definition[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(definition);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("malformed scheme document: ") + e.what());
        }
        std::string name = "custom";
        if (doc.contains("name")) {
            if (!doc["name"].is_string()) throw ConfigError("scheme name must be a string");
            name = doc["name"].get<std::string>();
        }
        return PRScheme::from_boundaries(name, detail::exact_list(doc, "boundaries"),
                                         detail::exact_list(doc, "weights"));
    }

    std::string name = "custom";
    std::optional<std::vector<Rational>> boundaries, weights;
    std::size_t line_no = 0, pos = 0;
    while (pos < definition.size()) {
        std::size_t eol = definition.find('\n', pos);
        if (eol == std::string_view::npos) eol = definition.size();
        std::string_view line = definition.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
        if (line.empty()) continue;
        std::size_t sep = line.find_first_of("=:");
        if (sep == std::string_view::npos)
            throw ConfigError("scheme line " + std::to_string(line_no) + ": expected 'key = values'");
        std::string_view key = line.substr(0, sep);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.remove_suffix(1);
        std::string_view value = line.substr(sep + 1);
        while (!value.empty() && std::isspace(static_cast<unsigned char>(value.front()))) value.remove_prefix(1);
        if (key == "name")
            name = std::string(value);
        else if (key == "boundaries")
            boundaries = detail::exact_tokens(value, "boundaries");
        else if (key == "weights")
            weights = detail::exact_tokens(value, "weights");
        else
            throw ConfigError("scheme line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    if (!boundaries) throw ConfigError("scheme document needs a 'boundaries' list");
    if (!weights) throw ConfigError("scheme document needs a 'weights' list");
    return PRScheme::from_boundaries(name, *boundaries, *weights);
}

/// Canonical JSON definition; load_custom_scheme(scheme_to_json(s).dump()) reproduces s.
inline nlohmann::json scheme_to_json(const PRScheme& scheme) {
    nlohmann::json doc;
    doc["name"] = scheme.name();
    doc["boundaries"] = nlohmann::json::array();
    for (const auto& b : scheme.boundaries()) doc["boundaries"].push_back(b.str());
    doc["weights"] = nlohmann::json::array();
    for (const auto& w : scheme.weights()) doc["weights"].push_back(w.str());
    return doc;
}

/// I3 that fractional scoring reproduces on any n documents with distinct
/// citation counts: n * sum_k weight_k * width_k.
inline Rational theoretical_total(const PRScheme& scheme, std::int64_t n) {
    Rational per_doc;
    for (const auto& c : scheme.classes()) per_doc += c.weight * c.width();
    return per_doc * n;
}

}

#endif
