#ifndef PCT_IO_HPP
#define PCT_IO_HPP

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "indicators.hpp"
#include "model.hpp"

namespace pct::io {

/// Header plus rows of a comma- or tab-delimited text. Fields may be quoted
/// with '"' (doubled quotes escape); quoted fields cannot span lines.
struct DelimitedTable {
    char delimiter = ',';
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;  // 1-based source line of each row

    std::optional<std::size_t> column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        return std::nullopt;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_fields(std::string_view line, char delim, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    std::size_t i = 0;
    for (;;) {
        // skip leading blanks (but never the delimiter itself)
        while (i < line.size() && line[i] == ' ' && delim != ' ') ++i;
        cur.clear();
        if (i < line.size() && line[i] == '"') {
            ++i;
            bool closed = false;
            while (i < line.size()) {
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        cur += '"';
                        i += 2;
                        continue;
                    }
                    closed = true;
                    ++i;
                    break;
                }
                cur += line[i++];
            }
            if (!closed) throw ParseError("unterminated quoted field", line_no);
            while (i < line.size() && line[i] != delim) {
                if (line[i] != ' ' && line[i] != '\r') throw ParseError("text after closing quote", line_no);
                ++i;
            }
        } else {
            std::size_t end = line.find(delim, i);
            if (end == std::string_view::npos) end = line.size();
            cur = std::string(trim(line.substr(i, end - i)));
            i = end;
        }
        fields.push_back(cur);
        if (i >= line.size()) break;
        ++i;  // delimiter
    }
    return fields;
}

}

inline DelimitedTable read_delimited(std::string_view text) {
    DelimitedTable table;
    std::size_t pos = 0, line_no = 0;
    bool have_header = false;
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (detail::trim(line).empty()) continue;
        if (!have_header) {
            table.delimiter = line.find('\t') != std::string_view::npos ? '\t' : ',';
            table.header = detail::split_fields(line, table.delimiter, line_no);
            have_header = true;
            continue;
        }
        auto fields = detail::split_fields(line, table.delimiter, line_no);
        if (fields.size() != table.header.size())
            throw ParseError("expected " + std::to_string(table.header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no);
        table.rows.push_back(std::move(fields));
        table.lines.push_back(line_no);
    }
    if (!have_header) throw ParseError("input is empty; a header row is required");
    return table;
}

/// Parsed citation input, validated and partitioned by group key.
struct InputDataset {
    std::vector<CitationRecord> records;
    std::map<std::string, DocumentSet> groups;
    bool has_group_column = false;
};

inline std::int64_t parse_citations(std::string_view s, std::size_t line_no) {
    s = detail::trim(s);
    if (s.empty()) throw ParseError("missing citation count", line_no);
    std::int64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw ParseError("citation count must be a non-negative base-10 integer, got '" + std::string(s) + "'",
                             line_no);
        if (v > (INT64_MAX - (c - '0')) / 10) throw ParseError("citation count too large", line_no);
        v = v * 10 + (c - '0');
    }
    return v;
}

namespace detail {

inline InputDataset finish(std::vector<CitationRecord> records, const std::vector<std::size_t>& lines,
                           bool has_group) {
    if (records.empty()) throw ParseError("input contains no records");
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& id = records[i].doc_id;
        if (id.empty()) throw ParseError("empty document id", lines[i]);
        auto [it, fresh] = seen.emplace(id, lines[i]);
        if (!fresh)
            throw ParseError("duplicate document id '" + id + "' (first seen on line " + std::to_string(it->second) +
                                 ")",
                             lines[i]);
    }
    InputDataset out;
    out.groups = partition_by_group(records);
    out.records = std::move(records);
    out.has_group_column = has_group;
    return out;
}

inline InputDataset parse_json_input(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON input: ") + e.what());
    }
    const nlohmann::json* rows = &doc;
    if (doc.is_object()) {
        if (!doc.contains("records")) throw ParseError("JSON input object needs a 'records' array");
        rows = &doc["records"];
    }
    if (!rows->is_array()) throw ParseError("JSON input must be an array of records");

    std::vector<CitationRecord> records;
    std::vector<std::size_t> index;
    bool has_group = false;
    std::size_t i = 0;
    for (const auto& row : *rows) {
        ++i;
        auto fail = [&](const std::string& what) { return ParseError("record " + std::to_string(i) + ": " + what); };
        if (!row.is_object()) throw fail("not an object");
        if (!row.contains("id")) throw fail("missing 'id'");
        if (!row.contains("citations")) throw fail("missing 'citations'");
        CitationRecord rec;
        const auto& id = row["id"];
        if (id.is_string())
            rec.doc_id = id.get<std::string>();
        else if (id.is_number_integer())
            rec.doc_id = id.dump();
        else
            throw fail("'id' must be a string or integer");
        const auto& c = row["citations"];
        if (c.is_number_unsigned())
            rec.citations = static_cast<std::int64_t>(c.get<std::uint64_t>());
        else if (c.is_number_integer())
            throw fail("citation count must be non-negative");
        else if (c.is_string()) {
            try {
                rec.citations = parse_citations(c.get<std::string>(), 0);
            } catch (const ParseError& e) {
                throw fail(e.what());
            }
        } else
            throw fail("citation count must be a non-negative integer");
        if (row.contains("group") && !row["group"].is_null()) {
            if (!row["group"].is_string()) throw fail("'group' must be a string");
            has_group = true;
            auto g = row["group"].get<std::string>();
            if (!g.empty()) rec.group = g;
        }
        records.push_back(std::move(rec));
        index.push_back(i);
    }
    return finish(std::move(records), index, has_group);
}

}

/// Reads citation records from delimited text (header `id,citations[,group]`,
/// comma or tab) or from JSON (an array of {id, citations, group} objects, or
/// an object with a `records` array).
inline InputDataset parse_input(std::string_view text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && (text[first] == '[' || text[first] == '{'))
        return detail::parse_json_input(text);

    DelimitedTable table = read_delimited(text);
    auto id_col = table.column("id");
    auto cit_col = table.column("citations");
    auto group_col = table.column("group");
    if (!id_col || !cit_col) throw ParseError("header must name columns 'id' and 'citations'", 1);

    std::vector<CitationRecord> records;
    records.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        CitationRecord rec;
        rec.doc_id = row[*id_col];
        rec.citations = parse_citations(row[*cit_col], table.lines[i]);
        if (group_col && !row[*group_col].empty()) rec.group = row[*group_col];
        records.push_back(std::move(rec));
    }
    return detail::finish(std::move(records), table.lines, group_col.has_value());
}

inline std::string read_source(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r\t") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// Display as a percentage, e.g. 2/5 -> "40.00%".
inline std::string percent(const Rational& q, int places = 2) { return (q * 100).to_fixed(places) + "%"; }

inline std::string percent_range(const Rational& low, const Rational& high, int places = 2) {
    return percent(low, places) + "–" + percent(high, places);
}

}

#endif
