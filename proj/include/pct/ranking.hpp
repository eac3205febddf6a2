#ifndef PCT_RANKING_HPP
#define PCT_RANKING_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "model.hpp"
#include "rational.hpp"

namespace pct {

/// Maximal run of documents sharing one citation count. Ranks are 1-based
/// positions in the ascending order.
struct TieGroup {
    std::int64_t citations = 0;
    std::vector<std::string> member_ids;
    std::int64_t rank_low = 1;
    std::int64_t rank_high = 1;

    std::int64_t size() const noexcept { return rank_high - rank_low + 1; }
};

/// The stretch of the quantile axis a document occupies.
struct QuantileInterval {
    Rational low;
    Rational high;

    Rational width() const { return high - low; }
    Rational midpoint() const { return (low + high) / 2; }

    friend bool operator==(const QuantileInterval&, const QuantileInterval&) = default;
};

/// [(rank_low - 1)/n, rank_high/n], shared by every member of the group.
inline QuantileInterval interval_for(const TieGroup& group, std::int64_t n) {
    if (n < 1 || group.rank_low < 1 || group.rank_high > n || group.rank_low > group.rank_high)
        throw ArgumentError("tie group ranks outside 1.." + std::to_string(n));
    return {Rational(group.rank_low - 1, n), Rational(group.rank_high, n)};
}

struct RankedDocument {
    std::string doc_id;
    std::int64_t citations = 0;
    std::size_t group = 0;  // index into RankedSet::groups()
};

class RankedSet {
public:
    const DocumentSet& source() const noexcept { return source_; }
    std::int64_t n() const noexcept { return source_.n(); }
    const std::vector<TieGroup>& groups() const noexcept { return groups_; }

    /// Documents in ascending rank order; within a tie group ordered by id.
    const std::vector<RankedDocument>& documents() const noexcept { return documents_; }

    bool contains(const std::string& doc_id) const { return position_.count(doc_id) != 0; }

    const RankedDocument& document(const std::string& doc_id) const { return documents_[position(doc_id)]; }

    const TieGroup& group_of(const std::string& doc_id) const { return groups_[document(doc_id).group]; }

    QuantileInterval interval_of(const std::string& doc_id) const {
        return group_intervals_[document(doc_id).group];
    }

    const QuantileInterval& group_interval(std::size_t group) const { return group_intervals_.at(group); }

private:
    friend RankedSet rank(const DocumentSet& set);

    explicit RankedSet(DocumentSet source) : source_(std::move(source)) {}

    std::size_t position(const std::string& doc_id) const {
        auto it = position_.find(doc_id);
        if (it == position_.end()) throw ArgumentError("unknown document '" + doc_id + "'");
        return it->second;
    }

    DocumentSet source_;
    std::vector<TieGroup> groups_;
    std::vector<QuantileInterval> group_intervals_;
    std::vector<RankedDocument> documents_;
    std::map<std::string, std::size_t> position_;
};

/// Sorts ascending by citations and forms tie groups. The result does not
/// depend on the input order of the records.
inline RankedSet rank(const DocumentSet& set) {
    const auto& records = set.records();
    RankedSet ranked(set);

    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (records[a].citations != records[b].citations) return records[a].citations < records[b].citations;
        return records[a].doc_id < records[b].doc_id;
    });

    const std::int64_t n = set.n();
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& rec = records[order[i]];
        const auto rank_pos = static_cast<std::int64_t>(i) + 1;
        if (ranked.groups_.empty() || ranked.groups_.back().citations != rec.citations)
            ranked.groups_.push_back({rec.citations, {}, rank_pos, rank_pos});
        auto& g = ranked.groups_.back();
        g.member_ids.push_back(rec.doc_id);
        g.rank_high = rank_pos;
        ranked.documents_.push_back({rec.doc_id, rec.citations, ranked.groups_.size() - 1});
    }
    for (std::size_t i = 0; i < ranked.documents_.size(); ++i) {
        if (!ranked.position_.emplace(ranked.documents_[i].doc_id, i).second)
            throw ArgumentError("duplicate document id '" + ranked.documents_[i].doc_id + "'");
    }
    for (const auto& g : ranked.groups_) ranked.group_intervals_.push_back(interval_for(g, n));
    return ranked;
}

}

#endif
