// Test-only reference computations. Nothing here calls into ranking or
// scoring; intervals and overlaps are rebuilt from first principles.
#ifndef PCT_TESTS_ORACLE_HPP
#define PCT_TESTS_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "pct/model.hpp"
#include "pct/rational.hpp"

namespace oracle {

using pct::Rational;

struct Interval {
    Rational low, high;
};

/// [#worse / N, #(worse or equal) / N] by direct counting.
inline Interval interval_by_counting(const std::vector<std::int64_t>& citations, std::size_t doc) {
    std::int64_t worse = 0, worse_or_equal = 0;
    for (auto c : citations) {
        if (c < citations[doc]) ++worse;
        if (c <= citations[doc]) ++worse_or_equal;
    }
    const auto n = static_cast<std::int64_t>(citations.size());
    return {Rational(worse, n), Rational(worse_or_equal, n)};
}

/// Splits [0,1] at every interval end and class boundary, assigns each
/// elementary segment to the class containing its midpoint, and sums lengths.
inline std::vector<Rational> refinement_fractions(const Interval& iv, const std::vector<Rational>& boundaries) {
    std::vector<Rational> cuts = boundaries;
    cuts.push_back(iv.low);
    cuts.push_back(iv.high);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Rational> mass(boundaries.size() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rational a = cuts[i], b = cuts[i + 1];
        if (a < iv.low || b > iv.high) continue;
        const Rational mid = (a + b) / 2;
        for (std::size_t k = 0; k + 1 < boundaries.size(); ++k) {
            if (boundaries[k] < mid && mid < boundaries[k + 1]) {
                mass[k] += b - a;
                break;
            }
        }
    }
    const Rational width = iv.high - iv.low;
    for (auto& m : mass) m /= width;
    return mass;
}

struct Instance {
    std::vector<std::int64_t> citations;
    std::vector<Rational> boundaries;
    std::vector<Rational> weights;
};

/// N <= max_n, citations drawn from a range that forces ties of any
/// multiplicity, and a random valid scheme of at most max_classes classes.
inline Instance random_instance(std::mt19937_64& rng, int max_n = 12, int max_classes = 10) {
    Instance inst;
    const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
    const int spread = std::uniform_int_distribution<int>(0, n)(rng);
    std::uniform_int_distribution<std::int64_t> cit(0, spread);
    for (int i = 0; i < n; ++i) inst.citations.push_back(cit(rng));

    const int classes = std::uniform_int_distribution<int>(1, max_classes)(rng);
    std::vector<Rational> inner;
    std::uniform_int_distribution<std::int64_t> den_dist(2, 40);
    while (static_cast<int>(inner.size()) < classes - 1) {
        const std::int64_t den = den_dist(rng);
        const Rational b(std::uniform_int_distribution<std::int64_t>(1, den - 1)(rng), den);
        if (std::find(inner.begin(), inner.end(), b) == inner.end()) inner.push_back(b);
    }
    std::sort(inner.begin(), inner.end());
    inst.boundaries.push_back(0);
    inst.boundaries.insert(inst.boundaries.end(), inner.begin(), inner.end());
    inst.boundaries.push_back(1);

    std::uniform_int_distribution<std::int64_t> w(-5, 20);
    std::uniform_int_distribution<std::int64_t> wd(1, 4);
    for (int k = 0; k < classes; ++k) inst.weights.emplace_back(w(rng), wd(rng));
    return inst;
}

/// Distinct citation counts in shuffled order.
inline std::vector<std::int64_t> random_distinct(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::int64_t> out(n);
    std::int64_t c = std::uniform_int_distribution<std::int64_t>(0, 3)(rng);
    for (auto& x : out) {
        x = c;
        c += std::uniform_int_distribution<std::int64_t>(1, 5)(rng);
    }
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

}

#endif
