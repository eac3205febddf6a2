#include <gtest/gtest.h>

#include "pct/model.hpp"

using pct::Rational;

namespace {

void expect_valid_partition(const pct::PRScheme& s) {
    ASSERT_FALSE(s.classes().empty());
    EXPECT_EQ(s.classes().front().lower, 0);
    EXPECT_EQ(s.classes().back().upper, 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_EQ(s.classes()[i].index, static_cast<int>(i) + 1);
        EXPECT_LT(s.classes()[i].lower, s.classes()[i].upper);
        if (i > 0) {
            EXPECT_EQ(s.classes()[i].lower, s.classes()[i - 1].upper);
        }
    }
}

}

TEST(Schemes, BuiltinsAreValidPartitions) {
    for (const char* name : {"top50", "pr6", "pr100", "topx(1/10)", "topx=0.01", "topx=25%"}) {
        SCOPED_TRACE(name);
        expect_valid_partition(pct::builtin_scheme(name));
    }
}

TEST(Schemes, Pr6Classes) {
    const auto s = pct::builtin_scheme("pr6");
    ASSERT_EQ(s.size(), 6u);
    EXPECT_EQ(s.at(3).lower, Rational(3, 4));
    EXPECT_EQ(s.at(3).upper, Rational(9, 10));
    EXPECT_EQ(s.at(3).weight, 3);
    EXPECT_EQ(s.at(6).lower, Rational(99, 100));
}

TEST(Schemes, Pr100Classes) {
    const auto s = pct::builtin_scheme("pr100");
    ASSERT_EQ(s.size(), 100u);
    EXPECT_EQ(s.at(88).lower, Rational(87, 100));
    EXPECT_EQ(s.at(88).upper, Rational(88, 100));
    EXPECT_EQ(s.at(88).weight, 88);
}

TEST(Schemes, TopX) {
    const auto s = pct::builtin_scheme("topx(1/10)");
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.at(1).upper, Rational(9, 10));
    EXPECT_EQ(s.at(1).weight, 0);
    EXPECT_EQ(s.at(2).weight, 1);
    EXPECT_TRUE(s.same_classes(pct::builtin_scheme("topx=0.1")));
    EXPECT_THROW(pct::builtin_scheme("topx(0)"), pct::ConfigError);
    EXPECT_THROW(pct::builtin_scheme("topx(1)"), pct::ConfigError);
    EXPECT_THROW(pct::builtin_scheme("topx(3/2)"), pct::ConfigError);
    EXPECT_THROW(pct::builtin_scheme("topx(abc)"), pct::ConfigError);
    EXPECT_THROW(pct::builtin_scheme("pr7"), pct::ConfigError);
}

TEST(Schemes, CustomJsonMatchesBuiltins) {
    EXPECT_TRUE(pct::load_custom_scheme(R"({"boundaries": ["0", "1/2", "1"], "weights": ["0", "1"]})")
                    .same_classes(pct::top50_scheme()));
    EXPECT_TRUE(pct::load_custom_scheme(
                    R"({"boundaries": [0, "0.5", "3/4", "0.9", "19/20", "0.99", 1], "weights": [1, 2, 3, 4, 5, 6]})")
                    .same_classes(pct::pr6_scheme()));
}

TEST(Schemes, CustomPlainText) {
    const auto s = pct::load_custom_scheme("# two classes\nname = halves\nboundaries = 0, 1/2, 1\nweights = 0 1\n");
    EXPECT_EQ(s.name(), "halves");
    EXPECT_TRUE(s.same_classes(pct::top50_scheme()));
}

TEST(Schemes, CustomRejectsInvalidDefinitions) {
    EXPECT_THROW(pct::load_custom_scheme(R"({"boundaries": ["0", "3/4", "1/2", "1"], "weights": [1, 2, 3]})"),
                 pct::ConfigError);
    EXPECT_THROW(pct::load_custom_scheme(R"({"boundaries": ["0", "1/2", "1/2", "1"], "weights": [1, 2, 3]})"),
                 pct::ConfigError);
    EXPECT_THROW(pct::load_custom_scheme(R"({"boundaries": ["0", "1/2", "1"], "weights": [1]})"), pct::ConfigError);
    EXPECT_THROW(pct::load_custom_scheme(R"({"boundaries": ["0", "1/2", "3/2"], "weights": [1, 2]})"),
                 pct::ConfigError);
    EXPECT_THROW(pct::load_custom_scheme(R"({"boundaries": ["1/10", "1"], "weights": [1]})"), pct::ConfigError);
    EXPECT_THROW(pct::load_custom_scheme(R"({"boundaries": [0, 0.5, 1], "weights": [0, 1]})"), pct::ConfigError);
    EXPECT_THROW(pct::load_custom_scheme(R"({"boundaries": [0, 1)"), pct::ConfigError);
    EXPECT_THROW(pct::load_custom_scheme(R"({"weights": [1]})"), pct::ConfigError);
    EXPECT_THROW(pct::load_custom_scheme("boundaries = 0, 1\n"), pct::ConfigError);
    EXPECT_THROW(pct::load_custom_scheme("boundaries = 0, x, 1\nweights = 1 2\n"), pct::ConfigError);
}

TEST(Schemes, JsonDefinitionRoundTripsBitExact) {
    for (const char* name : {"top50", "pr6", "pr100", "topx(1/10)"}) {
        const auto s = pct::builtin_scheme(name);
        const std::string text = pct::scheme_to_json(s).dump();
        const auto back = pct::load_custom_scheme(text);
        EXPECT_TRUE(back.same_classes(s));
        EXPECT_EQ(back.name(), s.name());
        EXPECT_EQ(pct::scheme_to_json(back).dump(), text);
    }
}

TEST(TheoreticalTotal, BuiltinSchemes) {
    for (std::int64_t n : {1, 8, 999, 1000}) {
        EXPECT_EQ(pct::theoretical_total(pct::top50_scheme(), n), Rational(n, 2));
        EXPECT_EQ(pct::theoretical_total(pct::pr6_scheme(), n), Rational(191 * n, 100));
        EXPECT_EQ(pct::theoretical_total(pct::pr100_scheme(), n), Rational(101 * n, 2));
    }
}

TEST(DocumentSet, RejectsEmptyAndNegative) {
    EXPECT_THROW(pct::DocumentSet({}), pct::ArgumentError);
    EXPECT_THROW(pct::DocumentSet({{"a", -1, std::nullopt}}), pct::ArgumentError);
    EXPECT_EQ(pct::make_document_set({1, 2, 3}).n(), 3);
}
