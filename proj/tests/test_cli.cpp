#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

namespace {

struct Result {
    int code;
    std::string out;
};

// Runs the pct binary through the shell; stderr is discarded unless captured.
Result pct(const std::string& args, bool merge_stderr = false, const std::string& env = "") {
    const std::string cmd = (env.empty() ? "" : "env " + env + " ") + std::string(PCT_BINARY) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& name) { return std::string(PCT_FIXTURES) + "/" + name; }

}

TEST(Cli, AttributeCsv) {
    const auto r = pct("attribute --scheme top50 --rule fractional --format csv --input " + fixture("five.csv"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("default,c,3,3,3,2/5,3/5,1/2,1/2,1/2\n"), std::string::npos);
}

TEST(Cli, ReadsStdin) {
    const auto r = pct("indicators --scheme pr6 --format csv --input - < " + fixture("eight.csv"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("default,8,pr6,fractional,382/25,191/100,,382/25,0"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(pct("attribute --scheme nope --input " + fixture("five.csv")).code, 3);
    EXPECT_EQ(pct("attribute --scheme topx=2 --input " + fixture("five.csv")).code, 3);
    EXPECT_EQ(pct("attribute --scheme top50 --rule sideways --input " + fixture("five.csv")).code, 3);
    EXPECT_EQ(pct("attribute --input " + fixture("five.csv")).code, 3);
    EXPECT_EQ(pct("attribute --scheme top50 --input " + fixture("missing.csv")).code, 2);
    EXPECT_EQ(pct("attribute --scheme top50 --input " + fixture("pr6.json")).code, 2);
    EXPECT_EQ(pct("attribute --scheme top50 --rule midpoint --boundary error --input " + fixture("five.csv")).code,
              4);
    EXPECT_EQ(pct("schemes validate " + fixture("halves.txt")).code, 0);
    EXPECT_EQ(pct("schemes validate " + fixture("five.csv")).code, 3);
}

TEST(Cli, ParseErrorNamesLine) {
    const auto r = pct("attribute --scheme top50 --input " + fixture("bad_negative.csv"), true);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("line 3"), std::string::npos) << r.out;
}

TEST(Cli, BoundaryWarningGoesToStderr) {
    const auto quiet = pct("attribute --scheme top50 --rule midpoint --format csv --input " + fixture("five.csv"));
    const auto loud =
        pct("attribute --scheme top50 --rule midpoint --format csv --input " + fixture("five.csv"), true);
    EXPECT_EQ(quiet.code, 0);
    EXPECT_EQ(quiet.out.find("warning"), std::string::npos);
    EXPECT_NE(loud.out.find("warning"), std::string::npos);
}

TEST(Cli, PrecisionFromEnvironment) {
    const auto args = "indicators --scheme pr6 --input " + fixture("eight.csv");
    EXPECT_NE(pct(args).out.find("15.28\n"), std::string::npos);
    EXPECT_NE(pct(args, false, "PCT_PRECISION=6").out.find("15.2800"), std::string::npos);
    EXPECT_NE(pct(args + " --precision 3", false, "PCT_PRECISION=6").out.find("15.3"), std::string::npos);
    EXPECT_EQ(pct(args, false, "PCT_PRECISION=abc").code, 3);
}

TEST(Cli, SchemesShowRoundTrips) {
    const auto r = pct("schemes show pr6");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"99/100\""), std::string::npos);
    EXPECT_EQ(pct("schemes list").code, 0);
}

TEST(Cli, DeterministicBytes) {
    const auto args = "report --scheme pr6 --format json --input " + fixture("grouped.csv");
    EXPECT_EQ(pct(args).out, pct(args).out);
}
