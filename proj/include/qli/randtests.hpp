#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qli/bits.hpp"
#include "qli/execution.hpp"

namespace qli {

// Acceptance interval for a test statistic.
struct Threshold {
    double lower = 0.0;
    double upper = 0.0;
    bool open = false;  // true: lower < x < upper, false: lower <= x <= upper

    bool contains(double x) const { return open ? (x > lower && x < upper) : (x >= lower && x <= upper); }
    bool operator==(const Threshold&) const = default;
};

namespace fips {

// FIPS 140-2 power-up tests on 20000-bit blocks (the values rngtest applies).
inline constexpr std::size_t kBlockBits = 20000;
inline constexpr Threshold kMonobit{9725, 10275, true};
inline constexpr Threshold kPoker{2.16, 46.17, true};
// Runs of length 1, 2, 3, 4, 5 and >= 6; same bounds for runs of zeros and ones.
inline constexpr std::array<Threshold, 6> kRuns{{
    {2315, 2685, false},
    {1114, 1386, false},
    {527, 723, false},
    {240, 384, false},
    {103, 209, false},
    {103, 209, false},
}};
// A run of 26 or more identical bits fails the long-run test.
inline constexpr std::size_t kLongRun = 26;

struct BlockResult {
    std::size_t ones = 0;
    double poker = 0.0;
    std::array<std::array<std::uint32_t, 6>, 2> runs{};  // [bit value][length bucket]
    std::size_t longest_run = 0;

    bool monobit_pass() const { return kMonobit.contains(static_cast<double>(ones)); }
    bool poker_pass() const { return kPoker.contains(poker); }
    int runs_out_of_range() const;
    bool runs_pass() const { return runs_out_of_range() == 0; }
    bool long_run_pass() const { return longest_run < kLongRun; }
};

// Scores the block that starts at `first_bit` (must be a multiple of 8).
BlockResult score_block(const BitSequence& bits, std::size_t first_bit);

} // namespace fips

struct ChiSquareResult {
    double statistic = 0.0;
    double p_value = 0.0;  // upper tail, 255 degrees of freedom
    std::size_t n_bytes = 0;
};

inline constexpr std::size_t kChiSquareMinBytes = 256;

std::array<std::uint64_t, 256> byte_histogram(std::span<const std::uint8_t> data,
                                              Exec exec = Exec::Parallel);
ChiSquareResult chi_square_bytes(std::span<const std::uint8_t> data, Exec exec = Exec::Parallel);

// The chi-square check passes while 0.001 < p < 0.999; as a statistic
// interval that is the matching pair of chi-square quantiles.
Threshold chi_square_threshold();

struct TestOutcome {
    std::string test;  // monobit, poker, runs, long_run, chi_square
    std::size_t block_index = 0;
    double statistic = 0.0;
    bool pass = false;
    Threshold threshold;
    std::optional<double> p_value;

    bool operator==(const TestOutcome&) const = default;
};

struct TestSummary {
    std::string test;
    std::size_t blocks_tested = 0;
    std::size_t blocks_failed = 0;

    double failure_rate() const
    {
        return blocks_tested == 0 ? 0.0 : static_cast<double>(blocks_failed) / blocks_tested;
    }
};

struct TestReport {
    std::vector<TestOutcome> outcomes;

    std::vector<TestSummary> summary() const;
    std::optional<TestSummary> summary_for(std::string_view test) const;
    bool all_passed() const;

    bool operator==(const TestReport&) const = default;
};

// Runs the four FIPS 140-2 tests on every complete 20000-bit block;
// trailing bits are ignored.
TestReport fips140_2(const BitSequence& bits, Exec exec = Exec::Parallel);

TestReport chi_square_report(std::span<const std::uint8_t> data, Exec exec = Exec::Parallel);

struct TestSelection {
    bool fips = true;
    bool chi_square = true;
};

// Comma list of "fips" and "chisq".
TestSelection parse_test_selection(std::string_view list);

// Both tests read the same logical bit string; chi-square uses its complete bytes.
TestReport score_bits(const BitSequence& bits, TestSelection tests, Exec exec = Exec::Parallel);
TestReport score_file(const std::filesystem::path& path, TestSelection tests,
                      BitFormat format = BitFormat::Raw, Exec exec = Exec::Parallel);

void write_report_table(std::ostream& out, const TestReport& report);
void write_report_csv(std::ostream& out, const TestReport& report);

} // namespace qli
