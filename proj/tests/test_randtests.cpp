#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "qli/errors.hpp"
#include "qli/randtests.hpp"

using namespace qli;

namespace {

BitSequence random_bits(std::size_t n, std::uint64_t seed, double p1 = 0.5)
{
    std::mt19937_64 rng(seed);
    BitSequence s(n);
    for (std::size_t i = 0; i < n; ++i)
        s.set(i, static_cast<double>(rng() >> 11) * 0x1.0p-53 < p1);
    return s;
}

BitSequence pattern(std::size_t n, auto&& bit_at)
{
    BitSequence s(n);
    for (std::size_t i = 0; i < n; ++i)
        s.set(i, bit_at(i));
    return s;
}

// Runs counted by walking the ASCII text, independent of score_block.
std::array<std::array<std::uint32_t, 6>, 2> count_runs_ascii(const std::string& bits)
{
    std::array<std::array<std::uint32_t, 6>, 2> runs{};
    std::size_t i = 0;
    while (i < bits.size()) {
        std::size_t j = i;
        while (j < bits.size() && bits[j] == bits[i])
            ++j;
        ++runs[bits[i] == '1'][std::min<std::size_t>(j - i, 6) - 1];
        i = j;
    }
    return runs;
}

} // namespace

TEST_CASE("FIPS constants")
{
    CHECK(fips::kBlockBits == 20000);
    CHECK_FALSE(fips::kMonobit.contains(9725));
    CHECK(fips::kMonobit.contains(9726));
    CHECK(fips::kMonobit.contains(10274));
    CHECK_FALSE(fips::kMonobit.contains(10275));
    CHECK(fips::kRuns[0].contains(2315));
    CHECK(fips::kRuns[0].contains(2685));
    CHECK_FALSE(fips::kRuns[5].contains(210));
    CHECK(fips::kLongRun == 26);
}

TEST_CASE("all-zero block")
{
    const auto r = fips140_2(BitSequence(20000));
    CHECK(r.summary_for("monobit")->blocks_failed == 1);
    CHECK(r.summary_for("long_run")->blocks_failed == 1);
    CHECK_FALSE(r.all_passed());
    const auto block = fips::score_block(BitSequence(20000), 0);
    CHECK(block.ones == 0);
    CHECK(block.longest_run == 20000);
}

TEST_CASE("alternating block")
{
    const auto alt = pattern(20000, [](std::size_t i) { return i % 2 == 1; });
    const auto block = fips::score_block(alt, 0);
    CHECK(block.ones == 10000);
    CHECK(block.runs[0][0] == 10000);
    CHECK(block.runs[1][0] == 10000);
    CHECK(block.longest_run == 1);
    const auto r = fips140_2(alt);
    CHECK(r.summary_for("monobit")->blocks_failed == 0);
    CHECK(r.summary_for("runs")->blocks_failed == 1);
    CHECK(r.summary_for("long_run")->blocks_failed == 0);
}

TEST_CASE("poker statistic")
{
    // Nibbles 0..F repeated: eight values occur 313 times and eight 312 times,
    // X = 16/5000 * 8 * (313^2 + 312^2) - 5000.
    const auto flat = pattern(20000, [](std::size_t i) { return ((i / 4) % 16 >> (3 - i % 4)) & 1; });
    CHECK(fips::score_block(flat, 0).poker == doctest::Approx(0.0128).epsilon(1e-9));
    CHECK_FALSE(fips::score_block(flat, 0).poker_pass());
    // Constant nibble: X = 16/5000 * 5000^2 - 5000 = 75000.
    CHECK(fips::score_block(BitSequence(20000), 0).poker == doctest::Approx(75000.0));
}

TEST_CASE("runs against an independent counter")
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto bits = random_bits(20000, seed, seed == 3 ? 0.3 : 0.5);
        CHECK(fips::score_block(bits, 0).runs == count_runs_ascii(bits.to_ascii01()));
    }
}

TEST_CASE("biased and fair sequences")
{
    const auto biased = random_bits(10 * 20000, 5, 0.815);
    const auto rb = fips140_2(biased);
    CHECK(rb.summary_for("monobit")->blocks_tested == 10);
    CHECK(rb.summary_for("monobit")->blocks_failed == 10);

    const auto fair = random_bits(200 * 20000 + 123, 6);
    const auto rf = fips140_2(fair);
    CHECK(rf.summary_for("monobit")->blocks_tested == 200);
    for (const auto& s : rf.summary())
        CHECK(s.blocks_failed <= 1);
}

TEST_CASE("complement symmetry")
{
    const auto bits = random_bits(3 * 20000, 8, 0.49);
    auto flipped = bits;
    for (std::size_t i = 0; i < bits.size(); ++i)
        flipped.set(i, !bits[i]);
    for (std::size_t b = 0; b < 3; ++b) {
        const auto x = fips::score_block(bits, b * 20000);
        const auto y = fips::score_block(flipped, b * 20000);
        CHECK(x.ones + y.ones == 20000);
        CHECK(x.monobit_pass() == y.monobit_pass());
        CHECK(x.runs[0] == y.runs[1]);
        CHECK(x.runs[1] == y.runs[0]);
        CHECK(x.runs_pass() == y.runs_pass());
        CHECK(x.longest_run == y.longest_run);
    }
}

TEST_CASE("FIPS input length")
{
    CHECK_THROWS_AS(fips140_2(BitSequence(19999)), DomainError);
    CHECK_THROWS_AS(fips::score_block(BitSequence(40000), 4), DomainError);
}

TEST_CASE("chi-square on bytes")
{
    std::vector<std::uint8_t> same(4096, 0x5A);
    const auto degenerate = chi_square_bytes(same);
    CHECK(degenerate.statistic == doctest::Approx(255.0 * 4096));
    CHECK(degenerate.p_value < 1e-100);

    std::vector<std::uint8_t> uniform(256 * 40);
    for (std::size_t i = 0; i < uniform.size(); ++i)
        uniform[i] = static_cast<std::uint8_t>(i);
    const auto flat = chi_square_bytes(uniform);
    CHECK(flat.statistic == 0.0);
    CHECK(flat.p_value == doctest::Approx(1.0));

    CHECK_THROWS_AS(chi_square_bytes(std::vector<std::uint8_t>(255)), DomainError);

    // Tail probability against the chi-squared distribution object.
    const boost::math::chi_squared dist(255);
    std::vector<std::uint8_t> data(1 << 16);
    std::mt19937 rng(4);
    for (auto& b : data)
        b = static_cast<std::uint8_t>(rng() % 200);
    const auto c = chi_square_bytes(data);
    CHECK(c.p_value == doctest::Approx(boost::math::cdf(boost::math::complement(dist, c.statistic))).epsilon(1e-9));

    // Invariant under a fixed permutation of byte values.
    std::array<std::uint8_t, 256> perm;
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937(9));
    auto permuted = data;
    for (auto& b : permuted)
        b = perm[b];
    CHECK(chi_square_bytes(permuted).statistic == doctest::Approx(c.statistic).epsilon(1e-12));
}

TEST_CASE("chi-square p-values of a fair generator")
{
    // p lands in (0.001, 0.999) for at least 99% of seeds.
    int inside = 0;
    const int seeds = 1000;
    std::vector<std::uint8_t> data(1 << 20);
    for (int s = 0; s < seeds; ++s) {
        std::mt19937_64 rng(1000 + s);
        for (std::size_t i = 0; i < data.size(); i += 8) {
            const auto w = rng();
            for (int k = 0; k < 8; ++k)
                data[i + k] = static_cast<std::uint8_t>(w >> (8 * k));
        }
        const double p = chi_square_bytes(data).p_value;
        inside += p > 0.001 && p < 0.999;
    }
    CHECK(inside >= 990);
}

TEST_CASE("ASCII and packed inputs give identical reports")
{
    const auto bits = random_bits(2 * 20000 + 64, 12);
    const auto dir = std::filesystem::temp_directory_path();
    write_bits(dir / "qli_rt.bin", bits, BitFormat::Raw);
    write_bits(dir / "qli_rt.txt", bits, BitFormat::Ascii01);
    const auto a = score_file(dir / "qli_rt.bin", {}, BitFormat::Raw);
    const auto b = score_file(dir / "qli_rt.txt", {}, BitFormat::Ascii01);
    CHECK(a == b);
    CHECK(a.summary_for("chi_square").has_value());
    std::filesystem::remove(dir / "qli_rt.bin");
    std::filesystem::remove(dir / "qli_rt.txt");

    write_bits(dir / "qli_empty.bin", BitSequence{}, BitFormat::Raw);
    CHECK_THROWS_AS(score_file(dir / "qli_empty.bin", {}), DomainError);
    std::filesystem::remove(dir / "qli_empty.bin");
}

TEST_CASE("report output")
{
    const auto report = score_bits(BitSequence(20000), {true, true});
    std::ostringstream csv;
    write_report_csv(csv, report);
    CHECK(csv.str().rfind("test,block_index,statistic,pass\nmonobit,0,0,0\n", 0) == 0);
    std::ostringstream table;
    write_report_table(table, report);
    CHECK(table.str().find("FAIL") != std::string::npos);

    CHECK(parse_test_selection("fips").chi_square == false);
    CHECK(parse_test_selection("chisq,fips").fips);
    CHECK_THROWS_AS(parse_test_selection("dieharder"), DomainError);
    for (const auto& o : report.outcomes)
        CHECK(o.pass == o.threshold.contains(o.statistic));
}
