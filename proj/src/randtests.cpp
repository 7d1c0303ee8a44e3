#include "qli/randtests.hpp"

#include <algorithm>
#include <bit>
#include <iomanip>
#include <map>
#include <ostream>

#include <boost/math/special_functions/gamma.hpp>

#include "qli/errors.hpp"
#include "qli/sweep_csv.hpp"

namespace qli {

namespace fips {

int BlockResult::runs_out_of_range() const
{
    int bad = 0;
    for (const auto& per_bit : runs) {
        for (std::size_t len = 0; len < kRuns.size(); ++len)
            bad += !kRuns[len].contains(per_bit[len]);
    }
    return bad;
}

BlockResult score_block(const BitSequence& bits, std::size_t first_bit)
{
    if (first_bit % 8 != 0 || first_bit + kBlockBits > bits.size())
        throw DomainError("FIPS block must be byte aligned and complete");
    const auto bytes = bits.bytes().subspan(first_bit / 8, kBlockBits / 8);

    BlockResult r;
    std::array<std::uint32_t, 16> nibbles{};
    for (std::uint8_t b : bytes) {
        r.ones += static_cast<std::size_t>(std::popcount(b));
        ++nibbles[b >> 4];
        ++nibbles[b & 0x0F];
    }
    std::uint64_t sum_sq = 0;
    for (auto f : nibbles)
        sum_sq += std::uint64_t{f} * f;
    // X = (16/5000) sum f^2 - 5000, kept exact until the final division.
    r.poker = static_cast<double>(static_cast<std::int64_t>(16 * sum_sq) - 25'000'000) / 5000.0;

    bool current = bits[first_bit];
    std::size_t run = 0;
    auto close_run = [&] {
        ++r.runs[current][std::min<std::size_t>(run, 6) - 1];
        r.longest_run = std::max(r.longest_run, run);
    };
    for (std::size_t i = first_bit; i < first_bit + kBlockBits; ++i) {
        const bool bit = bits[i];
        if (bit == current) {
            ++run;
        } else {
            close_run();
            current = bit;
            run = 1;
        }
    }
    close_run();
    return r;
}

} // namespace fips

std::array<std::uint64_t, 256> byte_histogram(std::span<const std::uint8_t> data, Exec exec)
{
    std::array<std::uint64_t, 256> hist{};
    const auto n = static_cast<std::ptrdiff_t>(data.size());
    if (exec == Exec::Serial) {
        for (std::uint8_t b : data)
            ++hist[b];
        return hist;
    }
#pragma omp parallel
    {
        std::array<std::uint64_t, 256> local{};
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            ++local[data[static_cast<std::size_t>(i)]];
#pragma omp critical
        for (std::size_t v = 0; v < 256; ++v)
            hist[v] += local[v];
    }
    return hist;
}

ChiSquareResult chi_square_bytes(std::span<const std::uint8_t> data, Exec exec)
{
    if (data.size() < kChiSquareMinBytes)
        throw DomainError("chi-square test needs at least 256 bytes");
    const auto hist = byte_histogram(data, exec);
    const double expected = static_cast<double>(data.size()) / 256.0;
    double chi2 = 0.0;
    for (auto count : hist) {
        const double diff = static_cast<double>(count) - expected;
        chi2 += diff * diff / expected;
    }
    const double p = boost::math::gamma_q(255.0 / 2.0, chi2 / 2.0);
    return {chi2, p, data.size()};
}

Threshold chi_square_threshold()
{
    static const Threshold t{2.0 * boost::math::gamma_q_inv(255.0 / 2.0, 0.999),
                             2.0 * boost::math::gamma_q_inv(255.0 / 2.0, 0.001), true};
    return t;
}

std::vector<TestSummary> TestReport::summary() const
{
    std::vector<TestSummary> out;
    for (const auto& o : outcomes) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& s) { return s.test == o.test; });
        if (it == out.end()) {
            out.push_back({o.test, 0, 0});
            it = std::prev(out.end());
        }
        ++it->blocks_tested;
        it->blocks_failed += !o.pass;
    }
    return out;
}

std::optional<TestSummary> TestReport::summary_for(std::string_view test) const
{
    for (auto& s : summary()) {
        if (s.test == test)
            return s;
    }
    return std::nullopt;
}

bool TestReport::all_passed() const
{
    return std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.pass; });
}

TestReport fips140_2(const BitSequence& bits, Exec exec)
{
    if (bits.size() < fips::kBlockBits)
        throw DomainError("FIPS 140-2 tests need at least 20000 bits");
    const std::size_t n_blocks = bits.size() / fips::kBlockBits;
    std::vector<fips::BlockResult> blocks(n_blocks);

    const auto n = static_cast<std::ptrdiff_t>(n_blocks);
    if (exec == Exec::Serial) {
        for (std::ptrdiff_t b = 0; b < n; ++b)
            blocks[static_cast<std::size_t>(b)] = fips::score_block(bits, static_cast<std::size_t>(b) * fips::kBlockBits);
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t b = 0; b < n; ++b)
            blocks[static_cast<std::size_t>(b)] = fips::score_block(bits, static_cast<std::size_t>(b) * fips::kBlockBits);
    }

    TestReport report;
    report.outcomes.reserve(4 * n_blocks);
    const Threshold runs_ok{0, 0, false};
    const Threshold long_ok{0, static_cast<double>(fips::kLongRun - 1), false};
    for (std::size_t b = 0; b < n_blocks; ++b) {
        const auto& r = blocks[b];
        report.outcomes.push_back({"monobit", b, static_cast<double>(r.ones), r.monobit_pass(), fips::kMonobit, {}});
        report.outcomes.push_back({"poker", b, r.poker, r.poker_pass(), fips::kPoker, {}});
        report.outcomes.push_back({"runs", b, static_cast<double>(r.runs_out_of_range()), r.runs_pass(), runs_ok, {}});
        report.outcomes.push_back({"long_run", b, static_cast<double>(r.longest_run), r.long_run_pass(), long_ok, {}});
    }
    return report;
}

TestReport chi_square_report(std::span<const std::uint8_t> data, Exec exec)
{
    const auto chi = chi_square_bytes(data, exec);
    const auto threshold = chi_square_threshold();
    TestReport report;
    report.outcomes.push_back({"chi_square", 0, chi.statistic, threshold.contains(chi.statistic), threshold, chi.p_value});
    return report;
}

TestSelection parse_test_selection(std::string_view list)
{
    TestSelection sel{false, false};
    while (!list.empty()) {
        const auto comma = list.find(',');
        const auto item = list.substr(0, comma);
        if (item == "fips")
            sel.fips = true;
        else if (item == "chisq")
            sel.chi_square = true;
        else
            throw DomainError("unknown test '" + std::string(item) + "' (expected fips or chisq)");
        if (comma == std::string_view::npos)
            break;
        list.remove_prefix(comma + 1);
    }
    if (!sel.fips && !sel.chi_square)
        throw DomainError("no tests selected");
    return sel;
}

TestReport score_bits(const BitSequence& bits, TestSelection tests, Exec exec)
{
    if (bits.empty())
        throw DomainError("no bits to test");
    TestReport report;
    if (tests.fips)
        report = fips140_2(bits, exec);
    if (tests.chi_square) {
        const auto whole = bits.bytes().first(bits.size() / 8);
        auto chi = chi_square_report(whole, exec);
        report.outcomes.insert(report.outcomes.end(), chi.outcomes.begin(), chi.outcomes.end());
    }
    return report;
}

TestReport score_file(const std::filesystem::path& path, TestSelection tests, BitFormat format, Exec exec)
{
    return score_bits(read_bits(path, format), tests, exec);
}

void write_report_table(std::ostream& out, const TestReport& report)
{
    out << std::left << std::setw(12) << "test" << std::right << std::setw(10) << "blocks"
        << std::setw(10) << "failed" << std::setw(14) << "failure_rate" << "  verdict\n";
    for (const auto& s : report.summary()) {
        out << std::left << std::setw(12) << s.test << std::right << std::setw(10) << s.blocks_tested
            << std::setw(10) << s.blocks_failed << std::setw(14) << std::setprecision(4)
            << s.failure_rate() << "  " << (s.blocks_failed == 0 ? "pass" : "FAIL") << '\n';
    }
    for (const auto& o : report.outcomes) {
        if (o.p_value)
            out << o.test << ": statistic " << o.statistic << ", p = " << *o.p_value << '\n';
    }
}

void write_report_csv(std::ostream& out, const TestReport& report)
{
    out << "test,block_index,statistic,pass\n";
    for (const auto& o : report.outcomes)
        out << o.test << ',' << o.block_index << ',' << format_double(o.statistic) << ','
            << (o.pass ? 1 : 0) << '\n';
}

} // namespace qli
