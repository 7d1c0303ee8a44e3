#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "commands.hpp"
#include "quantity.hpp"

namespace fs = std::filesystem;
using namespace qli::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

double value_of(const std::string& text, const std::string& key)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string name;
        double v = 0.0;
        if (fields >> name && name == key && fields >> v)
            return v;
    }
    FAIL("missing key " << key);
    return 0.0;
}

fs::path temp(const std::string& name) { return fs::temp_directory_path() / ("qli_cli_" + name); }

} // namespace

TEST_CASE("quantities")
{
    std::ostringstream warn;
    CHECK(parse_quantity("4uJ", Dimension::Energy, &warn) == doctest::Approx(4e-6));
    CHECK(parse_quantity("17.2mW", Dimension::Power, &warn) == doctest::Approx(17.2e-3));
    CHECK(parse_quantity("20 ns", Dimension::Time, &warn) == doctest::Approx(20e-9));
    CHECK(parse_quantity("12.5MHz", Dimension::Frequency, &warn) == doctest::Approx(12.5e6));
    CHECK(warn.str().empty());
    CHECK(parse_quantity("1e-6", Dimension::Energy, &warn) == doctest::Approx(1e-6));
    CHECK_FALSE(warn.str().empty());
    CHECK_THROWS_AS(parse_quantity("4uW", Dimension::Energy, nullptr), UsageError);
    CHECK_THROWS_AS(parse_quantity("abc", Dimension::Energy, nullptr), UsageError);
    const auto range = parse_range("0:120:1");
    CHECK(range.start == 0.0);
    CHECK(range.stop == 120.0);
    CHECK(range.step == 1.0);
    CHECK_THROWS_AS(parse_range("0:120"), UsageError);
}

TEST_CASE("usage errors")
{
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"keyrate"}).code == kExitUsage);
    CHECK(cli({"attack-budget", "--pulse-energy", "4parsecs"}).code == kExitUsage);
    CHECK(cli({"keyrate", "--protocol", "e91"}).code != kExitOk);
}

TEST_CASE("keyrate")
{
    const auto r = cli({"keyrate", "--protocol", "sarg04", "--dist-km", "0:20:10", "--pulse-energy", "0,4uJ"});
    REQUIRE(r.code == kExitOk);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "distance_km,loss_db,t,protocol,pulse_energy_j,mu,mu_ext,mu_prime,rate_estimated,rate_actual,secure");
    int rows = 0;
    for (std::string line; std::getline(in, line);)
        ++rows;
    CHECK(rows == 6);

    CHECK(cli({"keyrate", "--protocol", "sarg04", "--pulse-energy=-4uJ"}).code == kExitError);
}

TEST_CASE("cutoff")
{
    const auto r = cli({"cutoff", "--protocol", "sarg04", "--pulse-energy", "8uJ,10uJ"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.rfind("pulse_energy_j,cutoff_km\n", 0) == 0);
    CHECK(r.out.find("94.99") != std::string::npos);
    CHECK(r.out.find("88.53") != std::string::npos);
    const auto none = cli({"cutoff", "--protocol", "sarg04", "--pulse-energy", "4uJ"});
    CHECK(none.out.find("none") != std::string::npos);
}

TEST_CASE("attack budget")
{
    const auto r = cli({"attack-budget", "--pulse-energy", "4uJ"});
    REQUIRE(r.code == kExitOk);
    CHECK(value_of(r.out, "average_power") == doctest::Approx(4.0));
    CHECK(value_of(r.out, "cw_equivalent_power") == doctest::Approx(200.0));
    CHECK(value_of(r.out, "burst_repetition_rate") == doctest::Approx(5e6));

    const auto ref = cli({"attack-budget", "--pulse-energy", "0.344nJ"});
    REQUIRE(ref.code == kExitOk);
    CHECK(value_of(ref.out, "mu_inj") == doctest::Approx(3.32e-3));
    CHECK(value_of(ref.out, "coupling_attenuation") == doctest::Approx(119.0).epsilon(0.005));

    CHECK(cli({"attack-budget", "--pulse-energy=-4uJ"}).code == kExitError);
}

TEST_CASE("mu-inj from counter logs")
{
    const auto counts = temp("counts.csv");
    const auto dark = temp("dark.csv");
    {
        // 58.95 and 25.7 counts/s over ten 1 s bins.
        std::ofstream c(counts), d(dark);
        c << "time_s,counts\n";
        d << "time_s,counts\n";
        for (int i = 0; i < 10; ++i) {
            c << i << ',' << (i % 2 ? 58.0 : 59.9) << '\n';
            d << i << ',' << (i % 2 ? 25.0 : 26.4) << '\n';
        }
    }
    const auto r = cli({"mu-inj", "--counts", counts.string(), "--dark", dark.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(value_of(r.out, "count_rate") == doctest::Approx(58.95));
    CHECK(value_of(r.out, "dark_rate") == doctest::Approx(25.7));
    CHECK(value_of(r.out, "mu_inj") == doctest::Approx(3.32555e-3).epsilon(1e-4));
    CHECK(value_of(r.out, "mu_inj_std_error") > 0.0);

    CHECK(cli({"mu-inj", "--counts", counts.string()}).code == kExitUsage);
    CHECK(cli({"mu-inj", "--counts", temp("absent.csv").string(), "--dark-rate", "25Hz"}).code == kExitError);
    fs::remove(counts);
    fs::remove(dark);
}

TEST_CASE("qrng and randtest")
{
    const auto a = temp("a.bin");
    const auto b = temp("b.bin");
    const std::vector<std::string> base{"qrng", "--bits", "40000", "--rate-set", "20MHz", "--rate-reset", "5MHz"};
    auto with = [&](std::vector<std::string> extra) {
        auto args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        return cli(args);
    };
    REQUIRE(with({"--seed", "7", "-o", a.string()}).code == kExitOk);
    REQUIRE(with({"--seed", "7", "-o", b.string()}).code == kExitOk);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).size() == 5000);
    REQUIRE(with({"--seed", "8", "-o", b.string()}).code == kExitOk);
    CHECK(slurp(a) != slurp(b));

    const auto csv = temp("report.csv");
    const auto r = cli({"randtest", "--input", a.string(), "--csv", csv.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("FAIL") != std::string::npos);
    CHECK(slurp(csv).rfind("test,block_index,statistic,pass\n", 0) == 0);

    CHECK(cli({"randtest", "--input", temp("missing.bin").string()}).code == kExitError);
    CHECK(cli({"randtest", "--input", a.string(), "--tests", "diehard"}).code == kExitError);
    for (const auto& p : {a, b, csv})
        fs::remove(p);
}
