#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "qli/bits.hpp"
#include "qli/errors.hpp"

using namespace qli;

TEST_CASE("MSB-first packing")
{
    BitSequence s;
    for (char c : std::string("10110000"))
        s.push_back(c == '1');
    s.push_back(true);
    REQUIRE(s.size() == 9);
    CHECK(s.bytes()[0] == 0xB0);
    CHECK(s.bytes()[1] == 0x80);
    CHECK(s.count_ones() == 4);
    CHECK(s.to_ascii01() == "101100001");

    const std::uint8_t raw[] = {0xFF, 0xFF};
    const auto cut = BitSequence::from_bytes(raw, 12);
    CHECK(cut.size() == 12);
    CHECK(cut.count_ones() == 12);
    CHECK_THROWS_AS(BitSequence::from_bytes(raw, 17), DomainError);
}

TEST_CASE("ASCII parsing")
{
    const auto s = BitSequence::from_ascii01("0101\n11 00\r\n");
    CHECK(s.to_ascii01() == "01011100");
    CHECK_THROWS_AS(BitSequence::from_ascii01("0102"), FormatError);
}

TEST_CASE("file formats agree")
{
    std::mt19937_64 rng(7);
    BitSequence s;
    for (int i = 0; i < 4096; ++i)
        s.push_back(rng() & 1);

    const auto dir = std::filesystem::temp_directory_path();
    const auto raw = dir / "qli_bits_test.bin";
    const auto txt = dir / "qli_bits_test.txt";
    write_bits(raw, s, BitFormat::Raw);
    write_bits(txt, s, BitFormat::Ascii01);
    CHECK(std::filesystem::file_size(raw) == 512);
    CHECK(read_bits(raw, BitFormat::Raw) == s);
    CHECK(read_bits(txt, BitFormat::Ascii01) == s);
    std::filesystem::remove(raw);
    std::filesystem::remove(txt);

    CHECK_THROWS(read_bits(dir / "qli_missing_bits.bin", BitFormat::Raw));
    CHECK(parse_bit_format("ascii01") == BitFormat::Ascii01);
    CHECK_THROWS_AS(parse_bit_format("hex"), DomainError);
}
