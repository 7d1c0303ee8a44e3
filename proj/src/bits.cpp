#include "qli/bits.hpp"

#include <bit>
#include <fstream>
#include <iterator>
#include <numeric>

#include "qli/errors.hpp"

namespace qli {

BitSequence::BitSequence(std::size_t n_bits) : bytes_((n_bits + 7) / 8, 0), size_(n_bits) {}

BitSequence BitSequence::from_bytes(std::span<const std::uint8_t> bytes)
{
    return from_bytes(bytes, bytes.size() * 8);
}

BitSequence BitSequence::from_bytes(std::span<const std::uint8_t> bytes, std::size_t n_bits)
{
    if (n_bits > bytes.size() * 8)
        throw DomainError("bit count exceeds the supplied bytes");
    BitSequence seq;
    seq.bytes_.assign(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>((n_bits + 7) / 8));
    seq.size_ = n_bits;
    if (n_bits % 8 != 0)
        seq.bytes_.back() &= static_cast<std::uint8_t>(0xFFu << (8 - n_bits % 8));
    return seq;
}

BitSequence BitSequence::from_ascii01(std::string_view text)
{
    BitSequence seq;
    for (char c : text) {
        if (c == '0' || c == '1')
            seq.push_back(c == '1');
        else if (c != '\n' && c != '\r' && c != ' ' && c != '\t')
            throw FormatError(std::string("unexpected character '") + c + "' in ASCII bit data");
    }
    return seq;
}

void BitSequence::set(std::size_t i, bool bit)
{
    const auto mask = static_cast<std::uint8_t>(1u << (7 - (i & 7)));
    if (bit)
        bytes_[i >> 3] |= mask;
    else
        bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
}

void BitSequence::push_back(bool bit)
{
    if (size_ % 8 == 0)
        bytes_.push_back(0);
    ++size_;
    set(size_ - 1, bit);
}

std::size_t BitSequence::count_ones() const
{
    // Padding bits are kept at zero.
    return std::accumulate(bytes_.begin(), bytes_.end(), std::size_t{0},
                           [](std::size_t acc, std::uint8_t b) { return acc + std::popcount(b); });
}

std::string BitSequence::to_ascii01() const
{
    std::string out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i)
        out.push_back((*this)[i] ? '1' : '0');
    return out;
}

BitFormat parse_bit_format(std::string_view name)
{
    if (name == "raw")
        return BitFormat::Raw;
    if (name == "ascii01")
        return BitFormat::Ascii01;
    throw DomainError("unknown bit format '" + std::string(name) + "' (expected raw or ascii01)");
}

void write_bits(const std::filesystem::path& path, const BitSequence& bits, BitFormat format)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    if (format == BitFormat::Raw) {
        const auto bytes = bits.bytes();
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    } else {
        out << bits.to_ascii01() << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

BitSequence read_bits(const std::filesystem::path& path, BitFormat format)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (format == BitFormat::Raw) {
        std::span<const std::uint8_t> bytes(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size());
        return BitSequence::from_bytes(bytes);
    }
    return BitSequence::from_ascii01(std::string_view(raw.data(), raw.size()));
}

} // namespace qli
