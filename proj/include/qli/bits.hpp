#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qli {

// Packed bit string, MSB-first within each byte.
class BitSequence {
public:
    BitSequence() = default;
    explicit BitSequence(std::size_t n_bits);
    // First n_bits of packed data; n_bits defaults to all of it.
    static BitSequence from_bytes(std::span<const std::uint8_t> bytes);
    static BitSequence from_bytes(std::span<const std::uint8_t> bytes, std::size_t n_bits);
    static BitSequence from_ascii01(std::string_view text);

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool operator[](std::size_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u; }
    void set(std::size_t i, bool bit);
    void push_back(bool bit);

    std::size_t count_ones() const;
    std::span<const std::uint8_t> bytes() const { return bytes_; }
    std::string to_ascii01() const;

    bool operator==(const BitSequence&) const = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t size_ = 0;
};

enum class BitFormat { Raw, Ascii01 };

BitFormat parse_bit_format(std::string_view name);

// Raw files are padded with zero bits up to a whole byte.
void write_bits(const std::filesystem::path& path, const BitSequence& bits, BitFormat format);
BitSequence read_bits(const std::filesystem::path& path, BitFormat format);

} // namespace qli
