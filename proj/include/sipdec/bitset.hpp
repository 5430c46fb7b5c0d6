#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sipdec {

// Fixed-width set over [0, size()). Width is chosen at construction; binary
// operations require equal widths.
class Bitset {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t bits, bool filled = false);

    std::size_t size() const { return bits_; }

    bool test(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1u; }
    void set(std::size_t i) { words_[i / word_bits] |= Word{1} << (i % word_bits); }
    void reset(std::size_t i) { words_[i / word_bits] &= ~(Word{1} << (i % word_bits)); }
    void set_all();
    void clear();

    std::size_t count() const;
    bool any() const;
    bool none() const { return !any(); }
    bool intersects(const Bitset & other) const;
    bool is_subset_of(const Bitset & other) const;

    Bitset & operator&=(const Bitset & other);
    Bitset & operator|=(const Bitset & other);
    // this = this \ other
    Bitset & subtract(const Bitset & other);

    std::size_t find_first() const;
    std::size_t find_next(std::size_t after) const;

    template <typename F>
    void for_each(F && f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            Word word = words_[w];
            while (word) {
                f(w * word_bits + static_cast<std::size_t>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
    }

    std::vector<std::size_t> to_vector() const;
    std::span<const Word> words() const { return words_; }

    friend bool operator==(const Bitset &, const Bitset &) = default;

private:
    std::size_t bits_ = 0;
    std::vector<Word> words_;
};

Bitset operator&(Bitset lhs, const Bitset & rhs);
Bitset operator|(Bitset lhs, const Bitset & rhs);

} // namespace sipdec
