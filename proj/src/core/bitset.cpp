#include "sipdec/bitset.hpp"

#include <cassert>

namespace sipdec {

Bitset::Bitset(std::size_t bits, bool filled) :
    bits_(bits),
    words_((bits + word_bits - 1) / word_bits, 0)
{
    if (filled)
        set_all();
}

void Bitset::set_all()
{
    for (auto & w : words_)
        w = ~Word{0};
    if (auto tail = bits_ % word_bits; tail != 0)
        words_.back() = (Word{1} << tail) - 1;
}

void Bitset::clear()
{
    for (auto & w : words_)
        w = 0;
}

std::size_t Bitset::count() const
{
    std::size_t result = 0;
    for (auto w : words_)
        result += static_cast<std::size_t>(std::popcount(w));
    return result;
}

bool Bitset::any() const
{
    for (auto w : words_)
        if (w)
            return true;
    return false;
}

bool Bitset::intersects(const Bitset & other) const
{
    assert(bits_ == other.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i])
            return true;
    return false;
}

bool Bitset::is_subset_of(const Bitset & other) const
{
    assert(bits_ == other.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i])
            return false;
    return true;
}

Bitset & Bitset::operator&=(const Bitset & other)
{
    assert(bits_ == other.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= other.words_[i];
    return *this;
}

Bitset & Bitset::operator|=(const Bitset & other)
{
    assert(bits_ == other.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= other.words_[i];
    return *this;
}

Bitset & Bitset::subtract(const Bitset & other)
{
    assert(bits_ == other.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= ~other.words_[i];
    return *this;
}

std::size_t Bitset::find_first() const
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w])
            return w * word_bits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return npos;
}

std::size_t Bitset::find_next(std::size_t after) const
{
    std::size_t i = after + 1;
    if (i >= bits_)
        return npos;
    std::size_t w = i / word_bits;
    Word word = words_[w] & (~Word{0} << (i % word_bits));
    while (true) {
        if (word)
            return w * word_bits + static_cast<std::size_t>(std::countr_zero(word));
        if (++w == words_.size())
            return npos;
        word = words_[w];
    }
}

std::vector<std::size_t> Bitset::to_vector() const
{
    std::vector<std::size_t> result;
    for_each([&](std::size_t i) { result.push_back(i); });
    return result;
}

Bitset operator&(Bitset lhs, const Bitset & rhs)
{
    lhs &= rhs;
    return lhs;
}

Bitset operator|(Bitset lhs, const Bitset & rhs)
{
    lhs |= rhs;
    return lhs;
}

} // namespace sipdec
