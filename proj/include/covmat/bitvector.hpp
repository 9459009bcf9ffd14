#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace covmat {

class BitVector;

/// Ascending list of kept positions, stored as maximal runs so that repeated
/// selections over many rows cost O(runs + words) each.
class BitSelection {
public:
    struct Run {
        std::size_t src;
        std::size_t dst;
        std::size_t len;
    };

    explicit BitSelection(std::span<const std::size_t> kept);

    std::size_t size() const noexcept { return size_; }
    const std::vector<Run>& runs() const noexcept { return runs_; }

private:
    std::size_t size_ = 0;
    std::vector<Run> runs_;
};

/// Fixed-length packed bit vector. Bits past size() in the last word are
/// always zero, so word-level comparisons and popcounts need no masking.
class BitVector {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t size, bool value = false);

    static BitVector from_indices(std::size_t size, std::span<const std::size_t> indices);

    std::size_t size() const noexcept { return size_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    std::span<const Word> words() const noexcept { return words_; }
    std::span<Word> words() noexcept { return words_; }

    bool test(std::size_t i) const noexcept {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
    }
    void set(std::size_t i, bool value = true) noexcept {
        const Word mask = Word{1} << (i % kWordBits);
        if (value)
            words_[i / kWordBits] |= mask;
        else
            words_[i / kWordBits] &= ~mask;
    }
    void reset(std::size_t i) noexcept { set(i, false); }

    void fill(bool value) noexcept;
    /// Grows or shrinks; new positions are zero.
    void resize(std::size_t size);

    std::size_t count() const noexcept;
    bool any() const noexcept;
    bool none() const noexcept { return !any(); }
    bool all() const noexcept;

    bool is_subset_of(const BitVector& other) const;
    bool intersects(const BitVector& other) const;

    BitVector& operator&=(const BitVector& other);
    BitVector& operator|=(const BitVector& other);
    BitVector& operator^=(const BitVector& other);
    /// this &= ~other
    BitVector& subtract(const BitVector& other);
    BitVector operator~() const;

    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
    friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    friend bool operator==(const BitVector& a, const BitVector& b) = default;

    /// Keeps only the positions listed in `kept` (ascending), packing them.
    BitVector select(std::span<const std::size_t> kept) const;
    BitVector select(const BitSelection& selection) const;

    std::vector<std::size_t> ones() const;

    template <typename Fn>
    void for_each_one(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            Word word = words_[w];
            while (word != 0) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(word));
                fn(w * kWordBits + bit);
                word &= word - 1;
            }
        }
    }

private:
    void trim() noexcept;
    void require_same_size(const BitVector& other) const;

    std::size_t size_ = 0;
    std::vector<Word> words_;
};

} // namespace covmat
