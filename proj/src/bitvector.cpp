#include "covmat/bitvector.hpp"

#include "covmat/error.hpp"

#include <algorithm>
#include <string>

namespace covmat {

namespace {

std::size_t words_for(std::size_t bits) {
    return (bits + BitVector::kWordBits - 1) / BitVector::kWordBits;
}

} // namespace

BitVector::BitVector(std::size_t size, bool value)
    : size_(size), words_(words_for(size), value ? ~Word{0} : Word{0}) {
    trim();
}

BitVector BitVector::from_indices(std::size_t size, std::span<const std::size_t> indices) {
    BitVector out(size);
    for (const auto i : indices) {
        if (i >= size)
            throw DimensionError("bit index " + std::to_string(i) + " out of range for size " +
                                 std::to_string(size));
        out.set(i);
    }
    return out;
}

void BitVector::trim() noexcept {
    const std::size_t tail = size_ % kWordBits;
    if (tail != 0 && !words_.empty())
        words_.back() &= (Word{1} << tail) - 1;
}

void BitVector::require_same_size(const BitVector& other) const {
    if (size_ != other.size_)
        throw DimensionError("bit vector length mismatch: " + std::to_string(size_) + " vs " +
                             std::to_string(other.size_));
}

void BitVector::fill(bool value) noexcept {
    for (auto& w : words_)
        w = value ? ~Word{0} : Word{0};
    trim();
}

void BitVector::resize(std::size_t size) {
    words_.resize(words_for(size), Word{0});
    size_ = size;
    trim();
}

std::size_t BitVector::count() const noexcept {
    std::size_t n = 0;
    for (const auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool BitVector::any() const noexcept {
    for (const auto w : words_)
        if (w != 0)
            return true;
    return false;
}

bool BitVector::all() const noexcept {
    return count() == size_;
}

bool BitVector::is_subset_of(const BitVector& other) const {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        if ((words_[w] & ~other.words_[w]) != 0)
            return false;
    return true;
}

bool BitVector::intersects(const BitVector& other) const {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        if ((words_[w] & other.words_[w]) != 0)
            return true;
    return false;
}

BitVector& BitVector::operator&=(const BitVector& other) {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] &= other.words_[w];
    return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] |= other.words_[w];
    return *this;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] ^= other.words_[w];
    return *this;
}

BitVector& BitVector::subtract(const BitVector& other) {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] &= ~other.words_[w];
    return *this;
}

BitVector BitVector::operator~() const {
    BitVector out(*this);
    for (auto& w : out.words_)
        w = ~w;
    out.trim();
    return out;
}

BitSelection::BitSelection(std::span<const std::size_t> kept) : size_(kept.size()) {
    for (std::size_t dst = 0; dst < kept.size();) {
        std::size_t len = 1;
        while (dst + len < kept.size() && kept[dst + len] == kept[dst] + len)
            ++len;
        runs_.push_back({kept[dst], dst, len});
        dst += len;
    }
}

BitVector BitVector::select(std::span<const std::size_t> kept) const {
    return select(BitSelection(kept));
}

BitVector BitVector::select(const BitSelection& selection) const {
    BitVector out(selection.size());
    for (const auto& run : selection.runs()) {
        if (run.len == 0)
            continue;
        if (run.src + run.len > size_)
            throw DimensionError("selection exceeds vector length");
        for (std::size_t done = 0; done < run.len;) {
            const std::size_t take = std::min<std::size_t>(kWordBits, run.len - done);
            const std::size_t s = run.src + done;
            Word bits = words_[s / kWordBits] >> (s % kWordBits);
            if (s % kWordBits != 0 && s / kWordBits + 1 < words_.size())
                bits |= words_[s / kWordBits + 1] << (kWordBits - s % kWordBits);
            if (take < kWordBits)
                bits &= (Word{1} << take) - 1;
            const std::size_t d = run.dst + done;
            out.words_[d / kWordBits] |= bits << (d % kWordBits);
            if (d % kWordBits != 0 && d / kWordBits + 1 < out.words_.size())
                out.words_[d / kWordBits + 1] |= bits >> (kWordBits - d % kWordBits);
            done += take;
        }
    }
    return out;
}

std::vector<std::size_t> BitVector::ones() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each_one([&](std::size_t i) { out.push_back(i); });
    return out;
}

} // namespace covmat
