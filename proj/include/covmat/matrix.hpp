#pragma once

#include "covmat/bitvector.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace covmat {

/// Dense boolean matrix, one packed bit row per matrix row.
class BoolMatrix {
public:
    BoolMatrix() = default;
    BoolMatrix(std::size_t rows, std::size_t cols);

    /// Builds from nested 0/1 literals; all rows must have equal length.
    static BoolMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
    static BoolMatrix identity(std::size_t n);
    /// n x 1 matrix holding `v` as its only column.
    static BoolMatrix column(const BitVector& v);
    /// Takes ownership of prepared rows; each must have length `cols`.
    static BoolMatrix from_bit_rows(std::vector<BitVector> rows, std::size_t cols);

    std::size_t rows() const noexcept { return data_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t i, std::size_t j) const { return data_[i].test(j); }
    void set(std::size_t i, std::size_t j, bool value = true) { data_[i].set(j, value); }

    const BitVector& row(std::size_t i) const { return data_[i]; }
    BitVector& row(std::size_t i) { return data_[i]; }
    /// Column `j` as a bit vector of length rows().
    BitVector column_vector(std::size_t j) const;

    friend bool operator==(const BoolMatrix& a, const BoolMatrix& b) = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> data_;
};

/// Dense matrix over {0,1,2} stored as two bit planes per row: `ge1` holds the
/// entries >= 1 and `ge2` the entries == 2, with ge2 a subset of ge1. Entrywise
/// min and max are then plain AND and OR on both planes.
class TritMatrix {
public:
    TritMatrix() = default;
    TritMatrix(std::size_t rows, std::size_t cols);
    explicit TritMatrix(const BoolMatrix& m);

    static TritMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
    /// Takes ownership of prepared planes. Throws InvariantError unless ge2 is
    /// a subset of ge1 row by row.
    static TritMatrix from_planes(std::vector<BitVector> ge1, std::vector<BitVector> ge2,
                                  std::size_t cols);

    std::size_t rows() const noexcept { return ge1_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    std::uint8_t get(std::size_t i, std::size_t j) const {
        return static_cast<std::uint8_t>(ge1_[i].test(j) + ge2_[i].test(j));
    }
    void set(std::size_t i, std::size_t j, std::uint8_t value);

    const BitVector& ge1_row(std::size_t i) const { return ge1_[i]; }
    const BitVector& ge2_row(std::size_t i) const { return ge2_[i]; }
    /// Replaces row i. Throws InvariantError unless ge2 is a subset of ge1.
    void set_row(std::size_t i, BitVector ge1, BitVector ge2);

    bool has_twos() const noexcept;
    /// Boolean reading of a matrix without 2s. Throws InvariantError if a 2 is present.
    BoolMatrix to_bool() const;

    friend bool operator==(const TritMatrix& a, const TritMatrix& b) = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> ge1_;
    std::vector<BitVector> ge2_;
};

/// out[i][j] = OR_k (a[i][k] AND b[k][j]).
BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b);

/// out[i][j] = min_k (b[k][j] - a[i][k] + 1), entries of a and b read as 0/1
/// integers. Requires a.cols() >= 1.
TritMatrix sharp_product(const BoolMatrix& a, const BoolMatrix& b);

BoolMatrix transpose(const BoolMatrix& a);
TritMatrix transpose(const TritMatrix& a);

/// Entrywise max. Requires a non-empty list of equally shaped matrices.
BoolMatrix entrywise_join(std::span<const BoolMatrix> matrices);
/// Entrywise min. Requires a non-empty list of equally shaped matrices.
TritMatrix entrywise_meet(std::span<const TritMatrix> matrices);

/// True iff a[i][j] <= b[i][j] everywhere.
bool leq(const BoolMatrix& a, const BoolMatrix& b);
bool leq(const TritMatrix& a, const BoolMatrix& b);

/// One row per line, entries separated by single spaces, trailing newline.
std::string dump(const BoolMatrix& m);
std::string dump(const TritMatrix& m);

} // namespace covmat
