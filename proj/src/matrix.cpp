#include "covmat/matrix.hpp"

#include "covmat/error.hpp"

#include <string>

namespace covmat {

namespace {

std::string shape(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

template <typename A, typename B>
void require_same_shape(const A& a, const B& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(what) + ": shape mismatch " + shape(a.rows(), a.cols()) +
                             " vs " + shape(b.rows(), b.cols()));
}

template <typename M>
std::string dump_rows(const M& m) {
    std::string out;
    out.reserve(m.rows() * (2 * m.cols() + 1));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j != 0)
                out += ' ';
            out += static_cast<char>('0' + m.get(i, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// BoolMatrix

BoolMatrix::BoolMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), data_(rows, BitVector(cols)) {}

BoolMatrix BoolMatrix::from_bit_rows(std::vector<BitVector> rows, std::size_t cols) {
    for (const auto& row : rows)
        if (row.size() != cols)
            throw DimensionError("row length mismatch");
    BoolMatrix out;
    out.cols_ = cols;
    out.data_ = std::move(rows);
    return out;
}

BoolMatrix BoolMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    BoolMatrix out(rows.size(), cols);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != cols)
            throw DimensionError("ragged matrix literal");
        std::size_t j = 0;
        for (const int v : row) {
            if (v != 0 && v != 1)
                throw DimensionError("boolean matrix entry must be 0 or 1");
            out.set(i, j++, v == 1);
        }
        ++i;
    }
    return out;
}

BoolMatrix BoolMatrix::identity(std::size_t n) {
    BoolMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        out.set(i, i);
    return out;
}

BoolMatrix BoolMatrix::column(const BitVector& v) {
    BoolMatrix out(v.size(), 1);
    v.for_each_one([&](std::size_t i) { out.set(i, 0); });
    return out;
}

BitVector BoolMatrix::column_vector(std::size_t j) const {
    BitVector out(rows());
    for (std::size_t i = 0; i < rows(); ++i)
        if (data_[i].test(j))
            out.set(i);
    return out;
}

// ---------------------------------------------------------------------------
// TritMatrix

TritMatrix::TritMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), ge1_(rows, BitVector(cols)), ge2_(rows, BitVector(cols)) {}

TritMatrix::TritMatrix(const BoolMatrix& m) : cols_(m.cols()), ge2_(m.rows(), BitVector(m.cols())) {
    ge1_.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        ge1_.push_back(m.row(i));
}

TritMatrix TritMatrix::from_planes(std::vector<BitVector> ge1, std::vector<BitVector> ge2,
                                   std::size_t cols) {
    if (ge1.size() != ge2.size())
        throw DimensionError("trit planes differ in row count");
    for (std::size_t i = 0; i < ge1.size(); ++i) {
        if (ge1[i].size() != cols || ge2[i].size() != cols)
            throw DimensionError("trit row length mismatch");
        if (!ge2[i].is_subset_of(ge1[i]))
            throw InvariantError("trit row planes are inconsistent");
    }
    TritMatrix out;
    out.cols_ = cols;
    out.ge1_ = std::move(ge1);
    out.ge2_ = std::move(ge2);
    return out;
}

TritMatrix TritMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    TritMatrix out(rows.size(), cols);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != cols)
            throw DimensionError("ragged matrix literal");
        std::size_t j = 0;
        for (const int v : row) {
            if (v < 0 || v > 2)
                throw DimensionError("trit matrix entry must be 0, 1 or 2");
            out.set(i, j++, static_cast<std::uint8_t>(v));
        }
        ++i;
    }
    return out;
}

void TritMatrix::set(std::size_t i, std::size_t j, std::uint8_t value) {
    if (value > 2)
        throw InvariantError("trit value out of range");
    ge1_[i].set(j, value >= 1);
    ge2_[i].set(j, value == 2);
}

void TritMatrix::set_row(std::size_t i, BitVector ge1, BitVector ge2) {
    if (ge1.size() != cols_ || ge2.size() != cols_)
        throw DimensionError("trit row length mismatch");
    if (!ge2.is_subset_of(ge1))
        throw InvariantError("trit row planes are inconsistent");
    ge1_[i] = std::move(ge1);
    ge2_[i] = std::move(ge2);
}

bool TritMatrix::has_twos() const noexcept {
    for (const auto& r : ge2_)
        if (r.any())
            return true;
    return false;
}

BoolMatrix TritMatrix::to_bool() const {
    if (has_twos())
        throw InvariantError("matrix contains entries equal to 2; no boolean reading");
    BoolMatrix out(rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i)
        out.row(i) = ge1_[i];
    return out;
}

// ---------------------------------------------------------------------------
// Products

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("bool_product: inner dimensions differ (" + shape(a.rows(), a.cols()) +
                             " * " + shape(b.rows(), b.cols()) + ")");
    BoolMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto& dst = out.row(i);
        a.row(i).for_each_one([&](std::size_t k) { dst |= b.row(k); });
    }
    return out;
}

// Row i of the result: terms with a[i][k] = 1 contribute b[k][*] (values 0/1);
// terms with a[i][k] = 0 contribute b[k][*] + 1 (values 1/2). So the ">= 1"
// plane is the AND of the b-rows selected by a-row i, and an entry reaches 2
// only when a-row i is all zero and every b-row has a 1 in that column.
TritMatrix sharp_product(const BoolMatrix& a, const BoolMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("sharp_product: inner dimensions differ (" + shape(a.rows(), a.cols()) +
                             " # " + shape(b.rows(), b.cols()) + ")");
    if (a.cols() == 0)
        throw DimensionError("sharp_product: inner dimension must be at least 1");

    BitVector all_rows(b.cols(), true);
    for (std::size_t k = 0; k < b.rows(); ++k)
        all_rows &= b.row(k);

    TritMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        BitVector ge1(b.cols(), true);
        bool selected = false;
        a.row(i).for_each_one([&](std::size_t k) {
            ge1 &= b.row(k);
            selected = true;
        });
        BitVector ge2 = selected ? BitVector(b.cols()) : all_rows;
        out.set_row(i, std::move(ge1), std::move(ge2));
    }
    return out;
}

BoolMatrix transpose(const BoolMatrix& a) {
    BoolMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        a.row(i).for_each_one([&](std::size_t j) { out.set(j, i); });
    return out;
}

TritMatrix transpose(const TritMatrix& a) {
    TritMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out.set(j, i, a.get(i, j));
    return out;
}

BoolMatrix entrywise_join(std::span<const BoolMatrix> matrices) {
    if (matrices.empty())
        throw PreconditionError("entrywise_join: empty list");
    BoolMatrix out = matrices.front();
    for (const auto& m : matrices.subspan(1)) {
        require_same_shape(out, m, "entrywise_join");
        for (std::size_t i = 0; i < out.rows(); ++i)
            out.row(i) |= m.row(i);
    }
    return out;
}

TritMatrix entrywise_meet(std::span<const TritMatrix> matrices) {
    if (matrices.empty())
        throw PreconditionError("entrywise_meet: empty list");
    TritMatrix out = matrices.front();
    for (const auto& m : matrices.subspan(1)) {
        require_same_shape(out, m, "entrywise_meet");
        for (std::size_t i = 0; i < out.rows(); ++i)
            out.set_row(i, out.ge1_row(i) & m.ge1_row(i), out.ge2_row(i) & m.ge2_row(i));
    }
    return out;
}

bool leq(const BoolMatrix& a, const BoolMatrix& b) {
    require_same_shape(a, b, "leq");
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (!a.row(i).is_subset_of(b.row(i)))
            return false;
    return true;
}

bool leq(const TritMatrix& a, const BoolMatrix& b) {
    require_same_shape(a, b, "leq");
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (a.ge2_row(i).any() || !a.ge1_row(i).is_subset_of(b.row(i)))
            return false;
    return true;
}

std::string dump(const BoolMatrix& m) { return dump_rows(m); }
std::string dump(const TritMatrix& m) { return dump_rows(m); }

} // namespace covmat
