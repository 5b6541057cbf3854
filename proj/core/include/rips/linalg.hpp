#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace rips {

/// Prime field GF(p).
struct FieldSpec {
  std::uint32_t p = 2;

  /// Throws InvalidInput unless p is a prime <= 2^31.
  void validate() const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p ? s - p : s);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
  }
  std::uint32_t inv(std::uint32_t a) const;
  /// Reduces a signed integer into [0, p).
  std::uint32_t from_int(std::int64_t x) const {
    const std::int64_t r = x % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
  }
};

bool is_prime(std::uint64_t n);

struct Entry {
  std::uint32_t row;
  std::uint32_t value;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse vector with strictly increasing rows and nonzero values.
using SparseVector = std::vector<Entry>;

/// x <- x + c * y over the field.
void axpy(SparseVector& x, std::uint32_t c, const SparseVector& y, const FieldSpec& field);

/// Builds a canonical sparse vector from unsorted (row, value) pairs, summing
/// duplicates and dropping zeros.
SparseVector make_sparse(std::vector<std::pair<std::uint32_t, std::int64_t>> entries,
                         const FieldSpec& field);

struct SparseColumnMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<SparseVector> columns;
};

/// Incremental column space with one stored column per pivot (lowest row).
/// Stored columns are normalized to a unit pivot.
class PivotReducer {
 public:
  PivotReducer(FieldSpec field, std::size_t n_rows);

  /// Remainder of `v` after eliminating all stored pivots from the bottom up.
  SparseVector reduce(SparseVector v) const;

  /// Reduces and stores `v`; returns false if it was already in the span.
  bool insert(SparseVector v);

  std::size_t rank() const { return columns_.size(); }
  const FieldSpec& field() const { return field_; }

 private:
  FieldSpec field_;
  std::vector<std::int64_t> pivot_of_row_;
  std::vector<SparseVector> columns_;
};

/// Rank by left-to-right lowest-pivot column reduction. Columns flagged in
/// `skip` are not reduced (used for clearing); pivot rows are appended to
/// `pivot_rows` when given.
std::size_t column_rank(const SparseColumnMatrix& m, const FieldSpec& field,
                        const std::vector<bool>* skip = nullptr,
                        std::vector<std::uint32_t>* pivot_rows = nullptr);

/// Basis of the null space, as vectors over the column index set.
std::vector<SparseVector> kernel_basis(const SparseColumnMatrix& m, const FieldSpec& field);

}  // namespace rips
