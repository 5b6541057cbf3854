#include "rips/linalg.hpp"

#include <algorithm>
#include <string>

#include "rips/error.hpp"

namespace rips {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

void FieldSpec::validate() const {
  if (p > (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw Error(ErrorKind::kInvalidInput,
                "field characteristic " + std::to_string(p) + " is not a prime <= 2^31");
  }
}

std::uint32_t FieldSpec::inv(std::uint32_t a) const {
  // Fermat: a^(p-2).
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint64_t e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

void axpy(SparseVector& x, std::uint32_t c, const SparseVector& y, const FieldSpec& field) {
  if (c == 0 || y.empty()) return;
  SparseVector out;
  out.reserve(x.size() + y.size());
  auto xi = x.begin();
  auto yi = y.begin();
  while (xi != x.end() || yi != y.end()) {
    if (yi == y.end() || (xi != x.end() && xi->row < yi->row)) {
      out.push_back(*xi++);
    } else if (xi == x.end() || yi->row < xi->row) {
      out.push_back({yi->row, field.mul(c, yi->value)});
      ++yi;
    } else {
      const std::uint32_t v = field.add(xi->value, field.mul(c, yi->value));
      if (v != 0) out.push_back({xi->row, v});
      ++xi;
      ++yi;
    }
  }
  x.swap(out);
}

SparseVector make_sparse(std::vector<std::pair<std::uint32_t, std::int64_t>> entries,
                         const FieldSpec& field) {
  std::sort(entries.begin(), entries.end());
  SparseVector out;
  for (std::size_t i = 0; i < entries.size();) {
    std::int64_t sum = 0;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].first == entries[i].first; ++j) {
      sum += entries[j].second;
    }
    const std::uint32_t v = field.from_int(sum);
    if (v != 0) out.push_back({entries[i].first, v});
    i = j;
  }
  return out;
}

PivotReducer::PivotReducer(FieldSpec field, std::size_t n_rows)
    : field_(field), pivot_of_row_(n_rows, -1) {}

SparseVector PivotReducer::reduce(SparseVector v) const {
  while (!v.empty()) {
    const Entry low = v.back();
    const std::int64_t idx = pivot_of_row_[low.row];
    if (idx < 0) break;
    axpy(v, field_.neg(low.value), columns_[static_cast<std::size_t>(idx)], field_);
  }
  return v;
}

bool PivotReducer::insert(SparseVector v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const std::uint32_t scale = field_.inv(v.back().value);
  if (scale != 1) {
    for (auto& e : v) e.value = field_.mul(e.value, scale);
  }
  pivot_of_row_[v.back().row] = static_cast<std::int64_t>(columns_.size());
  columns_.push_back(std::move(v));
  return true;
}

std::size_t column_rank(const SparseColumnMatrix& m, const FieldSpec& field,
                        const std::vector<bool>* skip, std::vector<std::uint32_t>* pivot_rows) {
  PivotReducer reducer(field, m.n_rows);
  for (std::size_t j = 0; j < m.n_cols; ++j) {
    if (skip && (*skip)[j]) continue;
    SparseVector col = reducer.reduce(m.columns[j]);
    if (col.empty()) continue;
    if (pivot_rows) pivot_rows->push_back(col.back().row);
    reducer.insert(std::move(col));
  }
  return reducer.rank();
}

std::vector<SparseVector> kernel_basis(const SparseColumnMatrix& m, const FieldSpec& field) {
  std::vector<std::int64_t> pivot_of_row(m.n_rows, -1);
  std::vector<SparseVector> reduced;
  std::vector<SparseVector> combos;
  std::vector<SparseVector> kernel;
  for (std::size_t j = 0; j < m.n_cols; ++j) {
    SparseVector r = m.columns[j];
    SparseVector v{{static_cast<std::uint32_t>(j), 1}};
    while (!r.empty()) {
      const std::int64_t idx = pivot_of_row[r.back().row];
      if (idx < 0) break;
      const auto& pr = reduced[static_cast<std::size_t>(idx)];
      const std::uint32_t c =
          field.mul(field.neg(r.back().value), field.inv(pr.back().value));
      axpy(r, c, pr, field);
      axpy(v, c, combos[static_cast<std::size_t>(idx)], field);
    }
    if (r.empty()) {
      kernel.push_back(std::move(v));
    } else {
      pivot_of_row[r.back().row] = static_cast<std::int64_t>(reduced.size());
      reduced.push_back(std::move(r));
      combos.push_back(std::move(v));
    }
  }
  return kernel;
}

}  // namespace rips
