#pragma once

// Dense reference implementation used only by tests: brute-force clique
// enumeration and Gaussian elimination over GF(p) on explicit matrices.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "rips/graph.hpp"

namespace oracle {

using Face = std::vector<std::uint32_t>;
using Faces = std::vector<std::vector<Face>>;  // by dimension

/// Every clique of size <= cap + 1, by dimension, in lexicographic order.
inline Faces cliques(const rips::Graph& g, int cap) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [a, b] : g.edges()) adj[a][b] = adj[b][a] = 1;
  Faces out(static_cast<std::size_t>(cap) + 1);
  Face cur;
  auto rec = [&](auto&& self, std::uint32_t start) -> void {
    for (std::uint32_t v = start; v < n; ++v) {
      bool ok = true;
      for (auto u : cur) ok = ok && adj[u][v];
      if (!ok) continue;
      cur.push_back(v);
      out[cur.size() - 1].push_back(cur);
      if (static_cast<int>(cur.size()) <= cap) self(self, v + 1);
      cur.pop_back();
    }
  };
  if (cap >= 0) rec(rec, 0);
  for (auto& level : out) std::sort(level.begin(), level.end());
  return out;
}

/// Rank of a dense matrix over GF(p) by row reduction.
inline std::size_t dense_rank(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  auto mod = [p](std::int64_t x) { return ((x % p) + p) % p; };
  auto inverse = [&](std::int64_t a) {
    std::int64_t r = 1, e = p - 2, b = mod(a);
    while (e > 0) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  for (auto& row : m)
    for (auto& x : row) x = mod(x);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const std::int64_t inv = inverse(m[rank][c]);
    for (auto& x : m[rank]) x = x * inv % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const std::int64_t f = m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] = mod(m[r][k] - f * m[rank][k]);
    }
    ++rank;
  }
  return rank;
}

/// Dense boundary matrix d_q : C_q -> C_{q-1} (q = 0 is the augmentation).
inline std::vector<std::vector<std::int64_t>> dense_boundary(const Faces& faces, int q) {
  if (q == 0) return {std::vector<std::int64_t>(faces[0].size(), 1)};
  std::map<Face, std::size_t> index;
  for (std::size_t i = 0; i < faces[q - 1].size(); ++i) index[faces[q - 1][i]] = i;
  std::vector<std::vector<std::int64_t>> m(faces[q - 1].size(),
                                           std::vector<std::int64_t>(faces[q].size(), 0));
  for (std::size_t j = 0; j < faces[q].size(); ++j) {
    const Face& f = faces[q][j];
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      Face g;
      for (std::size_t t = 0; t < f.size(); ++t)
        if (t != drop) g.push_back(f[t]);
      m[index.at(g)][j] = drop % 2 == 0 ? 1 : -1;
    }
  }
  return m;
}

/// Reduced Betti numbers 0..pmax of an explicit face list (all faces up to
/// dimension pmax + 1 must be present).
inline std::vector<std::size_t> reduced_betti(const Faces& faces, int pmax, std::int64_t p) {
  std::vector<std::size_t> rank(static_cast<std::size_t>(pmax) + 2, 0);
  for (int q = 0; q <= pmax + 1; ++q) {
    if (static_cast<std::size_t>(q) >= faces.size() || faces[q].empty()) continue;
    if (q > 0 && faces[q - 1].empty()) continue;
    rank[q] = dense_rank(dense_boundary(faces, q), p);
  }
  std::vector<std::size_t> out;
  for (int q = 0; q <= pmax; ++q) {
    const std::size_t f = static_cast<std::size_t>(q) < faces.size() ? faces[q].size() : 0;
    out.push_back(f - rank[q] - rank[q + 1]);
  }
  return out;
}

inline std::vector<std::size_t> flag_betti(const rips::Graph& g, int pmax, std::int64_t p) {
  return reduced_betti(cliques(g, pmax + 1), pmax, p);
}

}  // namespace oracle
