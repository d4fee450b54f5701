#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "cayley/core.hpp"

namespace cayley {

// Diagonalization U*A*V = diag(d_1, ..) of an integer matrix by elementary
// row/column operations, with d_1 | d_2 | ... and d_i >= 0.
//
// basis_witness tracks V^{-1}: its row j satisfies row * V = e_j, so when
// d_j != 1 that row is an integer vector outside the row lattice of A
// (e_j is not in the transformed lattice spanned by the d_i * e_i).
struct SmithNormalForm {
  std::vector<i64> divisors;                    // length = cols, 0-padded
  std::vector<std::vector<i64>> basis_witness;  // cols x cols
};

inline SmithNormalForm smith_normal_form(std::vector<std::vector<i64>> a,
                                         int cols) {
  const int m = static_cast<int>(a.size());
  const int n = cols;
  for (const auto& r : a)
    if (static_cast<int>(r.size()) != n)
      throw std::invalid_argument("smith_normal_form: ragged matrix");

  std::vector<std::vector<i64>> w(n, std::vector<i64>(n, 0));
  for (int i = 0; i < n; ++i) w[i][i] = 1;

  auto col_swap = [&](int i, int j) {
    if (i == j) return;
    for (auto& r : a) std::swap(r[i], r[j]);
    std::swap(w[i], w[j]);
  };
  // col_k += q * col_i  (mirrored as w.row_i -= q * w.row_k)
  auto col_axpy = [&](int k, int i, i64 q) {
    for (auto& r : a) r[k] += q * r[i];
    for (int c = 0; c < n; ++c) w[i][c] -= q * w[k][c];
  };

  int s = 0;
  while (s < m && s < n) {
    int pi = -1, pj = -1;
    for (int i = s; i < m; ++i)
      for (int j = s; j < n; ++j)
        if (a[i][j] != 0 &&
            (pi < 0 || std::abs(a[i][j]) < std::abs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(a[pi], a[s]);
    col_swap(pj, s);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = s + 1; i < m; ++i)
        if (a[i][s] != 0) {
          i64 q = a[i][s] / a[s][s];
          for (int c = 0; c < n; ++c) a[i][c] -= q * a[s][c];
          if (a[i][s] != 0) {  // remainder is a strictly smaller pivot
            std::swap(a[i], a[s]);
            dirty = true;
          }
        }
      for (int j = s + 1; j < n; ++j)
        if (a[s][j] != 0) {
          i64 q = a[s][j] / a[s][s];
          col_axpy(j, s, -q);
          if (a[s][j] != 0) {
            col_swap(j, s);
            dirty = true;
          }
        }
    }

    // The pivot must divide everything below-right; if not, fold the
    // offending column into column s and redo this step.
    bool redo = false;
    for (int i = s + 1; i < m && !redo; ++i)
      for (int j = s + 1; j < n && !redo; ++j)
        if (a[i][j] % a[s][s] != 0) {
          col_axpy(s, j, 1);
          redo = true;
        }
    if (redo) continue;

    if (a[s][s] < 0)
      for (int c = 0; c < n; ++c) a[s][c] = -a[s][c];
    ++s;
  }

  SmithNormalForm out;
  out.divisors.assign(n, 0);
  for (int i = 0; i < s; ++i) out.divisors[i] = a[i][i];
  out.basis_witness = std::move(w);
  return out;
}

}  // namespace cayley
