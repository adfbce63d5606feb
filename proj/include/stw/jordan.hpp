#pragma once

#include <optional>
#include <vector>

#include "stw/mat.hpp"

namespace stw {

// Jordan type of a nilpotent operator, with one chain-top per block.
// Chains are read off as {top * N^i}; block_sizes is sorted descending.
struct JordanReport {
  std::vector<std::size_t> block_sizes;
  Mat chain_tops;      // one row per block, aligned with block_sizes
  std::size_t index = 0;

  std::size_t blocks_of_size(std::size_t s) const {
    std::size_t c = 0;
    for (auto b : block_sizes)
      if (b == s) ++c;
    return c;
  }
};

// Standard rank-sequence / quotient-lift algorithm.  Ties in chain-top
// selection are broken by taking kernel RREF rows in order (lowest pivot
// first), which makes the output deterministic.
inline JordanReport jordan_chains(const Mat& n, std::optional<std::size_t> expected_index = {}) {
  if (n.rows != n.cols) throw Error("BadParameter", "jordan_chains needs a square matrix");
  const std::size_t d = n.rows;
  JordanReport rep;
  rep.chain_tops = Mat(n.p, 0, d);
  if (d == 0) return rep;

  // kernels of successive powers
  std::vector<Mat> pw = {mat_identity(n.p, d)};
  std::vector<Mat> ker = {Mat(n.p, 0, d)};  // ker(N^0) = 0
  std::size_t e = 0;
  for (std::size_t i = 1; i <= d + 1; ++i) {
    pw.push_back(mat_mul(pw.back(), n));
    ker.push_back(left_kernel(pw[i]));
    if (ker.back().rows == d) { e = i; break; }
    if (i == d + 1) throw Error("NotNilpotent", "matrix is not nilpotent");
  }
  if (expected_index && e > *expected_index)
    throw Error("NotNilpotent", "nilpotency index " + std::to_string(e) + " exceeds expected " +
                                    std::to_string(*expected_index));
  rep.index = e;

  struct Top { Vec v; std::size_t height; };
  std::vector<Top> tops;
  for (std::size_t h = e; h >= 1; --h) {
    Span sp(n.p, d);
    for (std::size_t i = 0; i < ker[h - 1].rows; ++i) sp.add(ker[h - 1].row(i));
    for (const auto& t : tops) {
      Vec v = t.v;
      for (std::size_t k = 0; k < t.height - h; ++k) v = vec_mat(v, n);
      sp.add(std::move(v));
    }
    for (std::size_t i = 0; i < ker[h].rows; ++i) {
      Vec v = ker[h].row(i);
      if (sp.add(v)) tops.push_back({std::move(v), h});
    }
    if (h == 1) break;
  }

  for (const auto& t : tops) rep.block_sizes.push_back(t.height);
  std::sort(rep.block_sizes.begin(), rep.block_sizes.end(), std::greater<>());
  std::sort(tops.begin(), tops.end(), [](const Top& a, const Top& b) { return a.height > b.height; });
  rep.chain_tops = Mat(n.p, tops.size(), d);
  for (std::size_t i = 0; i < tops.size(); ++i) rep.chain_tops.set_row(i, tops[i].v);

  // invariants: chain vectors form a basis, each top has the stated height
  std::size_t total = 0;
  Span all(n.p, d);
  for (std::size_t i = 0; i < tops.size(); ++i) {
    total += tops[i].height;
    Vec v = tops[i].v;
    for (std::size_t k = 0; k + 1 < tops[i].height; ++k) {
      all.add(v);
      v = vec_mat(v, n);
    }
    bool nz = false;
    for (uint32_t x : v) nz |= (x != 0);
    if (!nz) throw Error("NotNilpotent", "internal: chain shorter than computed height");
    all.add(v);
    Vec z = vec_mat(v, n);
    for (uint32_t x : z)
      if (x) throw Error("NotNilpotent", "internal: chain longer than computed height");
  }
  if (total != d || all.dim() != d)
    throw Error("NotNilpotent", "internal: chain set is not a basis");
  return rep;
}

}  // namespace stw
