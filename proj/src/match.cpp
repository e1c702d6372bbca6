// Copyright 2026 The rlematch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rlematch/match.hpp"

#include <fmt/format.h>

namespace rlematch {
namespace {

// Run decomposition of a raw sequence with each position's run index.
struct RunIndex {
  RunSequence runs;
  std::vector<std::size_t> run_of;  // position -> run index
  std::vector<std::size_t> end;     // run index -> one past its last position

  explicit RunIndex(std::span<const Symbol> seq) : runs(rle_encode(seq)) {
    run_of.reserve(seq.size());
    end.reserve(runs.size());
    std::size_t pos = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      pos += runs[r].length;
      end.push_back(pos);
      run_of.insert(run_of.end(), runs[r].length, r);
    }
  }

  bool complete(std::size_t r) const { return r + 1 < runs.size(); }
};

}  // namespace

MatchResult m_rle_runs(std::span<const Run> fx, std::span<const Run> fy,
                       std::size_t n_runs) {
  const auto cx = complete_runs(fx);
  const auto cy = complete_runs(fy);
  if (cx.size() < n_runs || cy.size() < n_runs) {
    const bool x_short = cx.size() < n_runs;
    throw Error(ErrorCode::kPrecondition,
                fmt::format("sequence {} has {} complete runs, {} required",
                            x_short ? "x" : "y", x_short ? cx.size() : cy.size(),
                            n_runs));
  }
  return lcs_fast(cx.first(n_runs), cy.first(n_runs));
}

MatchResult m_rle(std::span<const Symbol> x, std::span<const Symbol> y,
                  std::size_t n_runs) {
  const auto fx = rle_encode(x);
  const auto fy = rle_encode(y);
  return m_rle_runs(fx, fy, n_runs);
}

std::size_t m_tilde(std::span<const Symbol> x, std::span<const Symbol> y,
                    std::size_t n) {
  if (n > x.size() || n > y.size()) {
    throw Error(ErrorCode::kRange,
                fmt::format("n = {} exceeds a sequence length ({}, {})", n,
                            x.size(), y.size()));
  }
  const RunIndex ix(x);
  const RunIndex iy(y);
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t rx = ix.run_of[i];
    if (!ix.complete(rx)) continue;
    const Run head_x{ix.runs[rx].symbol, ix.end[rx] - i};
    for (std::size_t j = 0; j < n; ++j) {
      // Shifts are bounded by n - k, so a pair can contribute at most
      // n - max(i, j).
      const std::size_t cap = n - std::max(i, j);
      if (cap <= best) continue;
      const std::size_t ry = iy.run_of[j];
      if (!iy.complete(ry)) continue;
      if (head_x != Run{iy.runs[ry].symbol, iy.end[ry] - j}) continue;
      std::size_t k = 1;
      while (k < cap && ix.complete(rx + k) && iy.complete(ry + k) &&
             ix.runs[rx + k] == iy.runs[ry + k]) {
        ++k;
      }
      best = std::max(best, k);
    }
  }
  return best;
}

}  // namespace rlematch
