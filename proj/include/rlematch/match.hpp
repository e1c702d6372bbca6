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


#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "rlematch/codec.hpp"
#include "rlematch/error.hpp"

namespace rlematch {

/// Length of a longest common substring plus one witness pair of start
/// positions. With several maximal pairs the witness is the smallest
/// witness_i, then the smallest witness_j. An empty match reports (0, 0).
struct MatchResult {
  std::size_t length = 0;
  std::size_t witness_i = 0;
  std::size_t witness_j = 0;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

namespace detail {

inline bool witness_before(std::size_t i, std::size_t j, const MatchResult& r) {
  return std::tie(i, j) < std::tie(r.witness_i, r.witness_j);
}

}  // namespace detail

/// Quadratic dynamic program over all end-position pairs. Reference oracle
/// for lcs_fast.
template <class T>
MatchResult lcs_bruteforce(std::span<const T> a, std::span<const T> b) {
  MatchResult best;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = (a[i - 1] == b[j - 1]) ? prev[j - 1] + 1 : 0;
      const std::size_t len = cur[j];
      if (len == 0) continue;
      const std::size_t si = i - len;
      const std::size_t sj = j - len;
      if (len > best.length ||
          (len == best.length && detail::witness_before(si, sj, best))) {
        best = {len, si, sj};
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

/// Online suffix automaton over an arbitrary ordered token type. Transitions
/// are kept in an ordered map, so the token alphabet may be unbounded (run
/// tokens carry arbitrary lengths).
template <class T, class Compare = std::less<T>>
class SuffixAutomaton {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct State {
    std::size_t len = 0;
    std::size_t link = npos;
    // End index (inclusive) of the first occurrence of the strings in this
    // state.
    std::size_t first_end = 0;
    std::map<T, std::size_t, Compare> next;
  };

  SuffixAutomaton() { states_.emplace_back(); }

  explicit SuffixAutomaton(std::span<const T> text) : SuffixAutomaton() {
    states_.reserve(2 * text.size() + 1);
    for (const auto& c : text) extend(c);
  }

  void extend(const T& c) {
    const std::size_t cur = states_.size();
    states_.push_back(State{states_[last_].len + 1, npos, length_, {}});
    std::size_t p = last_;
    while (p != npos && !states_[p].next.contains(c)) {
      states_[p].next.emplace(c, cur);
      p = states_[p].link;
    }
    if (p == npos) {
      states_[cur].link = 0;
    } else {
      const std::size_t q = states_[p].next.find(c)->second;
      if (states_[p].len + 1 == states_[q].len) {
        states_[cur].link = q;
      } else {
        const std::size_t clone = states_.size();
        State copy = states_[q];
        copy.len = states_[p].len + 1;
        states_.push_back(std::move(copy));
        while (p != npos) {
          auto it = states_[p].next.find(c);
          if (it == states_[p].next.end() || it->second != q) break;
          it->second = clone;
          p = states_[p].link;
        }
        states_[q].link = clone;
        states_[cur].link = clone;
      }
    }
    last_ = cur;
    ++length_;
  }

  /// Number of tokens consumed so far.
  std::size_t text_length() const noexcept { return length_; }
  const std::vector<State>& states() const noexcept { return states_; }

  std::size_t transition(std::size_t state, const T& c) const {
    const auto& next = states_[state].next;
    auto it = next.find(c);
    return it == next.end() ? npos : it->second;
  }

  /// Longest substring of the automaton text that also occurs in `b`.
  MatchResult longest_common(std::span<const T> b) const {
    std::vector<std::size_t> at_state(b.size());
    std::vector<std::size_t> at_len(b.size());
    std::size_t v = 0;
    std::size_t l = 0;
    std::size_t best = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      while (v != 0 && transition(v, b[j]) == npos) {
        v = states_[v].link;
        l = states_[v].len;
      }
      if (const std::size_t t = transition(v, b[j]); t != npos) {
        v = t;
        ++l;
      } else {
        v = 0;
        l = 0;
      }
      at_state[j] = v;
      at_len[j] = l;
      best = std::max(best, l);
    }
    MatchResult result;
    if (best == 0) return result;
    result.length = best;
    bool found = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (at_len[j] < best) continue;
      // Climb to the state whose length interval contains `best`; its
      // first_end gives the earliest occurrence in the text.
      std::size_t u = at_state[j];
      while (states_[u].link != npos && states_[states_[u].link].len >= best) {
        u = states_[u].link;
      }
      const std::size_t si = states_[u].first_end + 1 - best;
      const std::size_t sj = j + 1 - best;
      if (!found || detail::witness_before(si, sj, result)) {
        result.witness_i = si;
        result.witness_j = sj;
        found = true;
      }
    }
    return result;
  }

  /// States ordered by non-increasing len.
  std::vector<std::size_t> by_decreasing_length() const {
    std::vector<std::size_t> count(length_ + 2, 0);
    for (const auto& s : states_) ++count[s.len];
    for (std::size_t k = 1; k < count.size(); ++k) count[k] += count[k - 1];
    std::vector<std::size_t> order(states_.size());
    for (std::size_t v = states_.size(); v-- > 0;) {
      order[--count[states_[v].len]] = v;
    }
    std::reverse(order.begin(), order.end());
    return order;
  }

 private:
  std::vector<State> states_;
  std::size_t last_ = 0;
  std::size_t length_ = 0;
};

/// Longest common substring via a suffix automaton built on `a` and
/// traversed with `b`. Same length and witness as lcs_bruteforce.
template <class T>
MatchResult lcs_fast(std::span<const T> a, std::span<const T> b) {
  return SuffixAutomaton<T>(a).longest_common(b);
}

template <class T>
MatchResult lcs_fast(const std::vector<T>& a, const std::vector<T>& b) {
  return lcs_fast(std::span<const T>(a), std::span<const T>(b));
}

/// M_n: longest common substring restricted to the first `n` tokens of
/// each sequence.
template <class T>
MatchResult lcs_prefix(std::span<const T> a, std::span<const T> b,
                       std::size_t n) {
  if (n > a.size() || n > b.size()) {
    throw Error(ErrorCode::kRange,
                "window exceeds the length of one of the sequences");
  }
  return lcs_fast(a.first(n), b.first(n));
}

/// Length of the longest substring common to every sequence.
template <class T>
std::size_t lcs_multi(std::span<const std::vector<T>> seqs) {
  if (seqs.size() < 2) {
    throw Error(ErrorCode::kValidation,
                "lcs_multi needs at least two sequences");
  }
  const SuffixAutomaton<T> sam{std::span<const T>(seqs[0])};
  const auto& states = sam.states();
  const auto order = sam.by_decreasing_length();

  std::vector<std::size_t> common(states.size());
  for (std::size_t v = 0; v < states.size(); ++v) common[v] = states[v].len;

  std::vector<std::size_t> reach(states.size());
  for (std::size_t s = 1; s < seqs.size(); ++s) {
    std::fill(reach.begin(), reach.end(), 0);
    std::size_t v = 0;
    std::size_t l = 0;
    for (const auto& c : seqs[s]) {
      while (v != 0 && sam.transition(v, c) == SuffixAutomaton<T>::npos) {
        v = states[v].link;
        l = states[v].len;
      }
      if (const auto t = sam.transition(v, c); t != SuffixAutomaton<T>::npos) {
        v = t;
        ++l;
      } else {
        v = 0;
        l = 0;
      }
      reach[v] = std::max(reach[v], l);
    }
    // A match inside a state implies full matches of its suffix-link parent.
    for (std::size_t v2 : order) {
      const std::size_t p = states[v2].link;
      if (p != SuffixAutomaton<T>::npos && reach[v2] > 0) {
        reach[p] = std::max(reach[p], std::min(reach[v2], states[p].len));
      }
    }
    for (std::size_t v2 = 0; v2 < states.size(); ++v2) {
      common[v2] = std::min(common[v2], reach[v2]);
    }
  }
  return *std::max_element(common.begin(), common.end());
}

template <class T>
std::size_t lcs_multi(const std::vector<std::vector<T>>& seqs) {
  return lcs_multi(std::span<const std::vector<T>>(seqs));
}

/// M_n^RLE on already-encoded sequences: the longest common substring of
/// the first `n_runs` run tokens. Runs compare atomically on (symbol,
/// length). Both inputs must contain at least `n_runs` complete runs (the
/// final run of each encoding is treated as open).
MatchResult m_rle_runs(std::span<const Run> fx, std::span<const Run> fy,
                       std::size_t n_runs);

/// M_n^RLE computed from raw sequences.
MatchResult m_rle(std::span<const Symbol> x, std::span<const Symbol> y,
                  std::size_t n_runs);

/// Largest k such that the encodings of the tails of x at shift i and of y
/// at shift j agree on their first k complete runs, for some shifts
/// 0 <= i, j <= n - k.
std::size_t m_tilde(std::span<const Symbol> x, std::span<const Symbol> y,
                    std::size_t n);

}  // namespace rlematch
