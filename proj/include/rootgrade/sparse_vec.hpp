#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rootgrade/rational.hpp"

namespace rootgrade {

using Index = std::size_t;

/// Exact sparse vector: strictly increasing indices, no stored zeros.
class SparseVec {
 public:
  using Entry = std::pair<Index, Rational>;

  SparseVec() = default;

  SparseVec(std::initializer_list<Entry> terms) : SparseVec(std::vector<Entry>(terms)) {}

  /// Accepts terms in any order; duplicates are summed and zeros dropped.
  explicit SparseVec(std::vector<Entry> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (auto& [i, c] : terms) {
      if (!entries_.empty() && entries_.back().first == i) {
        entries_.back().second += c;
        if (entries_.back().second == 0) entries_.pop_back();
      } else if (c != 0) {
        entries_.emplace_back(i, std::move(c));
      }
    }
  }

  static SparseVec unit(Index i, const Rational& c = 1) {
    SparseVec v;
    if (c != 0) v.entries_.emplace_back(i, c);
    return v;
  }

  static SparseVec from_dense(std::span<const Rational> dense) {
    SparseVec v;
    for (Index i = 0; i < dense.size(); ++i)
      if (dense[i] != 0) v.entries_.emplace_back(i, dense[i]);
    return v;
  }

  std::vector<Rational> to_dense(Index dim) const {
    std::vector<Rational> out(dim);
    for (const auto& [i, c] : entries_) out.at(i) = c;
    return out;
  }

  bool empty() const noexcept { return entries_.empty(); }
  bool is_zero() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  Index leading() const { return entries_.front().first; }
  Index max_index() const { return entries_.empty() ? 0 : entries_.back().first; }

  Rational get(Index i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Index k) { return e.first < k; });
    if (it != entries_.end() && it->first == i) return it->second;
    return 0;
  }

  /// this += a * x
  SparseVec& axpy(const Rational& a, const SparseVec& x) {
    if (a == 0 || x.empty()) return *this;
    std::vector<Entry> out;
    out.reserve(entries_.size() + x.entries_.size());
    auto p = entries_.begin();
    auto q = x.entries_.begin();
    while (p != entries_.end() || q != x.entries_.end()) {
      if (q == x.entries_.end() || (p != entries_.end() && p->first < q->first)) {
        out.push_back(std::move(*p));
        ++p;
      } else if (p == entries_.end() || q->first < p->first) {
        out.emplace_back(q->first, a * q->second);
        ++q;
      } else {
        Rational s = p->second + a * q->second;
        if (s != 0) out.emplace_back(p->first, std::move(s));
        ++p;
        ++q;
      }
    }
    entries_ = std::move(out);
    return *this;
  }

  SparseVec& operator+=(const SparseVec& x) { return axpy(1, x); }
  SparseVec& operator-=(const SparseVec& x) { return axpy(-1, x); }

  SparseVec& operator*=(const Rational& a) {
    if (a == 0) {
      entries_.clear();
    } else {
      for (auto& e : entries_) e.second *= a;
    }
    return *this;
  }

  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(const Rational& s, SparseVec a) { return a *= s; }
  friend SparseVec operator*(SparseVec a, const Rational& s) { return a *= s; }
  friend SparseVec operator-(SparseVec a) { return a *= -1; }

  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.entries_ == b.entries_; }

  Rational dot(const SparseVec& x) const {
    Rational s = 0;
    auto p = entries_.begin();
    auto q = x.entries_.begin();
    while (p != entries_.end() && q != x.entries_.end()) {
      if (p->first < q->first) {
        ++p;
      } else if (q->first < p->first) {
        ++q;
      } else {
        s += p->second * q->second;
        ++p;
        ++q;
      }
    }
    return s;
  }

  /// Reindexes every entry through `map` (which must be injective on the support).
  template <class F>
  SparseVec remap(F&& map) const {
    std::vector<Entry> t;
    t.reserve(entries_.size());
    for (const auto& [i, c] : entries_) t.emplace_back(map(i), c);
    return SparseVec(std::move(t));
  }

  /// Keeps entries with lo <= index < hi, shifted down by lo.
  SparseVec slice(Index lo, Index hi) const {
    SparseVec v;
    for (const auto& [i, c] : entries_)
      if (i >= lo && i < hi) v.entries_.emplace_back(i - lo, c);
    return v;
  }

  SparseVec shifted(Index offset) const {
    SparseVec v = *this;
    for (auto& e : v.entries_) e.first += offset;
    return v;
  }

  std::string str() const {
    if (entries_.empty()) return "0";
    std::string s;
    for (const auto& [i, c] : entries_) {
      if (!s.empty()) s += " + ";
      s += c.get_str() + "*" + std::to_string(i);
    }
    return s;
  }

 private:
  std::vector<Entry> entries_;
};

/// Dense accumulator for building many-term sums without repeated merges.
class Accumulator {
 public:
  explicit Accumulator(Index dim) : values_(dim), touched_(dim, false) {}

  void add(Index i, const Rational& c) {
    if (!touched_[i]) {
      touched_[i] = true;
      support_.push_back(i);
    }
    values_[i] += c;
  }

  void axpy(const Rational& a, const SparseVec& x) {
    if (a == 0) return;
    for (const auto& [i, c] : x) add(i, a * c);
  }

  SparseVec take() {
    std::sort(support_.begin(), support_.end());
    std::vector<SparseVec::Entry> t;
    t.reserve(support_.size());
    for (Index i : support_) {
      if (values_[i] != 0) t.emplace_back(i, values_[i]);
      values_[i] = 0;
      touched_[i] = false;
    }
    support_.clear();
    return SparseVec(std::move(t));
  }

 private:
  std::vector<Rational> values_;
  std::vector<bool> touched_;
  std::vector<Index> support_;
};

}  // namespace rootgrade
