#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace eonsim {

inline void contract(bool ok, const char* msg) {
  if (!ok) throw std::logic_error(msg);
}

// Half-open run of contiguous slices [lo, hi).
struct Slot {
  int lo = 0;
  int hi = 0;

  int width() const { return hi - lo; }
  bool operator==(const Slot&) const = default;
};

enum class Policy { First, Fittest, Random };

// Set of spectrum slices over a fixed universe of indices 0..universe-1.
// All binary operations require both operands to share the universe.
class SliceSet {
 public:
  SliceSet() = default;
  explicit SliceSet(int universe) : n_(universe), w_(words(universe), 0) {
    assert(universe >= 0);
  }

  static SliceSet full(int universe) {
    SliceSet s(universe);
    for (auto& w : s.w_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  static SliceSet of_slot(Slot slot, int universe) {
    SliceSet s(universe);
    s.set_range(slot.lo, slot.hi);
    return s;
  }

  int universe() const { return n_; }

  bool test(int i) const {
    assert(i >= 0 && i < n_);
    return (w_[i >> 6] >> (i & 63)) & 1;
  }

  void set(int i) {
    assert(i >= 0 && i < n_);
    w_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void reset(int i) {
    assert(i >= 0 && i < n_);
    w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  void set_range(int lo, int hi) { apply_range<true>(lo, hi); }
  void reset_range(int lo, int hi) { apply_range<false>(lo, hi); }

  // All of [lo, hi) present.
  bool contains_range(int lo, int hi) const {
    assert(0 <= lo && lo <= hi && hi <= n_);
    for (int i = lo; i < hi;) {
      int wi = i >> 6;
      int end = std::min(hi, (wi + 1) << 6);
      std::uint64_t mask = range_mask(i & 63, end - i);
      if ((w_[wi] & mask) != mask) return false;
      i = end;
    }
    return true;
  }

  // Any of [lo, hi) present.
  bool any_in_range(int lo, int hi) const {
    assert(0 <= lo && lo <= hi && hi <= n_);
    for (int i = lo; i < hi;) {
      int wi = i >> 6;
      int end = std::min(hi, (wi + 1) << 6);
      if (w_[wi] & range_mask(i & 63, end - i)) return true;
      i = end;
    }
    return false;
  }

  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  // Superset test: every member of sub is a member of *this.
  bool contains(const SliceSet& sub) const {
    assert(n_ == sub.n_);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (sub.w_[i] & ~w_[i]) return false;
    return true;
  }

  SliceSet complement() const {
    SliceSet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
    r.trim();
    return r;
  }

  SliceSet& operator&=(const SliceSet& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }

  SliceSet& operator|=(const SliceSet& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }

  SliceSet& operator-=(const SliceSet& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend SliceSet operator&(SliceSet a, const SliceSet& b) { return a &= b; }
  friend SliceSet operator|(SliceSet a, const SliceSet& b) { return a |= b; }
  friend SliceSet operator-(SliceSet a, const SliceSet& b) { return a -= b; }

  bool operator==(const SliceSet&) const = default;

  // First member index >= from, or -1.
  int next_set(int from) const {
    if (from < 0) from = 0;
    if (from >= n_) return -1;
    std::size_t wi = static_cast<std::size_t>(from) >> 6;
    std::uint64_t w = w_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) return static_cast<int>(wi * 64 + std::countr_zero(w));
      if (++wi == w_.size()) return -1;
      w = w_[wi];
    }
  }

  // First non-member index >= from within the universe, or universe().
  int next_clear(int from) const {
    if (from < 0) from = 0;
    if (from >= n_) return n_;
    std::size_t wi = static_cast<std::size_t>(from) >> 6;
    std::uint64_t w = ~w_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) return std::min(static_cast<int>(wi * 64 + std::countr_zero(w)), n_);
      if (++wi == w_.size()) return n_;
      w = ~w_[wi];
    }
  }

  // True iff some maximal contiguous run has length >= width.
  bool has_run(int width) const {
    assert(width >= 1);
    int i = next_set(0);
    while (i >= 0) {
      int e = next_clear(i);
      if (e - i >= width) return true;
      i = next_set(e);
    }
    return false;
  }

 private:
  static std::size_t words(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

  // bits [off, off+len) within one word
  static std::uint64_t range_mask(int off, int len) {
    std::uint64_t m = len >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << len) - 1);
    return m << off;
  }

  template <bool Set>
  void apply_range(int lo, int hi) {
    assert(0 <= lo && lo <= hi && hi <= n_);
    for (int i = lo; i < hi;) {
      int wi = i >> 6;
      int end = std::min(hi, (wi + 1) << 6);
      std::uint64_t mask = range_mask(i & 63, end - i);
      if constexpr (Set)
        w_[wi] |= mask;
      else
        w_[wi] &= ~mask;
      i = end;
    }
  }

  void trim() {
    if (int tail = n_ & 63; tail != 0 && !w_.empty())
      w_.back() &= (std::uint64_t{1} << tail) - 1;
  }

  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

// All maximal contiguous runs in ascending order; disjoint, and their
// union reassembles the input set.
inline std::vector<Slot> contiguous_runs(const SliceSet& s) {
  std::vector<Slot> runs;
  int i = s.next_set(0);
  while (i >= 0) {
    int e = s.next_clear(i);
    runs.push_back({i, e});
    i = s.next_set(e);
  }
  return runs;
}

inline bool supports(const SliceSet& avail, int width) {
  contract(width >= 1, "supports: width must be >= 1");
  return avail.has_run(width);
}

// Pick a width-slice slot out of avail, or nullopt when no run is wide
// enough.  First: lowest window overall.  Fittest: lowest window of the
// tightest adequate run (ties to the lowest-numbered run).  Random:
// uniform over every feasible window placement in every run.
inline std::optional<Slot> select_slot(const SliceSet& avail, int width, Policy policy,
                                       std::mt19937_64& rng) {
  contract(width >= 1, "select_slot: width must be >= 1");
  switch (policy) {
    case Policy::First: {
      int i = avail.next_set(0);
      while (i >= 0) {
        int e = avail.next_clear(i);
        if (e - i >= width) return Slot{i, i + width};
        i = avail.next_set(e);
      }
      return std::nullopt;
    }
    case Policy::Fittest: {
      std::optional<Slot> best;
      int i = avail.next_set(0);
      while (i >= 0) {
        int e = avail.next_clear(i);
        if (e - i >= width && (!best || e - i < best->width())) best = Slot{i, e};
        i = avail.next_set(e);
      }
      if (!best) return std::nullopt;
      return Slot{best->lo, best->lo + width};
    }
    case Policy::Random: {
      long long windows = 0;
      for (Slot run : contiguous_runs(avail))
        if (run.width() >= width) windows += run.width() - width + 1;
      if (windows == 0) return std::nullopt;
      long long pick = std::uniform_int_distribution<long long>(0, windows - 1)(rng);
      for (Slot run : contiguous_runs(avail)) {
        if (run.width() < width) continue;
        long long here = run.width() - width + 1;
        if (pick < here) {
          int lo = run.lo + static_cast<int>(pick);
          return Slot{lo, lo + width};
        }
        pick -= here;
      }
      return std::nullopt;  // unreachable
    }
  }
  return std::nullopt;
}

}  // namespace eonsim
