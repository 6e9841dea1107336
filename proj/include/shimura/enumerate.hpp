#pragma once

// Streams finite sets of non-split primes of a quadratic field in order of
// ascending product. Both surface classifiers order their outputs this way.

#include <cstddef>
#include <queue>
#include <vector>

#include "shimura/arith.hpp"
#include "shimura/qfield.hpp"

namespace shimura {

struct PrimeSet {
  Int product = 1;
  std::vector<Int> primes;  // ascending
};

// Every finite set of primes from the stream q_1 < q_2 < ... is produced
// exactly once, in ascending order of product. Distinct sets have distinct
// products, so the order is total and the stream is deterministic.
//
// Sets are grown from the empty set by two moves that each increase the
// product: append the next prime after the current maximum, or bump the
// maximum to its successor. Each nonempty set has exactly one parent
// (remove the maximum if its index is adjacent to the runner-up's,
// otherwise lower it by one index), so the moves span a tree on all sets
// and a min-heap on products pops them in order.
class SubsetStream {
 public:
  // parity: 0 streams even-size sets, 1 odd-size sets.
  SubsetStream(const QuadField& K, int parity) : primes_(K), parity_(parity) {
    heap_.push(Item{1, -1, 0});
  }

  PrimeSet next() {
    for (;;) {
      Item it = heap_.top();
      heap_.pop();
      push_children(it);
      if (it.count % 2 == parity_) return reconstruct(it);
    }
  }

  // Product of the next set, without consuming it.
  Int peek_product() {
    while (heap_.top().count % 2 != parity_) {
      Item it = heap_.top();
      heap_.pop();
      push_children(it);
    }
    return heap_.top().product;
  }

 private:
  struct Item {
    Int product;
    int last;  // index of largest prime in the set, -1 for the empty set
    int count;
  };
  struct ByProduct {
    bool operator()(const Item& x, const Item& y) const { return x.product > y.product; }
  };

  static constexpr Int kProductCap = Int(1) << 62;

  Int prime_at(int idx) {
    while (static_cast<int>(cache_.size()) <= idx) cache_.push_back(primes_.next());
    return cache_[idx];
  }

  void push_children(const Item& it) {
    Int succ = prime_at(it.last + 1);
    if (it.product <= kProductCap / succ)
      heap_.push(Item{it.product * succ, it.last + 1, it.count + 1});
    if (it.count > 0) {
      Int old = cache_[it.last];
      Int bumped = it.product / old;
      if (bumped <= kProductCap / succ)
        heap_.push(Item{bumped * succ, it.last + 1, it.count});
    }
  }

  PrimeSet reconstruct(const Item& it) const {
    PrimeSet s;
    s.product = it.product;
    s.primes.reserve(static_cast<std::size_t>(it.count));
    for (int i = 0; i <= it.last; ++i)
      if (it.product % cache_[i] == 0) s.primes.push_back(cache_[i]);
    return s;
  }

  NonsplitPrimes primes_;
  int parity_;
  std::vector<Int> cache_;
  std::priority_queue<Item, std::vector<Item>, ByProduct> heap_;
};

}  // namespace shimura
