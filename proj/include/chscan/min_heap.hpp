#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace chscan {

// Binary min-heap that counts every push and pop. All priority-queue based
// searches in this codebase (Dijkstra variants, witness searches) go through
// this type, so a query's pq_operations stat is exactly the heap traffic it
// caused; the array scans never touch a heap and report zero.
template <class T, class Less = std::less<T>>
class CountingMinHeap {
 public:
  explicit CountingMinHeap(Less less = Less()) : less_(less) {}

  bool empty() const { return data_.empty(); }
  const T& top() const { return data_.front(); }
  std::int64_t ops() const { return ops_; }

  void push(T v) {
    ++ops_;
    data_.push_back(std::move(v));
    std::push_heap(data_.begin(), data_.end(), greater_());
  }

  T pop() {
    ++ops_;
    std::pop_heap(data_.begin(), data_.end(), greater_());
    T v = std::move(data_.back());
    data_.pop_back();
    return v;
  }

  void clear() { data_.clear(); }

 private:
  // std::push_heap builds a max-heap, so invert the comparison
  auto greater_() const {
    return [this](const T& a, const T& b) { return less_(b, a); };
  }

  std::vector<T> data_;
  Less less_;
  std::int64_t ops_ = 0;
};

}  // namespace chscan
