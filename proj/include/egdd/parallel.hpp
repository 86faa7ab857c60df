#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace egdd {

/// Pairwise tree reduction over the index range [0, n).
///
/// The combine tree always splits at the midpoint, so the floating-point
/// summation order depends only on n — serial and parallel runs (any thread
/// count) produce bit-identical results. Subtrees narrower than `grain` run
/// serially; wider ones may be executed as tasks.
///
/// If any leaf throws, the remaining combines are skipped and the first
/// exception is rethrown on the calling thread.
///
/// Leaf: T leaf(int i). Combine: void combine(T& into, T&& from).
template <class T, class Leaf, class Combine>
class TreeReducer {
 public:
  TreeReducer(const Leaf& leaf, const Combine& combine, int grain)
      : leaf_(leaf), combine_(combine), grain_(grain < 1 ? 1 : grain) {}

  T run(int n, int threads) {
#ifdef _OPENMP
    if (threads != 1 && n > grain_) {
      T out;
      int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
      {
#pragma omp single nowait
        out = reduce_tasks(0, n);
      }
      rethrow_if_failed();
      return out;
    }
#else
    (void)threads;
#endif
    T out = reduce_serial(0, n);
    rethrow_if_failed();
    return out;
  }

 private:
  T reduce_serial(int lo, int hi) {
    if (hi - lo == 1) return safe_leaf(lo);
    const int mid = lo + (hi - lo) / 2;
    T left = reduce_serial(lo, mid);
    T right = reduce_serial(mid, hi);
    safe_combine(left, std::move(right));
    return left;
  }

#ifdef _OPENMP
  T reduce_tasks(int lo, int hi) {
    if (hi - lo <= grain_) return reduce_serial(lo, hi);
    const int mid = lo + (hi - lo) / 2;
    T left, right;
#pragma omp task shared(left) firstprivate(lo, mid)
    left = reduce_tasks(lo, mid);
    right = reduce_tasks(mid, hi);
#pragma omp taskwait
    safe_combine(left, std::move(right));
    return left;
  }
#endif

  T safe_leaf(int i) {
    if (failed_.load(std::memory_order_relaxed)) return T{};
    try {
      return leaf_(i);
    } catch (...) {
      record_error();
      return T{};
    }
  }

  void safe_combine(T& into, T&& from) {
    if (failed_.load(std::memory_order_relaxed)) return;
    try {
      combine_(into, std::move(from));
    } catch (...) {
      record_error();
    }
  }

  void record_error() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!error_) error_ = std::current_exception();
    failed_.store(true, std::memory_order_relaxed);
  }

  void rethrow_if_failed() {
    if (error_) std::rethrow_exception(error_);
  }

  const Leaf& leaf_;
  const Combine& combine_;
  int grain_;
  std::mutex mutex_;
  std::atomic<bool> failed_{false};
  std::exception_ptr error_;
};

template <class T, class Leaf, class Combine>
T tree_reduce(int n, int threads, const Leaf& leaf, const Combine& combine,
              int grain = 16) {
  TreeReducer<T, Leaf, Combine> r(leaf, combine, grain);
  return r.run(n, threads);
}

}  // namespace egdd
