#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lcp {

// Fixed-size pool for fork-join loops. ParallelFor splits [0, n) into
// contiguous chunks, one per worker, and blocks until all have finished.
// Callers are responsible for making each index's work independent so that
// results do not depend on the worker count.
class ThreadPool {
 public:
  explicit ThreadPool(std::size_t workers);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  std::size_t size() const { return threads_.size() + 1; }

  void ParallelFor(std::size_t n, const std::function<void(std::size_t begin, std::size_t end)>& fn);

 private:
  void WorkerLoop(std::size_t worker);

  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(std::size_t, std::size_t)>* job_ = nullptr;
  std::size_t job_n_ = 0;
  std::size_t generation_ = 0;
  std::size_t pending_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

}  // namespace lcp
