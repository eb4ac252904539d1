#pragma once

namespace curvemg {

enum class Execution { serial, parallel };

/// Thread count for parallel kernels: `requested` if positive, else the
/// CURVEMG_THREADS environment variable, else the number of processors.
int resolve_threads(int requested);

/// Sets the OpenMP thread count for its lifetime.
class ThreadScope {
 public:
  explicit ThreadScope(int threads);
  ~ThreadScope();
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  int previous_;
};

}  // namespace curvemg
