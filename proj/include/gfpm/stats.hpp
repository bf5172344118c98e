#pragma once

#include <chrono>
#include <cstdint>

namespace gfpm {

// Instrumentation counters for one mining run. Counters only grow.
struct MiningStats {
  std::uint64_t conditional_trees_built = 0;
  std::uint64_t nodes_allocated = 0;
  std::uint64_t header_probes = 0;
  std::chrono::nanoseconds wall_time{0};

  MiningStats& operator+=(const MiningStats& other) {
    conditional_trees_built += other.conditional_trees_built;
    nodes_allocated += other.nodes_allocated;
    header_probes += other.header_probes;
    wall_time += other.wall_time;
    return *this;
  }

  double wall_ms() const { return std::chrono::duration<double, std::milli>(wall_time).count(); }
};

// Adds the elapsed time to stats.wall_time on destruction.
class ScopedTimer {
 public:
  explicit ScopedTimer(MiningStats& stats) : stats_(stats), start_(std::chrono::steady_clock::now()) {}
  ~ScopedTimer() { stats_.wall_time += std::chrono::steady_clock::now() - start_; }
  ScopedTimer(const ScopedTimer&) = delete;
  ScopedTimer& operator=(const ScopedTimer&) = delete;

 private:
  MiningStats& stats_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace gfpm
