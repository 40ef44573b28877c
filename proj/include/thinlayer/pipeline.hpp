// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "thinlayer/config.hpp"

namespace thinlayer {

enum class Command { LimitSpectrum, Predict, Verify };

Command parse_command(const std::string& text);
const char* to_string(Command command);

struct RunResult {
  Command command = Command::LimitSpectrum;
  std::string json;  // structured report
  std::string csv;   // same records as a flat table
  int exit_status = 0;
  std::vector<std::string> warnings;
};

RunResult run(Command command, const RunConfig& config);

/// Writes <dir>/<name>.json and <dir>/<name>.csv.
void write_outputs(const RunResult& result, const std::string& dir, const std::string& name);

std::string sha256_hex(const std::string& data);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results must be written
/// to per-index slots, which keeps the output independent of scheduling.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, std::size_t(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace thinlayer
