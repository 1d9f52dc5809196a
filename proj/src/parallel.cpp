// SPDX-License-Identifier: Apache-2.0

#include "beast/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace beast
{

unsigned worker_count()
{
  unsigned n = 0;
  if (const char *env = std::getenv("BEAST_FLEX_THREADS"))
  {
    try
    {
      n = static_cast<unsigned>(std::max(0L, std::stol(env)));
    }
    catch (const std::exception &)
    {
      n = 0;
    }
  }
  if (n == 0)
  {
    n = std::max(1u, std::thread::hardware_concurrency());
  }
  return n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body)
{
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < count; i++)
    {
      body(i);
    }
    return;
  }

  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; w++)
    {
      pool.emplace_back(
          [&]
          {
            for (std::size_t i = next++; i < count; i = next++)
            {
              try
              {
                body(i);
              }
              catch (...)
              {
                errors[i] = std::current_exception();
              }
            }
          });
    }
  }
  for (const auto &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace beast
