#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "kgsharp/parallel.hpp"
#include "kgsharp/rng.hpp"

using namespace kgsharp;

TEST_CASE("counter generator reference stream") {
  CounterRng rng(0);
  CHECK(rng.next_u64() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next_u64() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.counter() == 2);
  CHECK(CounterRng(42).next_u64() == 0xBDD732262FEB6E95ULL);
  // resuming from a counter reproduces the stream
  CounterRng resumed(0, 1);
  CHECK(resumed.next_u64() == 0x6E789E6AA1B965F4ULL);
  static_assert(CounterRng(0).next_u64() == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("uniform draws") {
  CounterRng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.uniform(-3.0, -2.0);
    CHECK(v >= -3.0);
    CHECK(v < -2.0);
  }
  CHECK(CounterRng(0).uniform() == static_cast<double>(0xE220A8397B1DCDAFULL >> 11) * 0x1.0p-53);
}

TEST_CASE("parallel map preserves order") {
  const auto out = parallel_map<int>(1000, [](std::size_t i) { return static_cast<int>(i * i); });
  REQUIRE(out.size() == 1000);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
  parallel_for(0, [](std::size_t) { FAIL("no tasks expected"); });
}

TEST_CASE("first exception is rethrown after all tasks finish") {
  std::atomic<int> ran{0};
  CHECK_THROWS_AS(parallel_for(64,
                               [&](std::size_t i) {
                                 ++ran;
                                 if (i == 7) throw std::runtime_error("task 7");
                               }),
                  std::runtime_error);
  CHECK(ran.load() >= 1);
}

TEST_CASE("thread budget follows the environment") {
  ::setenv("KG_SHARP_THREADS", "3", 1);
  CHECK(thread_budget() == 3);
  ::setenv("KG_SHARP_THREADS", "0", 1);
  CHECK(thread_budget() >= 1);
  ::unsetenv("KG_SHARP_THREADS");
  CHECK(thread_budget() >= 1);
}
