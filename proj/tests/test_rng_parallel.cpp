#include <gtest/gtest.h>

#include <atomic>
#include <set>
#include <stdexcept>
#include <vector>

#include "netclass/parallel.hpp"
#include "netclass/rng.hpp"

using namespace netclass;

namespace {

std::vector<std::uint64_t> draws(const SeededRng& rng, int count = 8) {
  auto eng = rng.engine();
  std::vector<std::uint64_t> out;
  for (int i = 0; i < count; ++i) out.push_back(eng());
  return out;
}

struct ThreadGuard {
  ~ThreadGuard() { set_thread_count(0); }
};

}  // namespace

TEST(SeededRng, SameSeedAndStreamReplay) {
  EXPECT_EQ(draws(SeededRng(7)), draws(SeededRng(7)));
  EXPECT_EQ(draws(SeededRng(7).derive("x", 3)), draws(SeededRng(7).derive("x").derive(3)));
  EXPECT_NE(draws(SeededRng(7)), draws(SeededRng(8)));
}

TEST(SeededRng, DistinctStreamsDiffer) {
  const SeededRng root(11);
  std::set<std::vector<std::uint64_t>> seen;
  for (std::uint64_t i = 0; i < 50; ++i) seen.insert(draws(root.derive(i)));
  seen.insert(draws(root.derive("a")));
  seen.insert(draws(root.derive("b")));
  seen.insert(draws(root));
  EXPECT_EQ(seen.size(), 53u);
  EXPECT_NE(draws(root.derive(1, 2)), draws(root.derive(2, 1)));
}

TEST(SeededRng, DerivationDoesNotConsumeParent) {
  const SeededRng root(3);
  const auto before = draws(root);
  (void)root.derive("child").engine()();
  EXPECT_EQ(draws(root), before);
}

TEST(SeededRng, UniformHelpersStayInRange) {
  auto eng = SeededRng(5).engine();
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const double u = uniform01(eng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const auto k = uniform_index(eng, 7);
    ASSERT_LT(k, 7u);
    ++hits[k];
  }
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(ParallelFor, ResultsIndependentOfThreadCount) {
  ThreadGuard guard;
  auto compute = [](std::size_t threads) {
    set_thread_count(threads);
    std::vector<std::uint64_t> out(200);
    parallel_for(out.size(), [&](std::size_t i) { out[i] = draws(SeededRng(1).derive(i), 1)[0]; });
    return out;
  };
  const auto serial = compute(1);
  EXPECT_EQ(compute(4), serial);
  EXPECT_EQ(compute(0), serial);
}

TEST(ParallelFor, VisitsEveryIndexOnceAndNests) {
  ThreadGuard guard;
  set_thread_count(3);
  std::vector<std::atomic<int>> visits(100);
  parallel_for(10, [&](std::size_t i) {
    parallel_for(10, [&](std::size_t j) { ++visits[i * 10 + j]; });
  });
  for (const auto& v : visits) EXPECT_EQ(v.load(), 1);
}

TEST(ParallelFor, RethrowsWorkerException) {
  ThreadGuard guard;
  set_thread_count(2);
  EXPECT_THROW(parallel_for(50,
                            [](std::size_t i) {
                              if (i == 17) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}
