/*
 * SPDX-License-Identifier: MIT
 *
 * Licensed under the MIT License
 */

#include "zar/Generators.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

namespace zar {
namespace {
constexpr std::array LOCAL_LABELS{"h", "x", "sx", "ry", "rz", "s", "t", "z"};
constexpr std::array GLOBAL_LABELS{"ry", "rz"};

template <typename Stop>
auto randomCircuit(const std::size_t n, const std::uint64_t seed, Stop stop)
    -> Circuit {
  if (n < 2) {
    throw InputError("random circuits need at least two qubits");
  }
  Circuit c(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
  std::uniform_int_distribution<std::size_t> local(0, LOCAL_LABELS.size() - 1);
  std::uniform_int_distribution<std::size_t> global(0,
                                                    GLOBAL_LABELS.size() - 1);
  while (!stop(c)) {
    const auto r = coin(rng);
    if (r < 0.6) {
      const auto a = qubit(rng);
      auto b = qubit(rng);
      while (b == a) {
        b = qubit(rng);
      }
      c.addCZ(static_cast<Qubit>(a), static_cast<Qubit>(b));
    } else if (r < 0.97) {
      const auto label = LOCAL_LABELS[local(rng)];
      c.addLocal(label, static_cast<Qubit>(qubit(rng)));
    } else {
      c.addGlobal(GLOBAL_LABELS[global(rng)]);
    }
  }
  return c;
}
} // namespace

auto generateGhz(const std::size_t n) -> Circuit {
  Circuit c(n);
  if (n == 0) {
    return c;
  }
  c.addLocal("h", 0);
  for (Qubit i = 0; i + 1 < n; ++i) {
    c.addLocal("h", i + 1);
    c.addCZ(i, i + 1);
    c.addLocal("h", i + 1);
  }
  return c;
}

auto generateChain(const std::size_t n) -> Circuit {
  Circuit c(n);
  for (Qubit i = 0; i + 1 < n; ++i) {
    c.addCZ(i, i + 1);
    c.addLocal("h", i + 1);
  }
  return c;
}

auto generateParallelLayers(const std::size_t n, const std::size_t layers,
                            const std::uint64_t seed) -> Circuit {
  Circuit c(n);
  std::mt19937_64 rng(seed);
  std::vector<Qubit> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t l = 0; l < layers; ++l) {
    if (l > 0) {
      for (Qubit q = 0; q < n; ++q) {
        c.addLocal("h", q);
      }
    }
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i + 1 < n; i += 2) {
      c.addCZ(perm[i], perm[i + 1]);
    }
  }
  return c;
}

auto generateRandom(const std::size_t n, const std::size_t gates,
                    const std::uint64_t seed) -> Circuit {
  return randomCircuit(n, seed,
                       [&](const Circuit& c) { return c.size() >= gates; });
}

auto generateRandomCz(const std::size_t n, const std::size_t czCount,
                      const std::uint64_t seed) -> Circuit {
  std::size_t count = 0;
  std::size_t seen = 0;
  return randomCircuit(n, seed, [&](const Circuit& c) {
    for (; seen < c.size(); ++seen) {
      count += c.getGate(seen).kind == GateKind::CZ ? 1 : 0;
    }
    return count >= czCount;
  });
}
} // namespace zar
