// Serial vs OpenMP timings for the two parallel kernels: the verification
// sweep over instances and the per-step regular-neuron update.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "snn/engine.hpp"
#include "snn/framework.hpp"

using namespace snn;

namespace {

template <typename F>
double best_of(int reps, F&& f) {
  double best = 1e30;
  for (int r = 0; r < reps; ++r) {
    auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

// Dense-ish random network; every neuron is regular so the update loop dominates.
Network wide_network(int neurons, int out_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Network net;
  net.programmed.emplace("drive", SpikeSchedule::periodic(0, 1));
  for (int k = 0; k < neurons; ++k) {
    net.neurons.push_back({"n" + std::to_string(k), Rational(1 + static_cast<std::int64_t>(rng() % 3)), Rational(0),
                           Rational(static_cast<std::int64_t>(rng() % 3), 2)});
  }
  for (int k = 0; k < neurons; ++k) {
    net.synapses.push_back({"drive", "n" + std::to_string(k), 1, Rational(1, 2)});
    for (int e = 0; e < out_degree; ++e) {
      net.synapses.push_back({"n" + std::to_string(k), "n" + std::to_string(rng() % neurons),
                              1 + static_cast<std::int64_t>(rng() % 4), Rational(static_cast<std::int64_t>(rng() % 5) - 2, 3)});
    }
  }
  net.neurons.push_back({"acc"});
  net.accept = "acc";
  return net;
}

}  // namespace

int main() {
  std::printf("threads=%d\n", omp_get_max_threads());

  for (const char* id : {"array-search-a", "array-search-c"}) {
    const Compiler& compiler = find_compiler(id);
    VerifyDomain domain{.max_len = 4, .max_val = 8};
    VerifyReport serial_report, parallel_report;
    const double serial = best_of(3, [&] { serial_report = verify_equivalence(compiler, domain, ExecutionPolicy::serial); });
    const double parallel =
        best_of(3, [&] { parallel_report = verify_equivalence(compiler, domain, ExecutionPolicy::openmp); });
    std::printf("verify %-15s instances=%lld serial=%.3fs openmp=%.3fs speedup=%.2f equal=%s\n", id,
                static_cast<long long>(serial_report.instances), serial, parallel, serial / parallel,
                serial_report == parallel_report ? "yes" : "NO");
  }

  for (int neurons : {1000, 5000}) {
    Network net = wide_network(neurons, 4, 7);
    ResourceReport a, b;
    const double serial = best_of(3, [&] { a = run(net, {.max_steps = 200}, false, UpdateKernel::serial).report; });
    const double parallel = best_of(3, [&] { b = run(net, {.max_steps = 200}, false, UpdateKernel::openmp).report; });
    std::printf("engine neurons=%-6d steps=200 energy=%lld serial=%.3fs openmp=%.3fs speedup=%.2f equal=%s\n", neurons,
                static_cast<long long>(a.energy), serial, parallel, serial / parallel, a == b ? "yes" : "NO");
  }
  return 0;
}
