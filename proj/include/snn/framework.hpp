#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snn/bounds.hpp"
#include "snn/builder.hpp"
#include "snn/compilers.hpp"
#include "snn/engine.hpp"
#include "snn/snn_format.hpp"

namespace snn {

// ---------------------------------------------------------------------------
// Network Halting oracle

enum class OracleOutcome { accepted, rejected, promise_violated };

std::string_view to_string(OracleOutcome o);

struct OracleAnswer {
  OracleOutcome outcome = OracleOutcome::promise_violated;
  ResourceReport report;
  // Which promise failed: "space", "time", "energy" or "ambiguous". Empty for
  // definite answers.
  std::string violation;
};

// Answers "does the network accept?" under the promise that it halts within
// `bounds`. The simulation never runs more than bounds.time steps and stops
// once the spike count passes bounds.energy; a network larger than
// bounds.space is not simulated at all. Throws SnnError for invalid networks.
OracleAnswer network_halting_oracle(const Network& network, const InputMap& inputs, const ConcreteBounds& bounds);

// ---------------------------------------------------------------------------
// Metered generation

struct Generated {
  Network network;
  InputMap inputs;
  GeneratorCost cost;
};

// An instance-to-network generator with the size measure it declares.
struct Compiler {
  std::string id;
  // Names the variables of size_of, e.g. "n = array length, V = value bound".
  std::string size_measure;
  std::function<Generated(const ArrayInstance&)> generate;
  std::function<SizeMeasure(const ArrayInstance&)> size_of;
  // Expected payload spike bound, when the construction has one.
  std::optional<ResourceBound> spike_bound;
  std::optional<SearchVariant> variant;
};

// Array Search in the given variant; `options` exists for mutation testing.
Compiler array_search_compiler(SearchVariant variant, const SearchOptions& options = {});
// Decides membership itself and emits a one-neuron network firing accept or
// reject at t = 0. Its builder cost is the same for every instance.
Compiler trivial_compiler();

// Registered ids: array-search-a, array-search-b, array-search-c, trivial.
const Compiler& find_compiler(std::string_view id);
std::vector<std::string> compiler_ids();

struct Instrumentation {
  bool timer = false;
  bool meter = false;
};

struct Decision {
  Verdict verdict = Verdict::timeout;
  GeneratorCost cost;
  ResourceReport report;
  SizeMeasure size;
  // time, space, energy. Space counts payload neurons, energy payload spikes.
  std::array<BoundCheck, 3> checks;

  bool within_bounds() const;
};

// Generates the network for `instance`, optionally attaches a timer (bound
// time - 2, so reject lands no later than the time bound) and a meter (bound
// energy), simulates it for at most time + 1 steps and compares measured
// against declared resources. Violations are reported, not thrown.
Decision generate_and_decide(const Compiler& compiler, const ArrayInstance& instance, const ResourceBounds& bounds,
                             Instrumentation instrument = {});

// ---------------------------------------------------------------------------
// Oracle-equivalence sweeps

enum class ExecutionPolicy { serial, openmp };

struct VerifyDomain {
  std::size_t max_len = 4;
  // Values (and the bound V) for the exhaustive sweep; the upper limit for V
  // in random sampling.
  std::int64_t max_val = 8;
  // When set, sample this many instances instead of enumerating.
  std::optional<std::int64_t> random_count;
  std::uint64_t seed = 1;
};

struct Mismatch {
  ArrayInstance instance;
  Verdict verdict = Verdict::timeout;
  bool expected = false;
};

struct VerifyReport {
  std::int64_t instances = 0;
  std::vector<Mismatch> mismatches;
  // Runs whose payload energy exceeded the compiler's spike bound.
  std::int64_t bound_violations = 0;
  // Runs violating energy <= time * neurons.
  std::int64_t inequality_violations = 0;
  // Runs whose verdict came at an unexpected step.
  std::int64_t timing_violations = 0;

  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

bool operator==(const Mismatch& a, const Mismatch& b);
bool operator==(const ArrayInstance& a, const ArrayInstance& b);

std::vector<ArrayInstance> enumerate_instances(std::size_t max_len, std::int64_t max_val);
std::vector<ArrayInstance> sample_instances(std::int64_t count, std::size_t max_len, std::int64_t max_val,
                                            std::uint64_t seed);

// Runs every instance of the domain and compares with brute-force membership.
// Results are reduced in instance order, so both policies give equal reports.
VerifyReport verify_equivalence(const Compiler& compiler, const VerifyDomain& domain,
                                ExecutionPolicy policy = ExecutionPolicy::openmp);
VerifyReport verify_instances(const Compiler& compiler, const std::vector<ArrayInstance>& instances,
                              ExecutionPolicy policy = ExecutionPolicy::openmp);

std::string format_verify_report(const VerifyReport& report);

}  // namespace snn
