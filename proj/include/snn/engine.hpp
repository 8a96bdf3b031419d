#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snn/network.hpp"
#include "snn/rational.hpp"

namespace snn {

enum class Verdict { accept, reject, timeout, ambiguous };

std::string_view to_string(Verdict v);

struct MembraneUpdate {
  Rational potential;
  bool fired = false;
};

// One leaky integrate-and-fire step: v = max(0, leak * previous + input);
// fires and resets when v reaches the threshold.
MembraneUpdate membrane_update(const Rational& previous, const Rational& leak, const Rational& input,
                               const Rational& threshold, const Rational& reset);

struct RunLimits {
  std::int64_t max_steps = 10000;
  std::optional<std::int64_t> max_total_spikes;
};

struct ResourceReport {
  Verdict verdict = Verdict::timeout;
  std::int64_t time = 0;
  std::int64_t energy = 0;
  std::int64_t energy_payload = 0;
  std::size_t neurons = 0;
  std::size_t synapses = 0;

  friend bool operator==(const ResourceReport&, const ResourceReport&) = default;
};

struct TraceStep {
  std::int64_t t = 0;
  std::vector<NeuronId> fired;
  std::int64_t energy = 0;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

// Only steps with at least one spike are recorded.
using Trace = std::vector<TraceStep>;

std::string format_report(const ResourceReport& report);
// One `t=.. fired=.. energy=..` line per recorded step, then the report line.
std::string format_trace(const Trace& trace, const ResourceReport& report);

// How the regular-neuron update of a step is executed. Both kernels produce
// identical states; `openmp` splits the per-neuron loop across threads.
enum class UpdateKernel { serial, openmp };

using NeuronIndex = std::uint32_t;

struct EngineState {
  std::int64_t t = 0;
  // Indexed by NeuronIndex; entries of programmed neurons stay zero.
  std::vector<Rational> potentials;
  // Arrival time -> synapse indices in flight.
  std::map<std::int64_t, std::vector<std::uint32_t>> pending;
  std::int64_t energy = 0;
  std::int64_t energy_payload = 0;
  // Ascending indices of the neurons that fired in the last executed step.
  std::vector<NeuronIndex> fired_now;

  // Per-step scratch.
  std::vector<Rational> input;
  std::vector<char> has_input;
  std::vector<char> fired_flag;
};

// A network compiled to dense arrays. Neuron indices follow sorted id order,
// which fixes the iteration order and hence every emitted byte.
class Engine {
 public:
  // Throws SnnError when validate_network reports anything.
  explicit Engine(const Network& network, UpdateKernel kernel = UpdateKernel::serial);

  EngineState initial_state() const;

  // Executes step `state.t` and advances the clock. Returns a verdict when the
  // accept and/or reject neuron fired in this step.
  std::optional<Verdict> step(EngineState& state) const;

  std::size_t neuron_count() const { return ids_.size(); }
  std::size_t synapse_count() const { return syn_post_.size(); }
  const NeuronId& id(NeuronIndex index) const { return ids_[index]; }
  std::optional<NeuronIndex> index_of(std::string_view id) const;
  bool is_programmed(NeuronIndex index) const { return programmed_slot_[index] >= 0; }
  bool has_designation() const { return accept_.has_value() || reject_.has_value(); }

 private:
  UpdateKernel kernel_;
  std::vector<NeuronId> ids_;
  std::vector<char> gadget_;
  // Regular-neuron parameters, indexed by position in regular_.
  std::vector<NeuronIndex> regular_;
  std::vector<Rational> threshold_;
  std::vector<Rational> reset_;
  std::vector<Rational> leak_;
  std::vector<char> always_fires_;
  // >= 0: slot in schedules_.
  std::vector<int> programmed_slot_;
  std::vector<NeuronIndex> programmed_;
  std::vector<SpikeSchedule> schedules_;
  // Outgoing synapses per neuron (CSR).
  std::vector<std::uint32_t> out_begin_;
  std::vector<std::uint32_t> out_syn_;
  std::vector<NeuronIndex> syn_post_;
  std::vector<std::int64_t> syn_delay_;
  std::vector<Rational> syn_weight_;
  std::optional<NeuronIndex> accept_;
  std::optional<NeuronIndex> reject_;
};

struct RunResult {
  ResourceReport report;
  std::optional<Trace> trace;
};

// Simulates from t = 0 until the first verdict or a limit. Throws SnnError for
// an invalid network or one with neither accept nor reject designated.
RunResult run(const Network& network, const RunLimits& limits, bool trace_requested = false,
              UpdateKernel kernel = UpdateKernel::serial);

// Runs exactly `steps` steps ignoring accept/reject (for fragments that have
// no designation). The report's verdict is always timeout.
RunResult run_free(const Network& network, std::int64_t steps, bool trace_requested = true,
                   UpdateKernel kernel = UpdateKernel::serial);

// Firing times per neuron over a free run of `steps` steps.
std::map<NeuronId, std::vector<std::int64_t>> fire_times(const Network& network, std::int64_t steps);

}  // namespace snn
