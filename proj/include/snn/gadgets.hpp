#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "snn/network.hpp"

namespace snn {

// Where a caller should attach a synapse to drive a fragment.
struct Port {
  NeuronId neuron;
  std::int64_t delay = 1;
  Rational weight{1};
};

// A reusable piece of network. All ids start with the prefix it was built
// with; fragments never designate accept or reject.
struct Fragment {
  Network network;
  NeuronId output;
  // Reference spike train the output is timed against, when there is one.
  std::optional<NeuronId> reference;
  std::map<std::string, Port> inputs;
};

// Fires at every t >= 1.
Fragment make_constant_firer(std::string_view prefix);

// Fires at t = 1, 1 + K, 1 + 2K, ...  Throws SnnError if period < 1.
Fragment make_clock(std::int64_t period, std::string_view prefix);

// Temporal code for 0 <= value < period: a clock plus a neuron that fires
// value + 1 steps after every tick, i.e. at 2 + value + jK. The clock output
// is the fragment's reference.
Fragment make_number(std::int64_t value, std::int64_t period, std::string_view prefix);

// The number neuron alone. Its "clock" port must be fed by an external clock
// of the same period through a synapse with the port's delay.
Fragment make_number_from_clock(std::int64_t value, std::int64_t period, std::string_view prefix);

// Synapse from `from` into a fragment port.
SynapseSpec connect(const NeuronId& from, const Port& port);

// Adds a gadget-tagged timer neuron that fires at t = 0 and, t_bound + 1
// steps later, cancels every excitatory input of the accept neuron while
// driving the reject neuron over its threshold. A reject neuron is created
// when the network has none. Throws SnnError when there is no accept neuron,
// when the reject neuron is programmed, or when t_bound < 0.
Network attach_timer(Network network, std::int64_t t_bound);

// Adds a gadget-tagged energy counter E = (e, e, 1) fed by every payload
// neuron. Once e payload spikes have been counted E fires every step,
// inhibiting accept and exciting reject (when present). Throws SnnError when
// there is no accept neuron, when the reject neuron is programmed, or when
// e_bound < 1.
Network attach_meter(Network network, std::int64_t e_bound);

struct Designations {
  std::optional<NeuronId> accept;
  std::optional<NeuronId> reject;
};

// Disjoint union of `parts` plus cross synapses. Designations carried by the
// parts are kept unless overridden. Throws SnnError on id collisions,
// conflicting designations, or a cross synapse naming an unknown neuron.
Network merge(std::span<const Network> parts, std::span<const SynapseSpec> cross = {},
              const Designations& designations = {});
Network merge(std::span<const Fragment> parts, std::span<const SynapseSpec> cross = {},
              const Designations& designations = {});

}  // namespace snn
