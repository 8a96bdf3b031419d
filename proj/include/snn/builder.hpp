#pragma once

#include <cstdint>

#include "snn/network.hpp"

namespace snn {

// Elementary construction work spent producing a network.
struct GeneratorCost {
  std::int64_t builder_ops = 0;
  std::int64_t peak_neurons = 0;
  std::int64_t peak_synapses = 0;

  friend bool operator==(const GeneratorCost&, const GeneratorCost&) = default;
};

// Network construction that counts one op per added neuron, synapse and
// scheduled spike.
class NetworkBuilder {
 public:
  void neuron(NeuronSpec spec);
  void input(const NeuronId& id, SpikeSchedule schedule);
  void synapse(SynapseSpec spec);
  void accept(const NeuronId& id) { network_.accept = id; }
  void reject(const NeuronId& id) { network_.reject = id; }

  const GeneratorCost& cost() const { return cost_; }
  Network take() { return std::move(network_); }

 private:
  void track();

  Network network_;
  GeneratorCost cost_;
};

}  // namespace snn
