#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "snn/rational.hpp"

namespace snn {

using NeuronId = std::string;

// Nonempty, over [A-Za-z0-9_].
bool is_valid_identifier(std::string_view id);

struct NeuronSpec {
  NeuronId id;
  Rational threshold{1};
  Rational reset{0};
  Rational leak{1};

  friend bool operator==(const NeuronSpec&, const NeuronSpec&) = default;
};

struct SynapseSpec {
  NeuronId pre;
  NeuronId post;
  std::int64_t delay = 1;
  Rational weight{1};

  friend bool operator==(const SynapseSpec&, const SynapseSpec&) = default;
};

// Predetermined spike train of a programmed neuron.
class SpikeSchedule {
 public:
  struct Periodic {
    std::int64_t offset = 0;
    std::int64_t period = 1;
    friend bool operator==(const Periodic&, const Periodic&) = default;
  };

  SpikeSchedule() = default;

  static SpikeSchedule explicit_times(std::vector<std::int64_t> times);
  static SpikeSchedule once(std::int64_t t) { return explicit_times({t}); }
  static SpikeSchedule periodic(std::int64_t offset, std::int64_t period);

  bool is_periodic() const { return std::holds_alternative<Periodic>(spec_); }
  const std::vector<std::int64_t>& times() const { return std::get<std::vector<std::int64_t>>(spec_); }
  const Periodic& periodic_spec() const { return std::get<Periodic>(spec_); }

  bool fires_at(std::int64_t t) const;
  // Firing times in [0, horizon).
  std::vector<std::int64_t> times_before(std::int64_t horizon) const;

  // Empty when well formed.
  std::optional<std::string> check() const;

  friend bool operator==(const SpikeSchedule&, const SpikeSchedule&) = default;

 private:
  std::variant<std::vector<std::int64_t>, Periodic> spec_;
};

// Regular neurons live in `neurons`; programmed neurons are keyed in
// `programmed` and carry no membrane parameters.
struct Network {
  std::vector<NeuronSpec> neurons;
  std::map<NeuronId, SpikeSchedule> programmed;
  std::vector<SynapseSpec> synapses;
  std::optional<NeuronId> accept;
  std::optional<NeuronId> reject;
  std::set<NeuronId> gadget_tags;

  std::size_t neuron_count() const { return neurons.size() + programmed.size(); }
  bool has_neuron(std::string_view id) const;
  bool is_programmed(std::string_view id) const;
  const NeuronSpec* find_neuron(std::string_view id) const;
  NeuronSpec* find_neuron(std::string_view id);

  // Sorted ids of every neuron, regular and programmed.
  std::vector<NeuronId> all_ids() const;

  // Sum of |w| over synapses ending at `id`.
  Rational incoming_abs_weight(std::string_view id) const;

  friend bool operator==(const Network&, const Network&) = default;
};

// Neurons sorted by id, synapses sorted by (pre, post, delay, weight).
Network canonicalize(Network network);
bool structurally_equal(const Network& a, const Network& b);

struct Violation {
  enum class Kind {
    bad_identifier,
    duplicate_id,
    negative_threshold,
    negative_reset,
    leak_out_of_range,
    bad_delay,
    unknown_endpoint,
    bad_schedule,
    unknown_designation,
    accept_equals_reject,
    unknown_gadget_tag,
  };
  Kind kind;
  std::string element;
  std::string message;
};

std::vector<Violation> validate_network(const Network& network);

}  // namespace snn
