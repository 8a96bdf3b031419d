#include "snn/gadgets.hpp"

#include <set>

#include "snn/error.hpp"

namespace snn {
namespace {

std::string checked_prefix(std::string_view prefix) {
  if (!is_valid_identifier(prefix)) throw SnnError("invalid fragment prefix '" + std::string(prefix) + "'");
  return std::string(prefix);
}

// `base`, or `base_<k>` for the smallest k that is free.
NeuronId fresh_id(const Network& network, const std::string& base) {
  if (!network.has_neuron(base)) return base;
  for (int k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!network.has_neuron(candidate)) return candidate;
  }
}

// Self-looped default neuron seeded by a one-shot spike at t = 0.
Fragment seeded_loop(std::int64_t loop_delay, const std::string& prefix) {
  Fragment f;
  f.output = prefix + "_out";
  const NeuronId seed = prefix + "_seed";
  f.network.programmed.emplace(seed, SpikeSchedule::once(0));
  f.network.neurons.push_back({f.output});
  f.network.synapses.push_back({seed, f.output, 1, Rational(1)});
  f.network.synapses.push_back({f.output, f.output, loop_delay, Rational(1)});
  return f;
}

const NeuronSpec& regular_reject(const Network& network, const char* gadget) {
  if (network.is_programmed(*network.reject)) {
    throw SnnError(std::string(gadget) + ": reject neuron '" + *network.reject + "' is programmed and cannot be driven");
  }
  return *network.find_neuron(*network.reject);
}

void require_accept(const Network& network, const char* gadget) {
  if (!network.accept) throw SnnError(std::string(gadget) + ": network has no accept neuron");
  if (auto v = validate_network(network); !v.empty()) {
    throw SnnError(std::string(gadget) + ": invalid network: " + v.front().element + ": " + v.front().message);
  }
}

}  // namespace

Fragment make_constant_firer(std::string_view prefix) { return seeded_loop(1, checked_prefix(prefix)); }

Fragment make_clock(std::int64_t period, std::string_view prefix) {
  if (period < 1) throw SnnError("clock period must be >= 1");
  return seeded_loop(period, checked_prefix(prefix));
}

Fragment make_number_from_clock(std::int64_t value, std::int64_t period, std::string_view prefix) {
  if (period < 1) throw SnnError("clock period must be >= 1");
  if (value < 0 || value >= period) throw SnnError("number must satisfy 0 <= n < K");
  Fragment f;
  f.output = checked_prefix(prefix) + "_out";
  f.network.neurons.push_back({f.output});
  // Delays are at least 1, so n is carried as a lag of n + 1.
  f.inputs["clock"] = Port{f.output, value + 1, Rational(1)};
  return f;
}

Fragment make_number(std::int64_t value, std::int64_t period, std::string_view prefix) {
  const std::string p = checked_prefix(prefix);
  Fragment number = make_number_from_clock(value, period, p);
  Fragment clock = make_clock(period, p + "_clock");
  const Fragment parts[] = {clock, number};
  const SynapseSpec wire[] = {connect(clock.output, number.inputs.at("clock"))};

  Fragment f;
  f.network = merge(std::span<const Fragment>(parts), wire);
  f.output = number.output;
  f.reference = clock.output;
  return f;
}

SynapseSpec connect(const NeuronId& from, const Port& port) { return {from, port.neuron, port.delay, port.weight}; }

Network attach_timer(Network network, std::int64_t t_bound) {
  require_accept(network, "timer");
  if (t_bound < 0) throw SnnError("timer: bound must be >= 0");

  const Rational accept_inhibition = -network.incoming_abs_weight(*network.accept);
  std::optional<Rational> reject_excitation;
  if (network.reject) {
    const NeuronSpec& rej = regular_reject(network, "timer");
    reject_excitation = rej.threshold + network.incoming_abs_weight(rej.id);
  }

  const NeuronId timer = fresh_id(network, "timer");
  network.programmed.emplace(timer, SpikeSchedule::once(0));
  network.gadget_tags.insert(timer);
  network.synapses.push_back({timer, *network.accept, t_bound + 1, accept_inhibition});

  if (!reject_excitation) {
    const NeuronId rej = fresh_id(network, "reject");
    network.neurons.push_back({rej});
    network.gadget_tags.insert(rej);
    network.reject = rej;
    reject_excitation = network.neurons.back().threshold;
  }
  network.synapses.push_back({timer, *network.reject, t_bound + 1, *reject_excitation});
  return network;
}

Network attach_meter(Network network, std::int64_t e_bound) {
  require_accept(network, "meter");
  if (e_bound < 1) throw SnnError("meter: bound must be >= 1");

  const Rational accept_inhibition = -network.incoming_abs_weight(*network.accept);
  std::optional<Rational> reject_excitation;
  if (network.reject) {
    const NeuronSpec& rej = regular_reject(network, "meter");
    reject_excitation = rej.threshold + network.incoming_abs_weight(rej.id);
  }

  std::vector<NeuronId> payload;
  for (const auto& id : network.all_ids()) {
    if (!network.gadget_tags.count(id)) payload.push_back(id);
  }

  const NeuronId meter = fresh_id(network, "meter");
  network.neurons.push_back({meter, Rational(e_bound), Rational(e_bound), Rational(1)});
  network.gadget_tags.insert(meter);
  for (const auto& id : payload) network.synapses.push_back({id, meter, 1, Rational(1)});
  network.synapses.push_back({meter, *network.accept, 1, accept_inhibition});
  if (reject_excitation) network.synapses.push_back({meter, *network.reject, 1, *reject_excitation});
  return network;
}

Network merge(std::span<const Network> parts, std::span<const SynapseSpec> cross, const Designations& designations) {
  Network out;
  std::set<NeuronId> ids;
  auto claim = [&](const NeuronId& id) {
    if (!ids.insert(id).second) throw SnnError("merge: id collision on '" + id + "'");
  };
  auto take_designation = [](std::optional<NeuronId>& slot, const std::optional<NeuronId>& v,
                             const std::optional<NeuronId>& chosen, const char* what) {
    if (!v || chosen) return;
    if (slot && *slot != *v) throw SnnError(std::string("merge: conflicting ") + what + " designations");
    slot = v;
  };

  for (const auto& part : parts) {
    for (const auto& n : part.neurons) {
      claim(n.id);
      out.neurons.push_back(n);
    }
    for (const auto& [id, schedule] : part.programmed) {
      claim(id);
      out.programmed.emplace(id, schedule);
    }
    out.synapses.insert(out.synapses.end(), part.synapses.begin(), part.synapses.end());
    out.gadget_tags.insert(part.gadget_tags.begin(), part.gadget_tags.end());
    take_designation(out.accept, part.accept, designations.accept, "accept");
    take_designation(out.reject, part.reject, designations.reject, "reject");
  }
  for (const auto& s : cross) {
    if (!ids.count(s.pre) || !ids.count(s.post)) {
      throw SnnError("merge: dangling cross synapse " + s.pre + " -> " + s.post);
    }
    out.synapses.push_back(s);
  }
  if (designations.accept) out.accept = designations.accept;
  if (designations.reject) out.reject = designations.reject;

  if (auto v = validate_network(out); !v.empty()) {
    throw SnnError("merge: " + v.front().element + ": " + v.front().message);
  }
  return out;
}

Network merge(std::span<const Fragment> parts, std::span<const SynapseSpec> cross, const Designations& designations) {
  std::vector<Network> nets;
  for (const auto& f : parts) nets.push_back(f.network);
  return merge(std::span<const Network>(nets), cross, designations);
}

}  // namespace snn
