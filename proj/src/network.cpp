#include "snn/network.hpp"

#include <algorithm>
#include <tuple>

namespace snn {

bool is_valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

SpikeSchedule SpikeSchedule::explicit_times(std::vector<std::int64_t> times) {
  SpikeSchedule s;
  s.spec_ = std::move(times);
  return s;
}

SpikeSchedule SpikeSchedule::periodic(std::int64_t offset, std::int64_t period) {
  SpikeSchedule s;
  s.spec_ = Periodic{offset, period};
  return s;
}

bool SpikeSchedule::fires_at(std::int64_t t) const {
  if (const auto* p = std::get_if<Periodic>(&spec_)) {
    return t >= p->offset && (t - p->offset) % p->period == 0;
  }
  const auto& ts = times();
  return std::binary_search(ts.begin(), ts.end(), t);
}

std::vector<std::int64_t> SpikeSchedule::times_before(std::int64_t horizon) const {
  std::vector<std::int64_t> out;
  if (const auto* p = std::get_if<Periodic>(&spec_)) {
    for (std::int64_t t = p->offset; t < horizon; t += p->period) out.push_back(t);
    return out;
  }
  for (std::int64_t t : times()) {
    if (t < horizon) out.push_back(t);
  }
  return out;
}

std::optional<std::string> SpikeSchedule::check() const {
  if (const auto* p = std::get_if<Periodic>(&spec_)) {
    if (p->offset < 0) return "periodic offset must be >= 0";
    if (p->period < 1) return "period must be >= 1";
    return std::nullopt;
  }
  const auto& ts = times();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < 0) return "schedule times must be >= 0";
    if (i > 0 && ts[i] <= ts[i - 1]) return "schedule times must be strictly increasing";
  }
  return std::nullopt;
}

bool Network::has_neuron(std::string_view id) const {
  return find_neuron(id) != nullptr || is_programmed(id);
}

bool Network::is_programmed(std::string_view id) const {
  return programmed.find(std::string(id)) != programmed.end();
}

const NeuronSpec* Network::find_neuron(std::string_view id) const {
  for (const auto& n : neurons) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

NeuronSpec* Network::find_neuron(std::string_view id) {
  for (auto& n : neurons) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::vector<NeuronId> Network::all_ids() const {
  std::vector<NeuronId> ids;
  ids.reserve(neuron_count());
  for (const auto& n : neurons) ids.push_back(n.id);
  for (const auto& [id, schedule] : programmed) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Rational Network::incoming_abs_weight(std::string_view id) const {
  Rational sum;
  for (const auto& s : synapses) {
    if (s.post == id) sum += s.weight.abs();
  }
  return sum;
}

Network canonicalize(Network network) {
  std::sort(network.neurons.begin(), network.neurons.end(),
            [](const NeuronSpec& a, const NeuronSpec& b) { return a.id < b.id; });
  std::sort(network.synapses.begin(), network.synapses.end(), [](const SynapseSpec& a, const SynapseSpec& b) {
    return std::tie(a.pre, a.post, a.delay, a.weight) < std::tie(b.pre, b.post, b.delay, b.weight);
  });
  return network;
}

bool structurally_equal(const Network& a, const Network& b) { return canonicalize(a) == canonicalize(b); }

std::vector<Violation> validate_network(const Network& network) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  std::set<std::string_view> seen;

  auto check_id = [&](const std::string& id, const std::string& element) {
    if (!is_valid_identifier(id)) out.push_back({K::bad_identifier, element, "invalid identifier '" + id + "'"});
    if (!seen.insert(id).second) out.push_back({K::duplicate_id, element, "duplicate id '" + id + "'"});
  };

  for (const auto& n : network.neurons) {
    const std::string element = "neuron " + n.id;
    check_id(n.id, element);
    if (n.threshold.is_negative()) out.push_back({K::negative_threshold, element, "threshold must be >= 0"});
    if (n.reset.is_negative()) out.push_back({K::negative_reset, element, "reset must be >= 0"});
    if (n.leak.is_negative() || n.leak > Rational(1)) {
      out.push_back({K::leak_out_of_range, element, "leak must be in [0,1]"});
    }
  }
  for (const auto& [id, schedule] : network.programmed) {
    const std::string element = "input " + id;
    check_id(id, element);
    if (auto problem = schedule.check()) out.push_back({K::bad_schedule, element, *problem});
  }
  for (std::size_t i = 0; i < network.synapses.size(); ++i) {
    const auto& s = network.synapses[i];
    const std::string element = "synapse #" + std::to_string(i) + " " + s.pre + " -> " + s.post;
    if (s.delay < 1) out.push_back({K::bad_delay, element, "delay must be ≥ 1"});
    if (!network.has_neuron(s.pre)) out.push_back({K::unknown_endpoint, element, "unknown id '" + s.pre + "'"});
    if (!network.has_neuron(s.post)) out.push_back({K::unknown_endpoint, element, "unknown id '" + s.post + "'"});
  }
  if (network.accept && !network.has_neuron(*network.accept)) {
    out.push_back({K::unknown_designation, "accept " + *network.accept, "unknown id '" + *network.accept + "'"});
  }
  if (network.reject && !network.has_neuron(*network.reject)) {
    out.push_back({K::unknown_designation, "reject " + *network.reject, "unknown id '" + *network.reject + "'"});
  }
  if (network.accept && network.reject && *network.accept == *network.reject) {
    out.push_back({K::accept_equals_reject, "accept " + *network.accept, "accept and reject must differ"});
  }
  for (const auto& id : network.gadget_tags) {
    if (!network.has_neuron(id)) out.push_back({K::unknown_gadget_tag, "gadget " + id, "unknown id '" + id + "'"});
  }
  return out;
}

}  // namespace snn
