#include "snn/compilers.hpp"

#include <algorithm>

#include "snn/error.hpp"

namespace snn {

void NetworkBuilder::neuron(NeuronSpec spec) {
  network_.neurons.push_back(std::move(spec));
  ++cost_.builder_ops;
  track();
}

void NetworkBuilder::input(const NeuronId& id, SpikeSchedule schedule) {
  const auto spikes = schedule.is_periodic() ? 1 : static_cast<std::int64_t>(schedule.times().size());
  network_.programmed.emplace(id, std::move(schedule));
  cost_.builder_ops += 1 + spikes;
  track();
}

void NetworkBuilder::synapse(SynapseSpec spec) {
  network_.synapses.push_back(std::move(spec));
  ++cost_.builder_ops;
  track();
}

void NetworkBuilder::track() {
  cost_.peak_neurons = std::max<std::int64_t>(cost_.peak_neurons, network_.neuron_count());
  cost_.peak_synapses = std::max<std::int64_t>(cost_.peak_synapses, network_.synapses.size());
}

std::optional<std::string> check_instance(const ArrayInstance& instance) {
  if (instance.bound < 1) return "value bound V must be >= 1";
  if (instance.target < 0 || instance.target >= instance.bound) return "target must lie in [0, V)";
  for (auto a : instance.array) {
    if (a < 0 || a >= instance.bound) return "array elements must lie in [0, V)";
  }
  return std::nullopt;
}

bool contains(const ArrayInstance& instance) {
  return std::find(instance.array.begin(), instance.array.end(), instance.target) != instance.array.end();
}

std::string_view to_string(SearchVariant v) {
  switch (v) {
    case SearchVariant::a:
      return "a";
    case SearchVariant::b:
      return "b";
    case SearchVariant::c:
      return "c";
  }
  return "?";
}

std::optional<SearchVariant> parse_variant(std::string_view s) {
  if (s == "a") return SearchVariant::a;
  if (s == "b") return SearchVariant::b;
  if (s == "c") return SearchVariant::c;
  return std::nullopt;
}

std::string element_id(std::size_t j) { return "elem_" + std::to_string(j); }

namespace {

// Memoryless coincidence detector. Elements weigh 1/n and the value 1, with
// threshold 1 + 1/n: element spikes alone sum to at most 1, so the detector
// fires exactly when the value spike meets at least one equal element.
void add_detector(NetworkBuilder& b, std::size_t n, const SearchOptions& options) {
  const Rational element_weight(1, static_cast<std::int64_t>(std::max<std::size_t>(n, 1)));
  b.neuron({kDetector, options.detector_threshold.value_or(Rational(1) + element_weight), Rational(0), Rational(0)});
  b.accept(kDetector);
  b.neuron({kReject});
  b.reject(kReject);
  for (std::size_t j = 0; j < n; ++j) b.synapse({element_id(j), kDetector, 1, element_weight});
  if (n > 0) b.synapse({kValuePort, kDetector, 1, Rational(1)});
}

// The value spike reaches reject V + 1 steps after it was emitted; a detector
// spike (one step after the value) reaches it at the same step with the
// opposite weight. Reject therefore fires at i + V + 1 iff there was no match.
void add_input_rejection(NetworkBuilder& b, std::int64_t bound) {
  const Rational reject_threshold(1);
  b.synapse({kValuePort, kReject, bound + 1, reject_threshold});
  b.synapse({kDetector, kReject, bound, -reject_threshold});
}

void check_elements(std::span<const std::int64_t> array, std::int64_t bound) {
  if (bound < 1) throw SnnError("value bound V must be >= 1");
  for (auto a : array) {
    if (a < 0 || a >= bound) throw SnnError("array elements must lie in [0, V)");
  }
}

}  // namespace

Network compile_search_embedded(const ArrayInstance& instance, const SearchOptions& options, GeneratorCost* cost) {
  if (auto problem = check_instance(instance)) throw SnnError("invalid instance: " + *problem);
  const std::size_t n = instance.array.size();
  const std::int64_t i = instance.target;
  const std::int64_t V = instance.bound;

  NetworkBuilder b;
  for (std::size_t j = 0; j < n; ++j) b.input(element_id(j), SpikeSchedule::once(instance.array[j]));
  b.input(kValuePort, SpikeSchedule::once(i));
  add_detector(b, n, options);
  // Both spikes land at step V + 2, past every possible accept at i + 1 <= V.
  b.synapse({kValuePort, kReject, V + 2 - i, Rational(1)});
  if (n > 0) b.synapse({kDetector, kReject, V + 1 - i, Rational(-1)});

  if (cost) *cost = b.cost();
  return b.take();
}

CompiledSearch compile_search_value_input(std::span<const std::int64_t> array, std::int64_t bound,
                                          const SearchOptions& options, GeneratorCost* cost) {
  check_elements(array, bound);
  NetworkBuilder b;
  for (std::size_t j = 0; j < array.size(); ++j) b.input(element_id(j), SpikeSchedule::once(array[j]));
  b.input(kValuePort, SpikeSchedule{});
  add_detector(b, array.size(), options);
  add_input_rejection(b, bound);

  if (cost) *cost = b.cost();
  return {b.take(), SearchVariant::b, {kValuePort}};
}

CompiledSearch compile_search_full_input(std::size_t size, std::int64_t bound, const SearchOptions& options,
                                         GeneratorCost* cost) {
  if (bound < 1) throw SnnError("value bound V must be >= 1");
  NetworkBuilder b;
  CompiledSearch out;
  out.variant = SearchVariant::c;
  for (std::size_t j = 0; j < size; ++j) {
    b.input(element_id(j), SpikeSchedule{});
    out.input_ports.push_back(element_id(j));
  }
  b.input(kValuePort, SpikeSchedule{});
  out.input_ports.push_back(kValuePort);
  add_detector(b, size, options);
  add_input_rejection(b, bound);

  if (cost) *cost = b.cost();
  out.network = b.take();
  return out;
}

InputMap encode_input(SearchVariant variant, std::size_t size, std::int64_t bound,
                      std::span<const std::int64_t> elements, std::int64_t target) {
  if (variant == SearchVariant::a) throw SnnError("variant a has no input ports");
  const std::size_t expected = variant == SearchVariant::b ? 0 : size;
  if (elements.size() != expected) {
    throw SnnError("arity mismatch: variant " + std::string(to_string(variant)) + " expects " +
                   std::to_string(expected) + " element schedules, got " + std::to_string(elements.size()));
  }
  auto in_range = [&](std::int64_t v) {
    if (v < 0 || v >= bound) throw SnnError("input value " + std::to_string(v) + " outside [0, V)");
  };
  InputMap inputs;
  for (std::size_t j = 0; j < elements.size(); ++j) {
    in_range(elements[j]);
    inputs[element_id(j)] = SpikeSchedule::once(elements[j]);
  }
  in_range(target);
  inputs[kValuePort] = SpikeSchedule::once(target);
  return inputs;
}

}  // namespace snn
