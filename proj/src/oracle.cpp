#include <map>

#include "snn/error.hpp"
#include "snn/framework.hpp"
#include "snn/gadgets.hpp"

namespace snn {

std::string_view to_string(OracleOutcome o) {
  switch (o) {
    case OracleOutcome::accepted:
      return "accepted";
    case OracleOutcome::rejected:
      return "rejected";
    case OracleOutcome::promise_violated:
      return "promise_violated";
  }
  return "?";
}

OracleAnswer network_halting_oracle(const Network& network, const InputMap& inputs, const ConcreteBounds& bounds) {
  const Network net = apply_inputs(network, inputs);
  if (auto v = validate_network(net); !v.empty()) {
    throw SnnError("oracle: invalid network: " + v.front().element + ": " + v.front().message);
  }
  if (!net.accept && !net.reject) throw SnnError("oracle: network has neither an accept nor a reject neuron");

  OracleAnswer answer;
  answer.report.neurons = net.neuron_count();
  answer.report.synapses = net.synapses.size();

  if (static_cast<std::int64_t>(net.neuron_count()) > bounds.space) {
    answer.violation = "space";
    return answer;
  }
  if (bounds.time < 1) {
    answer.violation = "time";
    return answer;
  }

  RunLimits limits;
  limits.max_steps = bounds.time;
  limits.max_total_spikes = std::max<std::int64_t>(bounds.energy, 0);
  answer.report = run(net, limits).report;

  const auto& r = answer.report;
  if (r.energy > bounds.energy) {
    answer.violation = "energy";
  } else if (r.verdict == Verdict::timeout) {
    answer.violation = "time";
  } else if (r.verdict == Verdict::ambiguous) {
    answer.violation = "ambiguous";
  } else {
    answer.outcome = r.verdict == Verdict::accept ? OracleOutcome::accepted : OracleOutcome::rejected;
  }
  return answer;
}

namespace {

SizeMeasure array_size(const ArrayInstance& instance) {
  return {{"n", static_cast<std::int64_t>(instance.array.size())}, {"V", instance.bound}};
}

Generated generate_search(SearchVariant variant, const SearchOptions& options, const ArrayInstance& instance) {
  if (auto problem = check_instance(instance)) throw SnnError("invalid instance: " + *problem);
  Generated g;
  switch (variant) {
    case SearchVariant::a:
      g.network = compile_search_embedded(instance, options, &g.cost);
      break;
    case SearchVariant::b:
      g.network = compile_search_value_input(instance.array, instance.bound, options, &g.cost).network;
      g.inputs = encode_input(variant, instance.array.size(), instance.bound, {}, instance.target);
      break;
    case SearchVariant::c:
      g.network = compile_search_full_input(instance.array.size(), instance.bound, options, &g.cost).network;
      g.inputs = encode_input(variant, instance.array.size(), instance.bound, instance.array, instance.target);
      break;
  }
  return g;
}

}  // namespace

Compiler array_search_compiler(SearchVariant variant, const SearchOptions& options) {
  Compiler c;
  c.id = "array-search-" + std::string(to_string(variant));
  c.size_measure = "n = array length, V = value bound";
  c.variant = variant;
  c.size_of = array_size;
  c.generate = [variant, options](const ArrayInstance& instance) { return generate_search(variant, options, instance); };
  switch (variant) {
    case SearchVariant::a:
      c.spike_bound = ResourceBound::linear(Resource::energy, {{"n", Rational(1)}}, Rational(2));
      break;
    case SearchVariant::b:
      c.spike_bound = ResourceBound::linear(Resource::energy, {{"n", Rational(1)}}, Rational(3));
      break;
    case SearchVariant::c:
      c.spike_bound = ResourceBound::linear(Resource::energy, {{"n", Rational(2)}}, Rational(2));
      break;
  }
  return c;
}

Compiler trivial_compiler() {
  Compiler c;
  c.id = "trivial";
  c.size_measure = "n = array length, V = value bound";
  c.size_of = array_size;
  c.generate = [](const ArrayInstance& instance) {
    if (auto problem = check_instance(instance)) throw SnnError("invalid instance: " + *problem);
    NetworkBuilder b;
    const bool member = contains(instance);
    const NeuronId id = member ? "acc" : "rej";
    b.input(id, SpikeSchedule::once(0));
    if (member) {
      b.accept(id);
    } else {
      b.reject(id);
    }
    Generated g;
    g.cost = b.cost();
    g.network = b.take();
    return g;
  };
  c.spike_bound = ResourceBound::constant(Resource::energy, Rational(1));
  return c;
}

const Compiler& find_compiler(std::string_view id) {
  static const std::map<std::string, Compiler, std::less<>> registry = [] {
    std::map<std::string, Compiler, std::less<>> m;
    for (auto v : {SearchVariant::a, SearchVariant::b, SearchVariant::c}) {
      auto c = array_search_compiler(v);
      m.emplace(c.id, c);
    }
    auto t = trivial_compiler();
    m.emplace(t.id, t);
    return m;
  }();
  auto it = registry.find(id);
  if (it == registry.end()) throw SnnError("unknown compiler '" + std::string(id) + "'");
  return it->second;
}

std::vector<std::string> compiler_ids() { return {"array-search-a", "array-search-b", "array-search-c", "trivial"}; }

bool Decision::within_bounds() const {
  return !checks[0].violated && !checks[1].violated && !checks[2].violated;
}

Decision generate_and_decide(const Compiler& compiler, const ArrayInstance& instance, const ResourceBounds& bounds,
                             Instrumentation instrument) {
  for (const auto* b : {&bounds.time, &bounds.space, &bounds.energy}) {
    if (auto problem = b->check()) throw SnnError("malformed " + std::string(to_string(b->applies_to)) + " bound: " + *problem);
  }
  Decision d;
  d.size = compiler.size_of(instance);
  Generated g = compiler.generate(instance);
  d.cost = g.cost;

  const std::int64_t time_cap = bounds.time.cap(d.size);
  const std::int64_t energy_cap = bounds.energy.cap(d.size);
  Network net = apply_inputs(std::move(g.network), g.inputs);
  if (instrument.timer) {
    if (time_cap < 2) throw SnnError("timer needs a time bound of at least 2");
    net = attach_timer(std::move(net), time_cap - 2);
  }
  if (instrument.meter) {
    if (energy_cap < 1) throw SnnError("meter needs an energy bound of at least 1");
    net = attach_meter(std::move(net), energy_cap);
  }

  RunLimits limits;
  limits.max_steps = std::max<std::int64_t>(time_cap, 0) + 1;
  d.report = run(net, limits).report;
  d.verdict = d.report.verdict;

  const auto payload_neurons =
      static_cast<std::int64_t>(net.neuron_count()) - static_cast<std::int64_t>(net.gadget_tags.size());
  d.checks[0] = check_bound(bounds.time, d.size, d.report.time);
  d.checks[1] = check_bound(bounds.space, d.size, payload_neurons);
  d.checks[2] = check_bound(bounds.energy, d.size, d.report.energy_payload);
  return d;
}

}  // namespace snn
