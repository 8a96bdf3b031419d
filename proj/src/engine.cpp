#include "snn/engine.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "snn/error.hpp"

namespace snn {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::accept:
      return "accept";
    case Verdict::reject:
      return "reject";
    case Verdict::timeout:
      return "timeout";
    case Verdict::ambiguous:
      return "ambiguous";
  }
  return "?";
}

MembraneUpdate membrane_update(const Rational& previous, const Rational& leak, const Rational& input,
                               const Rational& threshold, const Rational& reset) {
  Rational v = leak * previous;
  v += input;
  if (v.is_negative()) v = Rational(0);
  if (v >= threshold) return {reset, true};
  return {std::move(v), false};
}

std::string format_report(const ResourceReport& r) {
  std::ostringstream out;
  out << "verdict=" << to_string(r.verdict) << " time=" << r.time << " energy=" << r.energy
      << " payload_energy=" << r.energy_payload << " neurons=" << r.neurons << " synapses=" << r.synapses;
  return out.str();
}

std::string format_trace(const Trace& trace, const ResourceReport& report) {
  std::ostringstream out;
  for (const auto& step : trace) {
    out << "t=" << step.t << " fired=";
    for (std::size_t i = 0; i < step.fired.size(); ++i) out << (i ? "," : "") << step.fired[i];
    out << " energy=" << step.energy << '\n';
  }
  out << format_report(report) << '\n';
  return out.str();
}

Engine::Engine(const Network& network, UpdateKernel kernel) : kernel_(kernel) {
  if (auto violations = validate_network(network); !violations.empty()) {
    std::string msg = "invalid network:";
    for (const auto& v : violations) msg += "\n  " + v.element + ": " + v.message;
    throw SnnError(msg);
  }

  ids_ = network.all_ids();
  const auto n = ids_.size();
  auto index = [&](std::string_view id) {
    return static_cast<NeuronIndex>(std::lower_bound(ids_.begin(), ids_.end(), id) - ids_.begin());
  };

  gadget_.assign(n, 0);
  for (const auto& id : network.gadget_tags) gadget_[index(id)] = 1;

  programmed_slot_.assign(n, -1);
  for (const auto& [id, schedule] : network.programmed) {
    NeuronIndex i = index(id);
    programmed_slot_[i] = static_cast<int>(schedules_.size());
    programmed_.push_back(i);
    schedules_.push_back(schedule);
  }
  // Regular neurons in index order.
  std::vector<const NeuronSpec*> by_index(n, nullptr);
  for (const auto& spec : network.neurons) by_index[index(spec.id)] = &spec;
  for (NeuronIndex i = 0; i < n; ++i) {
    if (!by_index[i]) continue;
    regular_.push_back(i);
    threshold_.push_back(by_index[i]->threshold);
    reset_.push_back(by_index[i]->reset);
    leak_.push_back(by_index[i]->leak);
    always_fires_.push_back(by_index[i]->threshold.is_zero());
  }

  // Synapses in canonical order.
  std::vector<const SynapseSpec*> syns;
  for (const auto& s : network.synapses) syns.push_back(&s);
  std::stable_sort(syns.begin(), syns.end(), [&](const SynapseSpec* a, const SynapseSpec* b) {
    return std::tie(a->pre, a->post, a->delay, a->weight) < std::tie(b->pre, b->post, b->delay, b->weight);
  });
  out_begin_.assign(n + 1, 0);
  for (const auto* s : syns) ++out_begin_[index(s->pre) + 1];
  for (std::size_t i = 0; i < n; ++i) out_begin_[i + 1] += out_begin_[i];
  out_syn_.resize(syns.size());
  std::vector<std::uint32_t> fill(out_begin_.begin(), out_begin_.end() - 1);
  for (std::uint32_t k = 0; k < syns.size(); ++k) {
    syn_post_.push_back(index(syns[k]->post));
    syn_delay_.push_back(syns[k]->delay);
    syn_weight_.push_back(syns[k]->weight);
    out_syn_[fill[index(syns[k]->pre)]++] = k;
  }

  if (network.accept) accept_ = index(*network.accept);
  if (network.reject) reject_ = index(*network.reject);
}

std::optional<NeuronIndex> Engine::index_of(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<NeuronIndex>(it - ids_.begin());
}

EngineState Engine::initial_state() const {
  EngineState s;
  s.potentials.assign(ids_.size(), Rational(0));
  s.input.assign(ids_.size(), Rational(0));
  s.has_input.assign(ids_.size(), 0);
  s.fired_flag.assign(ids_.size(), 0);
  return s;
}

std::optional<Verdict> Engine::step(EngineState& state) const {
  const std::int64_t t = state.t;

  // Deliveries arriving now, summed per post-synaptic neuron.
  std::vector<NeuronIndex> touched;
  if (auto it = state.pending.begin(); it != state.pending.end() && it->first == t) {
    for (std::uint32_t syn : it->second) {
      NeuronIndex post = syn_post_[syn];
      if (!state.has_input[post]) {
        state.has_input[post] = 1;
        touched.push_back(post);
      }
      state.input[post] += syn_weight_[syn];
    }
    state.pending.erase(it);
  }

  auto update = [&](std::int64_t k) {
    const NeuronIndex idx = regular_[k];
    Rational& u = state.potentials[idx];
    if (!state.has_input[idx] && u.is_zero() && !always_fires_[k]) {
      state.fired_flag[idx] = 0;
      return;
    }
    auto r = membrane_update(u, leak_[k], state.input[idx], threshold_[k], reset_[k]);
    u = std::move(r.potential);
    state.fired_flag[idx] = r.fired;
  };

  const auto n_regular = static_cast<std::int64_t>(regular_.size());
  if (kernel_ == UpdateKernel::openmp) {
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n_regular; ++k) update(k);
  } else {
    for (std::int64_t k = 0; k < n_regular; ++k) update(k);
  }

  // Programmed neurons follow their schedule; incoming spikes are ignored.
  for (std::size_t p = 0; p < programmed_.size(); ++p) {
    state.fired_flag[programmed_[p]] = schedules_[p].fires_at(t);
  }

  for (NeuronIndex idx : touched) {
    state.input[idx] = Rational(0);
    state.has_input[idx] = 0;
  }

  state.fired_now.clear();
  for (NeuronIndex i = 0; i < ids_.size(); ++i) {
    if (!state.fired_flag[i]) continue;
    state.fired_now.push_back(i);
    ++state.energy;
    if (!gadget_[i]) ++state.energy_payload;
    for (std::uint32_t e = out_begin_[i]; e < out_begin_[i + 1]; ++e) {
      const std::uint32_t syn = out_syn_[e];
      state.pending[t + syn_delay_[syn]].push_back(syn);
    }
  }
  state.t = t + 1;

  const bool accepted = accept_ && state.fired_flag[*accept_];
  const bool rejected = reject_ && state.fired_flag[*reject_];
  if (accepted && rejected) return Verdict::ambiguous;
  if (accepted) return Verdict::accept;
  if (rejected) return Verdict::reject;
  return std::nullopt;
}

namespace {

TraceStep record(const Engine& engine, const EngineState& state) {
  TraceStep step;
  step.t = state.t - 1;
  step.energy = state.energy;
  for (NeuronIndex i : state.fired_now) step.fired.push_back(engine.id(i));
  return step;
}

RunResult simulate(const Engine& engine, std::int64_t max_steps, std::optional<std::int64_t> max_spikes,
                   bool halt_on_verdict, bool trace_requested) {
  RunResult result;
  if (trace_requested) result.trace.emplace();
  EngineState state = engine.initial_state();
  ResourceReport& report = result.report;
  report.neurons = engine.neuron_count();
  report.synapses = engine.synapse_count();
  report.verdict = Verdict::timeout;

  while (state.t < max_steps) {
    auto verdict = engine.step(state);
    if (trace_requested && !state.fired_now.empty()) result.trace->push_back(record(engine, state));
    if (halt_on_verdict && verdict) {
      report.verdict = *verdict;
      break;
    }
    if (max_spikes && state.energy > *max_spikes) break;
  }
  report.time = state.t;
  report.energy = state.energy;
  report.energy_payload = state.energy_payload;
  return result;
}

}  // namespace

RunResult run(const Network& network, const RunLimits& limits, bool trace_requested, UpdateKernel kernel) {
  if (limits.max_steps < 1) throw SnnError("max_steps must be >= 1");
  if (limits.max_total_spikes && *limits.max_total_spikes < 0) throw SnnError("max_total_spikes must be >= 0");
  Engine engine(network, kernel);
  if (!engine.has_designation()) throw SnnError("network has neither an accept nor a reject neuron");
  return simulate(engine, limits.max_steps, limits.max_total_spikes, true, trace_requested);
}

RunResult run_free(const Network& network, std::int64_t steps, bool trace_requested, UpdateKernel kernel) {
  Engine engine(network, kernel);
  return simulate(engine, steps, std::nullopt, false, trace_requested);
}

std::map<NeuronId, std::vector<std::int64_t>> fire_times(const Network& network, std::int64_t steps) {
  std::map<NeuronId, std::vector<std::int64_t>> out;
  for (const auto& id : network.all_ids()) out[id];
  auto result = run_free(network, steps, true);
  for (const auto& step : *result.trace) {
    for (const auto& id : step.fired) out[id].push_back(step.t);
  }
  return out;
}

}  // namespace snn
