#include <random>
#include <sstream>

#include "snn/error.hpp"
#include "snn/framework.hpp"

namespace snn {

bool operator==(const ArrayInstance& a, const ArrayInstance& b) {
  return a.array == b.array && a.target == b.target && a.bound == b.bound;
}

bool operator==(const Mismatch& a, const Mismatch& b) {
  return a.instance == b.instance && a.verdict == b.verdict && a.expected == b.expected;
}

std::vector<ArrayInstance> enumerate_instances(std::size_t max_len, std::int64_t max_val) {
  std::vector<ArrayInstance> out;
  if (max_val < 1) return out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::int64_t> digits(len, 0);
    while (true) {
      for (std::int64_t target = 0; target < max_val; ++target) out.push_back({digits, target, max_val});
      // Odometer increment, least significant digit last.
      std::size_t k = len;
      while (k > 0 && ++digits[k - 1] == max_val) digits[--k] = 0;
      if (k == 0) break;
    }
  }
  return out;
}

std::vector<ArrayInstance> sample_instances(std::int64_t count, std::size_t max_len, std::int64_t max_val,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&](std::uint64_t range) { return static_cast<std::int64_t>(rng() % range); };
  std::vector<ArrayInstance> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  for (std::int64_t k = 0; k < count; ++k) {
    ArrayInstance inst;
    inst.bound = 1 + draw(static_cast<std::uint64_t>(max_val));
    const auto len = static_cast<std::size_t>(draw(max_len + 1));
    for (std::size_t j = 0; j < len; ++j) inst.array.push_back(draw(static_cast<std::uint64_t>(inst.bound)));
    inst.target = draw(static_cast<std::uint64_t>(inst.bound));
    out.push_back(std::move(inst));
  }
  return out;
}

namespace {

struct Outcome {
  Verdict verdict = Verdict::timeout;
  bool expected = false;
  bool over_spike_bound = false;
  bool over_inequality = false;
  bool bad_timing = false;
  std::string error;
};

std::int64_t expected_time(SearchVariant variant, const ArrayInstance& inst, bool member) {
  if (member) return inst.target + 2;
  if (variant == SearchVariant::a) return inst.bound + 3;
  return inst.target + inst.bound + 2;
}

Outcome check_one(const Compiler& compiler, const ArrayInstance& inst) {
  Outcome o;
  try {
    Generated g = compiler.generate(inst);
    Network net = apply_inputs(std::move(g.network), g.inputs);
    RunLimits limits;
    limits.max_steps = 2 * inst.bound + 4;
    ResourceReport r = run(net, limits).report;
    o.verdict = r.verdict;
    o.expected = contains(inst);
    if (compiler.spike_bound) {
      o.over_spike_bound = check_bound(*compiler.spike_bound, compiler.size_of(inst), r.energy_payload).violated;
    }
    o.over_inequality = r.energy > r.time * static_cast<std::int64_t>(r.neurons);
    if (compiler.variant && r.time != expected_time(*compiler.variant, inst, o.expected)) o.bad_timing = true;
  } catch (const std::exception& e) {
    o.error = e.what();
  }
  return o;
}

}  // namespace

VerifyReport verify_instances(const Compiler& compiler, const std::vector<ArrayInstance>& instances,
                              ExecutionPolicy policy) {
  std::vector<Outcome> outcomes(instances.size());
  const auto count = static_cast<std::int64_t>(instances.size());
  if (policy == ExecutionPolicy::openmp) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < count; ++k) outcomes[k] = check_one(compiler, instances[k]);
  } else {
    for (std::int64_t k = 0; k < count; ++k) outcomes[k] = check_one(compiler, instances[k]);
  }

  VerifyReport report;
  report.instances = count;
  for (std::int64_t k = 0; k < count; ++k) {
    const Outcome& o = outcomes[k];
    if (!o.error.empty()) throw SnnError("verify: instance " + std::to_string(k) + ": " + o.error);
    const bool accepted = o.verdict == Verdict::accept;
    const bool rejected = o.verdict == Verdict::reject;
    if ((o.expected && !accepted) || (!o.expected && !rejected)) {
      report.mismatches.push_back({instances[k], o.verdict, o.expected});
    }
    report.bound_violations += o.over_spike_bound;
    report.inequality_violations += o.over_inequality;
    report.timing_violations += o.bad_timing;
  }
  return report;
}

VerifyReport verify_equivalence(const Compiler& compiler, const VerifyDomain& domain, ExecutionPolicy policy) {
  auto instances = domain.random_count
                       ? sample_instances(*domain.random_count, domain.max_len, domain.max_val, domain.seed)
                       : enumerate_instances(domain.max_len, domain.max_val);
  return verify_instances(compiler, instances, policy);
}

std::string format_verify_report(const VerifyReport& report) {
  std::ostringstream out;
  for (const auto& m : report.mismatches) {
    out << "mismatch array=";
    for (std::size_t j = 0; j < m.instance.array.size(); ++j) out << (j ? "," : "") << m.instance.array[j];
    out << " target=" << m.instance.target << " bound=" << m.instance.bound << " verdict=" << to_string(m.verdict)
        << " expected=" << (m.expected ? "accept" : "reject") << '\n';
  }
  out << "instances=" << report.instances << " mismatches=" << report.mismatches.size()
      << " bound_violations=" << report.bound_violations << " inequality_violations=" << report.inequality_violations
      << " timing_violations=" << report.timing_violations << '\n';
  return out.str();
}

}  // namespace snn
