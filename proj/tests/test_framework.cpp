#include <doctest.h>

#include <random>

#include "random_network.hpp"
#include "snn/bounds.hpp"
#include "snn/error.hpp"
#include "snn/framework.hpp"
#include "snn/gadgets.hpp"
#include "snn/snn_format.hpp"

using namespace snn;

namespace {

ResourceBounds search_bounds(Rational energy_offset) {
  return {ResourceBound::linear(Resource::time, {{"n", Rational(1)}, {"V", Rational(1)}}, Rational(3)),
          ResourceBound::linear(Resource::space, {{"n", Rational(1)}}, Rational(3)),
          ResourceBound::linear(Resource::energy, {{"n", Rational(1)}}, energy_offset)};
}

Network accept_at_zero() {
  Network net;
  net.programmed.emplace("acc", SpikeSchedule::once(0));
  net.accept = "acc";
  return net;
}

}  // namespace

TEST_CASE("bound evaluation") {
  SizeMeasure size{{"n", 3}, {"V", 8}};
  CHECK(ResourceBound::constant(Resource::time, Rational(7)).evaluate(size) == Rational(7));
  auto lin = ResourceBound::linear(Resource::time, {{"n", Rational(2)}, {"V", Rational(1, 2)}}, Rational(1));
  CHECK(lin.evaluate(size) == Rational(11));
  auto poly = ResourceBound::polynomial(Resource::time, {{Rational(1, 3), "n", 2}}, Rational(0));
  CHECK(poly.evaluate(size) == Rational(3));
  CHECK(ResourceBound::polynomial(Resource::time, {{Rational(1), "n", 2}}, Rational(1, 2)).cap(size) == 9);
  auto table = ResourceBound::lookup(Resource::space, "n", {1, 2, 4});
  CHECK(table.evaluate({{"n", 1}}) == Rational(2));
  CHECK(table.evaluate({{"n", 9}}) == Rational(4));
  CHECK_THROWS_AS(lin.evaluate({{"n", 1}}), SnnError);

  CHECK_FALSE(lin.check());
  CHECK(ResourceBound::linear(Resource::time, {{"n", Rational(-1)}}, Rational(0)).check());
  CHECK(ResourceBound::lookup(Resource::space, "n", {3, 2}).check());
  CHECK(ResourceBound::lookup(Resource::space, "n", {}).check());
}

TEST_CASE("bound checks flag strict excess only") {
  auto b = ResourceBound::constant(Resource::energy, Rational(5));
  CHECK_FALSE(check_bound(b, {}, 5).violated);
  CHECK(check_bound(b, {}, 6).violated);
  auto frac = ResourceBound::constant(Resource::energy, Rational(9, 2));
  CHECK_FALSE(check_bound(frac, {}, 4).violated);
  CHECK(check_bound(frac, {}, 5).violated);
}

TEST_CASE("oracle examples") {
  auto yes = network_halting_oracle(accept_at_zero(), {}, {2, 2, 2});
  CHECK(yes.outcome == OracleOutcome::accepted);
  CHECK(yes.violation.empty());

  Network firer = make_constant_firer("f").network;
  firer.neurons.push_back({"acc"});
  firer.accept = "acc";
  auto stuck = network_halting_oracle(firer, {}, {10, 10, 100});
  CHECK(stuck.outcome == OracleOutcome::promise_violated);
  CHECK(stuck.violation == "time");
  CHECK(stuck.report.time == 10);

  auto cs = compile_search_value_input(std::vector<std::int64_t>{3, 5, 7}, 8);
  std::vector<std::int64_t> none;
  auto b = network_halting_oracle(cs.network, encode_input(SearchVariant::b, 3, 8, none, 5), {3 + 8 + 3, 3 + 3, 3 + 3});
  CHECK(b.outcome == OracleOutcome::accepted);
  CHECK(b.report.energy_payload <= 6);
  auto miss = network_halting_oracle(cs.network, encode_input(SearchVariant::b, 3, 8, none, 4), {30, 6, 6});
  CHECK(miss.outcome == OracleOutcome::rejected);
}

TEST_CASE("oracle promise violations") {
  auto big = network_halting_oracle(accept_at_zero(), {}, {5, 0, 5});
  CHECK(big.outcome == OracleOutcome::promise_violated);
  CHECK(big.violation == "space");
  CHECK(big.report.time == 0);

  Network firer = make_constant_firer("f").network;
  firer.neurons.push_back({"acc"});
  firer.accept = "acc";
  auto hungry = network_halting_oracle(firer, {}, {1000, 10, 4});
  CHECK(hungry.violation == "energy");
  CHECK(hungry.report.time < 1000);

  Network both = accept_at_zero();
  both.programmed.emplace("rej", SpikeSchedule::once(0));
  both.reject = "rej";
  CHECK(network_halting_oracle(both, {}, {5, 5, 5}).violation == "ambiguous");

  Network nothing;
  nothing.neurons.push_back({"x"});
  CHECK_THROWS_AS(network_halting_oracle(nothing, {}, {5, 5, 5}), SnnError);
}

TEST_CASE("oracle agrees with direct runs and respects its caps") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 300; ++k) {
    Network net = testing::random_network(rng);
    const auto direct = run(net, {.max_steps = 200}).report;
    const ConcreteBounds loose{200, 100, 100000};
    auto answer = network_halting_oracle(net, {}, loose);
    if (direct.verdict == Verdict::accept) CHECK(answer.outcome == OracleOutcome::accepted);
    if (direct.verdict == Verdict::reject) CHECK(answer.outcome == OracleOutcome::rejected);
    if (direct.verdict == Verdict::timeout || direct.verdict == Verdict::ambiguous) {
      CHECK(answer.outcome == OracleOutcome::promise_violated);
    }
    CHECK(answer.report.energy <= answer.report.time * static_cast<std::int64_t>(answer.report.neurons));

    // Charged cost never exceeds the time bound.
    const ConcreteBounds tight{1 + testing::draw(rng, 20), 100, 100000};
    auto capped = network_halting_oracle(net, {}, tight);
    CHECK(capped.report.time <= tight.time);

    // Loosening can only turn a violation into a definite answer.
    const ConcreteBounds looser{tight.time * 3, 100, 100000};
    auto relaxed = network_halting_oracle(net, {}, looser);
    if (capped.outcome != OracleOutcome::promise_violated) CHECK(relaxed.outcome == capped.outcome);
  }
}

TEST_CASE("generate and decide") {
  const Compiler& a = find_compiler("array-search-a");
  ArrayInstance inst{{3, 5, 7}, 5, 8};

  auto d = generate_and_decide(a, inst, search_bounds(Rational(2)));
  CHECK(d.verdict == Verdict::accept);
  CHECK(d.within_bounds());
  CHECK(d.size == SizeMeasure{{"n", 3}, {"V", 8}});
  CHECK(d.checks[1].measured == 6);

  // Accept halts before the element at 7 spikes, so only four payload spikes
  // are spent; the energy bound n + 1 is met and n - 1 is not.
  auto at_n1 = generate_and_decide(a, inst, search_bounds(Rational(1)));
  CHECK(at_n1.verdict == Verdict::accept);
  CHECK(at_n1.checks[2].measured == 4);
  CHECK_FALSE(at_n1.checks[2].violated);
  auto at_n_minus_1 = generate_and_decide(a, inst, search_bounds(Rational(-1)));
  CHECK(at_n_minus_1.verdict == Verdict::accept);
  CHECK(at_n_minus_1.checks[2].violated);
  CHECK_FALSE(at_n_minus_1.within_bounds());

  // With the largest target every element spikes first: n + 2 spikes.
  ArrayInstance last{{3, 5, 7}, 7, 8};
  auto full = generate_and_decide(a, last, search_bounds(Rational(1)));
  CHECK(full.verdict == Verdict::accept);
  CHECK(full.checks[2].measured == 5);
  CHECK(full.checks[2].violated);

  CHECK_THROWS_AS(find_compiler("nope"), SnnError);
}

TEST_CASE("generate and decide with instrumentation") {
  const Compiler& a = find_compiler("array-search-a");
  ArrayInstance inst{{3, 5, 7}, 4, 8};
  ResourceBounds bounds = search_bounds(Rational(2));
  auto plain = generate_and_decide(a, inst, bounds, {.timer = true, .meter = true});
  CHECK(plain.verdict == Verdict::reject);
  CHECK(plain.within_bounds());
  CHECK(plain.checks[1].measured == 6);

  // A time bound too small for the honest reject: the timer forces reject
  // inside the bound.
  bounds.time = ResourceBound::constant(Resource::time, Rational(4));
  auto rushed = generate_and_decide(a, inst, bounds, {.timer = true});
  CHECK(rushed.verdict == Verdict::reject);
  CHECK(rushed.report.time <= 4);
  CHECK_FALSE(rushed.checks[0].violated);

  auto unguarded = generate_and_decide(a, inst, bounds);
  CHECK(unguarded.verdict == Verdict::timeout);
  CHECK(unguarded.checks[0].violated);
}

TEST_CASE("trivial generator has constant cost") {
  const Compiler& t = trivial_compiler();
  ResourceBounds bounds{ResourceBound::constant(Resource::time, Rational(1)),
                        ResourceBound::constant(Resource::space, Rational(1)),
                        ResourceBound::constant(Resource::energy, Rational(1))};
  auto small = generate_and_decide(t, {{1}, 1, 2}, bounds);
  auto large = generate_and_decide(t, {std::vector<std::int64_t>(50, 3), 2, 4}, bounds);
  CHECK(small.verdict == Verdict::accept);
  CHECK(large.verdict == Verdict::reject);
  CHECK(small.cost == large.cost);
  CHECK(small.within_bounds());
  CHECK(large.within_bounds());
}

TEST_CASE("instance domains") {
  auto all = enumerate_instances(2, 3);
  CHECK(all.size() == (1 + 3 + 9) * 3);
  CHECK(all.front() == ArrayInstance{{}, 0, 3});
  CHECK(all.back() == ArrayInstance{{2, 2}, 2, 3});
  CHECK(enumerate_instances(4, 8).size() == 4681 * 8);

  auto s1 = sample_instances(50, 16, 64, 9);
  auto s2 = sample_instances(50, 16, 64, 9);
  CHECK(s1 == s2);
  for (const auto& inst : s1) {
    CHECK_FALSE(check_instance(inst));
    CHECK(inst.array.size() <= 16);
    CHECK(inst.bound <= 64);
  }
  CHECK(sample_instances(50, 16, 64, 10) != s1);
}

TEST_CASE("verify equivalence examples") {
  auto a = verify_equivalence(find_compiler("array-search-a"), {.max_len = 3, .max_val = 4});
  CHECK(a.instances == (1 + 4 + 16 + 64) * 4);
  CHECK(a.mismatches.empty());
  CHECK(a.bound_violations == 0);
  CHECK(a.timing_violations == 0);

  auto c = verify_equivalence(find_compiler("array-search-c"),
                              {.max_len = 16, .max_val = 64, .random_count = 500, .seed = 4});
  CHECK(c.instances == 500);
  CHECK(c.mismatches.empty());
  CHECK(c.bound_violations == 0);

  auto corrupted = array_search_compiler(SearchVariant::a, {.detector_threshold = Rational(1)});
  auto bad = verify_equivalence(corrupted, {.max_len = 3, .max_val = 4});
  CHECK_FALSE(bad.mismatches.empty());
  bool duplicate_case = false;
  for (const auto& m : bad.mismatches) {
    CHECK_FALSE(m.expected);
    const auto& arr = m.instance.array;
    for (std::size_t x = 0; x < arr.size(); ++x) {
      for (std::size_t y = x + 1; y < arr.size(); ++y) duplicate_case |= arr[x] == arr[y];
    }
  }
  CHECK(duplicate_case);
}

TEST_CASE("serial and parallel sweeps agree") {
  for (const char* id : {"array-search-a", "array-search-b", "array-search-c"}) {
    const Compiler& c = find_compiler(id);
    VerifyDomain dom{.max_len = 3, .max_val = 5};
    auto serial = verify_equivalence(c, dom, ExecutionPolicy::serial);
    auto parallel = verify_equivalence(c, dom, ExecutionPolicy::openmp);
    CHECK(serial == parallel);
    CHECK(format_verify_report(serial) == format_verify_report(parallel));
  }
  auto corrupted = array_search_compiler(SearchVariant::b, {.detector_threshold = Rational(1)});
  VerifyDomain dom{.max_len = 3, .max_val = 4};
  CHECK(verify_equivalence(corrupted, dom, ExecutionPolicy::serial) ==
        verify_equivalence(corrupted, dom, ExecutionPolicy::openmp));
}

TEST_CASE("verify report format") {
  VerifyReport r;
  r.instances = 3;
  r.mismatches.push_back({{{1, 1}, 2, 4}, Verdict::accept, false});
  CHECK(format_verify_report(r) ==
        "mismatch array=1,1 target=2 bound=4 verdict=accept expected=reject\n"
        "instances=3 mismatches=1 bound_violations=0 inequality_violations=0 timing_violations=0\n");
}
