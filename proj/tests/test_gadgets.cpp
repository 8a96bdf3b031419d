#include <doctest.h>

#include <random>

#include "random_network.hpp"
#include "reference_sim.hpp"
#include "snn/engine.hpp"
#include "snn/error.hpp"
#include "snn/gadgets.hpp"
#include "snn/snn_format.hpp"

using namespace snn;

namespace {

std::vector<std::int64_t> arithmetic(std::int64_t first, std::int64_t step, std::int64_t horizon) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = first; t < horizon; t += step) out.push_back(t);
  return out;
}

Network with_accept(Network net, const std::string& acc = "acc") {
  net.neurons.push_back({acc});
  net.accept = acc;
  return net;
}

}  // namespace

TEST_CASE("constant firer") {
  Fragment f = make_constant_firer("f");
  CHECK(validate_network(f.network).empty());
  auto times = fire_times(f.network, 10);
  CHECK(times[f.output] == arithmetic(1, 1, 10));
  auto r = run_free(f.network, 10).report;
  CHECK(r.energy == 1 + 9);

  Fragment g = make_constant_firer("g");
  const Fragment both[] = {f, g};
  auto merged = fire_times(merge(std::span<const Fragment>(both)), 10);
  CHECK(merged[f.output] == times[f.output]);
  CHECK(merged[g.output] == times[f.output]);
}

TEST_CASE("clock") {
  CHECK(fire_times(make_clock(1, "c").network, 20)["c_out"] == arithmetic(1, 1, 20));
  CHECK(fire_times(make_clock(3, "c").network, 12)["c_out"] == std::vector<std::int64_t>{1, 4, 7, 10});
  CHECK(fire_times(make_clock(10, "c").network, 100)["c_out"].size() == 10);
  CHECK_THROWS_AS(make_clock(0, "c"), SnnError);
  CHECK_THROWS_AS(make_clock(2, "bad prefix"), SnnError);
}

TEST_CASE("number") {
  Fragment zero = make_number(0, 5, "z");
  CHECK(fire_times(zero.network, 15)[zero.output] == std::vector<std::int64_t>{2, 7, 12});
  Fragment two = make_number(2, 5, "t");
  auto times = fire_times(two.network, 15);
  CHECK(times[two.output] == std::vector<std::int64_t>{4, 9, 14});
  REQUIRE(two.reference);
  CHECK(times[*two.reference] == std::vector<std::int64_t>{1, 6, 11});
  CHECK_THROWS_AS(make_number(5, 5, "x"), SnnError);
  CHECK_THROWS_AS(make_number(-1, 5, "x"), SnnError);
}

TEST_CASE("clock period and number lag over the whole small range") {
  for (std::int64_t k = 1; k <= 10; ++k) {
    Fragment clock = make_clock(k, "c");
    auto clock_times = fire_times(clock.network, 100)[clock.output];
    CHECK(clock_times == arithmetic(1, k, 100));
    for (std::int64_t n = 0; n < k; ++n) {
      Fragment num = make_number(n, k, "n");
      auto times = fire_times(num.network, 100);
      CHECK(times[num.output] == arithmetic(2 + n, k, 100));
      std::vector<std::int64_t> shifted;
      for (auto t : times[*num.reference]) {
        if (t + n + 1 < 100) shifted.push_back(t + n + 1);
      }
      CHECK(times[num.output] == shifted);
    }
  }
}

TEST_CASE("number sharing an existing clock") {
  Fragment clock = make_clock(3, "c");
  Fragment number = make_number_from_clock(2, 3, "n");
  const Fragment parts[] = {clock, number};
  const SynapseSpec wire[] = {connect(clock.output, number.inputs.at("clock"))};
  Network net = merge(std::span<const Fragment>(parts), wire);
  CHECK(validate_network(net).empty());
  CHECK(net.neuron_count() == 3);
  CHECK(fire_times(net, 20)[number.output] == arithmetic(4, 3, 20));
}

TEST_CASE("merge errors") {
  Fragment a = make_clock(2, "x");
  Fragment b = make_clock(3, "x");
  const Fragment colliding[] = {a, b};
  CHECK_THROWS_AS(merge(std::span<const Fragment>(colliding)), SnnError);

  Fragment c = make_clock(3, "y");
  const Fragment parts[] = {a, c};
  const SynapseSpec dangling[] = {{"x_out", "nowhere"}};
  CHECK_THROWS_AS(merge(std::span<const Fragment>(parts), dangling), SnnError);

  Network p = with_accept(a.network, "acc1");
  Network q = with_accept(c.network, "acc2");
  const Network nets[] = {p, q};
  CHECK_THROWS_AS(merge(std::span<const Network>(nets)), SnnError);
  Network ok = merge(std::span<const Network>(nets), {}, {.accept = "acc2", .reject = "acc1"});
  CHECK(ok.accept == "acc2");
  CHECK(ok.reject == "acc1");
}

TEST_CASE("timer examples") {
  SUBCASE("silent accept-only network rejects at the deadline") {
    Network net = with_accept(Network{});
    Network timed = attach_timer(net, 4);
    CHECK(timed.neuron_count() == 3);
    CHECK(timed.gadget_tags.size() == 2);
    auto r = run(timed, {}).report;
    CHECK(r.verdict == Verdict::reject);
    CHECK(r.time == 6);
    CHECK(r.energy_payload == 0);
    CHECK(r.energy == 2);
  }
  SUBCASE("early accept is unaffected") {
    Network net;
    net.programmed.emplace("in", SpikeSchedule::once(1));
    net = with_accept(net);
    net.synapses.push_back({"in", "acc"});
    auto r = run(attach_timer(net, 4), {}).report;
    CHECK(r.verdict == Verdict::accept);
    CHECK(r.time == 3);
  }
  SUBCASE("existing reject gains only the timer") {
    Network net = with_accept(Network{});
    net.neurons.push_back({"rej", Rational(2)});
    net.reject = "rej";
    Network timed = attach_timer(net, 0);
    CHECK(timed.neuron_count() == net.neuron_count() + 1);
    CHECK(timed.synapses.size() == net.synapses.size() + 2);
    auto r = run(timed, {}).report;
    CHECK(r.verdict == Verdict::reject);
    CHECK(r.time == 2);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(attach_timer(Network{}, 3), SnnError);
    Network net = with_accept(Network{});
    CHECK_THROWS_AS(attach_timer(net, -1), SnnError);
    net.programmed.emplace("rej", SpikeSchedule::once(9));
    net.reject = "rej";
    CHECK_THROWS_AS(attach_timer(net, 3), SnnError);
  }
}

TEST_CASE("timer weights") {
  Network net;
  net.programmed.emplace("p", SpikeSchedule::once(3));
  net.neurons.push_back({"acc", Rational(2)});
  net.neurons.push_back({"rej", Rational(3)});
  net.synapses.push_back({"p", "acc", 1, Rational(3, 2)});
  net.synapses.push_back({"p", "acc", 2, Rational(-1, 2)});
  net.synapses.push_back({"p", "rej", 1, Rational(-4)});
  net.accept = "acc";
  net.reject = "rej";
  Network timed = attach_timer(net, 6);
  REQUIRE(timed.programmed.count("timer"));
  CHECK(timed.programmed.at("timer") == SpikeSchedule::once(0));
  bool saw_acc = false, saw_rej = false;
  for (const auto& s : timed.synapses) {
    if (s.pre != "timer") continue;
    CHECK(s.delay == 7);
    if (s.post == "acc") {
      saw_acc = true;
      CHECK(s.weight == Rational(-2));
    }
    if (s.post == "rej") {
      saw_rej = true;
      CHECK(s.weight == Rational(7));
    }
  }
  CHECK(saw_acc);
  CHECK(saw_rej);
}

TEST_CASE("timer deadline on random networks") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 150; ++k) {
    Network net = testing::random_network(rng);
    const std::int64_t bound = testing::draw(rng, 10);
    Network timed = attach_timer(net, bound);
    CHECK(timed.neuron_count() <= net.neuron_count() + 2);
    CHECK(timed.synapses.size() <= net.synapses.size() + 2);
    auto ref = testing::reference_run(timed, bound + 2);
    CHECK(ref.verdict != "timeout");
    CHECK(ref.time <= bound + 2);
  }
}

TEST_CASE("meter examples") {
  SUBCASE("constant firer saturates the counter") {
    Fragment firer = make_constant_firer("f");
    Network net = with_accept(firer.network);
    Network metered = attach_meter(net, 5);
    CHECK(metered.neuron_count() == net.neuron_count() + 1);
    CHECK(metered.synapses.size() == net.synapses.size() + 3 + 1);
    // Payload spikes at t = 0..4 reach E one step later; E sits at 5 after
    // step 5 and re-fires from its reset on every later step.
    auto ref = testing::reference_run(metered, 12, false);
    std::vector<std::int64_t> meter_times;
    for (std::int64_t t = 0; t < 12; ++t) {
      if (ref.fired[t].count("meter")) meter_times.push_back(t);
      if (t <= 4) CHECK(ref.potentials[t].at("meter") == Rational(t));
    }
    CHECK(meter_times == arithmetic(5, 1, 12));
    CHECK(fire_times(metered, 12)["meter"] == meter_times);
  }
  SUBCASE("bound not reached") {
    Network net;
    net.programmed.emplace("in", SpikeSchedule::once(0));
    net = with_accept(net);
    net.synapses.push_back({"in", "acc"});
    auto r = run(attach_meter(net, 10), {}).report;
    CHECK(r.verdict == Verdict::accept);
    CHECK(r.time == 2);
  }
  SUBCASE("weights and errors") {
    Network net = with_accept(Network{});
    net.neurons.push_back({"rej", Rational(1, 2)});
    net.programmed.emplace("p", SpikeSchedule::once(0));
    net.synapses.push_back({"p", "acc", 1, Rational(-3)});
    net.synapses.push_back({"p", "rej", 2, Rational(1, 4)});
    net.reject = "rej";
    Network metered = attach_meter(net, 2);
    const NeuronSpec* e = metered.find_neuron("meter");
    REQUIRE(e);
    CHECK(e->threshold == Rational(2));
    CHECK(e->reset == Rational(2));
    CHECK(e->leak == Rational(1));
    for (const auto& s : metered.synapses) {
      if (s.pre == "meter" && s.post == "acc") CHECK(s.weight == Rational(-3));
      if (s.pre == "meter" && s.post == "rej") CHECK(s.weight == Rational(3, 4));
      if (s.post == "meter") CHECK(s.pre != "meter");
    }
    CHECK_THROWS_AS(attach_meter(net, 0), SnnError);
    CHECK_THROWS_AS(attach_meter(Network{}, 3), SnnError);
  }
  SUBCASE("timer and meter together add two neurons") {
    Network net = with_accept(make_constant_firer("f").network);
    net.neurons.push_back({"rej"});
    net.reject = "rej";
    Network both = attach_meter(attach_timer(net, 20), 3);
    CHECK(both.neuron_count() == net.neuron_count() + 2);
    for (const auto& s : both.synapses) {
      if (s.post == "meter") CHECK(s.pre != "timer");
    }
    auto r = run(both, {}).report;
    CHECK(r.verdict == Verdict::reject);
  }
}

TEST_CASE("meter soundness on random networks") {
  std::mt19937_64 rng(77);
  testing::RandomNetworkConfig cfg;
  cfg.accept_reset_below_threshold = true;
  for (int k = 0; k < 150; ++k) {
    Network net = testing::random_network(rng, cfg);
    const std::int64_t e = 1 + testing::draw(rng, 10);
    Network metered = attach_meter(net, e);
    auto ref = testing::reference_run(metered, 120);
    std::int64_t cumulative = 0;
    std::optional<std::int64_t> s;
    for (std::size_t t = 0; t < ref.fired.size() && !s; ++t) {
      for (const auto& id : ref.fired[t]) {
        if (!metered.gadget_tags.count(id)) ++cumulative;
      }
      if (cumulative >= e) s = static_cast<std::int64_t>(t);
    }
    if (s && ref.verdict == "accept") CHECK(ref.time - 1 <= *s + 1);
  }
}
