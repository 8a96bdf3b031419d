#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "snn/compilers.hpp"
#include "snn/engine.hpp"
#include "snn/error.hpp"
#include "snn/framework.hpp"
#include "snn/gadgets.hpp"
#include "snn/host.hpp"
#include "snn/snn_format.hpp"

namespace snn::cli {
namespace {

std::string read_source(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream file(path);
  if (!file) throw SnnError("cannot read '" + path + "'");
  ss << file.rdbuf();
  return ss.str();
}

void write_target(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw SnnError("cannot write '" + path + "'");
  file << text;
}

std::vector<std::int64_t> parse_csv(const std::string& s) {
  std::vector<std::int64_t> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) throw SnnError("malformed integer '" + item + "' in list");
    out.push_back(v);
  }
  return out;
}

int verdict_status(Verdict v) {
  switch (v) {
    case Verdict::accept:
      return kAccept;
    case Verdict::reject:
      return kReject;
    default:
      return kViolation;
  }
}

// Rows are neurons in id order, columns are steps; '|' marks a spike.
std::string raster(const Network& net, const Trace& trace, std::int64_t steps) {
  auto ids = net.all_ids();
  std::size_t width = 0;
  for (const auto& id : ids) width = std::max(width, id.size());
  std::map<NeuronId, std::string> rows;
  for (const auto& id : ids) rows[id] = std::string(static_cast<std::size_t>(steps), '.');
  for (const auto& step : trace) {
    for (const auto& id : step.fired) rows[id][static_cast<std::size_t>(step.t)] = '|';
  }
  std::string out;
  for (const auto& id : ids) out += id + std::string(width - id.size() + 1, ' ') + rows[id] + '\n';
  return out;
}

struct SimArgs {
  std::string file;
  std::string inputs;
  std::int64_t max_steps = 10000;
  std::optional<std::int64_t> max_spikes;
  bool trace = false;
  bool raster = false;
};

int cmd_sim(const SimArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  Network net = parse_network_or_throw(read_source(a.file, in));
  if (!a.inputs.empty()) net = apply_inputs(std::move(net), parse_inputs(read_source(a.inputs, in)));
  const bool want_trace = a.trace || a.raster;
  RunResult r;
  if (!net.accept && !net.reject) {
    err << "note: no accept or reject neuron; running " << a.max_steps << " steps without halting\n";
    r = run_free(net, a.max_steps, want_trace);
  } else {
    r = run(net, {a.max_steps, a.max_spikes}, want_trace);
  }
  if (a.trace) {
    out << format_trace(*r.trace, r.report);
  } else {
    out << format_report(r.report) << '\n';
  }
  if (a.raster) out << raster(net, *r.trace, r.report.time);
  return verdict_status(r.report.verdict);
}

struct GadgetArgs {
  std::string kind;
  std::optional<std::int64_t> period;
  std::optional<std::int64_t> value;
  std::optional<std::int64_t> bound;
  std::string attach;
  std::string prefix = "g";
  std::string output;
};

int cmd_gadget(const GadgetArgs& a, std::istream& in, std::ostream& out) {
  auto need = [&](const std::optional<std::int64_t>& v, const char* flag) {
    if (!v) throw CLI::ValidationError("gadget " + a.kind + " requires " + flag);
    return *v;
  };
  Network net;
  if (a.kind == "constant") {
    net = make_constant_firer(a.prefix).network;
  } else if (a.kind == "clock") {
    net = make_clock(need(a.period, "--period"), a.prefix).network;
  } else if (a.kind == "number") {
    net = make_number(need(a.value, "--value"), need(a.period, "--period"), a.prefix).network;
  } else {
    if (a.attach.empty()) throw CLI::ValidationError("gadget " + a.kind + " requires --attach");
    Network base = parse_network_or_throw(read_source(a.attach, in));
    net = a.kind == "timer" ? attach_timer(std::move(base), need(a.bound, "--bound"))
                            : attach_meter(std::move(base), need(a.bound, "--bound"));
  }
  write_target(a.output, serialize_network(net), out);
  return kAccept;
}

struct CompileArgs {
  std::string problem;
  std::string variant;
  std::optional<std::string> array;
  std::optional<std::size_t> size;
  std::optional<std::int64_t> target;
  std::int64_t bound = 0;
  std::string output;
  std::string inputs_out;
};

int cmd_compile(const CompileArgs& a, std::ostream& out, std::ostream& err) {
  const SearchVariant variant = *parse_variant(a.variant);
  std::vector<std::int64_t> array;
  if (a.array) array = parse_csv(*a.array);
  if (a.array && a.size && *a.size != array.size()) throw CLI::ValidationError("--size disagrees with --array");

  Network net;
  InputMap inputs;
  switch (variant) {
    case SearchVariant::a:
      if (!a.array || !a.target) throw CLI::ValidationError("variant a requires --array and --target");
      net = compile_search_embedded({array, *a.target, a.bound});
      break;
    case SearchVariant::b:
      if (!a.array) throw CLI::ValidationError("variant b requires --array");
      net = compile_search_value_input(array, a.bound).network;
      if (a.target) inputs = encode_input(variant, array.size(), a.bound, {}, *a.target);
      break;
    case SearchVariant::c: {
      if (!a.array && !a.size) throw CLI::ValidationError("variant c requires --size or --array");
      const std::size_t n = a.size.value_or(array.size());
      net = compile_search_full_input(n, a.bound).network;
      if (a.target && a.array) inputs = encode_input(variant, n, a.bound, array, *a.target);
      break;
    }
  }
  write_target(a.output, serialize_network(net), out);

  if (!inputs.empty()) {
    std::string sidecar = a.inputs_out;
    if (sidecar.empty() && !a.output.empty() && a.output != "-") sidecar = a.output + ".inputs";
    if (sidecar.empty()) {
      err << "note: input schedules not written; pass --inputs-out <file>\n";
    } else {
      write_target(sidecar, serialize_inputs(inputs), out);
    }
  }
  return kAccept;
}

struct OracleArgs {
  std::string file;
  std::string inputs;
  ConcreteBounds bounds;
};

int cmd_oracle(const OracleArgs& a, std::istream& in, std::ostream& out) {
  Network net = parse_network_or_throw(read_source(a.file, in));
  InputMap inputs;
  if (!a.inputs.empty()) inputs = parse_inputs(read_source(a.inputs, in));
  OracleAnswer ans = network_halting_oracle(net, inputs, a.bounds);
  out << "outcome=" << to_string(ans.outcome) << " time=" << ans.report.time << " energy=" << ans.report.energy
      << " neurons=" << ans.report.neurons;
  if (!ans.violation.empty()) out << " violation=" << ans.violation;
  out << '\n';
  switch (ans.outcome) {
    case OracleOutcome::accepted:
      return kAccept;
    case OracleOutcome::rejected:
      return kReject;
    case OracleOutcome::promise_violated:
      break;
  }
  return kViolation;
}

int cmd_host(const std::string& path, std::istream& in, std::ostream& out) {
  HostOptions options;
  if (path != "-") options.base_dir = std::filesystem::path(path).parent_path();
  if (options.base_dir.empty()) options.base_dir = ".";
  HostResult r = host_run(read_source(path, in), options);
  out << r.call_log() << "verdict=" << to_string(r.verdict) << '\n';
  return verdict_status(r.verdict);
}

struct VerifyArgs {
  std::string problem;
  std::string variant;
  std::size_t max_len = 0;
  std::int64_t max_val = 0;
  std::optional<std::int64_t> random;
  std::optional<std::uint64_t> seed;
  bool serial = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.random && !a.seed) throw CLI::ValidationError("--random requires an explicit --seed");
  VerifyDomain domain;
  domain.max_len = a.max_len;
  domain.max_val = a.max_val;
  domain.random_count = a.random;
  domain.seed = a.seed.value_or(0);
  const Compiler& compiler = find_compiler("array-search-" + a.variant);
  VerifyReport r = verify_equivalence(compiler, domain, a.serial ? ExecutionPolicy::serial : ExecutionPolicy::openmp);
  out << format_verify_report(r);
  const bool clean = r.mismatches.empty() && r.bound_violations == 0 && r.inequality_violations == 0 &&
                     r.timing_violations == 0;
  return clean ? kAccept : kViolation;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-time spiking neural network simulator and toolchain", "snn"};
  app.require_subcommand(1);

  SimArgs sim;
  auto* sim_cmd = app.add_subcommand("sim", "Simulate a network until accept/reject or a limit");
  sim_cmd->add_option("file", sim.file, "Network file, or - for stdin")->required();
  sim_cmd->add_option("--inputs", sim.inputs, "Input schedule file (port=<t1;t2;..> lines)");
  sim_cmd->add_option("--max-steps", sim.max_steps, "Step limit")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--max-spikes", sim.max_spikes, "Spike limit")->check(CLI::NonNegativeNumber);
  sim_cmd->add_flag("--trace", sim.trace, "Print one line per step with spikes");
  sim_cmd->add_flag("--raster", sim.raster, "Print a spike raster");

  GadgetArgs gadget;
  auto* gadget_cmd = app.add_subcommand("gadget", "Emit a gadget fragment or attach a timer/meter");
  gadget_cmd->add_option("kind", gadget.kind)->required()->check(
      CLI::IsMember({"constant", "clock", "number", "timer", "meter"}));
  gadget_cmd->add_option("--period", gadget.period, "Clock period K");
  gadget_cmd->add_option("--value", gadget.value, "Number n < K");
  gadget_cmd->add_option("--bound", gadget.bound, "Timer step bound t or meter spike bound e");
  gadget_cmd->add_option("--attach", gadget.attach, "Network to augment (timer/meter)");
  gadget_cmd->add_option("--prefix", gadget.prefix, "Id prefix for fragments");
  gadget_cmd->add_option("-o,--output", gadget.output, "Output file (default stdout)");

  CompileArgs compile;
  auto* compile_cmd = app.add_subcommand("compile", "Compile a problem instance to a network");
  compile_cmd->add_option("problem", compile.problem)->required()->check(CLI::IsMember({"array-search"}));
  compile_cmd->add_option("--variant", compile.variant)->required()->check(CLI::IsMember({"a", "b", "c"}));
  compile_cmd->add_option("--array", compile.array, "Comma separated array elements");
  compile_cmd->add_option("--size", compile.size, "Array length (variant c)");
  compile_cmd->add_option("--target", compile.target, "Searched value i");
  compile_cmd->add_option("--bound", compile.bound, "Exclusive value bound V")->required();
  compile_cmd->add_option("-o,--output", compile.output, "Output file (default stdout)");
  compile_cmd->add_option("--inputs-out", compile.inputs_out, "Sidecar input schedule file");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Network Halting oracle with promise bounds");
  oracle_cmd->add_option("file", oracle.file)->required();
  oracle_cmd->add_option("--time", oracle.bounds.time)->required();
  oracle_cmd->add_option("--space", oracle.bounds.space)->required();
  oracle_cmd->add_option("--energy", oracle.bounds.energy)->required();
  oracle_cmd->add_option("--inputs", oracle.inputs);

  std::string host_file;
  auto* host_cmd = app.add_subcommand("host", "Run a host program with oracle access");
  host_cmd->add_option("program", host_file)->required();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Compare compiled networks against brute force");
  verify_cmd->add_option("problem", verify.problem)->required()->check(CLI::IsMember({"array-search"}));
  verify_cmd->add_option("--variant", verify.variant)->required()->check(CLI::IsMember({"a", "b", "c"}));
  verify_cmd->add_option("--max-len", verify.max_len)->required();
  verify_cmd->add_option("--max-val", verify.max_val)->required()->check(CLI::PositiveNumber);
  verify_cmd->add_option("--random", verify.random, "Sample this many instances instead of enumerating");
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_flag("--serial", verify.serial, "Use the serial reference loop");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (sim_cmd->parsed()) return cmd_sim(sim, in, out, err);
    if (gadget_cmd->parsed()) return cmd_gadget(gadget, in, out);
    if (compile_cmd->parsed()) return cmd_compile(compile, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle, in, out);
    if (host_cmd->parsed()) return cmd_host(host_file, in, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAccept;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kAccept;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace snn::cli
