#include "snn/host.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

#include "snn/error.hpp"

namespace snn {
namespace {

struct CompileSearch {
  SearchVariant variant = SearchVariant::a;
  std::vector<std::int64_t> array;
  std::optional<std::size_t> size;
  std::optional<std::int64_t> target;
  std::int64_t bound = 0;
};

struct CompileFile {
  std::string path;
  std::optional<std::string> inputs_path;
};

struct LetCompile {
  std::string name;
  std::variant<CompileSearch, CompileFile> source;
};

struct LetOracle {
  std::string bit;
  std::string network;
  std::optional<std::string> inputs_path;
  InputMap inline_inputs;
  ConcreteBounds bounds;
};

struct Branch {
  std::string bit;
  std::string label;
  bool on_violation = false;
};

struct Halt {
  Verdict verdict;
};

struct LabelMark {};

using Instruction = std::variant<LetCompile, LetOracle, Branch, Halt, LabelMark>;

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::int64_t to_int(const std::string& s, int line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw SnnError("host line " + std::to_string(line) + ": expected integer, got '" + s + "'");
  }
  return v;
}

std::vector<std::int64_t> to_int_list(const std::string& s, int line) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    out.push_back(to_int(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start), line));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

CompileSearch parse_search_args(const std::vector<std::string>& t, std::size_t from, int line) {
  CompileSearch c;
  bool have_variant = false, have_bound = false, have_array = false;
  auto fail = [&](const std::string& msg) { throw SnnError("host line " + std::to_string(line) + ": " + msg); };
  for (std::size_t k = from; k < t.size(); k += 2) {
    if (k + 1 >= t.size()) fail("flag '" + t[k] + "' needs a value");
    const std::string& flag = t[k];
    const std::string& value = t[k + 1];
    if (flag == "--variant") {
      auto v = parse_variant(value);
      if (!v) fail("unknown variant '" + value + "'");
      c.variant = *v;
      have_variant = true;
    } else if (flag == "--array") {
      c.array = to_int_list(value, line);
      have_array = true;
    } else if (flag == "--size") {
      c.size = static_cast<std::size_t>(to_int(value, line));
    } else if (flag == "--target") {
      c.target = to_int(value, line);
    } else if (flag == "--bound") {
      c.bound = to_int(value, line);
      have_bound = true;
    } else {
      fail("unknown flag '" + flag + "'");
    }
  }
  if (!have_variant || !have_bound) fail("compile array-search needs --variant and --bound");
  if (have_array && c.size && *c.size != c.array.size()) fail("--size disagrees with --array");
  if (!have_array && c.variant != SearchVariant::c && c.size.value_or(0) != 0) fail("--array required");
  if (c.variant == SearchVariant::a && !c.target) fail("variant a needs --target");
  return c;
}

struct Program {
  std::vector<Instruction> code;
  std::vector<int> lines;
  std::map<std::string, std::size_t> labels;
};

Program load(std::string_view text) {
  Program p;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  std::vector<std::pair<std::string, int>> jumps;
  auto fail = [&](const std::string& msg) { throw SnnError("host line " + std::to_string(line) + ": " + msg); };

  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    auto t = tokenize(raw);
    if (t.empty()) continue;

    Instruction ins;
    if (t[0] == "accept" || t[0] == "reject") {
      if (t.size() != 1) fail("'" + t[0] + "' takes no arguments");
      ins = Halt{t[0] == "accept" ? Verdict::accept : Verdict::reject};
    } else if (t[0] == "label") {
      if (t.size() != 2) fail("expected 'label <name>'");
      if (!p.labels.emplace(t[1], p.code.size()).second) fail("duplicate label '" + t[1] + "'");
      ins = LabelMark{};
    } else if (t[0] == "if") {
      Branch b;
      if (t.size() == 4 && t[2] == "goto") {
        b.bit = t[1];
        b.label = t[3];
      } else if (t.size() == 5 && t[1] == "violated" && t[3] == "goto") {
        b.bit = t[2];
        b.label = t[4];
        b.on_violation = true;
      } else {
        fail("expected 'if [violated] <bit> goto <label>'");
      }
      jumps.emplace_back(b.label, line);
      ins = b;
    } else if (t[0] == "let") {
      if (t.size() < 4 || t[2] != "=") fail("expected 'let <name> = ...'");
      if (!is_valid_identifier(t[1])) fail("invalid name '" + t[1] + "'");
      if (t[3] == "compile") {
        if (t.size() < 5) fail("compile needs a compiler");
        LetCompile c{t[1], {}};
        if (t[4] == "array-search") {
          c.source = parse_search_args(t, 5, line);
        } else if (t[4] == "file") {
          if (t.size() < 6 || t.size() > 7) fail("expected 'compile file <path> [<inputs>]'");
          CompileFile f{t[5], std::nullopt};
          if (t.size() == 7) f.inputs_path = t[6];
          c.source = f;
        } else {
          fail("unknown compiler '" + t[4] + "'");
        }
        ins = c;
      } else if (t[3] == "oracle") {
        if (t.size() < 5) fail("oracle needs a network name");
        LetOracle o;
        o.bit = t[1];
        o.network = t[4];
        bool have_time = false, have_space = false, have_energy = false;
        for (std::size_t k = 5; k < t.size(); ++k) {
          auto eq = t[k].find('=');
          if (eq == std::string::npos) fail("expected key=value, got '" + t[k] + "'");
          std::string key = t[k].substr(0, eq);
          std::string value = t[k].substr(eq + 1);
          if (key == "time") {
            o.bounds.time = to_int(value, line);
            have_time = true;
          } else if (key == "space") {
            o.bounds.space = to_int(value, line);
            have_space = true;
          } else if (key == "energy") {
            o.bounds.energy = to_int(value, line);
            have_energy = true;
          } else if (key == "inputs") {
            o.inputs_path = value;
          } else if (key.rfind("input.", 0) == 0) {
            auto parsed = parse_inputs(key.substr(6) + "=" + value);
            o.inline_inputs.insert(parsed.begin(), parsed.end());
          } else {
            fail("unknown oracle argument '" + key + "'");
          }
        }
        if (!have_time || !have_space || !have_energy) fail("oracle needs time=, space= and energy=");
        ins = o;
      } else {
        fail("expected 'compile' or 'oracle' after '='");
      }
    } else {
      fail("unknown instruction '" + t[0] + "'");
    }
    p.code.push_back(std::move(ins));
    p.lines.push_back(line);
  }
  for (const auto& [label, at] : jumps) {
    if (!p.labels.count(label)) throw SnnError("host line " + std::to_string(at) + ": undefined label '" + label + "'");
  }
  return p;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SnnError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct BuiltNetwork {
  Network network;
  InputMap inputs;
};

BuiltNetwork build(const LetCompile& c, const HostOptions& options) {
  BuiltNetwork out;
  if (const auto* f = std::get_if<CompileFile>(&c.source)) {
    out.network = parse_network_or_throw(read_file(options.base_dir / f->path));
    if (f->inputs_path) out.inputs = parse_inputs(read_file(options.base_dir / *f->inputs_path));
    return out;
  }
  const auto& s = std::get<CompileSearch>(c.source);
  switch (s.variant) {
    case SearchVariant::a:
      out.network = compile_search_embedded({s.array, *s.target, s.bound});
      break;
    case SearchVariant::b:
      out.network = compile_search_value_input(s.array, s.bound).network;
      if (s.target) out.inputs = encode_input(s.variant, s.array.size(), s.bound, {}, *s.target);
      break;
    case SearchVariant::c: {
      const std::size_t n = s.size.value_or(s.array.size());
      out.network = compile_search_full_input(n, s.bound).network;
      if (s.target && s.array.size() == n) out.inputs = encode_input(s.variant, n, s.bound, s.array, *s.target);
      break;
    }
  }
  return out;
}

}  // namespace

std::string HostResult::call_log() const {
  std::ostringstream out;
  for (const auto& c : calls) {
    out << "call=" << c.index << " network=" << c.network << " outcome=" << to_string(c.answer.outcome)
        << " time=" << c.answer.report.time << " energy=" << c.answer.report.energy << '\n';
  }
  return out.str();
}

HostResult host_run(std::string_view text, const HostOptions& options) {
  const Program program = load(text);
  HostResult result;
  std::map<std::string, BuiltNetwork> networks;
  std::map<std::string, OracleOutcome> bits;

  std::size_t pc = 0;
  std::int64_t executed = 0;
  while (true) {
    if (pc >= program.code.size()) throw SnnError("host program ended without accept or reject");
    if (++executed > options.max_instructions) throw SnnError("host program exceeded its instruction budget");
    const int line = program.lines[pc];
    auto fault = [&](const std::string& msg) { return SnnError("host line " + std::to_string(line) + ": " + msg); };
    const Instruction& ins = program.code[pc];

    if (const auto* h = std::get_if<Halt>(&ins)) {
      result.verdict = h->verdict;
      return result;
    }
    if (const auto* c = std::get_if<LetCompile>(&ins)) {
      networks[c->name] = build(*c, options);
    } else if (const auto* o = std::get_if<LetOracle>(&ins)) {
      auto it = networks.find(o->network);
      if (it == networks.end()) throw fault("network '" + o->network + "' has not been built");
      InputMap inputs = it->second.inputs;
      if (o->inputs_path) {
        for (auto& [port, sched] : parse_inputs(read_file(options.base_dir / *o->inputs_path))) inputs[port] = sched;
      }
      for (const auto& [port, sched] : o->inline_inputs) inputs[port] = sched;
      HostCall call;
      call.index = static_cast<int>(result.calls.size()) + 1;
      call.network = o->network;
      call.answer = network_halting_oracle(it->second.network, inputs, o->bounds);
      bits[o->bit] = call.answer.outcome;
      result.calls.push_back(std::move(call));
    } else if (const auto* b = std::get_if<Branch>(&ins)) {
      auto it = bits.find(b->bit);
      if (it == bits.end()) throw fault("bit '" + b->bit + "' has not been set");
      const bool taken = b->on_violation ? it->second == OracleOutcome::promise_violated
                                         : it->second == OracleOutcome::accepted;
      if (taken) {
        pc = program.labels.at(b->label);
        continue;
      }
    }
    ++pc;
  }
}

}  // namespace snn
