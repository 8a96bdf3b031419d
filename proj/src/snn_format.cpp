#include "snn/snn_format.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <span>
#include <sstream>

namespace snn {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::vector<std::int64_t>> parse_time_list(std::string_view s) {
  std::vector<std::int64_t> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t semi = s.find(';', start);
    auto part = s.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    auto v = parse_int(part);
    if (!v) return std::nullopt;
    out.push_back(*v);
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return out;
}

std::string format_time_list(const std::vector<std::int64_t>& ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(ts[i]);
  }
  return out;
}

// key=value attributes after the positional tokens. Returns false (and records
// the problem) on malformed, unknown or repeated keys.
bool parse_attrs(std::span<const std::string_view> tokens, std::initializer_list<std::string_view> allowed,
                 std::map<std::string, std::string_view>& attrs, std::string& problem) {
  for (auto tok : tokens) {
    auto eq = tok.find('=');
    if (eq == std::string_view::npos) {
      problem = "expected key=value, got '" + std::string(tok) + "'";
      return false;
    }
    std::string key(tok.substr(0, eq));
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      problem = "unknown attribute '" + key + "'";
      return false;
    }
    if (!attrs.emplace(key, tok.substr(eq + 1)).second) {
      problem = "repeated attribute '" + key + "'";
      return false;
    }
  }
  return true;
}

std::string_view strip_comment(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

}  // namespace

std::string ParseResult::error_text() const {
  std::string out;
  for (const auto& e : errors) {
    if (!out.empty()) out += '\n';
    out += "line " + std::to_string(e.line) + ": " + e.message;
  }
  return out;
}

ParseResult parse_network(std::string_view text) {
  ParseResult result;
  Network net;
  auto error = [&](int line, std::string msg) { result.errors.push_back({line, std::move(msg)}); };

  std::map<std::string, int> id_line;
  std::vector<int> synapse_line;
  std::map<std::string, int> gadget_line;
  int accept_line = 0;
  int reject_line = 0;
  bool header_seen = false;

  auto declare = [&](std::string_view id, int line) -> bool {
    if (!is_valid_identifier(id)) {
      error(line, "invalid identifier '" + std::string(id) + "'");
      return false;
    }
    auto [it, inserted] = id_line.emplace(std::string(id), line);
    if (!inserted) {
      error(line, "duplicate id '" + std::string(id) + "' (first declared on line " + std::to_string(it->second) + ")");
      return false;
    }
    return true;
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    auto tokens = split_ws(strip_comment(raw));
    if (tokens.empty()) continue;
    const auto kw = tokens[0];

    if (!header_seen) {
      if (kw == "snn" && tokens.size() == 2 && tokens[1] == "1") {
        header_seen = true;
      } else {
        error(line_no, "expected header 'snn 1'");
        header_seen = true;  // report once, keep checking the body
      }
      continue;
    }

    std::map<std::string, std::string_view> attrs;
    std::string problem;

    if (kw == "neuron") {
      if (tokens.size() < 2) {
        error(line_no, "neuron: missing id");
        continue;
      }
      if (!parse_attrs(std::span(tokens).subspan(2), {"threshold", "reset", "leak"}, attrs, problem)) {
        error(line_no, problem);
        continue;
      }
      NeuronSpec n;
      n.id = std::string(tokens[1]);
      bool ok = true;
      auto rat = [&](const char* key, Rational& dst) {
        auto it = attrs.find(key);
        if (it == attrs.end()) return;
        auto v = Rational::parse(it->second);
        if (!v) {
          error(line_no, std::string("malformed rational for ") + key + ": '" + std::string(it->second) + "'");
          ok = false;
          return;
        }
        dst = *v;
      };
      rat("threshold", n.threshold);
      rat("reset", n.reset);
      rat("leak", n.leak);
      if (!ok) continue;
      if (n.threshold.is_negative()) error(line_no, "threshold must be >= 0");
      if (n.reset.is_negative()) error(line_no, "reset must be >= 0");
      if (n.leak.is_negative() || n.leak > Rational(1)) error(line_no, "leak must be in [0,1]");
      if (declare(n.id, line_no)) net.neurons.push_back(std::move(n));
    } else if (kw == "input") {
      if (tokens.size() < 3) {
        error(line_no, "input: expected 'input <id> schedule=...' or 'input <id> periodic offset=.. period=..'");
        continue;
      }
      SpikeSchedule schedule;
      if (tokens[2] == "periodic") {
        if (!parse_attrs(std::span(tokens).subspan(3), {"offset", "period"}, attrs, problem)) {
          error(line_no, problem);
          continue;
        }
        if (!attrs.count("offset") || !attrs.count("period")) {
          error(line_no, "periodic input needs offset= and period=");
          continue;
        }
        auto offset = parse_int(attrs["offset"]);
        auto period = parse_int(attrs["period"]);
        if (!offset || !period) {
          error(line_no, "malformed integer in periodic input");
          continue;
        }
        schedule = SpikeSchedule::periodic(*offset, *period);
      } else {
        if (!parse_attrs(std::span(tokens).subspan(2), {"schedule"}, attrs, problem)) {
          error(line_no, problem);
          continue;
        }
        if (!attrs.count("schedule")) {
          error(line_no, "input needs schedule=");
          continue;
        }
        auto ts = parse_time_list(attrs["schedule"]);
        if (!ts) {
          error(line_no, "malformed schedule '" + std::string(attrs["schedule"]) + "'");
          continue;
        }
        schedule = SpikeSchedule::explicit_times(std::move(*ts));
      }
      if (auto bad = schedule.check()) {
        error(line_no, *bad);
        continue;
      }
      if (declare(tokens[1], line_no)) net.programmed.emplace(std::string(tokens[1]), std::move(schedule));
    } else if (kw == "synapse") {
      if (tokens.size() < 4 || tokens[2] != "->") {
        error(line_no, "synapse: expected 'synapse <pre> -> <post>'");
        continue;
      }
      if (!parse_attrs(std::span(tokens).subspan(4), {"delay", "weight"}, attrs, problem)) {
        error(line_no, problem);
        continue;
      }
      SynapseSpec s;
      s.pre = std::string(tokens[1]);
      s.post = std::string(tokens[3]);
      if (auto it = attrs.find("delay"); it != attrs.end()) {
        auto d = parse_int(it->second);
        if (!d) {
          error(line_no, "malformed delay '" + std::string(it->second) + "'");
          continue;
        }
        s.delay = *d;
      }
      if (auto it = attrs.find("weight"); it != attrs.end()) {
        auto w = Rational::parse(it->second);
        if (!w) {
          error(line_no, "malformed rational for weight: '" + std::string(it->second) + "'");
          continue;
        }
        s.weight = *w;
      }
      if (s.delay < 1) {
        error(line_no, "delay must be ≥ 1");
        continue;
      }
      net.synapses.push_back(std::move(s));
      synapse_line.push_back(line_no);
    } else if (kw == "accept" || kw == "reject") {
      if (tokens.size() != 2) {
        error(line_no, std::string(kw) + ": expected exactly one id");
        continue;
      }
      auto& slot = kw == "accept" ? net.accept : net.reject;
      int& where = kw == "accept" ? accept_line : reject_line;
      if (slot) {
        error(line_no, std::string(kw) + " already designated on line " + std::to_string(where));
        continue;
      }
      slot = std::string(tokens[1]);
      where = line_no;
    } else if (kw == "gadget") {
      if (tokens.size() != 2) {
        error(line_no, "gadget: expected exactly one id");
        continue;
      }
      net.gadget_tags.insert(std::string(tokens[1]));
      gadget_line.emplace(std::string(tokens[1]), line_no);
    } else if (kw == "snn") {
      error(line_no, "repeated header");
    } else {
      error(line_no, "unknown directive '" + std::string(kw) + "'");
    }
  }

  if (!header_seen) error(1, "expected header 'snn 1'");

  for (std::size_t i = 0; i < net.synapses.size(); ++i) {
    const auto& s = net.synapses[i];
    if (!id_line.count(s.pre)) error(synapse_line[i], "unknown id '" + s.pre + "' in synapse");
    if (!id_line.count(s.post)) error(synapse_line[i], "unknown id '" + s.post + "' in synapse");
  }
  if (net.accept && !id_line.count(*net.accept)) error(accept_line, "unknown id '" + *net.accept + "'");
  if (net.reject && !id_line.count(*net.reject)) error(reject_line, "unknown id '" + *net.reject + "'");
  if (net.accept && net.reject && *net.accept == *net.reject) error(reject_line, "accept and reject must differ");
  for (const auto& [id, line] : gadget_line) {
    if (!id_line.count(id)) error(line, "unknown id '" + id + "' in gadget tag");
  }

  std::stable_sort(result.errors.begin(), result.errors.end(),
                   [](const ParseError& a, const ParseError& b) { return a.line < b.line; });
  if (result.errors.empty()) result.network = std::move(net);
  return result;
}

Network parse_network_or_throw(std::string_view text) {
  auto r = parse_network(text);
  if (!r.ok()) throw SnnError(r.error_text());
  return std::move(*r.network);
}

std::string serialize_network(const Network& network) {
  const Network net = canonicalize(network);
  std::ostringstream out;
  out << "snn 1\n";
  for (const auto& n : net.neurons) {
    out << "neuron " << n.id;
    if (n.threshold != Rational(1)) out << " threshold=" << n.threshold;
    if (n.reset != Rational(0)) out << " reset=" << n.reset;
    if (n.leak != Rational(1)) out << " leak=" << n.leak;
    out << '\n';
  }
  for (const auto& [id, schedule] : net.programmed) {
    out << "input " << id;
    if (schedule.is_periodic()) {
      out << " periodic offset=" << schedule.periodic_spec().offset << " period=" << schedule.periodic_spec().period;
    } else {
      out << " schedule=" << format_time_list(schedule.times());
    }
    out << '\n';
  }
  for (const auto& s : net.synapses) {
    out << "synapse " << s.pre << " -> " << s.post;
    if (s.delay != 1) out << " delay=" << s.delay;
    if (s.weight != Rational(1)) out << " weight=" << s.weight;
    out << '\n';
  }
  if (net.accept) out << "accept " << *net.accept << '\n';
  if (net.reject) out << "reject " << *net.reject << '\n';
  for (const auto& id : net.gadget_tags) out << "gadget " << id << '\n';
  return out.str();
}

InputMap parse_inputs(std::string_view text) {
  InputMap inputs;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    auto tokens = split_ws(strip_comment(raw));
    if (tokens.empty()) continue;
    if (tokens.size() != 1) throw SnnError("inputs line " + std::to_string(line_no) + ": expected port=<schedule>");
    auto tok = tokens[0];
    auto eq = tok.find('=');
    if (eq == std::string_view::npos) {
      throw SnnError("inputs line " + std::to_string(line_no) + ": expected port=<schedule>");
    }
    std::string port(tok.substr(0, eq));
    auto ts = parse_time_list(tok.substr(eq + 1));
    if (!is_valid_identifier(port) || !ts) {
      throw SnnError("inputs line " + std::to_string(line_no) + ": malformed entry '" + std::string(tok) + "'");
    }
    auto schedule = SpikeSchedule::explicit_times(std::move(*ts));
    if (auto bad = schedule.check()) throw SnnError("inputs line " + std::to_string(line_no) + ": " + *bad);
    if (!inputs.emplace(port, std::move(schedule)).second) {
      throw SnnError("inputs line " + std::to_string(line_no) + ": repeated port '" + port + "'");
    }
  }
  return inputs;
}

std::string serialize_inputs(const InputMap& inputs) {
  std::string out;
  for (const auto& [port, schedule] : inputs) {
    if (schedule.is_periodic()) throw SnnError("inputs file cannot carry periodic schedule for '" + port + "'");
    out += port + "=" + format_time_list(schedule.times()) + "\n";
  }
  return out;
}

Network apply_inputs(Network network, const InputMap& inputs) {
  for (const auto& [port, schedule] : inputs) {
    auto it = network.programmed.find(port);
    if (it == network.programmed.end()) throw SnnError("input port '" + port + "' is not a programmed neuron");
    it->second = schedule;
  }
  return network;
}

}  // namespace snn
