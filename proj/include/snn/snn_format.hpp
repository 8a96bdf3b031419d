#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snn/error.hpp"
#include "snn/network.hpp"

namespace snn {

struct ParseError {
  int line = 0;
  std::string message;
};

struct ParseResult {
  std::optional<Network> network;
  std::vector<ParseError> errors;

  bool ok() const { return network.has_value(); }
  // "line N: message" joined by newlines.
  std::string error_text() const;
};

// Line-oriented `.snn` text:
//
//   snn 1
//   neuron <id> [threshold=<rat>] [reset=<rat>] [leak=<rat>]
//   input <id> schedule=<t1;t2;...>
//   input <id> periodic offset=<t> period=<K>
//   synapse <pre> -> <post> [delay=<int>] [weight=<rat>]
//   accept <id>
//   reject <id>
//   gadget <id>
//
// `#` starts a comment. Every problem is reported with its line number; a
// network is returned only when there are none.
ParseResult parse_network(std::string_view text);

// Throws SnnError carrying every diagnostic.
Network parse_network_or_throw(std::string_view text);

// Canonical form: header, neurons by id, inputs by id, synapses by
// (pre, post, delay), accept, reject, gadget tags. Default-valued attributes
// are omitted.
std::string serialize_network(const Network& network);

// Sidecar input files: one `port=<t1;t2;...>` line per programmed neuron.
using InputMap = std::map<NeuronId, SpikeSchedule>;

InputMap parse_inputs(std::string_view text);
std::string serialize_inputs(const InputMap& inputs);

// Replaces the schedules of the named programmed neurons. Throws SnnError when
// a port is not a programmed neuron of `network`.
Network apply_inputs(Network network, const InputMap& inputs);

}  // namespace snn
