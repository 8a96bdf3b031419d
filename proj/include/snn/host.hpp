#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "snn/engine.hpp"
#include "snn/framework.hpp"

namespace snn {

// A deterministic host machine with Network Halting oracle access.
//
// Program text, one instruction per line (`#` comments):
//
//   let <net> = compile array-search --variant a|b|c (--array <csv> | --size n) [--target i] --bound V
//   let <net> = compile file <path.snn> [<inputs-file>]
//   let <bit> = oracle <net> [inputs=<file>] [input.<port>=<t1;t2;..>] time=<n> space=<n> energy=<n>
//   if <bit> goto <label>             # taken when the oracle answered 1
//   if violated <bit> goto <label>    # taken when the promise was violated
//   label <label>
//   accept
//   reject
//
// Files are resolved against HostOptions::base_dir.

struct HostOptions {
  std::filesystem::path base_dir = ".";
  std::int64_t max_instructions = 1'000'000;
};

struct HostCall {
  int index = 0;
  std::string network;
  OracleAnswer answer;
};

struct HostResult {
  Verdict verdict = Verdict::reject;
  std::vector<HostCall> calls;

  // `call=<k> network=<name> outcome=<..> time=<n> energy=<n>` per call.
  std::string call_log() const;
};

// Throws SnnError for malformed programs (at load time) and for runtime faults
// such as querying a network that was never built or falling off the end.
HostResult host_run(std::string_view program, const HostOptions& options = {});

}  // namespace snn
