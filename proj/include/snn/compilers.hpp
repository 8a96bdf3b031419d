#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snn/builder.hpp"
#include "snn/network.hpp"
#include "snn/snn_format.hpp"

namespace snn {

// Does `array` contain `target`? All values lie in [0, bound).
struct ArrayInstance {
  std::vector<std::int64_t> array;
  std::int64_t target = 0;
  std::int64_t bound = 1;
};

std::optional<std::string> check_instance(const ArrayInstance& instance);
bool contains(const ArrayInstance& instance);

enum class SearchVariant { a, b, c };

std::string_view to_string(SearchVariant v);
std::optional<SearchVariant> parse_variant(std::string_view s);

struct CompiledSearch {
  Network network;
  SearchVariant variant = SearchVariant::a;
  // Programmed neurons left with an empty schedule, to be filled by
  // encode_input. Element ports first, value port last.
  std::vector<NeuronId> input_ports;
};

// Fixed neuron ids shared by all variants.
inline constexpr const char* kValuePort = "value";
inline constexpr const char* kDetector = "detect";
inline constexpr const char* kReject = "reject";
std::string element_id(std::size_t j);

struct SearchOptions {
  // Replaces the detector threshold 1 + 1/n; only for mutation testing.
  std::optional<Rational> detector_threshold;
};

// Array and target both embedded. Accepts at step i + 1, rejects at V + 2.
Network compile_search_embedded(const ArrayInstance& instance, const SearchOptions& options = {},
                                GeneratorCost* cost = nullptr);

// Array embedded, target offered on the `value` port. Accepts at step i + 1,
// rejects at i + V + 1.
CompiledSearch compile_search_value_input(std::span<const std::int64_t> array, std::int64_t bound,
                                          const SearchOptions& options = {}, GeneratorCost* cost = nullptr);

// Array of fixed size n and target all offered as inputs on ports
// elem_0..elem_{n-1} and `value`.
CompiledSearch compile_search_full_input(std::size_t size, std::int64_t bound, const SearchOptions& options = {},
                                         GeneratorCost* cost = nullptr);

// One-spike schedules {v} per port. Variant b takes no elements; variant c
// takes exactly `size` of them. Throws SnnError on arity mismatch or a value
// outside [0, bound).
InputMap encode_input(SearchVariant variant, std::size_t size, std::int64_t bound,
                      std::span<const std::int64_t> elements, std::int64_t target);

}  // namespace snn
