#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "snn/snn_format.hpp"

namespace {

struct Invocation {
  int status = -1;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  Invocation r;
  r.status = snn::cli::dispatch(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string last_line(const std::string& text) {
  auto end = text.find_last_not_of('\n');
  auto start = text.rfind('\n', end);
  return text.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

std::int64_t field(const std::string& line, const std::string& key) {
  auto at = line.find(key + "=");
  REQUIRE(at != std::string::npos);
  return std::stoll(line.substr(at + key.size() + 1));
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("snn_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
  std::string read(const std::string& name) const {
    std::ifstream f(path / name);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
};

const char* kTrivialAccept = "snn 1\ninput acc schedule=0\naccept acc\n";

}  // namespace

TEST_CASE("sim on the trivial accept network") {
  TempDir dir;
  dir.write("net.snn", kTrivialAccept);
  auto r = invoke({"sim", dir.file("net.snn"), "--max-steps", "100", "--trace"});
  CHECK(r.status == snn::cli::kAccept);
  CHECK(r.out ==
        "t=0 fired=acc energy=1\n"
        "verdict=accept time=1 energy=1 payload_energy=1 neurons=1 synapses=0\n");
}

TEST_CASE("compile piped into sim") {
  auto compiled = invoke({"compile", "array-search", "--variant", "a", "--array", "3,5,7", "--target", "5", "--bound", "8"});
  REQUIRE(compiled.status == snn::cli::kAccept);
  auto r = invoke({"sim", "-", "--max-steps", "32"}, compiled.out);
  CHECK(r.status == snn::cli::kAccept);
  CHECK(field(last_line(r.out), "energy") <= 5);

  auto miss = invoke({"compile", "array-search", "--variant", "a", "--array", "3,5,7", "--target", "4", "--bound", "8"});
  CHECK(invoke({"sim", "-"}, miss.out).status == snn::cli::kReject);
}

TEST_CASE("compile with an input sidecar") {
  TempDir dir;
  auto r = invoke({"compile", "array-search", "--variant", "c", "--array", "3,5,7", "--target", "5", "--bound", "8",
                   "-o", dir.file("c.snn")});
  REQUIRE(r.status == snn::cli::kAccept);
  CHECK(dir.read("c.snn.inputs") == "elem_0=3\nelem_1=5\nelem_2=7\nvalue=5\n");
  auto sim = invoke({"sim", dir.file("c.snn"), "--inputs", dir.file("c.snn.inputs")});
  CHECK(sim.status == snn::cli::kAccept);
  CHECK(field(last_line(sim.out), "payload_energy") <= 8);

  auto b = invoke({"compile", "array-search", "--variant", "b", "--array", "3,5,7", "--target", "4", "--bound", "8",
                   "-o", dir.file("b.snn"), "--inputs-out", dir.file("b.in")});
  REQUIRE(b.status == snn::cli::kAccept);
  CHECK(dir.read("b.in") == "value=4\n");
  CHECK(invoke({"sim", dir.file("b.snn"), "--inputs", dir.file("b.in")}).status == snn::cli::kReject);

  auto sized = invoke({"compile", "array-search", "--variant", "c", "--size", "2", "--bound", "4"});
  CHECK(sized.status == snn::cli::kAccept);
  CHECK(snn::parse_network(sized.out).ok());
}

TEST_CASE("gadgets are accepted by sim") {
  TempDir dir;
  auto clock = invoke({"gadget", "clock", "--period", "3"});
  REQUIRE(clock.status == snn::cli::kAccept);
  auto run = invoke({"sim", "-", "--max-steps", "8", "--raster"}, clock.out);
  CHECK(run.status == snn::cli::kViolation);
  CHECK(run.err.find("no accept or reject") != std::string::npos);
  CHECK(run.out.find("g_out  .|..|..|\n") != std::string::npos);
  CHECK(run.out.find("g_seed |.......\n") != std::string::npos);

  for (std::vector<std::string> args : {std::vector<std::string>{"gadget", "constant"},
                                        {"gadget", "number", "--value", "2", "--period", "5", "--prefix", "n"}}) {
    auto g = invoke(args);
    REQUIRE(g.status == snn::cli::kAccept);
    CHECK(snn::parse_network(g.out).ok());
    CHECK(invoke({"sim", "-", "--max-steps", "10"}, g.out).status == snn::cli::kViolation);
  }

  dir.write("silent.snn", "snn 1\nneuron acc\naccept acc\n");
  auto timed = invoke({"gadget", "timer", "--bound", "4", "--attach", dir.file("silent.snn")});
  REQUIRE(timed.status == snn::cli::kAccept);
  auto t = invoke({"sim", "-"}, timed.out);
  CHECK(t.status == snn::cli::kReject);
  CHECK(last_line(t.out) == "verdict=reject time=6 energy=2 payload_energy=0 neurons=3 synapses=2");

  auto metered = invoke({"gadget", "meter", "--bound", "2", "--attach", "-"},
                        "snn 1\ninput p periodic offset=0 period=1\nneuron acc\nneuron rej\naccept acc\nreject rej\n");
  REQUIRE(metered.status == snn::cli::kAccept);
  CHECK(invoke({"sim", "-"}, metered.out).status == snn::cli::kReject);

  CHECK(invoke({"gadget", "clock"}).status == snn::cli::kUsage);
  CHECK(invoke({"gadget", "timer", "--bound", "3"}).status == snn::cli::kUsage);
  CHECK(invoke({"gadget", "number", "--value", "5", "--period", "5"}).status == snn::cli::kUsage);
}

TEST_CASE("oracle subcommand") {
  TempDir dir;
  dir.write("net.snn", kTrivialAccept);
  auto ok = invoke({"oracle", dir.file("net.snn"), "--time", "2", "--space", "2", "--energy", "2"});
  CHECK(ok.status == snn::cli::kAccept);
  CHECK(ok.out == "outcome=accepted time=1 energy=1 neurons=1\n");
  auto tight = invoke({"oracle", dir.file("net.snn"), "--time", "2", "--space", "0", "--energy", "2"});
  CHECK(tight.status == snn::cli::kViolation);
  CHECK(tight.out.find("violation=space") != std::string::npos);
}

TEST_CASE("host subcommand") {
  TempDir dir;
  dir.write("prog.host",
            "let s = compile array-search --variant a --array 1,2 --target 2 --bound 3\n"
            "let q = oracle s time=10 space=10 energy=10\n"
            "if q goto yes\nreject\nlabel yes\naccept\n");
  auto r = invoke({"host", dir.file("prog.host")});
  CHECK(r.status == snn::cli::kAccept);
  CHECK(last_line(r.out) == "verdict=accept");
  CHECK(r.out.rfind("call=1 network=s outcome=accepted", 0) == 0);
}

TEST_CASE("verify subcommand") {
  auto r = invoke({"verify", "array-search", "--variant", "c", "--max-len", "4", "--max-val", "8"});
  CHECK(r.status == snn::cli::kAccept);
  CHECK(r.out.find("mismatches=0") != std::string::npos);
  CHECK(field(r.out, "instances") == 4681 * 8);

  auto a = invoke({"verify", "array-search", "--variant", "b", "--max-len", "8", "--max-val", "32", "--random", "200",
                   "--seed", "5"});
  auto b = invoke({"verify", "array-search", "--variant", "b", "--max-len", "8", "--max-val", "32", "--random", "200",
                   "--seed", "5", "--serial"});
  CHECK(a.status == snn::cli::kAccept);
  CHECK(a.out == b.out);
  CHECK(invoke({"verify", "array-search", "--variant", "b", "--max-len", "3", "--max-val", "4", "--random", "10"})
            .status == snn::cli::kUsage);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).status == snn::cli::kUsage);
  CHECK(invoke({"frobnicate"}).status == snn::cli::kUsage);
  CHECK(invoke({"sim", "/nonexistent/net.snn"}).status == snn::cli::kUsage);
  CHECK(invoke({"sim", "-"}, "snn 1\nneuron a\nsynapse a -> a delay=0\n").status == snn::cli::kUsage);
  CHECK(invoke({"sim", "-", "--max-steps", "0"}, kTrivialAccept).status == snn::cli::kUsage);
  CHECK(invoke({"compile", "array-search", "--variant", "d", "--bound", "3"}).status == snn::cli::kUsage);
  CHECK(invoke({"compile", "array-search", "--variant", "a", "--array", "1,x", "--target", "1", "--bound", "3"})
            .status == snn::cli::kUsage);
  CHECK(invoke({"compile", "array-search", "--variant", "c", "--array", "1", "--size", "2", "--bound", "3"}).status ==
        snn::cli::kUsage);
  CHECK(invoke({"--help"}).status == snn::cli::kAccept);
}

TEST_CASE("identical invocations give identical bytes") {
  std::vector<std::string> args = {"compile", "array-search", "--variant", "b", "--array", "6,1,6", "--bound", "9"};
  CHECK(invoke(args).out == invoke(args).out);
  auto first = invoke({"sim", "-", "--trace", "--max-steps", "50"}, invoke({"gadget", "constant"}).out);
  auto second = invoke({"sim", "-", "--trace", "--max-steps", "50"}, invoke({"gadget", "constant"}).out);
  CHECK(first.out == second.out);
}
