// Command-line driver: run a file, talk to a REPL, compare a run against a
// golden transcript, or time repeated runs.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rr.h"

namespace {

struct Options {
  std::string file;
  std::string golden;
  std::string prelude;
  int width = 80;
  std::size_t mem = std::size_t{64} << 20;
  unsigned seed = 1;
  int reps = 5;
  bool quiet = false;
};

void to_string_sink(void* user, const char* text, size_t len) { static_cast<std::string*>(user)->append(text, len); }
void to_stdout(void*, const char* text, size_t len) { std::fwrite(text, 1, len, stdout); }
void to_stderr(void*, const char* text, size_t len) {
  std::fflush(stdout);
  std::fwrite(text, 1, len, stderr);
}

struct Session {
  rr_session* s = nullptr;
  ~Session() { rr_session_free(s); }
};

// 0 on success, otherwise an exit code with the reason already printed.
int open_session(const Options& o, bool echo, Session& out) {
  rr_config cfg;
  rr_config_init(&cfg);
  if (!o.prelude.empty()) cfg.prelude_manifest = o.prelude.c_str();
  cfg.width = o.width;
  cfg.storage_limit = o.mem;
  cfg.echo = echo ? 1 : 0;
  rr_status st = rr_session_new(&cfg, &out.s);
  if (st != RR_OK) {
    std::cerr << "***** " << rr_last_error(nullptr) << "\n";
    return 2;
  }
  rr_set_output(out.s, o.quiet ? nullptr : to_stdout, nullptr);
  rr_set_error_output(out.s, to_stderr, nullptr);
  return 0;
}

int run_mode(const Options& o) {
  Session s;
  if (int rc = open_session(o, true, s)) return rc;
  int errors = 0;
  rr_status st = rr_run_file(s.s, o.file.c_str(), &errors);
  if (st == RR_IO || st == RR_USAGE) {
    std::cerr << "***** " << rr_last_error(s.s) << "\n";
    return 2;
  }
  if (st == RR_NOMEM) std::cerr << "***** " << rr_last_error(s.s) << "\n";
  return st == RR_OK ? 0 : 1;
}

int repl_mode(const Options& o) {
  Session s;
  if (int rc = open_session(o, false, s)) return rc;
  int n = 1;
  bool open = false;
  std::string line;
  for (;;) {
    if (!o.quiet) {
      std::cout << (open ? "   " : std::to_string(n) + ": ") << std::flush;
    }
    if (!std::getline(std::cin, line)) break;
    int errors = 0;
    rr_status st = rr_feed(s.s, line.c_str(), &errors);
    open = st == RR_INCOMPLETE;
    if (!open) ++n;
    if (st == RR_NOMEM) std::cerr << "***** " << rr_last_error(s.s) << "\n";
    if (rr_ended(s.s)) break;
  }
  if (!o.quiet) std::cout << "\n";
  return 0;
}

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream f(path, std::ios::binary);
  ok = static_cast<bool>(f);
  std::ostringstream text;
  text << f.rdbuf();
  return text.str();
}

// Logical transcript lines: continuation lines rejoined, timing lines dropped.
std::vector<std::string> logical_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (!l.empty() && l[0] == ' ' && !out.empty())
      out.back() += l.substr(1);
    else
      out.push_back(l);
  }
  std::erase_if(out, [](const std::string& x) { return x.rfind("TIME:", 0) == 0; });
  return out;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(' ');
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(' ') - a + 1);
}

// Lines that differ in text may still print the same value.
bool same_value(rr_session* s, const std::string& a, const std::string& b) {
  auto pa = a.rfind(":= ");
  auto pb = b.rfind(":= ");
  std::string ra = a, rb = b;
  if (pa != std::string::npos || pb != std::string::npos) {
    if (pa == std::string::npos || pb == std::string::npos) return false;
    if (a.substr(0, pa) != b.substr(0, pb)) return false;
    ra = a.substr(pa + 3);
    rb = b.substr(pb + 3);
  }
  if (trim(ra).empty() || trim(rb).empty()) return false;
  int eq = 0;
  return rr_equivalent(s, ra.c_str(), rb.c_str(), &eq) == RR_OK && eq == 1;
}

int check_mode(const Options& o) {
  bool ok = false;
  std::string golden = read_file(o.golden, ok);
  if (!ok) {
    std::cerr << "***** cannot read " << o.golden << "\n";
    return 2;
  }
  Session s;
  Options quiet = o;
  quiet.quiet = true;
  if (int rc = open_session(quiet, true, s)) return rc;
  std::string transcript;
  rr_set_output(s.s, to_string_sink, &transcript);
  int errors = 0;
  rr_status st = rr_run_file(s.s, o.file.c_str(), &errors);
  if (st == RR_IO || st == RR_USAGE) {
    std::cerr << "***** " << rr_last_error(s.s) << "\n";
    return 2;
  }
  Session judge;
  if (int rc = open_session(quiet, false, judge)) return rc;
  auto want = logical_lines(golden);
  auto got = logical_lines(transcript);
  int diffs = 0;
  std::size_t n = std::max(want.size(), got.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::string* w = i < want.size() ? &want[i] : nullptr;
    const std::string* g = i < got.size() ? &got[i] : nullptr;
    if (w && g && (*w == *g || same_value(judge.s, *w, *g))) continue;
    if (++diffs <= 20) {
      std::cout << "line " << i + 1 << ":\n  expected: " << (w ? *w : "<end>") << "\n  actual:   " << (g ? *g : "<end>")
                << "\n";
    }
  }
  if (errors != 0) std::cout << errors << " statement(s) failed\n";
  std::cout << (diffs == 0 && errors == 0 ? "check passed" : "check FAILED") << " (" << got.size() << " lines, " << diffs
            << " differing)\n";
  return diffs == 0 && errors == 0 ? 0 : 1;
}

int bench_mode(const Options& o) {
  bool ok = false;
  std::string src = read_file(o.file, ok);
  if (!ok) {
    std::cerr << "***** cannot read " << o.file << "\n";
    return 2;
  }
  if (o.reps < 1) {
    std::cerr << "***** --reps must be at least 1\n";
    return 2;
  }
  Options silent = o;
  silent.quiet = true;
  std::vector<double> ms;
  for (int r = 0; r <= o.reps; ++r) {
    Session s;
    if (int rc = open_session(silent, true, s)) return rc;
    int errors = 0;
    auto t0 = std::chrono::steady_clock::now();
    rr_status st = rr_run_source(s.s, src.c_str(), &errors);
    auto t1 = std::chrono::steady_clock::now();
    if (st != RR_OK) {
      std::cerr << "***** benchmark aborted: " << errors << " statement(s) failed\n";
      return 1;
    }
    if (r > 0) ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  double min = *std::min_element(ms.begin(), ms.end());
  double mean = 0;
  for (double x : ms) mean += x;
  mean /= static_cast<double>(ms.size());
  std::printf("%-6s %12s\n", "run", "wall ms");
  if (!o.quiet)
    for (std::size_t i = 0; i < ms.size(); ++i) std::printf("%-6zu %12.2f\n", i + 1, ms[i]);
  std::printf("%-6s %12.2f\n%-6s %12.2f\n", "min", min, "mean", mean);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Early REDUCE on a minimal Lisp"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--prelude", o.prelude, "prelude manifest (default: the built-in prelude)");
  app.add_option("--width", o.width, "output line width")->check(CLI::Range(16, 10000));
  app.add_option("--mem", o.mem, "Lisp storage budget in bytes (0: unlimited)");
  app.add_option("--seed", o.seed, "seed for randomized modes");
  app.add_option("--reps", o.reps, "bench repetitions")->check(CLI::PositiveNumber);
  app.add_flag("--quiet,-q", o.quiet, "suppress the transcript (bench: only the summary)");

  auto* run = app.add_subcommand("run", "run a source file");
  run->add_option("file", o.file, "source file")->required();
  auto* repl = app.add_subcommand("repl", "interactive session");
  auto* check = app.add_subcommand("check", "compare a run with a golden transcript");
  check->add_option("file", o.file, "source file")->required();
  check->add_option("golden", o.golden, "golden transcript")->required();
  auto* bench = app.add_subcommand("bench", "time repeated runs of a file");
  bench->add_option("file", o.file, "source file")->required();
  for (auto* sub : {run, repl, check, bench}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (*run) return run_mode(o);
  if (*repl) return repl_mode(o);
  if (*check) return check_mode(o);
  return bench_mode(o);
}
