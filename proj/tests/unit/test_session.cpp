#include <cstring>
#include <string>

#include "doctest.h"
#include "kit/kit.hpp"
#include "rr.h"

namespace {

void append(void* user, const char* text, size_t len) { static_cast<std::string*>(user)->append(text, len); }

struct Handle {
  rr_session* s = nullptr;
  std::string out, err;
  explicit Handle(int width = 80) {
    rr_config cfg;
    rr_config_init(&cfg);
    cfg.width = width;
    REQUIRE(rr_session_new(&cfg, &s) == RR_OK);
    rr_set_output(s, append, &out);
    rr_set_error_output(s, append, &err);
  }
  ~Handle() { rr_session_free(s); }
  std::string simplify(const char* e) {
    char* r = nullptr;
    REQUIRE(rr_simplify(s, e, &r) == RR_OK);
    std::string v = r;
    rr_string_free(r);
    return v;
  }
};

}  // namespace

TEST_CASE("feed a line at a time") {
  Handle h;
  int errors = -1;
  CHECK(rr_feed(h.s, "x := (a +", &errors) == RR_INCOMPLETE);
  CHECK(h.out.empty());
  CHECK(rr_feed(h.s, " b)**2;", &errors) == RR_OK);
  CHECK(errors == 0);
  CHECK(h.out.find("X := A**2 + 2*A*B + B**2") != std::string::npos);
  CHECK(rr_feed(h.s, "y := 1; z :=", &errors) == RR_INCOMPLETE);
  CHECK(h.simplify("y") == "1");
  CHECK(rr_feed(h.s, "2;", &errors) == RR_OK);
  CHECK(h.simplify("z") == "2");
  CHECK_FALSE(rr_ended(h.s));
  CHECK(rr_feed(h.s, "end;", &errors) == RR_OK);
  CHECK(rr_ended(h.s));
}

TEST_CASE("the last value is kept in *ans") {
  Handle h;
  int errors = 0;
  CHECK(rr_run_source(h.s, "(x+1)**2;", &errors) == RR_OK);
  CHECK(h.simplify("!*ans - 1") == "X**2 + 2*X");
}

TEST_CASE("errors are reported and the run goes on") {
  Handle h;
  int errors = 0;
  CHECK(rr_run_source(h.s, "1/0; 2; 0**0; 3;", &errors) == RR_ERROR);
  CHECK(errors == 2);
  CHECK(h.err.find("line 1") != std::string::npos);
  CHECK(h.err.find("zero divisor") != std::string::npos);
  CHECK(h.out.find("\n2\n") != std::string::npos);
  CHECK(h.out.find("\n3\n") != std::string::npos);

  h.err.clear();
  CHECK(rr_run_source(h.s, "x := ;\ny := 4;", &errors) == RR_ERROR);
  CHECK(errors == 1);
  CHECK(h.simplify("y") == "4");
}

TEST_CASE("empty and comment-only sources") {
  Handle h;
  int errors = -1;
  CHECK(rr_run_source(h.s, "", &errors) == RR_OK);
  CHECK(errors == 0);
  CHECK(rr_run_source(h.s, "COMMENT nothing at all;", &errors) == RR_OK);
  CHECK(h.out.empty());
  CHECK(h.err.empty());
}

TEST_CASE("usage and io statuses") {
  rr_config cfg;
  rr_config_init(&cfg);
  cfg.width = 10;
  rr_session* s = nullptr;
  CHECK(rr_session_new(&cfg, &s) == RR_USAGE);
  CHECK(s == nullptr);
  CHECK(std::strstr(rr_last_error(nullptr), "width") != nullptr);
  CHECK(rr_session_new(&cfg, nullptr) == RR_USAGE);

  cfg.width = 80;
  cfg.prelude_manifest = "/nonexistent/prelude.manifest";
  CHECK(rr_session_new(&cfg, &s) == RR_IO);

  Handle h;
  int errors = 0;
  CHECK(rr_run_file(h.s, "/nonexistent/file.tst", &errors) == RR_IO);
  CHECK(std::strstr(rr_last_error(h.s), "/nonexistent/file.tst") != nullptr);
  CHECK(rr_run_source(nullptr, "1;", &errors) == RR_USAGE);
  CHECK(rr_run_source(h.s, nullptr, &errors) == RR_USAGE);
  char* r = nullptr;
  CHECK(rr_simplify(h.s, "x +", &r) == RR_ERROR);
  CHECK(r == nullptr);
  CHECK(std::strlen(rr_last_error(h.s)) > 0);
  CHECK(rr_eval_lisp(h.s, "(CAR 1)", &r) == RR_ERROR);
  CHECK(rr_eval_lisp(h.s, "(CONS 1 2)", &r) == RR_OK);
  CHECK(std::string(r) == "(1 . 2)");
  rr_string_free(r);
  CHECK(std::strlen(rr_last_error(h.s)) == 0);
  int eq = 0;
  CHECK(rr_equivalent(h.s, "(a+b)**2", "a**2+2*a*b+b**2", &eq) == RR_OK);
  CHECK(eq == 1);
  CHECK(rr_equivalent(h.s, "a", "b", &eq) == RR_OK);
  CHECK(eq == 0);
}

TEST_CASE("storage exhaustion is its own status") {
  rr_config cfg;
  rr_config_init(&cfg);
  cfg.storage_limit = std::size_t{4} << 20;
  rr_session* s = nullptr;
  REQUIRE(rr_session_new(&cfg, &s) == RR_OK);
  char* r = nullptr;
  CHECK(rr_eval_lisp(s, "(DE GROW (L) (GROW (CONS (MKVECT 1000) L))) (GROW NIL)", &r) == RR_NOMEM);
  CHECK(rr_eval_lisp(s, "(PLUS2 1 2)", &r) == RR_OK);
  rr_string_free(r);
  rr_session_free(s);
}

TEST_CASE("null sinks discard output") {
  rr_session* s = nullptr;
  REQUIRE(rr_session_new(nullptr, &s) == RR_OK);
  rr_set_output(s, nullptr, nullptr);
  rr_set_error_output(s, nullptr, nullptr);
  int errors = 0;
  CHECK(rr_run_source(s, "x := 1; 1/0;", &errors) == RR_ERROR);
  CHECK(errors == 1);
  rr_session_free(s);
}

TEST_CASE("runs are deterministic") {
  std::string src = kit::read_text(kit::corpus_path("alg.tst"));
  std::string a, b;
  for (std::string* t : {&a, &b}) {
    Handle h;
    int errors = 0;
    CHECK(rr_run_source(h.s, src.c_str(), &errors) == RR_OK);
    CHECK(errors == 0);
    *t = h.out;
  }
  // SHOWTIME lines hold timings; everything else must agree
  auto strip = [](std::string s) {
    std::string o;
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t e = s.find('\n', i);
      if (e == std::string::npos) e = s.size();
      std::string line = s.substr(i, e - i);
      if (line.rfind("TIME:", 0) != 0) o += line + "\n";
      i = e + 1;
    }
    return o;
  };
  CHECK(a.size() > 1000);
  CHECK(strip(a) == strip(b));
}
