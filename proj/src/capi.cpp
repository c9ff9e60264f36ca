#include "rr.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>

#include "session/session.hpp"

struct rr_session {
  std::unique_ptr<rr::Session> s;
  std::string error;
};

namespace {

thread_local std::string g_new_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

rr::Session::Sink sink(rr_write_fn fn, void* user) {
  if (fn == nullptr) return [](std::string_view) {};
  return [fn, user](std::string_view t) { fn(user, t.data(), t.size()); };
}

// Runs f, turning exceptions into a status and a stored message.
template <class F>
rr_status guarded(rr_session* s, F&& f) {
  if (s == nullptr) return RR_USAGE;
  s->error.clear();
  try {
    return f();
  } catch (const rr::lisp::StorageExhausted& e) {
    s->error = e.what();
    return RR_NOMEM;
  } catch (const std::bad_alloc&) {
    s->error = "out of memory";
    return RR_NOMEM;
  } catch (const std::exception& e) {
    s->error = e.what();
    return RR_ERROR;
  }
}

rr_status counted(int n, int* errors) {
  if (errors != nullptr) *errors = n;
  return n == 0 ? RR_OK : RR_ERROR;
}

}  // namespace

extern "C" {

void rr_config_init(rr_config* cfg) {
  if (cfg == nullptr) return;
  cfg->prelude_manifest = nullptr;
  cfg->width = 80;
  cfg->storage_limit = std::size_t{64} << 20;
  cfg->echo = 1;
}

rr_status rr_session_new(const rr_config* cfg, rr_session** out) {
  if (out == nullptr) return RR_USAGE;
  *out = nullptr;
  rr_config def;
  rr_config_init(&def);
  if (cfg == nullptr) cfg = &def;
  if (cfg->width < 16) {
    g_new_error = "line width must be at least 16";
    return RR_USAGE;
  }
  rr::SessionConfig sc;
  if (cfg->prelude_manifest != nullptr) sc.prelude_manifest = cfg->prelude_manifest;
  sc.width = cfg->width;
  sc.storage_limit = cfg->storage_limit;
  sc.echo = cfg->echo != 0;
  try {
    auto h = std::make_unique<rr_session>();
    h->s = std::make_unique<rr::Session>(sc);
    *out = h.release();
    g_new_error.clear();
    return RR_OK;
  } catch (const std::bad_alloc&) {
    g_new_error = "out of memory";
    return RR_NOMEM;
  } catch (const std::exception& e) {
    g_new_error = e.what();
    return cfg->prelude_manifest != nullptr ? RR_IO : RR_ERROR;
  }
}

void rr_session_free(rr_session* s) { delete s; }

void rr_set_output(rr_session* s, rr_write_fn fn, void* user) {
  if (s != nullptr) s->s->set_output(sink(fn, user));
}

void rr_set_error_output(rr_session* s, rr_write_fn fn, void* user) {
  if (s != nullptr) s->s->set_error_output(sink(fn, user));
}

rr_status rr_run_file(rr_session* s, const char* path, int* errors) {
  if (s == nullptr || path == nullptr) return RR_USAGE;
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    s->error = std::string("cannot read ") + path;
    return RR_IO;
  }
  std::ostringstream text;
  text << f.rdbuf();
  return guarded(s, [&] { return counted(s->s->run_source(text.str()), errors); });
}

rr_status rr_run_source(rr_session* s, const char* text, int* errors) {
  if (text == nullptr) return RR_USAGE;
  return guarded(s, [&] { return counted(s->s->run_source(text), errors); });
}

rr_status rr_feed(rr_session* s, const char* text, int* errors) {
  if (text == nullptr) return RR_USAGE;
  return guarded(s, [&] {
    int n = 0;
    bool done = s->s->feed(text, n);
    rr_status st = counted(n, errors);
    return done || st != RR_OK ? st : RR_INCOMPLETE;
  });
}

int rr_ended(const rr_session* s) { return s != nullptr && s->s->ended() ? 1 : 0; }

rr_status rr_eval_lisp(rr_session* s, const char* text, char** result) {
  if (text == nullptr || result == nullptr) return RR_USAGE;
  *result = nullptr;
  return guarded(s, [&] {
    *result = dup(s->s->eval_lisp(text));
    return *result ? RR_OK : RR_NOMEM;
  });
}

rr_status rr_simplify(rr_session* s, const char* expr, char** result) {
  if (expr == nullptr || result == nullptr) return RR_USAGE;
  *result = nullptr;
  return guarded(s, [&] {
    *result = dup(s->s->simplify(expr));
    return *result ? RR_OK : RR_NOMEM;
  });
}

rr_status rr_equivalent(rr_session* s, const char* a, const char* b, int* equal) {
  if (a == nullptr || b == nullptr || equal == nullptr) return RR_USAGE;
  return guarded(s, [&] {
    *equal = s->s->equivalent(a, b) ? 1 : 0;
    return RR_OK;
  });
}

const char* rr_last_error(const rr_session* s) { return s == nullptr ? g_new_error.c_str() : s->error.c_str(); }

void rr_string_free(char* p) { std::free(p); }

}  // extern "C"
