// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/thinlayer.h"

#include <exception>
#include <new>
#include <string>

#include "thinlayer/errors.hpp"
#include "thinlayer/pipeline.hpp"
#include "thinlayer/version.hpp"

struct tl_session {
  thinlayer::RunConfig config;
  thinlayer::RunResult result;
  std::string config_text;
  std::string error;
};

namespace {

thread_local std::string create_error;

tl_status status_of(thinlayer::ErrorKind kind) {
  using thinlayer::ErrorKind;
  switch (kind) {
    case ErrorKind::InvalidModel: return TL_ERR_INVALID_MODEL;
    case ErrorKind::Precondition: return TL_ERR_PRECONDITION;
    case ErrorKind::Resolution: return TL_ERR_RESOLUTION;
    case ErrorKind::Resonance: return TL_ERR_RESONANCE;
    case ErrorKind::Degeneracy: return TL_ERR_DEGENERACY;
    case ErrorKind::InvalidCase: return TL_ERR_INVALID_CASE;
    case ErrorKind::Config: return TL_ERR_CONFIG;
    case ErrorKind::Io: return TL_ERR_IO;
  }
  return TL_ERR_INTERNAL;
}

// Runs body, mapping exceptions to a status and a message.
template <class F>
tl_status guarded(std::string& message, F&& body) {
  try {
    body();
    return TL_OK;
  } catch (const thinlayer::Error& e) {
    message = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    message = "out of memory";
  } catch (const std::exception& e) {
    message = e.what();
  } catch (...) {
    message = "unknown error";
  }
  return TL_ERR_INTERNAL;
}

tl_status create(tl_session** out, const auto& load) {
  if (!out) {
    create_error = "null output pointer";
    return TL_ERR_ARGUMENT;
  }
  *out = nullptr;
  create_error.clear();
  return guarded(create_error, [&] {
    auto* s = new tl_session;
    try {
      s->config = load();
      s->config.validate();
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
  });
}

}  // namespace

extern "C" {

const char* tl_version(void) { return thinlayer::kVersion; }

const char* tl_status_string(tl_status status) {
  switch (status) {
    case TL_OK: return "ok";
    case TL_ERR_CONFIG: return "config error";
    case TL_ERR_INVALID_MODEL: return "invalid model";
    case TL_ERR_PRECONDITION: return "precondition violated";
    case TL_ERR_RESOLUTION: return "insufficient resolution";
    case TL_ERR_RESONANCE: return "resonance";
    case TL_ERR_DEGENERACY: return "degenerate spectrum";
    case TL_ERR_INVALID_CASE: return "invalid case";
    case TL_ERR_IO: return "i/o error";
    case TL_ERR_ARGUMENT: return "invalid argument";
    case TL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

tl_status tl_session_create_from_file(const char* path, tl_session** out) {
  if (!path) {
    create_error = "null path";
    return TL_ERR_ARGUMENT;
  }
  return create(out, [&] { return thinlayer::load_config(path); });
}

tl_status tl_session_create_from_string(const char* text, tl_session** out) {
  if (!text) {
    create_error = "null config text";
    return TL_ERR_ARGUMENT;
  }
  return create(out, [&] { return thinlayer::parse_config(text); });
}

void tl_session_destroy(tl_session* session) { delete session; }

tl_status tl_session_set(tl_session* session, const char* key, const char* value) {
  if (!session) return TL_ERR_ARGUMENT;
  if (!key || !value) {
    session->error = "null key or value";
    return TL_ERR_ARGUMENT;
  }
  return guarded(session->error, [&] {
    const std::string k = key;
    const auto dot = k.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == k.size())
      thinlayer::fail(thinlayer::ErrorKind::Config, "setting '" + k + "' must look like section.key");
    auto next = session->config;
    next.set(k.substr(0, dot), k.substr(dot + 1), value);
    next.validate();
    session->config = std::move(next);
  });
}

const char* tl_session_config(tl_session* session) {
  if (!session) return "";
  session->config_text = session->config.to_text();
  return session->config_text.c_str();
}

tl_status tl_session_run(tl_session* session, const char* command, const char* out_dir, int* exit_status) {
  if (!session) return TL_ERR_ARGUMENT;
  if (!command) {
    session->error = "null command";
    return TL_ERR_ARGUMENT;
  }
  return guarded(session->error, [&] {
    auto result = thinlayer::run(thinlayer::parse_command(command), session->config);
    const std::string dir = out_dir ? out_dir : session->config.out_dir;
    if (!dir.empty()) thinlayer::write_outputs(result, dir, session->config.name);
    session->result = std::move(result);
    if (exit_status) *exit_status = session->result.exit_status;
  });
}

const char* tl_session_report_json(const tl_session* session) { return session ? session->result.json.c_str() : ""; }

const char* tl_session_report_csv(const tl_session* session) { return session ? session->result.csv.c_str() : ""; }

size_t tl_session_warning_count(const tl_session* session) { return session ? session->result.warnings.size() : 0; }

const char* tl_session_warning(const tl_session* session, size_t index) {
  if (!session || index >= session->result.warnings.size()) return "";
  return session->result.warnings[index].c_str();
}

const char* tl_session_last_error(const tl_session* session) { return session ? session->error.c_str() : ""; }

const char* tl_last_create_error(void) { return create_error.c_str(); }

}  // extern "C"
