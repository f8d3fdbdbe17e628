#include "crysgar.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "crysgar/algraph.hpp"
#include "crysgar/common.hpp"
#include "crysgar/coxeter.hpp"
#include "crysgar/garside.hpp"
#include "crysgar/interval.hpp"
#include "crysgar/verify.hpp"
#include "crysgar/wordlang.hpp"

using namespace crysgar;

struct cg_ctx {
  IntervalCtx interval;
  GarsideEngine engine;
  ALGraph graph;
  std::string last_error;

  explicit cg_ctx(const DynkinType& type)
      : interval(type), engine(interval), graph(engine) {}
};

namespace {

thread_local std::string g_thread_error;

std::string& error_slot(cg_ctx* ctx) {
  return ctx ? ctx->last_error : g_thread_error;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) {
    std::memcpy(out, s.c_str(), s.size() + 1);
  }
  return out;
}

/// Run fn under the library's exception taxonomy, recording the message
/// in the handle's error slot and mapping the exception class to a
/// status code.
template <typename Fn>
cg_status guarded(cg_ctx* ctx, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    error_slot(ctx) = e.what();
    return CG_EPARSE;
  } catch (const UnsupportedError& e) {
    error_slot(ctx) = e.what();
    return CG_EUNSUPPORTED;
  } catch (const WindowError& e) {
    error_slot(ctx) = e.what();
    return CG_EWINDOW;
  } catch (const InternalError& e) {
    error_slot(ctx) = e.what();
    return CG_EINTERNAL;
  } catch (const Error& e) {
    error_slot(ctx) = e.what();
    return CG_EINVAL;
  } catch (const std::bad_alloc&) {
    error_slot(ctx) = "out of memory";
    return CG_EINTERNAL;
  } catch (const std::exception& e) {
    error_slot(ctx) = e.what();
    return CG_EINTERNAL;
  }
}

cg_status emit(cg_ctx* ctx, char** out, const std::string& text) {
  *out = dup_string(text);
  if (*out == nullptr) {
    error_slot(ctx) = "out of memory";
    return CG_EINTERNAL;
  }
  return CG_OK;
}

cg_status check_args(cg_ctx* ctx, char** out) {
  if (out == nullptr) {
    error_slot(ctx) = "output pointer is null";
    return CG_EINVAL;
  }
  *out = nullptr;
  if (ctx == nullptr) {
    g_thread_error = "context handle is null";
    return CG_EINVAL;
  }
  return CG_OK;
}

std::vector<std::string> split_ids(const char* ids_csv) {
  std::vector<std::string> ids;
  if (ids_csv == nullptr) {
    return ids;
  }
  std::string current;
  for (const char* p = ids_csv;; ++p) {
    if (*p == ',' || *p == '\0') {
      std::size_t begin = current.find_first_not_of(" \t");
      if (begin != std::string::npos) {
        std::size_t end = current.find_last_not_of(" \t");
        ids.push_back(current.substr(begin, end - begin + 1));
      }
      current.clear();
      if (*p == '\0') {
        break;
      }
    } else {
      current.push_back(*p);
    }
  }
  return ids;
}

}  // namespace

extern "C" {

const char* cg_status_name(cg_status status) {
  switch (status) {
    case CG_OK:
      return "ok";
    case CG_FAIL:
      return "fail";
    case CG_UNKNOWN:
      return "unknown";
    case CG_EINVAL:
      return "invalid";
    case CG_EPARSE:
      return "parse";
    case CG_EUNSUPPORTED:
      return "unsupported";
    case CG_EWINDOW:
      return "window";
    case CG_EINTERNAL:
      return "internal";
  }
  return "unknown-status";
}

const char* cg_last_error(const cg_ctx* ctx) {
  return ctx ? ctx->last_error.c_str() : g_thread_error.c_str();
}

cg_status cg_ctx_new(const char* type, cg_ctx** out) {
  if (out == nullptr) {
    g_thread_error = "output pointer is null";
    return CG_EINVAL;
  }
  *out = nullptr;
  if (type == nullptr) {
    g_thread_error = "type string is null";
    return CG_EINVAL;
  }
  return guarded(nullptr, [&]() -> cg_status {
    DynkinType parsed = DynkinType::parse(type);
    *out = new cg_ctx(parsed);
    return CG_OK;
  });
}

void cg_ctx_free(cg_ctx* ctx) { delete ctx; }

cg_status cg_build_report(cg_ctx* ctx, char** out) {
  cg_status bad = check_args(ctx, out);
  if (bad != CG_OK) {
    return bad;
  }
  return guarded(ctx, [&]() -> cg_status {
    return emit(ctx, out, build_report(ctx->engine).dump(2));
  });
}

cg_status cg_normal_form(cg_ctx* ctx, const char* word, char** out) {
  cg_status bad = check_args(ctx, out);
  if (bad != CG_OK) {
    return bad;
  }
  if (word == nullptr) {
    ctx->last_error = "word is null";
    return CG_EINVAL;
  }
  return guarded(ctx, [&]() -> cg_status {
    return emit(ctx, out, nf_report(ctx->engine, word).dump(2));
  });
}

cg_status cg_lambda(cg_ctx* ctx, const char* word, long window, char** out) {
  cg_status bad = check_args(ctx, out);
  if (bad != CG_OK) {
    return bad;
  }
  if (word == nullptr) {
    ctx->last_error = "word is null";
    return CG_EINVAL;
  }
  return guarded(ctx, [&]() -> cg_status {
    return emit(ctx, out, lambda_report(ctx->graph, word, window).dump(2));
  });
}

cg_status cg_verify(cg_ctx* ctx, const char* ids_csv,
                    unsigned long long seed, long window, long power,
                    long instances, int timings, char** out) {
  cg_status bad = check_args(ctx, out);
  if (bad != CG_OK) {
    return bad;
  }
  return guarded(ctx, [&]() -> cg_status {
    std::vector<std::string> ids = split_ids(ids_csv);
    if (ids.empty()) {
      ids.push_back("all");
    }
    VerifyOptions opt;
    opt.seed = seed;
    if (window > 0) {
      opt.window = window;
    }
    if (power > 0) {
      opt.power = power;
    }
    if (instances > 0) {
      opt.instances = instances;
    }
    opt.timings = (timings != 0);
    std::vector<CheckResult> results = run_verify(ctx->graph, ids, opt);
    cg_status verdict = CG_OK;
    for (const CheckResult& r : results) {
      if (r.verdict == "fail") {
        verdict = CG_FAIL;
        break;
      }
      if (r.verdict == "unknown") {
        verdict = CG_UNKNOWN;
      }
    }
    cg_status emitted =
        emit(ctx, out, verify_report(ctx->engine, results, opt).dump(2));
    if (emitted != CG_OK) {
      return emitted;
    }
    if (verdict == CG_FAIL) {
      ctx->last_error = "a verification check failed";
    } else if (verdict == CG_UNKNOWN) {
      ctx->last_error = "a verification check returned unknown";
    }
    return verdict;
  });
}

cg_status cg_verify_ids(cg_ctx* ctx, char** out) {
  cg_status bad = check_args(ctx, out);
  if (bad != CG_OK) {
    return bad;
  }
  return guarded(ctx, [&]() -> cg_status {
    std::string text;
    for (const std::string& id : verify_check_ids()) {
      text += id;
      text += '\n';
    }
    return emit(ctx, out, text);
  });
}

cg_status cg_graph_dot(cg_ctx* ctx, const char* center_word, long radius,
                       long atom_k, char** out) {
  cg_status bad = check_args(ctx, out);
  if (bad != CG_OK) {
    return bad;
  }
  if (center_word == nullptr) {
    ctx->last_error = "center word is null";
    return CG_EINVAL;
  }
  if (radius < 0) {
    ctx->last_error = "radius must be nonnegative";
    return CG_EINVAL;
  }
  return guarded(ctx, [&]() -> cg_status {
    return emit(ctx, out,
                graph_dot_report(ctx->graph, center_word, radius,
                                 atom_k > 0 ? atom_k : 1));
  });
}

cg_status cg_word_help(cg_ctx* ctx, char** out) {
  cg_status bad = check_args(ctx, out);
  if (bad != CG_OK) {
    return bad;
  }
  return guarded(ctx, [&]() -> cg_status {
    return emit(ctx, out, word_grammar_help(ctx->engine));
  });
}

void cg_string_free(char* s) { std::free(s); }

}  // extern "C"
