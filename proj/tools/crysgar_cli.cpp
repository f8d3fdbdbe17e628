// Command-line front end.  Talks to the library exclusively through the
// C interface in crysgar.h; every report crosses that boundary as a
// JSON (or DOT) string, and the exit code is the cg_status of the call.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crysgar.h"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string type;
  std::string word;
  std::vector<std::string> positionals;
  std::string format;
  std::string out_path;
};

struct VerifyFlags {
  unsigned long long seed = 1;
  long window = 0;
  long power = 0;
  long instances = 0;
  bool timings = false;
  bool list = false;
};

struct CtxGuard {
  cg_ctx* ctx = nullptr;
  ~CtxGuard() { cg_ctx_free(ctx); }
};

struct StrGuard {
  char* s = nullptr;
  ~StrGuard() { cg_string_free(s); }
};

bool looks_like_type(const std::string& tok) {
  return tok.find('~') != std::string::npos;
}

// Pull the type string out of the positional arguments: any token
// containing '~' is a type; everything else keeps its order.
std::string take_type(CommonOpts& o) {
  std::string type = o.type;
  std::vector<std::string> rest;
  for (const std::string& tok : o.positionals) {
    if (type.empty() && looks_like_type(tok)) {
      type = tok;
    } else {
      rest.push_back(tok);
    }
  }
  o.positionals = std::move(rest);
  return type;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

int report_error(cg_status st, const cg_ctx* ctx) {
  std::cerr << "error [" << cg_status_name(st) << "] " << cg_last_error(ctx)
            << std::endl;
  return static_cast<int>(st);
}

int invalid(const std::string& message) {
  std::cerr << "error [invalid] " << message << std::endl;
  return static_cast<int>(CG_EINVAL);
}

int deliver(const std::string& text, const std::string& out_path) {
  std::string payload = text;
  if (payload.empty() || payload.back() != '\n') payload += '\n';
  if (out_path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    return invalid("cannot open output file '" + out_path + "'");
  }
  f << payload;
  return 0;
}

// ---- text renderers ---------------------------------------------------

std::string render_build(const json& j) {
  std::ostringstream os;
  os << "type " << j["type"].get<std::string>() << "\n";
  os << "rank " << j["rank"] << ", ambient dimension " << j["ambient_dim"]
     << ", roots " << j["roots"] << "\n";
  os << "highest root " << j["highest_root"].get<std::string>()
     << ", marks";
  for (const json& m : j["marks"]) os << ' ' << m.get<std::string>();
  os << "\n";
  os << "blue nodes";
  for (const json& b : j["blue_nodes"]) os << ' ' << b;
  os << ", green nodes";
  for (const json& g : j["green_nodes"]) os << ' ' << g;
  os << "\n";
  os << "gamma " << j["gamma"].get<std::string>() << ", e0 " << j["e0"]
     << ", k0 " << j["k0"] << "\n";
  os << "atoms per window step: " << j["vertical_pairs"]
     << " vertical reflection pairs, " << j["horizontal_atoms"]
     << " horizontal, " << j["factored_atoms"]
     << " factored translations; min atom weight "
     << j["min_atom_weight"].get<std::string>() << "\n";
  os << "r0 = " << j["r0"].get<std::string>() << "\n";
  os << "x =";
  for (const json& f : j["x_factors"]) os << ' ' << f.get<std::string>();
  os << "   (inf " << j["x_inf"] << ", sup " << j["x_sup"] << ")\n";
  return os.str();
}

std::string render_verify(const json& j) {
  std::ostringstream os;
  os << "type " << j["type"].get<std::string>() << ", seed "
     << j["parameters"]["seed"] << "\n";
  for (const json& c : j["checks"]) {
    os << "  " << std::left << std::setw(22) << c["id"].get<std::string>()
       << ' ' << c["verdict"].get<std::string>();
    if (c.contains("seconds")) {
      os << "  (" << std::fixed << std::setprecision(3)
         << c["seconds"].get<double>() << "s)";
    }
    os << "\n";
    const json& w = c["witnesses"];
    for (const char* key : {"failure", "error", "note"}) {
      if (w.contains(key)) {
        os << "      " << key << ": " << w[key].get<std::string>() << "\n";
      }
    }
  }
  const json& s = j["summary"];
  os << "summary: " << s["pass"] << " pass, " << s["fail"] << " fail, "
     << s["unknown"] << " unknown; unknown divisibility returns "
     << s["unknown_returns"] << ", clipped windows " << s["clipped_events"]
     << "\n";
  os << (j["ok"].get<bool>() ? "ok" : "NOT ok") << "\n";
  return os.str();
}

std::string render_nf(const json& j) {
  std::ostringstream os;
  os << "type " << j["type"].get<std::string>() << "\n";
  os << "word: " << j["word"].get<std::string>() << "\n";
  os << "normal form: " << j["normal_form"].get<std::string>() << "\n";
  os << "inf " << j["inf"] << ", sup " << j["sup"] << ", canonical length "
     << j["canonical_length"] << "\n";
  if (j.contains("rigid")) {
    os << "rigid: " << (j["rigid"].get<bool>() ? "yes" : "no") << "\n";
  }
  return os.str();
}

std::string render_lambda(const json& j) {
  std::ostringstream os;
  os << "type " << j["type"].get<std::string>() << "\n";
  os << "word: " << j["word"].get<std::string>() << "\n";
  os << "vertex: " << j["vertex"].get<std::string>() << "\n";
  os << "lambda = " << j["lambda"] << "  (window " << j["window"] << ")\n";
  return os.str();
}

// ---- commands ----------------------------------------------------------

int open_ctx(const std::string& type, CtxGuard& guard) {
  if (type.empty()) {
    return invalid("missing type (pass it as a positional like C~2, or via --type)");
  }
  cg_status st = cg_ctx_new(type.c_str(), &guard.ctx);
  if (st != CG_OK) return report_error(st, nullptr);
  return 0;
}

int render_and_deliver(const CommonOpts& o, const char* command,
                       const char* text,
                       std::string (*renderer)(const json&)) {
  std::string fmt = o.format.empty() ? "text" : o.format;
  if (fmt == "json") return deliver(text, o.out_path);
  if (fmt != "text") {
    return invalid("format '" + fmt + "' is not available for " + command);
  }
  return deliver(renderer(json::parse(text)), o.out_path);
}

int cmd_build(CommonOpts& o) {
  std::string type = take_type(o);
  // build takes only the type, so a leftover positional is a type string
  // in the wrong grammar; hand it to the library for the real diagnosis.
  if (type.empty() && !o.positionals.empty()) {
    type = o.positionals.front();
    o.positionals.erase(o.positionals.begin());
  }
  if (!o.positionals.empty()) {
    return invalid("unexpected argument '" + o.positionals.front() + "'");
  }
  CtxGuard guard;
  if (int rc = open_ctx(type, guard); rc != 0) return rc;
  StrGuard out;
  if (cg_status st = cg_build_report(guard.ctx, &out.s); st != CG_OK) {
    return report_error(st, guard.ctx);
  }
  return render_and_deliver(o, "build", out.s, render_build);
}

int cmd_verify(CommonOpts& o, const VerifyFlags& vf) {
  std::string type = take_type(o);
  if (vf.list) {
    // The registry does not depend on the type; build the smallest one
    // if none was given.
    CtxGuard guard;
    if (int rc = open_ctx(type.empty() ? "C~2" : type, guard); rc != 0) {
      return rc;
    }
    StrGuard ids;
    if (cg_status st = cg_verify_ids(guard.ctx, &ids.s); st != CG_OK) {
      return report_error(st, guard.ctx);
    }
    return deliver(ids.s, o.out_path);
  }
  std::string checks = o.positionals.empty() ? std::string("all")
                                             : join(o.positionals, ",");
  CtxGuard guard;
  if (int rc = open_ctx(type, guard); rc != 0) return rc;
  StrGuard out;
  cg_status st = cg_verify(guard.ctx, checks.c_str(), vf.seed, vf.window,
                           vf.power, vf.instances, vf.timings ? 1 : 0,
                           &out.s);
  if (out.s == nullptr) return report_error(st, guard.ctx);
  int rc = render_and_deliver(o, "verify", out.s, render_verify);
  if (rc != 0) return rc;
  return static_cast<int>(st);
}

int take_word(CommonOpts& o, std::string* word) {
  std::string joined = join(o.positionals, " ");
  if (!o.word.empty() && !joined.empty()) {
    return invalid("word given both as positional and via --word");
  }
  *word = o.word.empty() ? joined : o.word;
  return 0;
}

int cmd_nf(CommonOpts& o) {
  std::string type = take_type(o);
  std::string word;
  if (int rc = take_word(o, &word); rc != 0) return rc;
  if (word.empty()) return invalid("missing word (e.g. nf C~2 \"ib' ig'\")");
  CtxGuard guard;
  if (int rc = open_ctx(type, guard); rc != 0) return rc;
  StrGuard out;
  if (cg_status st = cg_normal_form(guard.ctx, word.c_str(), &out.s);
      st != CG_OK) {
    return report_error(st, guard.ctx);
  }
  return render_and_deliver(o, "nf", out.s, render_nf);
}

int cmd_lambda(CommonOpts& o, long window) {
  std::string type = take_type(o);
  std::string word;
  if (int rc = take_word(o, &word); rc != 0) return rc;
  if (word.empty()) return invalid("missing word (e.g. lambda C~3 \"x x x\")");
  CtxGuard guard;
  if (int rc = open_ctx(type, guard); rc != 0) return rc;
  StrGuard out;
  if (cg_status st = cg_lambda(guard.ctx, word.c_str(), window, &out.s);
      st != CG_OK) {
    return report_error(st, guard.ctx);
  }
  return render_and_deliver(o, "lambda", out.s, render_lambda);
}

int cmd_graph(CommonOpts& o, long radius, long window) {
  std::string type = take_type(o);
  std::string word;
  if (int rc = take_word(o, &word); rc != 0) return rc;
  if (word.empty()) word = "x";
  CtxGuard guard;
  if (int rc = open_ctx(type, guard); rc != 0) return rc;
  StrGuard out;
  if (cg_status st =
          cg_graph_dot(guard.ctx, word.c_str(), radius, window, &out.s);
      st != CG_OK) {
    return report_error(st, guard.ctx);
  }
  std::string fmt = o.format.empty() ? "dot" : o.format;
  if (fmt == "dot" || fmt == "text") return deliver(out.s, o.out_path);
  if (fmt != "json") {
    return invalid("format '" + fmt + "' is not available for graph");
  }
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["command"] = "graph";
  j["type"] = type;
  j["word"] = word;
  j["radius"] = radius;
  j["dot"] = std::string(out.s);
  return deliver(j.dump(2), o.out_path);
}

int cmd_words(CommonOpts& o) {
  std::string type = take_type(o);
  CtxGuard guard;
  if (int rc = open_ctx(type, guard); rc != 0) return rc;
  StrGuard out;
  if (cg_status st = cg_word_help(guard.ctx, &out.s); st != CG_OK) {
    return report_error(st, guard.ctx);
  }
  return deliver(out.s, o.out_path);
}

void add_common(CLI::App* cmd, CommonOpts& o, const char* pos_desc,
                bool with_word) {
  cmd->add_option("args", o.positionals, pos_desc);
  cmd->add_option("--type,-t", o.type,
                  "extended Dynkin type: B~n, C~n, D~n, E~6, E~7, E~8, F~4, G~2");
  if (with_word) {
    cmd->add_option("--word,-w", o.word,
                    "word in the atom language (see the words command)");
  }
  cmd->add_option("--format,-f", o.format, "output format: text or json");
  cmd->add_option("--out,-o", o.out_path, "write the output to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "crysgar: crystallographic Garside structures for euclidean "
      "Artin-Tits groups (exact arithmetic)"};
  app.require_subcommand(1);

  CommonOpts o_build, o_verify, o_nf, o_lambda, o_graph, o_words;
  VerifyFlags vf;
  long lambda_window = 0;
  long graph_radius = 1;
  long graph_window = 0;
  int rc = 0;

  CLI::App* build = app.add_subcommand(
      "build", "build a type and print its structural data");
  add_common(build, o_build, "type", false);
  build->callback([&] { rc = cmd_build(o_build); });

  CLI::App* verify = app.add_subcommand(
      "verify", "run verification checks (default: all)");
  add_common(verify, o_verify, "check ids and/or type", false);
  verify->add_option("--seed", vf.seed, "seed for randomized checks")
      ->default_val(1);
  verify->add_option("--window", vf.window,
                     "scan window override (0 = automatic)");
  verify->add_option("--power", vf.power,
                     "largest power of x exercised (0 = default 6)");
  verify->add_option("--instances", vf.instances,
                     "random instances per sampled check (0 = default 20)");
  verify->add_flag("--timings", vf.timings,
                   "include per-check seconds in the report");
  verify->add_flag("--list", vf.list, "print the known check ids and exit");
  verify->callback([&] { rc = cmd_verify(o_verify, vf); });

  CLI::App* nf = app.add_subcommand(
      "nf", "Garside normal form of a word");
  add_common(nf, o_nf, "type and word", true);
  nf->callback([&] { rc = cmd_nf(o_nf); });

  CLI::App* lambda = app.add_subcommand(
      "lambda", "axis projection of the vertex of a word");
  add_common(lambda, o_lambda, "type and word", true);
  lambda->add_option("--window", lambda_window,
                     "scan window (0 = automatic)");
  lambda->callback([&] { rc = cmd_lambda(o_lambda, lambda_window); });

  CLI::App* graph = app.add_subcommand(
      "graph", "DOT drawing of a ball in the coset graph");
  add_common(graph, o_graph, "type and center word (default center: x)",
             true);
  graph->add_option("--radius", graph_radius, "ball radius")->default_val(1);
  graph->add_option("--window", graph_window,
                    "vertical atom offset bound for edges (0 = 1)");
  graph->callback([&] { rc = cmd_graph(o_graph, graph_radius, graph_window); });

  CLI::App* words = app.add_subcommand(
      "words", "print the word language accepted by nf/lambda/graph");
  add_common(words, o_words, "type", false);
  words->callback([&] { rc = cmd_words(o_words); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int app_rc = app.exit(e);
    return app_rc == 0 ? 0 : static_cast<int>(CG_EINVAL);
  }
  return rc;
}
