// hallforge: exact verification of Hall algebra and double-relation identities.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hallforge/errors.hpp"
#include "hallforge/json_io.hpp"
#include "hallforge/verify.hpp"

namespace {

using nlohmann::json;
using namespace hallforge;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

constexpr const char* kCacheEnv = "HALLFORGE_CACHE_DIR";

struct Options {
  RunConfig config;
  std::string cache_dir;
  bool no_cache = false;
  std::string complex;              // decompose
  std::vector<std::string> symbols;  // mul
  std::string algebra = "hall";      // mul
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--quiver", o.config.quiver, "Fixture name (a1, a2, kronecker) or quiver JSON file")
      ->capture_default_str();
  cmd->add_option("--q", o.config.q, "Field order")->capture_default_str();
  cmd->add_option("--max-dim", o.config.max_total_dim, "Bound on total dimension")->capture_default_str();
  cmd->add_option("--kgrid", o.config.kgrid, "K-class grid radius")->capture_default_str();
  cmd->add_option("--budget", o.config.budget, "Per-enumeration candidate budget")->capture_default_str();
  cmd->add_option("--cache-dir", o.cache_dir, std::string("Count cache directory (default: $") + kCacheEnv + ")");
  cmd->add_flag("--no-cache", o.no_cache, "Disable the count cache");
  cmd->add_option("--out", o.config.output, "Write the JSON report here instead of stdout");
  cmd->add_option("--threads", o.config.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

std::shared_ptr<CountStore> open_store(Options& o) {
  if (o.no_cache) return nullptr;
  std::string dir = o.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv(kCacheEnv)) dir = env;
  if (dir.empty()) return nullptr;
  o.config.cache_dir = dir;
  return std::make_shared<FileCountStore>(dir);
}

void emit(const json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

json runtime_block(const std::shared_ptr<CountStore>& store) {
  json cache = nullptr;
  if (store) {
    const auto st = store->stats();
    cache = {{"hits", st.hits}, {"misses", st.misses}, {"writes", st.writes}, {"corrupt", st.corrupt}};
  }
  return {{"cache", cache}};
}

json header(const Workspace& ws, const char* command) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"config", ws.config_json()}};
}

int cmd_verify(Options& o) {
  validate(o.config, true);
  auto store = open_store(o);
  Workspace ws(o.config, store);
  auto outcome = run_verify(ws);
  emit(outcome.report, o.config.output);
  switch (outcome.status) {
    case RunStatus::pass:
      return kExitPass;
    case RunStatus::fail:
      return kExitFail;
    case RunStatus::budget_exceeded:
      return kExitBudget;
  }
  return kExitFail;
}

int cmd_table(Options& o) {
  validate(o.config, false);
  auto store = open_store(o);
  Workspace ws(o.config, store);
  json report = header(ws, "table");
  report["tables"] = export_tables(ws.dh(), o.config.max_total_dim);
  report["runtime"] = runtime_block(store);
  emit(report, o.config.output);
  return kExitPass;
}

json read_complex_literal(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg.front() != '{') {
    std::ifstream f(arg);
    if (!f) throw UsageError("cannot read complex literal " + arg);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& ex) {
    throw UsageError(std::string("complex literal is not valid JSON: ") + ex.what());
  }
}

int cmd_decompose(Options& o) {
  validate(o.config, false);
  auto store = open_store(o);
  Workspace ws(o.config, store);
  const auto& cx = ws.complexes();
  TwoComplex m;
  try {
    m = complex_from_json(cx, read_complex_literal(o.complex));
  } catch (const InvalidComplex& ex) {
    throw UsageError(ex.what());
  }
  const auto d = cx.decompose(m);
  json report = header(ws, "decompose");
  report["complex"] = complex_to_json(cx, m);
  report["homology"] = {d.witness.a.to_string(), d.witness.b.to_string()};
  report["witness"] = to_json(d.witness);
  report["exponent"] = d.exponent;
  report["normal_form"] = to_json(ws.dh().normalize(m));
  report["roundtrip_isomorphic"] = cx.is_isomorphic(cx.reassemble(d.witness), m);
  report["runtime"] = runtime_block(store);
  emit(report, o.config.output);
  return kExitPass;
}

/// E[label], F[label], K(..), K*(..) for the dh algebra.
DHElement parse_dh_symbol(const DoubleAlgebra& dh, const std::string& s, std::size_t n) {
  if (s.size() > 2 && (s[0] == 'E' || s[0] == 'F') && s[1] == '[' && s.back() == ']') {
    const IsoLabel a = IsoLabel::parse(s.substr(2, s.size() - 3));
    if (a.dims.size() != n) throw std::invalid_argument("wrong number of vertices: " + s);
    return s[0] == 'E' ? dh.e(a) : dh.f(a);
  }
  if (s.rfind("K*", 0) == 0) return dh.k_minus(parse_hall_basis(s.substr(0, 1) + s.substr(2), n).k);
  if (s.rfind("K", 0) == 0) return dh.k_plus(parse_hall_basis(s, n).k);
  throw std::invalid_argument("unrecognized symbol: " + s);
}

int cmd_mul(Options& o) {
  validate(o.config, false);
  auto store = open_store(o);
  Workspace ws(o.config, store);
  const std::size_t n = ws.category().quiver().vertex_count();
  json report = header(ws, "mul");
  report["algebra"] = o.algebra;
  report["factors"] = o.symbols;
  try {
    if (o.algebra == "dh") {
      std::vector<DHElement> fs;
      for (const auto& s : o.symbols) fs.push_back(parse_dh_symbol(ws.dh(), s, n));
      report["result"] = to_json(ws.dh().multiply(fs));
    } else {
      const auto& hall = ws.hall();
      HallElement acc = hall.unit();
      for (const auto& s : o.symbols) {
        const HallElement x = HallElement::single(parse_hall_basis(s, n));
        acc = o.algebra == "diamond" ? hall.diamond(acc, x) : hall.star(acc, x);
      }
      report["result"] = to_json(acc);
    }
  } catch (const ContractViolation& ex) {
    throw UsageError(ex.what());
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  report["runtime"] = runtime_block(store);
  emit(report, o.config.output);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hallforge: exact Hall algebra and double-relation verification"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "Run verification suites and write a JSON report");
  add_common(verify, o);
  verify->add_option("--suite", o.config.suites, "Suite to run (repeatable)")
      ->check(CLI::IsMember(known_suites()));

  auto* table = app.add_subcommand("table", "Export multiplication, coproduct and pairing tables");
  add_common(table, o);

  auto* decompose = app.add_subcommand("decompose", "Decompose a complex given as a JSON literal or file");
  add_common(decompose, o);
  decompose->add_option("complex", o.complex, "Complex literal (inline JSON or path)")->required();

  auto* mul = app.add_subcommand("mul", "Multiply symbols left to right");
  add_common(mul, o);
  mul->add_option("--algebra", o.algebra, "hall (twisted), diamond or dh")
      ->check(CLI::IsMember({"hall", "diamond", "dh"}))
      ->capture_default_str();
  // Symbols are taken raw: a vector option would split "[(1,0)#0]" as an inline list.
  mul->allow_extras();
  mul->footer("Symbols such as [(1,0)#0], K(0,1), E[(1,0)#0], K*(1,0) are multiplied left to right.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*table) return cmd_table(o);
    if (*decompose) return cmd_decompose(o);
    if (*mul) {
      o.symbols = mul->remaining();
      if (o.symbols.empty()) throw UsageError("mul needs at least one symbol");
      return cmd_mul(o);
    }
  } catch (const UsageError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
