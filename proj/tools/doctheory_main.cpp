// doctheory: check, run, analyze and generate document theories.
//
// Exit codes:
//   0   success / terminated / poly-bounded
//   1   the input does not parse or validate
//   2   chase aborted
//   3   chase ran out of fuel
//   4   analyze: terminating but not polynomially bounded
//   5   analyze: possibly non-terminating
//   64  usage error
//   74  I/O error

#include <algorithm>
#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "doctheory/analysis.hpp"
#include "doctheory/chase.hpp"
#include "doctheory/dsl.hpp"
#include "doctheory/reductions.hpp"
#include "doctheory/report.hpp"
#include "doctheory/theory.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace doctheory;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitAborted = 2;
constexpr int kExitFuel = 3;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

struct IoError {
  std::string message;
};

/// Input that failed to parse or validate; one formatted diagnostic per line.
struct InputError {
  std::vector<std::string> diagnostics;
};

struct UsageError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError{"error reading " + path};
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError{"cannot write " + path};
  out << text;
  out.flush();
  if (!out) throw IoError{"error writing " + path};
}

Theory load_theory(const std::string& path) {
  auto th = parse_theory(read_file(path));
  if (!th) {
    InputError err;
    for (const auto& d : th.error()) err.diagnostics.push_back(format_diagnostic(d, path));
    throw err;
  }
  return std::move(th).value();
}

Value load_values(const std::string& path, const Theory& th) {
  auto v = parse_value_sequence(read_file(path), th.precision);
  if (!v) throw InputError{{format_diagnostic(v.error(), path)}};
  return *v;
}

std::size_t count_documents(const Value& model) {
  std::unordered_set<Value, ValueHash> ids;
  for (const auto& t : model.elements()) {
    if (t.is_list() && t.size() > 0) ids.insert(t.head());
  }
  return ids.size();
}

int run_exit_code(Status s) {
  switch (s) {
    case Status::Aborted:
      return kExitAborted;
    case Status::FuelExhausted:
      return kExitFuel;
    default:
      return kExitOk;
  }
}

json model_json(const Value& model) {
  json out = json::array();
  for (const auto& t : model.elements()) out.push_back(to_string(t, {.nat_sugar = true}));
  return out;
}

// ------------------------------------------------------------------- check

struct CheckArgs {
  std::string file;
  bool json = false;
};

int cmd_check(const CheckArgs& a) {
  const std::string text = read_file(a.file);
  auto th = parse_theory(text);
  if (a.json) {
    json j{{"schema", "doctheory.check/1"}, {"file", a.file}, {"ok", th.has_value()}};
    json diags = json::array();
    if (!th) {
      for (const auto& d : th.error()) {
        diags.push_back({{"line", d.loc.line}, {"column", d.loc.column}, {"message", d.message}});
      }
    }
    j["diagnostics"] = std::move(diags);
    std::cout << j.dump() << "\n";
    return th ? kExitOk : kExitInvalid;
  }
  if (!th) {
    for (const auto& d : th.error()) std::cerr << format_diagnostic(d, a.file) << "\n";
    return kExitInvalid;
  }
  std::cout << a.file << ": ok, theory " << th->name << " (" << th->forms.size() << " forms, " << th->fields.size()
            << " fields, " << th->transactions.size() << " transactions, " << th->filters.size() << " filters, "
            << th->set_rules.size() + th->trans_rules.size() << " rules)\n";
  return kExitOk;
}

// --------------------------------------------------------------------- run

struct RunArgs {
  std::string theory;
  std::string queue;
  std::string model;
  std::string all;
  std::size_t fuel = 1'000'000;
  bool trace = false;
  bool dump_model = false;
  bool elide = false;
  bool json = false;
};

void print_summary(const ChaseState& s, const Theory& th, bool dump_model) {
  std::cout << "theory: " << th.name << "\n";
  std::cout << "status: " << to_string(s.status) << "\n";
  if (s.status == Status::Aborted) std::cout << "reason: " << to_string(s.reason) << ": " << s.message << "\n";
  std::cout << "steps: " << s.steps << "\n";
  std::cout << "model: " << s.model.size() << " tuples, " << count_documents(s.model) << " documents\n";
  std::cout << "queue: " << s.queue.size() << " instructions\n";
  if (dump_model) {
    std::cout << "model dump:\n" << print_value_lines(s.model);
  }
}

int run_one(const RunArgs& a) {
  const Theory th = load_theory(a.theory);
  const Value queue = load_values(a.queue, th);
  const Value model = a.model.empty() ? Value() : load_values(a.model, th);
  ChaseOptions opts;
  opts.fuel = a.fuel;
  opts.trace = a.trace;
  opts.elide_situations = a.elide;
  const ChaseRun run = run_chase(model, queue, th, opts);

  if (a.trace) {
    std::cout << trace_header_json(th, initial_state(model, queue)).dump() << "\n";
    for (const auto& e : run.trace) std::cout << trace_event_json(e, th).dump() << "\n";
  }
  if (a.trace || a.json) {
    json summary = run_summary_json(run.state);
    summary["theory"] = th.name;
    summary["documents"] = count_documents(run.state.model);
    if (a.dump_model) summary["model"] = model_json(run.state.model);
    std::cout << summary.dump() << "\n";
  } else {
    print_summary(run.state, th, a.dump_model);
  }
  return run_exit_code(run.state.status);
}

struct BatchItem {
  std::string theory_path;
  std::optional<std::string> queue_path;
  int exit = kExitOk;
  std::string line;
};

void run_batch_item(BatchItem& item, const RunArgs& a) {
  const std::string name = fs::path(item.theory_path).stem().string();
  if (!item.queue_path) {
    item.line = a.json ? json{{"schema", kTraceSchema}, {"type", "skipped"}, {"fixture", name}}.dump()
                       : name + ": skipped (no queue)";
    return;
  }
  try {
    const Theory th = load_theory(item.theory_path);
    const Value queue = load_values(*item.queue_path, th);
    ChaseOptions opts;
    opts.fuel = a.fuel;
    opts.elide_situations = a.elide;
    const ChaseState s = run_chase(Value(), queue, th, opts).state;
    item.exit = run_exit_code(s.status);
    if (a.json) {
      json j = run_summary_json(s);
      j["fixture"] = name;
      j["theory"] = th.name;
      j["documents"] = count_documents(s.model);
      item.line = j.dump();
    } else {
      item.line = name + ": " + to_string(s.status) + " steps=" + std::to_string(s.steps) +
                  " tuples=" + std::to_string(s.model.size()) + " documents=" + std::to_string(count_documents(s.model));
    }
  } catch (const InputError& e) {
    item.exit = kExitInvalid;
    item.line = name + ": invalid: " + (e.diagnostics.empty() ? std::string() : e.diagnostics.front());
  } catch (const IoError& e) {
    item.exit = kExitIo;
    item.line = name + ": " + e.message;
  }
}

/// Chases every `X.dth` with a sibling `X.queue` from the empty model.
/// Fixtures are independent, so they run on a small worker pool; output
/// keeps the sorted file order.
int run_all(const RunArgs& a) {
  std::error_code ec;
  if (!fs::is_directory(a.all, ec)) throw IoError{"not a directory: " + a.all};
  std::vector<BatchItem> items;
  for (const auto& entry : fs::directory_iterator(a.all, ec)) {
    if (entry.path().extension() != ".dth") continue;
    BatchItem item;
    item.theory_path = entry.path().string();
    fs::path q = entry.path();
    q.replace_extension(".queue");
    if (fs::exists(q)) item.queue_path = q.string();
    items.push_back(std::move(item));
  }
  if (ec) throw IoError{"cannot list " + a.all + ": " + ec.message()};
  std::sort(items.begin(), items.end(),
            [](const BatchItem& x, const BatchItem& y) { return x.theory_path < y.theory_path; });

  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(items.size(), std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < items.size(); i = next++) run_batch_item(items[i], a);
    });
  }
  for (auto& t : pool) t.join();

  int worst = kExitOk;
  for (const auto& item : items) {
    std::cout << item.line << "\n";
    worst = std::max(worst, item.exit);
  }
  return worst;
}

int cmd_run(const RunArgs& a) {
  if (!a.all.empty()) {
    if (!a.theory.empty() || !a.queue.empty() || !a.model.empty() || a.trace || a.dump_model) {
      throw UsageError{"--all takes no theory, queue, --model, --trace or --dump-model"};
    }
    return run_all(a);
  }
  if (a.theory.empty() || a.queue.empty()) throw UsageError{"run needs <theory.dth> <file.queue> or --all DIR"};
  return run_one(a);
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string theory;
  std::string queue;
  std::string model;
  bool json = false;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const Theory th = load_theory(a.theory);
  std::optional<Value> queue;
  std::optional<Value> model;
  if (!a.queue.empty()) queue = load_values(a.queue, th);
  if (!a.model.empty()) model = load_values(a.model, th);
  const Verdict v = analyze(th, model, queue);
  if (a.json) {
    std::cout << verdict_json(v, th).dump(2) << "\n";
  } else {
    std::cout << verdict_text(v, th);
  }
  return exit_code(v.verdict);
}

// --------------------------------------------------------------------- gen

void write_encoded(const Encoded& e, const std::string& prefix) {
  const std::string dth = prefix + ".dth";
  const std::string queue = prefix + ".queue";
  write_file(dth, print_theory(e.theory));
  write_file(queue, print_value_lines(e.queue));
  std::cout << "wrote " << dth << " and " << queue << " (" << e.queue.size() << " instructions)\n";
}

int cmd_gen_tm(const std::string& machine, const std::string& prefix) {
  auto tm = parse_tm(read_file(machine));
  if (!tm) throw InputError{{format_diagnostic(tm.error(), machine)}};
  const auto problems = check_tm(*tm);
  if (!problems.empty()) {
    InputError err;
    for (const auto& p : problems) err.diagnostics.push_back(machine + ": error: " + p);
    throw err;
  }
  auto enc = encode_tm(*tm);
  if (!enc) throw InputError{{machine + ": error: " + enc.error().message}};
  std::string stem = fs::path(machine).stem().string();
  const bool plain = !stem.empty() && std::all_of(stem.begin(), stem.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
  if (plain) enc->theory.name = "tm_" + stem;
  write_encoded(*enc, prefix);
  return kExitOk;
}

int cmd_gen_exp(const ExpParams& p, const std::string& prefix) {
  if (p.k < 1) throw UsageError{"--k must be at least 1"};
  write_encoded(exp_theory(p), prefix);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Document theories: validate, chase, analyze, generate."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "doctheory 1.0.0");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Parse and validate a theory");
  check_cmd->add_option("file", check.file, "Theory file (.dth)")->required();
  check_cmd->add_flag("--json", check.json, "Machine-readable output");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Chase a queue against a theory");
  run_cmd->add_option("theory", run.theory, "Theory file (.dth)");
  run_cmd->add_option("queue", run.queue, "Queue file (.queue)");
  run_cmd->add_option("--model", run.model, "Initial model file (one tuple per value)");
  run_cmd->add_option("--fuel", run.fuel, "Maximum number of processed instructions")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  run_cmd->add_flag("--trace", run.trace, "Emit the step trace as JSON lines");
  run_cmd->add_flag("--dump-model", run.dump_model, "Print the final model, one tuple per line, newest last");
  run_cmd->add_flag("--elide-situations", run.elide, "Store <> instead of the situation history");
  run_cmd->add_flag("--json", run.json, "Machine-readable summary");
  run_cmd->add_option("--all", run.all, "Chase every X.dth with a sibling X.queue in a directory");

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Static analysis and termination verdict");
  analyze_cmd->add_option("theory", an.theory, "Theory file (.dth)")->required();
  analyze_cmd->add_option("--queue", an.queue, "Queue file; enables effect bounds");
  analyze_cmd->add_option("--model", an.model, "Initial model file for effect bounds");
  analyze_cmd->add_flag("--json", an.json, "Machine-readable verdict");

  auto* gen_cmd = app.add_subcommand("gen", "Generate reduction fixtures");
  gen_cmd->require_subcommand(1);
  std::string tm_file;
  std::string tm_prefix;
  auto* gen_tm = gen_cmd->add_subcommand("tm", "Encode a Turing machine");
  gen_tm->add_option("machine", tm_file, "Machine file (.tm)")->required();
  gen_tm->add_option("-o,--output", tm_prefix, "Output prefix for .dth and .queue")->required();
  ExpParams exp;
  std::string exp_prefix;
  auto* gen_exp = gen_cmd->add_subcommand("exp", "Exponential blowup family");
  gen_exp->add_option("--k", exp.k, "Tower height")->required();
  gen_exp->add_option("--n", exp.n, "Initial Form_0 documents")->required();
  gen_exp->add_option("-o,--output", exp_prefix, "Output prefix for .dth and .queue")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check_cmd) return cmd_check(check);
    if (*run_cmd) return cmd_run(run);
    if (*analyze_cmd) return cmd_analyze(an);
    if (*gen_tm) return cmd_gen_tm(tm_file, tm_prefix);
    if (*gen_exp) return cmd_gen_exp(exp, exp_prefix);
  } catch (const UsageError& e) {
    std::cerr << "doctheory: " << e.message << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "doctheory: " << e.message << "\n";
    return kExitIo;
  } catch (const InputError& e) {
    for (const auto& d : e.diagnostics) std::cerr << d << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}
