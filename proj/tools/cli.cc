// Copyright 2026 The helam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "helam/interp.h"
#include "helam/metatheory.h"
#include "helam/network.h"
#include "helam/print.h"
#include "helam/project.h"
#include "helam/syntax.h"
#include "helam/typecheck.h"

namespace helam {
namespace {

using nlohmann::json;

struct Loaded {
  ExprP expr;
  PartySet theta;
  ChorTypeP type;
};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  bool json_diagnostics = false;

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

  std::optional<std::string> Read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      err_ << fmt::format("helam: cannot read {}\n", path);
      return std::nullopt;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
  }

  void Diagnose(const std::string& path, std::string_view kind,
                const SourceSpan& span, const std::string& detail) {
    if (json_diagnostics) {
      json record = {{"file", path},     {"kind", kind},
                     {"line", span.line}, {"col", span.col},
                     {"start", span.start}, {"end", span.end},
                     {"detail", detail}};
      err_ << record.dump() << "\n";
      return;
    }
    if (span.known()) {
      err_ << fmt::format("{}:{}:{}: {}: {}\n", path, span.line, span.col, kind,
                          detail);
    } else {
      err_ << fmt::format("{}: {}: {}\n", path, kind, detail);
    }
  }

  void Diagnose(const std::string& path, const TypeError& e) {
    Diagnose(path, TypeErrorKindName(e.kind), e.span, e.detail);
  }

  // Parses, desugars and typechecks; returns the exit code on failure.
  std::variant<Loaded, int> Load(const std::string& path,
                                 const std::string& theta_flag) {
    std::optional<PartySet> theta;
    if (!theta_flag.empty()) {
      std::vector<PartyName> names;
      std::stringstream in(theta_flag);
      for (std::string name; std::getline(in, name, ',');) {
        name.erase(0, name.find_first_not_of(' '));
        name.erase(name.find_last_not_of(' ') + 1);
        names.push_back(name);
      }
      try {
        theta = PartySet::Of(std::move(names));
      } catch (const std::invalid_argument& e) {
        err_ << fmt::format("helam: bad --theta: {}\n", e.what());
        return kExitUsage;
      }
    }
    std::optional<std::string> text = Read(path);
    if (!text) return kExitUsage;
    DesugarResult d = LoadProgram(*text, theta);
    if (d.error) {
      Diagnose(path,
               d.error->kind == SyntaxError::Kind::kParse ? "ParseError"
                                                          : "DesugarError",
               d.error->span, d.error->message);
      return kExitRejected;
    }
    if (d.type_error) {
      Diagnose(path, *d.type_error);
      return kExitRejected;
    }
    TypeResult t = Typecheck(TypeEnv{{}, d.theta}, d.expr);
    if (!t.ok()) {
      Diagnose(path, *t.error);
      return kExitRejected;
    }
    return Loaded{d.expr, d.theta, t.type};
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

struct Flags {
  std::string file;
  std::string theta;
  bool trace = false;
  std::string party;
  bool all = false;
  std::string out_dir;
  std::optional<uint64_t> seed;
  bool exhaustive = false;
  std::string trace_file;
  size_t budget = 100000;
  size_t fuel = 100000;
  size_t instances = 1000;
  uint64_t meta_seed = 1;
  std::string report;
  size_t mask_pairs = 10000;
  size_t runs = 100;
  int threads = 0;
  bool no_shrink = false;
};

int Check(Session& s, const Flags& f) {
  auto loaded = s.Load(f.file, f.theta);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  const Loaded& l = std::get<Loaded>(loaded);
  s.out() << Print(l.type) << "\n";
  return kExitOk;
}

int RunCommand(Session& s, const Flags& f) {
  auto loaded = s.Load(f.file, f.theta);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  const Loaded& l = std::get<Loaded>(loaded);
  RunResult r = Run(l.expr, DefaultFuel(*l.expr), f.trace);
  for (const std::string& line : r.trace) s.out() << line << "\n";
  switch (r.status) {
    case RunResult::Status::kValue:
      s.out() << Print(r.final_expr) << "\n";
      return kExitOk;
    case RunResult::Status::kStuck:
      s.err() << fmt::format("{}: stuck after {} steps: {}\n", f.file, r.steps,
                             r.reason);
      return kExitRejected;
    case RunResult::Status::kFuelExhausted:
      s.err() << fmt::format("{}: no value after {} steps\n", f.file, r.steps);
      return kExitRejected;
  }
  return kExitRejected;
}

int ProjectCommand(Session& s, const Flags& f) {
  if (f.all == !f.party.empty()) {
    s.err() << "helam: project needs exactly one of --party or --all\n";
    return kExitUsage;
  }
  auto loaded = s.Load(f.file, f.theta);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  const Loaded& l = std::get<Loaded>(loaded);
  if (!f.all) {
    s.out() << Print(Project(l.expr, f.party)) << "\n";
    return kExitOk;
  }
  Network n = ProjectAll(l.expr);
  if (f.out_dir.empty()) {
    s.out() << PrintNetwork(n);
    return kExitOk;
  }
  std::error_code ec;
  std::filesystem::create_directories(f.out_dir, ec);
  for (const auto& [p, b] : n) {
    std::filesystem::path path = std::filesystem::path(f.out_dir) / (p + ".hlp");
    std::ofstream file(path);
    if (!file) {
      s.err() << fmt::format("helam: cannot write {}\n", path.string());
      return kExitUsage;
    }
    file << Print(b) << "\n";
  }
  return kExitOk;
}

int SimulateCommand(Session& s, const Flags& f) {
  if (f.exhaustive && f.seed) {
    s.err() << "helam: --seed and --exhaustive are exclusive\n";
    return kExitUsage;
  }
  auto loaded = s.Load(f.file, f.theta);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  const Loaded& l = std::get<Loaded>(loaded);
  SimOptions opts;
  opts.mode = f.exhaustive ? SimOptions::Mode::kExhaustive
                           : SimOptions::Mode::kSeeded;
  opts.seed = f.seed.value_or(0);
  opts.fuel = f.fuel;
  opts.state_budget = f.budget;
  SimResult r = Simulate(ProjectAll(l.expr), opts);

  if (!f.trace_file.empty() && !f.exhaustive) {
    std::vector<std::string> lines = RecordTrace(r.steps);
    if (f.trace_file == "-") {
      for (const std::string& line : lines) s.out() << line << "\n";
    } else {
      std::ofstream file(f.trace_file);
      if (!file) {
        s.err() << fmt::format("helam: cannot write {}\n", f.trace_file);
        return kExitUsage;
      }
      for (const std::string& line : lines) file << line << "\n";
    }
  }
  switch (r.status) {
    case SimResult::Status::kDone:
      break;
    case SimResult::Status::kDeadlock:
      s.err() << fmt::format("{}: {}\n", f.file, r.deadlock->ToString());
      return kExitRejected;
    case SimResult::Status::kFuelExhausted:
      s.err() << fmt::format("{}: out of fuel after {} steps\n", f.file,
                             r.steps.size());
      return kExitRejected;
    case SimResult::Status::kBudgetExhausted:
      s.err() << fmt::format("{}: more than {} states\n", f.file, f.budget);
      return kExitRejected;
  }
  s.out() << PrintNetwork(r.final_network);
  if (f.exhaustive) {
    s.out() << fmt::format(
        "states: {}\nterminals: {}\nrendezvous: {}..{}\nlongest run: {}\n",
        r.states, r.terminals.size(), r.min_rendezvous, r.max_rendezvous,
        r.max_steps);
  } else {
    s.out() << fmt::format("steps: {}\nrendezvous: {}\n", r.steps.size(),
                           r.min_rendezvous);
  }
  return kExitOk;
}

int FmtCommand(Session& s, const Flags& f) {
  std::optional<std::string> text = s.Read(f.file);
  if (!text) return kExitUsage;
  DesugarResult d = LoadProgram(*text);
  if (d.error) {
    s.Diagnose(f.file,
               d.error->kind == SyntaxError::Kind::kParse ? "ParseError"
                                                          : "DesugarError",
               d.error->span, d.error->message);
    return kExitRejected;
  }
  if (d.type_error) {
    s.Diagnose(f.file, *d.type_error);
    return kExitRejected;
  }
  s.out() << Print(d.expr) << "\n";
  return kExitOk;
}

json ReportJson(const MetatheoryOptions& opts, const MetatheoryReport& r) {
  json props = json::array();
  for (const PropertyReport& p : r.properties) {
    json failures = json::array();
    for (const PropertyFailure& fail : p.failures) {
      failures.push_back({{"seed", fail.seed},
                          {"counterexample", fail.counterexample},
                          {"message", fail.message}});
    }
    props.push_back({{"property", p.name},
                     {"instances", p.instances},
                     {"passes", p.passes},
                     {"failure_count", p.failure_count},
                     {"failures", failures}});
  }
  json coverage = json::object();
  for (size_t k = 0; k < kNumTypingRules; ++k) {
    coverage[std::string(TypingRuleName(static_cast<TypingRule>(k)))] =
        r.coverage.counts[k];
  }
  return {{"seed", opts.seed},
          {"instances", opts.instances},
          {"mask_pairs", opts.mask_pairs},
          {"ok", r.ok()},
          {"properties", props},
          {"rule_coverage", coverage},
          {"exhaustive_instances", r.exhaustive_instances},
          {"instance_seconds", r.instance_seconds},
          {"masking_seconds", r.masking_seconds}};
}

int MetatheoryCommand(Session& s, const Flags& f) {
  MetatheoryOptions opts;
  opts.instances = f.instances;
  opts.seed = f.meta_seed;
  opts.mask_pairs = f.mask_pairs;
  opts.seeded_runs = f.runs;
  opts.shrink = !f.no_shrink;
  opts.threads = f.threads > 0
                     ? f.threads
                     : static_cast<int>(
                           std::max(1u, std::thread::hardware_concurrency()));
  MetatheoryReport r = CheckMetatheory(opts);
  for (const PropertyReport& p : r.properties) {
    s.out() << fmt::format("{:<22} {:>6}/{:<6} {}\n", p.name, p.passes,
                           p.instances, p.ok() ? "ok" : "FAIL");
    for (const PropertyFailure& fail : p.failures) {
      s.out() << fmt::format("  seed {}: {}\n    {}\n", fail.seed, fail.message,
                             fail.counterexample);
    }
  }
  s.out() << fmt::format("exhaustive instances: {}\ntime: {:.2f}s + {:.2f}s\n",
                         r.exhaustive_instances, r.instance_seconds,
                         r.masking_seconds);
  if (!f.report.empty()) {
    std::ofstream file(f.report);
    if (!file) {
      s.err() << fmt::format("helam: cannot write {}\n", f.report);
      return kExitUsage;
    }
    file << ReportJson(opts, r).dump(2) << "\n";
  }
  return r.ok() ? kExitOk : kExitRejected;
}

}  // namespace

int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Choreographies with multiply-located values", "helam"};
  app.require_subcommand(1);
  Session session(out, err);
  Flags f;
  int code = kExitOk;

  auto file_command = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", f.file, "Source file (.hll)")->required();
    sub->add_option("--theta", f.theta,
                    "Participants, comma separated (default: inferred)");
    sub->add_flag("--json", session.json_diagnostics,
                  "Diagnostics as JSON lines");
    return sub;
  };

  file_command("check", "Typecheck and print the program's type")
      ->callback([&] { code = Check(session, f); });

  CLI::App* run = file_command("run", "Evaluate with the central semantics");
  run->add_flag("--trace", f.trace, "Print each rule and redex");
  run->callback([&] { code = RunCommand(session, f); });

  CLI::App* project = file_command("project", "Endpoint projection");
  project->add_option("--party", f.party, "Project onto one party");
  project->add_flag("--all", f.all, "Project onto every role");
  project->add_option("--out", f.out_dir, "Write <party>.hlp files here");
  project->callback([&] { code = ProjectCommand(session, f); });

  CLI::App* simulate = file_command("simulate", "Run the projected network");
  simulate->add_option("--seed", f.seed, "Scheduler seed (default 0)");
  simulate->add_flag("--exhaustive", f.exhaustive,
                     "Explore every interleaving");
  simulate->add_option("--trace", f.trace_file,
                       "Write rendezvous steps to a file ('-' for stdout)");
  simulate->add_option("--budget", f.budget, "State budget for --exhaustive");
  simulate->add_option("--fuel", f.fuel, "Step budget for a seeded run");
  simulate->callback([&] { code = SimulateCommand(session, f); });

  CLI::App* format = app.add_subcommand("fmt", "Print the desugared program");
  format->add_option("file", f.file, "Source file (.hll)")->required();
  format->callback([&] { code = FmtCommand(session, f); });

  CLI::App* meta = app.add_subcommand(
      "test-metatheory", "Check the metatheory on generated programs");
  meta->add_option("--instances", f.instances, "Generated programs");
  meta->add_option("--seed", f.meta_seed, "Seed of the first instance");
  meta->add_option("--report", f.report, "Write a JSON report");
  meta->add_option("--mask-pairs", f.mask_pairs, "Generated masking cases");
  meta->add_option("--runs", f.runs, "Seeded network runs per instance");
  meta->add_option("--threads", f.threads, "Worker threads (default: all)");
  meta->add_flag("--no-shrink", f.no_shrink, "Report unshrunk failures");
  meta->callback([&] { code = MetatheoryCommand(session, f); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int status = app.exit(e, out, err);
    return status == 0 ? kExitOk : kExitUsage;
  }
  return code;
}

}  // namespace helam
