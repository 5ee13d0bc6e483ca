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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "helam/gen.h"
#include "helam/interp.h"
#include "helam/mask.h"
#include "helam/network.h"
#include "helam/print.h"
#include "helam/project.h"
#include "helam/syntax.h"
#include "helam/typecheck.h"

namespace helam {
namespace {

struct Program {
  std::string name;
  std::string text;
  ExprP expr;
  PartySet theta;
};

// Every corpus program that is accepted, in file name order.
const std::vector<Program>& Corpus() {
  static const std::vector<Program> programs = [] {
    std::vector<std::filesystem::path> files;
    for (const auto& entry :
         std::filesystem::directory_iterator(HELAM_CORPUS_DIR)) {
      if (entry.path().extension() == ".hll") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<Program> out;
    for (const auto& path : files) {
      std::ifstream in(path);
      std::stringstream text;
      text << in.rdbuf();
      DesugarResult d = LoadProgram(text.str());
      if (!d.ok()) continue;
      if (!Typecheck(TypeEnv{{}, d.theta}, d.expr).ok()) continue;
      out.push_back({path.stem().string(), text.str(), d.expr, d.theta});
    }
    return out;
  }();
  return programs;
}

void CorpusArgs(benchmark::internal::Benchmark* b) {
  for (size_t i = 0; i < Corpus().size(); ++i) b->Arg(static_cast<int64_t>(i));
}

const Program& Pick(benchmark::State& state) {
  const Program& p = Corpus()[static_cast<size_t>(state.range(0))];
  state.SetLabel(p.name);
  return p;
}

void BM_ParseDesugar(benchmark::State& state) {
  const Program& p = Pick(state);
  for (auto _ : state) {
    DesugarResult d = LoadProgram(p.text);
    benchmark::DoNotOptimize(d.expr);
  }
}
BENCHMARK(BM_ParseDesugar)->Apply(CorpusArgs);

void BM_Typecheck(benchmark::State& state) {
  const Program& p = Pick(state);
  for (auto _ : state) {
    TypeResult r = Typecheck(TypeEnv{{}, p.theta}, p.expr);
    benchmark::DoNotOptimize(r.type);
  }
}
BENCHMARK(BM_Typecheck)->Apply(CorpusArgs);

void BM_CentralRun(benchmark::State& state) {
  const Program& p = Pick(state);
  for (auto _ : state) {
    RunResult r = Run(p.expr);
    benchmark::DoNotOptimize(r.final_expr);
  }
}
BENCHMARK(BM_CentralRun)->Apply(CorpusArgs);

void BM_ProjectAll(benchmark::State& state) {
  const Program& p = Pick(state);
  for (auto _ : state) {
    Network n = ProjectAll(p.expr);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_ProjectAll)->Apply(CorpusArgs);

void BM_SimulateSeeded(benchmark::State& state) {
  const Program& p = Pick(state);
  Network n = ProjectAll(p.expr);
  SimOptions opts;
  for (auto _ : state) {
    SimResult r = Simulate(n, opts);
    benchmark::DoNotOptimize(r.final_network);
    ++opts.seed;
  }
}
BENCHMARK(BM_SimulateSeeded)->Apply(CorpusArgs);

void BM_SimulateExhaustive(benchmark::State& state) {
  const Program& p = Pick(state);
  Network n = ProjectAll(p.expr);
  SimOptions opts;
  opts.mode = SimOptions::Mode::kExhaustive;
  for (auto _ : state) {
    SimResult r = Simulate(n, opts);
    benchmark::DoNotOptimize(r.states);
  }
}
BENCHMARK(BM_SimulateExhaustive)->Apply(CorpusArgs);

// Generated programs at the given depth, 64 seeds per iteration.
std::vector<GenInstance> Generated(int depth) {
  GenConfig cfg;
  cfg.max_depth = depth;
  std::vector<GenInstance> out;
  for (uint64_t seed = 1; seed <= 64; ++seed) {
    out.push_back(GenWellTyped(cfg, seed));
  }
  return out;
}

void BM_GenerateWellTyped(benchmark::State& state) {
  GenConfig cfg;
  cfg.max_depth = static_cast<int>(state.range(0));
  uint64_t seed = 1;
  for (auto _ : state) {
    GenInstance g = GenWellTyped(cfg, seed++);
    benchmark::DoNotOptimize(g.expr);
  }
}
BENCHMARK(BM_GenerateWellTyped)->DenseRange(2, 6, 2);

void BM_TypecheckGenerated(benchmark::State& state) {
  std::vector<GenInstance> gs = Generated(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (const GenInstance& g : gs) {
      TypeResult r = Typecheck(TypeEnv{{}, g.theta}, g.expr);
      benchmark::DoNotOptimize(r.type);
    }
  }
  state.SetItemsProcessed(state.iterations() * gs.size());
}
BENCHMARK(BM_TypecheckGenerated)->DenseRange(2, 6, 2);

void BM_ProjectSimulateGenerated(benchmark::State& state) {
  std::vector<GenInstance> gs = Generated(static_cast<int>(state.range(0)));
  SimOptions opts;
  for (auto _ : state) {
    for (const GenInstance& g : gs) {
      SimResult r = Simulate(ProjectAll(g.expr), opts);
      benchmark::DoNotOptimize(r.final_network);
    }
  }
  state.SetItemsProcessed(state.iterations() * gs.size());
}
BENCHMARK(BM_ProjectSimulateGenerated)->DenseRange(2, 6, 2);

void BM_MaskType(benchmark::State& state) {
  std::vector<GenInstance> gs = Generated(4);
  for (auto _ : state) {
    for (const GenInstance& g : gs) {
      for (const PartyName& p : g.theta) {
        benchmark::DoNotOptimize(MaskType(g.type, PartySet::Of(std::vector<PartyName>{p})));
      }
    }
  }
}
BENCHMARK(BM_MaskType);

}  // namespace
}  // namespace helam

BENCHMARK_MAIN();
