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

#include "test_util.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "helam/interp.h"
#include "helam/print.h"
#include "helam/project.h"

#ifndef HELAM_CORPUS_DIR
#error "HELAM_CORPUS_DIR must point at the corpus directory"
#endif

namespace helam::testing {

namespace {

ExprP Load(std::string_view text, std::optional<PartySet> theta) {
  DesugarResult d = LoadProgram(text, std::move(theta));
  if (d.error) {
    throw std::runtime_error("syntax: " + d.error->ToString() + " in " +
                             std::string(text));
  }
  if (d.type_error) {
    throw std::runtime_error("type: " + d.type_error->ToString() + " in " +
                             std::string(text));
  }
  return d.expr;
}

}  // namespace

ExprP Chor(std::string_view text) { return Load(text, std::nullopt); }

ExprP Chor(std::string_view text, const PartySet& theta) {
  return Load(text, theta);
}

ChorTypeP Type(std::string_view text) {
  std::string error;
  std::optional<ChorTypeP> t = ParseType(text, &error);
  if (!t) throw std::runtime_error("type syntax: " + error);
  return *t;
}

PartySet Parties(std::initializer_list<std::string_view> names) {
  return PartySet::Of(names);
}

std::string CorpusPath(std::string_view name) {
  return (std::filesystem::path(HELAM_CORPUS_DIR) / std::string(name))
      .string();
}

std::string ReadCorpus(std::string_view name) {
  std::ifstream in(CorpusPath(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing corpus file " + std::string(name));
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<std::string> CorpusFiles() {
  std::vector<std::string> names;
  for (const auto& entry :
       std::filesystem::directory_iterator(HELAM_CORPUS_DIR)) {
    if (entry.path().extension() == ".hll") {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

Program LoadCorpus(std::string_view name) {
  DesugarResult d = LoadProgram(ReadCorpus(name));
  if (!d.ok()) throw std::runtime_error("corpus file rejected: " +
                                        std::string(name));
  return Program{d.expr, d.theta};
}

std::optional<ChorTypeP> RefMaskType(const ChorTypeP& t,
                                     const PartySet& theta) {
  switch (t->kind) {
    case ChorType::Kind::kData: {
      std::vector<PartyName> kept;
      for (const PartyName& p : t->owners) {
        if (theta.Contains(p)) kept.push_back(p);
      }
      if (kept.empty()) return std::nullopt;
      return ChorType::Data(t->data, PartySet::Of(kept));
    }
    case ChorType::Kind::kFun:
      for (const PartyName& p : t->owners) {
        if (!theta.Contains(p)) return std::nullopt;
      }
      return t;
    case ChorType::Kind::kTuple: {
      std::vector<ChorTypeP> elems;
      for (const ChorTypeP& e : t->elems) {
        std::optional<ChorTypeP> m = RefMaskType(e, theta);
        if (!m) return std::nullopt;
        elems.push_back(*m);
      }
      return ChorType::Tuple(elems);
    }
  }
  return std::nullopt;
}

std::optional<ValueP> RefMaskValue(const ValueP& v, const PartySet& theta) {
  auto inside = [&](const PartySet& s) {
    for (const PartyName& p : s) {
      if (!theta.Contains(p)) return false;
    }
    return true;
  };
  auto elems = [&]() -> std::optional<std::vector<ValueP>> {
    std::vector<ValueP> out;
    for (const ValueP& e : v->elems) {
      std::optional<ValueP> m = RefMaskValue(e, theta);
      if (!m) return std::nullopt;
      out.push_back(*m);
    }
    return out;
  };
  switch (v->kind) {
    case Value::Kind::kVar:
      return v;
    case Value::Kind::kLambda:
    case Value::Kind::kFst:
    case Value::Kind::kSnd:
    case Value::Kind::kLookup:
      if (!inside(v->parties)) return std::nullopt;
      return v;
    case Value::Kind::kCom:
      if (!theta.Contains(v->name) || !inside(v->parties)) return std::nullopt;
      return v;
    case Value::Kind::kUnit: {
      std::vector<PartyName> kept;
      for (const PartyName& p : v->parties) {
        if (theta.Contains(p)) kept.push_back(p);
      }
      if (kept.empty()) return std::nullopt;
      return Value::Unit(PartySet::Of(kept));
    }
    case Value::Kind::kInl:
    case Value::Kind::kInr:
    case Value::Kind::kPair:
    case Value::Kind::kVec: {
      std::optional<std::vector<ValueP>> es = elems();
      if (!es) return std::nullopt;
      if (v->kind == Value::Kind::kInl) return Value::Inl((*es)[0]);
      if (v->kind == Value::Kind::kInr) return Value::Inr((*es)[0]);
      if (v->kind == Value::Kind::kPair) return Value::Pair((*es)[0], (*es)[1]);
      return Value::Vec(*es);
    }
  }
  return std::nullopt;
}

size_t CentralComSteps(const ExprP& e) {
  RunResult r = Run(e, DefaultFuel(*e), /*record_trace=*/true);
  if (!r.ok()) throw std::runtime_error("central run failed: " + r.reason);
  size_t n = 0;
  for (const std::string& line : r.trace) {
    if (line.rfind("COM", 0) == 0) ++n;
  }
  return n;
}

size_t ComTokens(std::string_view text) {
  size_t n = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    for (size_t at = line.find("com["); at != std::string::npos;
         at = line.find("com[", at + 1)) {
      bool word_start = at == 0 || !(std::isalnum(line[at - 1]) ||
                                     line[at - 1] == '_');
      if (word_start) ++n;
    }
  }
  return n;
}

std::optional<size_t> SeededRendezvous(const ExprP& e, uint64_t seed) {
  SimOptions opts;
  opts.seed = seed;
  SimResult r = Simulate(ProjectAll(e), opts);
  if (!r.ok()) return std::nullopt;
  size_t n = 0;
  for (const NetStep& s : r.steps) n += s.rendezvous() ? 1 : 0;
  return n;
}

std::string Dump(const Network& n) { return PrintNetwork(n); }

}  // namespace helam::testing
