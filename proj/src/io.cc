// Copyright 2026 The mcfpred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mcfpred/io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace mcfpred {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() &&
           (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::int64_t to_int(std::string_view tok, int line, const char* what) {
  std::int64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(
        line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  }
  return v;
}

double to_double(std::string_view tok, int line) {
  double v = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() ||
      !std::isfinite(v)) {
    throw ParseError(line, "invalid value '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

Instance parse_dimacs(std::istream& in) {
  std::string raw;
  int line = 0;
  bool have_problem = false;
  std::int64_t n = 0, m = 0;
  std::vector<Quantity> supplies;
  std::vector<Arc> arcs;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = split(raw);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_problem) throw ParseError(line, "duplicate problem line");
      if (tok.size() != 4 || tok[1] != "min") {
        throw ParseError(line, "expected 'p min <nodes> <arcs>'");
      }
      n = to_int(tok[2], line, "node count");
      m = to_int(tok[3], line, "arc count");
      if (n < 1 || n > std::numeric_limits<NodeIndex>::max() - 1) {
        throw ParseError(line, "node count out of range");
      }
      if (m < 0 || m > std::numeric_limits<ArcIndex>::max()) {
        throw ParseError(line, "arc count out of range");
      }
      have_problem = true;
      supplies.assign(n, 0);
      arcs.reserve(m);
    } else if (tok[0] == "n") {
      if (!have_problem)
        throw ParseError(line, "node line before problem line");
      if (tok.size() != 3) throw ParseError(line, "expected 'n <id> <supply>'");
      const std::int64_t id = to_int(tok[1], line, "node id");
      if (id < 1 || id > n) throw ParseError(line, "node id out of range");
      supplies[id - 1] = to_int(tok[2], line, "supply");
    } else if (tok[0] == "a") {
      if (!have_problem) throw ParseError(line, "arc line before problem line");
      if (tok.size() != 6) {
        throw ParseError(line, "expected 'a <src> <dst> <low> <cap> <cost>'");
      }
      const std::int64_t src = to_int(tok[1], line, "node id");
      const std::int64_t dst = to_int(tok[2], line, "node id");
      if (src < 1 || src > n || dst < 1 || dst > n) {
        throw ParseError(line, "node id out of range");
      }
      if (static_cast<std::int64_t>(arcs.size()) >= m) {
        throw ParseError(line, "more arcs than declared");
      }
      arcs.push_back(
          Arc{static_cast<NodeIndex>(src - 1), static_cast<NodeIndex>(dst - 1),
              to_int(tok[5], line, "cost"), to_int(tok[3], line, "lower bound"),
              to_int(tok[4], line, "capacity")});
    } else {
      throw ParseError(line, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_problem) throw ParseError(line, "missing problem line");
  if (static_cast<std::int64_t>(arcs.size()) != m) {
    throw ParseError(line, "declared " + std::to_string(m) + " arcs, found " +
                               std::to_string(arcs.size()));
  }
  try {
    return Instance(static_cast<NodeIndex>(n), std::move(arcs),
                    std::move(supplies));
  } catch (const InvalidInstanceError& e) {
    throw ParseError(line, e.what());
  }
}

Instance parse_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

Instance read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file '" + path + "'");
  return parse_dimacs(in);
}

std::string write_dimacs(const Instance& inst) {
  std::ostringstream out;
  out << "p min " << inst.node_count() << ' ' << inst.arc_count() << '\n';
  for (NodeIndex v = 0; v < inst.node_count(); ++v) {
    if (inst.supply(v) != 0) {
      out << "n " << v + 1 << ' ' << inst.supply(v) << '\n';
    }
  }
  for (const Arc& a : inst.arcs()) {
    out << "a " << a.tail + 1 << ' ' << a.head + 1 << ' ' << a.lower << ' '
        << a.upper << ' ' << a.cost << '\n';
  }
  return out.str();
}

Prediction parse_prediction(std::istream& in, NodeIndex node_count) {
  Prediction p(node_count, 0.0);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = split(raw);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] != "d" || tok.size() != 3) {
      throw ParseError(line, "expected 'd <node_id> <value>'");
    }
    const std::int64_t id = to_int(tok[1], line, "node id");
    if (id < 1 || id > node_count)
      throw ParseError(line, "node id out of range");
    p[id - 1] = to_double(tok[2], line);
  }
  return p;
}

Prediction parse_prediction_string(const std::string& text,
                                   NodeIndex node_count) {
  std::istringstream in(text);
  return parse_prediction(in, node_count);
}

Prediction read_prediction_file(const std::string& path, NodeIndex node_count) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open prediction file '" + path + "'");
  return parse_prediction(in, node_count);
}

std::string write_prediction(std::span<const double> prediction) {
  std::string out;
  char buf[64];
  for (std::size_t v = 0; v < prediction.size(); ++v) {
    std::snprintf(buf, sizeof(buf), "d %zu %.17g\n", v + 1, prediction[v]);
    out += buf;
  }
  return out;
}

std::map<std::string, std::string> parse_key_value(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string raw;
  int line = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.resize(hash);
    }
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key=value");
    out[trim(raw.substr(0, eq))] = trim(raw.substr(eq + 1));
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace mcfpred
