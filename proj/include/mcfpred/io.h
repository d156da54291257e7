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

// DIMACS min-cost flow files and "d"-line prediction files.

#ifndef MCFPRED_IO_H_
#define MCFPRED_IO_H_

#include <istream>
#include <map>
#include <string>

#include "mcfpred/core.h"

namespace mcfpred {

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Grammar: "c ..." comments, blank lines, exactly one "p min <n> <m>",
// "n <id> <supply>" node lines, "a <src> <dst> <low> <cap> <cost>" arc
// lines. Node ids are 1-based; omitted nodes get supply 0.
Instance parse_dimacs(std::istream& in);
Instance parse_dimacs_string(const std::string& text);
Instance read_dimacs_file(const std::string& path);

// Canonical form: problem line, nonzero-supply node lines in id order, arc
// lines in arc order. Round-trips exactly through parse_dimacs.
std::string write_dimacs(const Instance& inst);

// One "d <node_id> <value>" line per node; missing nodes default to 0.
Prediction parse_prediction(std::istream& in, NodeIndex node_count);
Prediction parse_prediction_string(const std::string& text,
                                   NodeIndex node_count);
Prediction read_prediction_file(const std::string& path, NodeIndex node_count);
// Values are written with 17 significant digits.
std::string write_prediction(std::span<const double> prediction);

// "key=value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_key_value(std::istream& in);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mcfpred

#endif  // MCFPRED_IO_H_
