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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include "test_util.h"

namespace mcfpred {
namespace {

TEST(ParseDimacsTest, TwoNodeExample) {
  const Instance inst =
      parse_dimacs_string("p min 2 1\nn 1 2\nn 2 -2\na 1 2 0 2 3\n");
  EXPECT_EQ(inst, testing::two_node());
}

TEST(ParseDimacsTest, CommentsAndBlankLines) {
  const Instance inst = parse_dimacs_string(
      "c header\n\np min 2 1\nc node\nn 1 2\r\nn 2 -2\n  a 1 2 0 2 3  \n");
  EXPECT_EQ(inst, testing::two_node());
}

TEST(ParseDimacsTest, SingleIsolatedNode) {
  const Instance inst = parse_dimacs_string("p min 1 0\nn 1 0\n");
  EXPECT_EQ(inst.node_count(), 1);
  EXPECT_EQ(inst.arc_count(), 0);
  EXPECT_EQ(inst.supply(0), 0);
}

TEST(ParseDimacsTest, Errors) {
  const auto line_of = [](const std::string& text) {
    try {
      parse_dimacs_string(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("a 1 2 0 2 3\np min 2 1\n"), 1);
  EXPECT_EQ(line_of("p min 2 1\np min 2 1\n"), 2);
  EXPECT_EQ(line_of("p min 2 1\na 1 3 0 2 3\n"), 2);
  EXPECT_EQ(line_of("p min 2 1\na 1 2 0 x 3\n"), 2);
  EXPECT_EQ(line_of("p max 2 1\na 1 2 0 2 3\n"), 1);
  EXPECT_EQ(line_of("p min 2 1\nq 1\n"), 2);
  EXPECT_NE(line_of("p min 2 2\na 1 2 0 2 3\n"), -1);
  EXPECT_NE(line_of("p min 2 1\na 1 2 3 2 3\n"), -1);
  EXPECT_NE(line_of("p min 2 1\na 1 1 0 2 3\n"), -1);
  EXPECT_NE(line_of(""), -1);
}

TEST(ParseDimacsTest, MissingFileNamesPath) {
  try {
    read_dimacs_file("/nonexistent/instance.min");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/instance.min"),
              std::string::npos);
  }
}

TEST(WriteDimacsTest, CanonicalForm) {
  EXPECT_EQ(write_dimacs(testing::two_node()),
            "p min 2 1\nn 1 2\nn 2 -2\na 1 2 0 2 3\n");
  const Instance zero(3, {{0, 2, -1, 0, 4}}, {0, 0, 0});
  EXPECT_EQ(write_dimacs(zero), "p min 3 1\na 1 3 0 4 -1\n");
  EXPECT_EQ(parse_dimacs_string(write_dimacs(zero)), zero);
}

TEST(WriteDimacsTest, RoundTripsRandomInstances) {
  for (const Instance& inst : testing::random_battery(200, 7000)) {
    const std::string text = write_dimacs(inst);
    const Instance back = parse_dimacs_string(text);
    EXPECT_EQ(back, inst);
    EXPECT_EQ(write_dimacs(back), text);
  }
}

TEST(PredictionIoTest, Examples) {
  EXPECT_EQ(parse_prediction_string("d 1 2.5\nd 2 0\n", 2),
            (Prediction{2.5, 0}));
  EXPECT_EQ(parse_prediction_string("", 3), (Prediction{0, 0, 0}));
  EXPECT_THROW(parse_prediction_string("d 3 1\n", 2), ParseError);
  EXPECT_THROW(parse_prediction_string("d 1\n", 2), ParseError);
  EXPECT_THROW(parse_prediction_string("d 1 abc\n", 2), ParseError);
  EXPECT_THROW(read_prediction_file("/nonexistent/p.txt", 2), IoError);
}

TEST(PredictionIoTest, RoundTripIsBitExact) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    Prediction p(1 + rng() % 40);
    for (double& v : p) {
      switch (rng() % 4) {
        case 0:
          v = std::uniform_real_distribution<double>(-1e12, 1e12)(rng);
          break;
        case 1:
          v = std::ldexp(std::uniform_real_distribution<double>(0, 1)(rng),
                         static_cast<int>(rng() % 200) - 100);
          break;
        case 2:
          v = static_cast<double>(static_cast<std::int64_t>(rng() % 1000000));
          break;
        default:
          v = std::numeric_limits<double>::denorm_min() * (rng() % 1000);
      }
    }
    const Prediction back = parse_prediction_string(
        write_prediction(p), static_cast<NodeIndex>(p.size()));
    ASSERT_EQ(back.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(back[i]),
                std::bit_cast<std::uint64_t>(p[i]));
    }
  }
}

TEST(KeyValueTest, ParsesAndRejects) {
  std::istringstream in("# comment\nlevels = 0,2,8  # trailing\n\nseeds=3\n");
  const auto kv = parse_key_value(in);
  EXPECT_EQ(kv.at("levels"), "0,2,8");
  EXPECT_EQ(kv.at("seeds"), "3");
  std::istringstream bad("novalue\n");
  EXPECT_THROW(parse_key_value(bad), ParseError);
}

TEST(TextFileTest, WriteThenRead) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "mcfpred_io_test.txt").string();
  write_text_file(path, "abc\n");
  EXPECT_EQ(read_text_file(path), "abc\n");
  std::filesystem::remove(path);
  EXPECT_THROW(write_text_file("/nonexistent/dir/x.txt", "x"), IoError);
}

}  // namespace
}  // namespace mcfpred
