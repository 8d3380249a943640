// Copyright 2026 The bag-of-sounds Authors
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

#include "bos/common.hpp"
#include "bos/csv.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using bos::ErrorKind;

TEST_CASE("fnv1a64 reference vectors") {
  CHECK(bos::fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(bos::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(bos::fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("derived seeds separate streams") {
  CHECK(bos::derive_seed(1, 0) != bos::derive_seed(1, 1));
  CHECK(bos::derive_seed(1, 0) != bos::derive_seed(2, 0));
  CHECK(bos::derive_seed(5, 9) == bos::derive_seed(5, 9));
}

TEST_CASE("uniform_index stays in range and is reproducible") {
  bos::Rng a(42);
  bos::Rng b(42);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto v = bos::uniform_index(a, 7);
    REQUIRE(v < 7);
    CHECK(v == bos::uniform_index(b, 7));
    ++hits[v];
  }
  for (int h : hits) CHECK(h > 800);
  bos::Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = bos::uniform_unit(c);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("shuffle permutes") {
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  bos::Rng rng(3);
  auto w = v;
  bos::shuffle(w.begin(), w.end(), rng);
  CHECK(w != v);
  std::sort(w.begin(), w.end());
  CHECK(w == v);
}

TEST_CASE("parallel_for writes by index and reports the lowest failure") {
  for (std::size_t threads : {1u, 4u}) {
    std::vector<std::size_t> out(100);
    bos::parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = i * i; });
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == i * i);

    try {
      bos::parallel_for(64, threads, [&](std::size_t i) {
        if (i % 10 == 7) throw bos::Error(ErrorKind::InvalidArgument, std::to_string(i));
      });
      FAIL("expected an error");
    } catch (const bos::Error& e) {
      CHECK(std::string(e.what()) == "7");
    }
  }
}

TEST_CASE("csv quoting round trip") {
  const bos::csv::Row row{"plain", "with,comma", "with \"quote\"", "line\nbreak", ""};
  const auto rows = bos::csv::parse("\xEF\xBB\xBF" + bos::csv::format_row(row) + "\r\n\r\nx,y\r\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == row);
  CHECK(rows[1] == bos::csv::Row{"x", "y"});
  CHECK(testing::error_kind([] { bos::csv::parse("a,\"open\n"); }) == ErrorKind::InvalidArgument);
  CHECK(testing::error_kind([] { bos::csv::read_file("/nonexistent/file.csv"); }) == ErrorKind::UnreadableFile);
}
