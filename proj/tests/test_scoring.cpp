// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "dynaprune/error.hpp"
#include "dynaprune/scoring.hpp"

using namespace dynaprune;

namespace {

ScoreTable make_table(std::vector<std::string> ids, double initial = 0.0) {
  return ScoreTable::init(ids, initial);
}

}  // namespace

TEST_CASE("init assigns the initial value to every id") {
  const ScoreTable t = make_table({"a", "b"}, 0.0);
  CHECK(t.at("a").score == 0.0);
  CHECK(t.at("b").score == 0.0);
  CHECK(t.at("a").last_update_epoch == 0);
  const ScoreTable t2 = make_table({"a"}, 1.5);
  CHECK(t2.at("a").score == 1.5);
}

TEST_CASE("init rejects empty and duplicate id sets") {
  CHECK_THROWS_AS(make_table({}), ValidationError);
  CHECK_THROWS_AS(make_table({"a", "a"}), ValidationError);
}

TEST_CASE("update with an empty loss map only advances the epoch") {
  ScoreTable t = make_table({"a", "b"});
  t.update({}, 3);
  CHECK(t.current_epoch() == 3);
  CHECK(t.at("a").score == 0.0);
  CHECK(t.at("a").last_update_epoch == 0);
}

TEST_CASE("update touches listed entries and leaves the rest stale") {
  ScoreTable t = make_table({"a", "b"});
  t.update({{"a", 2.0}}, 3);
  CHECK(t.at("a").score == 2.0);
  CHECK(t.at("a").last_update_epoch == 3);
  CHECK(t.at("b").score == 0.0);
  CHECK(t.at("b").last_update_epoch == 0);
}

TEST_CASE("last writer wins across epochs") {
  ScoreTable t = make_table({"a"});
  t.update({{"a", 5.0}}, 1);
  t.update({{"a", 2.5}}, 2);
  CHECK(t.at("a").score == 2.5);
  CHECK(t.at("a").last_update_epoch == 2);
}

TEST_CASE("update validates ids, finiteness, and epoch monotonicity") {
  ScoreTable t = make_table({"a"});
  CHECK_THROWS_AS(t.update({{"zz", 1.0}}, 1), ValidationError);
  CHECK_THROWS_AS(
      t.update({{"a", std::numeric_limits<double>::quiet_NaN()}}, 1),
      ValidationError);
  CHECK_THROWS_AS(
      t.update({{"a", std::numeric_limits<double>::infinity()}}, 1),
      ValidationError);
  t.update({{"a", 1.0}}, 4);
  CHECK_THROWS_AS(t.update({{"a", 1.0}}, 3), ValidationError);
  // A failed batch must not partially apply.
  CHECK_THROWS_AS(t.update({{"a", 9.0}, {"zz", 1.0}}, 5), ValidationError);
  CHECK(t.at("a").score == 1.0);
}

TEST_CASE("snapshot is id-ordered and detached from later updates") {
  ScoreTable t = make_table({"b", "a"});
  t.update({{"b", 1.0}, {"a", 2.0}}, 1);
  const auto snap = t.snapshot();
  REQUIRE(snap.size() == 2);
  CHECK(snap[0].first == "a");
  CHECK(snap[0].second == 2.0);
  CHECK(snap[1].first == "b");
  CHECK(snap[1].second == 1.0);
  t.update({{"a", 9.0}}, 2);
  CHECK(snap[0].second == 2.0);
}

TEST_CASE("full update aligns every last_update_epoch; partial update is observable") {
  ScoreTable t = make_table({"a", "b", "c"});
  t.update({{"a", 1.0}, {"b", 2.0}, {"c", 3.0}}, 1);
  for (const auto& id : {"a", "b", "c"}) {
    CHECK(t.at(id).last_update_epoch == 1);
  }
  t.update({{"a", 1.5}}, 2);
  CHECK(t.at("a").last_update_epoch == t.current_epoch());
  CHECK(t.at("b").last_update_epoch < t.current_epoch());
  CHECK(t.at("c").last_update_epoch < t.current_epoch());
}

TEST_CASE("score trace rows carry epoch, id, score, and staleness") {
  ScoreTable t = make_table({"a", "b"});
  t.update({{"a", 1.25}}, 2);
  std::ostringstream out;
  t.append_trace_csv(out);
  CHECK(out.str() == "2,a,1.25,2\n2,b,0,0\n");
}
