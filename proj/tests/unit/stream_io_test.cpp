#include <gtest/gtest.h>

#include <sstream>

#include "mcover/mcover.hpp"

using namespace mcover;

TEST(StreamJsonl, RoundTrip) {
  for (const std::string fam : {"lpt-shift:k=2", "jump-lb:u=3,eps=1/4", "17-16", "random:seed=4,n=9,m=2"}) {
    const StreamSpec spec = make_family(fam);
    std::stringstream ss;
    write_stream_jsonl(ss, spec);
    const StreamSpec back = read_stream_jsonl(ss);
    EXPECT_EQ(back.machines, spec.machines) << fam;
    EXPECT_EQ(back.family, spec.family);
    EXPECT_EQ(back.ub_override, spec.ub_override);
    EXPECT_EQ(back.push_target, spec.push_target);
    EXPECT_EQ(back.epsilon, spec.epsilon);
    EXPECT_EQ(replay_order(back), replay_order(spec));
    std::vector<StreamEntry> placed;
    for (const auto& e : spec.base) {
      if (e.machine) placed.push_back(e);
    }
    EXPECT_EQ(back.base, placed);
  }
}

TEST(StreamJsonl, ReadErrors) {
  const auto read = [](const std::string& text) {
    std::istringstream is(text);
    return read_stream_jsonl(is);
  };
  EXPECT_THROW(read(""), std::invalid_argument);
  EXPECT_THROW(read("{\"family\":\"x\"}\n"), std::invalid_argument);
  EXPECT_THROW(read("{\"machines\":0}\n"), std::invalid_argument);
  EXPECT_THROW(read("{\"machines\":2}\n{\"id\":1,\"size\":\"-1\"}\n"), std::invalid_argument);
  EXPECT_THROW(read("{\"machines\":2}\n{\"id\":1,\"size\":\"1\",\"machine\":5}\n"), std::invalid_argument);
  EXPECT_THROW(read("{\"machines\":2}\nnot json\n"), std::invalid_argument);
  const StreamSpec ok = read("{\"machines\":2}\n\n{\"id\":3,\"size\":\"5/2\"}\n{\"id\":4,\"size\":2}\n");
  ASSERT_EQ(ok.arrivals.size(), 2u);
  EXPECT_EQ(ok.arrivals[0].size, Rational(5, 2));
  EXPECT_EQ(ok.arrivals[1].size, Rational(2));
}

TEST(Report, CsvColumnsAndRows) {
  const auto r = run_stream(gen_random(2, 5, 2), Algorithm::OnlineLpt, Rational(1, 4), {true, true});
  std::ostringstream os;
  write_report_csv(os, r);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, kReportColumns);
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 11);
  }
  EXPECT_EQ(rows, 5u);

  const json j = report_to_json(r);
  EXPECT_EQ(j["rows"].size(), 5u);
  EXPECT_EQ(j["algorithm"], "online-lpt");
  EXPECT_EQ(j["rows"][4]["ratio"].get<std::string>(), r.rows[4].ratio->str());
}

TEST(Report, StateRoundTrip) {
  const StreamSpec spec = gen_random(9, 7, 3);
  const auto r = run_stream(spec, Algorithm::JumpOnline, Rational(1, 8));
  const SessionState st = state_from_json(state_to_json(r, spec));
  EXPECT_EQ(st.algorithm, Algorithm::JumpOnline);
  EXPECT_EQ(st.epsilon, Rational(1, 8));
  const Schedule back = initial_schedule(st.spec, st.epsilon);
  EXPECT_EQ(back, *r.final_schedule);
  EXPECT_THROW(state_from_json(json::object()), std::invalid_argument);
}

TEST(Context, Json) {
  const json j = context_to_json(build_context(Rational(1, 2), Rational(16)));
  EXPECT_EQ(j["ell"], 3);
  EXPECT_EQ(j["grid"], "4");
  EXPECT_EQ(j["ladder"], json::array({"12", "8"}));
  const json d = context_to_json(build_context(Rational(1, 2), Rational(0)));
  EXPECT_TRUE(d["ell"].is_null());
}

TEST(Algorithm, Names) {
  for (Algorithm a : {Algorithm::JumpOnline, Algorithm::OnlineLpt, Algorithm::RecomputeLpt}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_THROW(parse_algorithm("lpt"), std::invalid_argument);
  EXPECT_EQ(parse_push_target("largest-smaller-job"), PushTarget::LargestSmallerJob);
}
