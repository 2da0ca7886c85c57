#include <random>
#include <sstream>

#include "doctest.h"
#include "inglenook/cli.hpp"

using namespace inglenook;

namespace {

const std::string kFx = INGLENOOK_FIXTURE_DIR;
const std::string kSpec = kFx + "/classic.spec";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check") {
  const Run ok = run({"check", "--spec", kSpec});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out == "solvable, slack 0\nbranch = inequality-pass\nmax_wagons = 8\n");
  const Run nine = run({"check", "--wagons", "9", "--headshunt", "3", "--sidings", "3", "3", "5"});
  CHECK(nine.code == kExitNegative);
  CHECK(nine.out.rfind("unsolvable, slack -1", 0) == 0);
  CHECK(run({"check", "--wagons", "12", "--headshunt", "4", "--sidings", "4,5,6"}).code == kExitOk);
  CHECK(run({"check", "--spec", "wagons = 8; headshunt = 3; sidings = 3 3 5"}).code == kExitOk);
}

TEST_CASE("input errors exit 2") {
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"check"}).code == kExitInput);
  CHECK(run({"check", "--spec", "wagons = 3; headshunt = 2; sidings = 0"}).code == kExitInput);
  const Run bad = run({"check", "--spec", "wagons = 3\nheadshunt = 2\nsidings = 3 x 5\n"});
  CHECK(bad.code == kExitInput);
  CHECK(bad.err.find("3:13") != std::string::npos);
  CHECK(run({"optimal", "--spec", kSpec, "--start", "H:[]|S1:[]|S2:[4,7,8]|S3:[1,6,2,3,Q]", "--goal",
             kFx + "/sorted_goal.pat"})
            .code == kExitInput);
  CHECK(run({"solve", "--spec", kSpec, "--start", kFx + "/sort17_start.txt", "--goal", "S1 ~ {1,2,3,4}"}).code ==
        kExitInput);
  CHECK(run({"check", "--spec", kSpec, "--format", "yaml"}).code == kExitInput);
  CHECK(run({"verify", "--spec", kSpec}).code == kExitInput);
}

TEST_CASE("verify") {
  for (const char* name : {"sort17", "sort18", "order20"}) {
    const Run r = run({"verify", "--spec", kSpec, "--moves", kFx + "/" + name + ".moves"});
    CHECK_MESSAGE(r.code == kExitOk, name, r.err);
  }
  const std::string start = "H:[]|S1:[]|S2:[4,7,8]|S3:[1,6,2,3,5]";
  const Run illegal = run({"verify", "--spec", kSpec, "--start", start, "--moves", "PULL 1 S2\nPULL 3 S3\n"});
  CHECK(illegal.code == kExitNegative);
  CHECK(illegal.err.find("line 2: PULL 3 S3") != std::string::npos);
  const Run mismatch = run({"verify", "--spec", kSpec, "--moves", start + "\nPULL 1 S2\n" + start + "\n"});
  CHECK(mismatch.code == kExitNegative);
  const Run ok = run({"verify", "--spec", kSpec, "--start", start, "--moves", "PULL 1 S2\nPUSH 1 S1\n"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out == "H:[]|S1:[4]|S2:[7,8]|S3:[1,6,2,3,5]\n");
  CHECK(run({"verify", "--spec", kSpec, "--start", start, "--moves", "SHOVE 1 S2"}).code == kExitInput);
}

TEST_CASE("solve prints a replayable trace") {
  const Run r = run({"solve", "--spec", kSpec, "--start", kFx + "/sort17_start.txt", "--goal",
                     kFx + "/ordered_goal.pat"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("bound = 214\nlength = ", 0) == 0);
  const std::string trace = r.out.substr(r.out.find('\n', r.out.find("length")) + 1);
  const Run v = run({"verify", "--spec", kSpec, "--moves", trace});
  CHECK(v.code == kExitOk);
  CHECK(v.out == "H:[]|S1:[]|S2:[1,2,3]|S3:[4,5,6,7,8]\n");
}

TEST_CASE("optimal on a small layout") {
  const std::string spec = "wagons = 4; headshunt = 2; sidings = 2 2 1";
  const Run r = run({"optimal", "--spec", spec, "--start", "H:[]|S1:[1,2]|S2:[3,4]|S3:[]", "--goal",
                     "S1 = [2,1]; H = []"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("distance = ", 0) == 0);
  const Run none = run({"optimal", "--spec", "wagons = 2; headshunt = 2; sidings = 2", "--start", "H:[]|S1:[1,2]",
                        "--goal", "S1 = [2,1]"});
  CHECK(none.code == kExitNegative);
  CHECK(none.out.rfind("distance = unreachable", 0) == 0);
  const Run refused = run({"optimal", "--spec", kSpec, "--start", kFx + "/sort17_start.txt", "--goal",
                           kFx + "/sorted_goal.pat", "--budget", "1000"});
  CHECK(refused.code == kExitRefused);
}

TEST_CASE("worst, diameter and gen") {
  const std::string spec = "wagons = 4; headshunt = 2; sidings = 2 2 1";
  const Run w = run({"worst", "--spec", spec, "--goal", "S1 = [1,2]; H = []"});
  CHECK(w.code == kExitOk);
  CHECK(w.out.find("unreachable = 0\n") != std::string::npos);
  const Run d = run({"diameter", "--wagons", "4", "--piles", "3 3 1"});
  CHECK(d.code == kExitOk);
  CHECK(d.out.rfind("states = ", 0) == 0);
  const Run split = run({"diameter", "--wagons", "2", "--piles", "2 2"});
  CHECK(split.code == kExitNegative);
  CHECK(split.out.find("components = ") != std::string::npos);
  CHECK(run({"diameter", "--piles", "2 2"}).code == kExitInput);
  const Run rev = run({"diameter", "--reversal", "3"});
  CHECK(rev.code == kExitOk);
  CHECK(rev.out.find("correspondence = holds") != std::string::npos);
  const Run reach = run({"diameter", "--reach", "--spec", spec});
  CHECK(reach.code == kExitOk);
  CHECK(reach.out.find("connected = yes") != std::string::npos);

  const Run g1 = run({"gen", "--spec", kSpec, "--seed", "42"});
  const Run g2 = run({"gen", "--spec", kSpec, "--seed", "42"});
  CHECK(g1.code == kExitOk);
  CHECK(g1.out == g2.out);
  const Run g3 = run({"gen", "--spec", kSpec, "--seed", "42", "--start", kFx + "/classic_starts.pat"});
  CHECK(g3.out.rfind("H:[]|S1:[]|", 0) == 0);
}

TEST_CASE("malformed input never crashes") {
  std::mt19937_64 rng(2024);
  const std::string alphabet = "HS0123456789[]|:,;=~{}- \nPULLPUSH#x";
  const std::vector<std::string> flags{"--start", "--goal", "--moves", "--spec"};
  const std::vector<std::string> cmds{"verify", "optimal", "solve", "check", "gen", "worst"};
  const std::string small = "wagons = 3; headshunt = 2; sidings = 2 2";
  for (int trial = 0; trial < 400; ++trial) {
    std::string junk;
    const int len = static_cast<int>(rng() % 30);
    for (int i = 0; i < len; ++i) junk += alphabet[rng() % alphabet.size()];
    const std::string& cmd = cmds[rng() % cmds.size()];
    const std::string& flag = flags[rng() % flags.size()];
    std::vector<std::string> args{cmd, "--spec", small, "--start", "H:[]|S1:[1,2]|S2:[3]", "--goal", "S2 = [3]"};
    if (flag == "--spec") {
      args[2] = junk;
    } else {
      args.push_back(flag);
      args.push_back(junk);
    }
    const Run r = run(args);
    CHECK(r.code != kExitInternal);
    CHECK(r.code >= 0);
    CHECK(r.code <= kExitRefused);
  }
}
