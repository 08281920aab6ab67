#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pfano/cli.hpp"

using namespace pfano;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pfano");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("pfano_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("degree") {
  auto r = run({"degree", "deg12"});
  CHECK(r.code == 0);
  CHECK(r.out == "1/12\n");
  CHECK(run({"degree", "deg4"}).out == "1/4\n");
  CHECK(run({"degree", "nope"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("catalog lists five families") {
  auto r = run({"catalog"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
}

TEST_CASE("exclude deg42 at the 1/7 point") {
  auto r = run({"exclude", "deg42", "--centre", "1/7"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  auto c = j["certificates"][0];
  CHECK(c["payload"]["A_term"] == "1/42");
  CHECK(c["payload"]["E_term"] == "1/42");
  CHECK(c["verdict"] == "excluded");
  CHECK(run({"exclude", "deg42", "--centre", "1/5"}).code == 2);
  CHECK(run({"exclude", "deg42"}).code == 2);
}

TEST_CASE("verify-table exits 0 with five reports and is byte-stable") {
  auto a = run({"verify-table", "--seed", "1", "--prime", "10007", "--out", tmp("a.json")});
  CHECK(a.code == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 6);  // metadata line plus one per family
  auto b = run({"verify-table", "--seed", "1", "--prime", "10007", "--serial", "--out", tmp("b.json")});
  CHECK(a.out == b.out);
  CHECK(slurp(tmp("a.json")) == slurp(tmp("b.json")));
  CHECK_FALSE(slurp(tmp("a.json")).empty());
}

TEST_CASE("gencond and negative control") {
  auto ok = run({"gencond", "cd:deg30-5"});
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["pass"] == true);
  auto bad = run({"gencond", "cd:deg30-5", "--negative-control", "cd:deg30-5"});
  CHECK(bad.code == 1);
  CHECK(nlohmann::json::parse(bad.out)["pass"] == false);
  CHECK(run({"gencond", "cd:nothing"}).code == 2);
  CHECK(run({"verify-table", "--negative-control", "cd:deg42-5"}).code == 1);
  CHECK(run({"verify-table", "--negative-control", "cd:deg42-5", "--allow-inconclusive"}).code == 0);
}

TEST_CASE("prime validation and environment override") {
  CHECK(run({"basket", "deg42", "--prime", "10000"}).code == 2);
  CHECK(run({"basket", "deg42", "--prime", "7"}).code == 2);
  CHECK(run({"basket", "deg42", "--budget", "0"}).code == 2);
  setenv(kPrimeEnv, "32003", 1);
  auto r = run({"exclude", "deg4", "--centre", "2/(1,1,1)#2"});
  unsetenv(kPrimeEnv);
  CHECK(r.code == 0);
  auto meta = nlohmann::json::parse(r.out)["metadata"];
  CHECK(meta["prime"] == 32003);
  CHECK(meta["prime_source"] == "environment");
}

TEST_CASE("member files: round trip, family reference, validation errors") {
  auto w = run({"pfaffians", "deg20", "--seed", "4", "--out", tmp("m.txt")});
  CHECK(w.code == 0);
  std::string text = slurp(tmp("m.txt"));
  MemberFile mf = parse_member_file(text, 10007);
  REQUIRE(mf.member);
  CHECK(mf.id == "deg20");
  CHECK(member_to_text("deg20", *mf.member) == text);
  CHECK(mf.member->entries == sample_member(family("deg20"), 4, PrimeField(10007)).entries);

  auto ref = parse_member_file("# comment\nid: deg42\n", 10007);
  CHECK(ref.id == "deg42");
  CHECK_FALSE(ref.member);
  std::ofstream(tmp("ref.txt")) << "id: deg12\n";
  CHECK(run({"degree", "--member", tmp("ref.txt")}).out == "1/12\n");

  // m12 has degree 4 for deg20; z0 has degree 5. The entry sits on line 5.
  std::string wrong = text;
  auto pos = wrong.find("m12:");
  wrong.replace(pos, wrong.find('\n', pos) - pos, "m12: z0");
  try {
    parse_member_file(wrong, 10007);
    FAIL("expected a validation error");
  } catch (const MemberFileError& e) {
    CHECK(e.line == 5);
    CHECK(std::string(e.what()).find("degree") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_member_file("id: deg42\nweights: 1 2 3\n", 10007), MemberFileError);
  CHECK_THROWS_AS(parse_member_file("id: deg42\nbogus line\n", 10007), MemberFileError);
  CHECK_THROWS_AS(parse_member_file("id: deg42\ncoefficient_field: F_10\n", 10007), MemberFileError);
  CHECK_THROWS_AS(parse_member_file("id: deg42\nm12: x^5\n", 10007), MemberFileError);
  std::ofstream(tmp("wrong.txt")) << wrong;
  auto bad = run({"basket", "--member", tmp("wrong.txt")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 5") != std::string::npos);
}
