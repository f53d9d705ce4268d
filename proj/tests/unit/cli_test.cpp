#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "support.hpp"
#include "tdx/cli.hpp"
#include "tdx/homomorphism.hpp"
#include "tdx/json_io.hpp"

using namespace tdx;
using namespace tdx::test;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  setenv("TDX_COLOR", "0", 1);
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "tdx_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("chase writes the running example solution") {
  const auto r = run({"chase", "-m", data_path("example1.tdx"), "-i", data_path("fig1.json")});
  REQUIRE(r.code == kExitOk);
  CHECK(r.err.empty());
  const auto target = parse_instance_json(r.out);
  CHECK(hom_equivalent(sem_instance(target, TimePoint(13)), sem_instance(load_instance("fig3.json"), TimePoint(13))));
  CHECK(target.size() == 6);
}

TEST_CASE("achase reports the shared-null failure with exit code 2") {
  const auto r = run({"achase", "-m", data_path("example3.tdx"), "-i", data_path("fig6.json")});
  CHECK(r.code == kExitNoSolution);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("failure").at("constants") == nlohmann::json::array({"DBA", "Manager"}));
  CHECK(r.err.rfind("error: no solution", 0) == 0);
  CHECK(r.err.find("DBA") != std::string::npos);
}

TEST_CASE("files and standard streams are interchangeable") {
  const auto path = scratch("normalized.json");
  REQUIRE(run({"normalize", "-i", data_path("fig1.json"), "-o", path}).code == kExitOk);
  CHECK(parse_instance_json(read_file(path)) == load_instance("fig8.json"));

  const auto piped = run({"normalize", "-i", "-"}, read_file(data_path("fig1.json")));
  REQUIRE(piped.code == kExitOk);
  CHECK(piped.out == read_file(path));
}

TEST_CASE("normalize then sem matches sem directly") {
  const auto direct = run({"sem", "-i", data_path("fig1.json"), "--horizon", "13"});
  const auto normalized = run({"normalize", "-i", data_path("fig1.json")});
  const auto via = run({"sem", "-i", "-", "--horizon", "13"}, normalized.out);
  REQUIRE(direct.code == kExitOk);
  REQUIRE(via.code == kExitOk);
  CHECK(direct.out == via.out);
  CHECK(parse_instance_json(direct.out) == load_instance("fig2.json"));
  CHECK(nlohmann::json::parse(direct.out).at("horizon") == 13);

  const auto defaulted = run({"sem", "-i", data_path("fig1.json")});
  CHECK(nlohmann::json::parse(defaulted.out).at("horizon") == 14);
  CHECK(run({"sem", "-i", data_path("fig1.json"), "--horizon", "5"}).code == kExitError);
}

TEST_CASE("query and certain answer named queries") {
  const auto q = run({"query", "-m", data_path("example1.tdx"), "-i", data_path("fig4.json"), "-q", "q1"});
  REQUIRE(q.code == kExitOk);
  CHECK(parse_instance_json(q.out).size() == 3);

  const auto c = run({"certain", "-m", data_path("example1.tdx"), "-i", data_path("fig1.json"), "-q", "q1"});
  REQUIRE(c.code == kExitOk);
  CHECK(parse_instance_json(c.out).size() == 2);

  const auto none = run({"certain", "-m", data_path("example3.tdx"), "-i", data_path("fig6.json"), "-q", "positions"});
  CHECK(none.code == kExitNoSolution);
  CHECK(run({"query", "-m", data_path("example1.tdx"), "-i", data_path("fig4.json"), "-q", "nope"}).code ==
        kExitError);
}

TEST_CASE("equiv distinguishes the two exit codes") {
  const auto same = run({"equiv", "-a", data_path("fig4.json"), "-b", data_path("fig5.json")});
  CHECK(same.code == kExitOk);
  CHECK(same.out.rfind("equivalent", 0) == 0);
  CHECK(run({"equiv", "-a", data_path("fig3.json"), "-b", data_path("fig5.json"), "--horizon", "13"}).code == kExitOk);

  const auto differ = run({"equiv", "-a", data_path("fig2.json"), "-b", data_path("fig4.json")});
  CHECK(differ.code == kExitNotEquivalent);
  CHECK(differ.out.rfind("not equivalent", 0) == 0);
}

TEST_CASE("errors exit with code 1 and a diagnostic") {
  const auto missing = run({"normalize", "-i", "/nonexistent/x.json"});
  CHECK(missing.code == kExitError);
  CHECK(missing.err.find("/nonexistent/x.json") != std::string::npos);

  const auto bad_json = run({"normalize", "-i", "-"}, "{\n  oops");
  CHECK(bad_json.code == kExitError);
  CHECK(bad_json.err.find("-: 2:") != std::string::npos);

  CHECK(run({}).code == kExitError);
  CHECK(run({"frobnicate"}).code == kExitError);
  CHECK(run({"chase", "-i", data_path("fig1.json")}).code == kExitError);
  CHECK(run({"chase", "-m", data_path("example1.tdx"), "-i", data_path("fig2.json")}).code == kExitError);
  CHECK(run({"normalize", "-i", data_path("fig2.json")}).code == kExitError);
}

TEST_CASE("every command is deterministic") {
  const std::vector<std::vector<std::string>> commands = {
      {"normalize", "-i", data_path("fig1.json")},
      {"chase", "-m", data_path("example1.tdx"), "-i", data_path("fig1.json")},
      {"achase", "-m", data_path("example1.tdx"), "-i", data_path("fig2.json")},
      {"achase", "-m", data_path("example3.tdx"), "-i", data_path("fig6.json")},
      {"sem", "-i", data_path("fig3.json"), "--horizon", "15"},
      {"query", "-m", data_path("example1.tdx"), "-i", data_path("fig3.json"), "-q", "salaried"},
      {"certain", "-m", data_path("example1.tdx"), "-i", data_path("fig2.json"), "-q", "q1"},
      {"equiv", "-a", data_path("fig4.json"), "-b", data_path("fig5.json")},
  };
  for (const auto& args : commands) {
    CAPTURE(args[0]);
    const auto first = run(args), second = run(args);
    CHECK(first.code == second.code);
    CHECK(first.out == second.out);
    CHECK(first.err == second.err);
  }
}
