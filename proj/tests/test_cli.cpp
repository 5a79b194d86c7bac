#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "glueback/catalog.hpp"
#include "glueback/cli.hpp"
#include "glueback/orbit_format.hpp"

using namespace glueback;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("glueback_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string model_file(const std::string& name) {
  const auto r = run({"catalog", "emit", name});
  REQUIRE(r.code == cli::kOk);
  return write(name + ".orb", r.out);
}

}  // namespace

TEST_CASE("verify --all passes on the football") {
  const auto r = run({"verify", "--all", model_file("football")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("borel") != std::string::npos);
  CHECK(r.out.find("fail") == std::string::npos);
}

TEST_CASE("homology of the tetrahedron model shows the Z/2") {
  const auto f = model_file("simplex(3)");
  const auto r = run({"homology", f});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("1: betti 1 torsion [2]") != std::string::npos);
  const auto z = run({"homology", "--coeff", "z", f});
  CHECK(z.out.find("torsion [2]") != std::string::npos);
  const auto q = run({"homology", "--coeff", "q", f});
  CHECK(q.out.find("1: betti 0 torsion []") != std::string::npos);
}

TEST_CASE("build rejects a dependent coloring with exit 2") {
  const auto c = make("simplex(2)");
  Coloring bad = c.lambda;
  bad.colors.at(c.q.facet(0).name) = bad.colors.at(c.q.facet(1).name);
  const auto r = run({"build", write("bad.orb", emit_orbit_file(c.q, 2, &bad))});
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("coloring-dependent") != std::string::npos);
}

TEST_CASE("input errors exit 2") {
  CHECK(run({"frobnicate"}).code == cli::kInputError);
  CHECK(run({"homology", "--nope", model_file("football")}).code == cli::kInputError);
  CHECK(run({"validate", (scratch() / "missing.orb").string()}).code == cli::kInputError);
  const auto text = run({"catalog", "emit", "simplex(2)"}).out + "color F9 101\n";
  const auto r = run({"validate", write("f9.orb", text)});
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("F9") != std::string::npos);
  CHECK(r.err.find("line ") != std::string::npos);
  CHECK(run({"catalog", "emit", "dodecahedron"}).code == cli::kInputError);
}

TEST_CASE("reports are deterministic") {
  const auto f = model_file("football");
  for (const std::vector<std::string> args : {std::vector<std::string>{"build", f}, {"verify", "--all", f},
                                              {"homology", f}, {"--json", "verify", "--all", f}}) {
    CHECK(run(args).out == run(args).out);
  }
}

TEST_CASE("json output carries the schema") {
  const auto r = run({"--json", "homology", model_file("football")});
  REQUIRE(r.code == cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema") == cli::kJsonSchema);
  CHECK(j.at("verb") == "homology");
  CHECK(j.at("degrees").size() == 4);
}

TEST_CASE("cutpaste glues two footballs and refuses mismatched sections") {
  const auto fb = model_file("football");
  const auto ball = "ball@" + std::to_string(model_center("football"));
  const auto r = run({"cutpaste", fb, fb, "--k1", ball, "--k2", ball});
  REQUIRE(r.code == cli::kOk);
  const auto glued = write("tube.orb", r.out);
  CHECK(run({"validate", glued}).code == cli::kOk);
  CHECK(run({"homology", "--coeff", "gf2", glued}).out.find("1: betti 7") != std::string::npos);
  const auto bad = run({"cutpaste", model_file("simplex(3)"), fb, "--k1", "collar@0", "--k2", "collar@0"});
  CHECK(bad.code == cli::kCheckFailed);
}

TEST_CASE("counting verbs") {
  CHECK(run({"enumerate-colorings", "--rank", "3", model_file("simplex(3)")}).out.find("total 168") !=
        std::string::npos);
  CHECK(run({"enumerate-colorings", "--rank", "3", "--up-to", "weak", model_file("simplex(3)")}).out.find("classes 1") !=
        std::string::npos);
  CHECK(run({"bundles", model_file("circle(4)")}).out.find("classes 2") != std::string::npos);
  CHECK(run({"classify-boundary", model_file("football")}).out.find("football-pattern") != std::string::npos);
  const auto list = run({"catalog", "list"});
  CHECK(list.out.find("football\n") != std::string::npos);
}
