#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "liesym_cli/cli.hpp"

using json = nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out, err;
};

std::string data(const std::string& name) { return std::string(LIESYM_TEST_DATA) + "/" + name; }

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = liesym::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_status = 0) {
  Run r = run(std::move(args));
  CHECK(r.status == expected_status);
  json j = json::parse(r.out);
  CHECK(j.contains("command"));
  CHECK(j.contains("inputs"));
  CHECK(j.contains("result"));
  return j;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("prolong") {
    json j = run_json({"prolong", "--file", data("heat.prob"), "--vf", "rot", "--order", "2"});
    CHECK(j["command"] == "prolong");
    CHECK(j["inputs"]["vf"] == "rot");
    CHECK(j["result"]["coefficients"]["u_x"] == "1 + u_x^2");
    CHECK(j["result"]["coefficients"]["u_xx"] == "3*u_x*u_xx");
    json rec = run_json({"prolong", "--file", data("heat.prob"), "--vf", "rot", "--order", "2", "--recursive"});
    CHECK(rec["result"]["coefficients"] == j["result"]["coefficients"]);
  }

  TEST_CASE("determine and solve") {
    json d = run_json({"determine", "--file", data("heat.prob"), "--system", "heat"});
    auto eqs = d["result"]["equations"];
    CHECK(std::find(eqs.begin(), eqs.end(), "2*tau_u") != eqs.end());
    json s = run_json({"solve", "--file", data("heat.prob"), "--system", "heat", "--degree", "3"});
    CHECK(s["result"]["kernel_dimension"] == 10);
    CHECK(s["result"]["basis"].size() == 10);
    CHECK(s["result"]["all_verified"] == true);
    CHECK(s["result"]["basis"][0]["xi"]["x"] == "1");
    json low = run_json({"--degree", "1", "solve", "--file", data("heat.prob"), "--system", "heat"});
    CHECK(low["result"]["kernel_dimension"] == 6);
  }

  TEST_CASE("checks report through the exit status") {
    json ok = run_json({"check-symmetry", "--file", data("heat.prob"), "--system", "heat", "--vf", "galilei"});
    CHECK(ok["result"]["symmetric"] == true);
    json bad = run_json({"check-symmetry", "--file", data("heat.prob"), "--system", "heat", "--vf", "bad"}, 1);
    CHECK(bad["result"]["defects"][0] == "-2*u_x^2");
    run_json({"check-claw", "--file", data("wave.prob"), "--system", "wave", "--current", "energy"});
    run_json({"null-div", "--file", data("wave.prob"), "--current", "energy"}, 1);
    run_json({"null-div", "--file", data("nulldiv.prob"), "--current", "rot"});
    run_json({"check-char-form", "--file", data("wave.prob"), "--system", "wave", "--current", "massu", "--char",
              "1", "--char", "0"});
    run_json({"check-invariant", "--file", data("rotation.prob"), "--vf", "rot", "--expr",
              "u_xx*(1+u_x^2)^(-3/2)"});
    run_json({"rank-probe", "--file", data("heat.prob"), "--system", "heat", "--point", "u_t=1,u_xx=1"});
    run_json({"rank-probe", "--file", data("heat.prob"), "--expr", "u_x^2", "--point", "u_x=0"}, 1);
  }

  TEST_CASE("variational commands") {
    json e = run_json({"euler-lagrange", "--file", data("rotation.prob"), "--lagrangian", "arc"});
    CHECK(e["result"]["equations"]["u"] == "-u_xx*(1 + u_x^2)^(-3/2)");
    json n = run_json({"noether", "--file", data("rotation.prob"), "--vf", "rot", "--lagrangian", "arc"});
    CHECK(n["result"]["current"][0] == "(-u + x*u_x)*(1 + u_x^2)^(-1/2)");
    CHECK(n["result"]["identity_holds"] == true);
    CHECK(run({"noether", "--file", data("rotation.prob"), "--vf", "stretch", "--lagrangian", "arc"}).status == 1);
    json b = run_json({"noether", "--file", data("freeparticle.prob"), "--vf", "boost", "--lagrangian", "free",
                       "--current", "gauge"});
    CHECK(b["result"]["current"][0] == "-u + t*u_t");
    json v = run_json({"varsym-defect", "--file", data("rotation.prob"), "--vf", "stretch", "--lagrangian", "arc"});
    CHECK(v["result"]["variational_symmetry"] == false);
  }

  TEST_CASE("geometry and dimensions") {
    json br = run_json({"bracket", "--file", data("heat.prob"), "--vf", "dx", "--with", "galilei"});
    CHECK(br["result"]["field"]["phi"]["u"] == "-u");
    json cs = run_json({"char-system", "--file", data("rotation.prob"), "--vf", "rot"});
    CHECK(cs["result"]["equations"][0] == "dx/dt = -u");
    json ni = run_json({"next-invariant", "--file", data("rotation.prob"), "--eta", "(x^2+u^2)^(1/2)", "--zeta",
                        "u_xx*(1+u_x^2)^(-3/2)", "--vf", "rot"});
    CHECK(ni["result"]["verified"] == true);
    json pm = run_json({"pi", "--file", data("taylor.prob"), "--matrix", "taylor"});
    json pc = run_json({"pi", "--csv", data("taylor.csv")});
    CHECK(pm["result"] == pc["result"]);
    CHECK(pm["result"]["rank"] == 3);
    CHECK(pm["result"]["power_products"][0] == "t^6 · P0^5 · E^-2 · rho0^-3");
  }

  TEST_CASE("plain output") {
    Run r = run({"prolong", "--file", data("heat.prob"), "--vf", "rot", "--order", "1", "--plain"});
    CHECK(r.status == 0);
    CHECK(r.out.find("u_x: 1 + u_x^2\n") != std::string::npos);
  }

  TEST_CASE("input errors") {
    CHECK(run({}).status == 2);
    CHECK(run({"frobnicate"}).status == 2);
    CHECK(run({"prolong", "--file", data("missing.prob"), "--vf", "rot", "--order", "1"}).status == 2);
    CHECK(run({"prolong", "--file", data("heat.prob"), "--vf", "nope", "--order", "1"}).status == 2);
    CHECK(run({"prolong", "--file", data("heat.prob"), "--vf", "rot"}).status == 2);
    CHECK(run({"prolong", "--file", data("heat.prob"), "--vf", "rot", "--order", "x"}).status == 2);
    CHECK(run({"pi", "--file", data("taylor.prob")}).status == 2);
    Run bad = run({"check-invariant", "--file", data("rotation.prob"), "--vf", "rot", "--expr", "u_x +"});
    CHECK(bad.status == 2);
    CHECK_FALSE(bad.err.empty());
    CHECK(run({"--help"}).status == 0);
  }

  TEST_CASE("reports are deterministic") {
    std::vector<std::string> args{"solve", "--file", data("heat.prob"), "--system", "heat"};
    CHECK(run(args).out == run(args).out);
  }
}
