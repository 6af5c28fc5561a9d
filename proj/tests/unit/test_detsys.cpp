#include <doctest.h>

#include <fstream>
#include <sstream>

#include "liesym/detsys.hpp"
#include "liesym/errors.hpp"
#include "liesym/parse.hpp"
#include "oracles.hpp"

using namespace liesym;

namespace {

Problem load(const std::string& name) {
  std::ifstream in(std::string(LIESYM_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

bool same_up_to_factor(const Expr& a, const Expr& b) {
  if (a.is_zero_const() || b.is_zero_const()) return a.is_zero_const() && b.is_zero_const();
  return (a / b).is_const();
}

}  // namespace

TEST_SUITE("detsys") {
  TEST_CASE("solved form is enforced") {
    Problem pr = parse_problem("indep x t\ndep u v");
    const Context& c = pr.context;
    JetVar ut{0, MultiIndex({1})}, utt{0, MultiIndex({1, 1})};
    CHECK_THROWS_AS(DiffSystem({{ut, c.u("u", {"x"})}, {utt, c.u("v")}}, c), InvalidSystem);
    CHECK_THROWS_AS(DiffSystem({{ut, c.u("u", {"x", "t"})}}, c), InvalidSystem);
    CHECK_THROWS_AS(DiffSystem({}, c), InvalidSystem);
    DiffSystem ok({{ut, c.u("v", {"x"})}, {JetVar{1, MultiIndex({1})}, c.u("u", {"x"})}}, c);
    CHECK(ok.order() == 1);
  }

  TEST_CASE("reduction modulo the heat equation") {
    Problem pr = load("heat.prob");
    const Context& c = pr.context;
    const DiffSystem& heat = pr.system("heat");
    CHECK(reduce_mod_system(c.u("u", {"t"}), heat, c) == c.u("u", {"x", "x"}));
    CHECK(reduce_mod_system(c.u("u", {"x", "t"}), heat, c) == c.u("u", {"x", "x", "x"}));
    CHECK(reduce_mod_system(c.u("u", {"t", "t"}), heat, c) == c.u("u", {"x", "x", "x", "x"}));
    CHECK(reduce_mod_system(c.u("u", {"t"}) * c.u("u", {"x"}) - c.u("u", {"x", "x"}) * c.u("u", {"x"}), heat, c)
              .is_zero_const());
    CHECK_THROWS_AS(reduce_mod_system(c.u("u", {"t", "t"}), heat, c, ReduceOptions{3}), OrderCapExceeded);
  }

  TEST_CASE("symmetry checks on the heat equation") {
    Problem pr = load("heat.prob");
    const Context& c = pr.context;
    const DiffSystem& heat = pr.system("heat");
    for (const char* name : {"dx", "dt", "scale", "galilei"}) {
      CAPTURE(name);
      CHECK(check_symmetry(pr.vfield(name), heat, c));
    }
    CHECK_FALSE(check_symmetry(pr.vfield("rot"), heat, c));
    auto d = symmetry_defect(pr.vfield("bad"), heat, c);
    REQUIRE(d.size() == 1);
    CHECK(d[0] == -2 * pow(c.u("u", {"x"}), 2));
  }

  TEST_CASE("first-order ODE invariant under rotations") {
    Problem pr = load("rotation.prob");
    const Context& c = pr.context;
    CHECK(check_symmetry(pr.vfield("rot"), pr.system("ode"), c));
    CHECK(check_symmetry(pr.vfield("stretch"), pr.system("ode"), c));
  }

  TEST_CASE("heat determining equations match the hand table") {
    Problem pr = load("heat.prob");
    const Context& c = pr.context;
    DeterminingSystem ds = determining_equations(pr.system("heat"), c);
    CHECK(ds.unknown_names == std::vector<std::string>{"xi", "tau", "phi"});
    auto U = [&](const char* n, std::vector<std::string> d = {}) { return c.unknown(n, d); };
    std::vector<Expr> table{
        U("tau", {"u"}),
        U("tau", {"x"}),
        U("tau", {"u", "u"}),
        U("tau", {"x", "u"}) + U("xi", {"u"}),
        -U("tau", {"t"}) + U("tau", {"x", "x"}) + 2 * U("xi", {"x"}),
        U("xi", {"u", "u"}),
        U("phi", {"u", "u"}) - 2 * U("xi", {"x", "u"}),
        U("xi", {"t"}) + 2 * U("phi", {"x", "u"}) - U("xi", {"x", "x"}),
        U("phi", {"t"}) - U("phi", {"x", "x"}),
    };
    CHECK(ds.equations.size() == table.size());
    for (const Expr& want : table) {
      CAPTURE(format_expr(want, c));
      bool found = false;
      for (const Expr& got : ds.equations) found = found || same_up_to_factor(got, want);
      CHECK(found);
    }
  }

  TEST_CASE("heat symmetry algebra") {
    Problem pr = load("heat.prob");
    const Context& c = pr.context;
    const DiffSystem& heat = pr.system("heat");
    DeterminingSystem ds = determining_equations(heat, c);
    RatMatrix M;
    LinearSystemReport rep;
    auto basis = solve_determining(ds, Ansatz{3}, c, &M, &rep);
    CHECK(rep.kernel_dim == 10);
    CHECK(M.cols() == rep.params);
    CHECK(rep.params - oracle::rank([&] {
            std::vector<std::vector<Rational>> rows(M.rows(), std::vector<Rational>(M.cols()));
            for (std::size_t i = 0; i < M.rows(); ++i)
              for (std::size_t j = 0; j < M.cols(); ++j) rows[i][j] = M(i, j);
            return rows;
          }()) == 10);
    REQUIRE(basis.size() == 10);
    for (const auto& v : basis) CHECK(check_symmetry(v, heat, c));
    CHECK(verify_lie_closure(basis, heat, c));
    CHECK(solve_determining(ds, Ansatz{1}, c).size() == 6);
  }

  TEST_CASE("rank probe") {
    Problem pr = load("heat.prob");
    const Context& c = pr.context;
    const DiffSystem& heat = pr.system("heat");
    Assignment good{{c.u("u", {"t"}), 1}, {c.u("u", {"x", "x"}), 1}};
    CHECK(rank_probe(heat, {good}, c));
    Assignment off{{c.u("u", {"t"}), 1}};
    CHECK_THROWS_AS(rank_probe(heat, {off}, c), InvalidSample);
    Expr ux = c.u("u", {"x"});
    CHECK_FALSE(rank_probe(std::vector<Expr>{ux * ux}, {Assignment{}}, c));
    CHECK(rank_probe(std::vector<Expr>{ux * ux - 1}, {Assignment{{ux, 1}}}, c));
  }
}
