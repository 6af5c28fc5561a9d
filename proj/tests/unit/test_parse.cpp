#include <doctest.h>

#include "liesym/errors.hpp"
#include "liesym/parse.hpp"

using namespace liesym;

TEST_SUITE("parse") {
  TEST_CASE("minimal system") {
    Problem pr = parse_problem("indep x t\ndep u\nsystem heat: u_t = u_xx");
    REQUIRE(pr.systems.size() == 1);
    const DiffSystem& s = pr.system("heat");
    CHECK(s.size() == 1);
    CHECK(s.order() == 2);
    CHECK(format_jet(s.equations()[0].lead, pr.context) == "u_t");
    CHECK(format_expr(s.implicit(0), pr.context) == "u_t - u_xx");
  }

  TEST_CASE("vector field assignments") {
    Problem pr = parse_problem("indep x\ndep u\nvf rot: xi[x] = -u; phi[u] = x");
    const VectorField& v = pr.vfield("rot");
    CHECK(v.xi[0] == -Expr::jet(0));
    CHECK(v.phi[0] == Expr::indep(0));
  }

  TEST_CASE("mixed partials normalize to zero") {
    Problem pr = parse_problem("indep x y\ndep u");
    CHECK(parse_expr("u_xy - u_yx", pr.context).is_zero_const());
  }

  TEST_CASE("expression forms") {
    Problem pr = parse_problem("indep x t\ndep u\nparam c\nunknown xi(x,t,u)");
    const Context& c = pr.context;
    Expr e = parse_expr("(1+u_x^2)^(3/2)", c);
    REQUIRE(e.kind() == Kind::Power);
    CHECK(e.exponent() == Rational(3, 2));
    CHECK(parse_expr("3/4", c) == Expr(Rational(3, 4)));
    CHECK(parse_expr("D(u,x,x,t)", c) == c.u("u", {"x", "x", "t"}));
    CHECK(parse_expr("D(u,x,x,t)", c) == parse_expr("u_xxt", c));
    CHECK(parse_expr("xi_{x,u}", c) == c.unknown("xi", {"x", "u"}));
    CHECK(parse_expr("xi_xu", c) == c.unknown("xi", {"x", "u"}));
    CHECK(parse_expr("D(xi,t)", c) == c.unknown("xi", {"t"}));
    CHECK(parse_expr("xi(x,t,u)", c) == c.unknown("xi"));
    CHECK(parse_expr("2^3^2", c) == Expr(512));
    CHECK(parse_expr("-x^2", c) == -(c.x("x") * c.x("x")));
    CHECK(parse_expr("sqrt(c)*exp(x)", c) == sqrt(c.param("c")) * liesym::exp(c.x("x")));
  }

  TEST_CASE("printer") {
    Problem pr = parse_problem("indep x t\ndep u");
    const Context& c = pr.context;
    CHECK(format_expr(pow(1 + pow(c.u("u", {"x"}), 2), Rational(1, 2)), c) == "(1 + u_x^2)^(1/2)");
    CHECK(format_expr(c.u("u", {"x", "x"}), c) == "u_xx");
    CHECK(format_expr(Expr(0), c) == "0");
    CHECK(format_expr(c.x("x") - c.x("t"), c) == "x - t");
    CHECK(format_expr(Rational(-3, 4) * c.x("x"), c) == "-3/4*x");
    Problem longer = parse_problem("indep xa tb\ndep u\nunknown f(xa,u)");
    CHECK(format_expr(longer.context.u("u", {"xa", "tb"}), longer.context) == "D(u,xa,tb)");
    CHECK(format_expr(longer.context.unknown("f", {"xa", "u"}), longer.context) == "f_{xa,u}");
  }

  TEST_CASE("shorthand subscripts need single-character names") {
    Problem pr = parse_problem("indep xa t\ndep u");
    CHECK_THROWS_AS(parse_expr("u_xa", pr.context), ParseError);
    CHECK(parse_expr("D(u,xa)", pr.context) == pr.context.u("u", {"xa"}));
  }

  TEST_CASE("continuation lines, comments and all item kinds") {
    const char* text = R"(# heading
indep x t
dep u v   # two fields
param m
system wave: u_t = v_x;
             v_t = u_x
lagrangian L: 1/2*m*u_t^2
current F: -v,
           u
dimmatrix A: 2 x 3 rows 1 0 1; 0 1 1; derived a b c; fundamental L0 T0
)";
    Problem pr = parse_problem(text);
    CHECK(pr.system("wave").size() == 2);
    CHECK(pr.current("F").size() == 2);
    CHECK(pr.dimension_model("A").A.cols() == 3);
    CHECK(pr.dimension_model("A").derived_names[2] == "c");
    CHECK(pr.dimension_model("A").fundamental_names[1] == "T0");
    CHECK_THROWS_AS(pr.system("nope"), UnknownSymbol);
  }

  TEST_CASE("positioned errors") {
    try {
      parse_problem("indep x\ndep u\nsystem s: u_x = y");
      FAIL("expected an error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 17);
    }
    CHECK_THROWS_AS(parse_problem("indep x\nindep x"), Error);
    CHECK_THROWS_AS(parse_problem("indep x\ndep u\nsystem s: u_x = 1\nsystem s: u_x = 2"), Error);
    CHECK_THROWS_AS(parse_problem("indep x\ndep u\nsystem s: u_x = u_xx"), ParseError);
    CHECK_THROWS_AS(parse_problem("indep x\ndep u\nvf v: xi[x] = u_x"), ParseError);
    CHECK_THROWS_AS(parse_problem("indep x\ndep u\ncurrent F: u, u"), Error);
    CHECK_THROWS_AS(parse_problem("indep x\ndep u\nlagrangian L: x^u"), ParseError);
    CHECK_THROWS_AS(parse_problem("indep x\ndep u\nlagrangian L: 1.5*x"), ParseError);
    CHECK_THROWS_AS(parse_problem("bogus x"), ParseError);
    CHECK_THROWS_AS(parse_problem("indep x\ndep u\nlagrangian L: (x"), ParseError);
  }
}
