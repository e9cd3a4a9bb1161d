#include <doctest.h>

#include "ratchet/config.hpp"

using namespace ratchet;

TEST_CASE("defaults describe the standard operating point") {
  RunSpec s;
  CHECK(s.system.u0 == 1.0);
  CHECK(s.system.f1 == 0.2);
  CHECK(s.system.f2 == 0.2);
  CHECK(s.system.omega == 1.0);
  CHECK(s.system.theta == 0.0);
  CHECK(s.system.mode == Mode::quantum);
  CHECK(s.bath.zeta == 0.1);
  CHECK(s.bath.gamma == 1.0);
  CHECK(s.bath.beta == 1.0);
  CHECK(s.bath.k_matsubara == 1);
  CHECK(s.bath.depth == 5);
  CHECK(s.nq == 64);
  CHECK(s.np == 401);
  CHECK(s.pmax == 10.0);
  CHECK(s.dt == doctest::Approx(1e-3 * two_pi).epsilon(1e-15));
  CHECK(s.max_periods == 50);
  CHECK(s.steady_tol == 1e-3);
  CHECK(s.drive_period() == doctest::Approx(two_pi));
  CHECK(s.dp() == doctest::Approx(0.05));
}

TEST_CASE("normalized wraps theta and pins the reduced units") {
  RunSpec s;
  s.system.theta = 3.0 * two_pi + 1.25;
  s.system.mass = 2.0;
  RunSpec n = normalized(s);
  CHECK(n.system.theta == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(n.system.mass == 1.0);
  CHECK(n.system.hbar == 1.0);
  CHECK(n.system.kappa == 1.0);

  s.system.theta = -0.5;
  CHECK(normalized(s).system.theta == doctest::Approx(two_pi - 0.5));

  s.system.theta = two_pi;
  CHECK(normalized(s).system.theta == 0.0);

  SUBCASE("idempotent") {
    RunSpec once = normalized(s);
    CHECK(normalized(once) == once);
  }

  SUBCASE("classical mode drops the Matsubara terms") {
    s.system.mode = Mode::classical;
    s.bath.k_matsubara = 3;
    CHECK(normalized(s).bath.k_matsubara == 0);
  }
}

TEST_CASE("validate accepts the default point") {
  ValidatedRunSpec v = validate(RunSpec{});
  CHECK(v->np == 401);
  CHECK((*v).system.mode == Mode::quantum);
}

TEST_CASE("validate rejects out-of-range parameters by name") {
  auto field_of = [](RunSpec s) -> std::string {
    try {
      validate(std::move(s));
    } catch (const InvalidParameter& e) {
      return e.field;
    }
    return "";
  };
  RunSpec s;
  s.system.u0 = 0.0;
  CHECK(field_of(s) == "u0");
  s = RunSpec{};
  s.bath.beta = -1.0;
  CHECK(field_of(s) == "beta");
  s = RunSpec{};
  s.bath.gamma = 0.0;
  CHECK(field_of(s) == "gamma");
  s = RunSpec{};
  s.np = 400;
  CHECK(field_of(s) == "np");
  s = RunSpec{};
  s.dt = 0.1;  // > period/100
  CHECK(field_of(s) == "dt");
  s = RunSpec{};
  s.nq = 32;  // dq = 0.196, too coarse
  CHECK(field_of(s) == "nq");
  s = RunSpec{};
  s.nq = 160;  // dq = 0.039, finer than supported
  CHECK(field_of(s) == "nq");
}

TEST_CASE("validate spots the cot pole at beta*hbar*gamma/2 = n pi") {
  RunSpec s;
  s.bath.beta = two_pi;  // gamma = 1, so the argument is exactly pi
  CHECK_THROWS_AS(validate(s), CotangentPole);

  s.bath.beta = two_pi + 0.01;
  CHECK_NOTHROW(validate(s));

  SUBCASE("classical mode never evaluates cot") {
    s.bath.beta = two_pi;
    s.system.mode = Mode::classical;
    CHECK_NOTHROW(validate(s));
  }
}

TEST_CASE("validate spots a Matsubara frequency sitting on gamma") {
  // nu_k = gamma exactly is the same locus as the cot pole, which is
  // reported first; the resonance guard covers the near-coincidence window.
  RunSpec s;
  s.bath.beta = 4.0 * two_pi;           // nu_1 = 0.25
  s.bath.gamma = 0.25 + 0.5e-9;         // inside the resonance window,
  CHECK_THROWS_AS(validate(s), MatsubaraResonance);  // outside the pole's

  s.bath.gamma = 0.25 + 1e-6;
  CHECK_NOTHROW(validate(s));

  SUBCASE("only activated Matsubara terms are checked") {
    s.bath.gamma = 0.5 + 0.5e-9;  // near nu_2
    s.bath.k_matsubara = 1;
    CHECK_NOTHROW(validate(s));
    s.bath.k_matsubara = 2;
    CHECK_THROWS_AS(validate(s), MatsubaraResonance);
  }
}

TEST_CASE("validate requires dp to divide hbar*kappa in quantum mode") {
  RunSpec s;
  s.pmax = 7.0;
  s.np = 201;  // dp = 0.07
  CHECK_THROWS_AS(validate(s), GridShiftMismatch);

  s.pmax = 5.0;  // dp = 0.05, stride 20
  CHECK_NOTHROW(validate(s));

  SUBCASE("classical mode has no momentum shift") {
    s.pmax = 7.0;
    s.system.mode = Mode::classical;
    CHECK_NOTHROW(validate(s));
  }
}

TEST_CASE("load_config of an empty document yields the defaults") {
  CHECK(load_config("") == RunSpec{});
  CHECK(load_config("\n\n# only a comment\n") == RunSpec{});
}

TEST_CASE("load_config fills unmentioned keys with defaults") {
  RunSpec s = load_config("u0 = 2\nbeta = 5\n");
  CHECK(s.system.u0 == 2.0);
  CHECK(s.bath.beta == 5.0);
  CHECK(s.bath.gamma == 1.0);
  CHECK(s.bath.zeta == 0.1);
  CHECK(s.system.f1 == 0.2);
  CHECK(s.system.f2 == 0.2);
  CHECK(s.system.omega == 1.0);
}

TEST_CASE("load_config grammar corners") {
  SUBCASE("comments, blank lines, trailing comments") {
    RunSpec s = load_config(
        "# header\n"
        "\n"
        "  u0 = 4.0   # barrier height\n"
        "mode = classical\n");
    CHECK(s.system.u0 == 4.0);
    CHECK(s.system.mode == Mode::classical);
    CHECK(s.bath.k_matsubara == 0);  // normalized on load
  }

  SUBCASE("last assignment wins") {
    RunSpec s = load_config("zeta = 1\nzeta = 2\n");
    CHECK(s.bath.zeta == 2.0);
  }

  SUBCASE("unknown key reports the line") {
    try {
      load_config("u0 = 1\nu_zero = 2\n");
      FAIL("expected UnknownKey");
    } catch (const UnknownKey& e) {
      CHECK(e.line == 2);
      CHECK(e.key == "u_zero");
    }
  }

  SUBCASE("keys are case-sensitive") {
    CHECK_THROWS_AS(load_config("U0 = 1\n"), UnknownKey);
  }

  SUBCASE("malformed lines report the line") {
    try {
      load_config("u0 = 1\n\nbogus line\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(load_config("u0 = fast\n"), ParseError);
    CHECK_THROWS_AS(load_config("nq = 64.5\n"), ParseError);
    CHECK_THROWS_AS(load_config("u0 =\n"), ParseError);
    CHECK_THROWS_AS(load_config("= 3\n"), ParseError);
    CHECK_THROWS_AS(load_config("mode = semiclassical\n"), ParseError);
  }
}

TEST_CASE("dt default tracks the drive period") {
  CHECK(load_config("omega = 2\n").dt == doctest::Approx(1e-3 * two_pi / 2.0));
  CHECK(load_config("omega = 2\ndt = 0.004\n").dt == 0.004);
  CHECK(load_config("dt = 0.004\nomega = 2\n").dt == 0.004);
}

TEST_CASE("serialize then load_config round-trips exactly") {
  RunSpec s;
  s.system.u0 = 2.7182818284590452;
  s.system.f1 = 0.123456789012345678;
  s.system.theta = 2.5;
  s.system.mode = Mode::classical;
  s.bath.zeta = 0.37;
  s.bath.gamma = 9.81;
  s.bath.beta = 1.0 / 3.0;
  s.bath.depth = 7;
  s.nq = 80;
  s.np = 513;
  s.pmax = 12.5;
  s.dt = 1e-4;
  s.t_equil = 333.3;
  s.max_periods = 99;
  s.steady_tol = 2e-4;
  s = normalized(s);
  CHECK(load_config(serialize(s)) == s);
  CHECK(load_config(serialize(RunSpec{})) == RunSpec{});
}

TEST_CASE("apply_override mirrors the config grammar") {
  RunSpec s;
  apply_override(s, "f2=0");
  CHECK(s.system.f2 == 0.0);
  apply_override(s, " theta = 7.0 ");
  CHECK(s.system.theta == doctest::Approx(7.0 - two_pi));
  apply_override(s, "mode=classical");
  CHECK(s.bath.k_matsubara == 0);
  CHECK_THROWS_AS(apply_override(s, "u_zero=2"), UnknownKey);
  CHECK_THROWS_AS(apply_override(s, "f2"), ParseError);
  CHECK_THROWS_AS(apply_override(s, "nq=sixty"), ParseError);
}
