#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "lcah/cli/interpreter.hpp"
#include "lcah/random.hpp"
#include "../support/fuzz.hpp"

using namespace lcah;
using namespace lcah::cli;
using lcah::fuzz::Generator;

namespace {

struct Fixture {
  Session session;
  Interpreter interp{session, Options{}};
  Fixture() {
    run("symbol a 1.4142135623730951");
    run("symbol b 0.7320508075688772");
  }
  std::string run(const std::string &line) {
    auto out = interp.execute(line);
    return out ? interp.format(line, *out) : std::string();
  }
};

TEST(Parser, GroupExpressions) {
  EXPECT_EQ(parse_group("R^2 + Z + T^3 + Z/6"), ElcaGroup(2, 1, 3, {Int(6)}));
  EXPECT_EQ(parse_group("Z/4 + Z/6"), ElcaGroup::finite({Int(2), Int(12)}));
  EXPECT_EQ(parse_group("0"), ElcaGroup());
  EXPECT_EQ(parse_group("T + R + Z/1"), ElcaGroup(1, 0, 1));
}

TEST(Parser, ScalarsAndMorphisms) {
  Fixture f;
  const SymbolTable &t = f.session.symbols;
  Scalar a = Scalar::symbol(t, 1);
  EXPECT_EQ(parse_scalar("2*a - 1/2", t), Scalar(2) * a - Scalar(Rat(1, 2)));
  EXPECT_EQ(parse_scalar("a^-1*a", t), Scalar(1));
  ElcaMorphism x = parse_morphism("[[a]] : Z -> T", t);
  f.run("mor f : Z -> T = [[a]]");
  EXPECT_EQ(std::get<ElcaMorphism>(*f.session.find("f")), x);
  EXPECT_EQ(x.B()(0, 0), a);
}

TEST(Parser, ErrorsCarryPositionAndExpectedTokens) {
  Fixture f;
  try {
    parse_statement("kernel [[a", f.session.symbols);
    FAIL() << "expected a parse error";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.column(), 11u);
    EXPECT_NE(std::find(e.expected().begin(), e.expected().end(), "']'"), e.expected().end());
    EXPECT_EQ(e.found(), "end of input");
  }
  try {
    parse_statement("let = Z", f.session.symbols);
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.column(), 5u);
    EXPECT_EQ(e.expected(), std::vector<std::string>{"name"});
  }
  try {
    parse_group("Z + Q");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.column(), 5u);
    EXPECT_EQ(e.expected().size(), 4u);
  }
  EXPECT_THROW(parse_scalar("c + 1", f.session.symbols), Error);
  EXPECT_THROW(parse_morphism("[[a, 1]] : Z -> T", f.session.symbols), Error);
}

TEST(Interpreter, GhostQuery) {
  Fixture f;
  f.run("mor x : Z -> T = [[a]]");
  f.run("let Xalpha = heart x");
  EXPECT_EQ(f.run("ghost? Xalpha"), "true\n");
}

TEST(Interpreter, NormalizePrintsFormAndCertificate) {
  Fixture f;
  f.run("mor g : Z^2 -> R = [[1, a]]");
  std::string out = f.run("normalize g");
  EXPECT_EQ(out.rfind("heart [[a]] : Z -> T\n  certificate cert:", 0), 0u) << out;
  ASSERT_EQ(f.session.certificates().size(), 1u);
}

TEST(Interpreter, DecomposeCircle) {
  Fixture f;
  std::string out = f.run("decompose [[]] : 0 -> T");
  EXPECT_NE(out.find("heart [] : 0 -> 0"), std::string::npos);
  EXPECT_NE(out.find("cotorsion T"), std::string::npos);
}

TEST(Interpreter, ThetaInverseOfNonGhostHasNoCertificate) {
  Fixture f;
  std::string out = f.run("thetainv [[1/5]] : Z/5 -> T");
  EXPECT_NE(out.find("no certificate"), std::string::npos) << out;
  EXPECT_TRUE(f.session.certificates().empty());
}

TEST(Interpreter, NotMonicCarriesKernel) {
  Fixture f;
  try {
    f.run("heart [[2/5]] : Z -> T");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMonic);
    EXPECT_EQ(exit_code(e), 1);
    std::string msg = f.interp.format_error("", e);
    EXPECT_NE(msg.find("[[5]] : Z -> Z"), std::string::npos) << msg;
  }
}

TEST(Interpreter, FailedStatementLeavesSessionAlone) {
  Fixture f;
  std::size_t before = f.session.history.size();
  EXPECT_THROW(f.run("let Q = heart [[2/5]] : Z -> T"), Error);
  EXPECT_EQ(f.session.find("Q"), nullptr);
  EXPECT_EQ(f.session.history.size(), before);
  EXPECT_THROW(f.run("ghost? nothing"), Error);
}

TEST(Interpreter, ExitCodes) {
  EXPECT_EQ(exit_code(Error(ErrorKind::Parse, "")), 1);
  EXPECT_EQ(exit_code(Error(ErrorKind::NotMonic, "")), 1);
  EXPECT_EQ(exit_code(Error(ErrorKind::Internal, "")), 2);
}

TEST(Interpreter, JsonOutput) {
  Session s;
  Interpreter interp(s, Options{true, false, 1});
  auto out = interp.execute("let G = Z/4 + Z/6");
  ASSERT_TRUE(out.has_value());
  io::json j = io::json::parse(interp.format("let G = Z/4 + Z/6", *out));
  EXPECT_EQ(j["bind"], "G");
  EXPECT_EQ(j["value"]["F"], io::json::array({"2", "12"}));
}

TEST(Session, EmptyRoundTripIsByteIdentical) {
  Session s;
  std::string a = s.serialize();
  EXPECT_EQ(Session::parse(a).serialize(), a);
}

TEST(Session, ReloadRevalidatesCertificate) {
  Fixture f;
  f.run("mor x : Z -> T = [[a]]");
  f.run("let X = heart x");
  f.run("let N = normalize [[1, a]] : Z^2 -> R");
  f.run("let Y = thetainv X");
  std::string a = f.session.serialize();
  Session back = Session::parse(a);
  EXPECT_EQ(back.certificates().size(), 2u);
  EXPECT_EQ(back.serialize(), a);
}

TEST(Session, TamperedCertificateNamesSquare) {
  Fixture f;
  f.run("let N = normalize [[1, a]] : Z^2 -> R");
  io::json j = f.session.to_json();
  io::json &right = j["certificates"][0]["steps"][0]["square"]["right"]["matrix"];
  right[0][0] = io::json{{"0", "2"}};
  try {
    Session::from_json(j);
    FAIL() << "tampered session loaded";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Session);
    EXPECT_NE(std::string(e.what()).find("square 0"), std::string::npos) << e.what();
  }
}

TEST(Session, VersionMismatch) {
  io::json j = Session().to_json();
  j["version"] = 2;
  EXPECT_THROW(Session::from_json(j), Error);
}

TEST(Session, BadBindingIsNamed) {
  Fixture f;
  f.run("mor x : Z -> T = [[a]]");
  f.run("let X = heart x");
  io::json j = f.session.to_json();
  j["bindings"][1]["value"]["differential"]["matrix"][0][0] = io::json{{"0", "2/5"}};
  try {
    Session::from_json(j);
    FAIL();
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("binding 'X'"), std::string::npos) << e.what();
  }
}

TEST(Fuzz, ParserRoundTripAndRobustness) {
  constexpr int kPerFamily = 2500;
  Fixture f;
  const SymbolTable &t = f.session.symbols;
  Generator gen(20240611);
  RandomSource rng(99, &t);
  RandomBounds bounds;
  int failures = 0;

  for (int i = 0; i < kPerFamily; ++i) {
    std::string text = gen.group();
    ElcaGroup g = parse_group(text);
    if (!(parse_group(render(g)) == g) && ++failures < 5)
      ADD_FAILURE() << "group round trip: " << text;
  }
  for (int i = 0; i < kPerFamily; ++i) {
    std::string text = gen.scalar();
    Scalar s = parse_scalar(text, t);
    if (!(parse_scalar(render(s, t), t) == s) && ++failures < 5)
      ADD_FAILURE() << "scalar round trip: " << text;
  }
  for (int i = 0; i < kPerFamily; ++i) {
    ElcaGroup S = rng.group(bounds), Y = rng.group(bounds);
    ElcaMorphism m = rng.morphism(S, Y, bounds);
    std::string text = render(m, t);
    ElcaMorphism back = parse_morphism(text, t);
    if ((!(back == m) || render(back, t) != text) && ++failures < 5)
      ADD_FAILURE() << "morphism round trip: " << text;
  }
  std::vector<std::string> seeds = fuzz::golden_lines(LCAH_GOLDEN_SCRIPT);
  ASSERT_FALSE(seeds.empty());
  int rejected = 0;
  for (int i = 0; i < kPerFamily; ++i) {
    std::string text = gen.mutate(seeds[gen.pick(0, static_cast<long>(seeds.size()) - 1)]);
    try {
      auto st = parse_statement(text, t);
      (void)st;
    } catch (const Error &e) {
      ++rejected;
      EXPECT_FALSE(e.is_internal()) << text << ": " << e.what();
    }
  }
  EXPECT_EQ(failures, 0);
  EXPECT_GT(rejected, 0);
}

TEST(Fuzz, MutatedStatementsExecuteWithoutInternalErrors) {
  std::vector<std::string> seeds = fuzz::golden_lines(LCAH_GOLDEN_SCRIPT);
  Generator gen(7);
  for (int i = 0; i < 1000; ++i) {
    Fixture f;
    for (const auto &l : seeds) {
      if (l.rfind("symbol", 0) == 0 || l.rfind("check", 0) == 0)
        continue;
      try {
        f.run(l);
      } catch (const Error &) {
      }
      if (f.session.bindings().size() > 8)
        break;
    }
    std::string text = gen.mutate(seeds[gen.pick(0, static_cast<long>(seeds.size()) - 1)]);
    if (text.rfind("check", 0) == 0)
      continue;
    try {
      f.run(text);
    } catch (const Error &e) {
      EXPECT_FALSE(e.is_internal()) << text << ": " << e.what();
    }
  }
}

} // namespace
