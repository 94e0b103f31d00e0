#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mga/errors.hpp"
#include "mga/smtlib.hpp"

using namespace mga;

#ifndef MGA_TEST_DATA
#define MGA_TEST_DATA "tests/data"
#endif

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(MGA_TEST_DATA "/corpus"))
    files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST(Parse, DeclareConst) {
  ParsedProblem p = parse_problem("(declare-const x Int)(assert (>= x 0))");
  ASSERT_EQ(p.declarations.size(), 1u);
  EXPECT_EQ(p.declarations[0].name, "x");
  EXPECT_EQ(p.assertion, mk_atom(Rel::Ge, mk_int_var("x"), mk_int(0)));
}

TEST(Parse, Select) {
  ParsedProblem p = parse_problem(
      "(declare-fun a () (Array Int Int))(declare-fun i () Int)(assert (= (select a i) 3))");
  EXPECT_EQ(p.assertion,
            mk_atom(Rel::Eq, mk_select(mk_array_var("a"), mk_int_var("i")), mk_int(3)));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_problem("(assert (>= x 0))"), SyntaxError);
  EXPECT_THROW(parse_problem("(declare-const x Int)(assert (>= x 0)"), SyntaxError);
  EXPECT_THROW(parse_problem("(set-logic QF_BV)"), UnsupportedFeature);
  EXPECT_THROW(parse_problem("(declare-fun f (Int Int) Int)"), UnsupportedFeature);
  EXPECT_THROW(parse_problem("(declare-const x Real)"), UnsupportedFeature);
  EXPECT_THROW(parse_problem("(push 1)"), UnsupportedFeature);
  std::string deep(10000, '(');
  EXPECT_THROW(read_sexprs(deep), SyntaxError);
  try {
    parse_problem("(declare-const x Int)\n(assert (>= y 0))");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line, 2u);
  }
}

TEST(Parse, NegativeAndBig) {
  ParsedProblem p = parse_problem(
      "(declare-const x Int)(assert (> x (- 123456789012345678901234567890)))");
  EXPECT_EQ(p.assertion.rhs().value(), -*parse_int("123456789012345678901234567890"));
}

TEST(Print, Atoms) {
  EXPECT_EQ(print_formula(mk_atom(Rel::Le, mk_int_var("x"), mk_int(7))), "(<= x 7)");
  Formula a = mk_atom(Rel::Le, mk_int_var("x"), mk_int(7));
  EXPECT_EQ(print_formula(mk_and({a})), "(<= x 7)");
  EXPECT_EQ(print_term(mk_int(-5)), "(- 5)");
  EXPECT_EQ(quote_symbol("odd name"), "|odd name|");
  EXPECT_EQ(quote_symbol("plain"), "plain");
}

TEST(Corpus, RoundTrip) {
  auto files = corpus();
  ASSERT_EQ(files.size(), 20u);
  for (const auto& f : files) {
    SCOPED_TRACE(f.string());
    ParsedProblem p = parse_problem(slurp(f));
    std::string printed = print_problem(p);
    ParsedProblem q = parse_problem(printed);
    EXPECT_EQ(p.declarations, q.declarations);
    EXPECT_EQ(p.assertion, q.assertion);
    EXPECT_EQ(print_problem(q), printed);
  }
}

// Mutated inputs must be rejected through the library's error types only.
TEST(Corpus, MutationFuzz) {
  auto files = corpus();
  std::mt19937_64 rng(99);
  const std::string alphabet = "()-+*<=> \n;|abxyz0123456789!:";
  std::size_t accepted = 0, rejected = 0;
  for (int round = 0; round < 3000; ++round) {
    std::string text = slurp(files[round % files.size()]);
    int edits = 1 + int(rng() % 4);
    for (int e = 0; e < edits && !text.empty(); ++e) {
      std::size_t pos = rng() % text.size();
      switch (rng() % 3) {
        case 0: text.erase(pos, 1); break;
        case 1: text.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
        default: text[pos] = alphabet[rng() % alphabet.size()]; break;
      }
    }
    try {
      parse_problem(text);
      ++accepted;
    } catch (const Error&) {
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0u);
  EXPECT_GT(accepted, 0u);
}
