#include <random>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "kit/kit.hpp"
#include "out/printer.hpp"

using kit::Lab;
using rr::out::Printer;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

// Transcript lines that are results, not echoed statements or blanks.
std::vector<std::string> results(const std::string& transcript) {
  std::vector<std::string> out;
  auto all = lines_of(transcript);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].empty()) continue;
    if (!all[i].empty() && (all[i].back() == ';' || all[i].back() == '$')) continue;
    out.push_back(all[i]);
  }
  return out;
}

// Prints q at the given width, joins continuation lines and reads it back.
void round_trip(Lab& lab, const kit::SQ& q, int width) {
  Printer& pr = lab.session().printer();
  int saved = pr.width;
  pr.width = width;
  auto laid = pr.layout(pr.sq(q));
  pr.width = saved;
  for (auto& l : laid) CHECK(static_cast<int>(l.size()) <= width);
  auto joined = Printer::join(laid);
  REQUIRE(joined.size() == 1);
  INFO(joined[0]);
  CHECK(lab.alg().ring.equalsq(lab.simp(joined[0]), q));
}

}  // namespace

TEST_CASE("plain expressions") {
  Lab lab;
  CHECK(lab.show("2*x + 1") == "2*X + 1");
  CHECK(lab.show("x - x") == "0");
  CHECK(lab.show("1 + 2*x") == "2*X + 1");
  CHECK(lab.show("-x") == "-X");
  CHECK(lab.show("(x+1)**2") == "X**2 + 2*X + 1");
  CHECK(lab.show("x/y") == "X/Y");
  CHECK(lab.show("1/(x+1)") == "1/(X + 1)");
}

TEST_CASE("assignment and echo") {
  Lab lab;
  lab.run("y := 2*x + 1;");
  CHECK(lab.out == "y := 2*x + 1;\nY := 2*X + 1\n\n");
  lab.out.clear();
  lab.run("z := y$");
  CHECK(lab.out.empty());
}

TEST_CASE("factor and list") {
  Lab lab;
  lab.run("factor z; (a+b)**2*z + y*z + 3;");
  auto r = results(lab.out);
  REQUIRE(!r.empty());
  CHECK(r.back() == "Z*(A**2 + 2*A*B + B**2 + Y) + 3");
  lab.out.clear();
  lab.run("remfac z; (a+b)**2*z + 3;");
  r = results(lab.out);
  CHECK(r.back() == "A**2*Z + 2*A*B*Z + B**2*Z + 3");

  // under LIST each top-level term starts a line
  Lab fl;
  fl.run(kit::corpus_slice("for all x, y let cos(x)*cos(y)", "remfac cos,sin;"));
  auto lines = lines_of(fl.out);
  auto first = std::find_if(lines.begin(), lines.end(), [](const std::string& l) { return l.rfind("COS(", 0) == 0; });
  REQUIRE(first != lines.end());
  int heads = 0;
  std::regex head("(  [+-] )?(COS|SIN)\\([0-9]*\\*?OMEGA\\*T\\)\\*\\(.*");
  for (auto it = first; it != lines.end() && !it->empty(); ++it)
    if (std::regex_match(*it, head)) ++heads;
  CHECK(heads == 10);  // cosines and sines of omega*t times 1, 3, 5, 7, 9
}

TEST_CASE("write and nero") {
  Lab lab;
  lab.run("y := 2*x + 1$ write \"X =\", y + 1;");
  CHECK(results(lab.out) == std::vector<std::string>{"X =2*X + 2"});
  lab.out.clear();
  lab.run("on nero; a := 0; b := x; array q(2); q(1) := 0; write q(1) := 0; write \"Z=\", 0; off nero;");
  CHECK(results(lab.out) == std::vector<std::string>{"B := X", "Z=0"});
  lab.out.clear();
  lab.run("c := 0; write q(1) := 0;");
  CHECK(results(lab.out) == std::vector<std::string>{"C := 0", "Q(1) := 0"});
  lab.out.clear();
  lab.run("write a := b := 5;");
  CHECK(results(lab.out) == std::vector<std::string>{"A := B := 5"});
}

TEST_CASE("showtime") {
  Lab lab;
  lab.run("showtime;");
  auto r = results(lab.out);
  REQUIRE(r.size() == 1);
  CHECK(std::regex_match(r[0], std::regex("TIME: [0-9]+ MS  WALL: [0-9]+ MS")));
}

TEST_CASE("div") {
  Lab lab;
  lab.run("on div; y/2 + 1/3; (a+b)**2/(4*c); off div;");
  auto r = results(lab.out);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == "Y/2 + 1/3");
  // each term shares only the integer content of the denominator
  CHECK(r[1] == "A**2/(4*C) + A*B/(2*C) + B**2/(4*C)");
  CHECK(lab.same(r[1], "(a+b)**2/(4*c)"));
  lab.out.clear();
  lab.run("y/2 + 1/3;");
  CHECK(results(lab.out).back() == "(3*Y + 2)/6");
}

TEST_CASE("line breaking") {
  Lab lab(30);
  lab.run("w := (x+1)**12;");
  auto lines = lines_of(lab.out);
  int cont = 0;
  for (auto& l : lines) {
    CHECK(l.size() <= 30);
    if (l.rfind("  ", 0) == 0) ++cont;
  }
  CHECK(cont > 3);
  CHECK(lab.same("w", "(x+1)**12"));
}

TEST_CASE("printed text reads back") {
  Lab lab;
  std::mt19937_64 rng(12);
  kit::ExprGen gen{rng, lab.in(), {"X", "Y", "Z"}};
  for (int i = 0; i < 60; ++i) {
    kit::SQ q = lab.simp(gen.rational(3));
    for (int w : {16, 23, 40, 80}) round_trip(lab, q, w);
  }
  for (int i = 0; i < 20; ++i) {
    kit::SQ q = lab.simp(gen.transcendental("X", 3));
    for (int w : {16, 80}) round_trip(lab, q, w);
  }
  // FACTOR and DIV change the layout, not the value
  lab.run("factor x; on div;");
  for (int i = 0; i < 30; ++i) {
    kit::SQ q = lab.simp(gen.rational(3));
    for (int w : {16, 50}) round_trip(lab, q, w);
  }
  lab.run("off div; remfac x;");
}

TEST_CASE("fourier cube reads back under factor, list and div") {
  Lab lab;
  lab.run(kit::corpus_slice("for all x, y let cos(x)*cos(y)", "factor cos,sin;"));
  kit::SQ q = lab.simp("(a1*cos(omega*t) + a3*cos(3*omega*t) + b1*sin(omega*t) + b3*sin(3*omega*t))**3");
  for (const char* mode : {"", "factor cos,sin;", "on list;", "on div;"}) {
    lab.run(mode);
    for (int w : {16, 37, 80}) round_trip(lab, q, w);
  }
}
