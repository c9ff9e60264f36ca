#include "doctest.h"
#include "kit/kit.hpp"
#include "rlisp/lexer.hpp"
#include "rlisp/parser.hpp"
#include "rlisp/translate.hpp"
#include "rlisp/unparse.hpp"

using kit::Lab;
using kit::Value;
using rr::rlisp::Tok;

namespace {

std::vector<std::string> texts(const std::string& src) {
  std::vector<std::string> out;
  for (auto& t : rr::rlisp::lex(src)) out.push_back(t.kind == Tok::End ? "<end>" : t.text);
  return out;
}

std::vector<rr::rlisp::Statement> parse_all(Lab& lab, const std::string& src) {
  rr::rlisp::Parser p(lab.in(), src);
  std::vector<rr::rlisp::Statement> out;
  rr::rlisp::Statement s;
  while (p.next(s)) out.push_back(s);
  return out;
}

std::string tree(Lab& lab, const std::string& src) {
  auto all = parse_all(lab, src);
  REQUIRE(all.size() == 1);
  return lab.in().prin1_string(all[0].tree);
}

std::string lisp(Lab& lab, const std::string& src) {
  auto all = parse_all(lab, src);
  REQUIRE(all.size() == 1);
  return lab.in().prin1_string(rr::rlisp::translate(lab.in(), all[0].tree));
}

}  // namespace

TEST_CASE("tokenize") {
  CHECK(texts("w := for i:=1:10 product i;") ==
        std::vector<std::string>{"W", ":=", "FOR", "I", ":=", "1", ":", "10", "PRODUCT", "I", ";", "<end>"});
  CHECK(texts("COMMENT anything here;") == std::vector<std::string>{"<end>"});
  CHECK(texts("x**2$") == std::vector<std::string>{"X", "**", "2", "$", "<end>"});
  CHECK(texts("x^2 % rest of line\n;") == std::vector<std::string>{"X", "**", "2", ";", "<end>"});
  auto toks = rr::rlisp::lex("\"open");
  CHECK(toks[0].kind == Tok::Bad);
  CHECK(rr::rlisp::lex("}")[0].kind == Tok::Bad);
  auto esc = rr::rlisp::lex("!*ans");
  CHECK(esc[0].text == "*ANS");
  CHECK(esc[0].escaped);
  auto lines = rr::rlisp::lex("a\nb");
  CHECK(lines[1].line == 2);
}

TEST_CASE("parse statements") {
  Lab lab;
  CHECK(tree(lab, "for i:=2 step 2 until 50 sum i**2;") == "(FOR I (2 2 50) SUM (EXPT I 2))");
  CHECK(tree(lab,
             "integer procedure fac (n); begin integer m; m:=1; l1: if n=0 then return m; m:=m*n; n:=n-1; go "
             "to l1 end;") ==
        "(*PROCEDURE* FAC INTEGER (N) (*BLOCK* (M) (SETQ M 1) (*LABEL* L1) (*IF* (EQUAL N 0) (*RETURN* M)) "
        "(SETQ M (TIMES M N)) (SETQ N (DIFFERENCE N 1)) (*GO* L1)))");
  CHECK(tree(lab, "z**2+fac(4)-2*fac 2*y;") == "(PLUS (EXPT Z 2) (FAC 4) (MINUS (TIMES 2 (FAC 2) Y)))");
  CHECK(tree(lab, "fac 2**3;") == "(FAC (EXPT 2 3))");
  CHECK(tree(lab, "a := b := 2;") == "(SETQ A (SETQ B 2))");
  CHECK(tree(lab, "-x**2;") == "(MINUS (EXPT X 2))");
  CHECK(tree(lab, "a/b/c;") == "(QUOTIENT (QUOTIENT A B) C)");
  CHECK(tree(lab, "2**3**2;") == "(EXPT 2 (EXPT 3 2))");
  CHECK(tree(lab, "det xx;") == "(DET XX)");
  CHECK(tree(lab, "mat((1,2),(3,4));") == "(MAT (*ROW* 1 2) (*ROW* 3 4))");
  CHECK(tree(lab, "for all x let f(x) = x;") == "(*LET* (X) ((F X) X))");
  CHECK(tree(lab, "on nero;") == "(*ON* NERO)");
  CHECK(tree(lab, "mass p1=m;") == "(*UNSUPPORTED* MASS)");
}

TEST_CASE("keywords only at statement heads") {
  Lab lab;
  // statement words are ordinary names elsewhere
  CHECK(tree(lab, "x := write + order;") == "(SETQ X (PLUS WRITE ORDER))");
  CHECK(tree(lab, "write + order;") == "(*WRITE* ORDER)");
  CHECK(tree(lab, "y := !F!O!R + 1;") == "(SETQ Y (PLUS FOR 1))");
}

TEST_CASE("terminators") {
  Lab lab;
  auto all = parse_all(lab, "a := 1; b := 2$ end;");
  REQUIRE(all.size() == 3);
  CHECK(all[0].echo);
  CHECK_FALSE(all[1].echo);
  CHECK(lab.in().prin1_string(all[2].tree) == "(*END*)");

  Lab l1, l2;
  l1.run("x := 3; y := x + 1;");
  l2.run("x := 3$ y := x + 1$");
  CHECK(l1.show("y") == l2.show("y"));
  CHECK(l2.out.empty());
  CHECK_FALSE(l1.out.empty());
}

TEST_CASE("syntax errors") {
  Lab lab;
  rr::rlisp::Parser p(lab.in(), "x := (1 + ;\ny;");
  rr::rlisp::Statement s;
  try {
    p.next(s);
    FAIL("expected a parse error");
  } catch (const rr::rlisp::ParseError& e) {
    CHECK(e.line == 1);
    CHECK_FALSE(e.incomplete);
  }
  p.recover();
  REQUIRE(p.next(s));
  CHECK(lab.in().prin1_string(s.tree) == "Y");

  rr::rlisp::Parser open(lab.in(), "for i:=1:3 do");
  try {
    open.next(s);
    FAIL("expected a parse error");
  } catch (const rr::rlisp::ParseError& e) {
    CHECK(e.incomplete);
  }
}

TEST_CASE("translate") {
  Lab lab;
  CHECK(lisp(lab, "x + 1;") == "(AEVAL (QUOTE (PLUS X 1)))");
  CHECK(lisp(lab, "for l:=k+1:if k=i then j else 3 do x:=l;") ==
        "(ALG-FOR-DO L (PLUS K 1) NIL (IF (EQUAL K I) J 3) (AEVAL (QUOTE (SETQ X L))))");
  CHECK(lisp(lab, "write \"a\", x;") == "(ALG-WRITE \"a\" X)");
  CHECK(lisp(lab, "if a = b then c;") == "(COND ((ALG-BOOL (QUOTE (EQUAL A B))) (AEVAL (QUOTE C))))");
  CHECK(lisp(lab, "symbolic procedure sq1(x); if x neq 0 then x*x+1 else 0;") ==
        "(ALG-PROCEDURE SQ1 SYMBOLIC (X) (COND ((NOT (EQUAL X 0)) (PLUS2 (TIMES2 X X) 1)) (T 0)))");
  CHECK(lisp(lab, "array a(10);") == "(ALG-EXEC (QUOTE (*ARRAY* (A 10))))");
  CHECK(lisp(lab, "end;") == "NIL");
}

TEST_CASE("FOR forms evaluate as stated") {
  Lab lab;
  lab.run("array h(3,3), c(3,3,3);");
  lab.run("for i:=0:3 do h(i,i) := i + 1; for i:=0:3 do for j:=0:3 do for p:=0:3 do c(i,j,p) := i + j + p;");
  CHECK(lab.same("for p := 0:3 sum h(2,p)*c(1,1,p)", "3*(1+1+2)"));
  CHECK(lab.zero("for i:=1:0 sum f(i)"));
  CHECK(lab.same("for i:=1:0 product f(i)", "1"));
  // the finish bound is evaluated on every pass
  lab.run("n := 3; s := 0; for i := 1:n do begin s := s + i; if i = 1 then n := 5 end;");
  CHECK(lab.same("s", "15"));
  lab.run("k := 0; i := 0; j := 2; cnt := 0; for l := k+1 : if k=i then j else 3 do cnt := cnt + 1;");
  CHECK(lab.same("cnt", "2"));
}

TEST_CASE("unparse and re-parse are stable over the corpus") {
  Lab lab;
  auto all = parse_all(lab, kit::read_text(kit::corpus_path("alg.tst")));
  // hep.tst holds statements the parser rejects; keep the ones it accepts
  rr::rlisp::Parser hep(lab.in(), kit::read_text(kit::corpus_path("hep.tst")));
  rr::rlisp::Statement st;
  int rejected = 0;
  for (;;) {
    try {
      if (!hep.next(st)) break;
      all.push_back(st);
    } catch (const rr::rlisp::ParseError&) {
      ++rejected;
      hep.recover();
    }
  }
  CHECK(rejected > 0);
  CHECK(all.size() > 60);
  rr::rlisp::Unparser u(lab.alg());
  for (auto& s : all) {
    std::string text = u.statement(s.tree) + ";";
    auto again = parse_all(lab, text);
    INFO(text);
    REQUIRE(again.size() == 1);
    CHECK(rr::lisp::equal(again[0].tree, s.tree));
  }
}

TEST_CASE("corpus parses, HEP statements are diagnosed") {
  Lab lab;
  auto all = parse_all(lab, kit::read_text(kit::corpus_path("alg.tst")));
  CHECK(lab.in().prin1_string(all.back().tree) == "(*END*)");

  Lab hep;
  int errors = hep.run(kit::read_text(kit::corpus_path("hep.tst")));
  CHECK(errors > 0);
  CHECK(hep.err.find("high energy physics") != std::string::npos);
  CHECK(hep.session().ended());  // the run went on to END
}
