#include <doctest.h>

#include "qloop/closed_forms.hpp"
#include "qloop/errors.hpp"
#include "qloop/io.hpp"
#include "support.hpp"

using namespace qloop;
using qloop::test::R;

TEST_CASE("quiver JSON in both encodings") {
  const Quiver a = quiver_from_json(Json::parse(R"({"n": 3, "arrows": [[1, 2], [3, 2]]})"));
  const Quiver b = quiver_from_json(Json::parse(R"({"n": 3, "b": [[0, 1, 0], [-1, 0, -1], [0, 1, 0]]})"));
  CHECK(a == b);
  CHECK(quiver_to_json(a).dump() == R"({"n":3,"b":[[0,1,0],[-1,0,-1],[0,1,0]]})");
  CHECK(quiver_from_json(quiver_to_json(a)) == a);
}

TEST_CASE("malformed quiver JSON") {
  CHECK_THROWS_AS(quiver_from_json(Json::parse(R"({"b": [[0]]})")), ParseError);
  CHECK_THROWS_AS(quiver_from_json(Json::parse(R"({"n": 2})")), ParseError);
  CHECK_THROWS_AS(quiver_from_json(Json::parse(R"({"n": 2, "b": [[0, 1]]})")), ParseError);
  CHECK_THROWS_AS(quiver_from_json(Json::parse(R"({"n": 2, "b": [[0, "x"], [0, 0]]})")), ParseError);
  CHECK_THROWS_AS(quiver_from_json(Json::parse(R"({"n": 2, "arrows": [[1, 2, 3]]})")), ParseError);
  CHECK_THROWS_AS(quiver_from_json(Json::parse(R"({"n": 2, "b": [[0, 1], [1, 0]]})")), InvalidArgument);
}

TEST_CASE("loop JSON round trip") {
  const char* text = R"({"quiver": {"n": 2, "arrows": [[1, 2]]},
    "steps": [{"mutate": 2}, {"mutate": 1}, {"mutate": 2}, {"relabel": [2, 1]}]})";
  const MutationLoop loop = loop_from_json(Json::parse(text));
  CHECK(loop.normal_form().mutations == std::vector<int>{2, 1, 2});
  const MutationLoop again = loop_from_json(loop_to_json(loop));
  CHECK(again.steps() == loop.steps());
  CHECK(again.initial() == loop.initial());
  CHECK(normal_form_to_json(loop.normal_form()).dump() == R"({"mutations":[2,1,2],"phi":[2,1]})");
  CHECK_THROWS_AS(loop_from_json(Json::parse(R"({"quiver": {"n": 2, "arrows": []}, "steps": [{"flip": 1}]})")),
                  ParseError);
  CHECK_THROWS_AS(loop_from_json(Json::parse(R"({"quiver": {"n": 2, "arrows": [[1, 2]]}, "steps": [{"mutate": 1}]})")),
                  NotALoopError);
}

TEST_CASE("exponent form JSON") {
  const Json j = form_to_json(dynkin_form(DynkinType::parse("A3")));
  CHECK(j.dump() ==
        R"({"delta":4,"gram_num":[[3,2,1],[2,4,2],[1,2,3]],"gram_den":4,"positivity":"positive-definite"})");
}

TEST_CASE("series JSON round trip, including big coefficients") {
  QSeries s(4, R("3"));
  s.add_term(0, Integer(1));
  s.add_term(3, Integer(-2));
  s.add_term(12, Integer("123456789012345678901234567890"));
  const Json j = series_to_json(s);
  CHECK(j.dump() == R"({"delta":4,"cutoff":"3/1","terms":[[0,1],[3,-2],[12,"123456789012345678901234567890"]]})");
  CHECK(series_from_json(j) == s);
  CHECK(series_from_json(Json::parse(j.dump())) == s);
  CHECK_THROWS_AS(series_from_json(Json::parse(R"({"delta":4,"cutoff":"1","terms":[[5,1]]})")), ParseError);
  CHECK_THROWS_AS(series_from_json(Json::parse(R"({"delta":4,"cutoff":"1","terms":[[1,"x"]]})")), ParseError);
}

TEST_CASE("series text") {
  QSeries s(4, R("3"));
  CHECK(series_to_text(s) == "0");
  s.add_term(0, Integer(1));
  s.add_term(3, Integer(2));
  s.add_term(4, Integer(-1));
  CHECK(series_to_text(s) == "1 + 2 * q^(3/4) - 1 * q^(4/4)");
  QSeries neg(1, R("2"));
  neg.add_term(0, Integer(-3));
  CHECK(series_to_text(neg) == "-3");
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("25/2") == Rational(25) / 2);
  CHECK(parse_rational("8") == Rational(8));
  CHECK(parse_rational("-3/6") == Rational(-1) / 2);
  CHECK(to_fraction_string(parse_rational("8")) == "8/1");
  for (const char* bad : {"", "1/0", "1 /2", "a", "1/2/3", "/2", "2/", "+"})
    CHECK_THROWS_AS(parse_rational(bad), ParseError);
}
