#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "cosep/cli.hpp"
#include "cosep/format.hpp"

using namespace cosep;

namespace {

const Field FQ = Field::rationals();

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr, const std::string& stdin_text = "") {
  std::ostringstream out, err;
  std::istringstream in(stdin_text);
  int code = cli::run_command(args, out, err, in);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string corpus_text(const std::string& name, std::size_t n = 0,
                        const std::string& field = "Q") {
  Coalgebra c = build_corpus(name, Field::parse(field), n);
  return serialize_spec(name, c).dump();
}

bool same_coalgebra(const Coalgebra& a, const Coalgebra& b) {
  return a.field == b.field && a.dim == b.dim && a.basis_names == b.basis_names &&
         a.delta == b.delta && a.epsilon == b.epsilon;
}

}  // namespace

TEST_SUITE("spec_format") {
  TEST_CASE("trivial spec parses to the trivial coalgebra") {
    std::string text = R"({
      "name": "trivial", "field": "Q", "dim": 1, "basis": ["e"],
      "delta": [{"from": 0, "left": 0, "right": 0, "coeff": "1"}],
      "epsilon": [{"at": 0, "coeff": 1}]
    })";
    ParsedSpec spec = parse_spec(text);
    CHECK(spec.name == "trivial");
    CHECK(same_coalgebra(spec.coalgebra, make_trivial(FQ)));
  }

  TEST_CASE("builder -> serialize -> parse is the identity on the corpus") {
    for (const char* field : {"Q", "Fp:5"})
      for (const auto& [name, n] :
           std::vector<std::pair<std::string, std::size_t>>{{"trivial", 0},
                                                            {"grouplike", 2},
                                                            {"grouplike", 3},
                                                            {"matrix", 2},
                                                            {"matrix", 3},
                                                            {"dualnumbers", 0}}) {
        Coalgebra c = build_corpus(name, Field::parse(field), n);
        ParsedSpec back = parse_spec(serialize_spec(name, c).dump());
        CHECK(same_coalgebra(back.coalgebra, c));
      }
  }

  TEST_CASE("duplicate delta entries are summed") {
    std::string text = R"({
      "name": "t", "field": "Q", "dim": 1,
      "delta": [{"from":0,"left":0,"right":0,"coeff":"1/3"},
                {"from":0,"left":0,"right":0,"coeff":"2/3"}],
      "epsilon": [{"at":0,"coeff":"1"}]
    })";
    ParsedSpec spec = parse_spec(text);
    CHECK(spec.coalgebra.d(0, 0, 0).is_one());
  }

  TEST_CASE("malformed inputs are rejected with useful messages") {
    CHECK_THROWS_WITH_AS(parse_spec("{\n  \"field\": }"),
                         doctest::Contains("syntax error at line 2"), input_error);
    CHECK_THROWS_AS(
        parse_spec(R"({"field":"Q","dim":1,"delta":[{"from":0,"left":0,"right":0,"coeff":"1/0"}]})"),
        input_error);
    CHECK_THROWS_AS(
        parse_spec(R"({"field":"Q","dim":1,"delta":[{"from":1,"left":0,"right":0,"coeff":"1"}]})"),
        input_error);
    CHECK_THROWS_AS(
        parse_spec(R"({"field":"Fp:6","dim":1,"delta":[]})"), input_error);
    CHECK_THROWS_AS(parse_spec(R"({"field":"Q","dim":0,"delta":[]})"), input_error);
  }

  TEST_CASE("non-coassociative input is rejected with the witness") {
    // dual numbers with Delta(x) = g(x)x + x(x)x
    std::string text = R"({
      "name": "broken", "field": "Q", "dim": 2, "basis": ["g","x"],
      "delta": [{"from":0,"left":0,"right":0,"coeff":"1"},
                {"from":1,"left":0,"right":1,"coeff":"1"},
                {"from":1,"left":1,"right":1,"coeff":"1"}],
      "epsilon": [{"at":0,"coeff":"1"}]
    })";
    CHECK_THROWS_WITH_AS(parse_spec(text), doctest::Contains("not coassociative"),
                         input_error);
  }

  TEST_CASE("input hash is stable and input-sensitive") {
    Coalgebra a = make_grouplike(FQ, 2);
    CHECK(input_hash(a) == input_hash(make_grouplike(FQ, 2)));
    CHECK(input_hash(a) != input_hash(make_grouplike(FQ, 3)));
    CHECK(input_hash(a) != input_hash(make_grouplike(Field::prime(5), 2)));
  }
}

TEST_SUITE("cli") {
  TEST_CASE("validate: pass, fail and input-error exit codes") {
    CHECK(run({"validate", "-"}, nullptr, nullptr, corpus_text("dualnumbers")) == 0);
    CHECK(run({"validate", "/nonexistent/file.json"}) == 2);
    CHECK(run({"validate", "-"}, nullptr, nullptr, "not json at all") == 2);
    // valid delta, broken epsilon: parses, fails validation -> exit 1
    std::string bad_eps = R"({
      "field": "Q", "dim": 2, "delta": [
        {"from":0,"left":0,"right":0,"coeff":"1"},
        {"from":1,"left":1,"right":1,"coeff":"1"}],
      "epsilon": [{"at":0,"coeff":"1"}]
    })";
    std::string out_text;
    CHECK(run({"validate", "-"}, &out_text, nullptr, bad_eps) == 1);
    auto j = nlohmann::json::parse(out_text);
    CHECK(j["result"]["coassociative"] == true);
    CHECK(j["result"]["pass"] == false);
    // but solver commands treat it as an input error
    CHECK(run({"cosep", "-"}, nullptr, nullptr, bad_eps) == 2);
  }

  TEST_CASE("cosep: feasible matrix(2) vs infeasible dual numbers") {
    std::string out_text;
    CHECK(run({"cosep", "-"}, &out_text, nullptr, corpus_text("matrix", 2)) == 0);
    auto j = nlohmann::json::parse(out_text);
    CHECK(j["result"]["feasible"] == true);
    CHECK(j["result"]["certificate_verified"] == true);
    // exact strings, never floats
    CHECK(j["result"]["certificate"][0][0].is_string());

    CHECK(run({"cosep", "-"}, &out_text, nullptr, corpus_text("dualnumbers")) == 1);
    j = nlohmann::json::parse(out_text);
    CHECK(j["result"]["feasible"] == false);
    CHECK(j["result"]["rank_augmented"].get<int>() ==
          j["result"]["rank_system"].get<int>() + 1);
  }

  TEST_CASE("counit: --side is required and respected") {
    CHECK(run({"counit", "-"}, nullptr, nullptr, corpus_text("grouplike", 2)) == 2);
    std::string out_text;
    CHECK(run({"counit", "-", "--side", "left"}, &out_text, nullptr,
              corpus_text("grouplike", 2)) == 0);
    auto j = nlohmann::json::parse(out_text);
    CHECK(j["result"]["side"] == "left");
    CHECK(j["result"]["certificate_verified"] == true);
    CHECK(run({"counit", "-", "--side", "right"}, nullptr, nullptr,
              corpus_text("dualnumbers")) == 1);
  }

  TEST_CASE("theorem: verdicts and exit codes") {
    CHECK(run({"theorem", "-"}, nullptr, nullptr, corpus_text("grouplike", 3, "Fp:5")) == 0);
    std::string out_text;
    CHECK(run({"theorem", "-"}, &out_text, nullptr, corpus_text("dualnumbers")) == 1);
    auto j = nlohmann::json::parse(out_text);
    CHECK(j["result"]["agree"] == true);
    CHECK(j["result"]["coseparable"] == false);
  }

  TEST_CASE("dorroh command validates the full construction") {
    std::string out_text;
    CHECK(run({"dorroh", "-"}, &out_text, nullptr, corpus_text("dualnumbers")) == 0);
    auto j = nlohmann::json::parse(out_text);
    CHECK(j["result"]["carrier_dim"] == 4);
    CHECK(j["result"]["pass"] == true);
    CHECK(j["result"]["regular_comodule_lift"]["forget_roundtrip"] == true);
  }

  TEST_CASE("balanced: agreement battery with seed control") {
    std::string out_text;
    CHECK(run({"balanced", "-", "--trials", "20", "--seed", "7"}, &out_text, nullptr,
              corpus_text("grouplike", 2)) == 0);
    auto j = nlohmann::json::parse(out_text);
    CHECK(j["result"]["seed"] == 7);
    CHECK(j["result"]["all_agree"] == true);
    CHECK(j["result"]["true_count"].get<int>() >= 1);   // committed zero form
    CHECK(j["result"]["false_count"].get<int>() >= 1);  // committed all-ones form

    setenv("COALG_SEED", "99", 1);
    CHECK(run({"balanced", "-", "--trials", "5"}, &out_text, nullptr,
              corpus_text("dualnumbers")) == 0);
    unsetenv("COALG_SEED");
    j = nlohmann::json::parse(out_text);
    CHECK(j["result"]["seed"] == 99);
  }

  TEST_CASE("corpus: emits parseable specs; unknown names are input errors") {
    std::string out_text;
    CHECK(run({"corpus", "matrix", "--n", "3", "--field", "Fp:5"}, &out_text) == 0);
    ParsedSpec spec = parse_spec(out_text);
    CHECK(spec.coalgebra.dim == 9);
    CHECK(spec.coalgebra.field == Field::prime(5));
    CHECK(run({"corpus", "nonsense"}, nullptr) == 2);
    CHECK(run({"corpus", "matrix", "--field", "Fp:9"}, nullptr) == 2);
    CHECK(run({"corpus", "grouplike", "--n", "0"}, nullptr) == 2);
    CHECK(run({"corpus", "grouplike"}, &out_text) == 0);  // default n = 2
    CHECK(parse_spec(out_text).coalgebra.dim == 2);
  }

  TEST_CASE("report: combined battery in json and text") {
    std::string out_text;
    CHECK(run({"report", "-", "--trials", "5"}, &out_text, nullptr,
              corpus_text("grouplike", 2)) == 0);
    auto j = nlohmann::json::parse(out_text);
    CHECK(j["result"]["validate"]["pass"] == true);
    CHECK(j["result"]["theorem"]["agree"] == true);
    CHECK(j["result"]["dorroh"]["pass"] == true);
    CHECK(j["result"]["epsilon_bar"]["left_linear"] == false);

    CHECK(run({"report", "-", "--trials", "5", "--text"}, &out_text, nullptr,
              corpus_text("grouplike", 2)) == 0);
    CHECK(out_text.find("coseparable: true") != std::string::npos);

    CHECK(run({"report", "-", "--trials", "5"}, &out_text, nullptr,
              corpus_text("dualnumbers")) == 1);
  }

  TEST_CASE("reports are deterministic modulo wall time") {
    std::string a, b;
    CHECK(run({"theorem", "-"}, &a, nullptr, corpus_text("matrix", 2)) == 0);
    CHECK(run({"theorem", "-"}, &b, nullptr, corpus_text("matrix", 2)) == 0);
    auto ja = nlohmann::ordered_json::parse(a);
    auto jb = nlohmann::ordered_json::parse(b);
    ja.erase("wall_ms");
    jb.erase("wall_ms");
    CHECK(ja.dump() == jb.dump());
  }

  TEST_CASE("help exits zero") {
    std::string out_text;
    CHECK(run({"--help"}, &out_text) == 0);
    CHECK(out_text.find("coalg") != std::string::npos);
  }
}
