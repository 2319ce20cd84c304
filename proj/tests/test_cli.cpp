// The manifest front end: parsing with positions, the three commands, report
// round-trips, exit codes, and one end-to-end run of the installed binary.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "koszul/cli.hpp"

using namespace koszul;
using Catch::Matchers::ContainsSubstring;

namespace {

Manifest mf(const std::string& text) { return parse_manifest(text); }

const char* hand_text = R"({
  "ring": {"vars": ["t"]},
  "hand_dgla": {
    "lo": 0,
    "pieces": [{"gens": 1}, {"gens": 1}, {"gens": 1, "relations": [["t"]]}],
    "d": [[["t"]], [["1"]]],
    "brackets": [
      {"j": 0, "k": 1, "matrix": [["1"]]},
      {"j": 1, "k": 0, "matrix": [["-1"]]},
      {"j": 0, "k": 2, "matrix": [["1"]]},
      {"j": 2, "k": 0, "matrix": [["-1"]]}
    ],
    "names": [["x"], ["y"], ["z"]]
  }
})";

bool claim_passed(const Report& r, const std::string& name) {
  for (const Claim& c : r.claims)
    if (c.name == name) return c.status == "PASS";
  return false;
}

}  // namespace

TEST_CASE("manifests parse with positions and round-trip") {
  Manifest m = mf(R"({"ring": {"vars": ["x", "y"], "relations": ["x*y"]},
                      "sequence": ["x^2", "y"], "truncation": 0,
                      "artin": {"params": ["t"], "relations": ["t^3"]},
                      "cover": ["x", "x-1"], "max_order": 4})");
  REQUIRE(m.ring_vars == std::vector<std::string>{"x", "y"});
  REQUIRE(m.ring_relations == std::vector<std::string>{"x*y"});
  REQUIRE(m.sequence.size() == 2);
  REQUIRE(m.truncation.value() == 0);
  REQUIRE(m.artin->params == std::vector<std::string>{"t"});
  REQUIRE(m.cover.size() == 2);
  REQUIRE(m.max_order.value() == 4);

  // the JSON echo parses back to the same echo
  Manifest again = mf(manifest_json(m).dump());
  REQUIRE(manifest_json(again) == manifest_json(m));

  Manifest h = mf(hand_text);
  REQUIRE(h.hand.has_value());
  REQUIRE(h.hand->pieces.size() == 3);
  REQUIRE(h.hand->brackets.size() == 4);
  REQUIRE(manifest_json(mf(manifest_json(h).dump())) == manifest_json(h));

  // malformed JSON reports the position of the offending byte
  try {
    mf("{\"ring\": {\"vars\": [\"x\"]}\n  \"sequence\": []}");
    FAIL("expected a manifest error");
  } catch (const ManifestError& e) {
    REQUIRE(e.line == 2);
    REQUIRE_THAT(e.what(), ContainsSubstring("manifest:2:"));
  }

  REQUIRE_THROWS_WITH(mf(R"({"sequence": ["x"]})"), ContainsSubstring("ring declaration"));
  REQUIRE_THROWS_WITH(mf(R"({"ring": {"vars": "x"}})"),
                      ContainsSubstring("array of strings"));
  REQUIRE_THROWS_WITH(mf(R"({"ring": {"vars": ["x"]}, "truncation": "no"})"),
                      ContainsSubstring("integer"));
}

TEST_CASE("the koszul command certifies shape and regularity") {
  Report r = cmd_koszul(mf(R"({"ring": {"vars": ["x", "y"]}, "sequence": ["x", "y"]})"));
  REQUIRE(r.ok());
  REQUIRE(r.exit_code() == 0);
  REQUIRE(r.claims.size() == 3);
  REQUIRE(claim_passed(r, "the differential squares to zero"));
  REQUIRE(claim_passed(r, "the sequence is regular"));
  REQUIRE(claim_passed(r, "degree-zero cohomology is the cyclic quotient by the sequence"));

  Report bad = cmd_koszul(mf(R"({"ring": {"vars": ["x", "y"]}, "sequence": ["x", "x"]})"));
  REQUIRE_FALSE(bad.ok());
  REQUIRE(bad.exit_code() == 1);
  REQUIRE_FALSE(claim_passed(bad, "the sequence is regular"));
  REQUIRE(claim_passed(bad, "the differential squares to zero"));

  // a malformed polynomial is rejected before any claim runs, with its column
  Report rej = cmd_koszul(mf(R"({"ring": {"vars": ["x"]}, "sequence": ["x +* 1"]})"));
  REQUIRE(rej.exit_code() == 2);
  REQUIRE_THAT(rej.error, ContainsSubstring("column 4"));
  REQUIRE(rej.claims.empty());

  Report noseq = cmd_koszul(mf(R"({"ring": {"vars": ["x"]}})"));
  REQUIRE(noseq.exit_code() == 2);
  REQUIRE_THAT(noseq.error, ContainsSubstring("sequence is required"));
}

TEST_CASE("certification suites run from manifests") {
  Manifest m = mf(R"({"ring": {"vars": ["x"]}, "sequence": ["x"]})");

  Report nha = cmd_certify(m, "nha-koszul");
  REQUIRE(nha.ok());
  REQUIRE(nha.theorem == "nha-koszul");
  REQUIRE(claim_passed(nha, "the contraction is surjective in cohomology in every degree"));

  Report tr = cmd_certify(mf(R"({"ring": {"vars": ["x", "y"]}, "sequence": ["x", "y"],
                                 "truncation": 0})"),
                          "nha-truncated", 11);
  REQUIRE(tr.ok());
  REQUIRE(claim_passed(tr, "endomorphism cohomology is concentrated in degrees 0..1"));
  REQUIRE(claim_passed(tr, "random cocycles in degree 0 reduce to contraction form"));

  Report na = cmd_certify(m, "not-homotopy-abelian");
  REQUIRE(na.ok());
  bool saw_residue = false;
  for (const Claim& c : na.claims)
    if (c.name == "the bracket admits no bilinear null homotopy") {
      REQUIRE_FALSE(c.data["residues"].empty());
      saw_residue = true;
    }
  REQUIRE(saw_residue);

  Report hand = cmd_certify(mf(hand_text), "example-1-6");
  REQUIRE(hand.ok());
  REQUIRE(claim_passed(hand, "antisymmetry, Leibniz and Jacobi hold"));
  REQUIRE(claim_passed(hand, "the bracket admits no bilinear null homotopy"));

  // hypotheses are preconditions, not claim failures
  Report irr = cmd_certify(mf(R"({"ring": {"vars": ["x"]}, "sequence": ["0"]})"), "nha-koszul");
  REQUIRE(irr.exit_code() == 2);
  REQUIRE_THAT(irr.error, ContainsSubstring("not regular"));
  Report nohand = cmd_certify(m, "example-1-6");
  REQUIRE(nohand.exit_code() == 2);
  REQUIRE_THAT(nohand.error, ContainsSubstring("hand_dgla"));
  Report unk = cmd_certify(m, "no-such-target");
  REQUIRE(unk.exit_code() == 2);
  REQUIRE_THAT(unk.error, ContainsSubstring("unknown certification target"));
}

TEST_CASE("local-to-global descent runs through the order chain") {
  Report r = cmd_certify(mf(R"({"ring": {"vars": ["x"]}, "sequence": ["x^2"],
                                "cover": ["x", "x-1"],
                                "artin": {"params": ["t"], "relations": ["t^4"]}})"),
                         "local-to-global", 5);
  REQUIRE(r.ok());
  REQUIRE(r.claims.size() == 2);  // orders 2 -> 3 and 3 -> 4
  for (const Claim& c : r.claims) REQUIRE(c.status == "PASS");

  Report thin = cmd_certify(mf(R"({"ring": {"vars": ["x"]}, "sequence": ["x^2"],
                                   "cover": ["x", "x-1"],
                                   "artin": {"params": ["t"], "relations": ["t^2"]}})"),
                            "local-to-global");
  REQUIRE(thin.exit_code() == 2);
  REQUIRE_THAT(thin.error, ContainsSubstring("no small extension chain"));
}

TEST_CASE("deformation solving over a point and over a cover") {
  Report pt = cmd_deform(mf(R"({"ring": {"vars": ["x"]}, "sequence": ["x^2"],
                                "artin": {"params": ["t"], "relations": ["t^3"]}})"));
  REQUIRE(pt.ok());
  REQUIRE(claim_passed(pt, "every first-order class lifts through the coefficient ring"));
  bool saw_orbits = false;
  for (const Claim& c : pt.claims)
    if (c.name == "gauge orbits among the lifted families") {
      REQUIRE(c.data["families"] == 2);
      REQUIRE(c.data["orbits"] == 2);
      saw_orbits = true;
    }
  REQUIRE(saw_orbits);

  Report cov = cmd_deform(mf(R"({"ring": {"vars": ["x"]}, "sequence": ["x^2"],
                                 "cover": ["x", "x-1"],
                                 "artin": {"params": ["e"], "relations": ["e^2"]}})"));
  REQUIRE(cov.ok());
  bool saw_dim = false;
  for (const Claim& c : cov.claims)
    if (c.name == "first-order moduli dimension") {
      REQUIRE(c.data["dimension"] == 2);
      saw_dim = true;
    }
  REQUIRE(saw_dim);
  REQUIRE(claim_passed(cov, "enumerated data are pairwise distinct at first order"));

  Report bad = cmd_deform(mf(R"({"ring": {"vars": ["x"]}, "sequence": ["x^2"],
                                 "cover": ["x", "x^2"],
                                 "artin": {"params": ["e"], "relations": ["e^2"]}})"));
  REQUIRE(bad.exit_code() == 2);
  REQUIRE_THAT(bad.error, ContainsSubstring("unit ideal"));

  Report noart = cmd_deform(mf(R"({"ring": {"vars": ["x"]}, "sequence": ["x^2"]})"));
  REQUIRE(noart.exit_code() == 2);
  REQUIRE_THAT(noart.error, ContainsSubstring("Artin coefficient ring"));
}

TEST_CASE("reports serialize and the binary honors exit codes") {
  Report r = cmd_koszul(mf(R"({"ring": {"vars": ["x"]}, "sequence": ["x"]})"), 99);
  json j = report_json(r);
  Report back = report_from_json(j);
  REQUIRE(report_json(back) == j);
  REQUIRE(back.seed == 99);
  REQUIRE(back.ok());
  std::string text = report_text(r);
  REQUIRE_THAT(text, ContainsSubstring("command: koszul"));
  REQUIRE_THAT(text, ContainsSubstring("all claims certified"));

  // deterministic given manifest and seed
  Report r2 = cmd_certify(mf(R"({"ring": {"vars": ["x", "y"]}, "sequence": ["x", "y"],
                                 "truncation": 0})"),
                          "nha-truncated", 11);
  Report r3 = cmd_certify(mf(R"({"ring": {"vars": ["x", "y"]}, "sequence": ["x", "y"],
                                 "truncation": 0})"),
                          "nha-truncated", 11);
  json a = report_json(r2), b = report_json(r3);
  a.erase("seconds");
  b.erase("seconds");
  REQUIRE(a == b);

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const fs::path man = dir / "koszul_cli_manifest.json";
  const fs::path out = dir / "koszul_cli_report.json";
  {
    std::ofstream f(man);
    f << R"({"ring": {"vars": ["x", "y"]}, "sequence": ["x", "y"]})";
  }
  const std::string base = std::string(KOSZUL_CLI_PATH) + " koszul --manifest " + man.string();
  int rc = std::system((base + " --json " + out.string() + " > /dev/null").c_str());
  REQUIRE(WEXITSTATUS(rc) == 0);
  std::ifstream jf(out);
  json written = json::parse(jf);
  REQUIRE(report_from_json(written).ok());
  REQUIRE(written["command"] == "koszul");

  {
    std::ofstream f(man);
    f << R"({"ring": {"vars": ["x", "y"]}, "sequence": ["x", "x"]})";
  }
  rc = std::system((base + " > /dev/null").c_str());
  REQUIRE(WEXITSTATUS(rc) == 1);

  {
    std::ofstream f(man);
    f << R"({"ring": )";
  }
  rc = std::system((base + " > /dev/null 2> /dev/null").c_str());
  REQUIRE(WEXITSTATUS(rc) == 2);

  fs::remove(man);
  fs::remove(out);
}
