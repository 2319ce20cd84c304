#pragma once
// Manifest-driven front end: parse a JSON manifest, run a construction or a
// certification suite, and assemble a deterministic report.  Reports carry
// one status per claim, a certificate or witness wherever a claim could fail,
// the elapsed time, the engine version, and the seed that drove any random
// choices.  Exit codes: 0 all claims pass, 1 a claim failed, 2 the inputs
// were rejected before any claim ran.

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "koszul/cech.hpp"
#include "koszul/cohomology.hpp"
#include "koszul/deformation.hpp"
#include "koszul/dgla.hpp"
#include "koszul/json_io.hpp"
#include "koszul/koszul_complex.hpp"

namespace koszul {

inline constexpr const char* engine_version = "1.2.0";

// ---------------------------------------------------------------------------
// manifests

struct ManifestError : error {
  int line = 1, col = 1;
  ManifestError(const std::string& msg, int l, int c)
      : error("manifest:" + std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
        line(l),
        col(c) {}
};

struct ArtinDecl {
  std::vector<std::string> params;
  std::vector<std::string> relations;
};

struct HandPieceDecl {
  int gens = 0;
  std::vector<std::vector<std::string>> relations;  // columns of length gens
};

struct HandBracketDecl {
  int j = 0, k = 0;
  std::vector<std::vector<std::string>> rows;  // ngens(j+k) x ngens(j)*ngens(k)
};

struct HandDglaDecl {
  int lo = 0;
  std::vector<HandPieceDecl> pieces;
  std::vector<std::vector<std::vector<std::string>>> d;  // one row-major matrix per degree
  std::vector<HandBracketDecl> brackets;
  std::vector<std::vector<std::string>> names;
};

struct Manifest {
  std::vector<std::string> ring_vars;
  std::vector<std::string> ring_relations;
  std::vector<std::string> sequence;
  std::optional<int> truncation;
  std::optional<ArtinDecl> artin;
  std::vector<std::string> cover;
  std::optional<HandDglaDecl> hand;
  std::optional<int> max_order;
};

namespace detail {

inline std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] inline void schema_fail(const std::string& msg) { throw ManifestError(msg, 1, 1); }

inline std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) schema_fail(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const json& e : j) {
    if (!e.is_string()) schema_fail(where + " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline std::vector<std::vector<std::string>> string_grid(const json& j,
                                                         const std::string& where) {
  if (!j.is_array()) schema_fail(where + " must be an array of string arrays");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(string_list(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

inline Manifest parse_manifest(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = detail::line_col(text, e.byte ? e.byte - 1 : 0);
    throw ManifestError(e.what(), line, col);
  }
  if (!j.is_object()) detail::schema_fail("the manifest must be a JSON object");
  if (!j.contains("ring") || !j["ring"].is_object())
    detail::schema_fail("a ring declaration is required");

  Manifest m;
  const json& ring = j["ring"];
  if (!ring.contains("vars")) detail::schema_fail("ring.vars is required");
  m.ring_vars = detail::string_list(ring["vars"], "ring.vars");
  if (m.ring_vars.empty()) detail::schema_fail("ring.vars must not be empty");
  if (ring.contains("relations"))
    m.ring_relations = detail::string_list(ring["relations"], "ring.relations");

  if (j.contains("sequence")) m.sequence = detail::string_list(j["sequence"], "sequence");
  if (j.contains("cover")) m.cover = detail::string_list(j["cover"], "cover");
  if (j.contains("truncation")) {
    if (!j["truncation"].is_number_integer()) detail::schema_fail("truncation must be an integer");
    m.truncation = j["truncation"].get<int>();
  }
  if (j.contains("max_order")) {
    if (!j["max_order"].is_number_integer()) detail::schema_fail("max_order must be an integer");
    m.max_order = j["max_order"].get<int>();
  }
  if (j.contains("artin")) {
    const json& a = j["artin"];
    if (!a.is_object() || !a.contains("params"))
      detail::schema_fail("artin must be an object with params");
    ArtinDecl d;
    d.params = detail::string_list(a["params"], "artin.params");
    if (a.contains("relations")) d.relations = detail::string_list(a["relations"], "artin.relations");
    m.artin = std::move(d);
  }
  if (j.contains("hand_dgla")) {
    const json& h = j["hand_dgla"];
    if (!h.is_object() || !h.contains("pieces") || !h["pieces"].is_array())
      detail::schema_fail("hand_dgla must declare a pieces array");
    HandDglaDecl d;
    d.lo = h.value("lo", 0);
    for (std::size_t i = 0; i < h["pieces"].size(); ++i) {
      const json& p = h["pieces"][i];
      const std::string where = "hand_dgla.pieces[" + std::to_string(i) + "]";
      if (!p.is_object() || !p.contains("gens") || !p["gens"].is_number_integer())
        detail::schema_fail(where + " must declare gens");
      HandPieceDecl pd;
      pd.gens = p["gens"].get<int>();
      if (p.contains("relations")) pd.relations = detail::string_grid(p["relations"], where + ".relations");
      d.pieces.push_back(std::move(pd));
    }
    if (h.contains("d")) {
      if (!h["d"].is_array()) detail::schema_fail("hand_dgla.d must be an array of matrices");
      for (std::size_t i = 0; i < h["d"].size(); ++i)
        d.d.push_back(detail::string_grid(h["d"][i], "hand_dgla.d[" + std::to_string(i) + "]"));
    }
    if (h.contains("brackets")) {
      if (!h["brackets"].is_array()) detail::schema_fail("hand_dgla.brackets must be an array");
      for (std::size_t i = 0; i < h["brackets"].size(); ++i) {
        const json& b = h["brackets"][i];
        const std::string where = "hand_dgla.brackets[" + std::to_string(i) + "]";
        if (!b.is_object() || !b.contains("j") || !b.contains("k") || !b.contains("matrix"))
          detail::schema_fail(where + " must carry j, k and a matrix");
        d.brackets.push_back(
            {b["j"].get<int>(), b["k"].get<int>(), detail::string_grid(b["matrix"], where + ".matrix")});
      }
    }
    if (h.contains("names")) d.names = detail::string_grid(h["names"], "hand_dgla.names");
    m.hand = std::move(d);
  }
  return m;
}

inline json manifest_json(const Manifest& m) {
  json j;
  j["ring"] = json{{"vars", m.ring_vars}, {"relations", m.ring_relations}};
  if (!m.sequence.empty()) j["sequence"] = m.sequence;
  if (!m.cover.empty()) j["cover"] = m.cover;
  if (m.truncation) j["truncation"] = *m.truncation;
  if (m.max_order) j["max_order"] = *m.max_order;
  if (m.artin) j["artin"] = json{{"params", m.artin->params}, {"relations", m.artin->relations}};
  if (m.hand) {
    json h;
    h["lo"] = m.hand->lo;
    h["pieces"] = json::array();
    for (const HandPieceDecl& p : m.hand->pieces) {
      json pj{{"gens", p.gens}};
      if (!p.relations.empty()) pj["relations"] = p.relations;
      h["pieces"].push_back(std::move(pj));
    }
    if (!m.hand->d.empty()) h["d"] = m.hand->d;
    if (!m.hand->brackets.empty()) {
      h["brackets"] = json::array();
      for (const HandBracketDecl& b : m.hand->brackets)
        h["brackets"].push_back(json{{"j", b.j}, {"k", b.k}, {"matrix", b.rows}});
    }
    if (!m.hand->names.empty()) h["names"] = m.hand->names;
    j["hand_dgla"] = std::move(h);
  }
  return j;
}

// ---------------------------------------------------------------------------
// reports

struct Claim {
  std::string name;
  std::string status;       // PASS or FAIL
  std::string certificate;  // what backs the verdict; mandatory on FAIL
  json data = json::object();
};

struct Report {
  std::string command;
  std::string theorem;  // certification target when the command is certify
  json inputs = json::object();
  std::vector<Claim> claims;
  std::string error;  // nonempty: inputs were rejected before any claim ran
  double seconds = 0.0;
  std::string version = engine_version;
  std::uint64_t seed = 0;

  bool ok() const {
    if (!error.empty()) return false;
    for (const Claim& c : claims)
      if (c.status != "PASS") return false;
    return true;
  }

  int exit_code() const {
    if (!error.empty()) return 2;
    return ok() ? 0 : 1;
  }
};

inline json report_json(const Report& r) {
  json claims = json::array();
  for (const Claim& c : r.claims)
    claims.push_back(json{{"claim", c.name},
                          {"status", c.status},
                          {"certificate", c.certificate},
                          {"data", c.data}});
  return json{{"command", r.command}, {"theorem", r.theorem},   {"inputs", r.inputs},
              {"claims", claims},     {"error", r.error},       {"seconds", r.seconds},
              {"version", r.version}, {"seed", r.seed}};
}

inline Report report_from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.theorem = j.at("theorem").get<std::string>();
  r.inputs = j.at("inputs");
  for (const json& c : j.at("claims"))
    r.claims.push_back({c.at("claim").get<std::string>(), c.at("status").get<std::string>(),
                        c.at("certificate").get<std::string>(), c.at("data")});
  r.error = j.at("error").get<std::string>();
  r.seconds = j.at("seconds").get<double>();
  r.version = j.at("version").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

inline std::string report_text(const Report& r) {
  std::string out = "command: " + r.command;
  if (!r.theorem.empty()) out += " (" + r.theorem + ")";
  out += "\nversion: " + r.version + "   seed: " + std::to_string(r.seed) + "\n";
  if (!r.error.empty()) {
    out += "rejected: " + r.error + "\n";
    return out;
  }
  for (const Claim& c : r.claims) {
    out += c.status + "  " + c.name;
    if (!c.certificate.empty()) out += "  [" + c.certificate + "]";
    out += "\n";
  }
  out += r.ok() ? "result: all claims certified\n" : "result: claim failures above\n";
  out += "elapsed: " + std::to_string(r.seconds) + " s\n";
  return out;
}

// ---------------------------------------------------------------------------
// shared command plumbing

namespace detail {

struct Precondition : error {
  using error::error;
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double stop() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

inline RingPtr manifest_ring(const Manifest& m) {
  try {
    return PolyRing::make_str(m.ring_vars, m.ring_relations);
  } catch (const error& e) {
    throw Precondition(std::string("ring declaration: ") + e.what());
  }
}

inline RingElement manifest_element(const RingPtr& R, const std::string& s,
                                    const std::string& what) {
  try {
    return re_parse(R, s);
  } catch (const error& e) {
    throw Precondition(what + " '" + s + "': " + e.what());
  }
}

inline std::vector<RingElement> manifest_sequence(const Manifest& m, const RingPtr& R) {
  if (m.sequence.empty()) throw Precondition("a sequence is required for this command");
  std::vector<RingElement> f;
  for (std::size_t i = 0; i < m.sequence.size(); ++i)
    f.push_back(manifest_element(R, m.sequence[i], "sequence[" + std::to_string(i) + "]"));
  return f;
}

inline ArtinRing manifest_artin(const Manifest& m) {
  if (!m.artin) throw Precondition("an Artin coefficient ring is required for this command");
  try {
    return make_artin(m.artin->params, m.artin->relations);
  } catch (const error& e) {
    throw Precondition(std::string("artin declaration: ") + e.what());
  }
}

// The m-adic truncation of a declared Artin ring: the declared relations plus
// every parameter monomial of total degree k.
inline ArtinRing artin_truncation(const ArtinDecl& d, int k) {
  std::vector<std::string> rels = d.relations;
  const int p = static_cast<int>(d.params.size());
  std::vector<int> e(p, 0);
  e[0] = k;
  while (true) {
    std::string mono;
    for (int i = 0; i < p; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += d.params[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    rels.push_back(mono);
    int i = 0;
    while (i < p - 1 && e[i] == 0) ++i;
    if (i == p - 1) break;
    int v = e[i];
    e[i] = 0;
    e[i + 1] += 1;
    e[0] = v - 1;
  }
  return make_artin(d.params, rels);
}

inline Claim claim_of(bool pass, std::string name, std::string certificate,
                      json data = json::object()) {
  return {std::move(name), pass ? "PASS" : "FAIL", std::move(certificate), std::move(data)};
}

// Runs one certification step, converting an engine refusal into a failed
// claim that carries the refusal message as its certificate.
template <typename F>
inline void run_claim(Report& r, const std::string& name, F&& f) {
  try {
    r.claims.push_back(f());
  } catch (const error& e) {
    r.claims.push_back({name, "FAIL", e.what(), json::object()});
  }
}

inline RingElement random_element(const RingPtr& R, std::mt19937_64& rng, int terms,
                                  int maxdeg) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3), dd(0, maxdeg);
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t) {
    Monomial mo;
    for (int v = 0; v < R->nvars(); ++v) mo = mul(mo, Monomial::var(v, dd(rng)));
    ts.push_back({mo, rat(num(rng), den(rng))});
  }
  return RingElement{R, poly_normalize(std::move(ts), R->order)};
}

inline std::vector<TensorElement> seeded_gauges(const CechEnd& L, int mu,
                                                std::mt19937_64& rng, int terms) {
  std::vector<TensorElement> a;
  for (int i = 0; i < L.cover.charts(); ++i) {
    const int f = L.chart_factor(i);
    std::vector<RingElement> v;
    for (int r = 0; r < L.endrank(f, 0); ++r)
      v.push_back(random_element(L.fac[f].K->R, rng, terms, 1));
    TensorElement t;
    t.deg = 0;
    t.c.emplace(mu, std::move(v));
    a.push_back(std::move(t));
  }
  return a;
}

inline json residues_json(const HomotopyDecision& dec, std::size_t cap = 6) {
  json out = json::array();
  for (std::size_t i = 0; i < dec.residues.size() && i < cap; ++i)
    out.push_back(json{{"equation", dec.residues[i].equation},
                       {"value", vector_json(dec.residues[i].value)}});
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// commands

inline Report cmd_koszul(const Manifest& m, std::uint64_t seed = 0) {
  detail::Timer timer;
  Report r;
  r.command = "koszul";
  r.inputs = manifest_json(m);
  r.seed = seed;
  try {
    RingPtr R = detail::manifest_ring(m);
    std::vector<RingElement> f = detail::manifest_sequence(m, R);
    KoszulComplex K = koszul_complex(R, f);

    bool dsq = true;
    for (int k = K.K->lo; k + 2 <= K.K->hi; ++k)
      if (!mat_mul(K.K->diff(k + 1), K.K->diff(k)).is_zero()) dsq = false;
    r.claims.push_back(detail::claim_of(dsq, "the differential squares to zero",
                                        dsq ? "" : "a nonzero composite block survived"));

    bool regular = true;
    int bad = 0;
    for (int k = K.K->lo; k < 0; ++k)
      if (!is_exact_at(K.K, k)) {
        regular = false;
        bad = k;
        break;
      }
    json reg_data = json::object();
    if (!regular) reg_data["surviving_cohomology"] = presentation_json(
        cohomology_presentation(K.K, bad).pres);
    r.claims.push_back(detail::claim_of(
        regular, "the sequence is regular",
        regular ? "all negative degrees are exact"
                : "cohomology survives in degree " + std::to_string(bad),
        std::move(reg_data)));

    CohomologyPresentation h0 = cohomology_presentation(K.K, 0);
    bool cyclic = h0.pres.ngens == 1;
    bool ideals_match = cyclic;
    if (cyclic) {
      FreeModuleMatrix Irow(R, 1, static_cast<int>(f.size()));
      for (std::size_t i = 0; i < f.size(); ++i) Irow.set(0, static_cast<int>(i), f[i]);
      ColumnSolver in_ideal(Irow);
      h0.pres.relations.for_entries([&](int, int, const RingElement& e) {
        if (!in_ideal.solve({e}).feasible) ideals_match = false;
      });
      ColumnSolver in_rel(h0.pres.relations);
      for (const RingElement& fi : f)
        if (!in_rel.solve({fi}).feasible) ideals_match = false;
    }
    r.claims.push_back(detail::claim_of(
        cyclic && ideals_match, "degree-zero cohomology is the cyclic quotient by the sequence",
        cyclic ? (ideals_match ? "relation ideal equals the sequence ideal both ways"
                               : "relation ideal differs from the sequence ideal")
               : "presentation is not cyclic",
        json{{"presentation", presentation_json(h0.pres)}}));
  } catch (const error& e) {
    r.error = e.what();
  }
  r.seconds = timer.stop();
  return r;
}

namespace detail {

inline Dgla build_hand_dgla(const RingPtr& R, const HandDglaDecl& dec) {
  const int n = static_cast<int>(dec.pieces.size());
  if (n == 0) throw Precondition("hand_dgla: at least one piece is required");
  auto parse_matrix = [&](const std::vector<std::vector<std::string>>& rows, int nr, int nc,
                          const std::string& what) {
    if (static_cast<int>(rows.size()) != nr)
      throw Precondition("hand_dgla: " + what + " must have " + std::to_string(nr) + " rows");
    FreeModuleMatrix out(R, nr, nc);
    for (int i = 0; i < nr; ++i) {
      if (static_cast<int>(rows[i].size()) != nc)
        throw Precondition("hand_dgla: " + what + " must have " + std::to_string(nc) +
                           " columns");
      for (int j = 0; j < nc; ++j)
        out.set(i, j, manifest_element(R, rows[i][j], what));
    }
    return out;
  };

  std::vector<DglaPiece> pieces;
  for (int i = 0; i < n; ++i) {
    const HandPieceDecl& p = dec.pieces[i];
    DglaPiece piece{p.gens, FreeModuleMatrix(R, p.gens, 0)};
    if (!p.relations.empty()) {
      FreeModuleMatrix rel(R, p.gens, static_cast<int>(p.relations.size()));
      for (std::size_t c = 0; c < p.relations.size(); ++c) {
        if (static_cast<int>(p.relations[c].size()) != p.gens)
          throw Precondition("hand_dgla: relation columns must match the generator count");
        for (int g = 0; g < p.gens; ++g)
          rel.set(g, static_cast<int>(c),
                  manifest_element(R, p.relations[c][g], "piece relation"));
      }
      piece.relations = std::move(rel);
    }
    pieces.push_back(std::move(piece));
  }

  if (static_cast<int>(dec.d.size()) != n - 1)
    throw Precondition("hand_dgla: expected one differential matrix per adjacent degree pair");
  std::vector<FreeModuleMatrix> d;
  for (int i = 0; i + 1 < n; ++i)
    d.push_back(parse_matrix(dec.d[i], dec.pieces[i + 1].gens, dec.pieces[i].gens,
                             "d[" + std::to_string(i) + "]"));

  auto gens_at = [&](int deg) {
    const int i = deg - dec.lo;
    return (i < 0 || i >= n) ? 0 : dec.pieces[i].gens;
  };
  std::vector<std::vector<FreeModuleMatrix>> br;
  for (int i = 0; i < n; ++i) {
    br.emplace_back();
    for (int j = 0; j < n; ++j)
      br.back().emplace_back(R, gens_at(dec.lo + i + dec.lo + j),
                             dec.pieces[i].gens * dec.pieces[j].gens);
  }
  for (const HandBracketDecl& b : dec.brackets) {
    const int i = b.j - dec.lo, j = b.k - dec.lo;
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw Precondition("hand_dgla: bracket block outside the declared degrees");
    br[i][j] = parse_matrix(b.rows, gens_at(b.j + b.k),
                            dec.pieces[i].gens * dec.pieces[j].gens,
                            "bracket (" + std::to_string(b.j) + "," + std::to_string(b.k) + ")");
  }
  return make_dgla(R, dec.lo, std::move(pieces), std::move(d), std::move(br));
}

}  // namespace detail

inline Report cmd_certify(const Manifest& m, const std::string& theorem,
                          std::uint64_t seed = 0) {
  detail::Timer timer;
  Report r;
  r.command = "certify";
  r.theorem = theorem;
  r.inputs = manifest_json(m);
  r.seed = seed;
  std::mt19937_64 rng(seed);
  try {
    RingPtr R = detail::manifest_ring(m);

    if (theorem == "nha-koszul" || theorem == "nha-truncated" ||
        theorem == "not-homotopy-abelian") {
      std::vector<RingElement> f = detail::manifest_sequence(m, R);
      KoszulComplex K = koszul_complex(R, f);
      for (int k = K.K->lo; k < 0; ++k)
        if (!is_exact_at(K.K, k))
          throw detail::Precondition(
              "the sequence is not regular: cohomology survives in degree " +
              std::to_string(k));

      if (theorem == "nha-koszul") {
        ContractionMorphism cm = contraction_morphism(K);
        r.claims.push_back(detail::claim_of(cm.chain, "the contraction is a chain map", ""));
        r.claims.push_back(detail::claim_of(
            cm.multiplicative, "contraction is multiplicative on the wedge algebra", ""));
        r.claims.push_back(
            detail::claim_of(cm.bracket_compatible, "wedge brackets land on zero", ""));
        r.claims.push_back(
            detail::claim_of(cm.injective, "the contraction has no kernel on cochains", ""));
        HSurjectivity hs = surjective_in_cohomology(cm.i);
        r.claims.push_back(detail::claim_of(
            hs.surjective, "the contraction is surjective in cohomology in every degree",
            hs.surjective ? ""
                          : "surjectivity fails in degree " +
                                std::to_string(*hs.failing_degree)));
      } else if (theorem == "nha-truncated") {
        const int p = m.truncation.value_or(0);
        TruncatedContractionMorphism tm = truncated_contraction_morphism(K, p);
        r.claims.push_back(
            detail::claim_of(tm.chain, "the truncated contraction is a chain map", ""));
        r.claims.push_back(detail::claim_of(
            tm.multiplicative, "truncated contraction is multiplicative", ""));
        r.claims.push_back(
            detail::claim_of(tm.bracket_compatible, "wedge brackets land on zero", ""));
        r.claims.push_back(detail::claim_of(
            tm.projection_identity, "the projection identity holds for every form", ""));
        bool conc = true;
        int bad = 0;
        for (int k = tm.end.E.H->lo; k <= tm.end.E.H->hi; ++k)
          if ((k < 0 || k > K.n - 1) && !is_exact_at(tm.end.E.H, k)) {
            conc = false;
            bad = k;
            break;
          }
        r.claims.push_back(detail::claim_of(
            conc,
            "endomorphism cohomology is concentrated in degrees 0.." + std::to_string(K.n - 1),
            conc ? "" : "cohomology survives in degree " + std::to_string(bad)));
        HSurjectivity hs = surjective_in_cohomology(tm.i);
        r.claims.push_back(detail::claim_of(
            hs.surjective, "surjective in cohomology in every degree",
            hs.surjective ? ""
                          : "surjectivity fails in degree " +
                                std::to_string(*hs.failing_degree)));
        for (int deg = 0; deg <= K.n - 2; ++deg) {
          detail::run_claim(r, "random cocycles in degree " + std::to_string(deg) +
                                   " reduce to contraction form",
                            [&] {
                              FreeModuleMatrix Z = kernel_matrix(tm.end.E.H->diff(deg));
                              std::vector<RingElement> v =
                                  vec_zero(R, tm.end.E.H->rank(deg));
                              for (int c = 0; c < Z.cols; ++c)
                                v = vec_add(v, vec_scale(mat_col(Z, c),
                                                         detail::random_element(R, rng, 1, 1)));
                              GradedMap alpha = tm.end.E.from_vec(deg, v);
                              EtaReduction er = eta_reduction(K, tm.tr, alpha);
                              return detail::claim_of(
                                  true,
                                  "random cocycles in degree " + std::to_string(deg) +
                                      " reduce to contraction form",
                                  er.exact_preimage ? "exact preimage" : "corrected preimage");
                            });
        }
      } else {
        HomotopyDecision dec = is_bracket_null_homotopic(endo_dgla(K.K));
        r.claims.push_back(detail::claim_of(
            !dec.feasible, "the bracket admits no bilinear null homotopy",
            dec.feasible ? "a homotopy was found; the bracket is null homotopic"
                         : "nonzero normal-form residue",
            json{{"residues", detail::residues_json(dec)}}));
        detail::run_claim(r, "witness endomorphism pair certified", [&] {
          nonabelian_witness(K.K, f);
          return detail::claim_of(true, "witness endomorphism pair certified",
                                  "identity and corner pair against the sequence ideal");
        });
      }
    } else if (theorem == "example-1-6") {
      if (!m.hand)
        throw detail::Precondition("this certification needs a hand_dgla table in the manifest");
      Dgla L = detail::build_hand_dgla(R, *m.hand);
      HandDGLA H = make_hand_dgla(std::move(L), m.hand->names);
      AxiomReport ar = check_axioms(H.L);
      json ax = json::array();
      for (const AxiomFailure& fl : ar.failures) ax.push_back(fl.axiom);
      r.claims.push_back(detail::claim_of(ar.ok, "antisymmetry, Leibniz and Jacobi hold",
                                          ar.ok ? "" : "axiom failures recorded",
                                          json{{"failures", std::move(ax)}}));
      HomotopyDecision dec = is_bracket_null_homotopic(H);
      r.claims.push_back(detail::claim_of(
          !dec.feasible, "the bracket admits no bilinear null homotopy",
          dec.feasible ? "a homotopy was found" : "nonzero normal-form residue",
          json{{"residues", detail::residues_json(dec)}}));
    } else if (theorem == "local-to-global") {
      std::vector<RingElement> f = detail::manifest_sequence(m, R);
      if (m.cover.size() < 2)
        throw detail::Precondition("a cover with at least two charts is required");
      if (!m.artin) throw detail::Precondition("an Artin coefficient ring is required");
      std::vector<RingElement> us;
      for (std::size_t i = 0; i < m.cover.size(); ++i)
        us.push_back(detail::manifest_element(R, m.cover[i], "cover[" + std::to_string(i) + "]"));
      CechEnd L = [&] {
        try {
          return cech_end(affine_cover(R, us), koszul_complex(R, f).K);
        } catch (const error& e) {
          throw detail::Precondition(e.what());
        }
      }();
      ArtinRing A = detail::manifest_artin(m);
      int hi = A.nilpotency - 1;
      if (m.max_order) hi = std::min(hi, *m.max_order);
      if (hi < 2) throw detail::Precondition("the Artin ring admits no small extension chain");
      for (int k = 2; k <= hi; ++k) {
        const std::string tag = "order " + std::to_string(k) + " -> " + std::to_string(k + 1);
        detail::run_claim(r, tag + ": the obstruction dies on every chart", [&] {
          ArtinRing B = detail::artin_truncation(*m.artin, k);
          ArtinRing Aup = detail::artin_truncation(*m.artin, k + 1);
          SmallExtension ext = small_extension(Aup, B);
          DescentEnumeration en = descent_mc(L, B);
          if (en.reps.empty()) throw error("no descent data to lift at this order");
          const DescentDatum& base = en.reps[rng() % en.reps.size()];
          int mu = -1;
          for (int d = 0; d < B.dim(); ++d)
            if (B.grade[d] == 1) mu = d;
          DescentDatum tw = twist_descent_datum(L, B, base, detail::seeded_gauges(L, mu, rng, 1));
          DescentObstruction ob = descent_obstruction(L, ext, tw);
          json cls = json::object();
          for (const auto& [kappa, u] : ob.classes) cls[std::to_string(kappa)] = vector_json(u);
          return detail::claim_of(ob.edge_killed, tag + ": the obstruction dies on every chart",
                                  ob.vanishes ? "classes vanish globally and chartwise"
                                              : "classes vanish chartwise only",
                                  json{{"classes", std::move(cls)}});
        });
      }
    } else {
      throw detail::Precondition("unknown certification target '" + theorem + "'");
    }
  } catch (const error& e) {
    r.error = e.what();
  }
  r.seconds = timer.stop();
  return r;
}

inline Report cmd_deform(const Manifest& m, std::uint64_t seed = 0, int max_order = 0) {
  detail::Timer timer;
  Report r;
  r.command = "deform";
  r.inputs = manifest_json(m);
  r.seed = seed;
  std::mt19937_64 rng(seed);
  (void)max_order;
  try {
    RingPtr R = detail::manifest_ring(m);
    std::vector<RingElement> f = detail::manifest_sequence(m, R);
    ArtinRing A = detail::manifest_artin(m);

    if (!m.cover.empty()) {
      std::vector<RingElement> us;
      for (std::size_t i = 0; i < m.cover.size(); ++i)
        us.push_back(detail::manifest_element(R, m.cover[i], "cover[" + std::to_string(i) + "]"));
      CechEnd L = [&] {
        try {
          return cech_end(affine_cover(R, us), koszul_complex(R, f).K);
        } catch (const error& e) {
          throw detail::Precondition(e.what());
        }
      }();
      DescentEnumeration en = descent_mc(L, A);
      json obs = json::array();
      for (auto& [b, mu] : en.obstructed) obs.push_back(json::array({b, mu}));
      r.claims.push_back(detail::claim_of(
          en.obstructed.empty(), "every first-order class extends to a certified datum",
          en.obstructed.empty() ? std::to_string(en.reps.size()) + " data certified"
                                : "obstructed directions recorded",
          json{{"obstructed", std::move(obs)}}));
      CohomologyPresentation H1 = cohomology_presentation(L.global.E.H, 1);
      r.claims.push_back(detail::claim_of(
          true, "first-order moduli dimension",
          "dimension " + std::to_string(en.first_order_dim),
          json{{"dimension", en.first_order_dim},
               {"h1", presentation_json(H1.pres)}}));
      bool distinct = true;
      const std::size_t cap = 6;
      for (std::size_t i = 0; i < en.reps.size() && i < cap; ++i)
        for (std::size_t j = i + 1; j < en.reps.size() && j < cap; ++j)
          if (descent_equivalent_first_order(L, A, en.reps[i], en.reps[j]).equivalent)
            distinct = false;
      r.claims.push_back(detail::claim_of(
          distinct, "enumerated data are pairwise distinct at first order",
          distinct ? "" : "two representatives agree to first order"));
    } else {
      EndoDGLA E = endo_dgla(koszul_complex(R, f).K);
      CohomologyPresentation H1 = cohomology_presentation(E.E.H, 1);
      std::vector<std::pair<int, Monomial>> basis = standard_basis(H1.pres);
      std::vector<int> dirs;
      for (int mu = 0; mu < A.dim(); ++mu)
        if (A.grade[mu] == 1) dirs.push_back(mu);
      std::vector<MCElement> sols;
      bool all_lift = true;
      json failures = json::array();
      for (std::size_t b = 0; b < basis.size(); ++b) {
        RingElement mono{R, poly_mono(basis[b].second)};
        std::vector<RingElement> xi;
        for (int row = 0; row < H1.kernel_gens.rows; ++row)
          xi.push_back(H1.kernel_gens.get(row, basis[b].first) * mono);
        for (int mu : dirs) {
          TensorElement seedt;
          seedt.deg = 1;
          seedt.c.emplace(mu, xi);
          MCSolution sol = mc_solve(E.L, A, seedt);
          if (!sol.lifted) {
            all_lift = false;
            json fj{{"seed", static_cast<int>(b)},
                    {"direction", mu},
                    {"failing_grade", sol.failing_grade}};
            if (sol.has_h2) {
              json ob = json::object();
              for (const auto& [kk, u] : sol.obstruction) ob[std::to_string(kk)] = vector_json(u);
              fj["obstruction"] = std::move(ob);
            }
            failures.push_back(std::move(fj));
            continue;
          }
          sols.push_back(sol.x);
        }
      }
      r.claims.push_back(detail::claim_of(
          all_lift, "every first-order class lifts through the coefficient ring",
          all_lift ? std::to_string(sols.size()) + " families certified"
                   : "obstructed seeds recorded",
          json{{"failures", std::move(failures)}}));

      std::vector<int> orbit(sols.size());
      for (std::size_t i = 0; i < sols.size(); ++i) orbit[i] = static_cast<int>(i);
      const std::size_t cap = 8;
      for (std::size_t i = 0; i < sols.size() && i < cap; ++i)
        for (std::size_t j = i + 1; j < sols.size() && j < cap; ++j) {
          if (orbit[j] != static_cast<int>(j)) continue;
          if (are_gauge_equivalent(E, A, sols[i], sols[j]).equivalent)
            orbit[j] = orbit[i];
        }
      int norb = 0;
      for (std::size_t i = 0; i < sols.size(); ++i)
        if (orbit[i] == static_cast<int>(i)) ++norb;
      r.claims.push_back(detail::claim_of(
          true, "gauge orbits among the lifted families",
          std::to_string(norb) + " orbits among " + std::to_string(sols.size()) + " families",
          json{{"orbits", norb}, {"families", static_cast<int>(sols.size())}}));
      (void)rng;
    }
  } catch (const error& e) {
    r.error = e.what();
  }
  r.seconds = timer.stop();
  return r;
}

}  // namespace koszul
