#include "caylab/serialize.hpp"

namespace caylab {
namespace {

Json fe_json(const Fe& x) { return Json(x.str()); }

Fe fe_parse(Field F, const Json& j) {
  if (!j.is_string()) fail("ParseError", "field element must be a string");
  return F.parse_elem(j.get<std::string>());
}

std::string tag_name(AlgebraTag t) {
  switch (t) {
    case AlgebraTag::split_certified: return "split-certified";
    case AlgebraTag::division_certified: return "division-certified";
    default: return "unclassified";
  }
}

AlgebraTag tag_parse(const std::string& s) {
  if (s == "split-certified") return AlgebraTag::split_certified;
  if (s == "division-certified") return AlgebraTag::division_certified;
  if (s == "unclassified") return AlgebraTag::unclassified;
  fail("ParseError", "unknown classification tag '" + s + "'");
}

}  // namespace

Json octonion_to_json(const Octonion& x) {
  Json a = Json::array();
  for (unsigned i = 0; i < 8; ++i) a.push_back(fe_json(x[i]));
  return a;
}

Octonion octonion_from_json(const Algebra& A, const Json& j) {
  if (!j.is_array() || j.size() != 8)
    fail("ParseError", "octonion must be a length-8 array");
  Vec c;
  c.reserve(8);
  for (const auto& e : j) c.push_back(fe_parse(A.field(), e));
  return A.o(std::move(c));
}

Json algebra_to_json(const Algebra& A) {
  Json j;
  j["field"] = A.field().name();
  Json cons = Json::array();
  for (unsigned i = 0; i < 8; ++i) {
    Json row = Json::array();
    for (unsigned k = 0; k < 8; ++k) {
      Json cell = Json::array();
      for (unsigned m = 0; m < 8; ++m) cell.push_back(fe_json(A.sc(i, k, m)));
      row.push_back(cell);
    }
    cons.push_back(row);
  }
  j["constants"] = cons;
  Json norms = Json::array();
  for (unsigned i = 0; i < 8; ++i) norms.push_back(fe_json(A.basis_norm(i)));
  j["basis_norms"] = norms;
  Json pol = Json::array();
  for (unsigned i = 0; i < 8; ++i) {
    Json row = Json::array();
    for (unsigned k = 0; k < 8; ++k) row.push_back(fe_json(A.polar_matrix().at(i, k)));
    pol.push_back(row);
  }
  j["polar"] = pol;
  Json unit = Json::array();
  for (unsigned i = 0; i < 8; ++i) unit.push_back(fe_json(A.unit_coords()[i]));
  j["unit"] = unit;
  j["tag"] = tag_name(A.tag());
  j["certificate"] = A.certificate();
  return j;
}

std::shared_ptr<const Algebra> algebra_from_json(const Json& j) {
  if (!j.contains("field") || !j.contains("constants"))
    fail("ParseError", "algebra document needs field and constants");
  Field F = Field::parse(j.at("field").get<std::string>());
  const Json& cons = j.at("constants");
  if (!cons.is_array() || cons.size() != 8)
    fail("ParseError", "constants must be an 8x8x8 array");
  std::vector<Fe> c;
  c.reserve(512);
  for (const auto& row : cons) {
    if (!row.is_array() || row.size() != 8) fail("ParseError", "bad constants row");
    for (const auto& cell : row) {
      if (!cell.is_array() || cell.size() != 8) fail("ParseError", "bad constants cell");
      for (const auto& e : cell) c.push_back(fe_parse(F, e));
    }
  }
  AlgebraTag tag = AlgebraTag::unclassified;
  std::string cert;
  if (j.contains("tag")) tag = tag_parse(j.at("tag").get<std::string>());
  if (j.contains("certificate")) cert = j.at("certificate").get<std::string>();
  auto A = Algebra::from_parts(F, std::move(c), tag, cert, true);
  // Cross-check the document's derived data when present.
  if (j.contains("unit")) {
    Octonion u = octonion_from_json(*A, j.at("unit"));
    if (u != A->unit()) fail("ParseError", "document unit disagrees with the constants");
  }
  if (j.contains("basis_norms")) {
    const Json& norms = j.at("basis_norms");
    for (unsigned i = 0; i < 8; ++i)
      if (fe_parse(F, norms.at(i)) != A->basis_norm(i))
        fail("ParseError", "document norms disagree with the constants");
  }
  if (j.contains("polar")) {
    const Json& pol = j.at("polar");
    for (unsigned i = 0; i < 8; ++i)
      for (unsigned k = 0; k < 8; ++k)
        if (fe_parse(F, pol.at(i).at(k)) != A->polar_matrix().at(i, k))
          fail("ParseError", "document polar matrix disagrees with the constants");
  }
  return A;
}

Json linmap_to_json(const LinMap& m) {
  Json j;
  j["algebra"] = m.algebra()->name();
  Json rows = Json::array();
  for (unsigned i = 0; i < 8; ++i) {
    Json row = Json::array();
    for (unsigned k = 0; k < 8; ++k) row.push_back(fe_json(m.matrix().at(i, k)));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

LinMap linmap_from_json(const Algebra& A, const Json& j) {
  const Json& rows = j.is_object() ? j.at("matrix") : j;
  if (!rows.is_array() || rows.size() != 8) fail("ParseError", "matrix must be 8x8");
  Mat m(A.field(), 8, 8);
  for (unsigned i = 0; i < 8; ++i) {
    if (!rows.at(i).is_array() || rows.at(i).size() != 8)
      fail("ParseError", "matrix must be 8x8");
    for (unsigned k = 0; k < 8; ++k) m.at(i, k) = fe_parse(A.field(), rows.at(i).at(k));
  }
  return LinMap(&A, m);
}

Json partial_isometry_to_json(const PartialIsometry& p) {
  Json j;
  Json dom = Json::array(), img = Json::array();
  for (unsigned i = 0; i < p.dim(); ++i) {
    dom.push_back(octonion_to_json(p.domain_vec(i)));
    img.push_back(octonion_to_json(p.image_vec(i)));
  }
  j["domain"] = dom;
  j["images"] = img;
  return j;
}

PartialIsometry partial_isometry_from_json(const Algebra& A, const Json& j) {
  std::vector<Octonion> dom, img;
  for (const auto& v : j.at("domain")) dom.push_back(octonion_from_json(A, v));
  for (const auto& v : j.at("images")) img.push_back(octonion_from_json(A, v));
  return make_partial_isometry(A, dom, img);
}

Json witness_to_json(const AutWitness& w) {
  Json j;
  Json claims = Json::array();
  for (const auto& [pt, target] : w.claim) {
    Json c;
    c["point"] = octonion_to_json(pt);
    c["target"] = octonion_to_json(target);
    claims.push_back(c);
  }
  j["claim"] = claims;
  j["map"] = linmap_to_json(w.map);
  j["transcript"] = w.transcript;
  return j;
}

Json verdict_to_json(const TwoLocalVerdict& v) {
  Json j;
  switch (v.kind) {
    case TwoLocalVerdict::Kind::automorphism: j["outcome"] = "automorphism"; break;
    case TwoLocalVerdict::Kind::rejected: j["outcome"] = "rejected"; break;
    case TwoLocalVerdict::Kind::witness_set: j["outcome"] = "witness-set"; break;
  }
  if (v.certificate) j["certificate"] = witness_to_json(*v.certificate);
  if (v.pair) {
    j["counterexample"] = Json::array({octonion_to_json(v.pair->first),
                                       octonion_to_json(v.pair->second)});
  }
  if (!v.explanation.empty()) j["explanation"] = v.explanation;
  if (v.normal_form) {
    Json nf;
    Json rows = Json::array();
    for (unsigned i = 0; i < 3; ++i) {
      Json row = Json::array();
      for (unsigned k = 0; k < 3; ++k) row.push_back(v.normal_form->peirce_matrix.at(i, k).str());
      rows.push_back(row);
    }
    nf["peirce_matrix"] = rows;
    nf["lambda"] = v.normal_form->lambda.str();
    Json drows = Json::array();
    for (unsigned i = 0; i < 3; ++i) {
      Json row = Json::array();
      for (unsigned k = 0; k < 3; ++k) row.push_back(v.normal_form->dual_action.at(i, k).str());
      drows.push_back(row);
    }
    nf["dual_action"] = drows;
    j["normal_form"] = nf;
  }
  if (!v.witnesses.empty()) {
    Json ws = Json::array();
    for (const auto& w : v.witnesses) ws.push_back(witness_to_json(w));
    j["witnesses"] = ws;
  }
  return j;
}

}  // namespace caylab
