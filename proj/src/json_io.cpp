#include "surfree/json_io.hpp"

#include "surfree/errors.hpp"

namespace surfree::io {

namespace {

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    fail("ParseError", std::string("missing JSON field '") + key + "'");
  return *it;
}

}  // namespace

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("ParseError", "malformed JSON");
  return j;
}

json word_to_json(const Word& w) {
  json j = json::array();
  for (const auto& t : word_tokens(w)) j.push_back(t);
  return j;
}

Word word_from_json(const json& j) {
  if (!j.is_array()) fail("ParseError", "word must be a JSON array of tokens");
  std::vector<std::string> tokens;
  for (const auto& e : j) {
    if (!e.is_string()) fail("ParseError", "word tokens must be strings");
    tokens.push_back(e.get<std::string>());
  }
  return word_from_tokens(tokens);
}

json presentation_to_json(const Presentation& p) {
  json j;
  json gens = json::array();
  for (Gen g : p.generators()) gens.push_back(symbols::name(g));
  if (p.kind() == PresentationKind::free_group) {
    j["kind"] = "free";
    j["rank"] = p.rank();
    j["generators"] = gens;
  } else {
    j["kind"] = "surface";
    j["genus"] = p.genus();
    j["form"] = p.form() == SurfaceForm::standard ? "standard" : "mirrored";
    j["generators"] = gens;
    j["relator"] = word_to_json(p.relator());
  }
  return j;
}

Presentation presentation_from_json(const json& j) {
  const std::string kind = need(j, "kind").get<std::string>();
  if (kind == "free") {
    std::vector<Gen> gens;
    for (const auto& e : need(j, "generators"))
      gens.push_back(symbols::intern(e.get<std::string>()));
    return Presentation::free_group(std::move(gens));
  }
  if (kind != "surface") fail("ParseError", "presentation kind must be free|surface");
  const int genus = need(j, "genus").get<int>();
  const std::string form = need(j, "form").get<std::string>();
  if (form != "standard" && form != "mirrored")
    fail("ParseError", "form must be standard|mirrored");
  Presentation p = Presentation::surface(
      genus, form == "standard" ? SurfaceForm::standard : SurfaceForm::mirrored);
  if (j.contains("generators")) {
    std::vector<Gen> listed;
    for (const auto& e : j["generators"])
      listed.push_back(symbols::intern(e.get<std::string>()));
    if (listed != p.generators())
      fail("ParseError", "surface generator list does not match the canonical one");
  }
  if (j.contains("relator") && word_from_json(j["relator"]) != p.relator())
    fail("ParseError", "relator does not match the canonical surface relator");
  return p;
}

json hom_to_json(const Homomorphism& h) {
  json images;
  for (std::size_t i = 0; i < h.source().generators().size(); ++i)
    images[symbols::name(h.source().generators()[i])] = word_to_json(h.images()[i]);
  return {{"source", presentation_to_json(h.source())},
          {"target", presentation_to_json(h.target())},
          {"images", images}};
}

Homomorphism hom_from_json(const json& j) {
  Presentation src = presentation_from_json(need(j, "source"));
  Presentation tgt = presentation_from_json(need(j, "target"));
  std::map<Gen, Word> images;
  for (const auto& [name, tokens] : need(j, "images").items())
    images[symbols::intern(name)] = word_from_json(tokens);
  return make_hom(src, tgt, images);
}

json family_to_json(const HomFamily& f) {
  switch (f.family_kind()) {
    case FamilyKind::cor22:
      return {{"kind", "cor22"}, {"r", f.parameter()}};
    case FamilyKind::cor25:
      return {{"kind", "cor25"}, {"r", f.parameter()}};
    case FamilyKind::cor24:
    default:
      return {{"kind", "cor24"},
              {"rank", f.parameter()},
              {"a", word_to_json(f.word_a())},
              {"b", word_to_json(f.word_b())}};
  }
}

HomFamily family_from_json(const json& j) {
  const std::string kind = need(j, "kind").get<std::string>();
  if (kind == "cor22") return HomFamily::cor22(need(j, "r").get<int>());
  if (kind == "cor25") return HomFamily::cor25(need(j, "r").get<int>());
  if (kind == "cor24")
    return HomFamily::cor24(need(j, "rank").get<int>(),
                            word_from_json(need(j, "a")),
                            word_from_json(need(j, "b")));
  fail("ParseError", "family kind must be cor22|cor24|cor25");
}

json instance_to_json(const BaumslagInstance& inst) {
  json as = json::array();
  for (const auto& a : inst.a_list()) as.push_back(word_to_json(a));
  return {{"u", word_to_json(inst.u())}, {"a_list", as}};
}

BaumslagInstance instance_from_json(const json& j) {
  std::vector<Word> as;
  for (const auto& e : need(j, "a_list")) as.push_back(word_from_json(e));
  return BaumslagInstance(word_from_json(need(j, "u")), std::move(as));
}

json element_to_json(const GroupElement& g) {
  return {{"group", g.kind() == GroupKind::so3 ? "so3" : "sl2r"},
          {"entries", g.flat()}};
}

json rep_to_json(const MatrixRep& rep) {
  json images;
  for (std::size_t i = 0; i < rep.images.size(); ++i)
    images[symbols::name(rep.pres.generators()[i])] = rep.images[i].flat();
  return {{"group", rep.kind == GroupKind::so3 ? "so3" : "sl2r"},
          {"presentation", presentation_to_json(rep.pres)},
          {"images", images},
          {"seed", rep.seed},
          {"tolerance", rep.tolerance}};
}

MatrixRep rep_from_json(const json& j) {
  MatrixRep rep;
  const std::string group = need(j, "group").get<std::string>();
  if (group == "so3")
    rep.kind = GroupKind::so3;
  else if (group == "sl2r")
    rep.kind = GroupKind::sl2r;
  else
    fail("ParseError", "group must be so3|sl2r");
  rep.pres = presentation_from_json(need(j, "presentation"));
  rep.seed = j.value("seed", 0ull);
  rep.tolerance = j.value("tolerance", 1e-12);
  const json& images = need(j, "images");
  const std::size_t want = rep.kind == GroupKind::so3 ? 9 : 4;
  for (Gen g : rep.pres.generators()) {
    auto it = images.find(symbols::name(g));
    if (it == images.end())
      fail("ParseError", "missing image for generator '" + symbols::name(g) + "'");
    if (!it->is_array() || it->size() != want)
      fail("ParseError", "image of '" + symbols::name(g) + "' must have " +
                             std::to_string(want) + " entries");
    std::vector<double> e = it->get<std::vector<double>>();
    if (rep.kind == GroupKind::so3) {
      Mat3 m;
      std::copy(e.begin(), e.end(), m.a.begin());
      rep.images.push_back(GroupElement::from_mat3(m));
    } else {
      Mat2 m;
      std::copy(e.begin(), e.end(), m.a.begin());
      rep.images.push_back(GroupElement::from_mat2(m));
    }
  }
  return rep;
}

json certificate_to_json(const Certificate& c) {
  return {{"kind", c.kind},     {"L", c.L},           {"tol", c.tol},
          {"value", c.value},   {"seed", c.seed},     {"grid", c.grid},
          {"t", c.t},           {"samples", c.samples},
          {"timestamp", c.timestamp}};
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  c.kind = need(j, "kind").get<std::string>();
  if (c.kind != "FreeUpToL" && c.kind != "SurfaceMargin" && c.kind != "CoveringRadius")
    fail("ParseError", "unknown certificate kind '" + c.kind + "'");
  c.L = need(j, "L").get<int>();
  c.tol = need(j, "tol").get<double>();
  c.value = need(j, "value").get<double>();
  c.seed = j.value("seed", 0ull);
  c.grid = j.value("grid", 0);
  c.t = j.value("t", 0.0);
  c.samples = j.value("samples", 0l);
  c.timestamp = j.value("timestamp", static_cast<std::int64_t>(0));
  return c;
}

}  // namespace surfree::io
