// surfree: free-group and surface-group word algebra, eventually faithful
// homomorphism families, and certified dense matrix representations.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "surfree/errors.hpp"
#include "surfree/json_io.hpp"

using namespace surfree;
using surfree::io::json;

namespace {

struct Output {
  bool plain = false;
  std::string out_path;

  void emit_text(const std::string& text) const {
    if (out_path.empty()) {
      std::cout << text << "\n";
    } else {
      std::ofstream f(out_path);
      if (!f) fail("ParseError", "cannot open output file '" + out_path + "'");
      f << text << "\n";
    }
  }
  void emit(const json& j) const { emit_text(j.dump()); }
  void emit_word(const Word& w) const {
    if (plain)
      emit_text(format_word(w));
    else
      emit(io::word_to_json(w));
  }
};

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail("ParseError", "cannot open file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  return io::parse_json_text(text);
}

SurfaceForm parse_form(const std::string& s) {
  if (s == "standard") return SurfaceForm::standard;
  if (s == "mirrored") return SurfaceForm::mirrored;
  fail("ParseError", "form must be standard|mirrored");
}

GroupKind parse_group(const std::string& s) {
  if (s == "so3") return GroupKind::so3;
  if (s == "sl2r") return GroupKind::sl2r;
  fail("ParseError", "group must be so3|sl2r");
}

Word parse_over(const std::string& text, const Presentation& p) {
  return parse_word(text, p.generators());
}

HomFamily family_from_flags(const std::string& kind, int r, int rank,
                            const std::string& a, const std::string& b,
                            const std::string& family_file) {
  if (!family_file.empty()) return io::family_from_json(read_json_file(family_file));
  if (kind == "cor22") return HomFamily::cor22(r);
  if (kind == "cor25") return HomFamily::cor25(r);
  if (kind == "cor24") {
    Presentation tgt = Presentation::free_group(rank);
    return HomFamily::cor24(rank, parse_over(a, tgt), parse_over(b, tgt));
  }
  fail("ParseError", "family kind must be cor22|cor24|cor25");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"surfree: surface/free group words, homomorphism families, "
               "and certified matrix representations"};
  app.require_subcommand(1);

  Output out;
  app.add_flag("--plain", out.plain, "plain word text instead of JSON");
  app.add_option("--out", out.out_path, "write primary output to a file");

  unsigned long long budget = default_budget();
  app.add_option("--budget", budget, "enumeration budget");

  // ---- word ----------------------------------------------------------------
  auto* word = app.add_subcommand("word", "free-group word algebra");
  word->require_subcommand(1);
  static std::string w_text, w_text2, w_alphabet;

  auto add_alphabet = [&](CLI::App* cmd) {
    cmd->add_option("--alphabet", w_alphabet, "comma-separated generator names");
  };
  auto alphabet_gens = [&]() -> std::optional<std::vector<Gen>> {
    if (w_alphabet.empty()) return std::nullopt;
    std::vector<Gen> gens;
    std::size_t pos = 0;
    while (pos <= w_alphabet.size()) {
      std::size_t comma = w_alphabet.find(',', pos);
      if (comma == std::string::npos) comma = w_alphabet.size();
      gens.push_back(symbols::intern(w_alphabet.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    return gens;
  };
  auto parse_cli_word = [&](const std::string& text) {
    auto gens = alphabet_gens();
    return gens ? parse_word(text, *gens) : parse_word(text);
  };

  auto* w_reduce = word->add_subcommand("reduce", "freely reduce");
  w_reduce->add_option("text", w_text, "word text")->required();
  add_alphabet(w_reduce);
  w_reduce->callback([&] { out.emit_word(parse_cli_word(w_text)); });

  auto* w_mul = word->add_subcommand("mul", "reduced product u·v");
  w_mul->add_option("u", w_text)->required();
  w_mul->add_option("v", w_text2)->required();
  w_mul->callback(
      [&] { out.emit_word(multiply(parse_word(w_text), parse_word(w_text2))); });

  auto* w_inv = word->add_subcommand("inv", "inverse");
  w_inv->add_option("u", w_text)->required();
  w_inv->callback([&] { out.emit_word(invert(parse_word(w_text))); });

  auto* w_conj = word->add_subcommand("conj", "conjugate g·u·g^-1");
  w_conj->add_option("u", w_text)->required();
  w_conj->add_option("g", w_text2)->required();
  w_conj->callback(
      [&] { out.emit_word(conjugate(parse_word(w_text), parse_word(w_text2))); });

  auto* w_comm = word->add_subcommand("comm", "commutator [u,v]");
  w_comm->add_option("u", w_text)->required();
  w_comm->add_option("v", w_text2)->required();
  w_comm->callback(
      [&] { out.emit_word(commutator(parse_word(w_text), parse_word(w_text2))); });

  // ---- surface ---------------------------------------------------------------
  auto* surf = app.add_subcommand("surface", "surface-group word problem");
  surf->require_subcommand(1);
  static int s_genus = 2;
  static std::string s_form = "standard", s_word, s_u, s_v;
  static int s_L = 1;

  auto add_surface_opts = [&](CLI::App* cmd) {
    cmd->add_option("--genus", s_genus, "genus >= 2")->required();
    cmd->add_option("--form", s_form, "standard|mirrored");
  };

  auto* s_trivial = surf->add_subcommand("trivial", "word-problem test");
  add_surface_opts(s_trivial);
  s_trivial->add_option("--word", s_word)->required();
  s_trivial->callback([&] {
    Presentation p = Presentation::surface(s_genus, parse_form(s_form));
    out.emit(json{{"trivial", dehn_trivial(p, parse_over(s_word, p))}});
  });

  auto* s_equal = surf->add_subcommand("equal", "equality in the group");
  add_surface_opts(s_equal);
  s_equal->add_option("--u", s_u)->required();
  s_equal->add_option("--v", s_v)->required();
  s_equal->callback([&] {
    Presentation p = Presentation::surface(s_genus, parse_form(s_form));
    out.emit(json{{"equal", equal_in_group(p, parse_over(s_u, p), parse_over(s_v, p))}});
  });

  auto* s_ball = surf->add_subcommand("ball", "nontrivial words of length <= L");
  add_surface_opts(s_ball);
  s_ball->add_option("--L", s_L, "radius")->required();
  s_ball->callback([&] {
    Presentation p = Presentation::surface(s_genus, parse_form(s_form));
    if (reduced_ball_count(2 * p.rank(), s_L) > budget)
      fail("BallTooLarge", "ball exceeds budget " + std::to_string(budget));
    auto words = nontrivial_ball(p, s_L);
    if (out.plain) {
      std::string text;
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) text += '\n';
        text += format_word(words[i]);
      }
      out.emit_text(text);
    } else {
      json arr = json::array();
      for (const auto& w : words) arr.push_back(io::word_to_json(w));
      out.emit(arr);
    }
  });

  // ---- hom -------------------------------------------------------------------
  auto* hom = app.add_subcommand("hom", "generator-image homomorphisms");
  hom->require_subcommand(1);
  static std::string h_source, h_target, h_images, h_file, h_g, h_h, h_word;

  auto* h_make = hom->add_subcommand("make", "build and verify");
  h_make->add_option("--source", h_source, "presentation JSON file")->required();
  h_make->add_option("--target", h_target, "presentation JSON file")->required();
  h_make->add_option("--images", h_images, "JSON file {name: tokens}")->required();
  h_make->callback([&] {
    Presentation src = io::presentation_from_json(read_json_file(h_source));
    Presentation tgt = io::presentation_from_json(read_json_file(h_target));
    std::map<Gen, Word> images;
    for (const auto& [name, tokens] : read_json_file(h_images).items())
      images[symbols::intern(name)] = io::word_from_json(tokens);
    out.emit(io::hom_to_json(make_hom(src, tgt, images)));
  });

  auto* h_apply = hom->add_subcommand("apply", "apply to a word");
  h_apply->add_option("--hom", h_file, "homomorphism JSON file")->required();
  h_apply->add_option("--word", h_word)->required();
  h_apply->callback([&] {
    Homomorphism h = io::hom_from_json(read_json_file(h_file));
    out.emit_word(apply_hom(h, parse_over(h_word, h.source())));
  });

  auto* h_comp = hom->add_subcommand("compose", "g∘h");
  h_comp->add_option("--g", h_g, "outer homomorphism JSON file")->required();
  h_comp->add_option("--h", h_h, "inner homomorphism JSON file")->required();
  h_comp->callback([&] {
    out.emit(io::hom_to_json(compose(io::hom_from_json(read_json_file(h_g)),
                                     io::hom_from_json(read_json_file(h_h)))));
  });

  // ---- family ------------------------------------------------------------------
  auto* fam = app.add_subcommand("family", "eventually faithful families");
  fam->require_subcommand(1);
  static std::string f_kind, f_a, f_b, f_words, f_file;
  static int f_r = 1, f_rank = 2;
  static long f_n = 0, f_horizon = 20, f_window = 30;

  auto add_family_opts = [&](CLI::App* cmd) {
    cmd->add_option("--kind", f_kind, "cor22|cor24|cor25");
    cmd->add_option("--r", f_r, "r for cor22/cor25");
    cmd->add_option("--rank", f_rank, "rank for cor24");
    cmd->add_option("--a", f_a, "word a for cor24");
    cmd->add_option("--b", f_b, "word b for cor24");
    cmd->add_option("--family", f_file, "family JSON file (alternative to flags)");
  };

  auto* f_member = fam->add_subcommand("member", "n-th member homomorphism");
  add_family_opts(f_member);
  f_member->add_option("--n", f_n)->required();
  f_member->callback([&] {
    out.emit(io::hom_to_json(
        family_from_flags(f_kind, f_r, f_rank, f_a, f_b, f_file).member(f_n)));
  });

  auto* f_sep = fam->add_subcommand("separate", "separate a finite set");
  add_family_opts(f_sep);
  f_sep->add_option("--words", f_words, "JSON file: array of token arrays")->required();
  f_sep->add_option("--horizon", f_horizon);
  f_sep->add_option("--window", f_window);
  f_sep->callback([&] {
    HomFamily family = family_from_flags(f_kind, f_r, f_rank, f_a, f_b, f_file);
    std::vector<Word> K;
    for (const auto& e : read_json_file(f_words)) K.push_back(io::word_from_json(e));
    auto res = separate(family, K, f_horizon, f_window);
    out.emit(json{{"n", res.n}, {"hom", io::hom_to_json(res.hom)}});
  });

  // ---- baumslag ------------------------------------------------------------------
  auto* bau = app.add_subcommand("baumslag", "Baumslag-lemma certification");
  bau->require_subcommand(1);
  static std::string b_instance;
  static std::vector<long> b_exps;
  static long b_n0 = 1, b_N = 1, b_Nmax = 64;

  auto* b_word = bau->add_subcommand("word", "u^{n1}a1···u^{nk}ak");
  b_word->add_option("--instance", b_instance, "instance JSON file")->required();
  b_word->add_option("--n", b_exps, "exponents (repeat per coordinate)")->required();
  b_word->callback([&] {
    auto inst = io::instance_from_json(read_json_file(b_instance));
    out.emit_word(baumslag_word(inst, b_exps));
  });

  auto* b_check = bau->add_subcommand("check", "exhaustive exponent-box check");
  b_check->add_option("--instance", b_instance)->required();
  b_check->add_option("--n0", b_n0)->required();
  b_check->add_option("--N", b_N)->required();
  b_check->callback([&] {
    auto inst = io::instance_from_json(read_json_file(b_instance));
    auto res = check_box(inst, b_n0, b_N, budget);
    json j{{"ok", res.ok}};
    if (!res.ok) j["failing"] = res.failing;
    out.emit(j);
  });

  auto* b_n0c = bau->add_subcommand("n0", "smallest box threshold");
  b_n0c->add_option("--instance", b_instance)->required();
  b_n0c->add_option("--N-max", b_Nmax)->required();
  b_n0c->callback([&] {
    auto inst = io::instance_from_json(read_json_file(b_instance));
    out.emit(json{{"n0", find_n0(inst, b_Nmax, budget)}});
  });

  // ---- rep -----------------------------------------------------------------------
  auto* rep = app.add_subcommand("rep", "matrix representations");
  rep->require_subcommand(1);
  static std::string r_group = "so3", r_file, r_word, r_a, r_b;
  static int r_k = 2, r_L = 6, r_grid = 256;
  static long r_samples = 2000;
  static std::uint64_t r_seed = 0;
  static double r_tol = 1e-6;

  auto* r_sample = rep->add_subcommand("sample", "seeded Haar-style tuple");
  r_sample->add_option("--group", r_group, "so3|sl2r");
  r_sample->add_option("--k", r_k, "rank >= 2")->required();
  r_sample->add_option("--seed", r_seed)->required();
  r_sample->callback(
      [&] { out.emit(io::rep_to_json(sample_tuple(parse_group(r_group), r_k, r_seed))); });

  auto* r_eval = rep->add_subcommand("eval", "evaluate a word");
  r_eval->add_option("--rep", r_file, "rep JSON file")->required();
  r_eval->add_option("--word", r_word)->required();
  r_eval->callback([&] {
    MatrixRep m = io::rep_from_json(read_json_file(r_file));
    out.emit(io::element_to_json(evaluate(m, parse_over(r_word, m.pres))));
  });

  auto* r_cert = rep->add_subcommand("certify-free", "freeness up to length L");
  r_cert->add_option("--rep", r_file)->required();
  r_cert->add_option("--L", r_L)->required();
  r_cert->add_option("--tol", r_tol)->required();
  r_cert->callback([&] {
    MatrixRep m = io::rep_from_json(read_json_file(r_file));
    auto res = certify_free(m, r_L, r_tol, budget);
    if (res.passed)
      out.emit(io::certificate_to_json(res.certificate));
    else
      out.emit(json{{"kind", "FailureWitness"},
                    {"word", io::word_to_json(res.witness)},
                    {"distance", res.margin}});
  });

  auto* r_enl = rep->add_subcommand("enlarge", "rank enlargement along a closure curve");
  r_enl->add_option("--rep", r_file)->required();
  r_enl->add_option("--a", r_a)->required();
  r_enl->add_option("--b", r_b)->required();
  r_enl->add_option("--grid", r_grid)->required();
  r_enl->add_option("--L", r_L)->required();
  r_enl->add_option("--tol", r_tol)->required();
  r_enl->callback([&] {
    MatrixRep m = io::rep_from_json(read_json_file(r_file));
    auto res = enlarge_rank(m, parse_over(r_a, m.pres), parse_over(r_b, m.pres),
                            r_grid, r_L, r_tol, budget);
    out.emit(json{{"rep", io::rep_to_json(res.rep)},
                  {"certificate", io::certificate_to_json(res.certificate)}});
  });

  auto* r_sff = rep->add_subcommand("surface-from-free", "deform a free tuple to a surface rep");
  r_sff->add_option("--rep", r_file)->required();
  r_sff->add_option("--grid", r_grid)->required();
  r_sff->add_option("--L", r_L)->required();
  r_sff->add_option("--tol", r_tol)->required();
  r_sff->callback([&] {
    MatrixRep m = io::rep_from_json(read_json_file(r_file));
    auto res = surface_from_free(m, r_grid, r_L, r_tol);
    out.emit(json{{"rep", io::rep_to_json(res.rep)},
                  {"certificate", io::certificate_to_json(res.certificate)},
                  {"max_relator_residual", res.max_relator_residual}});
  });

  auto* r_ffs = rep->add_subcommand("free-from-surface", "deform a surface rep to a free tuple");
  r_ffs->add_option("--rep", r_file)->required();
  r_ffs->add_option("--grid", r_grid)->required();
  r_ffs->add_option("--L", r_L)->required();
  r_ffs->add_option("--tol", r_tol)->required();
  r_ffs->callback([&] {
    MatrixRep m = io::rep_from_json(read_json_file(r_file));
    auto res = free_from_surface(m, r_grid, r_L, r_tol, budget);
    out.emit(json{{"rep", io::rep_to_json(res.rep)},
                  {"certificate", io::certificate_to_json(res.certificate)}});
  });

  auto* r_den = rep->add_subcommand("density", "covering radius of the evaluated ball");
  r_den->add_option("--rep", r_file)->required();
  r_den->add_option("--L", r_L)->required();
  r_den->add_option("--samples", r_samples);
  r_den->add_option("--seed", r_seed)->required();
  r_den->callback([&] {
    MatrixRep m = io::rep_from_json(read_json_file(r_file));
    Certificate c = covering_radius_certificate(m, r_L, r_samples, r_seed, budget);
    out.emit(json{{"covering_radius", c.value},
                  {"certificate", io::certificate_to_json(c)}});
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << json{{"error", e.name()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
