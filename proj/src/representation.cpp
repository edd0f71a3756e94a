#include "surfree/representation.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "surfree/errors.hpp"
#include "surfree/rng.hpp"

namespace surfree {

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::identity(GroupKind k) {
  GroupElement g(k);
  if (k == GroupKind::so3) {
    g.a_ = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  } else {
    g.a_[0] = 1;
    g.a_[3] = 1;
  }
  return g;
}

GroupElement GroupElement::from_mat3(const Mat3& m) {
  GroupElement g(GroupKind::so3);
  Mat3 n = orthonormalized(m);
  std::copy(n.a.begin(), n.a.end(), g.a_.begin());
  return g;
}

GroupElement GroupElement::from_mat2(const Mat2& m) {
  if (m.det() <= 0) fail("DegenerateElement", "matrix determinant must be positive");
  GroupElement g(GroupKind::sl2r);
  Mat2 n = sl2_normalized(m);
  std::copy(n.a.begin(), n.a.end(), g.a_.begin());
  return g;
}

Mat3 GroupElement::mat3() const {
  if (kind_ != GroupKind::so3) fail("GroupKindMismatch", "element is not in SO(3)");
  Mat3 m;
  std::copy(a_.begin(), a_.end(), m.a.begin());
  return m;
}

Mat2 GroupElement::mat2() const {
  if (kind_ != GroupKind::sl2r) fail("GroupKindMismatch", "element is not in SL(2,R)");
  Mat2 m;
  std::copy(a_.begin(), a_.begin() + 4, m.a.begin());
  return m;
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (kind_ != o.kind_) fail("GroupKindMismatch", "mixed group kinds");
  GroupElement g(kind_);
  if (kind_ == GroupKind::so3) {
    Mat3 m = mat3() * o.mat3();
    std::copy(m.a.begin(), m.a.end(), g.a_.begin());
  } else {
    Mat2 m = mat2() * o.mat2();
    std::copy(m.a.begin(), m.a.end(), g.a_.begin());
  }
  return g;
}

GroupElement GroupElement::inverse() const {
  GroupElement g(kind_);
  if (kind_ == GroupKind::so3) {
    Mat3 m = mat3().transposed();
    std::copy(m.a.begin(), m.a.end(), g.a_.begin());
  } else {
    Mat2 m = mat2().inverse_unimodular();
    std::copy(m.a.begin(), m.a.end(), g.a_.begin());
  }
  return g;
}

GroupElement GroupElement::renormalized() const {
  return kind_ == GroupKind::so3 ? from_mat3(mat3()) : from_mat2(mat2());
}

double GroupElement::dist_frob_identity() const {
  return kind_ == GroupKind::so3 ? frob_dist_identity(mat3()) : frob_dist_identity(mat2());
}

double GroupElement::metric_dist_identity() const {
  return kind_ == GroupKind::so3 ? rotation_angle(mat3()) : frob_dist_identity(mat2());
}

std::vector<double> GroupElement::flat() const {
  return kind_ == GroupKind::so3 ? std::vector<double>(a_.begin(), a_.end())
                                 : std::vector<double>(a_.begin(), a_.begin() + 4);
}

// ---------------------------------------------------------------------------
// Closure curves

ClosureCurve closure_curve(const GroupElement& g) {
  if (g.kind() == GroupKind::so3) {
    auto aa = axis_angle(g.mat3());
    if (!aa)
      fail("DegenerateElement", "rotation angle too close to zero for a closure curve");
    ClosureCurve c(GroupKind::so3, g);
    c.axis_ = aa->axis;
    c.base_t_ = aa->angle;
    c.period_ = 2.0 * 3.14159265358979323846;
    return c;
  }
  auto lg = sl2_log(g.mat2());
  if (!lg) fail("DegenerateElement", "trace <= -2: no principal logarithm");
  ClosureCurve c(GroupKind::sl2r, g);
  c.log_ = *lg;
  c.base_t_ = 1.0;
  const double delta = c.log_.a[0] * c.log_.a[0] + c.log_.a[1] * c.log_.a[2];
  // elliptic generators give compact circles; otherwise bracket the base at t=1
  c.period_ = delta < -1e-14 ? 2.0 * 3.14159265358979323846 / std::sqrt(-delta) : 2.0;
  return c;
}

GroupElement ClosureCurve::at(double t) const {
  if (kind_ == GroupKind::so3)
    return GroupElement::from_mat3(rotation_about(axis_, t));
  Mat2 x;
  for (int i = 0; i < 4; ++i)
    x.a[static_cast<std::size_t>(i)] = log_.a[static_cast<std::size_t>(i)] * t;
  return GroupElement::from_mat2(sl2_exp(x));
}

// ---------------------------------------------------------------------------
// Evaluation and sampling

std::int64_t certificate_timestamp() {
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH"))
    return std::strtoll(e, nullptr, 10);
  return static_cast<std::int64_t>(std::time(nullptr));
}

unsigned long long default_budget() {
  if (const char* e = std::getenv("SURFREE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(e, &end, 10);
    if (end != e && v > 0) return v;
  }
  return 100'000'000ull;
}

GroupElement evaluate(const MatrixRep& rep, const Word& w) {
  rep.pres.require_alphabet(w);
  GroupElement acc = GroupElement::identity(rep.kind);
  int since_renorm = 0;
  for (auto c : w.codes()) {
    const GroupElement& img =
        rep.images[static_cast<std::size_t>(rep.pres.generator_position(gen_of_code(c)))];
    acc = (c > 0) ? acc * img : acc * img.inverse();
    if (++since_renorm == 16) {  // fixed renormalization cadence
      acc = acc.renormalized();
      since_renorm = 0;
    }
  }
  return acc;
}

MatrixRep sample_tuple(GroupKind kind, int k, std::uint64_t seed) {
  if (k < 2) fail("BadRank", "sampled tuples must have rank >= 2");
  Rng rng(seed);
  MatrixRep rep;
  rep.kind = kind;
  rep.pres = Presentation::free_group(k);
  rep.seed = seed;
  rep.tolerance = 1e-12;
  for (int i = 0; i < k; ++i) {
    if (kind == GroupKind::so3) {
      Quat q;
      do {
        q = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
      } while (std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z) < 1e-6);
      rep.images.push_back(GroupElement::from_mat3(mat3_from_quat(q)));
    } else {
      const double s = 0.75;  // scale of the Gaussian Lie-algebra surrogate
      Mat2 x;
      x.a[0] = s * rng.normal();
      x.a[1] = s * rng.normal();
      x.a[2] = s * rng.normal();
      x.a[3] = -x.a[0];
      rep.images.push_back(GroupElement::from_mat2(sl2_exp(x)));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Ball scans

namespace {

struct So3Traits {
  using M = Mat3;
  static M from(const GroupElement& g) { return g.mat3(); }
  static GroupElement to(const M& m) { return GroupElement::from_mat3(m); }
  static M id() { return Mat3::identity(); }
  static M inv(const M& m) { return m.transposed(); }
  static M renorm(const M& m) { return orthonormalized(m); }
  static double frob_id(const M& m) { return frob_dist_identity(m); }
  static double metric_id(const M& m) { return rotation_angle(m); }
};

struct Sl2Traits {
  using M = Mat2;
  static M from(const GroupElement& g) { return g.mat2(); }
  static GroupElement to(const M& m) { return GroupElement::from_mat2(m); }
  static M id() { return Mat2::identity(); }
  static M inv(const M& m) { return m.inverse_unimodular(); }
  static M renorm(const M& m) { return sl2_normalized(m); }
  static double frob_id(const M& m) { return frob_dist_identity(m); }
  static double metric_id(const M& m) { return frob_dist_identity(m); }
};

struct ScanOut {
  double min_dist = std::numeric_limits<double>::infinity();
  bool completed = true;
};

// DFS over all nonempty reduced words of length <= L; abort as soon as a
// countable distance <= abort_leq shows up.
template <class M, class DistFn>
ScanOut scan_free_ball(const std::vector<M>& letters, int L, double abort_leq,
                       DistFn dist, std::vector<int>* witness) {
  const int m = static_cast<int>(letters.size());
  ScanOut out;
  std::vector<int> path;
  path.reserve(static_cast<std::size_t>(L));
  auto rec = [&](auto&& self, const M& cur, int depth, int last) -> bool {
    for (int s = 0; s < m; ++s) {
      if ((s ^ 1) == last) continue;
      M nxt = cur * letters[static_cast<std::size_t>(s)];
      const double d = dist(nxt);
      path.push_back(s);
      if (d <= abort_leq) {
        out.min_dist = std::min(out.min_dist, d);
        if (witness) *witness = path;
        path.pop_back();
        return false;
      }
      if (d < out.min_dist) {
        out.min_dist = d;
        if (witness) *witness = path;
      }
      if (depth < L && !self(self, nxt, depth + 1, s)) {
        path.pop_back();
        return false;
      }
      path.pop_back();
    }
    return true;
  };
  M id;
  if constexpr (std::is_same_v<M, Mat3>)
    id = Mat3::identity();
  else
    id = Mat2::identity();
  out.completed = rec(rec, id, 1, -1);
  return out;
}

template <class M, class DistFn>
ScanOut scan_table(const BallTable& t, const std::vector<M>& letters,
                   double abort_leq, DistFn dist, std::int32_t* witness_node,
                   std::vector<M>& scratch) {
  scratch.resize(t.parent.size());
  ScanOut out;
  for (std::size_t i = 0; i < t.parent.size(); ++i) {
    const std::int32_t par = t.parent[i];
    const M& left = par < 0 ? letters[static_cast<std::size_t>(t.letter[i])] : scratch[static_cast<std::size_t>(par)];
    scratch[i] = par < 0 ? left : left * letters[static_cast<std::size_t>(t.letter[i])];
    if (!t.countable[i]) continue;
    const double d = dist(scratch[i]);
    if (d <= abort_leq) {
      out.min_dist = std::min(out.min_dist, d);
      if (witness_node) *witness_node = static_cast<std::int32_t>(i);
      out.completed = false;
      return out;
    }
    if (d < out.min_dist) {
      out.min_dist = d;
      if (witness_node) *witness_node = static_cast<std::int32_t>(i);
    }
  }
  return out;
}

Word path_word(const Presentation& p, const std::vector<int>& path) {
  std::vector<std::int32_t> cs;
  cs.reserve(path.size());
  for (int s : path) cs.push_back(p.code_for_signed_letter(s));
  return Word::from_codes(cs);
}

Word table_word(const Presentation& p, const BallTable& t, std::int32_t node) {
  std::vector<std::int32_t> cs;
  for (std::int32_t i = node; i >= 0; i = t.parent[static_cast<std::size_t>(i)])
    cs.push_back(p.code_for_signed_letter(t.letter[static_cast<std::size_t>(i)]));
  std::reverse(cs.begin(), cs.end());
  return Word::from_codes(cs);
}

template <class T>
std::vector<typename T::M> rep_letters(const MatrixRep& rep) {
  std::vector<typename T::M> letters(2 * rep.images.size());
  for (std::size_t i = 0; i < rep.images.size(); ++i) {
    letters[2 * i] = T::from(rep.images[i]);
    letters[2 * i + 1] = T::inv(letters[2 * i]);
  }
  return letters;
}

const BallTable& cached_ball_table(const Presentation& p, int L) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<BallTable>> cache;
  std::string key = (p.kind() == PresentationKind::surface)
                        ? "s/" + std::to_string(p.genus()) + "/" +
                              std::to_string(static_cast<int>(p.form()))
                        : "f/" + std::to_string(p.rank());
  key += "/" + std::to_string(L);
  std::scoped_lock lock(mu);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<BallTable>(build_ball_table(p, L))).first;
  return *it->second;
}

Certificate make_certificate(std::string kind, int L, double tol, double value,
                             std::uint64_t seed, int grid, double t, long samples) {
  Certificate c;
  c.kind = std::move(kind);
  c.L = L;
  c.tol = tol;
  c.value = value;
  c.seed = seed;
  c.grid = grid;
  c.t = t;
  c.samples = samples;
  c.timestamp = certificate_timestamp();
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// certify_free

namespace {

template <class T>
FreeCertification certify_free_impl(const MatrixRep& rep, int L, double tol) {
  auto letters = rep_letters<T>(rep);
  std::vector<int> path;
  auto out = scan_free_ball(letters, L, tol, T::frob_id, &path);
  FreeCertification fc;
  fc.margin = out.min_dist;
  if (!out.completed) {
    fc.passed = false;
    fc.witness = path_word(rep.pres, path);
    return fc;
  }
  fc.passed = true;
  fc.certificate =
      make_certificate("FreeUpToL", L, tol, out.min_dist, rep.seed, 0, 0.0, 0);
  return fc;
}

}  // namespace

FreeCertification certify_free(const MatrixRep& rep, int L, double tol,
                               unsigned long long budget) {
  if (rep.pres.kind() != PresentationKind::free_group)
    fail("PresentationMismatch", "certify_free requires a free presentation");
  if (L < 1) fail("BadIndex", "L must be >= 1");
  if (tol <= 0) fail("BadIndex", "tolerance must be positive");
  if (reduced_ball_count(2 * rep.pres.rank(), L) > budget)
    fail("BallTooLarge", "reduced ball of length " + std::to_string(L) +
                             " exceeds budget " + std::to_string(budget));
  return rep.kind == GroupKind::so3 ? certify_free_impl<So3Traits>(rep, L, tol)
                                    : certify_free_impl<Sl2Traits>(rep, L, tol);
}

// ---------------------------------------------------------------------------
// enlarge_rank

namespace {

template <class T>
DerivedRep enlarge_impl(const MatrixRep& rep, const Presentation& newp,
                        const GroupElement& a_img, const ClosureCurve& curve,
                        int grid, int L, double tol) {
  using M = typename T::M;
  const std::size_t r = rep.images.size();
  std::vector<M> letters(2 * (r + 1));
  for (std::size_t i = 0; i < r; ++i) {
    letters[2 * i] = T::from(rep.images[i]);
    letters[2 * i + 1] = T::inv(letters[2 * i]);
  }
  const M a_mat = T::from(a_img);

  auto set_point = [&](double t) {
    const M beta = T::from(curve.at(t));
    const M img = T::renorm(beta * a_mat * T::inv(beta));
    letters[2 * r] = img;
    letters[2 * r + 1] = T::inv(img);
  };
  auto t_of = [&](int j) { return curve.period() * j / grid; };

  const int pre_l = std::min(L, 4);
  std::vector<double> bound(static_cast<std::size_t>(grid),
                            std::numeric_limits<double>::infinity());
  if (pre_l < L) {
    for (int j = 0; j < grid; ++j) {
      set_point(t_of(j));
      bound[static_cast<std::size_t>(j)] =
          scan_free_ball(letters, pre_l, tol, T::frob_id, nullptr).min_dist;
    }
  }

  double mstar = tol;
  int best = -1;
  double best_upper = 0;  // best margin upper bound, for the failure report
  for (int j = 0; j < grid; ++j) {
    const double b = bound[static_cast<std::size_t>(j)];
    if (b <= mstar) {  // margin at L can only be smaller
      best_upper = std::max(best_upper, b);
      continue;
    }
    set_point(t_of(j));
    auto out = scan_free_ball(letters, L, mstar, T::frob_id, nullptr);
    best_upper = std::max(best_upper, out.min_dist);
    if (out.completed && out.min_dist > mstar) {
      mstar = out.min_dist;
      best = j;
    }
  }
  if (best < 0)
    fail("NoGridPointPasses",
         "no grid point certifies free at L=" + std::to_string(L) +
             "; best margin found <= " + std::to_string(best_upper));

  set_point(t_of(best));
  DerivedRep out;
  out.rep.kind = rep.kind;
  out.rep.pres = newp;
  out.rep.images = rep.images;
  out.rep.images.push_back(T::to(letters[2 * r]));
  out.rep.seed = rep.seed;
  out.rep.tolerance = rep.tolerance;
  out.certificate = make_certificate("FreeUpToL", L, tol, mstar, rep.seed, grid,
                                     t_of(best), 0);
  return out;
}

}  // namespace

DerivedRep enlarge_rank(const MatrixRep& rep, const Word& a, const Word& b,
                        int grid, int L, double tol, unsigned long long budget) {
  if (rep.pres.kind() != PresentationKind::free_group)
    fail("PresentationMismatch", "enlarge_rank requires a free presentation");
  if (grid < 1) fail("BadIndex", "grid must be >= 1");
  if (L < 1) fail("BadIndex", "L must be >= 1");
  rep.pres.require_alphabet(a);
  rep.pres.require_alphabet(b);
  if (commutes(a, b)) fail("CommutingPair", "a and b must not commute");
  if (reduced_ball_count(2 * (rep.pres.rank() + 1), L) > budget)
    fail("BallTooLarge", "certification ball exceeds budget");

  GroupElement a_img = evaluate(rep, a);
  GroupElement b_img = evaluate(rep, b);
  ClosureCurve curve = closure_curve(b_img);

  std::vector<Gen> gens = rep.pres.generators();
  int idx = rep.pres.rank() + 1;
  for (;;) {
    Gen g = symbols::intern("x" + std::to_string(idx));
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) {
      gens.push_back(g);
      break;
    }
    ++idx;
  }
  Presentation newp = Presentation::free_group(std::move(gens));

  return rep.kind == GroupKind::so3
             ? enlarge_impl<So3Traits>(rep, newp, a_img, curve, grid, L, tol)
             : enlarge_impl<Sl2Traits>(rep, newp, a_img, curve, grid, L, tol);
}

// ---------------------------------------------------------------------------
// surface_from_free

namespace {

template <class T>
DerivedRep surface_impl(const MatrixRep& rep, const Presentation& spres,
                        const ClosureCurve& curve, int grid, int L, double tol) {
  using M = typename T::M;
  const std::size_t n = rep.images.size();  // 2r free generators
  const BallTable& table = cached_ball_table(spres, L);

  std::vector<M> x(n), xinv(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = T::from(rep.images[i]);
    xinv[i] = T::inv(x[i]);
  }

  // letters: a-part mirrors the free images, b-part is conjugated by α
  std::vector<M> letters(4 * n);
  for (std::size_t i = 0; i < n; ++i) {
    letters[2 * i] = x[i];
    letters[2 * i + 1] = xinv[i];
  }
  auto set_point = [&](double t) {
    const M al = T::from(curve.at(t));
    const M ali = T::inv(al);
    for (std::size_t i = 0; i < n; ++i) {
      const M img = T::renorm(al * x[i] * ali);
      letters[2 * (n + i)] = img;
      letters[2 * (n + i) + 1] = T::inv(img);
    }
  };
  auto t_of = [&](int j) { return curve.period() * j / grid; };

  auto relator_residual = [&]() {
    M acc;
    if constexpr (std::is_same_v<M, Mat3>)
      acc = Mat3::identity();
    else
      acc = Mat2::identity();
    for (auto c : spres.relator().codes())
      acc = acc * letters[static_cast<std::size_t>(spres.signed_letter_index(c))];
    return T::frob_id(acc);
  };

  std::vector<M> scratch;
  double max_residual = 0;
  double mstar = tol;
  int best = -1;
  double best_upper = 0;
  int best_upper_j = 0;
  std::int32_t best_upper_node = -1;
  for (int j = 0; j < grid; ++j) {
    set_point(t_of(j));
    max_residual = std::max(max_residual, relator_residual());
    std::int32_t node = -1;
    auto out = scan_table(table, letters, mstar, T::metric_id, &node, scratch);
    if (out.min_dist > best_upper) {
      best_upper = out.min_dist;
      best_upper_j = j;
      best_upper_node = node;
    }
    if (out.completed && out.min_dist > mstar) {
      mstar = out.min_dist;
      best = j;
    }
  }
  if (best < 0) {
    std::string killer = best_upper_node >= 0
                             ? format_word(table_word(spres, table, best_upper_node))
                             : "";
    fail("MarginZeroEverywhere",
         "no grid point achieves margin > " + std::to_string(tol) + "; best t=" +
             std::to_string(t_of(best_upper_j)) + ", killing word '" + killer + "'");
  }

  set_point(t_of(best));
  DerivedRep out;
  out.rep.kind = rep.kind;
  out.rep.pres = spres;
  out.rep.images.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) out.rep.images.push_back(rep.images[i]);
  for (std::size_t i = 0; i < n; ++i)
    out.rep.images.push_back(T::to(letters[2 * (n + i)]));
  out.rep.seed = rep.seed;
  out.rep.tolerance = rep.tolerance;
  out.certificate =
      make_certificate("SurfaceMargin", L, tol, mstar, rep.seed, grid, t_of(best), 0);
  out.max_relator_residual = max_residual;
  return out;
}

}  // namespace

DerivedRep surface_from_free(const MatrixRep& rep, int grid, int L, double tol) {
  if (rep.pres.kind() != PresentationKind::free_group)
    fail("PresentationMismatch", "surface_from_free requires a free presentation");
  if (rep.pres.rank() % 2 != 0 || rep.pres.rank() < 2)
    fail("BadRank", "surface_from_free requires even free rank >= 2");
  if (grid < 1) fail("BadIndex", "grid must be >= 1");
  if (L < 1) fail("BadIndex", "L must be >= 1");
  if (reduced_ball_count(4 * rep.pres.rank(), L) > default_budget())
    fail("BallTooLarge", "surface ball exceeds budget");

  // γ: product of commutators of the positional pairs
  const auto& g = rep.pres.generators();
  WordBuilder gb;
  for (int i = 0; i + 1 < rep.pres.rank(); i += 2) {
    gb.push(code_of(g[static_cast<std::size_t>(i)], +1));
    gb.push(code_of(g[static_cast<std::size_t>(i + 1)], +1));
    gb.push(code_of(g[static_cast<std::size_t>(i)], -1));
    gb.push(code_of(g[static_cast<std::size_t>(i + 1)], -1));
  }
  GroupElement gamma = evaluate(rep, gb.take()).renormalized();
  ClosureCurve curve = [&] {
    try {
      return closure_curve(gamma);
    } catch (const Error& e) {
      if (e.name() == "DegenerateElement")
        fail("DegenerateGamma", "separating-curve image is degenerate; resample");
      throw;
    }
  }();

  Presentation spres = Presentation::surface(rep.pres.rank(), SurfaceForm::mirrored);
  return rep.kind == GroupKind::so3
             ? surface_impl<So3Traits>(rep, spres, curve, grid, L, tol)
             : surface_impl<Sl2Traits>(rep, spres, curve, grid, L, tol);
}

// ---------------------------------------------------------------------------
// free_from_surface

namespace {

// Pair positions realizing the relator as [p1.first,p1.second]···; for the
// mirrored form this is the standard relabeling (a-pairs, then (b_i',b_i)
// from the top down).
std::vector<std::pair<int, int>> surface_pairs(const Presentation& p) {
  std::vector<std::pair<int, int>> pairs;
  if (p.form() == SurfaceForm::standard) {
    for (int i = 0; i < p.genus(); ++i) pairs.emplace_back(2 * i, 2 * i + 1);
  } else {
    const int r = p.genus() / 2;
    for (int i = 0; i < r; ++i) pairs.emplace_back(2 * i, 2 * i + 1);
    for (int m = r; m >= 1; --m)
      pairs.emplace_back(2 * r + 2 * (m - 1) + 1, 2 * r + 2 * (m - 1));
  }
  return pairs;
}

template <class T>
DerivedRep ffs_impl(const MatrixRep& srep, const Presentation& fpres,
                    const std::vector<std::pair<int, int>>& pairs,
                    const ClosureCurve& curve, int grid, int L, double tol) {
  using M = typename T::M;
  const std::size_t n = pairs.size();  // genus; output rank 2n
  std::vector<M> letters(4 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const M first = T::from(srep.images[static_cast<std::size_t>(pairs[i].first)]);
    const M second = T::from(srep.images[static_cast<std::size_t>(pairs[i].second)]);
    letters[4 * i] = first;
    letters[4 * i + 1] = T::inv(first);
    letters[4 * i + 2] = second;
    letters[4 * i + 3] = T::inv(second);
  }
  const M a1 = letters[0];
  auto set_point = [&](double t) {
    const M img = T::renorm(a1 * T::from(curve.at(t)));
    letters[0] = img;
    letters[1] = T::inv(img);
  };
  auto t_of = [&](int j) { return curve.period() * j / grid; };

  const int pre_l = std::min(L, 4);
  std::vector<double> bound(static_cast<std::size_t>(grid),
                            std::numeric_limits<double>::infinity());
  if (pre_l < L) {
    for (int j = 0; j < grid; ++j) {
      set_point(t_of(j));
      bound[static_cast<std::size_t>(j)] =
          scan_free_ball(letters, pre_l, tol, T::frob_id, nullptr).min_dist;
    }
  }

  double mstar = tol;
  int best = -1;
  double best_upper = 0;
  for (int j = 0; j < grid; ++j) {
    const double b = bound[static_cast<std::size_t>(j)];
    if (b <= mstar) {
      best_upper = std::max(best_upper, b);
      continue;
    }
    set_point(t_of(j));
    auto out = scan_free_ball(letters, L, mstar, T::frob_id, nullptr);
    best_upper = std::max(best_upper, out.min_dist);
    if (out.completed && out.min_dist > mstar) {
      mstar = out.min_dist;
      best = j;
    }
  }
  if (best < 0)
    fail("NoGridPointPasses",
         "no grid point certifies free at L=" + std::to_string(L) +
             "; best margin found <= " + std::to_string(best_upper));

  set_point(t_of(best));
  DerivedRep out;
  out.rep.kind = srep.kind;
  out.rep.pres = fpres;
  out.rep.images.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out.rep.images.push_back(T::to(letters[4 * i]));
    out.rep.images.push_back(T::to(letters[4 * i + 2]));
  }
  out.rep.seed = srep.seed;
  out.rep.tolerance = srep.tolerance;
  out.certificate = make_certificate("FreeUpToL", L, tol, mstar, srep.seed, grid,
                                     t_of(best), 0);
  return out;
}

}  // namespace

DerivedRep free_from_surface(const MatrixRep& srep, int grid, int L, double tol,
                             unsigned long long budget) {
  if (srep.pres.kind() != PresentationKind::surface)
    fail("PresentationMismatch", "free_from_surface requires a surface presentation");
  if (grid < 1) fail("BadIndex", "grid must be >= 1");
  const auto pairs = surface_pairs(srep.pres);
  if (reduced_ball_count(4 * static_cast<int>(pairs.size()), L) > budget)
    fail("BallTooLarge", "certification ball exceeds budget");

  const GroupElement& a1p =
      srep.images[static_cast<std::size_t>(pairs[0].second)];
  ClosureCurve curve = closure_curve(a1p);

  std::vector<Gen> gens;
  for (std::size_t i = 1; i <= pairs.size(); ++i) {
    gens.push_back(symbols::intern("x" + std::to_string(i)));
    gens.push_back(symbols::intern("x" + std::to_string(i) + "'"));
  }
  Presentation fpres = Presentation::free_group(std::move(gens));

  return srep.kind == GroupKind::so3
             ? ffs_impl<So3Traits>(srep, fpres, pairs, curve, grid, L, tol)
             : ffs_impl<Sl2Traits>(srep, fpres, pairs, curve, grid, L, tol);
}

// ---------------------------------------------------------------------------
// covering radius

double covering_radius(const MatrixRep& rep, int L, long samples,
                       std::uint64_t seed, unsigned long long budget) {
  if (rep.kind != GroupKind::so3)
    fail("GroupKindMismatch", "covering_radius is defined for SO(3) only");
  if (L < 0) fail("BadIndex", "L must be >= 0");
  if (samples < 1) fail("BadIndex", "samples must be >= 1");
  if (reduced_ball_count(2 * rep.pres.rank(), L) >= budget)
    fail("BallTooLarge", "evaluated ball exceeds budget");

  // Materialize the evaluated ball as unit quaternions; the identity (empty
  // word) is part of the ball.
  std::vector<Quat> pts;
  pts.reserve(static_cast<std::size_t>(count) + 1);
  pts.push_back(Quat{1, 0, 0, 0});
  const int m = 2 * rep.pres.rank();
  std::vector<Quat> letters(static_cast<std::size_t>(m));
  for (int i = 0; i < rep.pres.rank(); ++i) {
    Quat q = quat_from_mat3(rep.images[static_cast<std::size_t>(i)].mat3());
    letters[static_cast<std::size_t>(2 * i)] = q;
    letters[static_cast<std::size_t>(2 * i + 1)] = {q.w, -q.x, -q.y, -q.z};
  }
  auto rec = [&](auto&& self, const Quat& cur, int depth, int last) -> void {
    for (int s = 0; s < m; ++s) {
      if ((s ^ 1) == last) continue;
      Quat nxt = qnormalized(qmul(cur, letters[static_cast<std::size_t>(s)]));
      pts.push_back(nxt);
      if (depth < L) self(self, nxt, depth + 1, s);
    }
  };
  if (L >= 1) rec(rec, Quat{1, 0, 0, 0}, 1, -1);

  Rng rng(seed);
  double max_angle = 0;
  double cstar = 1.0;  // cos(max_angle / 2)
  for (long s = 0; s < samples; ++s) {
    Quat p;
    do {
      p = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    } while (std::sqrt(p.w * p.w + p.x * p.x + p.y * p.y + p.z * p.z) < 1e-6);
    p = qnormalized(p);
    double best_dot = 0;
    bool aborted = false;
    for (const Quat& q : pts) {
      const double d =
          std::fabs(p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z);
      if (d > cstar) {  // this sample cannot raise the max
        aborted = true;
        break;
      }
      if (d > best_dot) best_dot = d;
    }
    if (!aborted) {
      max_angle = 2.0 * std::acos(std::min(1.0, best_dot));
      cstar = std::min(1.0, best_dot);
    }
  }
  return max_angle;
}

Certificate covering_radius_certificate(const MatrixRep& rep, int L, long samples,
                                        std::uint64_t seed,
                                        unsigned long long budget) {
  const double value = covering_radius(rep, L, samples, seed, budget);
  return make_certificate("CoveringRadius", L, 0.0, value, seed, 0, 0.0, samples);
}

}  // namespace surfree
