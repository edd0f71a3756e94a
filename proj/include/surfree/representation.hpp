#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surfree/presentation.hpp"
#include "surfree/smallmat.hpp"
#include "surfree/word.hpp"

namespace surfree {

enum class GroupKind { so3, sl2r };

// Element of SO(3) (3x3, row-major) or SL(2,R) (2x2). Stored renormalized:
// orthogonality/determinant defect <= 1e-12.
class GroupElement {
 public:
  static GroupElement identity(GroupKind k);
  static GroupElement from_mat3(const Mat3& m);
  static GroupElement from_mat2(const Mat2& m);

  GroupKind kind() const noexcept { return kind_; }
  Mat3 mat3() const;
  Mat2 mat2() const;

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;
  GroupElement renormalized() const;

  double dist_frob_identity() const;
  // Bi-invariant metric where available: rotation angle for SO(3),
  // Frobenius distance to the identity for SL(2,R).
  double metric_dist_identity() const;

  std::vector<double> flat() const;  // 9 or 4 row-major entries

 private:
  GroupElement(GroupKind k) : kind_(k) {}
  GroupKind kind_;
  std::array<double, 9> a_{};
};

// Assignment of presentation generators to group elements.
struct MatrixRep {
  GroupKind kind = GroupKind::so3;
  Presentation pres = Presentation::free_group(1);
  std::vector<GroupElement> images;  // aligned with pres.generators()
  std::uint64_t seed = 0;
  double tolerance = 1e-12;

  const GroupElement& image_at(std::size_t pos) const { return images[pos]; }
};

// Closure of a cyclic group, as actually used: the circle of rotations about
// the base's axis in SO(3), the one-parameter subgroup exp(t·log base) in
// SL(2,R). Every point commutes with the base; at(0) is the identity.
class ClosureCurve {
 public:
  GroupKind kind() const noexcept { return kind_; }
  double period() const noexcept { return period_; }
  const GroupElement& base() const noexcept { return base_; }
  double base_parameter() const noexcept { return base_t_; }  // at(base_parameter())=base (SO3)
  GroupElement at(double t) const;

 private:
  friend ClosureCurve closure_curve(const GroupElement&);
  ClosureCurve(GroupKind k, GroupElement base) : kind_(k), base_(std::move(base)) {}

  GroupKind kind_;
  GroupElement base_;
  double period_ = 0;
  double base_t_ = 0;
  Vec3 axis_{};  // so3
  Mat2 log_{};   // sl2r
};

ClosureCurve closure_curve(const GroupElement& g);

// Persisted, seeded record of a verification run.
struct Certificate {
  std::string kind;  // FreeUpToL | SurfaceMargin | CoveringRadius
  int L = 0;
  double tol = 0;
  double value = 0;
  std::uint64_t seed = 0;
  int grid = 0;
  double t = 0;
  long samples = 0;
  std::int64_t timestamp = 0;
};

// Unix time, honoring SOURCE_DATE_EPOCH so seeded runs can be byte-identical.
std::int64_t certificate_timestamp();

// Default enumeration budget, overridable via SURFREE_BUDGET.
unsigned long long default_budget();

GroupElement evaluate(const MatrixRep& rep, const Word& w);

// k independent elements: Haar via normalized random quaternions for SO(3);
// for SL(2,R) (infinite Haar measure) exp of Gaussian Lie-algebra elements,
// an absolutely continuous surrogate recorded with the seed.
MatrixRep sample_tuple(GroupKind kind, int k, std::uint64_t seed);

struct FreeCertification {
  bool passed = false;
  double margin = 0;  // min Frobenius distance to the identity over the scan
  Word witness;       // relation candidate when !passed
  Certificate certificate;  // when passed
};

// Scans every nonempty reduced word of length <= L; passes iff each evaluation
// is at Frobenius distance > tol from the identity.
FreeCertification certify_free(const MatrixRep& rep, int L, double tol,
                               unsigned long long budget);

struct DerivedRep {
  MatrixRep rep;
  Certificate certificate;
  double max_relator_residual = 0;  // surface_from_free only
};

// New generator image β·eval(a)·β⁻¹ with β grid-searched over the closure
// curve of eval(b); returns the grid point maximizing the certify_free margin
// at length L among points that pass.
DerivedRep enlarge_rank(const MatrixRep& rep, const Word& a, const Word& b,
                        int grid, int L, double tol, unsigned long long budget);

// Free rank-2r tuple (generators paired positionally (x_i, x_i')) to the
// mirrored genus-2r surface group: a_i -> x_i, a_i' -> x_i', b_i -> α x_i α⁻¹,
// b_i' -> α x_i' α⁻¹, with α grid-searched on the closure curve of the
// commutator-chain image γ. The relator residual vanishes identically on the
// curve and is checked at every grid point.
DerivedRep surface_from_free(const MatrixRep& rep, int grid, int L, double tol);

// Converse deformation: surface rep (standard form; the mirrored form is
// accepted via its standard relabeling) to a free tuple x1 -> eval(a1)·ω,
// other generators straight across, ω grid-searched on the closure curve of
// eval(a1') to maximize the certify_free margin.
DerivedRep free_from_surface(const MatrixRep& rep, int grid, int L, double tol,
                             unsigned long long budget);

// Max over `samples` Haar points of the min angle-distance to the evaluated
// ball of radius L. SO(3) only; deterministic per seed and nonincreasing in L.
double covering_radius(const MatrixRep& rep, int L, long samples,
                       std::uint64_t seed, unsigned long long budget);
Certificate covering_radius_certificate(const MatrixRep& rep, int L, long samples,
                                        std::uint64_t seed, unsigned long long budget);

}  // namespace surfree
