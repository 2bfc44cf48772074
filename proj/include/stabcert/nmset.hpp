// Copyright 2026 The stabcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABCERT_NMSET_HPP
#define STABCERT_NMSET_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stabcert/additive_code.hpp"
#include "stabcert/geometry.hpp"

namespace stabcert {

/// n lines and m points of PG(ambient_dim-1, 2). It is an (n,m)-set when any
/// three of its objects are in general position (check_strength3).
struct NMSet {
  int ambient_dim = 0;
  std::vector<PGLine> lines;
  std::vector<PGPoint> points;

  int n() const { return static_cast<int>(lines.size()); }
  int m() const { return static_cast<int>(points.size()); }
  LineSystem line_system() const { return {ambient_dim, lines}; }

  static NMSet from_lines(const LineSystem& ls) { return {ls.ambient_dim, ls.lines, {}}; }
  /// Same set with lines and points sorted by their keys.
  NMSet sorted() const;
  NMSet transformed(const LinearMap& g) const;
  bool same_objects(const NMSet& other) const { return sorted() == other.sorted(); }

  friend bool operator==(const NMSet&, const NMSet&) = default;
};

/// Matrix text for the lines (rows = coordinates, one column pair per line),
/// followed by one "(x:y:...)" line per point.
std::string format_nmset(const NMSet& s);
NMSet parse_nmset(std::string_view text);

/// Incremental strength-3 test. Tracks the union of all objects and of the
/// spans of all object pairs; a new object keeps strength 3 iff it avoids it.
class Strength3Builder {
 public:
  explicit Strength3Builder(int ambient_dim);

  bool can_add_line(const PointMask& line_points) const { return !forbidden_.intersects(line_points); }
  bool can_add_line(const PGLine& l) const { return can_add_line(l.mask()); }
  bool can_add_point(Word p) const { return !forbidden_.test(p); }

  /// Callers check can_add_* first; adding an incompatible object breaks the invariant.
  void add_line(Word a, Word b);
  void add_point(Word p);
  bool try_add(const PGLine& l);
  bool try_add(Word p);

  const PointMask& forbidden() const { return forbidden_; }
  int ambient_dim() const { return dim_; }
  int objects() const { return count_; }

 private:
  static constexpr int kMaxObjects = 40;
  int dim_;
  PointMask forbidden_;
  std::array<Word, kMaxObjects * 2> gens_{};
  std::array<std::uint8_t, kMaxObjects> sizes_{};
  int count_ = 0;
};

bool check_strength3(const NMSet& s);
std::vector<PGPoint> extension_points(const NMSet& s);
std::vector<PGLine> extension_lines(const NMSet& s);

/// Canonical representative of the orbit of `s` under GL(ambient_dim, 2).
///
/// A frame is an ordered basis of span(s) made of: min(n,3) lines of s in
/// general position, each with an ordered basis, followed by points of s (or
/// points on its lines) added one at a time while they raise the dimension.
/// Frames are defined from s alone, so g maps the frames of s onto those of
/// g(s); the canonical form is the smallest image of s written in frame
/// coordinates. Automorphisms act freely on frames, so the number of frames
/// reaching the minimum is the order of the automorphism group restricted to
/// span(s).
struct CanonicalForm {
  NMSet form;
  LinearMap to_canonical;  // to_canonical(s) == form, as sets
  std::uint64_t frames_at_minimum = 0;
  std::uint64_t frames_total = 0;
  int span_dim = 0;
};
CanonicalForm canonical_form(const NMSet& s);

/// Linear maps preserving the lines and the points of s. When s spans a
/// proper subspace only maps fixing the standard complement are listed.
std::vector<LinearMap> automorphisms(const NMSet& s);
/// Full order in GL(ambient_dim, 2), including maps moving the complement.
std::uint64_t automorphism_order(const NMSet& s);

/// A map g with g(from) == to, when the sets are projectively equivalent.
std::optional<LinearMap> equivalence(const NMSet& from, const NMSet& to);

struct ProjectivityClass {
  NMSet canonical;
  std::uint64_t aut_order = 0;
  std::uint64_t members = 0;  // how many inputs fell into the class
  NMSet first_member;         // first input seen in this class
};

std::vector<ProjectivityClass> classify(std::span<const NMSet> sets);

/// The standard lines <e_1,e_2>, <e_3,e_4>, <e_5,e_6>, ... used as search prefix.
std::vector<PGLine> standard_lines(int count, int ambient_dim);

struct SearchConstraints {
  /// Invoked on partial line systems (prefix included); false prunes.
  /// Must be invariant under projectivities when classifying.
  std::function<bool(std::span<const PGLine>)> line_filter;
  /// Final predicate on complete sets.
  std::function<bool(const NMSet&)> accept;
  bool classify = true;
  bool keep_sets = true;
  int workers = 1;
};

struct SearchResult {
  int ambient_dim = 0;
  int n = 0;
  int m = 0;
  int prefix_lines = 0;
  /// Every set through the standard prefix (when keep_sets).
  std::vector<NMSet> sets;
  std::uint64_t count = 0;
  std::vector<ProjectivityClass> classes;
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;
  /// Sum over classes of sets-through-prefix equals the enumerated count.
  bool mass_balanced = true;
  std::uint64_t canonical_forms_computed = 0;
};

/// Number of sets of a class through a fixed unordered prefix of
/// `prefix_lines` standard lines: C(n, l) * |Stab(prefix)| / |Aut|.
std::uint64_t sets_through_prefix(int ambient_dim, int n, int prefix_lines, std::uint64_t aut_order);

/// All (n,m)-sets containing the standard prefix of min(n,3) lines; every
/// (n,m)-set is equivalent to one of them. Lines after the prefix are taken
/// in increasing index order, points likewise. When classifying, classes are
/// found by canonical forms of one set per invariant bucket, adding more until
/// each bucket's size equals the summed class masses.
SearchResult exhaustive_nm_search(int ambient_dim, int n, int m, const SearchConstraints& c = {});

/// Maximum m over all (n,m)-sets in the ambient space. Throws if no n-line
/// strength-3 system exists.
int max_points_given_lines(int ambient_dim, int n);

/// Every `size`-subset of `candidates` that can be added to s as a whole,
/// in candidate order.
std::vector<std::vector<PGPoint>> compatible_point_sets(const NMSet& s, std::span<const PGPoint> candidates, int size);

}  // namespace stabcert

#endif  // STABCERT_NMSET_HPP
