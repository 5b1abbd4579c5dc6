#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace knotheta {

// ((a-1) mod N) + 1: congruence representative in 1..N, never 0
int safe_mod(int a, int N);

enum class PDFormat { Functional, Bracket };

// Closed planar diagram of an oriented knot.  Crossing tuples (a,b,c,d) list
// the incoming lower edge first, then counterclockwise; edge labels run
// 1..2n along the orientation.  Construction validates:
//   - every label in 1..2n appears exactly twice
//   - (b-d) mod 2n is 1 or 2n-1 (crossing sign)
//   - c = a+1 and the over-strand exit is its entry + 1 (mod 2n, 0 := 2n),
//     so the tuples are consistent with the single traversal 1,2,...,2n
class ClosedPD {
 public:
  using Tuple = std::array<int, 4>;

  ClosedPD() = default;  // the unknot diagram, n = 0
  explicit ClosedPD(std::vector<Tuple> crossings);

  int n() const { return (int)x_.size(); }
  int edge_count() const { return 2 * n(); }
  const std::vector<Tuple>& crossings() const { return x_; }

  // +1 iff b-d = 1 (mod 2n); for one-crossing diagrams the congruence is
  // degenerate and head/tail consistency decides (b == a means positive)
  int sign(int crossing_index) const;
  int writhe() const;

  ClosedPD mirrored() const;

  uint64_t hash() const;  // FNV-1a over the bracket serialization

  bool operator==(const ClosedPD& o) const { return x_ == o.x_; }

 private:
  std::vector<Tuple> x_;
};

ClosedPD parse_pd(std::string_view text);
std::string serialize_pd(const ClosedPD& pd, PDFormat format = PDFormat::Bracket);

// Joins the long-knot forms: cut each diagram at the edge entering label 1,
// stack, renumber to 1..2(n1+n2).  Writhe adds; Alexander multiplies.
ClosedPD connected_sum(const ClosedPD& pd1, const ClosedPD& pd2);

// Bundled name -> PD snapshot (one record per line, "name<TAB>bracket-pd")
class KnotTable {
 public:
  static KnotTable load(const std::string& path);

  const ClosedPD* find(std::string_view name) const;
  const std::vector<std::pair<std::string, ClosedPD>>& rows() const { return rows_; }

 private:
  std::vector<std::pair<std::string, ClosedPD>> rows_;
};

}  // namespace knotheta
