#include "knotheta/pd.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace knotheta {

int safe_mod(int a, int N) {
  if (N < 1) throw std::invalid_argument("safe_mod: N must be positive");
  int r = (a - 1) % N;
  if (r < 0) r += N;
  return r + 1;
}

ClosedPD::ClosedPD(std::vector<Tuple> crossings) : x_(std::move(crossings)) {
  int n = (int)x_.size();
  int N = 2 * n;
  std::vector<int> count(N + 1, 0);
  for (const auto& t : x_)
    for (int v : t) {
      if (v < 1 || v > N)
        throw std::runtime_error("invalid PD: label " + std::to_string(v) + " out of range 1.." +
                                 std::to_string(N));
      count[v]++;
    }
  for (int e = 1; e <= N; e++)
    if (count[e] != 2)
      throw std::runtime_error("invalid PD: label " + std::to_string(e) + " appears " +
                               std::to_string(count[e]) + " times");
  // sign rule and traversal consistency
  std::vector<int> headSeen(N + 1, 0);  // each label must be incoming exactly once
  for (int i = 0; i < n; i++) {
    const auto& t = x_[i];
    if (safe_mod(t[2] - t[0], N) != 1)
      throw std::runtime_error("invalid PD: crossing " + std::to_string(i) +
                               " under-exit is not under-entry + 1");
    int d = ((t[1] - t[3]) % N + N) % N;
    if (d != 1 && d != N - 1)
      throw std::runtime_error("invalid PD: crossing " + std::to_string(i) +
                               " has b-d not congruent to +-1 mod 2n");
    int s = sign(i);
    int overIn = s > 0 ? t[3] : t[1];
    int overOut = s > 0 ? t[1] : t[3];
    if (safe_mod(overOut - overIn, N) != 1)
      throw std::runtime_error("invalid PD: crossing " + std::to_string(i) +
                               " over-exit is not over-entry + 1");
    headSeen[t[0]]++;
    headSeen[overIn]++;
  }
  for (int e = 1; e <= N; e++)
    if (headSeen[e] != 1)
      throw std::runtime_error("invalid PD: label " + std::to_string(e) + " is incoming " +
                               std::to_string(headSeen[e]) + " times");
}

int ClosedPD::sign(int i) const {
  const auto& t = x_[i];
  if (n() == 1) return t[1] == t[0] ? 1 : -1;
  int N = 2 * n();
  int d = ((t[1] - t[3]) % N + N) % N;
  return d == 1 ? 1 : -1;
}

int ClosedPD::writhe() const {
  int w = 0;
  for (int i = 0; i < n(); i++) w += sign(i);
  return w;
}

ClosedPD ClosedPD::mirrored() const {
  // switching every crossing makes the old over-entry the new under-entry;
  // the counterclockwise tuple rotates accordingly
  std::vector<Tuple> out;
  out.reserve(x_.size());
  for (int i = 0; i < n(); i++) {
    const auto& t = x_[i];
    if (sign(i) > 0)
      out.push_back({t[3], t[0], t[1], t[2]});
    else
      out.push_back({t[1], t[2], t[3], t[0]});
  }
  return ClosedPD(std::move(out));
}

uint64_t ClosedPD::hash() const {
  std::string s = serialize_pd(*this, PDFormat::Bracket);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------
namespace {

struct Cursor {
  std::string_view s;
  size_t i = 0;
  void skipws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
  }
  bool eat(char c) {
    skipws();
    if (i < s.size() && s[i] == c) {
      i++;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw std::runtime_error("PD syntax error at position " + std::to_string(i) + ": expected '" +
                               c + "'");
  }
  bool eatWord(std::string_view w) {
    skipws();
    if (s.substr(i, w.size()) == w) {
      i += w.size();
      return true;
    }
    return false;
  }
  int integer() {
    skipws();
    size_t j = i;
    while (j < s.size() && std::isdigit((unsigned char)s[j])) j++;
    if (j == i)
      throw std::runtime_error("PD syntax error at position " + std::to_string(i) +
                               ": expected a label");
    int v = 0;
    for (; i < j; i++) v = v * 10 + (s[i] - '0');
    return v;
  }
  bool done() {
    skipws();
    return i >= s.size();
  }
};

}  // namespace

ClosedPD parse_pd(std::string_view text) {
  Cursor c{text};
  bool functional = c.eatWord("PD");
  c.expect('[');
  std::vector<ClosedPD::Tuple> tuples;
  if (!c.eat(']')) {
    while (true) {
      if (functional) {
        if (!c.eatWord("X"))
          throw std::runtime_error("PD syntax error at position " + std::to_string(c.i) +
                                   ": expected X[");
      }
      c.expect('[');
      ClosedPD::Tuple t;
      for (int k = 0; k < 4; k++) {
        t[k] = c.integer();
        if (k < 3) c.expect(',');
      }
      c.expect(']');
      tuples.push_back(t);
      if (c.eat(']')) break;
      c.expect(',');
    }
  }
  if (!c.done())
    throw std::runtime_error("PD syntax error at position " + std::to_string(c.i) +
                             ": trailing input");
  return ClosedPD(std::move(tuples));
}

std::string serialize_pd(const ClosedPD& pd, PDFormat format) {
  std::string s;
  bool functional = format == PDFormat::Functional;
  s += functional ? "PD[" : "[";
  for (int i = 0; i < pd.n(); i++) {
    if (i) s += ",";
    if (functional) s += "X";
    const auto& t = pd.crossings()[i];
    s += "[" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) +
         "," + std::to_string(t[3]) + "]";
  }
  s += "]";
  return s;
}

// ---------------------------------------------------------------------------
// connected sum
// ---------------------------------------------------------------------------
namespace {

// position (crossing, slot) where `label` leaves its tail crossing
std::pair<int, int> tail_occurrence(const ClosedPD& pd, int label) {
  for (int i = 0; i < pd.n(); i++) {
    const auto& t = pd.crossings()[i];
    int overOut = pd.sign(i) > 0 ? 1 : 3;  // slot index of over-exit
    if (t[2] == label) return {i, 2};
    if (t[overOut] == label) return {i, overOut};
  }
  throw std::logic_error("tail_occurrence: label not found");
}

}  // namespace

ClosedPD connected_sum(const ClosedPD& pd1, const ClosedPD& pd2) {
  if (pd1.n() == 0) return pd2;
  if (pd2.n() == 0) return pd1;
  int n1 = pd1.n(), n2 = pd2.n();
  int N = 2 * (n1 + n2);
  std::vector<ClosedPD::Tuple> out = pd1.crossings();
  auto [c1, s1] = tail_occurrence(pd1, 1);
  out[c1][s1] = 2 * n1 + 1;  // the connecting edge
  auto [c2, s2] = tail_occurrence(pd2, 1);
  for (int i = 0; i < n2; i++) {
    ClosedPD::Tuple t = pd2.crossings()[i];
    for (int k = 0; k < 4; k++) t[k] = safe_mod(t[k] + 2 * n1, N);
    out.push_back(t);
  }
  out[n1 + c2][s2] = safe_mod(2 * n1 + 1 + 2 * n2, N);  // wraps to label 1
  return ClosedPD(std::move(out));
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------
KnotTable KnotTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open knot table: " + path);
  KnotTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": missing tab separator");
    std::string name = line.substr(0, tab);
    try {
      t.rows_.emplace_back(name, parse_pd(line.substr(tab + 1)));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + " (" + name +
                               "): " + e.what());
    }
  }
  return t;
}

const ClosedPD* KnotTable::find(std::string_view name) const {
  for (const auto& [n, pd] : rows_)
    if (n == name) return &pd;
  return nullptr;
}

}  // namespace knotheta
