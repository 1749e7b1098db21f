#pragma once

// Flag graphs of abstract polyhedra: a set of flags together with one
// fixed-point-free exchange involution per rank. Faces at rank i are the
// orbits of the exchange maps at all other ranks; no face poset is ever
// materialized.

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyquot/union_find.hpp"

namespace polyquot {

using Flag = int;

// A sequence of exchange-map indices, applied left to right:
// f^(uv) = (f^u)^v.
struct Word {
  std::vector<int> letters;

  Word() = default;
  explicit Word(std::vector<int> l) : letters(std::move(l)) {}

  // Accepts "abc..." (a=0, b=1, c=2, d=3) or digit strings "012...".
  static Word parse(const std::string& s) {
    Word w;
    w.letters.reserve(s.size());
    for (char ch : s) {
      if (ch == ' ') continue;
      if (ch >= 'a' && ch <= 'j')
        w.letters.push_back(ch - 'a');
      else if (ch >= '0' && ch <= '9')
        w.letters.push_back(ch - '0');
      else
        throw std::invalid_argument(std::string("bad word character: ") + ch);
    }
    return w;
  }

  // Inverse word when all letters are involutions.
  Word reversed() const {
    Word w(*this);
    std::reverse(w.letters.begin(), w.letters.end());
    return w;
  }

  Word& operator+=(const Word& o) {
    letters.insert(letters.end(), o.letters.begin(), o.letters.end());
    return *this;
  }
  friend Word operator+(Word a, const Word& b) { return a += b; }

  // x^g = g^-1 x g, as a word over involutions: reverse(g) x g.
  static Word conjugate(const Word& x, const Word& g) {
    return g.reversed() + x + g;
  }

  static Word power(const Word& x, int k) {
    Word w;
    for (int i = 0; i < k; ++i) w += x;
    return w;
  }

  bool empty() const { return letters.empty(); }
  size_t size() const { return letters.size(); }
  bool operator==(const Word& o) const { return letters == o.letters; }

  std::string str() const {
    std::string s;
    for (int l : letters) s += static_cast<char>('a' + l);
    return s;
  }
};

class FlagGraph {
 public:
  FlagGraph(int rank, std::vector<std::vector<Flag>> exchange)
      : rank_(rank), ex_(std::move(exchange)) {
    if (rank_ < 1 || static_cast<int>(ex_.size()) != rank_)
      throw std::invalid_argument("flag graph: need one exchange map per rank");
    n_ = static_cast<int>(ex_[0].size());
    if (n_ <= 0) throw std::invalid_argument("flag graph: no flags");
    for (int i = 0; i < rank_; ++i) {
      if (static_cast<int>(ex_[i].size()) != n_)
        throw std::invalid_argument("flag graph: exchange maps disagree on flag count");
      for (Flag f = 0; f < n_; ++f)
        if (ex_[i][f] < 0 || ex_[i][f] >= n_)
          throw std::invalid_argument("flag graph: exchange image out of range");
    }
  }

  int rank() const { return rank_; }
  Flag n_flags() const { return n_; }

  Flag exchange(int i, Flag f) const { return ex_[i][f]; }
  const std::vector<Flag>& exchange_map(int i) const { return ex_[i]; }

  Flag apply(Flag f, int letter) const {
    if (letter < 0 || letter >= rank_)
      throw std::invalid_argument("apply: letter out of range");
    return ex_[letter][f];
  }

  Flag apply_word(Flag f, const Word& w) const {
    for (int l : w.letters) f = apply(f, l);
    return f;
  }

 private:
  int rank_;
  int n_ = 0;
  std::vector<std::vector<Flag>> ex_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string kind;  // "not-involution", "fixed-point", "string-condition",
                     // "diamond-local", "diamond", "disconnected"
  Flag witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  std::string str() const {
    std::ostringstream os;
    for (const auto& v : violations)
      os << v.kind << " at flag " << v.witness
         << (v.detail.empty() ? "" : ": " + v.detail) << "\n";
    return os.str();
  }
};

namespace detail {

// Orbits of the exchange maps listed in `which`, labeled 0..count-1 in order
// of smallest contained flag.
struct OrbitLabels {
  int count = 0;
  std::vector<int> label;     // flag -> orbit id
  std::vector<Flag> min_flag; // orbit id -> smallest flag
  std::vector<int> size;      // orbit id -> number of flags
};

inline OrbitLabels orbits_under(const FlagGraph& g, const std::vector<int>& which) {
  UnionFind uf(g.n_flags());
  for (int i : which)
    for (Flag f = 0; f < g.n_flags(); ++f) uf.unite(f, g.exchange(i, f));
  OrbitLabels out;
  out.label.assign(g.n_flags(), -1);
  std::map<int, int> root_to_id;  // roots are orbit minima; map is ordered
  for (Flag f = 0; f < g.n_flags(); ++f) root_to_id[uf.find(f)] = 0;
  int next = 0;
  for (auto& [root, id] : root_to_id) id = next++;
  out.count = next;
  out.min_flag.assign(next, 0);
  out.size.assign(next, 0);
  for (auto& [root, id] : root_to_id) out.min_flag[id] = root;
  for (Flag f = 0; f < g.n_flags(); ++f) {
    int id = root_to_id[uf.find(f)];
    out.label[f] = id;
    out.size[id]++;
  }
  return out;
}

}  // namespace detail

// Face partition at rank i: orbits of the exchange maps at every other rank.
struct FacePartition {
  int rank_index = 0;
  int count = 0;
  std::vector<int> orbit_of;   // flag -> orbit index
  std::vector<Flag> min_flag;  // orbit index -> smallest flag
  std::vector<int> size;       // orbit index -> number of flags in orbit
};

inline FacePartition faces(const FlagGraph& g, int i) {
  if (i < 0 || i >= g.rank())
    throw std::invalid_argument("faces: rank index out of range");
  std::vector<int> which;
  for (int j = 0; j < g.rank(); ++j)
    if (j != i) which.push_back(j);
  auto orb = detail::orbits_under(g, which);
  FacePartition p;
  p.rank_index = i;
  p.count = orb.count;
  p.orbit_of = std::move(orb.label);
  p.min_flag = std::move(orb.min_flag);
  p.size = std::move(orb.size);
  return p;
}

// (rank, orbit) identifier of a face.
struct FaceId {
  int rank_index;
  int orbit_index;
  bool operator==(const FaceId& o) const {
    return rank_index == o.rank_index && orbit_index == o.orbit_index;
  }
};

inline bool is_connected(const FlagGraph& g, Flag* first_unreached = nullptr) {
  std::vector<char> seen(g.n_flags(), 0);
  std::queue<Flag> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    Flag f = q.front();
    q.pop();
    for (int i = 0; i < g.rank(); ++i) {
      Flag t = g.exchange(i, f);
      if (!seen[t]) {
        seen[t] = 1;
        ++reached;
        q.push(t);
      }
    }
  }
  if (reached == g.n_flags()) return true;
  if (first_unreached)
    for (Flag f = 0; f < g.n_flags(); ++f)
      if (!seen[f]) {
        *first_unreached = f;
        break;
      }
  return false;
}

// Checks the flag-graph axioms and the face-level diamond condition. Every
// violation is reported with a witness flag; an empty report means the graph
// is the flag graph of an abstract polyhedron.
inline ValidationReport validate(const FlagGraph& g) {
  ValidationReport rep;
  const int n = g.n_flags();
  const int r = g.rank();

  bool involutions_ok = true;
  for (int i = 0; i < r; ++i)
    for (Flag f = 0; f < n; ++f) {
      if (g.exchange(i, g.exchange(i, f)) != f) {
        rep.violations.push_back({"not-involution", f, "exchange " + std::to_string(i)});
        involutions_ok = false;
      }
      if (g.exchange(i, f) == f) {
        rep.violations.push_back({"fixed-point", f, "exchange " + std::to_string(i)});
        involutions_ok = false;
      }
    }
  if (!involutions_ok) return rep;  // later checks assume involutions

  for (int i = 0; i < r; ++i)
    for (int j = i + 2; j < r; ++j)
      for (Flag f = 0; f < n; ++f) {
        if (g.exchange(i, g.exchange(j, f)) != g.exchange(j, g.exchange(i, f)))
          rep.violations.push_back(
              {"string-condition", f, "exchanges " + std::to_string(i) + "," + std::to_string(j)});
        if (g.exchange(i, f) == g.exchange(j, f))
          rep.violations.push_back(
              {"diamond-local", f,
               "orbit of exchanges " + std::to_string(i) + "," + std::to_string(j) + " has size 2"});
      }

  Flag unreached = -1;
  if (!is_connected(g, &unreached))
    rep.violations.push_back({"disconnected", unreached, "not reachable from flag 0"});
  if (!rep.ok()) return rep;  // face-level checks assume the above

  // Diamond condition per rank: the flags sharing all faces except the one at
  // rank i must come in pairs carrying two distinct i-faces.
  std::vector<FacePartition> part;
  part.reserve(r);
  for (int i = 0; i < r; ++i) part.push_back(faces(g, i));
  for (int i = 0; i < r; ++i) {
    std::map<std::vector<int>, std::vector<Flag>> klass;
    for (Flag f = 0; f < n; ++f) {
      std::vector<int> key;
      key.reserve(r - 1);
      for (int j = 0; j < r; ++j)
        if (j != i) key.push_back(part[j].orbit_of[f]);
      klass[std::move(key)].push_back(f);
    }
    for (const auto& [key, fl] : klass) {
      bool bad = fl.size() != 2;
      if (!bad) bad = part[i].orbit_of[fl[0]] == part[i].orbit_of[fl[1]];
      if (bad)
        rep.violations.push_back(
            {"diamond", fl.front(),
             "rank " + std::to_string(i) + ": incident face pair with " +
                 std::to_string(fl.size()) + " flags"});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Automorphism orbits

// Orbits of the flags under color-preserving automorphisms of the flag graph.
// The action is free on a connected flag graph, so an automorphism is
// determined by the image of flag 0: each candidate image is propagated
// breadth-first and accepted iff globally consistent.
struct FlagOrbits {
  int count = 0;
  std::vector<Flag> representatives;  // smallest flag of each orbit
  std::vector<int> orbit_of;          // flag -> orbit index
  int aut_order = 0;                  // number of accepted automorphisms
  std::vector<std::vector<Flag>> automorphisms;  // image maps, identity first
};

inline bool propagate_automorphism(const FlagGraph& g, Flag target, std::vector<Flag>& img) {
  const int n = g.n_flags();
  img.assign(n, -1);
  img[0] = target;
  std::queue<Flag> q;
  q.push(0);
  while (!q.empty()) {
    Flag f = q.front();
    q.pop();
    for (int i = 0; i < g.rank(); ++i) {
      Flag fi = g.exchange(i, f);
      Flag ti = g.exchange(i, img[f]);
      if (img[fi] == -1) {
        img[fi] = ti;
        q.push(fi);
      } else if (img[fi] != ti) {
        return false;
      }
    }
  }
  return true;  // connected graph: all flags assigned, all edges checked
}

inline FlagOrbits flag_orbits(const FlagGraph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("flag_orbits: graph is disconnected");
  const int n = g.n_flags();
  FlagOrbits out;
  std::vector<Flag> img;
  UnionFind uf(n);
  for (Flag t = 0; t < n; ++t) {
    if (!propagate_automorphism(g, t, img)) continue;
    out.automorphisms.push_back(img);
    for (Flag f = 0; f < n; ++f) uf.unite(f, img[f]);
  }
  out.aut_order = static_cast<int>(out.automorphisms.size());
  std::map<int, int> root_to_id;
  for (Flag f = 0; f < n; ++f) root_to_id[uf.find(f)] = 0;
  int next = 0;
  for (auto& [root, id] : root_to_id) {
    id = next++;
    out.representatives.push_back(root);
  }
  out.count = next;
  out.orbit_of.assign(n, -1);
  for (Flag f = 0; f < n; ++f) out.orbit_of[f] = root_to_id[uf.find(f)];
  return out;
}

// ---------------------------------------------------------------------------
// Vertex symbols and Euler characteristic (rank 3)

// Cyclic sequence of face sizes around a vertex; equal up to rotation and
// reflection.
struct VertexSymbol {
  std::vector<int> cycle;

  std::vector<int> canonical() const {
    const size_t k = cycle.size();
    std::vector<int> best;
    for (int refl = 0; refl < 2; ++refl) {
      std::vector<int> c = cycle;
      if (refl) std::reverse(c.begin(), c.end());
      for (size_t s = 0; s < k; ++s) {
        std::vector<int> rot(k);
        for (size_t i = 0; i < k; ++i) rot[i] = c[(s + i) % k];
        if (best.empty() || rot < best) best = rot;
      }
    }
    return best;
  }

  bool operator==(const VertexSymbol& o) const { return canonical() == o.canonical(); }
  bool operator!=(const VertexSymbol& o) const { return !(*this == o); }

  std::string str() const {
    auto c = canonical();
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) s += '.';
      s += std::to_string(c[i]);
    }
    return s;
  }
};

// Face sizes at rank 2: each 2-face orbit has 2p flags for a p-gon.
inline std::vector<int> face_sizes(const FlagGraph& g, const FacePartition& rank2) {
  std::vector<int> sizes(rank2.count);
  for (int i = 0; i < rank2.count; ++i) sizes[i] = rank2.size[i] / 2;
  return sizes;
}

inline VertexSymbol vertex_symbol(const FlagGraph& g, const FacePartition& rank0,
                                  const FacePartition& rank2, int vertex_orbit) {
  if (g.rank() != 3) throw std::invalid_argument("vertex_symbol: rank must be 3");
  if (vertex_orbit < 0 || vertex_orbit >= rank0.count)
    throw std::invalid_argument("vertex_symbol: not a rank-0 face");
  auto sizes = face_sizes(g, rank2);
  VertexSymbol sym;
  Flag start = rank0.min_flag[vertex_orbit];
  Flag f = start;
  do {
    sym.cycle.push_back(sizes[rank2.orbit_of[f]]);
    f = g.exchange(1, g.exchange(2, f));  // next face around the vertex
  } while (f != start);
  return sym;
}

inline VertexSymbol vertex_symbol(const FlagGraph& g, int vertex_orbit) {
  return vertex_symbol(g, faces(g, 0), faces(g, 2), vertex_orbit);
}

inline int euler_characteristic(const FlagGraph& g) {
  if (g.rank() != 3) throw std::invalid_argument("euler_characteristic: rank must be 3");
  return faces(g, 0).count - faces(g, 1).count + faces(g, 2).count;
}

}  // namespace polyquot
