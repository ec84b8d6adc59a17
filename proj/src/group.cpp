#include "grouprep/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace grouprep {

namespace {

std::string describe(const FiniteGroup& g, int x) {
  std::ostringstream os;
  os << "element " << x << " ('" << g.labels[x] << "')";
  return os.str();
}

void check_associativity(const FiniteGroup& g) {
  const int n = g.order();
  auto check = [&](int a, int b, int c) {
    if (g.cayley[g.cayley[a][b]][c] != g.cayley[a][g.cayley[b][c]]) {
      std::ostringstream os;
      os << "(a*b)*c != a*(b*c) for triple (" << a << ", " << b << ", " << c << ")";
      fail(Err::NonAssociative, os.str());
    }
  };
  if (n <= 128) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check(a, b, c);
  } else {
    Rng rng(0x5eed);
    const long samples = 10L * n * n;
    for (long s = 0; s < samples; ++s) check(rng.uniform_int(n), rng.uniform_int(n), rng.uniform_int(n));
  }
}

std::vector<std::vector<int>> permutations_lex(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

int FiniteGroup::index_of(const std::string& label) const {
  for (int i = 0; i < order(); ++i)
    if (labels[i] == label) return i;
  fail(Err::UnknownGenerator, "no element labelled '" + label + "'");
}

GroupPtr build_group(const std::vector<std::string>& labels, const std::vector<std::vector<int>>& cayley,
                     const std::vector<int>& generators) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) fail(Err::MalformedTable, "empty group");
  if (static_cast<int>(cayley.size()) != n) fail(Err::MalformedTable, "table has wrong row count");
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(cayley[r].size()) != n) {
      std::ostringstream os;
      os << "row " << r << " has wrong length";
      fail(Err::MalformedTable, os.str());
    }
    for (int c = 0; c < n; ++c)
      if (cayley[r][c] < 0 || cayley[r][c] >= n) {
        std::ostringstream os;
        os << "entry [" << r << "][" << c << "] = " << cayley[r][c] << " out of range";
        fail(Err::MalformedTable, os.str());
      }
  }
  for (int r = 0; r < n; ++r) {
    std::vector<bool> seen_row(n, false), seen_col(n, false);
    for (int c = 0; c < n; ++c) {
      if (seen_row[cayley[r][c]]) {
        std::ostringstream os;
        os << "row " << r << " is not a permutation (repeat at column " << c << ")";
        fail(Err::MalformedTable, os.str());
      }
      seen_row[cayley[r][c]] = true;
      if (seen_col[cayley[c][r]]) {
        std::ostringstream os;
        os << "column " << r << " is not a permutation (repeat at row " << c << ")";
        fail(Err::MalformedTable, os.str());
      }
      seen_col[cayley[c][r]] = true;
    }
  }

  auto g = std::make_shared<FiniteGroup>();
  g->labels = labels;
  g->cayley = cayley;

  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = cayley[e][x] == x && cayley[x][e] == x;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) fail(Err::NoIdentity, "no two-sided identity element");
  g->identity = identity;

  g->inverse.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (cayley[x][y] == identity && cayley[y][x] == identity) {
        g->inverse[x] = y;
        break;
      }
    if (g->inverse[x] < 0) fail(Err::NoInverse, "no two-sided inverse for " + describe(*g, x));
  }

  check_associativity(*g);

  for (int s : generators)
    if (s < 0 || s >= n) fail(Err::MalformedTable, "generator index out of range");
  g->generators = generators;
  return g;
}

GroupPtr builtin_group(BuiltinKind kind, int n) {
  switch (kind) {
    case BuiltinKind::Cyclic: {
      if (n < 1) fail(Err::UnsupportedSize, "cyclic group needs n >= 1");
      std::vector<std::string> labels(n);
      std::vector<std::vector<int>> t(n, std::vector<int>(n));
      for (int a = 0; a < n; ++a) {
        labels[a] = "c" + std::to_string(a);
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
      }
      return build_group(labels, t, {n > 1 ? 1 : 0});
    }
    case BuiltinKind::Dihedral: {
      if (n < 3) fail(Err::UnsupportedSize, "dihedral group needs n >= 3");
      const int order = 2 * n;
      std::vector<std::string> labels(order);
      std::vector<std::vector<int>> t(order, std::vector<int>(order));
      for (int a = 0; a < n; ++a) {
        labels[a] = "r" + std::to_string(a);
        labels[n + a] = "s" + std::to_string(a);
      }
      auto m = [n](int x) { return ((x % n) + n) % n; };
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          t[a][b] = m(a + b);
          t[a][n + b] = n + m(b - a);
          t[n + a][b] = n + m(a + b);
          t[n + a][n + b] = m(b - a);
        }
      return build_group(labels, t, {1, n});
    }
    case BuiltinKind::Symmetric: {
      if (n < 1 || n > 5) fail(Err::UnsupportedSize, "symmetric group supported for 1 <= n <= 5");
      const auto perms = permutations_lex(n);
      const int order = static_cast<int>(perms.size());
      std::vector<std::string> labels(order);
      for (int i = 0; i < order; ++i) {
        std::string s;
        for (int x : perms[i]) s += static_cast<char>('0' + x);
        labels[i] = s;
      }
      auto index_of = [&](const std::vector<int>& p) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
      };
      std::vector<std::vector<int>> t(order, std::vector<int>(order));
      std::vector<int> comp(n);
      for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
          for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
          t[a][b] = index_of(comp);
        }
      std::vector<int> gens;
      if (n == 1) {
        gens = {0};
      } else {
        std::vector<int> swap01(n), cycle(n);
        std::iota(swap01.begin(), swap01.end(), 0);
        std::swap(swap01[0], swap01[1]);
        for (int x = 0; x < n; ++x) cycle[x] = (x + 1) % n;
        gens = {index_of(swap01)};
        const int c = index_of(cycle);
        if (c != gens[0]) gens.push_back(c);
      }
      return build_group(labels, t, gens);
    }
    case BuiltinKind::Quaternion: {
      // Elements encoded as (axis, sign) with axes 1, i, j, k.
      const std::vector<std::string> labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
      auto enc = [](int axis, int sign) { return 2 * axis + (sign < 0 ? 1 : 0); };
      auto axis = [](int e) { return e / 2; };
      auto sign = [](int e) { return e % 2 == 0 ? 1 : -1; };
      // axis_mul[a][b] = (axis, sign) of the product of basis axes a*b.
      static const int axis_mul[4][4][2] = {
          {{0, 1}, {1, 1}, {2, 1}, {3, 1}},
          {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
          {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
          {{3, 1}, {2, 1}, {1, -1}, {0, -1}},
      };
      std::vector<std::vector<int>> t(8, std::vector<int>(8));
      for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
          const int* ab = axis_mul[axis(a)][axis(b)];
          t[a][b] = enc(ab[0], ab[1] * sign(a) * sign(b));
        }
      return build_group(labels, t, {enc(1, 1), enc(2, 1)});
    }
  }
  fail(Err::UnsupportedSize, "unknown builtin kind");
}

BuiltinKind builtin_kind_from(const std::string& name) {
  if (name == "cyclic") return BuiltinKind::Cyclic;
  if (name == "dihedral") return BuiltinKind::Dihedral;
  if (name == "symmetric") return BuiltinKind::Symmetric;
  if (name == "quaternion") return BuiltinKind::Quaternion;
  fail(Err::ParseError, "unknown builtin group kind '" + name + "'");
}

ConjugacyClassPartition conjugacy_classes(const FiniteGroup& g) {
  const int n = g.order();
  ConjugacyClassPartition part;
  part.class_of.assign(n, -1);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < n; ++x) {
    if (part.class_of[x] >= 0) continue;
    std::vector<int> cls;
    for (int h = 0; h < n; ++h) {
      const int y = g.mul(g.mul(h, x), g.inv(h));
      if (part.class_of[y] < 0) {
        part.class_of[y] = static_cast<int>(classes.size());
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  std::vector<int> order(classes.size());
  std::iota(order.begin(), order.end(), 0);
  const int identity_class = part.class_of[g.identity];
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (a == identity_class || b == identity_class) return a == identity_class;
    if (classes[a].size() != classes[b].size()) return classes[a].size() < classes[b].size();
    return classes[a][0] < classes[b][0];
  });
  part.classes.resize(classes.size());
  part.class_sizes.resize(classes.size());
  for (std::size_t c = 0; c < order.size(); ++c) {
    part.classes[c] = classes[order[c]];
    part.class_sizes[c] = static_cast<int>(part.classes[c].size());
    for (int x : part.classes[c]) part.class_of[x] = static_cast<int>(c);
  }
  return part;
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
  return a.labels == b.labels && a.cayley == b.cayley;
}

}  // namespace grouprep
