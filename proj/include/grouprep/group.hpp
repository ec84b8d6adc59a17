#pragma once

#include "grouprep/types.hpp"

#include <memory>
#include <string>
#include <vector>

namespace grouprep {

struct FiniteGroup {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> cayley;
  int identity = 0;
  std::vector<int> inverse;
  std::vector<int> generators;

  int order() const { return static_cast<int>(labels.size()); }
  int mul(int a, int b) const { return cayley[a][b]; }
  int inv(int a) const { return inverse[a]; }
  int index_of(const std::string& label) const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct ConjugacyClassPartition {
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
  std::vector<int> class_sizes;
};

enum class BuiltinKind { Cyclic, Dihedral, Symmetric, Quaternion };

BuiltinKind builtin_kind_from(const std::string& name);

// Validates the table (Latin square, identity, two-sided inverses,
// associativity: exhaustive for |G| <= 128, at least 10*|G|^2 seeded random
// triples above) and fills in identity/inverses. Generators are optional and
// validated against range.
GroupPtr build_group(const std::vector<std::string>& labels, const std::vector<std::vector<int>>& cayley,
                     const std::vector<int>& generators = {});

GroupPtr builtin_group(BuiltinKind kind, int n);

// Partition into conjugacy classes. Canonical order: the identity's class
// first, then ascending size with ties broken by least element index.
ConjugacyClassPartition conjugacy_classes(const FiniteGroup& g);

bool same_group(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace grouprep
