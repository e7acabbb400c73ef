#pragma once

#include "qlevi/eigencone.hpp"

#include <gtest/gtest.h>

#include <random>

namespace qlevi::test {

inline Rational R(std::int64_t p, std::int64_t q = 1) { return make_rational(p, q); }

inline CartanPoint point(std::initializer_list<Rational> m) { return CartanPoint(RatVec(m)); }

inline std::shared_ptr<const ParabolicContext> parabolic(const std::string& label, std::vector<int> s_p) {
  auto weyl = std::make_shared<const WeylGroup>(enumerate_weyl(build_root_system(label)));
  return std::make_shared<const ParabolicContext>(minimal_reps(weyl, std::move(s_p)));
}

inline std::shared_ptr<const StructureTable> table_for(const std::string& label, std::vector<int> s_p) {
  return std::make_shared<const StructureTable>(build_structure_table(parabolic(label, std::move(s_p))));
}

/// W^P position of the class with the given codimension (unique in the cases used).
inline std::size_t class_of_codim(const ParabolicContext& ctx, int codim) {
  std::optional<std::size_t> found;
  for (std::size_t u = 0; u < ctx.size(); ++u)
    if (ctx.codim(u) == codim) {
      if (found) throw std::logic_error("codimension is not unique");
      found = u;
    }
  if (!found) throw std::logic_error("no class of that codimension");
  return *found;
}

}  // namespace qlevi::test
