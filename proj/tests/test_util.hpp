#pragma once

#include <initializer_list>
#include <vector>

#include "eqrec/linalg.hpp"

namespace testutil {

inline eqrec::Matrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t c = rows.size() ? rows.begin()->size() : 0;
  eqrec::Matrix m(rows.size(), c);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long long v : r) m(i, j++) = eqrec::Scalar(v);
    ++i;
  }
  return m;
}

}  // namespace testutil
