#pragma once

#include <string>

#include "minvec/modmat.hpp"
#include "minvec/orders.hpp"

namespace minvec::test {

inline std::string data_path(const std::string& rel) { return std::string(MINVEC_TEST_DATA_DIR) + "/" + rel; }

inline ModMat pi2(std::int64_t p) { return ModMat::from_rows({{0, 1}, {p, 0}}); }

// Pi^-1 and Pi^-3 for the period-2 order, and p^-2 times a unit generating F_9.
inline orders::InductionDatum ramified_j1() {
  return orders::InductionDatum::make("n2e2j1p3", 3, orders::HereditaryOrder(2, 2), pi2(3), -1);
}
inline orders::InductionDatum ramified_j3() {
  return orders::InductionDatum::make("n2e2j3p3", 3, orders::HereditaryOrder(2, 2), pi2(3), -2);
}
inline orders::InductionDatum unramified_j2() {
  return orders::InductionDatum::make("n2e1j2p3", 3, orders::HereditaryOrder(2, 1),
                                      ModMat::from_rows({{0, -1}, {1, 0}}), -2);
}

}  // namespace minvec::test
