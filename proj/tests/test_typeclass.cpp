#include "doctest.h"
#include "helpers.hpp"
#include "serrec/typeclass.hpp"

using namespace serrec;
using namespace serrec::testing;

namespace {
const FieldTag Q = FieldTag::rationals();

std::pair<std::size_t, std::size_t> type_of(const AlgebraPtr& a,
                                            std::vector<std::size_t> iset) {
  auto res = classify(SerreSubcat::from_simples(a, std::move(iset)));
  REQUIRE(!res.infinite);
  return {res.m, res.n};
}
}  // namespace

TEST_CASE("degenerate subcategories have infinite type with split witness") {
  auto a2 = kA2(Q);
  auto r0 = classify(SerreSubcat::from_simples(a2, {}));
  CHECK(r0.infinite);
  REQUIRE(r0.split_certificate.has_value());
  CHECK(r0.split_certificate->split);

  auto rall = classify(SerreSubcat::from_simples(a2, {0, 1}));
  CHECK(rall.infinite);
  CHECK(rall.split_certificate->split);
}

TEST_CASE("triangular corner types are (1,-2) and (2,-1)") {
  auto t2 = t2k(Q);
  // R corner = simple index 0, S corner = simple index 1
  auto tr = type_of(t2, {0});
  auto ts = type_of(t2, {1});
  CHECK(tr == std::pair<std::size_t, std::size_t>{1, 2});
  CHECK(ts == std::pair<std::size_t, std::size_t>{2, 1});

  // stop reasons carry non-exactness witnesses at both ends
  auto res = classify(SerreSubcat::from_simples(t2, {0}));
  CHECK(!res.stops.empty());
  bool left_stop = false, right_stop = false;
  for (const auto& st : res.stops) {
    if (st.end == "left") left_stop = true;
    if (st.end == "right") right_stop = true;
    CHECK(st.witness.has_value());
  }
  CHECK(left_stop);
  CHECK(right_stop);
  CHECK(res.adjunctions_certified >= 4);
}

TEST_CASE("kA2 realizes the same unordered pair of types") {
  auto a2 = kA2(Q);
  auto t1 = type_of(a2, {0});
  auto t2 = type_of(a2, {1});
  std::set<std::pair<std::size_t, std::size_t>> got{t1, t2};
  std::set<std::pair<std::size_t, std::size_t>> want{{1, 2}, {2, 1}};
  CHECK(got == want);
}

TEST_CASE("split ambient categories classify as infinite") {
  auto kk = kxk(Q);
  auto rows = classify_all(kk);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row.result.infinite);
    REQUIRE(row.result.split_certificate.has_value());
    CHECK(row.result.split_certificate->split);
  }
}

TEST_CASE("classify_all over kA3 stays in the list") {
  auto a3 = kA3(Q);
  auto rows = classify_all(a3);
  REQUIRE(rows.size() == 8);
  for (const auto& row : rows) {
    if (row.simple_set.empty() || row.simple_set.size() == 3) {
      CHECK(row.result.infinite);
      continue;
    }
    CHECK(!row.result.infinite);
    CHECK(row.result.m >= 1);
    CHECK(row.result.n >= 1);
  }
  // the middle vertex gives (1, -1)
  auto mid = classify(SerreSubcat::from_simples(a3, {1}));
  CHECK(mid.m == 1);
  CHECK(mid.n == 1);
}

TEST_CASE("self-dual ladder for T2(k)") {
  auto t2 = t2k(Q);
  auto rep = self_dual_ladder_check(t2);
  CHECK(rep.iso_found);
  CHECK(rep.base.m == 1);
  CHECK(rep.base.n == 2);
  CHECK(rep.f_chain_len == 7);
  CHECK(rep.g_chain_len == 7);
  CHECK(rep.adjacencies_certified >= 12);

  // same over F5
  auto t2f = t2k(FieldTag::prime(5));
  auto repf = self_dual_ladder_check(t2f);
  CHECK(repf.iso_found);
  CHECK(repf.f_chain_len == 7);
  CHECK(repf.g_chain_len == 7);

  // shape errors: k x k is not a T2 shape (zero connecting bimodule)
  CHECK_THROWS_AS(self_dual_ladder_check(kxk(Q)), Error);
}

TEST_CASE("chain invariants: middle functors are exact") {
  auto t2 = t2k(Q);
  auto res = classify(SerreSubcat::from_simples(t2, {0}));
  for (const auto* chain : {&res.f_chain, &res.g_chain})
    for (std::size_t i = 1; i + 1 < chain->size(); ++i)
      CHECK(is_exact((*chain)[i]).exact);
}

TEST_CASE("determinism of classify under a fixed seed") {
  auto t2 = t2k(Q);
  set_global_seed(0);
  auto r1 = classify(SerreSubcat::from_simples(t2, {0}));
  set_global_seed(0);
  auto r2 = classify(SerreSubcat::from_simples(t2, {0}));
  CHECK(r1.type_string() == r2.type_string());
  CHECK(r1.f_chain.size() == r2.f_chain.size());
  for (std::size_t i = 0; i < r1.f_chain.size(); ++i)
    CHECK(r1.f_chain[i].signature() == r2.f_chain[i].signature());
}
