#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "valdiv/errors.hpp"
#include "valdiv/field.hpp"
#include "valdiv/matrix.hpp"
#include "valdiv/polynomial.hpp"
#include "valdiv/twisted.hpp"

using namespace valdiv;

namespace {

std::vector<FieldElement> ints(const Field& f, std::initializer_list<long> xs) {
  std::vector<FieldElement> v;
  for (long x : xs) v.push_back(f.from_int(x));
  return v;
}

const Field& f9() { return Field::extension(Field::prime(3), ints(Field::prime(3), {1, 0, 1}), "w"); }

const Field& gaussian() { return Field::extension(Field::rational(), ints(Field::rational(), {1, 0, 1}), "i"); }

std::vector<const Field*> sample_fields() {
  const Field& f7w = Field::extension(Field::prime(7), ints(Field::prime(7), {3, 1, 1}), "w");
  const Field& nested =
      Field::extension(f9(), {-(f9().generator() + f9().one()), f9().zero(), f9().one()}, "z");
  return {&Field::prime(5), &Field::prime(7), &Field::rational(), &f7w, &f9(), &nested, &gaussian()};
}

}  // namespace

TEST_CASE("basic arithmetic examples") {
  const Field& f5 = Field::prime(5);
  CHECK(f5.from_int(2).inv() == f5.from_int(3));
  const FieldElement a = gaussian().generator();
  CHECK((gaussian().one() + a) * (gaussian().one() - a) == gaussian().from_int(2));
  const Field& f7a = Field::extension(Field::prime(7), ints(Field::prime(7), {-2, 0, 0, 1}), "a");
  const FieldElement alpha = f7a.generator();
  CHECK(alpha.inv() == f7a.from_int(4) * alpha * alpha);
  CHECK_THROWS_AS(f5.zero().inv(), DivisionByZero);
  CHECK_THROWS_AS(f5.one() + Field::prime(7).one(), DomainError);
}

TEST_CASE("descriptors print compactly") {
  const Field& f7w = Field::extension(Field::prime(7), ints(Field::prime(7), {3, 1, 1}), "w");
  CHECK(f7w.to_string() == "F7[w]/(w^2+w+3)");
  CHECK(gaussian().to_string() == "Q[i]/(i^2+1)");
  CHECK(Field::prime(5).to_string() == "F5");
  CHECK(&Field::extension(Field::prime(7), ints(Field::prime(7), {3, 1, 1}), "w") == &f7w);
  CHECK_THROWS_AS(Field::extension(Field::prime(5), ints(Field::prime(5), {-4, 0, 1}), "w"), DomainError);
  CHECK_THROWS_AS(Field::prime(9), DomainError);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(99);
  for (const Field* f : sample_fields()) {
    CAPTURE(f->to_string());
    for (int trial = 0; trial < 500; ++trial) {
      const FieldElement x = f->random_element(rng);
      const FieldElement y = f->random_element(rng);
      const FieldElement z = f->random_element(rng);
      CHECK((x + y) + z == x + (y + z));
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(x * y == y * x);
      CHECK(x - x == f->zero());
      if (!x.is_zero()) CHECK(x * x.inv() == f->one());
    }
  }
}

TEST_CASE("element enumeration is a bijection") {
  for (const Field* f : {&Field::prime(7), &f9()}) {
    const auto n = *f->order();
    for (std::uint64_t i = 0; i < n; ++i) CHECK(f->index_of(f->element_at(i)) == i);
    CHECK(f->element_at(0) == f->zero());
    CHECK(f->element_at(1) == f->one());
  }
}

TEST_CASE("primitive roots of unity") {
  const Field& f5 = Field::prime(5);
  CHECK(primitive_root_of_unity(f5, 4) == f5.from_int(2));
  CHECK(primitive_root_of_unity(f5, 1) == f5.one());
  const FieldElement z4 = primitive_root_of_unity(Field::rational(), 4);
  CHECK(z4.field().to_string() == "Q[z]/(z^2+1)");
  CHECK(primitive_root_of_unity(Field::rational(), 2) == Field::rational().from_int(-1));
  struct Case {
    const Field* f;
    std::int64_t n;
  };
  for (auto [f, n] : {Case{&f5, 4}, Case{&Field::prime(7), 3}, Case{&Field::prime(7), 6}, Case{&f9(), 8},
                      Case{&f9(), 4}, Case{&Field::rational(), 3}, Case{&Field::rational(), 5},
                      Case{&gaussian(), 4}}) {
    CAPTURE(f->to_string());
    CAPTURE(n);
    const FieldElement w = primitive_root_of_unity(*f, n);
    CHECK(w.pow(n).is_one());
    for (std::int64_t m = 1; m < n; ++m) CHECK_FALSE(w.pow(m).is_one());
  }
  CHECK_THROWS_AS(primitive_root_of_unity(f5, 3), DomainError);
  CHECK_THROWS_AS(primitive_root_of_unity(f5, 5), DomainError);
}

TEST_CASE("squares") {
  const Field& f5 = Field::prime(5);
  CHECK_FALSE(is_square(f5.from_int(2)));
  CHECK(is_square(f5.one()));
  CHECK(is_square(Field::rational().from_rational(mpq_class(9, 4))));
  CHECK_FALSE(is_square(Field::rational().from_int(-4)));
  CHECK_THROWS_AS(is_square(Field::prime(2).one()), DomainError);
  CHECK_THROWS_AS(is_square(gaussian().one()), DomainError);
  for (std::int64_t p = 3; p <= 100; ++p) {
    if (!is_prime(p)) continue;
    const Field& f = Field::prime(p);
    const auto sq = oracle::squares_mod(p);
    for (std::int64_t x = 0; x < p; ++x) {
      const bool s = is_square(f.from_int(x));
      CHECK(s == sq[static_cast<std::size_t>(x)]);
      auto r = square_root(f.from_int(x));
      CHECK(r.has_value() == s);
      if (r) CHECK(*r * *r == f.from_int(x));
    }
  }
  for (std::uint64_t i = 0; i < 9; ++i) {
    const FieldElement x = f9().element_at(i);
    auto r = square_root(x);
    if (r) CHECK(*r * *r == x);
  }
}

TEST_CASE("Frobenius is additive") {
  std::mt19937_64 rng(3);
  const Field& f49 = Field::extension(Field::prime(7), ints(Field::prime(7), {3, 1, 1}), "w");
  for (const Field* f : {&f9(), &f49}) {
    const auto p = f->characteristic();
    for (int trial = 0; trial < 200; ++trial) {
      const FieldElement x = f->random_element(rng);
      const FieldElement y = f->random_element(rng);
      CHECK((x + y).pow(p) == x.pow(p) + y.pow(p));
      CHECK((x * y).pow(p) == x.pow(p) * y.pow(p));
    }
    auto frob = FieldAutomorphism::frobenius(*f);
    CHECK(frob.order() == 2);
  }
}

TEST_CASE("cyclotomic polynomials") {
  auto phi4 = cyclotomic_coefficients(4);
  CHECK(phi4 == std::vector<mpz_class>{1, 0, 1});
  auto phi6 = cyclotomic_coefficients(6);
  CHECK(phi6 == std::vector<mpz_class>{1, -1, 1});
  CHECK(cyclotomic_coefficients(5).size() == 5);
}

TEST_CASE("polynomials and determinants") {
  const Field& q = Field::rational();
  Polynomial x = Polynomial::x(q);
  Polynomial one(q, {q.one()});
  CHECK(gcd(x * x - one, x - one) == x - one);
  CHECK(gcd(Polynomial(q), Polynomial(q)).is_zero());
  CHECK((x * x - one).eval(q.from_int(3)) == q.from_int(8));

  // det [[a,b],[c,d]] = ad - bc
  Matrix<FieldElement> m(2, 2, q.zero());
  m(0, 0) = q.from_int(3);
  m(0, 1) = q.from_int(5);
  m(1, 0) = q.from_int(-2);
  m(1, 1) = q.from_int(7);
  CHECK(det_berkowitz(m, q.zero(), q.one()) == q.from_int(31));
  CHECK(det_gauss(m, q.zero(), q.one()) == q.from_int(31));

  // charpoly of diag(alpha, -alpha) over Q(alpha), alpha^2 = 3
  const Field& k = Field::extension(q, ints(q, {-3, 0, 1}), "a");
  Matrix<FieldElement> d(2, 2, k.zero());
  d(0, 0) = k.generator();
  d(1, 1) = -k.generator();
  auto cp = charpoly(d, k.zero(), k.one());
  CHECK(cp == std::vector<FieldElement>{k.from_int(-3), k.zero(), k.one()});
  CHECK_THROWS_AS(charpoly(Matrix<FieldElement>(2, 3, q.zero()), q.zero(), q.one()), DomainError);
}

TEST_CASE("Berkowitz agrees with cofactor expansion and elimination") {
  std::mt19937_64 rng(17);
  for (const Field* f : {&Field::prime(7), &Field::rational(), &f9()}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        Matrix<FieldElement> m(n, n, f->zero());
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) m(i, j) = f->random_element(rng);
        const FieldElement b = det_berkowitz(m, f->zero(), f->one());
        CHECK(b == oracle::laplace_det(m, f->zero(), f->one()));
        CHECK(b == det_gauss(m, f->zero(), f->one()));
        // Cayley-Hamilton
        auto cp = charpoly(m, f->zero(), f->one());
        Matrix<FieldElement> acc(n, n, f->zero());
        Matrix<FieldElement> power = Matrix<FieldElement>::identity(n, f->zero(), f->one());
        for (const auto& c : cp) {
          acc = acc + c * power;
          power = power * m;
        }
        CHECK(acc == Matrix<FieldElement>(n, n, f->zero()));
      }
    }
  }
}
