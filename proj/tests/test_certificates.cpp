#include <cmath>

#include "doctest.h"
#include "fgap/certificates.hpp"
#include "fgap/constant_example.hpp"
#include "fgap/errors.hpp"
#include "support.hpp"

using namespace fgap;

namespace {

CertificateRequest reality_request() {
  const cplx e = std::polar(1.0, M_PI / 5);
  const cplx p(1.3, 0.4);
  CertificateRequest r;
  r.spec.alpha = 1.0;
  r.spec.beta = -1.0;
  r.spec.tau_param = 1.0;
  r.spec.classes.emplace_back(std::vector<WeightedPoint>{{e, 1}, {std::conj(e), 1}});
  r.divisor = PoleDivisor{{{p, 1}, {1.0 / std::conj(p), 1}}};
  r.kind = CertificateKind::dirac_tau;
  return r;
}

bool check_named(const CertificateReport& r, const std::string& prefix, bool want) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return c.passed == want;
  return false;
}

}  // namespace

TEST_CASE("kind names round-trip") {
  for (const auto k : {CertificateKind::schrodinger_sigma, CertificateKind::dirac_sigma,
                       CertificateKind::dirac_tau})
    CHECK(parse_certificate_kind(to_string(k)) == k);
  CHECK(parse_certificate_kind("dirac_tau") == CertificateKind::dirac_tau);
  CHECK_FALSE(parse_certificate_kind("tau").has_value());
}

TEST_CASE("constant example certificates") {
  for (const double c : {0.5, 1.0, 2.0}) {
    const CurveSpec spec = constant_example_spec(c);
    const PoleDivisor d = constant_example_divisor(c);
    const auto s = find_certificate({spec, d, CertificateKind::dirac_sigma});
    REQUIRE(s.feasible());
    CHECK(s.certificate->report.passed());
    CHECK(s.solution_space_dim == 1);
    CHECK(scaled_coefficient_error(s.certificate->omega.f.numerator().coeffs(),
                                   {-c * c, 0.0, 1.0}) <= 1e-12);
    const auto t = find_certificate({spec, d, CertificateKind::dirac_tau});
    REQUIRE(t.feasible());
    CHECK(t.certificate->report.passed());
    CHECK(scaled_coefficient_error(t.certificate->omega.f.numerator().coeffs(),
                                   {c * c, -2.0 * c, 1.0}) <= 1e-12);
    // Normalization: k_+^2 coefficient at inf_+ is -1.
    CHECK(std::abs(t.certificate->report.marked_plus + 1.0) <= 1e-12);
  }
}

TEST_CASE("required zeros merge D with its image") {
  const CertificateRequest r{constant_example_spec(2.0), constant_example_divisor(2.0),
                             CertificateKind::dirac_tau};
  const auto z = required_zeros(r);
  REQUIRE(z.size() == 1);
  CHECK(z[0].multiplicity == 2);
  const CertificateRequest s{constant_example_spec(2.0), constant_example_divisor(2.0),
                             CertificateKind::dirac_sigma};
  CHECK(required_zeros(s).size() == 2);
}

TEST_CASE("trivial Schroedinger sigma certificate is -dlambda/lambda") {
  CurveSpec spec;
  spec.alpha = cplx(0.7, 0.1);
  spec.beta = cplx(1.2, -0.4);
  spec.sigma_declared = true;
  const auto out = find_certificate({spec, PoleDivisor{}, CertificateKind::schrodinger_sigma});
  REQUIRE(out.feasible());
  const auto& f = out.certificate->omega.f;
  CHECK(out.certificate->report.passed());
  CHECK(std::abs(f(2.0) - (-0.5)) <= 1e-14);
  CHECK(std::abs(residue(out.certificate->omega, ProjPoint::infinity()) - 1.0) <= 1e-14);
}

TEST_CASE("genus-0 Dirac sigma: feasible exactly when beta = -alpha p^2") {
  const cplx p(0.8, 0.6), alpha(1.1, -0.3);
  CurveSpec spec;
  spec.alpha = alpha;
  spec.sigma_declared = true;
  spec.beta = -alpha * p * p;
  const auto ok = find_certificate({spec, PoleDivisor{{{p, 1}}}, CertificateKind::dirac_sigma});
  REQUIRE(ok.feasible());
  CHECK(ok.certificate->report.passed());
  spec.beta = alpha * p * p;
  const auto bad = find_certificate({spec, PoleDivisor{{{p, 1}}}, CertificateKind::dirac_sigma});
  CHECK_FALSE(bad.feasible());
  CHECK(bad.infeasibility.find("no differential") != std::string::npos);
}

TEST_CASE("sigma requests with singular support report the obstruction") {
  testing::Rng rng(17);
  for (int i = 0; i < 10; ++i) {
    auto cfg = testing::random_config(rng);
    cfg.spec.sigma_declared = true;
    const auto s = find_certificate({cfg.spec, cfg.schrodinger_divisor,
                                     CertificateKind::schrodinger_sigma});
    CHECK_FALSE(s.feasible());
    CHECK(s.infeasibility.find("genus 0") != std::string::npos);
    const auto d = find_certificate({cfg.spec, cfg.dirac_divisor, CertificateKind::dirac_sigma});
    CHECK_FALSE(d.feasible());
  }
}

TEST_CASE("malformed requests are InvalidRequest") {
  CurveSpec spec;
  CHECK_THROWS_AS(find_certificate({spec, PoleDivisor{}, CertificateKind::schrodinger_sigma}),
                  InvalidRequest);
  CHECK_THROWS_AS(find_certificate({spec, PoleDivisor{{{1.0, 1}}}, CertificateKind::dirac_tau}),
                  InvalidRequest);
  spec.sigma_declared = true;
  CHECK_THROWS_AS(find_certificate({spec, PoleDivisor{{{1.0, 1}}},
                                    CertificateKind::schrodinger_sigma}),
                  InvalidRequest);
}

TEST_CASE("verification rejects damaged differentials") {
  const CertificateRequest r{constant_example_spec(2.0), constant_example_divisor(2.0),
                             CertificateKind::dirac_sigma};
  const std::vector<WeightedPoint> at0 = {{0.0, 2}};
  SUBCASE("the reference passes") {
    const RationalDifferential w{RationalFunction(Poly(std::vector<cplx>{-4.0, 0.0, 1.0}), at0)};
    const auto rep = verify_certificate(w, r);
    CHECK(rep.passed());
    CHECK(rep.extra_zeros.empty());
    CHECK(std::abs(rep.normalization - 1.0) <= 1e-14);
  }
  SUBCASE("any nonzero multiple passes") {
    const RationalDifferential w{
        RationalFunction(Poly(std::vector<cplx>{-4.0, 0.0, 1.0}) * cplx(0.3, 2.0), at0)};
    const auto rep = verify_certificate(w, r);
    CHECK(rep.passed());
    CHECK(std::abs(rep.normalization * cplx(0.3, 2.0) - 1.0) <= 1e-14);
  }
  SUBCASE("missing zero") {
    const RationalDifferential w{RationalFunction(Poly(std::vector<cplx>{-4.1, 0.0, 1.0}), at0)};
    const auto rep = verify_certificate(w, r);
    CHECK_FALSE(rep.passed());
    CHECK(check_named(rep, "zeros", false));
  }
  SUBCASE("wrong marked relation") {
    // (lambda - 2)(lambda + 2)(lambda + 1) / lambda^2 has a triple pole at infinity.
    const RationalDifferential w{RationalFunction(
        Poly::from_roots(std::vector<WeightedPoint>{{2.0, 1}, {-2.0, 1}, {-1.0, 1}}), at0)};
    const auto rep = verify_certificate(w, r);
    CHECK(check_named(rep, "pole order at inf+", false));
  }
  SUBCASE("stray pole") {
    const RationalDifferential w{RationalFunction(
        Poly(std::vector<cplx>{-4.0, 0.0, 1.0}), {{0.0, 2}, {5.0, 1}})};
    CHECK(check_named(verify_certificate(w, r), "poles only", false));
  }
  SUBCASE("extra zeros are warnings only") {
    const RationalDifferential w{RationalFunction(
        Poly::from_roots(std::vector<WeightedPoint>{{2.0, 1}, {-2.0, 1}, {3.0, 1}}),
        {{0.0, 2}, {cplx(0, 7), 1}})};
    const auto rep = verify_certificate(w, r);
    CHECK(check_named(rep, "poles only", false));
    CHECK(rep.extra_zeros.size() == 1);
  }
}

TEST_CASE("reality configuration: omega' exists and verifies") {
  const auto req = reality_request();
  const auto out = find_certificate(req);
  REQUIRE(out.feasible());
  CHECK(out.solution_space_dim == 1);
  CHECK(out.certificate->report.passed());
  CHECK(out.certificate->report.class_residue_sums.size() == 1);
}

TEST_CASE("property: residue balance totals vanish") {
  const auto req = reality_request();
  const auto cert = find_certificate(req).certificate;
  REQUIRE(cert.has_value());
  testing::Rng rng(8);
  for (int i = 0; i < 5; ++i) {
    const Position pos{testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1)};
    for (int comp : {1, 2}) {
      const auto b = residue_balance(req, cert->omega, pos, comp);
      const double scale = std::max({std::abs(b.marked), std::abs(b.supports), 1.0});
      CHECK(std::abs(b.total) <= 1e-9 * scale);
    }
  }
  const CertificateRequest sig{constant_example_spec(1.0), constant_example_divisor(1.0),
                               CertificateKind::dirac_sigma};
  const auto sc = find_certificate(sig).certificate;
  REQUIRE(sc.has_value());
  const auto b = residue_balance(sig, sc->omega, Position{0.2, 0.4});
  CHECK(std::abs(b.total) <= 1e-12);
  CHECK(std::abs(b.supports) == 0.0);
}

TEST_CASE("consequences hold for the constant example") {
  const CertificateRequest r{constant_example_spec(0.5), constant_example_divisor(0.5),
                             CertificateKind::dirac_sigma};
  const auto cert = find_certificate(r).certificate;
  REQUIRE(cert.has_value());
  const auto rep = assert_consequences(r, *cert, Grid{-1, 1, -1, 1, 5, 5});
  CHECK(rep.passed);
  CHECK(rep.max_u_minus_v <= 1e-12);
}
