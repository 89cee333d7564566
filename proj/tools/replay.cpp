#include "replay.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace polywitt::cli {

namespace {

// Collects mismatches against the fixtures; any mismatch turns the report into a failure.
struct Verdict {
  std::vector<std::string> mismatches;

  void expect(bool ok, const std::string& what) {
    if (!ok) mismatches.push_back(what);
  }
  Report finish(Report r, Status expected) {
    if (mismatches.empty()) {
      r.status = expected;
      return r;
    }
    r.status = Status::Fail;
    r.payload["mismatches"] = mismatches;
    for (const auto& m : mismatches) r.text += "\nmismatch: " + m;
    return r;
  }
};

Integer coordinate(const FreeRankRing& ring, const Element& a, const std::string& basis) {
  auto i = ring.basis_index(basis);
  if (!i) throw AlgebraError(ErrorCode::Internal, ring.name() + " has no basis element " + basis);
  return ring.coordinates(a)[*i].get_num();
}

Report replay_cex() {
  const Json& fx = fixtures()["cex"];
  Report r;
  Verdict v;
  r.payload = {{"cases", Json::array()}};
  std::ostringstream text;
  auto z = make_integers();
  for (const auto& c : fx["cases"]) {
    unsigned p = c["p"].get<unsigned>();
    auto burnside = BurnsideRing::create(FiniteGroup::cyclic(p));
    PolyMap f = integer_norm_map(burnside);
    auto trunc = TruncationSet::p_typical(p, fx["m"].get<std::size_t>());
    WittVector a(trunc, z, parse_elements(z, fx["input"]));
    UnghostResult lifted = lift_polymap(f, a);
    const auto* obstruction = std::get_if<GhostObstruction>(&lifted);
    v.expect(obstruction != nullptr, "p=" + std::to_string(p) + ": the lift was solvable");
    if (!obstruction) continue;
    Integer residue = coordinate(*burnside->ring(), obstruction->residue, "x");
    v.expect(obstruction->j == c["j"].get<std::size_t>(), "p=" + std::to_string(p) + ": wrong coordinate");
    v.expect(residue == integer_from_json(c["residue_x"]), "p=" + std::to_string(p) + ": wrong residue");
    v.expect(obstruction->detail.find(c["dividend"].get<std::string>()) != std::string::npos,
             "p=" + std::to_string(p) + ": unexpected dividend in '" + obstruction->detail + "'");
    r.payload["cases"].push_back({{"p", p},
                                  {"coordinate", obstruction->j},
                                  {"residue", element_to_json(obstruction->residue)},
                                  {"detail", obstruction->detail}});
    r.witnesses.push_back(element_to_json(obstruction->residue));
    text << "p=" << p << ": W_2(N) on (0,1) has no solution, " << obstruction->detail << "\n";
  }
  r.text = text.str();
  r.text.pop_back();
  return v.finish(r, Status::Obstruction);
}

}  // namespace

Report a4_obstruction(unsigned p) {
  const Json& fx = fixtures()["a4"];
  const bool reference = p == fx["p"].get<unsigned>();
  Report r;
  Verdict v;
  auto a4 = BurnsideRing::create(FiniteGroup::alternating(4));
  const auto& lattice = a4->lattice();
  Mask a3 = 0;
  for (std::size_t c = 0; c < lattice.size(); ++c)
    if (lattice.class_name(c) == "A3") a3 = lattice.representative(c);
  // a factorization through index-2 steps needs A3 < K < A4
  std::size_t intermediate = 0;
  for (std::size_t c = 0; c < lattice.size(); ++c) {
    std::set<Mask> conjugates;
    for (std::size_t g = 0; g < a4->group().order(); ++g)
      conjugates.insert(a4->group().conjugate(lattice.representative(c), static_cast<GroupElement>(g)));
    for (Mask k : conjugates)
      if ((k & a3) == a3 && k != a3 && k != a4->group().all()) ++intermediate;
  }
  Inclusion inc = Inclusion::of_subgroup(a4, a3, "A3");
  const FreeRankRing& big = *a4->ring();
  const long m = static_cast<long>(p) + 1;
  Element nm = inc.norm(inc.small()->ring()->from_integer(m));

  Json norm = Json::object(), reduced = Json::object();
  for (const auto& name : big.basis()) {
    Integer c = coordinate(big, nm, name);
    norm[name] = integer_to_json(c);
    Integer red = c % p;
    if (red < 0) red += p;
    if (red != 0) reduced[name] = integer_to_json(red);
  }
  if (reference) {
    for (const auto& [name, value] : fx["norm"].items())
      v.expect(norm.contains(name) && integer_from_json(norm[name]) == integer_from_json(value),
               "N(" + std::to_string(m) + ") coefficient of " + name);
    v.expect(reduced == fx["mod3"], "N(4) mod 3 is " + reduced.dump());
  }

  // (1, N(p+1)) is the image of the ghost vector (1, p+1) of (1, 1)
  PolyMap f = norm_map(inc);
  auto trunc = TruncationSet::p_typical(p, 2);
  auto small = inc.small()->ring();
  UnghostResult lifted = lift_polymap(f, WittVector(trunc, small, {small->one(), small->one()}));
  const auto* obstruction = std::get_if<GhostObstruction>(&lifted);
  CheckResult congruence = congruence_check_at(f, p, 1, small->zero(), small->one());
  if (reference) {
    v.expect(obstruction != nullptr, "the lift of N over (1, 1) was solvable");
    v.expect(!congruence.passed, "the p-congruence holds at a = 0, c = 1");
    v.expect(intermediate == 0, "A4 has a subgroup strictly between A3 and A4");
  }
  const std::string factorization =
      intermediate == 0 ? "none: no subgroup lies strictly between A3 and A4, so N is not a composite of two norms of degree 2"
                        : "A3 < K < A4 exists";

  r.payload = {{"p", p},
               {"norm_argument", m},
               {"norm", norm},
               {"mod_p", reduced},
               {"congruence", {{"k", 1}, {"a", 0}, {"c", 1}, {"holds", congruence.passed}, {"detail", congruence.detail}}},
               {"intermediate_subgroups", intermediate},
               {"factorization", factorization}};
  std::ostringstream text;
  text << "N(" << m << ") = " << big.format(nm) << "\n";
  text << "mod " << p << ": " << reduced.dump() << "\n";
  text << "congruence at p=" << p << ", k=1, a=0, c=1: " << (congruence.passed ? "holds" : "fails") << "\n";
  text << "2x2 factorization: " << factorization;
  if (obstruction) {
    r.payload["coordinate"] = obstruction->j;
    r.payload["detail"] = obstruction->detail;
    r.witnesses.push_back(element_to_json(obstruction->residue));
    text << "\nlift: " << obstruction->detail;
  }
  r.text = text.str();
  return v.finish(r, obstruction ? Status::Obstruction : Status::Ok);
}

namespace {

bool same_set(std::vector<Element> a, std::vector<Element> b) {
  auto less = [](const Element& x, const Element& y) { return x.str() < y.str(); };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  return a == b;
}

Report replay_units() {
  const Json& fx = fixtures()["units"];
  Report r;
  Verdict v;
  Json counts = Json::object();
  std::ostringstream text;
  for (const auto& [label, group] : {std::pair{"A(Z/2)", "Z/2"}, {"A(D3)", "D3"}, {"A(D9)", "D9"}}) {
    auto a = BurnsideRing::create(FiniteGroup::by_name(group));
    auto units = burnside_units(*a);
    counts[label] = units.size();
    v.expect(units.size() == fx[label]["count"].get<std::size_t>(), std::string("unit count of ") + label);
    if (fx[label].contains("elements")) {
      std::vector<Element> listed;
      for (const auto& e : fx[label]["elements"]) {
        Element u = parse_element(a->ring(), e);
        for (const Element& signed_u : {u, -u})
          if (std::find(listed.begin(), listed.end(), signed_u) == listed.end()) listed.push_back(signed_u);
      }
      v.expect(same_set(listed, units), std::string("explicit units of ") + label);
    }
    text << label << ": " << units.size() << " units\n";
  }

  // every unit of A(Z/2) has a Teichmuller lift squaring to one in W_2
  const Json& w = fx["W2(A(Z/2))"];
  auto a2 = BurnsideRing::create(FiniteGroup::cyclic(2));
  auto trunc = TruncationSet::p_typical(w["p"].get<unsigned>(), 2);
  const WittVector one = WittVector::one(trunc, a2->ring());
  std::size_t verified = 0;
  Json lifts = Json::array();
  for (const auto& u : burnside_units(*a2)) {
    WittVector t = teichmuller(u, trunc);
    if (witt_mul(t, t) == one) ++verified;
    lifts.push_back(elements_to_json(t.coords));
  }
  v.expect(verified == w["teichmuller_units"].get<std::size_t>(), "Teichmuller units of W_2(A(Z/2))");
  counts["W2(A(Z/2))"] = verified;
  text << "W_2(A(Z/2)) at p=" << trunc.prime() << ": " << verified << " Teichmuller lifts are units";
  r.payload = {{"counts", counts}, {"teichmuller_lifts", lifts}};
  r.text = text.str();
  return v.finish(r, Status::Ok);
}

Report replay_formula(std::size_t samples, std::uint64_t seed) {
  const Json& fx = fixtures()["formula"];
  Report r;
  Verdict v;
  LiftFormula f3 = universal_lift_formula(2, 3, 1), f5 = universal_lift_formula(2, 5, 1);
  v.expect(f3.text() == fx["p3"].get<std::string>(), "p=3 formula reads '" + f3.text() + "'");
  Json c5 = Json::array();
  for (const auto& t : f5.terms) c5.push_back(integer_to_json(t.coefficient));
  v.expect(c5 == fx["p5"], "p=5 coefficients are " + c5.dump());

  // the formula agrees with the lift of the Z/2 norm on sampled vectors
  PolyMap norm = integer_norm_map(BurnsideRing::create(FiniteGroup::cyclic(2)));
  auto z = make_integers();
  Sampler sampler(seed);
  std::size_t agreed = 0;
  for (const auto& [p, formula] : {std::pair{3U, f3}, {5U, f5}}) {
    auto trunc = TruncationSet::p_typical(p, 2);
    for (std::size_t i = 0; i < samples; ++i) {
      WittVector a(trunc, z, {z->sample(sampler), z->sample(sampler)});
      UnghostResult result = lift_polymap(norm, a);
      const auto* lifted = std::get_if<WittVector>(&result);
      if (lifted && lifted->coords[1] == formula.evaluate(norm, a)) ++agreed;
    }
  }
  v.expect(agreed == 2 * samples, "formula disagrees with the lift on samples");
  r.payload = {{"p3", f3.text()}, {"p5", c5}, {"samples_agreeing", agreed}};
  r.text = f3.text() + "\np=5 coefficients " + c5.dump() + "\nagrees with the lift on " + std::to_string(agreed) +
           " samples";
  return v.finish(r, Status::Ok);
}

Report replay_psi(std::size_t samples, std::uint64_t seed) {
  Report r;
  Verdict v;
  r.payload = Json::array();
  std::ostringstream text;
  for (const auto& c : fixtures()["psi"]["cases"]) {
    unsigned p = c[0].get<unsigned>(), n = c[1].get<unsigned>();
    CheckResult result = psi_check(p, n, samples, seed);
    v.expect(result.passed, "psi identity at p=" + std::to_string(p) + ", n=" + std::to_string(n) + ": " + result.detail);
    r.payload.push_back({{"p", p}, {"n", n}, {"passed", result.passed}, {"checked", result.checked}});
    text << "D_" << p << "^" << n << ": " << (result.passed ? "holds" : "FAILS") << " on " << result.checked
         << " samples\n";
  }
  r.text = text.str();
  r.text.pop_back();
  return v.finish(r, Status::Ok);
}

Report replay_dwork() {
  const Json& fx = fixtures()["dwork"];
  const unsigned p = fx["p"].get<unsigned>();
  Report r;
  Verdict v;
  auto a2 = BurnsideRing::create(FiniteGroup::cyclic(2));
  const RingHandle ring = a2->ring();
  auto units = burnside_units(*a2);
  auto trunc = TruncationSet::p_typical(p, fx["m"].get<std::size_t>());
  PolyMap id = identity_map(ring);
  std::size_t tuples = 0, in_image = 0, agreements = 0;
  bool only_constant = true;
  Json image = Json::array();
  for (const auto& x0 : units) {
    for (const auto& x1 : units) {
      std::vector<Element> g{x0, x1};
      bool dwork = dwork_membership(g, p, id);
      bool solvable = std::holds_alternative<WittVector>(unghost(g, trunc, ring));
      ++tuples;
      if (dwork == solvable) ++agreements;
      if (dwork) {
        ++in_image;
        image.push_back(elements_to_json(g));
        if (x0 != x1) only_constant = false;
      }
    }
  }
  v.expect(tuples == fx["tuples"].get<std::size_t>(), "tuple count");
  v.expect(in_image == fx["in_image"].get<std::size_t>(), "tuples in the ghost image");
  v.expect(only_constant, "a non-constant tuple lies in the ghost image");
  v.expect(agreements == tuples, "Dwork criterion disagrees with unghost");
  r.payload = {{"tuples", tuples}, {"in_image", in_image}, {"image", image}, {"agrees_with_unghost", agreements == tuples}};
  r.text = std::to_string(in_image) + " of " + std::to_string(tuples) +
           " unit tuples lie in the ghost image, all of them constant";
  return v.finish(r, Status::Ok);
}

}  // namespace

const std::vector<std::string>& replay_names() {
  static const std::vector<std::string> names{"cex", "a4", "units", "formula", "psi", "dwork"};
  return names;
}

Report replay(const std::string& name, std::size_t samples, std::uint64_t seed) {
  if (name == "cex") return replay_cex();
  if (name == "a4") return a4_obstruction(fixtures()["a4"]["p"].get<unsigned>());
  if (name == "units") return replay_units();
  if (name == "formula") return replay_formula(samples, seed);
  if (name == "psi") return replay_psi(samples, seed);
  if (name == "dwork") return replay_dwork();
  throw AlgebraError(ErrorCode::UnknownScenario, "no scenario named '" + name + "'");
}

}  // namespace polywitt::cli
