#include "cli_support.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polywitt_fixtures.hpp"

namespace polywitt::cli {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw AlgebraError(ErrorCode::MalformedInput, what); }

const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Obstruction: return "obstruction";
    case Status::Fail: return "fail";
  }
  return "fail";
}

unsigned parse_unsigned(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    malformed("expected a non-negative integer for " + what + ", got '" + text + "'");
  return static_cast<unsigned>(std::stoul(text));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

Mask subgroup_by_name(const BurnsideRing& big, const std::string& name) {
  const auto& lattice = big.lattice();
  for (std::size_t c = 0; c < lattice.size(); ++c)
    if (lattice.class_name(c) == name) return lattice.representative(c);
  malformed(big.group().name() + " has no subgroup class named '" + name + "'");
}

/// x <-> xbar on polynomial rings, factor swap on R x R, the identity otherwise.
Involution default_involution(const RingHandle& ring) {
  if (ring->kind() == RingKind::Polynomial) {
    auto poly = std::static_pointer_cast<const PolynomialRing>(ring);
    std::vector<std::size_t> perm(poly->arity());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      perm[i] = i;
      const std::string& v = poly->variables()[i];
      if (auto bar = poly->variable_index(v + "bar")) perm[i] = *bar;
      if (v.size() > 3 && v.ends_with("bar"))
        if (auto base = poly->variable_index(v.substr(0, v.size() - 3))) perm[i] = *base;
    }
    return Involution::variable_swap(poly, perm);
  }
  if (ring->kind() == RingKind::Product) return Involution::factor_swap(std::static_pointer_cast<const ProductRing>(ring));
  return Involution::trivial(ring);
}

}  // namespace

int Report::exit_code() const {
  switch (status) {
    case Status::Ok: return 0;
    case Status::Obstruction: return 2;
    case Status::Fail: return 1;
  }
  return 1;
}

Json Report::to_json() const {
  Json out = Json::object();
  out["status"] = status_name(status);
  out["payload"] = payload;
  out["witnesses"] = Json::array();
  for (const auto& w : witnesses) out["witnesses"].push_back(w);
  return out;
}

int emit(const Report& report, bool json) {
  if (json) {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    std::cout << (report.text.empty() ? report.payload.dump() : report.text) << "\n";
    if (report.status != Status::Ok && !report.witnesses.empty()) {
      std::cout << "witnesses:";
      for (const auto& w : report.witnesses) std::cout << " " << w.dump();
      std::cout << "\n";
    }
  }
  return report.exit_code();
}

Report from_check(const std::string& name, const CheckResult& result) {
  Report r;
  r.payload = {{"check", name}, {"passed", result.passed}, {"checked", result.checked}};
  if (!result.detail.empty()) r.payload["detail"] = result.detail;
  if (result.passed) {
    r.text = name + ": passed (" + std::to_string(result.checked) + " cases)";
    return r;
  }
  r.status = Status::Obstruction;
  for (const auto& w : result.witness) r.witnesses.push_back(element_to_json(w));
  if (r.witnesses.empty()) r.witnesses.push_back(result.detail);
  r.text = name + ": FAILED: " + result.detail;
  return r;
}

Report from_tambara_report(const TambaraReport& report) {
  Report r;
  r.payload = Json::array();
  std::ostringstream text;
  for (const auto& c : report.checks) {
    r.payload.push_back({{"check", c.name}, {"passed", c.result.passed}, {"checked", c.result.checked}});
    text << (c.result.passed ? "pass " : "FAIL ") << c.name;
    if (!c.result.passed) text << ": " << c.result.detail;
    text << "\n";
  }
  r.text = text.str();
  if (!r.text.empty()) r.text.pop_back();
  if (const NamedCheck* bad = report.failure()) {
    r.status = Status::Obstruction;
    for (const auto& w : bad->result.witness) r.witnesses.push_back(element_to_json(w));
    if (r.witnesses.empty()) r.witnesses.push_back(bad->name + ": " + bad->result.detail);
  }
  return r;
}

Json read_json_argument(const std::string& text) {
  std::error_code ec;
  if (!text.empty() && std::filesystem::is_regular_file(text, ec)) {
    std::ifstream in(text);
    Json parsed = Json::parse(in, nullptr, false);
    if (parsed.is_discarded()) malformed("file '" + text + "' is not valid JSON");
    return parsed;
  }
  Json parsed = Json::parse(text, nullptr, false);
  if (parsed.is_discarded()) return Json(text);
  return parsed;
}

RingHandle parse_ring(const std::string& text) { return ring_from_json(read_json_argument(text)); }

Element parse_element(const RingHandle& ring, const Json& literal) {
  if (ring->kind() == RingKind::FixedSubring) {
    auto fixed = std::static_pointer_cast<const FixedSubring>(ring);
    return fixed->lift(element_from_json(fixed->ambient(), literal));
  }
  return element_from_json(ring, literal);
}

std::vector<Element> parse_elements(const RingHandle& ring, const Json& list) {
  if (!list.is_array()) malformed("expected a JSON list of element literals, got " + list.dump());
  std::vector<Element> out;
  for (const auto& item : list) out.push_back(parse_element(ring, item));
  return out;
}

Json elements_to_json(std::span<const Element> elements) {
  Json out = Json::array();
  for (const auto& e : elements) out.push_back(element_to_json(e));
  return out;
}

PolyMap parse_map(const std::string& descriptor, const RingHandle& ring) {
  std::string body = descriptor;
  unsigned localize = 0;
  if (auto at = body.rfind('@'); at != std::string::npos) {
    localize = parse_unsigned(body.substr(at + 1), "localization prime");
    body = body.substr(0, at);
  }
  auto parts = split(body, ':');
  if (parts.empty()) malformed("empty map descriptor");
  PolyMap f;
  if (parts[0] == "identity" && parts.size() == 1) {
    f = identity_map(ring);
  } else if (parts[0] == "power" && parts.size() == 2) {
    f = power_map(ring, parse_unsigned(parts[1], "power"));
  } else if (parts[0] == "burnside-norm" && (parts.size() == 2 || parts.size() == 3)) {
    auto big = BurnsideRing::create(FiniteGroup::by_name(parts[1]));
    if (parts.size() == 2 || parts[2] == "e") {
      f = integer_norm_map(big);
    } else {
      f = norm_map(Inclusion::of_subgroup(big, subgroup_by_name(*big, parts[2]), parts[2]));
    }
  } else {
    malformed("unknown map descriptor '" + descriptor + "'");
  }
  return localize ? localize_codomain(f, localize) : f;
}

Z2Tambara parse_tambara(const std::string& descriptor) {
  if (descriptor == "burnside:Z2" || descriptor == "burnside:Z/2") return burnside_tambara(2, 0);
  if (descriptor.rfind("burnside:D", 0) == 0) {
    unsigned n = parse_unsigned(descriptor.substr(10), "dihedral order");
    for (unsigned p = 3; p <= n; p += 2) {
      if (!is_prime(p) || n % p != 0) continue;
      unsigned j = 0, m = n;
      while (m % p == 0) {
        m /= p;
        ++j;
      }
      if (m == 1) return burnside_tambara(p, j);
      break;
    }
    malformed("burnside:D<n> needs n an odd prime power, got " + std::to_string(n));
  }
  if (descriptor.rfind("invring:", 0) == 0) {
    RingHandle ring = parse_ring(descriptor.substr(8));
    return from_involution_ring(ring, default_involution(ring));
  }
  malformed("unknown Tambara base '" + descriptor + "'");
}

PresheafPair parse_pair(const Json& d) {
  if (!d.is_object()) malformed("presheaf pair must be a JSON object");
  PresheafPair pair;
  if (d.contains("X")) {
    for (const auto& item : d["X"]) {
      if (item.is_string()) {
        pair.tau.push_back(pair.X.size());
        pair.X.push_back(item.get<std::string>());
      } else if (item.is_array() && item.size() == 2) {
        std::size_t i = pair.X.size();
        pair.X.push_back(item[0].get<std::string>());
        pair.X.push_back(item[1].get<std::string>());
        pair.tau.push_back(i + 1);
        pair.tau.push_back(i);
      } else {
        malformed("entries of X are names or swapped pairs [a, abar]");
      }
    }
  }
  if (d.contains("Y")) pair.Y = d["Y"].get<std::vector<std::string>>();
  for (const auto& y : pair.Y) {
    if (!d.contains("res") || !d["res"].contains(y)) malformed("no restriction given for '" + y + "'");
    const std::string target = d["res"][y].get<std::string>();
    auto it = std::find(pair.X.begin(), pair.X.end(), target);
    if (it == pair.X.end()) malformed("'" + y + "' restricts to unknown element '" + target + "'");
    pair.res.push_back(static_cast<std::size_t>(it - pair.X.begin()));
  }
  pair.validate();
  return pair;
}

Element parse_top(const FreeTambara& f, const Json& literal) {
  if (!literal.is_object()) return f.from_integer(integer_from_json(literal));
  for (const auto& [key, value] : literal.items())
    if (key != "s1" && key != "s2" && key != "s3" && key != "tr") malformed("unknown key '" + key + "' in top literal");
  FreeTopElement parts;
  if (literal.contains("s1")) parts.s1 = element_from_json(f.s1_ring(), literal["s1"]).as<PolyTerms>();
  if (literal.contains("s2")) parts.s2 = element_from_json(f.underlying(), literal["s2"]).as<PolyTerms>();
  if (literal.contains("s3")) parts.s3 = element_from_json(f.underlying(), literal["s3"]).as<PolyTerms>();
  Element result = f.make(std::move(parts));
  if (literal.contains("tr")) result += f.transfer(element_from_json(f.underlying(), literal["tr"]));
  return result;
}

Json top_to_json(const FreeTambara& f, const Element& a) {
  FreeTopElement parts = f.parts(a);
  Json out = Json::object();
  out["s1"] = element_to_json(f.s1_ring()->element(parts.s1));
  out["s2"] = element_to_json(f.underlying()->element(parts.s2));
  out["s3"] = element_to_json(f.underlying()->element(parts.s3));
  out["text"] = f.format(a);
  return out;
}

const Json& fixtures() {
  static const Json parsed = Json::parse(kFixturesJson);
  return parsed;
}

}  // namespace polywitt::cli
