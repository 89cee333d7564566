// polywitt: command-line front end for the library.
//
// Exit codes: 0 ok, 2 obstruction or counterexample, 1 usage or computation error.

#include <CLI11.hpp>

#include <array>
#include <functional>
#include <iostream>
#include <optional>

#include "cli_support.hpp"
#include "polywitt/divided_powers.hpp"
#include "replay.hpp"

using namespace polywitt;
using namespace polywitt::cli;

namespace {

struct Globals {
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 100;
};

using Action = std::function<Report()>;

[[noreturn]] void usage(const std::string& what) { throw AlgebraError(ErrorCode::MalformedInput, what); }

void need_args(const std::vector<std::string>& args, std::size_t n, const std::string& command) {
  if (args.size() != n)
    usage(command + " takes " + std::to_string(n) + " argument(s), got " + std::to_string(args.size()));
}

// JSON literals are taken as separate scalar positionals: CLI11 would split a
// bracketed argument such as [0,1] if it were bound to a vector option.
constexpr std::size_t kMaxPositionals = 8;
using Slots = std::array<std::optional<std::string>, kMaxPositionals>;

std::shared_ptr<Slots> positional_slots(CLI::App* cmd) {
  auto slots = std::make_shared<Slots>();
  for (std::size_t i = 0; i < kMaxPositionals; ++i)
    cmd->add_option("arg" + std::to_string(i + 1), (*slots)[i], i == 0 ? "JSON literals" : "")->group("");
  // the hidden slots would otherwise print as eight empty brackets
  cmd->usage([cmd] {
    std::string path;
    for (const CLI::App* a = cmd; a; a = a->get_parent()) path = a->get_name() + (path.empty() ? "" : " " + path);
    return "Usage: " + path + " [OPTIONS] [ARG...]\nEach ARG is a JSON literal or a path to a JSON file.";
  });
  return slots;
}

std::vector<std::string> collect(const Slots& slots) {
  std::vector<std::string> out;
  for (const auto& s : slots)
    if (s) out.push_back(*s);
  return out;
}

Report value_report(Json payload, std::string text = {}) {
  Report r;
  r.payload = std::move(payload);
  r.text = std::move(text);
  return r;
}

Report obstruction_report(std::size_t j, const Element& residue, const std::string& detail) {
  Report r;
  r.status = Status::Obstruction;
  r.payload = {{"coordinate", j}, {"residue", element_to_json(residue)}, {"detail", detail}};
  r.witnesses.push_back(element_to_json(residue));
  r.text = "no solution: " + detail;
  return r;
}

Report witt_report(const UnghostResult& result) {
  if (const auto* o = std::get_if<GhostObstruction>(&result)) return obstruction_report(o->j, o->residue, o->detail);
  return value_report(elements_to_json(std::get<WittVector>(result).coords));
}

// ---------------------------------------------------------------------------

struct WittOptions {
  unsigned p = 0;
  std::size_t m = 0;
  std::string ring = "Z";
  std::string map;
  std::vector<std::string> args;
};

void add_witt(CLI::App& app, Action& action, const Globals& g) {
  auto* witt = app.add_subcommand("witt", "p-typical Witt vectors");
  auto opts = std::make_shared<WittOptions>();
  witt->add_option("--p", opts->p, "prime")->required()->check(CLI::Range(2U, 1000U));
  witt->add_option("--m", opts->m, "length; defaults to the length of the arguments");
  witt->add_option("--ring", opts->ring, "ring descriptor (file, JSON or shorthand)");
  witt->add_option("--map", opts->map, "map descriptor for lift and dwork");
  witt->require_subcommand(1);

  auto vector_of = [opts](const RingHandle& ring, const std::string& text) {
    std::vector<Element> coords = parse_elements(ring, read_json_argument(text));
    if (opts->m != 0 && coords.size() != opts->m)
      usage("expected " + std::to_string(opts->m) + " coordinates, got " + std::to_string(coords.size()));
    if (coords.empty()) usage("Witt vectors need at least one coordinate");
    auto trunc = TruncationSet::p_typical(opts->p, coords.size());
    return WittVector(trunc, ring, std::move(coords));
  };
  auto sub = [&](const std::string& name, const std::string& help, std::function<Report()> body) {
    auto* cmd = witt->add_subcommand(name, help);
    auto slots = positional_slots(cmd);
    cmd->callback([&action, body, slots, opts] {
      opts->args = collect(*slots);
      action = body;
    });
  };

  sub("add", "sum of two vectors", [opts, vector_of] {
    need_args(opts->args, 2, "witt add");
    RingHandle ring = parse_ring(opts->ring);
    return value_report(elements_to_json(witt_add(vector_of(ring, opts->args[0]), vector_of(ring, opts->args[1])).coords));
  });
  sub("mul", "product of two vectors", [opts, vector_of] {
    need_args(opts->args, 2, "witt mul");
    RingHandle ring = parse_ring(opts->ring);
    return value_report(elements_to_json(witt_mul(vector_of(ring, opts->args[0]), vector_of(ring, opts->args[1])).coords));
  });
  sub("ghost", "ghost components", [opts, vector_of] {
    need_args(opts->args, 1, "witt ghost");
    return value_report(elements_to_json(ghost(vector_of(parse_ring(opts->ring), opts->args[0]))));
  });
  sub("unghost", "solve the ghost equations", [opts] {
    need_args(opts->args, 1, "witt unghost");
    RingHandle ring = parse_ring(opts->ring);
    std::vector<Element> g = parse_elements(ring, read_json_argument(opts->args[0]));
    return witt_report(unghost(g, TruncationSet::p_typical(opts->p, g.size()), ring));
  });
  sub("teich", "Teichmuller lift", [opts] {
    need_args(opts->args, 1, "witt teich");
    RingHandle ring = parse_ring(opts->ring);
    Element a = parse_element(ring, read_json_argument(opts->args[0]));
    return value_report(elements_to_json(teichmuller(a, TruncationSet::p_typical(opts->p, opts->m ? opts->m : 2)).coords));
  });
  sub("frob", "Frobenius W_{m} -> W_{m-1}", [opts, vector_of] {
    need_args(opts->args, 1, "witt frob");
    return value_report(elements_to_json(frobenius(vector_of(parse_ring(opts->ring), opts->args[0])).coords));
  });
  sub("versch", "Verschiebung W_{m} -> W_{m+1}", [opts, vector_of] {
    need_args(opts->args, 1, "witt versch");
    return value_report(elements_to_json(verschiebung(vector_of(parse_ring(opts->ring), opts->args[0])).coords));
  });
  sub("dwork", "Dwork criterion for a ghost tuple", [opts, &g] {
    need_args(opts->args, 1, "witt dwork");
    RingHandle ring = parse_ring(opts->ring);
    std::vector<Element> tuple = parse_elements(ring, read_json_argument(opts->args[0]));
    PolyMap phi = parse_map(opts->map.empty() ? "identity" : opts->map, ring);
    bool in_image = dwork_membership(tuple, opts->p, phi, g.samples, g.seed);
    Report r = value_report({{"in_image", in_image}}, in_image ? "in the ghost image" : "not in the ghost image");
    if (!in_image) {
      r.status = Status::Obstruction;
      for (const auto& e : tuple) r.witnesses.push_back(element_to_json(e));
    }
    return r;
  });
  sub("lift", "W_m(f) for a multiplicative map f", [opts, vector_of] {
    need_args(opts->args, 1, "witt lift");
    if (opts->map.empty()) usage("witt lift needs --map");
    PolyMap f = parse_map(opts->map, parse_ring(opts->ring));
    return witt_report(lift_polymap(f, vector_of(f.domain(), opts->args[0])));
  });
}

// ---------------------------------------------------------------------------

struct MapOptions {
  std::string map = "identity";
  std::string ring = "Z";
  unsigned n = 2, p = 3, k = 1;
  std::vector<std::string> args;
};

void add_polymap(CLI::App& app, Action& action, const Globals& g) {
  auto* pm = app.add_subcommand("polymap", "polynomial maps");
  auto opts = std::make_shared<MapOptions>();
  pm->add_option("--map", opts->map, "map descriptor");
  pm->add_option("--ring", opts->ring, "ring for identity and power maps");
  pm->add_option("--n", opts->n, "degree for the degree test");
  pm->add_option("--p", opts->p, "prime for the congruence");
  pm->add_option("--k", opts->k, "exponent for the congruence");
  pm->require_subcommand(1);
  auto sub = [&](const std::string& name, const std::string& help, std::function<Report()> body) {
    auto* cmd = pm->add_subcommand(name, help);
    auto slots = positional_slots(cmd);
    cmd->callback([&action, body, slots, opts] {
      opts->args = collect(*slots);
      action = body;
    });
  };

  sub("cr", "cross-effect on the arguments", [opts] {
    PolyMap f = parse_map(opts->map, parse_ring(opts->ring));
    std::vector<Element> args;
    for (const auto& a : opts->args) args.push_back(parse_element(f.domain(), read_json_argument(a)));
    return value_report(element_to_json(cross_effect(f, args)));
  });
  sub("degree", "sampled test that cr_{n+1} vanishes", [opts, &g] {
    PolyMap f = parse_map(opts->map, parse_ring(opts->ring));
    Sampler sampler(g.seed);
    return from_check("degree <= " + std::to_string(opts->n), degree_test(f, opts->n, g.samples, sampler));
  });
  sub("decompose", "homogeneous pieces evaluated at an element", [opts, &g] {
    need_args(opts->args, 1, "polymap decompose");
    PolyMap f = parse_map(opts->map, parse_ring(opts->ring));
    Element a = parse_element(f.domain(), read_json_argument(opts->args[0]));
    Json pieces = Json::array();
    for (const auto& phi : homogeneous_decompose(f, g.samples, g.seed)) pieces.push_back(element_to_json(phi(a)));
    return value_report(pieces);
  });
  sub("congruence", "p^k congruence on samples", [opts, &g] {
    PolyMap f = parse_map(opts->map, parse_ring(opts->ring));
    Sampler sampler(g.seed);
    return from_check("congruence p=" + std::to_string(opts->p) + " k=" + std::to_string(opts->k),
                      congruence_check(f, opts->p, opts->k, g.samples, sampler));
  });
}

// ---------------------------------------------------------------------------

struct BurnsideOptions {
  std::string group = "D3";
  std::string sub = "e";
  unsigned p = 3;
  std::vector<std::string> args;
};

void add_burnside(CLI::App& app, Action& action) {
  auto* bs = app.add_subcommand("burnside", "Burnside rings");
  auto opts = std::make_shared<BurnsideOptions>();
  bs->add_option("--group", opts->group, "group name: e, Z/n, Cn, Dn, An, Sn");
  bs->add_option("--sub", opts->sub, "subgroup class for norm");
  bs->add_option("--p", opts->p, "prime for obstruct-a4");
  bs->require_subcommand(1);
  auto sub = [&](const std::string& name, const std::string& help, std::function<Report()> body) {
    auto* cmd = bs->add_subcommand(name, help);
    auto slots = positional_slots(cmd);
    cmd->callback([&action, body, slots, opts] {
      opts->args = collect(*slots);
      action = body;
    });
  };
  auto ring_of = [opts] { return BurnsideRing::create(FiniteGroup::by_name(opts->group)); };

  sub("marks", "table of marks, or the marks of an element", [opts, ring_of] {
    auto a = ring_of();
    Json classes = Json::array();
    for (std::size_t c = 0; c < a->classes(); ++c) classes.push_back(a->lattice().class_name(c));
    if (opts->args.size() == 1) {
      Element x = parse_element(a->ring(), read_json_argument(opts->args[0]));
      Json marks = Json::array();
      for (const auto& m : a->marks_of(x)) marks.push_back(integer_to_json(m));
      return value_report({{"classes", classes}, {"marks", marks}});
    }
    need_args(opts->args, 0, "burnside marks");
    Json table = Json::array();
    for (const auto& row : a->marks()) {
      Json out = Json::array();
      for (const auto& m : row) out.push_back(integer_to_json(m));
      table.push_back(out);
    }
    return value_report({{"classes", classes}, {"marks", table}});
  });
  sub("mul", "product of two elements", [opts, ring_of] {
    need_args(opts->args, 2, "burnside mul");
    auto a = ring_of();
    Element x = parse_element(a->ring(), read_json_argument(opts->args[0]));
    Element y = parse_element(a->ring(), read_json_argument(opts->args[1]));
    return value_report(element_to_json(x * y), a->ring()->format(x * y));
  });
  sub("norm", "N_H^G of an element of A(H)", [opts, ring_of] {
    need_args(opts->args, 1, "burnside norm");
    auto a = ring_of();
    Mask h = 0;
    for (std::size_t c = 0; c < a->classes(); ++c)
      if (a->lattice().class_name(c) == opts->sub) h = a->lattice().representative(c);
    if (h == 0) usage(opts->group + " has no subgroup class named '" + opts->sub + "'");
    Inclusion inc = Inclusion::of_subgroup(a, h, opts->sub);
    Element y = parse_element(inc.small()->ring(), read_json_argument(opts->args[0]));
    Element n = inc.norm(y);
    return value_report(element_to_json(n), a->ring()->format(n));
  });
  sub("units", "all units", [ring_of] {
    auto a = ring_of();
    auto units = burnside_units(*a);
    std::string text;
    for (const auto& u : units) text += a->ring()->format(u) + "\n";
    text += std::to_string(units.size()) + " units";
    return value_report({{"count", units.size()}, {"units", elements_to_json(units)}}, text);
  });
  sub("obstruct-a4", "the norm from A3 to A4 does not lift to W_2", [opts] { return a4_obstruction(opts->p); });
}

// ---------------------------------------------------------------------------

struct TambaraOptions {
  std::string base = "burnside:Z2";
  unsigned p = 3, n = 1;
  std::size_t m = 2;
  std::string op = "add";
  std::vector<std::string> args;
};

void add_tambara(CLI::App& app, Action& action, const Globals& g) {
  auto* tb = app.add_subcommand("tambara", "Z/2-Tambara functors");
  auto opts = std::make_shared<TambaraOptions>();
  tb->add_option("--base", opts->base, "burnside:Z2 | burnside:D<p^j> | invring:<ring>");
  tb->add_option("--p", opts->p, "odd prime");
  tb->add_option("--m", opts->m, "Witt length");
  tb->add_option("--n", opts->n, "dihedral exponent for psi-check");
  tb->add_option("--op", opts->op, "add | mul | neg for twisted-ops")->check(CLI::IsMember({"add", "mul", "neg"}));
  tb->require_subcommand(1);
  auto sub = [&](const std::string& name, const std::string& help, std::function<Report()> body) {
    auto* cmd = tb->add_subcommand(name, help);
    auto slots = positional_slots(cmd);
    cmd->callback([&action, body, slots, opts] {
      opts->args = collect(*slots);
      action = body;
    });
  };

  sub("check", "every Tambara axiom on samples", [opts, &g] {
    return from_tambara_report(check_tambara(parse_tambara(opts->base), g.samples, g.seed));
  });
  sub("witt", "ghost maps of W_m(T) commute with the structure", [opts, &g] {
    Z2Tambara t = parse_tambara(opts->base);
    Z2Tambara w = witt_tambara(t, opts->p, opts->m);
    return from_tambara_report(witt_ghost_check(t, w, opts->p, opts->m, g.samples, g.seed));
  });
  sub("twisted-ghost", "twisted ghost components of a fixed-level tuple", [opts] {
    need_args(opts->args, 1, "tambara twisted-ghost");
    Z2Tambara t = parse_tambara(opts->base);
    std::vector<Element> x = parse_elements(t.B, read_json_argument(opts->args[0]));
    std::vector<Element> out;
    for (std::size_t j = 0; j < x.size(); ++j) out.push_back(twisted_ghost(t, opts->p, j, std::span(x).first(j + 1)));
    return value_report(elements_to_json(out));
  });
  sub("twisted-ops", "ring operations of the twisted Witt vectors", [opts] {
    Z2Tambara t = parse_tambara(opts->base);
    const bool unary = opts->op == "neg";
    need_args(opts->args, unary ? 1 : 2, "tambara twisted-ops --op " + opts->op);
    std::vector<Element> u = parse_elements(t.B, read_json_argument(opts->args[0]));
    std::vector<Element> v = unary ? u : parse_elements(t.B, read_json_argument(opts->args[1]));
    if (u.size() != v.size()) usage("twisted vectors must have equal length");
    TwistedWittRing w(t, opts->p, u.size());
    TwistedOp op = opts->op == "add" ? TwistedOp::Add : opts->op == "mul" ? TwistedOp::Mul : TwistedOp::Neg;
    auto result = w.solve(op, u, v, false);
    if (const auto* o = std::get_if<NotSolvable>(&result)) return obstruction_report(o->j, o->residue, o->detail);
    return value_report(elements_to_json(std::get<std::vector<Element>>(result)));
  });
  sub("psi-check", "res of sum tr N(x_i) over D_{p^n} against the twisted ghost", [opts, &g] {
    return from_check("psi identity", psi_check(opts->p, opts->n, g.samples, g.seed));
  });
}

// ---------------------------------------------------------------------------

struct FreeOptions {
  std::string pair = R"({"X":[["u","ubar"]]})";
  std::string base = "burnside:Z2";
  std::string alpha = "[]", beta = "[]";
  unsigned degree = 2;
  std::vector<std::string> args;
};

void add_free(CLI::App& app, Action& action, const Globals& g) {
  auto* ft = app.add_subcommand("freetambara", "the free Z/2-Tambara functor A[X;Y]");
  auto opts = std::make_shared<FreeOptions>();
  ft->add_option("--pair", opts->pair, R"(presheaf pair, e.g. {"X":[["u","ubar"],"w"],"Y":["y"],"res":{"y":"w"}})");
  ft->add_option("--base", opts->base, "target Tambara functor for extend and resolve");
  ft->add_option("--alpha", opts->alpha, "JSON list: images of X, or generators a_i for resolve");
  ft->add_option("--beta", opts->beta, "JSON list: images of Y, or generators b_j for resolve");
  ft->add_option("--degree", opts->degree, "degree bound for check");
  ft->require_subcommand(1);
  auto sub = [&](const std::string& name, const std::string& help, std::function<Report()> body) {
    auto* cmd = ft->add_subcommand(name, help);
    auto slots = positional_slots(cmd);
    cmd->callback([&action, body, slots, opts] {
      opts->args = collect(*slots);
      action = body;
    });
  };
  auto free_of = [opts] { return FreeTambara::create(parse_pair(read_json_argument(opts->pair))); };
  auto top_report = [](const FreeTambara& f, const Element& a) {
    Json out = top_to_json(f, a);
    return value_report(out, out["text"].get<std::string>());
  };

  sub("mul", "product of fixed-level elements", [opts, free_of, top_report] {
    need_args(opts->args, 2, "freetambara mul");
    auto f = free_of();
    return top_report(*f, parse_top(*f, read_json_argument(opts->args[0])) * parse_top(*f, read_json_argument(opts->args[1])));
  });
  sub("res", "restriction to Z[X]", [opts, free_of] {
    need_args(opts->args, 1, "freetambara res");
    auto f = free_of();
    Element a = f->restrict(parse_top(*f, read_json_argument(opts->args[0])));
    return value_report(element_to_json(a), a.str());
  });
  sub("tr", "transfer of a polynomial in X", [opts, free_of, top_report] {
    need_args(opts->args, 1, "freetambara tr");
    auto f = free_of();
    return top_report(*f, f->transfer(parse_element(f->underlying(), read_json_argument(opts->args[0]))));
  });
  sub("norm", "norm of a polynomial in X", [opts, free_of, top_report] {
    need_args(opts->args, 1, "freetambara norm");
    auto f = free_of();
    return top_report(*f, f->norm(parse_element(f->underlying(), read_json_argument(opts->args[0]))));
  });
  sub("check", "ring axioms on the basis and the Tambara axioms on samples", [opts, free_of, &g] {
    auto f = free_of();
    TambaraReport report;
    report.checks.push_back({"ring axioms to degree " + std::to_string(opts->degree), free_ring_axioms(*f, opts->degree)});
    for (auto& c : check_tambara(f->tambara(), g.samples, g.seed).checks) report.checks.push_back(std::move(c));
    return from_tambara_report(report);
  });
  sub("extend", "the Tambara morphism determined by alpha and beta", [opts, free_of, &g] {
    auto f = free_of();
    Z2Tambara t = parse_tambara(opts->base);
    TambaraMorphism m = adjunction_extend(f, t, parse_elements(t.A, read_json_argument(opts->alpha)),
                                          parse_elements(t.B, read_json_argument(opts->beta)));
    Report r = from_tambara_report(check_morphism(f->tambara(), t, m, g.samples, g.seed));
    if (!opts->args.empty()) {
      Json images = Json::array();
      for (const auto& a : opts->args) images.push_back(element_to_json(m.beta(parse_top(*f, read_json_argument(a)))));
      r.payload = {{"checks", r.payload}, {"images", images}};
      r.text += "\nimages: " + images.dump();
    }
    return r;
  });
  sub("resolve", "cohomological resolution onto the base", [opts, &g] {
    Z2Tambara t = parse_tambara(opts->base);
    Resolution res = cohomological_resolution(t, parse_elements(t.A, read_json_argument(opts->alpha)),
                                              parse_elements(t.B, read_json_argument(opts->beta)));
    Report r = from_tambara_report(check_morphism(res.fixed, t, res.onto, g.samples, g.seed));
    r.payload = {{"variables", res.S->variables()}, {"checks", r.payload}};
    r.text = res.S->name() + "\n" + r.text;
    return r;
  });
}

// ---------------------------------------------------------------------------

struct DpOptions {
  std::string ring = "Z";
  unsigned n = 2;
  std::vector<std::string> args;
};

void add_dp(CLI::App& app, Action& action, const Globals& g) {
  auto* dp = app.add_subcommand("dp", "divided powers");
  auto opts = std::make_shared<DpOptions>();
  dp->add_option("--ring", opts->ring, "Z or a free-rank ring");
  dp->add_option("--n", opts->n, "degree")->check(CLI::Range(1U, 8U));
  dp->require_subcommand(1);
  auto sub = [&](const std::string& name, const std::string& help, std::function<Report()> body) {
    auto* cmd = dp->add_subcommand(name, help);
    auto slots = positional_slots(cmd);
    cmd->callback([&action, body, slots, opts] {
      opts->args = collect(*slots);
      action = body;
    });
  };

  sub("check", "divided power relations in degree n", [opts, &g] {
    RingHandle ring = parse_ring(opts->ring);
    SymHandle sym = SymPower::create(ring, opts->n);
    DividedPowers powers(ring, opts->n);
    TambaraReport report;
    report.checks.push_back({"relations", divided_relations_check(*sym, g.samples, g.seed)});
    report.checks.push_back({"gamma multiplicativity", gamma_multiplicativity_check(*sym, g.samples, g.seed)});
    report.checks.push_back({"cross-effect expansion", cross_effect_expansion_exhaustive(powers, opts->n)});
    return from_tambara_report(report);
  });
  sub("gamma", "gamma_n of an element", [opts] {
    need_args(opts->args, 1, "dp gamma");
    RingHandle ring = parse_ring(opts->ring);
    Element x = gamma_n(parse_element(ring, read_json_argument(opts->args[0])), opts->n);
    return value_report(element_to_json(x), x.str());
  });
}

void add_replay(CLI::App& app, Action& action, const Globals& g) {
  auto* rp = app.add_subcommand("replay", "recompute a reference scenario and compare with the fixtures");
  auto name = std::make_shared<std::string>();
  rp->add_option("name", *name, "cex | a4 | units | formula | psi | dwork")->required();
  rp->callback([&action, name, &g] { action = [name, &g] { return replay(*name, g.samples, g.seed); }; });
}

}  // namespace

int main(int argc, char** argv) {
  Globals globals;
  Action action;
  CLI::App app{"polywitt: Witt vectors, polynomial maps and Z/2-Tambara functors"};
  app.add_flag("--json", globals.json, "emit a JSON report");
  app.add_option("--seed", globals.seed, "seed for sampled checks");
  app.add_option("--samples", globals.samples, "number of samples for sampled checks");
  app.require_subcommand(1);
  app.fallthrough();

  add_witt(app, action, globals);
  add_polymap(app, action, globals);
  add_burnside(app, action);
  add_tambara(app, action, globals);
  add_free(app, action, globals);
  add_dp(app, action, globals);
  add_replay(app, action, globals);
  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
    for (auto* leaf : sub->get_subcommands([](const CLI::App*) { return true; })) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (!action) {
    std::cerr << "no command given\n";
    return 1;
  }
  try {
    return emit(action(), globals.json);
  } catch (const AlgebraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
