#pragma once

// Shared plumbing for the polywitt command line: reports, exit codes and the
// textual descriptors for rings, maps, Tambara functors and presheaf pairs.

#include <cstdint>
#include <string>
#include <vector>

#include "polywitt/free_tambara.hpp"
#include "polywitt/ring_json.hpp"

namespace polywitt::cli {

enum class Status { Ok, Obstruction, Fail };

struct Report {
  Status status = Status::Ok;
  Json payload;
  std::vector<Json> witnesses;
  std::string text;  // human rendering; payload.dump() when empty

  /// ok -> 0, obstruction -> 2, fail -> 1.
  int exit_code() const;
  Json to_json() const;
};

/// Prints to stdout and returns the exit code.
int emit(const Report& report, bool json);

/// A check result as a report: passing is ok, failing is an obstruction carrying the witness.
Report from_check(const std::string& name, const CheckResult& result);
Report from_tambara_report(const TambaraReport& report);

/// Inline JSON, a path to a JSON file, or a bare shorthand string.
Json read_json_argument(const std::string& text);

RingHandle parse_ring(const std::string& text);
/// Element literal; also accepts literals of fixed subrings via their ambient ring.
Element parse_element(const RingHandle& ring, const Json& literal);
std::vector<Element> parse_elements(const RingHandle& ring, const Json& list);
Json elements_to_json(std::span<const Element> elements);

/// identity | power:N | burnside-norm:G | burnside-norm:G:H, with an optional @p
/// suffix that localizes the codomain. identity and power act on `ring`.
PolyMap parse_map(const std::string& descriptor, const RingHandle& ring);

/// burnside:Z2 | burnside:D<p^j> | invring:<ring descriptor>
Z2Tambara parse_tambara(const std::string& descriptor);

/// {"X":[["u","ubar"],"w"],"Y":["y"],"res":{"y":"w"}}
PresheafPair parse_pair(const Json& descriptor);
/// {"s1":{...},"s2":{...},"s3":{...},"tr":{...}}; every key optional, tr taken over Z[X].
Element parse_top(const FreeTambara& f, const Json& literal);
Json top_to_json(const FreeTambara& f, const Element& a);

/// The embedded fixtures file with the reference values for the replays.
const Json& fixtures();

}  // namespace polywitt::cli
