#pragma once

// Versioned JSON documents for every toolkit value. Scalars are exact
// strings ("p/q"); matrices are row-major nested arrays whose shape is fixed
// by the surrounding object. Parse errors carry a JSON-pointer location.

#include <rht/cdga.hpp>
#include <rht/complex.hpp>
#include <rht/connection.hpp>
#include <rht/cosimplicial.hpp>
#include <rht/error.hpp>
#include <rht/filtration.hpp>

#include <json.hpp>

#include <optional>
#include <string>

namespace rht::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

enum class Kind {
  Complex,
  ChainMap,
  CDGA,
  Cosimplicial,
  FilteredComplex,
  Frobenius,
  BarRequest,
  ThRequest,
  ConnectionAlgebra,
  SectionRequest,
  Report,
};

const char* kind_name(Kind k);
std::optional<Kind> kind_from_name(const std::string& name);

struct Document {
  Kind kind = Kind::Report;
  Json payload;
  std::string source;  // where it was read from, for diagnostics

  /// Location prefix of the payload: "<source>: /payload".
  std::string payload_at() const { return (source.empty() ? "" : source + ": ") + "/payload"; }
};

/// Rejects malformed JSON, missing fields, unknown kinds and format versions
/// other than kFormatVersion. Errors are InvalidInput with "<source>: <pointer>: ..." text.
Document parse_document(const std::string& text, const std::string& source = "<input>");
Document read_document(const std::string& path);
/// Two-space indented, trailing newline; deterministic.
std::string serialize(const Document& d);

/// A cosimplicial input: always a module, plus the algebra when the levels are CDGAs.
struct CosimplicialValue {
  CosimplicialModule module;
  std::optional<CosimplicialCDGA> algebra;
};

struct ThRequest {
  CosimplicialValue cosimplicial;
  std::optional<int> degree_cap;
  std::optional<int> weight_cap;
};

struct BarRequest {
  CDGA algebra;
  std::optional<int> word_cap;
};

struct SectionRequest {
  ConnectionAlgebra algebra;
  std::optional<int> window;
  std::optional<int> enum_bound;
};

// Payload encoders. Each decoder takes the payload and the JSON pointer of
// that payload for diagnostics.
Json to_json(const Rational& q);
Json to_json(const Complex& c);
Json to_json(const ChainMap& f);
Json to_json(const CDGA& a);
Json to_json(const CosimplicialValue& c);
Json to_json(const FilteredComplex& fc);
Json to_json(const FrobeniusOperator& f);
Json to_json(const ConnectionAlgebra& a);
Json to_json(const ThRequest& r);
Json to_json(const BarRequest& r);
Json to_json(const SectionRequest& r);

Rational rational_from_json(const Json& j, const std::string& at);
Complex complex_from_json(const Json& j, const std::string& at);
ChainMap chain_map_from_json(const Json& j, const std::string& at);
CDGA cdga_from_json(const Json& j, const std::string& at);
CosimplicialValue cosimplicial_from_json(const Json& j, const std::string& at);
FilteredComplex filtered_from_json(const Json& j, const std::string& at);
FrobeniusOperator frobenius_from_json(const Json& j, const std::string& at);
ConnectionAlgebra connection_from_json(const Json& j, const std::string& at);
ThRequest th_request_from_json(const Json& j, const std::string& at);
BarRequest bar_request_from_json(const Json& j, const std::string& at);
SectionRequest section_request_from_json(const Json& j, const std::string& at);

/// "1/2*t^-1 - 2*t^3" and friends, the inverse of Laurent::to_string.
Laurent parse_laurent(const std::string& text);

Document wrap(Kind k, Json payload);

bool operator==(const Document& a, const Document& b);

}  // namespace rht::io
