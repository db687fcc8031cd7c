#include <rht/io.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace rht::io {

namespace {

[[noreturn]] void fail(const std::string& at, const std::string& msg) {
  throw Error(ErrorKind::InvalidInput, (at.empty() ? "/" : at) + ": " + msg);
}

const Json& field(const Json& j, const char* key, const std::string& at) {
  if (!j.is_object()) fail(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(at, std::string("missing field \"") + key + "\"");
  return *it;
}

const Json* optional_field(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::string child(const std::string& at, const std::string& key) { return at + "/" + key; }
std::string child(const std::string& at, size_t i) { return at + "/" + std::to_string(i); }

long get_long(const Json& j, const std::string& at) {
  if (!j.is_number_integer()) fail(at, "expected an integer");
  return j.get<long>();
}

int get_int(const Json& j, const std::string& at) {
  const long v = get_long(j, at);
  if (v < -1000000 || v > 1000000) fail(at, "integer out of range");
  return static_cast<int>(v);
}

Index get_dim(const Json& j, const std::string& at) {
  const long v = get_long(j, at);
  if (v < 0 || v > 100000) fail(at, "expected a dimension in [0, 100000]");
  return static_cast<Index>(v);
}

std::optional<int> optional_int(const Json& j, const char* key, const std::string& at) {
  const Json* f = optional_field(j, key);
  if (!f) return std::nullopt;
  return get_int(*f, child(at, key));
}

const Json& array(const Json& j, const std::string& at, std::optional<size_t> size = std::nullopt) {
  if (!j.is_array()) fail(at, "expected an array");
  if (size && j.size() != *size)
    fail(at, "expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  return j;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

Matrix matrix_from(const Json& j, const std::string& at, Index rows, Index cols) {
  array(j, at, static_cast<size_t>(rows));
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const std::string ra = child(at, static_cast<size_t>(i));
    const Json& row = array(j[static_cast<size_t>(i)], ra, static_cast<size_t>(cols));
    for (Index k = 0; k < cols; ++k) m(i, k) = rational_from_json(row[static_cast<size_t>(k)], child(ra, static_cast<size_t>(k)));
  }
  return m;
}

Matrix square_from(const Json& j, const std::string& at) {
  array(j, at);
  return matrix_from(j, at, static_cast<Index>(j.size()), static_cast<Index>(j.size()));
}

Vector vector_from(const Json& j, const std::string& at, Index n) {
  array(j, at, static_cast<size_t>(n));
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rational_from_json(j[static_cast<size_t>(i)], child(at, static_cast<size_t>(i)));
  return v;
}

/// Runs a constructor, prefixing any toolkit error with the location.
template <class F>
auto located(const std::string& at, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const Error& e) {
    throw Error(e.kind(), (at.empty() ? "/" : at) + ": " + e.detail());
  }
}

Json components_json(const ChainMap& f) {
  Json out = Json::array();
  const Complex& s = f.source();
  if (!s.empty())
    for (int n = s.lower_bound(); n <= s.top(); ++n) out.push_back(matrix_json(f.at(n)));
  return out;
}

std::vector<Matrix> components_from(const Json& j, const std::string& at, const Complex& s, const Complex& t) {
  const size_t n = s.dims().size();
  array(j, at, n);
  std::vector<Matrix> comps;
  for (size_t k = 0; k < n; ++k) {
    const int deg = s.lower_bound() + static_cast<int>(k);
    comps.push_back(matrix_from(j[k], child(at, k), t.dim(deg), s.dim(deg)));
  }
  return comps;
}

ChainMap chain_map_between(const Json& j, const std::string& at, const Complex& s, const Complex& t) {
  auto comps = components_from(j, at, s, t);
  return located(at, [&] { return ChainMap(s, t, std::move(comps)); });
}

Json laurent_vector_json(const LaurentVector& v) {
  Json out = Json::array();
  for (const Laurent& l : v) out.push_back(l.to_string());
  return out;
}

LaurentVector laurent_vector_from(const Json& j, const std::string& at, Index n) {
  array(j, at, static_cast<size_t>(n));
  LaurentVector v;
  for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
    const std::string a = child(at, i);
    if (!j[i].is_string()) fail(a, "expected a Laurent polynomial string");
    try {
      v.push_back(parse_laurent(j[i].get<std::string>()));
    } catch (const Error& e) {
      fail(a, e.detail());
    }
  }
  return v;
}

const char* const kKindNames[] = {"complex", "chain_map", "cdga", "cosimplicial", "filtered_complex", "frobenius",
                                  "bar_request", "th_request", "connection_algebra", "section_request", "report"};

}  // namespace

const char* kind_name(Kind k) { return kKindNames[static_cast<int>(k)]; }

std::optional<Kind> kind_from_name(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(Kind::Report); ++i)
    if (name == kKindNames[i]) return static_cast<Kind>(i);
  return std::nullopt;
}

Document wrap(Kind k, Json payload) { return Document{k, std::move(payload), {}}; }

bool operator==(const Document& a, const Document& b) { return a.kind == b.kind && a.payload == b.payload; }

Document parse_document(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, source + ": " + e.what());
  }
  try {
    const Json& version = field(j, "format_version", "");
    if (!version.is_string()) fail("/format_version", "expected a string");
    if (version.get<std::string>() != kFormatVersion)
      fail("/format_version", "unsupported format_version \"" + version.get<std::string>() + "\" (this build reads \"" +
                                  kFormatVersion + "\")");
    const Json& kind = field(j, "kind", "");
    if (!kind.is_string()) fail("/kind", "expected a string");
    const auto k = kind_from_name(kind.get<std::string>());
    if (!k) {
      std::string known;
      for (const char* n : kKindNames) known += std::string(known.empty() ? "" : ", ") + n;
      fail("/kind", "unknown kind \"" + kind.get<std::string>() + "\" (known: " + known + ")");
    }
    return Document{*k, field(j, "payload", ""), source};
  } catch (const Error& e) {
    throw Error(e.kind(), source + ": " + e.detail());
  }
}

Document read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, path + ": cannot open file");
  std::stringstream s;
  s << in.rdbuf();
  return parse_document(s.str(), path);
}

std::string serialize(const Document& d) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = kind_name(d.kind);
  j["payload"] = d.payload;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Scalars and Laurent polynomials

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j, const std::string& at) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(at, "expected an exact scalar string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception&) {
    fail(at, "malformed scalar \"" + j.get<std::string>() + "\"");
  }
}

Laurent parse_laurent(const std::string& text) {
  auto bad = [&] { throw Error(ErrorKind::InvalidInput, "malformed Laurent polynomial \"" + text + "\""); };
  // Whitespace may only separate terms from signs.
  std::string s;
  bool gap = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      gap = !s.empty();
      continue;
    }
    if (gap && c != '+' && c != '-' && s.back() != '+' && s.back() != '-') bad();
    gap = false;
    s += c;
  }
  if (s.empty()) bad();
  Laurent out;
  size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (!first) {
      bad();
    }
    first = false;
    size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
    Rational c(1);
    const bool has_coeff = j > i;
    if (has_coeff) {
      try {
        c = parse_rational(s.substr(i, j - i));
      } catch (const std::exception&) {
        bad();
      }
    }
    i = j;
    int e = 0;
    bool star = false;
    if (i < s.size() && s[i] == '*') {
      if (!has_coeff) bad();
      ++i;
      star = true;
      if (i >= s.size() || s[i] != 't') bad();
    }
    if (i < s.size() && s[i] == 't') {
      if (has_coeff && !star) bad();
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        size_t k = i;
        if (k < s.size() && s[k] == '-') ++k;
        const size_t digits = k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == digits || k - digits > 6) bad();
        e = std::stoi(s.substr(i, k - i));
        i = k;
      }
    } else if (!has_coeff) {
      bad();
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') bad();
    out.add_term(e, negative ? Rational(-c) : c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Complexes and chain maps

Json to_json(const Complex& c) {
  Json j;
  j["lower"] = c.lower_bound();
  j["dims"] = c.dims();
  Json d = Json::array();
  if (!c.empty())
    for (int n = c.lower_bound(); n < c.top(); ++n) d.push_back(matrix_json(c.d(n)));
  j["d"] = std::move(d);
  return j;
}

Complex complex_from_json(const Json& j, const std::string& at) {
  const int lower = get_int(field(j, "lower", at), child(at, "lower"));
  const Json& dj = array(field(j, "dims", at), child(at, "dims"));
  std::vector<Index> dims;
  for (size_t k = 0; k < dj.size(); ++k) dims.push_back(get_dim(dj[k], child(child(at, "dims"), k)));
  const size_t nd = dims.empty() ? 0 : dims.size() - 1;
  const Json* dd = optional_field(j, "d");
  std::vector<Matrix> d;
  if (dd == nullptr) {
    for (size_t k = 0; k < nd; ++k) d.push_back(Matrix::Zero(dims[k + 1], dims[k]));
  } else {
    const std::string da = child(at, "d");
    array(*dd, da, nd);
    for (size_t k = 0; k < nd; ++k) d.push_back(matrix_from((*dd)[k], child(da, k), dims[k + 1], dims[k]));
  }
  return located(at, [&] { return Complex(lower, std::move(dims), std::move(d)); });
}

Json to_json(const ChainMap& f) {
  Json j;
  j["source"] = to_json(f.source());
  j["target"] = to_json(f.target());
  j["components"] = components_json(f);
  return j;
}

ChainMap chain_map_from_json(const Json& j, const std::string& at) {
  const Complex s = complex_from_json(field(j, "source", at), child(at, "source"));
  const Complex t = complex_from_json(field(j, "target", at), child(at, "target"));
  return chain_map_between(field(j, "components", at), child(at, "components"), s, t);
}

// ---------------------------------------------------------------------------
// Algebras

Json to_json(const CDGA& a) {
  Json j;
  j["complex"] = to_json(a.complex());
  j["unit"] = vector_json(a.unit());
  if (a.augmentation()) j["augmentation"] = vector_json(*a.augmentation());
  Json mult = Json::array();
  for (int i = 0; i <= a.top(); ++i)
    for (int k = 0; i + k <= a.top(); ++k) {
      const Matrix& m = a.mult(i, k);
      if (m.size() == 0 || m.isZero()) continue;
      Json e;
      e["i"] = i;
      e["j"] = k;
      e["matrix"] = matrix_json(m);
      mult.push_back(std::move(e));
    }
  j["mult"] = std::move(mult);
  return j;
}

CDGA cdga_from_json(const Json& j, const std::string& at) {
  CDGA a;
  if (const Json* c = optional_field(j, "construction")) {
    if (!c->is_string()) fail(child(at, "construction"), "expected a string");
    const std::string name = c->get<std::string>();
    if (name == "ground") {
      a = CDGA::ground();
    } else if (name == "exterior") {
      const int deg = get_int(field(j, "degree", at), child(at, "degree"));
      a = located(at, [&] { return CDGA::exterior(deg); });
    } else if (name == "truncated_polynomial") {
      const int deg = get_int(field(j, "degree", at), child(at, "degree"));
      const int power = get_int(field(j, "power", at), child(at, "power"));
      a = located(at, [&] { return CDGA::truncated_polynomial(deg, power); });
    } else if (name == "square_zero") {
      const Complex v = complex_from_json(field(j, "complex", at), child(at, "complex"));
      a = located(at, [&] { return CDGA::square_zero(v); });
    } else if (name == "tensor") {
      const std::string fa = child(at, "factors");
      const Json& f = array(field(j, "factors", at), fa);
      if (f.empty()) fail(fa, "need at least one factor");
      a = cdga_from_json(f[0], child(fa, 0));
      for (size_t k = 1; k < f.size(); ++k) a = tensor(a, cdga_from_json(f[k], child(fa, k)));
    } else {
      fail(child(at, "construction"),
           "unknown construction \"" + name + "\" (known: ground, exterior, truncated_polynomial, square_zero, tensor)");
    }
    return a;
  }
  const Complex c = complex_from_json(field(j, "complex", at), child(at, "complex"));
  if (c.empty() || c.lower_bound() != 0) fail(child(at, "complex"), "an algebra lives in degrees 0..top");
  const int top = c.top();
  std::vector<std::vector<Matrix>> mult(static_cast<size_t>(top + 1));
  for (int i = 0; i <= top; ++i)
    for (int k = 0; i + k <= top; ++k) mult[static_cast<size_t>(i)].push_back(Matrix::Zero(c.dim(i + k), c.dim(i) * c.dim(k)));
  const std::string ma = child(at, "mult");
  const Json& mj = array(field(j, "mult", at), ma);
  for (size_t e = 0; e < mj.size(); ++e) {
    const std::string ea = child(ma, e);
    const int i = get_int(field(mj[e], "i", ea), child(ea, "i"));
    const int k = get_int(field(mj[e], "j", ea), child(ea, "j"));
    if (i < 0 || k < 0 || i + k > top) fail(ea, "product degrees out of range");
    mult[static_cast<size_t>(i)][static_cast<size_t>(k)] =
        matrix_from(field(mj[e], "matrix", ea), child(ea, "matrix"), c.dim(i + k), c.dim(i) * c.dim(k));
  }
  const Vector unit = vector_from(field(j, "unit", at), child(at, "unit"), c.dim(0));
  std::optional<Vector> aug;
  if (const Json* g = optional_field(j, "augmentation")) aug = vector_from(*g, child(at, "augmentation"), c.dim(0));
  a = located(at, [&] { return CDGA(c, std::move(mult), unit, aug); });
  const ValidationReport rep = validate(a);
  if (!rep.ok()) throw Error(ErrorKind::InvalidAlgebra, at + ": " + rep.violations.front().describe());
  return a;
}

// ---------------------------------------------------------------------------
// Cosimplicial objects

Json to_json(const CosimplicialValue& c) {
  const CosimplicialModule& m = c.module;
  Json j;
  j["algebra"] = c.algebra.has_value();
  Json levels = Json::array();
  for (int n = 0; n <= m.truncation(); ++n)
    levels.push_back(c.algebra ? to_json(c.algebra->level(n)) : to_json(m.level(n)));
  j["levels"] = std::move(levels);
  Json cofaces = Json::array();
  for (int n = 1; n <= m.truncation(); ++n) {
    Json row = Json::array();
    for (int i = 0; i <= n; ++i) row.push_back(components_json(m.coface(n, i)));
    cofaces.push_back(std::move(row));
  }
  j["cofaces"] = std::move(cofaces);
  Json codeg = Json::array();
  for (int n = 0; n < m.truncation(); ++n) {
    Json row = Json::array();
    for (int i = 0; i <= n; ++i) row.push_back(components_json(m.codegeneracy(n, i)));
    codeg.push_back(std::move(row));
  }
  j["codegeneracies"] = std::move(codeg);
  return j;
}

CosimplicialValue cosimplicial_from_json(const Json& j, const std::string& at) {
  CosimplicialValue out;
  if (const Json* c = optional_field(j, "construction")) {
    if (!c->is_string()) fail(child(at, "construction"), "expected a string");
    const std::string name = c->get<std::string>();
    if (name != "constant" && name != "dold_kan")
      fail(child(at, "construction"), "unknown construction \"" + name + "\" (known: constant, dold_kan)");
    const int n = get_int(field(j, "truncation", at), child(at, "truncation"));
    if (n < 0) fail(child(at, "truncation"), "truncation must be >= 0");
    if (const Json* a = optional_field(j, "cdga")) {
      const CDGA alg = cdga_from_json(*a, child(at, "cdga"));
      if (name == "constant") {
        out.module = located(at, [&] { return CosimplicialModule::constant(alg.complex(), n); });
        out.algebra = located(at, [&] {
          return CosimplicialCDGA(std::vector<CDGA>(static_cast<size_t>(n + 1), alg), out.module);
        });
      } else {
        out.algebra = located(at, [&] { return dold_kan_D(alg, n); });
        out.module = out.algebra->module();
      }
    } else {
      const Complex cx = complex_from_json(field(j, "complex", at), child(at, "complex"));
      out.module = located(at, [&] { return name == "constant" ? CosimplicialModule::constant(cx, n) : dold_kan_D(cx, n); });
    }
    return out;
  }
  bool algebra = false;
  if (const Json* a = optional_field(j, "algebra")) {
    if (!a->is_boolean()) fail(child(at, "algebra"), "expected a boolean");
    algebra = a->get<bool>();
  }
  const std::string la = child(at, "levels");
  const Json& lj = array(field(j, "levels", at), la);
  if (lj.empty()) fail(la, "need at least level 0");
  std::vector<Complex> levels;
  std::vector<CDGA> algebras;
  for (size_t n = 0; n < lj.size(); ++n) {
    if (algebra) {
      algebras.push_back(cdga_from_json(lj[n], child(la, n)));
      levels.push_back(algebras.back().complex());
    } else {
      levels.push_back(complex_from_json(lj[n], child(la, n)));
    }
  }
  const size_t top = levels.size() - 1;
  const std::string ca = child(at, "cofaces");
  const Json& cj = array(field(j, "cofaces", at), ca, top);
  std::vector<std::vector<ChainMap>> cofaces(1);
  for (size_t n = 1; n <= top; ++n) {
    const std::string ra = child(ca, n - 1);
    const Json& row = array(cj[n - 1], ra, n + 1);
    std::vector<ChainMap> maps;
    for (size_t i = 0; i <= n; ++i) maps.push_back(chain_map_between(row[i], child(ra, i), levels[n - 1], levels[n]));
    cofaces.push_back(std::move(maps));
  }
  const std::string sa = child(at, "codegeneracies");
  const Json& sj = array(field(j, "codegeneracies", at), sa, top);
  std::vector<std::vector<ChainMap>> codeg;
  for (size_t n = 0; n < top; ++n) {
    const std::string ra = child(sa, n);
    const Json& row = array(sj[n], ra, n + 1);
    std::vector<ChainMap> maps;
    for (size_t i = 0; i <= n; ++i) maps.push_back(chain_map_between(row[i], child(ra, i), levels[n + 1], levels[n]));
    codeg.push_back(std::move(maps));
  }
  out.module = located(at, [&] { return CosimplicialModule(levels, std::move(cofaces), std::move(codeg)); });
  if (algebra) out.algebra = located(at, [&] { return CosimplicialCDGA(std::move(algebras), out.module); });
  return out;
}

// ---------------------------------------------------------------------------
// Filtrations and Frobenius

Json to_json(const FilteredComplex& fc) {
  const Complex& c = fc.complex();
  Json j;
  j["complex"] = to_json(c);
  j["p_min"] = fc.p_min();
  Json steps = Json::array();
  if (!c.empty())
    for (int n = c.lower_bound(); n <= c.top(); ++n) {
      Json row = Json::array();
      for (int p = fc.p_min(); p <= fc.p_max(); ++p) {
        const Space w = fc.w(p, n);
        Json span = Json::array();
        for (Index k = 0; k < w.dim(); ++k) span.push_back(vector_json(w.basis().col(k)));
        row.push_back(std::move(span));
      }
      steps.push_back(std::move(row));
    }
  j["steps"] = std::move(steps);
  return j;
}

FilteredComplex filtered_from_json(const Json& j, const std::string& at) {
  const Complex c = complex_from_json(field(j, "complex", at), child(at, "complex"));
  const size_t nd = c.dims().size();
  if (const Json* w = optional_field(j, "weights")) {
    const std::string wa = child(at, "weights");
    array(*w, wa, nd);
    std::vector<std::vector<int>> weights;
    for (size_t k = 0; k < nd; ++k) {
      const std::string ra = child(wa, k);
      const Json& row = array((*w)[k], ra, static_cast<size_t>(c.dims()[k]));
      std::vector<int> ws;
      for (size_t i = 0; i < row.size(); ++i) ws.push_back(get_int(row[i], child(ra, i)));
      weights.push_back(std::move(ws));
    }
    return located(at, [&] { return FilteredComplex::from_weights(c, weights); });
  }
  const int p_min = get_int(field(j, "p_min", at), child(at, "p_min"));
  const std::string sa = child(at, "steps");
  const Json& sj = array(field(j, "steps", at), sa, nd);
  std::vector<std::vector<Space>> steps;
  std::optional<size_t> length;
  for (size_t k = 0; k < nd; ++k) {
    const std::string ra = child(sa, k);
    const Json& row = array(sj[k], ra, length);
    if (row.empty()) fail(ra, "need at least one step");
    length = row.size();
    const Index ambient = c.dims()[k];
    std::vector<Space> spaces;
    for (size_t p = 0; p < row.size(); ++p) {
      const std::string pa = child(ra, p);
      const Json& span = array(row[p], pa);
      Matrix gens(ambient, static_cast<Index>(span.size()));
      for (size_t g = 0; g < span.size(); ++g) gens.col(static_cast<Index>(g)) = vector_from(span[g], child(pa, g), ambient);
      spaces.push_back(Space::span(gens));
    }
    steps.push_back(std::move(spaces));
  }
  return located(at, [&] { return FilteredComplex(c, p_min, std::move(steps)); });
}

Json to_json(const FrobeniusOperator& f) {
  Json j;
  j["q"] = f.q;
  Json phi = Json::array();
  for (const Matrix& m : f.phi) phi.push_back(matrix_json(m));
  j["phi"] = std::move(phi);
  return j;
}

FrobeniusOperator frobenius_from_json(const Json& j, const std::string& at) {
  FrobeniusOperator f;
  f.q = get_long(field(j, "q", at), child(at, "q"));
  const std::string pa = child(at, "phi");
  const Json& pj = array(field(j, "phi", at), pa);
  for (size_t k = 0; k < pj.size(); ++k) f.phi.push_back(square_from(pj[k], child(pa, k)));
  return f;
}

// ---------------------------------------------------------------------------
// Connection algebras

Json to_json(const ConnectionAlgebra& a) {
  Json j;
  j["rank"] = a.rank;
  if (!a.labels.empty()) j["labels"] = a.labels;
  j["unit"] = laurent_vector_json(a.unit);
  Json mult = Json::array();
  for (const auto& row : a.mult) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(laurent_vector_json(v));
    mult.push_back(std::move(r));
  }
  j["mult"] = std::move(mult);
  Json gamma = Json::array();
  for (const auto& row : a.gamma) gamma.push_back(laurent_vector_json(row));
  j["gamma"] = std::move(gamma);
  return j;
}

ConnectionAlgebra connection_from_json(const Json& j, const std::string& at) {
  ConnectionAlgebra a;
  a.rank = get_dim(field(j, "rank", at), child(at, "rank"));
  if (a.rank == 0) fail(child(at, "rank"), "rank must be positive");
  const size_t r = static_cast<size_t>(a.rank);
  if (const Json* l = optional_field(j, "labels")) {
    array(*l, child(at, "labels"), r);
    for (size_t i = 0; i < r; ++i) {
      if (!(*l)[i].is_string()) fail(child(child(at, "labels"), i), "expected a string");
      a.labels.push_back((*l)[i].get<std::string>());
    }
  }
  a.unit = laurent_vector_from(field(j, "unit", at), child(at, "unit"), a.rank);
  const std::string ma = child(at, "mult");
  const Json& mj = array(field(j, "mult", at), ma, r);
  for (size_t i = 0; i < r; ++i) {
    const std::string ra = child(ma, i);
    const Json& row = array(mj[i], ra, r);
    std::vector<LaurentVector> vs;
    for (size_t k = 0; k < r; ++k) vs.push_back(laurent_vector_from(row[k], child(ra, k), a.rank));
    a.mult.push_back(std::move(vs));
  }
  const std::string ga = child(at, "gamma");
  const Json& gj = array(field(j, "gamma", at), ga, r);
  for (size_t k = 0; k < r; ++k) a.gamma.push_back(laurent_vector_from(gj[k], child(ga, k), a.rank));
  const ConnectionReport rep = validate(a);
  if (!rep.ok()) throw Error(ErrorKind::InvalidAlgebra, at + ": " + rep.violations.front());
  return a;
}

// ---------------------------------------------------------------------------
// Requests

Json to_json(const ThRequest& r) {
  Json j;
  j["cosimplicial"] = to_json(r.cosimplicial);
  if (r.degree_cap) j["degree_cap"] = *r.degree_cap;
  if (r.weight_cap) j["weight_cap"] = *r.weight_cap;
  return j;
}

ThRequest th_request_from_json(const Json& j, const std::string& at) {
  ThRequest r;
  r.cosimplicial = cosimplicial_from_json(field(j, "cosimplicial", at), child(at, "cosimplicial"));
  r.degree_cap = optional_int(j, "degree_cap", at);
  r.weight_cap = optional_int(j, "weight_cap", at);
  return r;
}

Json to_json(const BarRequest& r) {
  Json j;
  j["algebra"] = to_json(r.algebra);
  if (r.word_cap) j["word_cap"] = *r.word_cap;
  return j;
}

BarRequest bar_request_from_json(const Json& j, const std::string& at) {
  BarRequest r;
  r.algebra = cdga_from_json(field(j, "algebra", at), child(at, "algebra"));
  r.word_cap = optional_int(j, "word_cap", at);
  return r;
}

Json to_json(const SectionRequest& r) {
  Json j;
  j["algebra"] = to_json(r.algebra);
  if (r.window) j["window"] = *r.window;
  if (r.enum_bound) j["enum_bound"] = *r.enum_bound;
  return j;
}

SectionRequest section_request_from_json(const Json& j, const std::string& at) {
  SectionRequest r;
  r.algebra = connection_from_json(field(j, "algebra", at), child(at, "algebra"));
  r.window = optional_int(j, "window", at);
  r.enum_bound = optional_int(j, "enum_bound", at);
  return r;
}

}  // namespace rht::io
