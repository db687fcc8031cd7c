#include "cli.hpp"

#include <rht/bar.hpp>
#include <rht/io.hpp>
#include <rht/thom_sullivan.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

namespace rht::cli {

namespace {

using io::Document;
using io::Json;
using io::Kind;

struct Options {
  std::vector<std::string> inputs;
  std::optional<int> degree_cap, weight_cap, word_cap, window, r_max, enum_bound;
  unsigned precision = 128;
  std::string output;
};

/// Report under construction: a payload plus the exit status it implies.
struct Report {
  Json payload;
  int status = kOk;
  void summary(const std::string& line) { payload["summary"].push_back(line); }
};

[[noreturn]] void input_error(const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); }

std::string join(const std::vector<Kind>& kinds) {
  std::string s;
  for (Kind k : kinds) s += std::string(s.empty() ? "" : " or ") + io::kind_name(k);
  return s;
}

/// Reads input `i` and checks its kind.
Document input(const Options& o, size_t i, const std::vector<Kind>& allowed) {
  if (o.inputs.size() <= i) input_error("missing input document " + std::to_string(i + 1) + " (" + join(allowed) + ")");
  Document d = io::read_document(o.inputs[i]);
  if (std::find(allowed.begin(), allowed.end(), d.kind) == allowed.end())
    input_error(o.inputs[i] + ": /kind: expected " + join(allowed) + ", got " + io::kind_name(d.kind));
  return d;
}

void expect_inputs(const Options& o, size_t n) {
  if (o.inputs.size() != n)
    input_error("expected " + std::to_string(n) + " input document(s), got " + std::to_string(o.inputs.size()));
}

Json dims_json(const Cohomology& h, int from, int to) {
  Json out = Json::object();
  for (int n = from; n <= to; ++n) out[std::to_string(n)] = h.dim(n);
  return out;
}

Json complex_dims(const Complex& c) {
  Json out = Json::object();
  if (!c.empty())
    for (int n = c.lower_bound(); n <= c.top(); ++n) out[std::to_string(n)] = c.dim(n);
  return out;
}

std::string cohomology_line(const Cohomology& h, int from, int to) {
  std::string s;
  for (int n = from; n <= to; ++n) s += (s.empty() ? "" : ", ") + ("H^" + std::to_string(n) + " = " + std::to_string(h.dim(n)));
  return s.empty() ? "H = 0" : s;
}

Complex complex_input(const Document& d) {
  return d.kind == Kind::CDGA ? io::cdga_from_json(d.payload, d.payload_at()).complex()
                              : io::complex_from_json(d.payload, d.payload_at());
}

// ---------------------------------------------------------------------------
// Commands

Report cohomology_cmd(const Options& o) {
  expect_inputs(o, 1);
  const Document d = input(o, 0, {Kind::Complex, Kind::CDGA});
  const Complex c = complex_input(d);
  const Cohomology h = cohomology(c);
  Report r;
  r.payload["input"] = io::kind_name(d.kind);
  r.payload["dims"] = complex_dims(c);
  const int lo = c.empty() ? 0 : c.lower_bound(), hi = c.empty() ? -1 : c.top();
  r.payload["cohomology"] = dims_json(h, lo, hi);
  r.summary(cohomology_line(h, lo, hi));
  return r;
}

Report quasi_iso_cmd(const Options& o) {
  expect_inputs(o, 1);
  const Document d = input(o, 0, {Kind::ChainMap});
  const ChainMap f = io::chain_map_from_json(d.payload, d.payload_at());
  const QuasiIsoReport q = is_quasi_iso(f, o.degree_cap);
  Report r;
  r.payload["quasi_iso"] = q.quasi_iso;
  r.payload["degrees"] = {q.min_degree, q.max_degree};
  r.payload["failing_degrees"] = q.failing_degrees;
  const Cohomology hs = cohomology(f.source()), ht = cohomology(f.target());
  r.payload["source_cohomology"] = dims_json(hs, q.min_degree, q.max_degree);
  r.payload["target_cohomology"] = dims_json(ht, q.min_degree, q.max_degree);
  r.summary(q.quasi_iso ? "quasi-isomorphism in degrees " + std::to_string(q.min_degree) + ".." + std::to_string(q.max_degree)
                        : "not a quasi-isomorphism");
  r.status = q.quasi_iso ? kOk : kNegative;
  return r;
}

Report dold_kan_cmd(const Options& o) {
  expect_inputs(o, 1);
  const Document d = input(o, 0, {Kind::Complex, Kind::CDGA});
  const Complex c = complex_input(d);
  if (!c.empty() && c.lower_bound() < 0) input_error(d.payload_at() + ": dold-kan needs a complex in degrees >= 0");
  const int top = c.empty() ? 0 : c.top();
  const int n = o.degree_cap.value_or(top);
  const CosimplicialModule dk = d.kind == Kind::CDGA
                                    ? dold_kan_D(io::cdga_from_json(d.payload, d.payload_at()), n).module()
                                    : dold_kan_D(c, n);
  const Normalized norm = normalize(dk);
  Report r;
  r.payload["truncation"] = n;
  Json levels = Json::array(), normalized = Json::array();
  bool iso = true;
  for (int k = 0; k <= n; ++k) {
    levels.push_back(dk.level(k).total_dim());
    Index nk = 0;
    for (int j = 0; j < norm.double_complex.rows(); ++j) nk += norm.double_complex.dim(k, norm.double_complex.row_lower + j);
    normalized.push_back(nk);
    iso = iso && nk == c.dim(k);
  }
  r.payload["level_dims"] = std::move(levels);
  r.payload["normalized_dims"] = std::move(normalized);
  const Cohomology hc = cohomology(c), ht = cohomology(tot(norm.double_complex));
  r.payload["cohomology"] = dims_json(hc, 0, top);
  r.payload["normalized_cohomology"] = dims_json(ht, 0, top);
  for (int k = 0; k <= top; ++k) iso = iso && hc.dim(k) == ht.dim(k);
  r.payload["round_trip"] = iso;
  r.summary(iso ? "N(D(C)) recovers C degreewise and in cohomology" : "round trip failed");
  r.status = iso ? kOk : kNegative;
  return r;
}

Report tot_n_cmd(const Options& o) {
  expect_inputs(o, 1);
  const Document d = input(o, 0, {Kind::Cosimplicial});
  const io::CosimplicialValue c = io::cosimplicial_from_json(d.payload, d.payload_at());
  const Normalized norm = normalize(c.module);
  const Complex t = tot(norm.double_complex);
  const Cohomology h = cohomology(t);
  Report r;
  r.payload["truncation"] = c.module.truncation();
  r.payload["reliable_through"] = norm.reliable_through;
  r.payload["dims"] = complex_dims(t);
  const int lo = t.empty() ? 0 : t.lower_bound(), hi = t.empty() ? -1 : t.top();
  r.payload["cohomology"] = dims_json(h, lo, hi);
  r.summary(cohomology_line(h, lo, std::min(hi, norm.reliable_through)) + " (reliable through degree " +
            std::to_string(norm.reliable_through) + ")");
  return r;
}

Report thom_cmd(const Options& o) {
  expect_inputs(o, 1);
  const Document d = input(o, 0, {Kind::ThRequest, Kind::Cosimplicial});
  io::ThRequest req;
  if (d.kind == Kind::ThRequest) req = io::th_request_from_json(d.payload, d.payload_at());
  else req.cosimplicial = io::cosimplicial_from_json(d.payload, d.payload_at());
  if (!req.cosimplicial.algebra) input_error(d.payload_at() + ": thom needs a cosimplicial algebra (\"algebra\": true)");
  const std::optional<int> m_opt = o.degree_cap ? o.degree_cap : req.degree_cap;
  if (!m_opt) input_error("thom needs a degree cap (--degree-cap or degree_cap)");
  const int m = *m_opt;
  const int w = o.weight_cap.value_or(req.weight_cap.value_or(m + 2));
  const ThomSullivan t = th(*req.cosimplicial.algebra, m, w);
  const IntegrationMap im = integration_map(t);
  Report r;
  r.payload["degree_cap"] = m;
  r.payload["weight_cap"] = w;
  r.payload["th_dims"] = complex_dims(t.complex());
  r.payload["th_cohomology"] = dims_json(cohomology(t.complex()), 0, m);
  r.payload["tot_cohomology"] = dims_json(cohomology(im.tot), 0, m);
  r.payload["chain_map"] = im.is_chain_map();
  r.payload["chain_failures"] = im.chain_failures;
  bool ok = im.is_chain_map();
  if (ok) {
    const QuasiIsoReport q = is_quasi_iso(im.map, m);
    r.payload["failing_degrees"] = q.failing_degrees;
    ok = q.quasi_iso;
  }
  r.payload["quasi_iso"] = ok;
  r.summary(ok ? "integration map: quasi-isomorphism in degrees ≤ " + std::to_string(m)
               : std::string(im.is_chain_map() ? "integration map: not a quasi-isomorphism"
                                               : "integration map: not a chain map"));
  r.status = ok ? kOk : kNegative;
  return r;
}

Json page_json(const SpectralPage& page) {
  Json j;
  j["r"] = page.r;
  Json entries = Json::array();
  for (int n = page.lower; n <= page.top; ++n)
    for (int p = page.p_min; p <= page.p_max; ++p) {
      const Index dim = page.dim(p, n);
      if (dim == 0) continue;
      entries.push_back({{"p", p}, {"n", n}, {"dim", dim}});
    }
  j["entries"] = std::move(entries);
  j["differential_vanishes"] = page.differential_vanishes();
  return j;
}

Report spectral_cmd(const Options& o) {
  expect_inputs(o, 1);
  const Document d = input(o, 0, {Kind::FilteredComplex});
  const FilteredComplex fc = io::filtered_from_json(d.payload, d.payload_at());
  const int r_max = o.r_max.value_or(2);
  if (r_max < 0) input_error("--r-max must be >= 0");
  Report r;
  r.payload["r_max"] = r_max;
  Json pages = Json::array();
  for (const SpectralPage& p : spectral_sequence(fc, r_max)) pages.push_back(page_json(p));
  r.payload["pages"] = std::move(pages);
  const int deg = degeneration_page(fc);
  r.payload["degeneration_page"] = deg;
  r.summary("degenerates at E_" + std::to_string(deg));
  return r;
}

Json charpoly_json(const std::vector<Rational>& c) {
  Json out = Json::array();
  for (const Rational& x : c) out.push_back(to_string(x));
  return out;
}

Report mixedness_cmd(const Options& o) {
  expect_inputs(o, 2);
  const Document dw = input(o, 0, {Kind::FilteredComplex});
  const Document df = input(o, 1, {Kind::Frobenius});
  const FilteredComplex fc = io::filtered_from_json(dw.payload, dw.payload_at());
  const FrobeniusOperator f = io::frobenius_from_json(df.payload, df.payload_at());
  validate_frobenius(fc.complex(), f);
  const MixednessReport m = mixedness_check(fc, f, o.precision);
  Report r;
  Json slots = Json::array();
  for (const MixednessSlot& s : m.slots) {
    Json j;
    j["p"] = s.p;
    j["degree"] = s.degree;
    j["weight"] = s.weight;
    j["dim"] = s.dim;
    j["purity"] = purity_name(s.purity.verdict);
    j["charpoly"] = charpoly_json(s.purity.charpoly);
    if (!s.purity.reason.empty()) j["reason"] = s.purity.reason;
    if (!s.purity.moduli.empty()) j["moduli"] = s.purity.moduli;
    slots.push_back(std::move(j));
  }
  r.payload["q"] = f.q;
  r.payload["slots"] = std::move(slots);
  const char* verdict = m.verdict == Purity::Pure ? "mixed" : m.verdict == Purity::Impure ? "not mixed" : "undecided";
  r.payload["verdict"] = verdict;
  if (m.mixed()) r.payload["degeneration_page"] = degeneration_page(fc);
  r.summary(verdict);
  r.status = m.verdict == Purity::Impure ? kNegative : kOk;
  return r;
}

Report er_quasi_iso_cmd(const Options& o) {
  expect_inputs(o, 3);
  const Document ds = input(o, 0, {Kind::FilteredComplex});
  const Document dt = input(o, 1, {Kind::FilteredComplex});
  const Document dm = input(o, 2, {Kind::ChainMap});
  const FilteredComplex s = io::filtered_from_json(ds.payload, ds.payload_at());
  const FilteredComplex t = io::filtered_from_json(dt.payload, dt.payload_at());
  const ChainMap f = io::chain_map_from_json(dm.payload, dm.payload_at());
  if (!(f.source() == s.complex())) input_error(o.inputs[2] + ": /payload/source: differs from the source filtered complex");
  if (!(f.target() == t.complex())) input_error(o.inputs[2] + ": /payload/target: differs from the target filtered complex");
  const int page = o.r_max.value_or(1);
  if (page < 0) input_error("--r-max must be >= 0");
  const ErQuasiIsoReport e = is_er_quasi_iso(s, t, f, page, o.degree_cap);
  Report r;
  r.payload["r"] = page;
  r.payload["holds"] = e.holds;
  r.payload["page"] = e.page;
  Json failing = Json::array();
  for (const auto& [p, n] : e.failing) failing.push_back({{"p", p}, {"n", n}});
  r.payload["failing"] = std::move(failing);
  r.summary(std::string(e.holds ? "" : "not ") + "an E_" + std::to_string(page) + "-quasi-isomorphism (isomorphism on E_" +
            std::to_string(e.page) + ")");
  r.status = e.holds ? kOk : kNegative;
  return r;
}

io::BarRequest bar_input(const Options& o) {
  expect_inputs(o, 1);
  const Document d = input(o, 0, {Kind::BarRequest, Kind::CDGA});
  if (d.kind == Kind::BarRequest) return io::bar_request_from_json(d.payload, d.payload_at());
  return io::BarRequest{io::cdga_from_json(d.payload, d.payload_at()), std::nullopt};
}

Report bar_cmd(const Options& o) {
  const io::BarRequest req = bar_input(o);
  const int cap = o.word_cap.value_or(req.word_cap.value_or(3));
  if (cap < 0) input_error("--word-cap must be >= 0");
  const BarComplex b = bar(req.algebra, cap);
  Report r;
  r.payload["word_cap"] = cap;
  r.payload["dims"] = complex_dims(b.complex());
  const Cohomology h = cohomology(b.complex());
  const int lo = b.complex().empty() ? 0 : b.complex().lower_bound();
  const int hi = b.complex().empty() ? -1 : b.complex().top();
  r.payload["cohomology"] = dims_json(h, lo, hi);
  r.payload["exact_through"] = b.exact_through();
  r.payload["reduced"] = b.reduced();
  if (b.reduced()) {
    const HopfH0 hopf = h0_hopf(b);
    Json j;
    j["dim"] = hopf.dim();
    j["lengths"] = hopf.length;
    j["indecomposables_by_length"] = hopf.primitive_dims();
    j["failures"] = hopf.failures();
    r.payload["h0"] = std::move(j);
  }
  if (b.exact_through() >= 0)
    r.summary(cohomology_line(h, lo, std::min(hi, b.exact_through())) + " (exact through degree " +
              std::to_string(b.exact_through()) + ")");
  else if (b.reduced())
    r.summary("H^0 = " + std::to_string(h.dim(0)) + " (the length <= " + std::to_string(cap) + " part of H^0(B))");
  else
    r.summary(cohomology_line(h, lo, hi) + " (capped complex only)");
  return r;
}

Report pi_cmd(const Options& o) {
  const io::BarRequest req = bar_input(o);
  const int cap = o.word_cap.value_or(req.word_cap.value_or(3));
  const int n_max = o.degree_cap.value_or(3);
  if (n_max < 2) input_error("--degree-cap must be >= 2 for pi");
  Report r;
  r.payload["word_cap"] = cap;
  Json groups = Json::array();
  for (int n = 2; n <= n_max; ++n) {
    const HomotopyGroup g = pi_n(req.algebra, n, cap);
    groups.push_back({{"n", n}, {"rank", g.rank}, {"exact", g.exact}, {"provenance", g.provenance}});
    r.summary("pi_" + std::to_string(n) + " rank " + std::to_string(g.rank) + (g.exact ? "" : " (within the word cap)"));
  }
  r.payload["groups"] = std::move(groups);
  return r;
}

Json section_json(const LaurentVector& s) {
  Json out = Json::array();
  for (const Laurent& l : s) out.push_back(l.to_string());
  return out;
}

Report section_cmd(const Options& o) {
  expect_inputs(o, 1);
  const Document d = input(o, 0, {Kind::SectionRequest, Kind::ConnectionAlgebra});
  io::SectionRequest req;
  if (d.kind == Kind::SectionRequest) req = io::section_request_from_json(d.payload, d.payload_at());
  else req.algebra = io::connection_from_json(d.payload, d.payload_at());
  const int window = o.window.value_or(req.window.value_or(2));
  const int bound = o.enum_bound.value_or(req.enum_bound.value_or(4));
  if (window < 0) input_error("--window must be >= 0");
  Report r;
  r.payload["window"] = window;
  r.payload["enum_bound"] = bound;
  SectionResult s;
  std::string unknown_reason;
  try {
    s = section_check(req.algebra, window, bound);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EnumerationBoundExceeded) throw;
    s.certificate = SectionCertificate::Unknown;
    s.window = window;
    unknown_reason = e.detail();
  }
  r.payload["certificate"] = certificate_name(s.certificate);
  Json sections = Json::array();
  for (const auto& x : s.sections) sections.push_back(section_json(x));
  r.payload["sections"] = std::move(sections);
  r.payload["linear_dim"] = s.linear_dim;
  r.payload["window_independent"] = s.window_independent;
  if (!unknown_reason.empty()) r.payload["reason"] = unknown_reason;
  const bool coh = cohomology_section_check(req.algebra, window);
  r.payload["cohomology_section"] = coh;
  switch (s.certificate) {
    case SectionCertificate::Found:
      r.summary(std::to_string(s.sections.size()) + " section(s)");
      break;
    case SectionCertificate::NoneLinear:
      r.summary(std::string("no section: the linear constraints are inconsistent") +
                (s.window_independent ? " for every window" : " in this window"));
      r.status = kNegative;
      break;
    case SectionCertificate::NoneInWindow:
      r.summary("no section with exponents in [-" + std::to_string(window) + ", " + std::to_string(window) + "]");
      r.status = kNegative;
      break;
    case SectionCertificate::Unknown:
      r.summary("unknown: the solution set could not be enumerated");
      break;
  }
  r.summary(std::string("cohomology section: ") + (coh ? "exists" : "none in window"));
  return r;
}

const std::map<std::string, std::function<Report(const Options&)>>& commands() {
  static const std::map<std::string, std::function<Report(const Options&)>> table = {
      {"cohomology", cohomology_cmd}, {"quasi-iso", quasi_iso_cmd},      {"dold-kan", dold_kan_cmd},
      {"tot-n", tot_n_cmd},           {"thom", thom_cmd},                {"spectral", spectral_cmd},
      {"mixedness", mixedness_cmd},   {"er-quasi-iso", er_quasi_iso_cmd}, {"bar", bar_cmd},
      {"pi", pi_cmd},                 {"section-check", section_cmd},
  };
  return table;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with cochain algebras, cosimplicial objects and weights", "rht"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, fn] : commands()) {
    CLI::App* s = app.add_subcommand(name);
    s->add_option("inputs", o.inputs, "input documents")->required();
    s->add_option("--degree-cap", o.degree_cap);
    s->add_option("--weight-cap", o.weight_cap);
    s->add_option("--word-cap", o.word_cap);
    s->add_option("--window", o.window);
    s->add_option("--r-max", o.r_max);
    s->add_option("--enum-bound", o.enum_bound);
    s->add_option("--precision", o.precision)->check(CLI::Range(16u, 100000u));
    s->add_option("--output", o.output);
    subs[name] = s;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  std::string name;
  for (const auto& [n, s] : subs)
    if (s->parsed()) name = n;
  try {
    Report r = commands().at(name)(o);
    Json payload;
    payload["command"] = name;
    for (auto& [k, v] : r.payload.items()) payload[k] = v;
    payload["status"] = r.status;
    const std::string text = io::serialize(io::wrap(Kind::Report, std::move(payload)));
    if (o.output.empty()) {
      out << text;
    } else {
      std::ofstream f(o.output, std::ios::binary);
      if (!f) input_error(o.output + ": cannot open for writing");
      f << text;
    }
    return r.status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace rht::cli
