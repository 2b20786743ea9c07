#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sraniso/complex_io.hpp"
#include "sraniso/sraniso.hpp"

#ifndef SRANISO_VERSION
#define SRANISO_VERSION "0.0.0"
#endif

using namespace sraniso;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "sraniso-report/1";

struct RunConfig {
  std::string command;
  std::string complex_path;
  std::uint32_t p = 2;
  int ext_degree = 0;  ///< 0 selects the default for p
  std::string seeds_text = "2";
  std::vector<std::uint64_t> seeds;
  double budget = 0;
  std::string out;
  std::string format = "json";

  std::string family = "thm86";
  int max_order = 4;
  int max_degree = -1;
  int samples = 0;
  std::string m_range = "3..8";
  std::string chars = "2";
  std::string property = "both";
  std::string sigma, tau;
  bool override_limits = false;

  FieldConfig field() const {
    FieldConfig f = FieldConfig::with_default_degree(p);
    if (ext_degree > 0) f.w = ext_degree;
    return f;
  }
};

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::ConfigError, flag + ": cannot parse \"" + item + "\"");
    }
  }
  if (out.empty()) fail(ErrorKind::ConfigError, flag + " is empty");
  return out;
}

/// "--seeds K" runs seeds 1..K; "--seeds S1,S2,..." lists them.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  const auto values = parse_int_list(text, "--seeds");
  std::vector<std::uint64_t> seeds;
  if (text.find(',') == std::string::npos) {
    if (values[0] < 1) fail(ErrorKind::ConfigError, "--seeds needs a positive count");
    for (int s = 1; s <= values[0]; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  } else {
    for (int v : values) {
      if (v < 0) fail(ErrorKind::ConfigError, "seeds are nonnegative");
      seeds.push_back(static_cast<std::uint64_t>(v));
    }
  }
  return seeds;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) fail(ErrorKind::ConfigError, "--m-range must look like A..B");
  const auto a = parse_int_list(text.substr(0, dots), "--m-range");
  const auto b = parse_int_list(text.substr(dots + 2), "--m-range");
  if (a.size() != 1 || b.size() != 1 || a[0] > b[0]) fail(ErrorKind::ConfigError, "--m-range must look like A..B with A <= B");
  return {a[0], b[0]};
}

void require_seeds(const RunConfig& c, std::size_t k) {
  if (c.seeds.size() < k) fail(ErrorKind::ConfigError, "randomized checks need at least " + std::to_string(k) + " seeds");
}

SimplicialComplex require_complex(const RunConfig& c) {
  if (c.complex_path.empty()) fail(ErrorKind::ConfigError, "--complex is required for " + c.command);
  return load_complex(c.complex_path).complex;
}

Json face_json(const Face& f) { return Json(f); }

/// Accumulates checks and renders the report.
class Report {
 public:
  explicit Report(const RunConfig& c) : cfg_(c) {}

  Json& add(const std::string& name, bool pass) {
    Json j;
    j["name"] = name;
    j["pass"] = pass;
    checks_.push_back(std::move(j));
    return checks_.back();
  }

  Json& extra() { return extra_; }

  bool pass() const {
    for (const auto& c : checks_)
      if (!c["pass"].get<bool>()) return false;
    return true;
  }

  Json to_json() const {
    Json j;
    j["schema"] = kSchema;
    j["version"] = SRANISO_VERSION;
    j["command"] = cfg_.command;
    Json config;
    if (!cfg_.complex_path.empty()) config["complex"] = cfg_.complex_path;
    config["char"] = cfg_.p;
    config["ext_degree"] = cfg_.field().w;
    config["seeds"] = cfg_.seeds;
    config["budget"] = cfg_.budget;
    j["config"] = config;
    j["field_modulus"] = FiniteField(cfg_.p, cfg_.field().w).modulus_string();
    for (const auto& [k, v] : extra_.items()) j[k] = v;
    j["checks"] = checks_;
    j["pass"] = pass();
    return j;
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "command: " << cfg_.command << "\n";
    out << "version: " << SRANISO_VERSION << "\n";
    out << "field: GF(" << cfg_.p << "^" << cfg_.field().w << ") modulus " << FiniteField(cfg_.p, cfg_.field().w).modulus_string()
        << "\n";
    for (const auto& [k, v] : extra_.items()) out << k << ": " << v.dump() << "\n";
    for (const auto& c : checks_) {
      out << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>();
      for (const auto& [k, v] : c.items())
        if (k != "name" && k != "pass") out << " " << k << "=" << v.dump();
      out << "\n";
    }
    out << "pass: " << (pass() ? "true" : "false") << "\n";
    return out.str();
  }

 private:
  const RunConfig& cfg_;
  Json checks_ = Json::array();
  Json extra_ = Json::object();
};

bool scalar_array(const Json& j) {
  if (!j.is_array() || j.empty()) return j.is_array();
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

/// Pretty printer that keeps arrays of scalars on one line.
void render(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (scalar_array(j)) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      out += j[i].dump();
    }
    out += "]";
  } else if (j.is_array()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      render(j[i], indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      out += pad + Json(k).dump() + ": ";
      render(v, indent + 2, out);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else {
    out += j.dump();
  }
}

void run_hilbert(const RunConfig& c, Report& r) {
  require_seeds(c, 2);
  const auto d = require_complex(c);
  const ReductionContext ctx(d, c.field());
  std::vector<std::uint64_t> used;
  const auto hf = hilbert_function(ctx, c.seeds, &used);
  const auto h = h_vector(d);
  auto& j = r.add("hilbert function equals h-vector", hf == h);
  j["hilbert"] = hf;
  j["h_vector"] = h;
  j["seeds_used"] = used;
}

void run_psi_crosscheck(const RunConfig& c, Report& r) {
  const auto d = require_complex(c);
  const ReductionContext ctx(d, c.field());
  const int r1 = ctx.m() + 1, r2 = ctx.m() + 2;
  auto record = [&](const std::string& name, const RationalFunction& path, const RationalFunction& s1, const RationalFunction& s2) {
    const bool ok = rf_equals(path, s1) && rf_equals(s1, s2);
    auto& j = r.add(name, ok);
    if (!ok) j["witness"] = Json{{"facet_path", path.to_string()}, {"sum_formula", s1.to_string()}, {"sum_formula_other_column", s2.to_string()}};
  };
  for (const auto& sigma : d.facets())
    record("facet " + face_to_string(sigma), psi_facet(ctx, sigma), psi_sum_formula(ctx, {}, sigma, r1), psi_sum_formula(ctx, {}, sigma, r2));
  for (const auto& ridge : d.faces_of_size(ctx.n()))
    for (int v : ridge) {
      Face rest;
      for (int w : ridge)
        if (w != v) rest.push_back(w);
      record("ridge " + face_to_string(ridge) + " squared " + std::to_string(v), psi_codim1_square(ctx, ridge, v),
             psi_sum_formula(ctx, {v}, rest, r1), psi_sum_formula(ctx, {v}, rest, r2));
    }
}

void square_check(Report& r, const std::string& name, const SquareIdentityReport& rep) {
  auto& j = r.add(name, rep.holds);
  if (!rep.holds) j["witness"] = Json{{"lhs", rep.lhs.to_string()}, {"rhs", rep.rhs.to_string()}};
}

/// Sorted sequences of length len over 1..m.
std::vector<std::vector<int>> multisets(int m, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= m; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

std::string seq_string(const std::vector<int>& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + ")";
}

void run_identities(const RunConfig& c, Report& r) {
  if (c.family == "thm86") {
    IdentityOptions opt;
    opt.seeds = c.seeds;
    opt.budget_seconds = c.budget;
    if (c.ext_degree > 0) opt.ext_degree = c.ext_degree;
    for (int h = 2; h <= c.max_order; ++h)
      for (MinorFamily fam : {MinorFamily::N, MinorFamily::P, MinorFamily::Q}) {
        const bool even = fam != MinorFamily::Q;
        if ((h % 2 == 0) != even) continue;
        const auto rep = verify_minor_identity(h, fam, opt);
        auto& j = r.add(std::string(to_string(fam)) + std::to_string(h), rep.holds);
        j["method"] = rep.method;
        j["lhs_terms"] = rep.lhs_terms;
        j["rhs_terms"] = rep.rhs_terms;
        if (!rep.seeds.empty()) j["seeds"] = rep.seeds;
        if (!rep.holds) j["witness"] = Json{{"lhs", rep.lhs}, {"rhs", rep.rhs}};
      }
    return;
  }
  const auto d = require_complex(c);
  const ReductionContext ctx(d, c.field());
  if (c.family == "prop51") {
    const auto faces = d.faces_of_size((ctx.n() + 1) / 2);
    for (const auto& sigma : faces)
      for (const auto& tau : faces)
        square_check(r, "sigma " + face_to_string(sigma) + " tau " + face_to_string(tau), verify_square_identity_odd(ctx, sigma, tau));
  } else if (c.family == "prop57") {
    const int l = ctx.n() / 2;
    for (const auto& top : d.faces_of_size(l + 1))
      for (int p : top) {
        Face sigma;
        for (int v : top)
          if (v != p) sigma.push_back(v);
        for (const auto& tau : d.faces_of_size(l)) {
          if (std::find(tau.begin(), tau.end(), p) != tau.end()) continue;
          square_check(r, "p " + std::to_string(p) + " sigma " + face_to_string(sigma) + " tau " + face_to_string(tau),
                       verify_square_identity_even(ctx, p, sigma, tau));
        }
      }
  } else {
    ProbeLimits lim;
    lim.override_limits = c.override_limits;
    const auto seqs = multisets(ctx.m(), ctx.n() + 1);
    for (const auto& sigma : seqs)
      for (const auto& tau : seqs) {
        std::map<int, int> count;
        for (int v : sigma) ++count[v];
        for (int v : tau) ++count[v];
        if (!std::all_of(count.begin(), count.end(), [](const auto& kv) { return kv.second % 2 == 0; })) continue;
        const auto probe = probe_conjecture(ctx, sigma, tau, lim);
        auto& j = r.add("sigma " + seq_string(sigma) + " tau " + seq_string(tau), probe.equal);
        if (!probe.equal) j["witness"] = Json{{"lhs", probe.lhs.to_string()}, {"rhs", probe.rhs.to_string()}};
      }
  }
}

void run_anisotropy(const RunConfig& c, Report& r) {
  require_seeds(c, 2);
  const auto d = require_complex(c);
  const ReductionContext ctx(d, c.field());
  const int l = (ctx.n() + 1) / 2;
  const int top = c.max_degree < 0 ? l : c.max_degree;
  for (int j = 0; j <= top; ++j) {
    for (const auto& face : squarefree_basis(ctx, j, c.seeds)) {
      const auto u = element_of_face(ctx, face);
      const std::string name = "basis element x" + face_to_string(face);
      try {
        const auto cert = nonzero_square_certificate(ctx, u, c.seeds);
        const bool ok = certificate_derivative_matches(ctx, u, cert);
        auto& row = r.add(name, ok);
        row["sigma"] = face_json(cert.sigma);
        if (cert.p) row["p"] = *cert.p;
        row["h"] = face_json(cert.h);
        if (!ok) row["witness"] = Json{{"value", cert.value.to_string()}};
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoCertificateFound) throw;
        r.add(name, false)["witness"] = e.what();
      }
    }
    if (c.samples > 0 && j > 0) {
      const auto s = sample_combination_certificates(ctx, j, c.samples, c.seeds.front(), c.seeds);
      auto& row = r.add("random combinations in degree " + std::to_string(j), s.certified == s.samples);
      row["samples"] = s.samples;
      row["certified"] = s.certified;
    }
  }
}

void run_polygon_suite(const RunConfig& c, Report& r) {
  const auto [lo, hi] = parse_range(c.m_range);
  if (lo < 3) fail(ErrorKind::TooSmall, "polygons need m >= 3");
  const auto chars = parse_int_list(c.chars, "--chars");
  for (int p : chars) {
    if (p < 2 || !is_prime(static_cast<std::uint32_t>(p))) fail(ErrorKind::ConfigError, "--chars entries must be primes");
    for (int m = lo; m <= hi; ++m) {
      const ReductionContext ctx(polygon(m), FieldConfig::with_default_degree(static_cast<std::uint32_t>(p)));
      const std::string tag = "m=" + std::to_string(m) + " char " + std::to_string(p);
      const auto det = polygon_gram_det(ctx);
      const auto closed = polygon_det_closed_form(ctx);
      auto& dj = r.add("gram determinant closed form " + tag, rf_equals(det, closed));
      if (!rf_equals(det, closed)) dj["witness"] = Json{{"determinant", det.to_string()}, {"closed_form", closed.to_string()}};
      const auto ob = polygon_orthogonal_basis(ctx);
      bool ok = true;
      Json witness;
      for (std::size_t i = 0; i < ob.pairing.size() && ok; ++i)
        for (std::size_t k = 0; k < ob.pairing.size() && ok; ++k) {
          const auto want =
              i == k ? polygon_orthogonal_diagonal(static_cast<std::uint32_t>(p), static_cast<int>(i) + 1) : RationalFunction::zero(static_cast<std::uint32_t>(p));
          if (!rf_equals(ob.pairing[i][k], want)) {
            ok = false;
            witness = Json{{"entry", {i + 1, k + 1}}, {"value", ob.pairing[i][k].to_string()}, {"expected", want.to_string()}};
          }
        }
      auto& oj = r.add("orthogonal basis " + tag, ok);
      if (!ok) oj["witness"] = witness;
      if (m >= 4) {
        const auto edges = recover_polygon_from_form(polygon_gram(ctx).entries, m, static_cast<std::uint32_t>(p));
        std::vector<Face> want;
        for (int i = 1; i < m; ++i) want.push_back({i, i + 1});
        want.push_back({1, m});
        std::sort(want.begin(), want.end());
        auto& ej = r.add("edges from pairing determinant " + tag, edges == want);
        if (edges != want) ej["witness"] = Json{{"recovered", edges}};
      }
    }
  }
  for (int m = lo; m <= hi; ++m) {
    const auto proof = polygon_anisotropy_proof(m);
    auto& j = r.add("distinct initial terms m=" + std::to_string(m), proof.holds);
    if (!proof.holds) {
      Json rows = Json::array();
      for (const auto& row : proof.rows) rows.push_back(Json{{"t", row.t}, {"initial", row.initial.to_string()}});
      j["witness"] = rows;
    }
  }
}

Json rank_table(const std::vector<RankRow>& rows) {
  Json t = Json::array();
  for (const auto& row : rows)
    t.push_back(Json{{"from", row.from}, {"to", row.to}, {"dim_from", row.dim_from}, {"dim_to", row.dim_to}, {"rank", row.rank}, {"ok", row.ok}});
  return t;
}

void run_lefschetz(const RunConfig& c, Report& r) {
  require_seeds(c, 2);
  const auto s = build_suspension_context(require_complex(c), c.field());
  auto emit = [&](const std::string& name, const LefschetzReport& rep) {
    auto& j = r.add(name, rep.holds);
    j["dims"] = rep.dims;
    j["seeds_used"] = rep.seeds;
    j["table"] = rank_table(rep.table);
  };
  if (c.property == "wlp" || c.property == "both") emit("weak Lefschetz", check_wlp(s, c.seeds));
  if (c.property == "slp" || c.property == "both") emit("strong Lefschetz", check_slp(s, c.seeds));
}

void run_probe(const RunConfig& c, Report& r) {
  const ReductionContext ctx(require_complex(c), c.field());
  if (c.sigma.empty() || c.tau.empty()) fail(ErrorKind::ConfigError, "--sigma and --tau are required");
  const auto sigma = parse_int_list(c.sigma, "--sigma");
  const auto tau = parse_int_list(c.tau, "--tau");
  ProbeLimits lim;
  lim.override_limits = c.override_limits;
  const auto probe = probe_conjecture(ctx, sigma, tau, lim);
  const auto sym = probe_conjecture_symmetry(ctx, sigma, tau, lim);
  r.extra()["probe"] = Json{{"sigma", sigma},
                            {"tau", tau},
                            {"square_case", probe.square_case},
                            {"lhs", probe.lhs.to_string()},
                            {"predicted", probe.rhs.to_string()},
                            {"equal", probe.equal},
                            {"symmetric", sym.equal}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generic Artinian reductions of simplicial spheres: verification driver"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--complex", cfg.complex_path, "Complex JSON file");
    sub->add_option("--char", cfg.p, "Characteristic")->capture_default_str();
    sub->add_option("--ext-degree", cfg.ext_degree, "Extension degree w of GF(p^w); 0 picks the default");
    sub->add_option("--seeds", cfg.seeds_text, "Seed count K, or a list S1,S2,...")->capture_default_str();
    sub->add_option("--budget", cfg.budget, "Time budget in seconds for expensive identities; 0 = none");
    sub->add_option("--out", cfg.out, "Write the report here instead of stdout");
    sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    return sub;
  };

  common(app.add_subcommand("hilbert", "Hilbert function of the generic reduction against the h-vector"));
  common(app.add_subcommand("psi-crosscheck", "Facet-path socle values against the sum formula"));
  auto* ident = common(app.add_subcommand("verify-identities", "Differential-operator identity suites"));
  ident->add_option("--family", cfg.family, "thm86 (minor identities), prop51 (odd squares), prop57 (even squares), conj141 (square-case probes)")
      ->check(CLI::IsMember({"thm86", "prop51", "prop57", "conj141"}))
      ->capture_default_str();
  ident->add_option("--max-order", cfg.max_order, "Largest minor size h for thm86")->capture_default_str();
  ident->add_flag("--override-limits", cfg.override_limits, "Allow conj141 probes on larger complexes");
  auto* aniso = common(app.add_subcommand("anisotropy", "Nonzero-square certificates for basis elements"));
  aniso->add_option("--max-degree", cfg.max_degree, "Largest degree to certify; defaults to (n+1)/2");
  aniso->add_option("--samples", cfg.samples, "Random combinations to certify per degree")->capture_default_str();
  auto* poly = common(app.add_subcommand("polygon-suite", "Pairing matrix checks on m-gons"));
  poly->add_option("--m-range", cfg.m_range, "Range A..B of polygon sizes")->capture_default_str();
  poly->add_option("--chars", cfg.chars, "Comma-separated characteristics")->capture_default_str();
  auto* lef = common(app.add_subcommand("lefschetz", "Weak and strong Lefschetz rank tables"));
  lef->add_option("--property", cfg.property, "wlp, slp or both")->check(CLI::IsMember({"wlp", "slp", "both"}))->capture_default_str();
  auto* probe = common(app.add_subcommand("conj141-probe", "Report one conjectural derivative value"));
  probe->add_option("--sigma", cfg.sigma, "Operator sequence, e.g. 1,3");
  probe->add_option("--tau", cfg.tau, "Monomial sequence, e.g. 2,4");
  probe->add_flag("--override-limits", cfg.override_limits, "Allow larger complexes");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.seeds = parse_seeds(cfg.seeds_text);
    if (!is_prime(cfg.p)) fail(ErrorKind::ConfigError, "--char must be prime");
    if (cfg.ext_degree < 0 || cfg.ext_degree > 32) fail(ErrorKind::ConfigError, "--ext-degree must lie in 0..32");
    if (cfg.budget < 0) fail(ErrorKind::ConfigError, "--budget must be nonnegative");
    Report report(cfg);
    if (cfg.command == "hilbert") run_hilbert(cfg, report);
    else if (cfg.command == "psi-crosscheck") run_psi_crosscheck(cfg, report);
    else if (cfg.command == "verify-identities") run_identities(cfg, report);
    else if (cfg.command == "anisotropy") run_anisotropy(cfg, report);
    else if (cfg.command == "polygon-suite") run_polygon_suite(cfg, report);
    else if (cfg.command == "lefschetz") run_lefschetz(cfg, report);
    else run_probe(cfg, report);

    std::string text;
    if (cfg.format == "json") {
      render(report.to_json(), 0, text);
      text += "\n";
    } else {
      text = report.to_text();
    }
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.out);
      if (!out) fail(ErrorKind::ConfigError, "cannot write " + cfg.out);
      out << text;
    }
    return report.pass() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
