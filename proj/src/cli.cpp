#include "singmod/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "singmod/arith.hpp"
#include "singmod/constant_verifier.hpp"
#include "singmod/eisenstein.hpp"
#include "singmod/error.hpp"
#include "singmod/fourier.hpp"
#include "singmod/jacobi.hpp"
#include "singmod/json_io.hpp"
#include "singmod/lambda.hpp"
#include "singmod/lattice.hpp"
#include "singmod/qseries.hpp"

namespace singmod::cli {
namespace {

using io::Json;

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& values) : values_(values) {}

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ParamError("missing required parameter --" + key);
    return it->second;
  }

  std::string text_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

  long integer(const std::string& key, long lo = std::numeric_limits<long>::min(),
               long hi = std::numeric_limits<long>::max()) const {
    const std::string s = text(key);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParamError("--" + key + " must be an integer, got '" + s + "'");
    }
    if (v < lo || v > hi) {
      throw ParamError("--" + key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
  }

  long integer_or(const std::string& key, long fallback, long lo = std::numeric_limits<long>::min(),
                  long hi = std::numeric_limits<long>::max()) const {
    return has(key) ? integer(key, lo, hi) : fallback;
  }

  long odd_prime(const std::string& key) const {
    const long p = integer(key, 3, 1'000'000);
    if (!is_prime(p)) throw ParamError("--" + key + " must be an odd prime, got " + std::to_string(p));
    return p;
  }

  // "k" or "k/2"; returns 2k.
  long weight_times_two(const std::string& key) const {
    const std::string s = text(key);
    const auto slash = s.find('/');
    Params inner(std::map<std::string, std::string>{{key, s.substr(0, slash)}});
    const long num = inner.integer(key, -100000, 100000);
    if (slash == std::string::npos) return 2 * num;
    if (s.substr(slash + 1) != "2") throw ParamError("--" + key + " must be an integer or a half-integer a/2");
    return num;
  }

  bool flag(const std::string& key) const { return has(key) && text(key) != "false"; }

 private:
  std::map<std::string, std::string> values_;
};

struct Report {
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  Json json;
};

std::string render(const Report& r, OutputFormat format) {
  std::ostringstream os;
  if (format == OutputFormat::json) {
    os << r.json.dump(2) << '\n';
    return os.str();
  }
  if (format == OutputFormat::tsv) {
    for (const auto& n : r.notes) os << "# " << n << '\n';
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "\t" : "") << r.columns[i];
    os << '\n';
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
      os << '\n';
    }
    return os.str();
  }
  for (const auto& n : r.notes) os << n << '\n';
  if (r.columns.empty()) return os.str();
  std::vector<std::size_t> width(r.columns.size());
  for (std::size_t i = 0; i < r.columns.size(); ++i) width[i] = r.columns[i].size();
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += "  ";
      s += cells[i];
      if (i + 1 < cells.size()) s.append(width[i] - cells[i].size(), ' ');
    }
    os << s << '\n';
  };
  line(r.columns);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& row : r.rows) line(row);
  return os.str();
}

std::string inline_matrix(const IntMatrix& m) {
  std::ostringstream os;
  os << m;
  std::string s = os.str();
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json valuation_json(const ExtendedValuation& v) {
  return v.is_infinite() ? Json("inf") : Json(v.value());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot read file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <typename F>
auto parse_file(const std::string& path, F&& convert) {
  const std::string content = read_file(path);
  try {
    return convert(Json::parse(content));
  } catch (const std::exception& e) {
    throw FileError(path + ": " + e.what());
  }
}

lattice::GramMatrix lattice_param(const Params& p) {
  const std::string name = p.text("lattice");
  try {
    return lattice::catalog_lattice(name);
  } catch (const std::invalid_argument&) {
  }
  if (!std::ifstream(name)) {
    throw ParamError("--lattice: '" + name + "' is neither a catalog lattice nor a readable file");
  }
  // A readable file: anything wrong from here on is the file's fault.
  try {
    return lattice::load_lattice(name);
  } catch (const std::invalid_argument& e) {
    throw FileError(name + ": " + e.what());
  }
}

// Integer square matrix in the matrix text format (n, then n rows).
IntMatrix read_square_matrix(const std::string& path) {
  std::istringstream in(read_file(path));
  int n = -1;
  if (!(in >> n) || n < 0) throw FileError(path + ": expected the dimension n first");
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(in >> m(i, j))) throw FileError(path + ": expected n*n integers");
    }
  }
  return m;
}

// "3,4,5" with 1-based node numbers -> 0-based indices.
std::vector<int> index_list(const Params& p, const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(p.text(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(static_cast<int>(Params(std::map<std::string, std::string>{{key, item}}).integer(key, 1, 64)) - 1);
  }
  if (out.empty()) throw ParamError("--" + key + " must list node numbers, e.g. 3,4,5");
  return out;
}

std::optional<lattice::LatticeAutomorphism> automorphism_param(const Params& p, const lattice::GramMatrix& g,
                                                               long prime) {
  std::optional<IntMatrix> u;
  if (p.has("matrix") && p.has("coxeter")) throw ParamError("give only one of --matrix and --coxeter");
  if (p.has("matrix")) u = read_square_matrix(p.text("matrix"));
  if (p.has("coxeter")) {
    try {
      u = lattice::coxeter_element(g, index_list(p, "coxeter"));
    } catch (const std::invalid_argument& e) {
      throw ParamError(std::string("--coxeter: ") + e.what());
    }
  }
  if (!u) return std::nullopt;
  return lattice::verify_automorphism(g, *u, prime);
}

// Degree-1 Siegel/elliptic modular form sources shared by qexp and hecke.
qseries::QExpansion series_param(const Params& p) {
  if (p.has("input")) {
    std::optional<long> w;
    if (p.has("weight")) w = p.weight_times_two("weight");
    return parse_file(p.text("input"), [&](const Json& j) { return io::qexpansion_from_json(j, w); });
  }
  const std::string kind = p.text_or("kind", "eisenstein");
  const long length = p.integer("length", 0, 1'000'000);
  if (kind == "eisenstein") {
    const long k = p.integer("k", 4, 100000);
    if (k % 2 != 0) throw ParamError("--k must be even");
    return qseries::eisenstein_qexp(k, length);
  }
  if (kind == "delta") return qseries::delta_qexp(length);
  throw ParamError("--kind must be eisenstein or delta");
}

std::optional<qseries::ModulusContext> modulus_param(const Params& p) {
  if (!p.has("p")) {
    if (p.has("m")) throw ParamError("--m needs --p");
    return std::nullopt;
  }
  return qseries::ModulusContext(p.odd_prime("p"), p.integer_or("m", 1, 1, 64));
}

Report series_report(const qseries::QExpansion& f) {
  Report r;
  r.columns = {"n", "a(n)"};
  for (long n = 0; n <= f.truncation(); ++n) r.rows.push_back({std::to_string(n), f[n].str()});
  r.json = io::to_json(f);
  return r;
}

// ---------------------------------------------------------------------------

Report cmd_bernoulli(const Params& p) {
  const long max = p.integer("max", 0, 20000);
  const long prime = p.has("valuations-at") ? p.odd_prime("valuations-at") : 0;
  Report r;
  r.columns = {"m", "B_m"};
  if (prime != 0) r.columns.push_back("v_" + std::to_string(prime));
  Json values = Json::array();
  std::vector<std::string> nonzero;
  for (long m = 0; m <= max; m += 2) {
    const BigRational b = bernoulli(m);
    std::vector<std::string> row{std::to_string(m), b.str()};
    Json entry{{"m", m}, {"value", b.str()}};
    if (prime != 0) {
      const auto v = valuation(b, prime);
      row.push_back(v.str());
      entry["valuation"] = valuation_json(v);
      if (m >= 2 && v != ExtendedValuation(0)) nonzero.push_back("m=" + std::to_string(m) + ": " + v.str());
    }
    r.rows.push_back(std::move(row));
    values.push_back(std::move(entry));
  }
  if (prime != 0) {
    std::string note = "nonzero v_" + std::to_string(prime) + "(B_m), 2 <= m <= " + std::to_string(max) + ":";
    for (const auto& s : nonzero) note += " " + s;
    if (nonzero.empty()) note += " none";
    r.notes.push_back(note);
  }
  r.json = {{"bernoulli", values}};
  if (prime != 0) r.json["p"] = prime;
  return r;
}

Report cmd_ckr(const Params& p) {
  const long k = p.integer("k", 2, 10000);
  if (k % 2 != 0) throw ParamError("--k must be even");
  if (p.has("r") == p.has("r-max")) throw ParamError("give exactly one of --r and --r-max");
  long lo = 0, hi = 0;
  if (p.has("r")) {
    lo = hi = p.integer("r", 0);
  } else {
    hi = p.integer("r-max", 0);
  }
  for (long r = lo; r <= hi; ++r) {
    if (r > 0 && !eisenstein::rank_admissible(k, r)) {
      throw ParamError("c_{k,r} is undefined for k = " + std::to_string(k) + ", r = " + std::to_string(r) +
                       " (needs r <= 2k - 1 for odd r, r <= 2k - 2 for even r)");
    }
  }
  const long prime = p.has("p") ? p.odd_prime("p") : 0;
  Report out;
  out.columns = {"r", "c_kr"};
  if (prime != 0) out.columns.push_back("v_" + std::to_string(prime));
  Json values = Json::array();
  for (long r = lo; r <= hi; ++r) {
    const auto c = eisenstein::c_kr(k, r);
    std::vector<std::string> row{std::to_string(r), c.value.str()};
    Json entry{{"k", k}, {"r", r}, {"value", c.value.str()}};
    if (prime != 0) {
      const auto v = valuation(c.value, prime);
      row.push_back(v.str());
      entry["valuation"] = valuation_json(v);
    }
    out.rows.push_back(std::move(row));
    values.push_back(std::move(entry));
  }
  out.json = {{"c_kr", values}};
  return out;
}

Report cmd_profile(const Params& p) {
  const long k = p.integer("k", 2, 10000);
  if (k % 2 != 0) throw ParamError("--k must be even");
  const long prime = p.odd_prime("p");
  const long r_max = p.integer_or("r-max", 2 * k - 1, 0, 2 * k - 1);
  const auto profile = eisenstein::valuation_profile(k, prime, r_max);
  const auto jumps = fourier::jump_congruence_violations(profile, 2 * k, prime);
  Report r;
  r.columns = {"rank", "valuation", "bound"};
  for (const auto& e : profile.entries) {
    r.rows.push_back({std::to_string(e.rank), e.value.str(), std::string(to_string(e.bound))});
  }
  std::string note = "jump congruence: ";
  if (jumps.violations.empty()) {
    note += "consistent";
  } else {
    note += "violations at n' =";
    for (long v : jumps.violations) note += " " + std::to_string(v);
  }
  if (jumps.advisory) note += " (advisory: even ranks are lower bounds)";
  r.notes.push_back(note);
  r.json = io::to_json(profile);
  return r;
}

Report cmd_eisenstein_search(const Params& p) {
  const long n = p.integer("degree", 3, 99);
  if (n % 2 == 0) throw ParamError("--degree must be odd");
  const long k_min = p.integer_or("k-min", 2, 2, 100000);
  const long k_max = p.integer("k-max", k_min, 100000);
  const long p_min = p.integer_or("p-min", 3, 3, 1'000'000);
  const long p_max = p.integer("p-max", p_min, 1'000'000);
  const bool relaxed = p.flag("relaxed");
  const auto result = eisenstein::search_singular_eisenstein(n, {k_min, k_max}, {p_min, p_max}, relaxed);
  Report r;
  r.columns = {"k", "p"};
  Json hits = Json::array(), excluded = Json::array();
  for (const auto& h : result.hits) {
    r.rows.push_back({std::to_string(h.k), std::to_string(h.p)});
    hits.push_back({h.k, h.p});
  }
  for (const auto& h : result.excluded_by_extra_condition) excluded.push_back({h.k, h.p});
  r.notes.push_back("degree " + std::to_string(n) + ", " + std::to_string(result.hits.size()) + " hit(s)");
  if (!result.excluded_by_extra_condition.empty()) {
    std::string note = "excluded since p | k - (n-1)/2:";
    for (const auto& h : result.excluded_by_extra_condition) {
      note += " (" + std::to_string(h.k) + "," + std::to_string(h.p) + ")";
    }
    r.notes.push_back(note);
  }
  r.json = {{"degree", n}, {"hits", hits}, {"excluded", excluded}};
  return r;
}

Report cmd_klingen_check(const Params& p) {
  const long k = p.integer("k", 2, 10000);
  const long prime = p.odd_prime("p");
  const long n = p.integer("n", 1, 999);
  const long rank = p.integer("r", 0, n - 1);
  const auto c = eisenstein::klingen_valuation_inequality(k, prime, n, rank);
  Report r;
  r.columns = {"i", "bernoulli_index", "v(k-i)", "v(num B)", "v(den B)", "contribution"};
  Json ledger = Json::array();
  for (const auto& t : c.ledger) {
    r.rows.push_back({std::to_string(t.i), std::to_string(t.bernoulli_index), t.v_numerator_factor.str(),
                      t.v_bernoulli_numerator.str(), t.v_bernoulli_denominator.str(), t.contribution.str()});
    ledger.push_back({{"i", t.i},
                      {"bernoulli_index", t.bernoulli_index},
                      {"v_numerator_factor", valuation_json(t.v_numerator_factor)},
                      {"v_bernoulli_numerator", valuation_json(t.v_bernoulli_numerator)},
                      {"v_bernoulli_denominator", valuation_json(t.v_bernoulli_denominator)},
                      {"contribution", valuation_json(t.contribution)}});
  }
  r.notes.push_back("v(c_{k,n}) = " + c.v_top.str() + ", v(c_{k,r}) = " + c.v_rank.str() +
                    (c.holds ? ", inequality holds" : ", inequality fails"));
  r.notes.push_back(c.violated_index ? "hypothesis violated at j = " + std::to_string(*c.violated_index)
                                     : "hypothesis holds for every j in [r, n-1]");
  r.notes.push_back(std::string("ledger ") + (c.ledger_consistent ? "consistent" : "inconsistent"));
  r.json = {{"k", k},
            {"p", prime},
            {"n", n},
            {"r", rank},
            {"violated_index", c.violated_index ? Json(*c.violated_index) : Json(nullptr)},
            {"v_top", valuation_json(c.v_top)},
            {"v_rank", valuation_json(c.v_rank)},
            {"holds", c.holds},
            {"ledger_consistent", c.ledger_consistent},
            {"ledger", ledger}};
  return r;
}

Report cmd_qexp(const Params& p) {
  const auto f = series_param(p);
  const auto ctx = modulus_param(p);
  return series_report(ctx ? f.reduce(*ctx) : f);
}

Report cmd_hecke(const Params& p) {
  const long l = p.integer("l", 2, 1'000'000);
  if (!is_prime(l)) throw ParamError("--l must be prime");
  auto f = series_param(p);
  const auto ctx = modulus_param(p);
  if (ctx) f = f.reduce(*ctx);
  const bool half = f.half_integral_weight();
  Report r = series_report(half ? qseries::hecke_tl2_half(f, l) : qseries::hecke_tl(f, l));
  r.notes.push_back(std::string(half ? "T_{l^2}" : "T_l") + " with l = " + std::to_string(l));
  return r;
}

Report cmd_sturm(const Params& p) {
  const long w = p.weight_times_two("weight");
  if (w < 0) throw ParamError("--weight must be nonnegative");
  const long index = p.integer_or("index", 1, 1);
  const long bound = qseries::sturm_bound(w, index);
  Report r;
  r.columns = {"weight_times_two", "index", "sturm_bound"};
  r.rows.push_back({std::to_string(w), std::to_string(index), std::to_string(bound)});
  r.json = {{"weight_times_two", w}, {"index", index}, {"sturm_bound", bound}};
  return r;
}

// Delta, extended on demand.
class DeltaOracle final : public qseries::CoefficientOracle {
 public:
  std::optional<BigRational> coefficient(long n) const override {
    if (n < 0) return std::nullopt;
    if (!cache_ || n > cache_->truncation()) cache_ = qseries::delta_qexp(std::max(2 * n, 64L));
    return (*cache_)[n];
  }
  bool concurrent_reads() const override { return false; }

 private:
  mutable std::optional<qseries::QExpansion> cache_;
};

Report cmd_verify_constant(const Params& p) {
  const std::string kind = p.text("oracle");
  const long prime = p.odd_prime("p");
  const long m = p.integer_or("m", 1, 1, 64);
  const long d = p.integer("claimed-bound", 0, 100000);
  const long level = p.integer_or("level", 1, 1);
  const long group_index = p.integer_or("group-index", 1, 1);
  std::unique_ptr<qseries::CoefficientOracle> oracle;
  long w = 0;
  if (kind == "eisenstein") {
    const long k = p.integer("k", 4, 100000);
    if (k % 2 != 0) throw ParamError("--k must be even");
    oracle = std::make_unique<qseries::EisensteinOracle>(k);
    w = 2 * k;
  } else if (kind == "delta") {
    oracle = std::make_unique<DeltaOracle>();
    w = 24;
  } else if (kind == "file") {
    std::optional<long> given;
    if (p.has("weight")) given = p.weight_times_two("weight");
    auto f = parse_file(p.text("input"), [&](const Json& j) { return io::qexpansion_from_json(j, given); });
    w = f.weight_times_two();
    oracle = std::make_unique<qseries::SeriesOracle>(std::move(f));
  } else {
    throw ParamError("--oracle must be eisenstein, delta or file");
  }
  const qseries::VerifierInput in{w, level, group_index, qseries::ModulusContext(prime, m), d};
  const auto v = qseries::finite_support_implies_constant(*oracle, in);
  Report r;
  std::string verdict = qseries::to_string(v.kind);
  if (v.kind == qseries::VerdictKind::constant) verdict += "(" + v.constant.get_str() + ")";
  r.notes.push_back(verdict);
  r.columns = {"field", "value"};
  r.rows = {{"verdict", qseries::to_string(v.kind)},
            {"l1", std::to_string(v.l1)},
            {"l2", std::to_string(v.l2)},
            {"sturm", std::to_string(v.sturm)},
            {"demand_bound", std::to_string(v.demand_bound)}};
  r.json = {{"verdict", qseries::to_string(v.kind)}, {"l1", v.l1}, {"l2", v.l2},
            {"sturm", v.sturm}, {"demand_bound", v.demand_bound}};
  switch (v.kind) {
    case qseries::VerdictKind::constant:
      r.rows.push_back({"constant", v.constant.get_str()});
      r.json["constant"] = v.constant.get_str();
      break;
    case qseries::VerdictKind::premise_violated:
      r.rows.push_back({"index", std::to_string(v.index)});
      r.json["index"] = v.index;
      break;
    case qseries::VerdictKind::contradiction_witness:
      r.rows.push_back({"support_degree", std::to_string(v.support_degree)});
      r.rows.push_back({"index", std::to_string(v.index)});
      r.rows.push_back({"witness_value", v.witness_value.get_str()});
      r.json["support_degree"] = v.support_degree;
      r.json["index"] = v.index;
      r.json["witness_value"] = v.witness_value.get_str();
      break;
  }
  return r;
}

Report cmd_classes(const Params& p) {
  const int n = static_cast<int>(p.integer("n", 1, 3));
  const long det_max = p.integer("det-max", 0, n == 3 ? 2000 : 100000);
  Report r;
  r.columns = {"det(2T)", "2T"};
  Json classes = Json::array();
  for (const auto& t : lambda::enumerate_classes(n, det_max)) {
    const BigInt det = t.doubled().determinant();
    r.rows.push_back({det.get_str(), inline_matrix(t.doubled())});
    classes.push_back({{"det_doubled", det.get_str()}, {"doubled", matrix_json(t.doubled())}});
  }
  r.notes.push_back(std::to_string(classes.size()) + " class(es)");
  r.json = {{"n", n}, {"det_doubled_max", det_max}, {"classes", classes}};
  return r;
}

Report cmd_theta(const Params& p) {
  const auto g = lattice_param(p);
  Report r;
  if (p.has("short-vectors")) {
    if (p.has("degree") || p.has("det-max")) throw ParamError("--short-vectors excludes --degree and --det-max");
    const long max_norm = p.integer("short-vectors", 0, 64);
    const auto sv = lattice::short_vectors(g, max_norm, false);
    r.columns = {"norm", "count"};
    Json counts = Json::object();
    for (const auto& [norm, count] : sv.counts) {
      r.rows.push_back({std::to_string(norm), std::to_string(count)});
      counts[std::to_string(norm)] = std::to_string(count);
    }
    r.json = {{"max_norm", max_norm}, {"counts", counts}};
    return r;
  }
  const int degree = static_cast<int>(p.integer("degree", 0, 3));
  const long det_max = p.integer("det-max", 0, 64);
  const auto table = lattice::fourier_table(g, degree, det_max);
  r.columns = {"rank", "det(2T core)", "2T", "coefficient"};
  for (const auto& key : fourier::expected_keys(table.degree, table.bounds)) {
    const int rank = key.doubled().rank();
    const auto core = lambda::core_of(key, rank);
    r.rows.push_back({std::to_string(rank), core->doubled().determinant().get_str(), inline_matrix(key.doubled()),
                      table.entries.at(key).get_str()});
  }
  r.json = io::to_json(table);
  return r;
}

Report cmd_theta_prank(const Params& p) {
  const auto g = lattice_param(p);
  const long prime = p.odd_prime("p");
  const int rank_bound = static_cast<int>(p.integer("rank-bound", 0, 3));
  const long det_max = p.integer("det-max", 0, 64);
  const auto automorphism = automorphism_param(p, g, prime);
  const auto res = lattice::theta_prank(g, prime, rank_bound, det_max, automorphism);

  Report r;
  std::string summary = "r_p lower bound " + std::to_string(res.r_lower);
  const int next = res.r_lower + 1;
  if (next <= rank_bound) {
    summary += res.vanishing_verified[next] ? "; rank-" + std::to_string(next) + " vanishing verified"
                                            : "; rank-" + std::to_string(next) + " vanishing not verified";
  }
  summary += res.certified ? "; weight congruence certifies r_p = " + std::to_string(res.r_lower)
                           : "; weight congruence does not certify r_p";
  r.notes.push_back(summary);
  if (!res.congruence_consistent) r.notes.push_back("bounded-search inconclusive: weight congruence fails at r_lower");
  if (res.alpha) {
    r.notes.push_back("automorphism fixes a rank-" + std::to_string(*res.alpha) + " sublattice; r_lower " +
                      (*res.alpha_consistent ? "<=" : ">") + " alpha");
  }
  r.columns = {"rank", "det(2T core)", "2T", "coefficient", "divisible"};
  Json cert = Json::array();
  for (const auto& s : res.certificate) {
    const auto core = lambda::core_of(s.index, s.rank);
    const std::string det = core->doubled().determinant().get_str();
    r.rows.push_back({std::to_string(s.rank), det, inline_matrix(s.index.doubled()), s.value.get_str(),
                      s.divisible ? "yes" : "no"});
    cert.push_back({{"rank", s.rank}, {"index", s.index.to_text()}, {"value", s.value.get_str()},
                    {"divisible", s.divisible}});
  }
  Json vanishing = Json::array();
  for (bool v : res.vanishing_verified) vanishing.push_back(v);
  r.json = {{"p", prime},
            {"rank_bound", rank_bound},
            {"det_doubled_max", det_max},
            {"r_lower", res.r_lower},
            {"witness", res.witness ? Json(res.witness->to_text()) : Json(nullptr)},
            {"vanishing_verified", vanishing},
            {"certified", res.certified},
            {"congruence_consistent", res.congruence_consistent},
            {"alpha", res.alpha ? Json(*res.alpha) : Json(nullptr)},
            {"certificate", cert}};
  return r;
}

Report cmd_automorphism(const Params& p) {
  const auto g = lattice_param(p);
  const long prime = p.odd_prime("p");
  if (!p.has("matrix") && !p.has("coxeter")) throw ParamError("give --matrix FILE or --coxeter NODES");
  const long det_max = p.has("det-max") ? p.integer("det-max", 0, 64) : -1;
  const auto a = *automorphism_param(p, g, prime);
  const auto ab = lattice::charpoly_alpha_beta(a, prime);
  Report r;
  r.notes.push_back("certified automorphism of order " + std::to_string(a.order));
  r.columns = {"field", "value"};
  r.rows = {{"order", std::to_string(a.order)},
            {"alpha", std::to_string(ab.alpha)},
            {"beta", std::to_string(ab.beta)},
            {"U", inline_matrix(a.u)}};
  r.json = {{"order", a.order}, {"alpha", ab.alpha}, {"beta", ab.beta}, {"matrix", matrix_json(a.u)}};
  if (det_max >= 0) {
    const int degree = std::min(3, g.rank());
    const auto table = lattice::fourier_table(g, degree, det_max);
    long checked = 0;
    Json failures = Json::array();
    for (const auto& [key, value] : table.entries) {
      if (key.doubled().rank() <= ab.alpha) continue;
      ++checked;
      if (!mpz_divisible_ui_p(value.get_mpz_t(), static_cast<unsigned long>(prime))) failures.push_back(key.to_text());
    }
    r.notes.push_back("divisibility by p above rank alpha: " + std::to_string(checked) + " coefficient(s) checked, " +
                      std::to_string(failures.size()) + " not divisible");
    r.json["divisibility"] = {{"det_doubled_max", det_max}, {"checked", checked}, {"failures", failures}};
  }
  return r;
}

Report jacobi_report(const jacobi::JacobiTable& t) {
  Report r;
  r.columns = {"n", "r", "c(n,r)"};
  for (const auto& [nr, c] : t.entries) {
    r.rows.push_back({std::to_string(nr.first), std::to_string(nr.second), c.get_str()});
  }
  r.json = io::to_json(t);
  return r;
}

jacobi::JacobiTable jacobi_source(const Params& p) {
  if (p.has("input")) {
    if (p.has("lattice")) throw ParamError("give only one of --input and --lattice");
    return parse_file(p.text("input"), [](const Json& j) { return io::jacobi_table_from_json(j); });
  }
  const auto g = lattice_param(p);
  const long m = p.integer("index", 1, 64);
  const long n_max = p.integer("n-max", 0, 32);
  return jacobi::fj_coefficient_table(g, m, n_max);
}

Report cmd_jacobi_fj(const Params& p) { return jacobi_report(jacobi_source(p)); }

Report cmd_jacobi_decompose(const Params& p) {
  const auto table = jacobi_source(p);
  const auto parts = jacobi::theta_decompose(table);
  Report r;
  r.columns = {"mu", "4mn - r^2", "coefficient"};
  Json components = Json::object();
  for (const auto& [mu, terms] : parts) {
    Json seq = Json::array();
    for (const auto& t : terms) {
      r.rows.push_back({std::to_string(mu), std::to_string(t.exponent), t.coefficient.get_str()});
      seq.push_back(Json::array({t.exponent, t.coefficient.get_str()}));
    }
    components[std::to_string(mu)] = std::move(seq);
  }
  r.json = {{"index", table.index}, {"weight_times_two", table.weight_times_two}, {"components", components}};
  return r;
}

Report cmd_thm_checks(const Params& p) {
  const std::string check = p.text("check");
  Report r;
  if (check == "prank-congruence") {
    const long w = p.weight_times_two("weight");
    const long rank = p.integer("r", 0);
    const long prime = p.odd_prime("p");
    const auto c = fourier::prank_congruence_check(w, rank, prime);
    r.columns = {"holds", "parity_consistent"};
    r.rows.push_back({c.holds ? "true" : "false", c.parity_consistent ? "true" : "false"});
    r.notes.push_back("(p-1) | 2k - r: " + std::string(c.holds ? "yes" : "no"));
    r.json = {{"check", check}, {"holds", c.holds}, {"parity_consistent", c.parity_consistent}};
  } else if (check == "jump-congruence") {
    ValuationProfile profile;
    if (p.has("profile")) {
      profile = parse_file(p.text("profile"), [](const Json& j) { return io::valuation_profile_from_json(j); });
    } else {
      const long k = p.integer("k", 2, 10000);
      if (k % 2 != 0) throw ParamError("--k must be even");
      profile = eisenstein::valuation_profile(k, p.odd_prime("p"), p.integer_or("r-max", 2 * k - 1, 0, 2 * k - 1));
    }
    const long w = p.has("weight") ? p.weight_times_two("weight") : profile.weight_times_two;
    if (profile.p < 3 || !is_prime(profile.p)) throw FileError("profile prime must be an odd prime");
    const auto j = fourier::jump_congruence_violations(profile, w, profile.p);
    r.columns = {"violation_at"};
    Json v = Json::array();
    for (long n : j.violations) {
      r.rows.push_back({std::to_string(n)});
      v.push_back(n);
    }
    r.notes.push_back(j.violations.empty() ? "no jump violations" : std::to_string(j.violations.size()) + " violation(s)");
    if (j.advisory) r.notes.push_back("advisory: profile has inexact entries");
    r.json = {{"check", check}, {"violations", v}, {"advisory", j.advisory}};
  } else if (check == "jacobi-escape") {
    const long w = p.weight_times_two("weight");
    const long rank = p.integer("r", 0);
    const long prime = p.odd_prime("p");
    const long m = p.integer_or("m", 1, 1, 64);
    const bool escape = jacobi::jacobi_escape_possible(w, rank, prime, m);
    r.columns = {"escape_possible"};
    r.rows.push_back({escape ? "true" : "false"});
    r.notes.push_back(escape ? "(p-1) p^(m-1) divides 2k - r: finitely supported forms may survive"
                             : "finitely supported forms of this weight vanish mod p^m");
    r.json = {{"check", check}, {"escape_possible", escape}};
  } else {
    throw ParamError("--check must be prank-congruence, jump-congruence or jacobi-escape");
  }
  return r;
}

struct Command {
  CommandSpec spec;
  std::function<Report(const Params&)> handler;
};

const std::vector<Command>& registry() {
  static const std::vector<Command> table = {
      {{"bernoulli", "Bernoulli numbers B_0..B_max, optionally with p-adic valuations",
        {{"max", "largest even index"}, {"valuations-at", "odd prime p"}}},
       cmd_bernoulli},
      {{"ckr", "content constants c_{k,r}", {{"k", "even weight"}, {"r", "rank"}, {"r-max", "ranks 0..r-max"}, {"p", "odd prime for valuations"}}},
       cmd_ckr},
      {{"profile", "rank-stratified valuations v_p(c_{k,r})", {{"k", "even weight"}, {"p", "odd prime"}, {"r-max", "largest rank (default 2k-1)"}}},
       cmd_profile},
      {{"eisenstein-search", "mod p singular Eisenstein series of odd degree and p-rank n-1",
        {{"degree", "odd degree n >= 3"}, {"k-min", "smallest weight"}, {"k-max", "largest weight"},
         {"p-min", "smallest prime"}, {"p-max", "largest prime"}, {"relaxed", "allow small weights", true}}},
       cmd_eisenstein_search},
      {{"klingen-check", "valuation inequality between ranks r and n with its ledger",
        {{"k", "even weight"}, {"p", "odd prime"}, {"n", "odd degree"}, {"r", "rank < n"}}},
       cmd_klingen_check},
      {{"qexp", "q-expansion of E_k or Delta",
        {{"kind", "eisenstein or delta"}, {"k", "even weight"}, {"length", "truncation L"}, {"input", "QExpansion JSON file"},
         {"weight", "weight for a bare coefficient array"}, {"p", "reduce mod p^m"}, {"m", "exponent m (default 1)"}}},
       cmd_qexp},
      {{"hecke", "apply T_l (integral weight) or T_{l^2} (half-integral weight)",
        {{"l", "prime"}, {"kind", "eisenstein or delta"}, {"k", "even weight"}, {"length", "truncation L"},
         {"input", "QExpansion JSON file"}, {"weight", "weight for a bare coefficient array"},
         {"p", "reduce mod p^m first"}, {"m", "exponent m (default 1)"}}},
       cmd_hecke},
      {{"sturm", "Sturm bound", {{"weight", "k or k/2"}, {"index", "index of the group in SL_2(Z)"}}}, cmd_sturm},
      {{"verify-constant", "decide whether a finitely supported form mod p^m is constant",
        {{"oracle", "eisenstein, delta or file"}, {"k", "even weight for eisenstein"}, {"input", "QExpansion JSON file"},
         {"weight", "weight for a bare coefficient array"}, {"p", "odd prime"}, {"m", "exponent m (default 1)"},
         {"claimed-bound", "d with a(n) = 0 mod p^m for n > d"}, {"level", "level N"},
         {"group-index", "index of the group in SL_2(Z)"}}},
       cmd_verify_constant},
      {{"classes", "GL_n(Z)-classes of positive definite half-integral matrices", {{"n", "degree 1..3"}, {"det-max", "bound on det(2T)"}}},
       cmd_classes},
      {{"theta", "theta series Fourier coefficients or short-vector counts",
        {{"lattice", "catalog name or Gram file"}, {"degree", "0..3"}, {"det-max", "bound on det(2T)"},
         {"short-vectors", "count vectors up to this norm instead"}}},
       cmd_theta},
      {{"theta-prank", "p-rank lower bound of a theta series with vanishing evidence",
        {{"lattice", "catalog name or Gram file"}, {"p", "odd prime"}, {"rank-bound", "0..3"}, {"det-max", "bound on det(2T)"},
         {"matrix", "automorphism matrix file"}, {"coxeter", "automorphism as a Coxeter element on nodes, e.g. 3,4,5"}}},
       cmd_theta_prank},
      {{"automorphism", "certify a lattice automorphism of order p and split its characteristic polynomial",
        {{"lattice", "catalog name or Gram file"}, {"p", "odd prime"}, {"matrix", "matrix file"},
         {"coxeter", "Coxeter element on nodes (1-based), e.g. 1,2,3"}, {"det-max", "also check divisibility up to this det(2T)"}}},
       cmd_automorphism},
      {{"jacobi-fj", "Fourier-Jacobi coefficients c(n, r) of the degree-2 theta series",
        {{"lattice", "catalog name or Gram file"}, {"index", "scalar index m"}, {"n-max", "largest n"}, {"input", "JacobiTable JSON file"}}},
       cmd_jacobi_fj},
      {{"jacobi-decompose", "theta decomposition into h_mu",
        {{"lattice", "catalog name or Gram file"}, {"index", "scalar index m"}, {"n-max", "largest n"}, {"input", "JacobiTable JSON file"}}},
       cmd_jacobi_decompose},
      {{"thm-checks", "weight-congruence checks",
        {{"check", "prank-congruence, jump-congruence or jacobi-escape"}, {"weight", "k or k/2"}, {"r", "rank"},
         {"p", "odd prime"}, {"m", "exponent m (default 1)"}, {"k", "even weight for a generated profile"},
         {"r-max", "largest rank of a generated profile"}, {"profile", "ValuationProfile JSON file"}}},
       cmd_thm_checks},
  };
  return table;
}

}  // namespace

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs = [] {
    std::vector<CommandSpec> out;
    for (const auto& c : registry()) out.push_back(c.spec);
    return out;
  }();
  return specs;
}

RunResult run(const RunConfig& config) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const Command& c) { return c.spec.name == config.command; });
  if (it == reg.end()) return {2, "", "unknown command '" + config.command + "'\n"};
  for (const auto& [key, value] : config.parameters) {
    const auto& opts = it->spec.options;
    if (std::none_of(opts.begin(), opts.end(), [&](const OptionSpec& o) { return o.name == key; })) {
      return {2, "", config.command + ": unknown parameter --" + key + "\n"};
    }
  }
  try {
    const Report report = it->handler(Params(config.parameters));
    return {0, render(report, config.output_format), ""};
  } catch (const ParamError& e) {
    return {2, "", config.command + ": invalid parameter: " + e.what() + "\n"};
  } catch (const FileError& e) {
    return {3, "", config.command + ": file format: " + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {1, "", config.command + ": " + e.what() + "\n"};
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Congruences of Siegel modular forms: exact arithmetic, theta series and Eisenstein constants"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output = "table";
  app.add_option("--output", output, "table, json or tsv")->check(CLI::IsMember({"table", "json", "tsv"}));

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> flags;
  for (const auto& spec : commands()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    for (const auto& opt : spec.options) {
      if (opt.flag) {
        sub->add_flag("--" + opt.name, flags[spec.name][opt.name], opt.help);
      } else {
        sub->add_option("--" + opt.name, values[spec.name][opt.name], opt.help);
      }
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig config;
  config.output_format = output == "json" ? OutputFormat::json : output == "tsv" ? OutputFormat::tsv : OutputFormat::table;
  for (const CLI::App* sub : app.get_subcommands()) {
    config.command = sub->get_name();
    for (const auto& spec : commands()) {
      if (spec.name != config.command) continue;
      for (const auto& opt : spec.options) {
        if (sub->count("--" + opt.name) == 0) continue;
        config.parameters[opt.name] = opt.flag ? "true" : values[spec.name][opt.name];
      }
    }
  }
  const RunResult result = run(config);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}

}  // namespace singmod::cli
