#include "minknap/gaplab.hpp"

#include <cctype>
#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "minknap/core.hpp"
#include "minknap/errors.hpp"
#include "minknap/knapdp.hpp"
#include "minknap/sep.hpp"

namespace minknap::gaplab {

long square_root(long n) {
  if (n < 0) throw PreconditionError("n must be nonnegative");
  const long s = exact_isqrt(n);
  if (s * s != n) throw PreconditionError("n = " + std::to_string(n) + " is not a perfect square");
  return s;
}

RawInstance gen_lemma4(long n, const Rational& eps) {
  const long s = square_root(n);
  if (n < 4) throw PreconditionError("lemma4 family needs n >= 4");
  if (eps <= 0) throw PreconditionError("eps must be positive");
  RawInstance raw;
  raw.threshold = n;
  raw.items.push_back({"y", eps, Rational(n - s)});
  raw.items.push_back({"z", Rational(s), Rational(n, 2)});
  for (long i = 1; i <= n; ++i) raw.items.push_back({"x" + std::to_string(i), 1, 1});
  return raw;
}

RawInstance gen_ola(long n) {
  const long s = square_root(n);
  if (n < 1) throw PreconditionError("ola family needs n >= 1");
  RawInstance raw;
  raw.threshold = 1 + Rational(1, s);
  for (long i = 1; i <= n; ++i) raw.items.push_back({"x" + std::to_string(i), 1, 1});
  for (long j = 1; j <= n; ++j) raw.items.push_back({"z" + std::to_string(j), Rational(1, s), Rational(1, n)});
  return raw;
}

RawInstance gen_pitch3_wild() {
  RawInstance raw;
  raw.threshold = 41;
  const long profits[] = {5, 6, 11, 16, 17, 18, 21};
  for (std::size_t i = 0; i < 7; ++i) raw.items.push_back({"x" + std::to_string(i + 1), 1, Rational(profits[i])});
  return raw;
}

RawInstance gen_random(std::size_t n, std::uint64_t seed, bool p_equals_c) {
  if (n == 0) throw PreconditionError("n must be at least 1");
  constexpr long q0 = 16;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> draw(1, q0);
  RawInstance raw;
  raw.threshold = 1;
  for (;;) {
    raw.items.clear();
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Rational p(draw(rng), q0);
      const Rational c = p_equals_c ? p : Rational(draw(rng), q0);
      raw.items.push_back({"x" + std::to_string(i + 1), c, p});
      total += p;
    }
    if (total >= 1) return raw;
  }
}

Point lemma4_point(long n) {
  const long s = square_root(n);
  std::vector<Rational> v;
  v.push_back(1);
  v.push_back(Rational(2, s));
  for (long i = 0; i < n; ++i) v.push_back(Rational(1, n - s + 1));
  return Point(std::move(v));
}

Rational lemma4_point_cost(long n, const Rational& eps) {
  const long s = square_root(n);
  return eps + 2 + Rational(n, n - s + 1);
}

Point ola_point(long n, std::size_t k) {
  const long s = square_root(n);
  std::vector<Rational> v;
  for (long i = 0; i < n; ++i) v.push_back((1 + Rational(1, s)) / n);
  for (long j = 0; j < n; ++j) v.push_back(min(Rational(1), Rational(static_cast<long>(k), n)));
  return Point(std::move(v));
}

Rational ola_point_cost(long n, std::size_t k) {
  const long s = square_root(n);
  return 1 + Rational(1, s) + Rational(static_cast<long>(k), s);
}

// ---- files ----

FormatError::FormatError(const std::string& msg, std::size_t line, std::size_t column)
    : std::invalid_argument(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  const std::size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

Rational literal(const Token& t, std::size_t line) {
  try {
    return Rational::parse(t.text);
  } catch (const ParseError& e) {
    throw FormatError(e.what(), line, t.column + e.offset());
  }
}

void check_label(const std::string& label) {
  if (label.empty()) throw PreconditionError("empty item label");
  for (char ch : label) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '#') {
      throw PreconditionError("item label '" + label + "' contains whitespace or '#'");
    }
  }
}

}  // namespace

std::string serialize(const RawInstance& raw) {
  std::ostringstream out;
  out << "minknap 1\n";
  out << "threshold " << raw.threshold.str() << "\n";
  for (const RawItem& item : raw.items) {
    check_label(item.label);
    out << "item " << item.label << " cost " << item.cost.str() << " profit " << item.profit.str() << "\n";
  }
  return out.str();
}

RawInstance parse_instance(std::string_view text) {
  RawInstance raw;
  bool have_header = false;
  bool have_threshold = false;
  std::set<std::string> labels;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::vector<Token> tok = tokenize(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (!have_header) {
      if (tok[0].text != "minknap") throw FormatError("expected header 'minknap 1'", line_no, tok[0].column);
      if (tok.size() < 2) throw FormatError("missing format version", line_no, tok[0].column + tok[0].text.size());
      if (tok[1].text != "1") throw FormatError("unsupported format version", line_no, tok[1].column);
      if (tok.size() > 2) throw FormatError("unexpected token", line_no, tok[2].column);
      have_header = true;
    } else if (tok[0].text == "threshold") {
      if (have_threshold) throw FormatError("duplicate threshold", line_no, tok[0].column);
      if (tok.size() != 2) {
        throw FormatError("expected 'threshold <rational>'", line_no, tok.size() > 2 ? tok[2].column : tok[0].column);
      }
      raw.threshold = literal(tok[1], line_no);
      have_threshold = true;
    } else if (tok[0].text == "item") {
      if (tok.size() != 6 || tok[2].text != "cost" || tok[4].text != "profit") {
        std::size_t col = tok[0].column;
        if (tok.size() > 2 && tok[2].text != "cost") col = tok[2].column;
        else if (tok.size() > 4 && tok[4].text != "profit") col = tok[4].column;
        else if (tok.size() > 6) col = tok[6].column;
        throw FormatError("expected 'item <label> cost <rational> profit <rational>'", line_no, col);
      }
      const std::string label(tok[1].text);
      if (!labels.insert(label).second) throw FormatError("duplicate label '" + label + "'", line_no, tok[1].column);
      raw.items.push_back({label, literal(tok[3], line_no), literal(tok[5], line_no)});
    } else {
      throw FormatError("unknown directive '" + std::string(tok[0].text) + "'", line_no, tok[0].column);
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw FormatError("missing header 'minknap 1'", line_no, 1);
  if (!have_threshold) throw FormatError("missing threshold line", line_no, 1);
  return raw;
}

RawInstance read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void write_instance_file(const std::filesystem::path& path, const RawInstance& raw) {
  const std::string text = serialize(raw);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    try {
      out.push_back(Rational::parse(text.substr(pos, comma - pos)));
    } catch (const ParseError& e) {
      throw FormatError(e.what(), 1, pos + e.offset() + 1);
    }
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return out;
}

DenseInequality parse_dense_inequality(std::string_view text) {
  const std::size_t ge = text.find(">=");
  if (ge == std::string_view::npos) throw FormatError("expected '>='", 1, text.size() + 1);
  DenseInequality out;
  out.coefs = parse_rational_list(text.substr(0, ge));
  try {
    out.rhs = Rational::parse(text.substr(ge + 2));
  } catch (const ParseError& e) {
    throw FormatError(e.what(), 1, ge + 3 + e.offset());
  }
  return out;
}

// ---- experiments ----

std::string csv_header() { return "family,n,params,int_opt,lp_value,gap,gap_decimal,cuts_kc,cuts_p12,cuts_fs,reason,ms"; }

std::string csv_line(const ExperimentRow& r) {
  auto clean = [](std::string s) {
    for (char& ch : s) {
      if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
    }
    return s;
  };
  std::ostringstream out;
  out << r.family << ',' << r.n << ',' << clean(r.params) << ',' << r.int_opt << ',' << r.lp_value << ',' << r.gap
      << ',' << (r.lp_value.is_zero() ? std::string() : r.gap.to_decimal(12)) << ',' << r.cuts_kc << ','
      << r.cuts_p12 << ',' << r.cuts_fs << ',' << clean(r.reason) << ',' << r.ms;
  return out.str();
}

GapFamily parse_family(std::string_view name) {
  if (name == "lemma4") return GapFamily::lemma4;
  if (name == "ola") return GapFamily::ola;
  if (name == "pitch3-wild" || name == "pitch3_wild") return GapFamily::pitch3_wild;
  throw PreconditionError("unknown family '" + std::string(name) + "'");
}

std::string_view to_string(GapFamily f) {
  switch (f) {
    case GapFamily::lemma4: return "lemma4";
    case GapFamily::ola: return "ola";
    case GapFamily::pitch3_wild: return "pitch3-wild";
  }
  return "?";
}

CutLoopConfig prescribed_config(GapFamily family, const GapConfig& cfg) {
  CutLoopConfig c;
  c.p12 = true;
  c.mode = Exactness::exact;
  if (family == GapFamily::ola) {
    c.kc = true;
    c.kc_mode = KcMode::heuristic;
    c.fixed_support = true;
    c.fs_full_support = true;
    c.fs_max_pitch = cfg.k;
    c.aggregate_identical = true;
  }
  return c;
}

namespace {

class Checks {
 public:
  void add(const std::string& name, bool pass) {
    text_ += ";" + name + "=" + (pass ? "pass" : "FAIL");
    ok_ = ok_ && pass;
  }
  void note(const std::string& kv) { text_ += ";" + kv; }
  const std::string& text() const { return text_; }
  bool ok() const { return ok_; }

 private:
  std::string text_;
  bool ok_ = true;
};

bool satisfies_all(const std::vector<Inequality>& family, const Point& x) {
  for (const Inequality& f : family) {
    if (!f.satisfied_by(x)) return false;
  }
  return true;
}

void fill_from_report(ExperimentRow& row, const GapReport& rep) {
  row.int_opt = rep.int_opt;
  row.lp_value = rep.lp_value;
  row.gap = rep.gap;
  row.cuts_kc = rep.cuts_kc;
  row.cuts_p12 = rep.cuts_p12;
  row.cuts_fs = rep.cuts_fs;
  row.reason = to_string(rep.reason);
}

void lemma4_row(ExperimentRow& row, Checks& checks, long n, const GapConfig& cfg) {
  const long s = square_root(n);
  checks.note("eps=" + cfg.eps.str());
  const Instance inst = Instance::normalize(gen_lemma4(n, cfg.eps));
  const GapReport rep = run(inst, prescribed_config(GapFamily::lemma4, cfg), "lemma4-" + std::to_string(n));
  fill_from_report(row, rep);
  checks.add("int_opt", rep.int_opt == s + cfg.eps);
  const Point x = inst.to_sorted(lemma4_point(n));
  checks.add("point_row", inst.profit_of(x) >= 1);
  const Rational unit_level(BigInt(1), inst.q());
  checks.add("point_pitch1", solve_palpha(inst, x, unit_level, SolverChoice::exact()).value >= 2);
  if (inst.size() <= 20) checks.add("point_pitch1_enum", satisfies_all(enumerate_pitch1(inst), x));
  checks.add("gap_bound", rep.gap >= (s + cfg.eps) / lemma4_point_cost(n, cfg.eps));
}

void ola_row(ExperimentRow& row, Checks& checks, long n, const GapConfig& cfg) {
  const long s = square_root(n);
  checks.note("k=" + std::to_string(cfg.k));
  const Instance inst = Instance::normalize(gen_ola(n));
  const GapReport rep = run(inst, prescribed_config(GapFamily::ola, cfg), "ola-" + std::to_string(n));
  fill_from_report(row, rep);
  checks.add("int_opt", rep.int_opt == 2);
  const Point x = inst.to_sorted(ola_point(n, cfg.k));
  checks.add("point_row", inst.profit_of(x) >= 1);
  if (inst.size() <= 16) {
    checks.add("point_kc_exhaustive", !separate_kc(inst, x, KcMode::exhaustive).has_value());
    checks.add("point_pitch1_enum", satisfies_all(enumerate_pitch1(inst), x));
    if (cfg.k >= 2) checks.add("point_pitch2_enum", satisfies_all(enumerate_pitch2(inst), x));
  }
  checks.add("lp_le_point", rep.lp_value <= ola_point_cost(n, cfg.k));
  checks.add("gap_bound", rep.gap >= 2 / (1 + Rational(static_cast<long>(cfg.k) + 1, s)));
}

void wild_row(ExperimentRow& row, Checks& checks) {
  const Instance inst = Instance::normalize(gen_pitch3_wild());
  const GapReport rep = run(inst, prescribed_config(GapFamily::pitch3_wild, {}), "pitch3-wild");
  fill_from_report(row, rep);
  // inputs are already in ascending profit order
  const Inequality a = Inequality::from_dense(std::vector<Rational>{1, 0, 1, 1, 2, 1, 2}, 3, Family::user);
  const Inequality b = Inequality::from_dense(std::vector<Rational>{1, 1, 2, 3, 4, 3, 4}, 8, Family::user);
  checks.add("valid_pitch3", is_valid(a, inst));
  checks.add("pitch_is_3", compute_pitch(a) == 3);
  checks.add("valid_inverted", is_valid(b, inst));
}

}  // namespace

std::vector<ExperimentRow> experiment_gap_table(GapFamily family, const std::vector<long>& ns, const GapConfig& cfg) {
  std::vector<ExperimentRow> rows;
  const std::vector<long> list = family == GapFamily::pitch3_wild ? std::vector<long>{7} : ns;
  for (long n : list) {
    ExperimentRow row;
    row.family = std::string(to_string(family));
    row.n = n;
    Checks checks;
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (family) {
        case GapFamily::lemma4: lemma4_row(row, checks, n, cfg); break;
        case GapFamily::ola: ola_row(row, checks, n, cfg); break;
        case GapFamily::pitch3_wild: wild_row(row, checks); break;
      }
      row.ok = checks.ok();
    } catch (const std::exception& e) {
      row.ok = false;
      row.reason = std::string("error: ") + e.what();
    }
    row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    row.params = checks.text().empty() ? std::string() : checks.text().substr(1);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace minknap::gaplab
