// Command-line front end: instance generation, solving, separation,
// cutting-plane runs, inequality checks and gap tables.
//
// Exit codes: 0 success or certified, 1 failed experiment checks,
// 2 bad input, 3 violated cut found, 4 resource budget exceeded.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "minknap/core.hpp"
#include "minknap/cutloop.hpp"
#include "minknap/errors.hpp"
#include "minknap/gaplab.hpp"
#include "minknap/knapdp.hpp"
#include "minknap/sep.hpp"

namespace {

using namespace minknap;

constexpr int kOk = 0;
constexpr int kChecksFailed = 1;
constexpr int kBadInput = 2;
constexpr int kViolated = 3;
constexpr int kBudget = 4;

struct Families {
  bool kc = false;
  bool p12 = false;
  bool fs = false;
};

Families parse_families(const std::string& list) {
  Families f;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "kc") f.kc = true;
    else if (item == "p12") f.p12 = true;
    else if (item == "fs" || item == "fixed-support") f.fs = true;
    else throw PreconditionError("unknown family '" + item + "' (expected kc, p12, fs)");
  }
  return f;
}

KcMode parse_kc_mode(const std::string& s) {
  if (s == "heuristic") return KcMode::heuristic;
  if (s == "exhaustive") return KcMode::exhaustive;
  throw PreconditionError("unknown kc mode '" + s + "'");
}

Exactness parse_mode(const std::string& s) {
  if (s == "exact") return Exactness::exact;
  if (s == "fptas" || s == "approx") return Exactness::fptas;
  throw PreconditionError("unknown mode '" + s + "'");
}

std::vector<long> parse_long_list(const std::string& s) {
  std::vector<long> out;
  for (const Rational& r : gaplab::parse_rational_list(s)) {
    if (!r.is_integer() || !r.num().fits_slong_p()) throw PreconditionError("n must be an integer: " + r.str());
    out.push_back(r.num().get_si());
  }
  return out;
}

Instance load(const std::string& path) { return Instance::normalize(gaplab::read_instance_file(path)); }

std::string labels_of(const Instance& inst, const IndexSet& sorted) {
  std::string out;
  for (std::size_t i : inst.to_input(sorted)) {
    if (!out.empty()) out += ' ';
    out += inst.label(inst.sorted_index(i));
  }
  return out;
}

Point point_arg(const Instance& inst, const std::string& text) {
  std::vector<Rational> v = gaplab::parse_rational_list(text);
  if (v.size() != inst.size()) {
    throw PreconditionError("point has " + std::to_string(v.size()) + " entries, instance has " +
                            std::to_string(inst.size()) + " items");
  }
  return inst.to_sorted(Point(std::move(v)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact min-knapsack cutting-plane toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  std::string gen_family;
  long gen_n = 0;
  std::string gen_eps = "1/8";
  std::uint64_t gen_seed = 1;
  bool gen_pc = false;
  std::string gen_out;
  gen->add_option("--family", gen_family, "lemma4 | ola | pitch3-wild | random")->required();
  gen->add_option("--n", gen_n, "Instance size parameter");
  gen->add_option("--eps", gen_eps, "Cost of y for lemma4");
  gen->add_option("--seed", gen_seed, "Seed for random");
  gen->add_flag("--p-equals-c", gen_pc, "Random instance with costs equal to profits");
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Exact or approximate integer optimum");
  std::string solve_file, solve_mode = "exact", solve_eps = "1/100";
  bool solve_items = false;
  solve_cmd->add_option("file", solve_file)->required();
  solve_cmd->add_option("--mode", solve_mode, "exact | fptas");
  solve_cmd->add_option("--eps", solve_eps, "FPTAS accuracy");
  solve_cmd->add_flag("--items", solve_items, "Also print the chosen item labels");

  // separate
  auto* sep_cmd = app.add_subcommand("separate", "Separate a point");
  std::string sep_file, sep_point, sep_families = "p12", sep_eps = "1/100", sep_mode = "exact",
                                   sep_kc_mode = "heuristic";
  std::optional<std::size_t> sep_max_pitch;
  sep_cmd->add_option("file", sep_file)->required();
  sep_cmd->add_option("--point", sep_point, "Comma-separated rationals, input order")->required();
  sep_cmd->add_option("--families", sep_families, "Subset of kc,p12,fs");
  sep_cmd->add_option("--eps", sep_eps);
  sep_cmd->add_option("--mode", sep_mode, "exact | approx");
  sep_cmd->add_option("--kc-mode", sep_kc_mode, "heuristic | exhaustive");
  sep_cmd->add_option("--fs-max-pitch", sep_max_pitch, "Pitch bound for fixed-support cuts");

  // cutplane
  auto* cp_cmd = app.add_subcommand("cutplane", "Run the cutting-plane loop");
  std::string cp_file, cp_families = "p12", cp_eps = "1/100", cp_mode = "exact", cp_kc_mode = "heuristic",
                       cp_report;
  std::size_t cp_max_iter = 1000;
  bool cp_fs_full = false;
  std::optional<std::size_t> cp_max_pitch;
  cp_cmd->add_option("file", cp_file)->required();
  cp_cmd->add_option("--families", cp_families, "Subset of kc,p12,fs");
  cp_cmd->add_option("--eps", cp_eps);
  cp_cmd->add_option("--mode", cp_mode, "exact | approx");
  cp_cmd->add_option("--kc-mode", cp_kc_mode, "heuristic | exhaustive");
  cp_cmd->add_option("--max-iter", cp_max_iter);
  cp_cmd->add_flag("--fs-full-support", cp_fs_full, "Also try fixed-support cuts on all items");
  cp_cmd->add_option("--fs-max-pitch", cp_max_pitch);
  cp_cmd->add_option("--report", cp_report, "Write a one-row CSV report");

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "Pitch and validity of an inequality");
  std::string ver_file, ver_ineq;
  ver_cmd->add_option("file", ver_file)->required();
  ver_cmd->add_option("--ineq", ver_ineq, "\"w1,...,wn >= beta\", input order")->required();

  // gap-table
  auto* gt_cmd = app.add_subcommand("gap-table", "Integrality gap experiment");
  std::string gt_family, gt_ns = "4,9,16,25", gt_eps = "1/8", gt_out;
  std::size_t gt_k = 2;
  gt_cmd->add_option("--family", gt_family, "lemma4 | ola | pitch3-wild")->required();
  gt_cmd->add_option("--n-list", gt_ns);
  gt_cmd->add_option("--eps", gt_eps);
  gt_cmd->add_option("--k", gt_k);
  gt_cmd->add_option("--out", gt_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*gen) {
      RawInstance raw;
      if (gen_family == "lemma4") raw = gaplab::gen_lemma4(gen_n, Rational::parse(gen_eps));
      else if (gen_family == "ola") raw = gaplab::gen_ola(gen_n);
      else if (gen_family == "pitch3-wild") raw = gaplab::gen_pitch3_wild();
      else if (gen_family == "random") raw = gaplab::gen_random(static_cast<std::size_t>(gen_n), gen_seed, gen_pc);
      else throw PreconditionError("unknown family '" + gen_family + "'");
      if (gen_out.empty()) std::cout << gaplab::serialize(raw);
      else gaplab::write_instance_file(gen_out, raw);
      return kOk;
    }

    if (*solve_cmd) {
      const Instance inst = load(solve_file);
      const KnapSolution s = parse_mode(solve_mode) == Exactness::exact
                                 ? solve_exact(inst)
                                 : solve_fptas(inst, Rational::parse(solve_eps));
      std::cout << s.value << "\n";
      if (solve_items) std::cout << labels_of(inst, s.chosen) << "\n";
      return kOk;
    }

    if (*sep_cmd) {
      const Instance inst = load(sep_file);
      const Point x = point_arg(inst, sep_point);
      const Families fam = parse_families(sep_families);
      const Rational eps = Rational::parse(sep_eps);
      const Exactness mode = parse_mode(sep_mode);
      if (fam.kc) {
        if (auto v = separate_kc(inst, x, parse_kc_mode(sep_kc_mode))) {
          std::cout << v->cut.str(inst) << "\n";
          return kViolated;
        }
      }
      if (fam.p12) {
        const SeparationResult r = separate_pitch12(inst, x, eps, mode);
        if (const auto* v = std::get_if<Violated>(&r)) {
          std::cout << v->cut.str(inst) << "\n";
          return kViolated;
        }
        if (!fam.fs) {
          std::cout << "certified " << inst.to_input(std::get<Certified>(r).ybar).str() << "\n";
          return kOk;
        }
      }
      if (fam.fs) {
        IndexSet support;
        for (std::size_t i = 0; i < inst.size(); ++i) {
          if (x[i] > 0) support.push_back(i);
        }
        if (!support.empty() && beta_of(inst, support) > 0) {
          const FixedSupportResult fs = separate_fixed_support(inst, x, support, sep_max_pitch);
          if (fs.violated) {
            std::cout << fs.cut->str(inst) << "\n";
            return kViolated;
          }
        }
      }
      std::cout << (fam.p12 ? "certified " + inst.to_input(x).str() : std::string("no violated cut found")) << "\n";
      return kOk;
    }

    if (*cp_cmd) {
      const Instance inst = load(cp_file);
      const Families fam = parse_families(cp_families);
      CutLoopConfig cfg;
      cfg.kc = fam.kc;
      cfg.kc_mode = parse_kc_mode(cp_kc_mode);
      cfg.p12 = fam.p12;
      cfg.mode = parse_mode(cp_mode);
      cfg.eps = Rational::parse(cp_eps);
      cfg.fixed_support = fam.fs;
      cfg.fs_full_support = cp_fs_full;
      cfg.fs_max_pitch = cp_max_pitch;
      cfg.max_iter = cp_max_iter;
      const auto start = std::chrono::steady_clock::now();
      const GapReport rep = run(inst, cfg, cp_file);
      const auto ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      std::cout << "int_opt=" << rep.int_opt << " lp_value=" << rep.lp_value << " gap=" << rep.gap << " ("
                << rep.gap.to_decimal(12) << ") reason=" << to_string(rep.reason) << " cuts_kc=" << rep.cuts_kc
                << " cuts_p12=" << rep.cuts_p12 << " cuts_fs=" << rep.cuts_fs << "\n";
      for (const Inequality& c : rep.cuts) std::cout << "  [" << to_string(c.family()) << "] " << c.str(inst) << "\n";
      if (!cp_report.empty()) {
        gaplab::ExperimentRow row;
        row.family = "file";
        row.n = static_cast<long>(inst.size());
        row.params = "families=" + cp_families + ";mode=" + cp_mode + ";kc_mode=" + cp_kc_mode +
                     (rep.kc_exhaustive ? ";kc=exhaustive" : "") + (rep.p12_exact ? ";p12=exact" : "");
        for (char& ch : row.params) {
          if (ch == ',') ch = '+';
        }
        row.int_opt = rep.int_opt;
        row.lp_value = rep.lp_value;
        row.gap = rep.gap;
        row.cuts_kc = rep.cuts_kc;
        row.cuts_p12 = rep.cuts_p12;
        row.cuts_fs = rep.cuts_fs;
        row.reason = to_string(rep.reason);
        row.ms = ms;
        std::ofstream out(cp_report);
        if (!out) throw std::runtime_error("cannot write " + cp_report);
        out << gaplab::csv_header() << "\n" << gaplab::csv_line(row) << "\n";
      }
      return kOk;
    }

    if (*ver_cmd) {
      const Instance inst = load(ver_file);
      const gaplab::DenseInequality d = gaplab::parse_dense_inequality(ver_ineq);
      if (d.coefs.size() != inst.size()) {
        throw PreconditionError("inequality has " + std::to_string(d.coefs.size()) + " coefficients, instance has " +
                                std::to_string(inst.size()) + " items");
      }
      const Inequality ineq = Inequality::from_dense(inst.to_sorted(d.coefs), d.rhs, Family::user);
      std::cout << "pitch=" << compute_pitch(ineq) << " valid=" << (is_valid(ineq, inst) ? "true" : "false") << "\n";
      return kOk;
    }

    if (*gt_cmd) {
      gaplab::GapConfig cfg;
      cfg.eps = Rational::parse(gt_eps);
      cfg.k = gt_k;
      const auto rows = gaplab::experiment_gap_table(gaplab::parse_family(gt_family), parse_long_list(gt_ns), cfg);
      std::ostringstream csv;
      csv << gaplab::csv_header() << "\n";
      bool ok = true;
      for (const auto& r : rows) {
        csv << gaplab::csv_line(r) << "\n";
        ok = ok && r.ok;
      }
      if (gt_out.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream out(gt_out);
        if (!out) throw std::runtime_error("cannot write " + gt_out);
        out << csv.str();
      }
      return ok ? kOk : kChecksFailed;
    }
  } catch (const gaplab::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ParseError& e) {
    std::cerr << "error: column " << e.offset() + 1 << ": " << e.what() << "\n";
    return kBadInput;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const Infeasible& e) {
    std::cerr << "error: infeasible: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kOk;
}
