#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "minknap/cutloop.hpp"
#include "minknap/instance.hpp"

namespace minknap::gaplab {

// ---- generators (items in the order listed; threshold as given) ----

/// y (cost eps, profit n - sqrt n), z (cost sqrt n, profit n/2),
/// x1..xn (cost 1, profit 1); threshold n. n must be a square >= 4.
RawInstance gen_lemma4(long n, const Rational& eps);

/// x1..xn (cost 1, profit 1), z1..zn (cost 1/sqrt n, profit 1/n);
/// threshold 1 + 1/sqrt n. n must be a square.
RawInstance gen_ola(long n);

/// Seven items with profits 5,6,11,16,17,18,21, unit costs, threshold 41.
RawInstance gen_pitch3_wild();

/// Profits (and costs, unless p_equals_c) drawn uniformly from
/// {1/16, ..., 16/16}; redrawn until the profits sum to at least 1.
RawInstance gen_random(std::size_t n, std::uint64_t seed, bool p_equals_c);

/// Integer square root; throws PreconditionError when n is not a square.
long square_root(long n);

/// Fractional point for gen_lemma4, input order: y = 1, z = 2/sqrt n,
/// x_i = 1/(n - sqrt n + 1).
Point lemma4_point(long n);
/// Its cost: eps + 2 + n/(n - sqrt n + 1).
Rational lemma4_point_cost(long n, const Rational& eps);

/// Fractional point for gen_ola, input order: x_i = (1 + 1/sqrt n)/n, z_j = k/n.
Point ola_point(long n, std::size_t k);
/// Its cost: 1 + 1/sqrt n + k/sqrt n.
Rational ola_point_cost(long n, std::size_t k);

// ---- instance files ----

/// Syntax error with 1-based position.
class FormatError : public std::invalid_argument {
 public:
  FormatError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

std::string serialize(const RawInstance& raw);
RawInstance parse_instance(std::string_view text);
RawInstance read_instance_file(const std::filesystem::path& path);
void write_instance_file(const std::filesystem::path& path, const RawInstance& raw);

/// "a/b,c/d,..." (line 1 for error positions).
std::vector<Rational> parse_rational_list(std::string_view text);

/// "w1,...,wn >= beta"
struct DenseInequality {
  std::vector<Rational> coefs;
  Rational rhs;
};
DenseInequality parse_dense_inequality(std::string_view text);

// ---- experiments ----

struct ExperimentRow {
  std::string family;
  long n = 0;
  std::string params;  ///< ';'-separated key=value pairs, including check results
  Rational int_opt;
  Rational lp_value;
  Rational gap;
  std::size_t cuts_kc = 0;
  std::size_t cuts_p12 = 0;
  std::size_t cuts_fs = 0;
  std::string reason;
  long long ms = 0;
  bool ok = true;  ///< every check passed and no error
};

std::string csv_header();
std::string csv_line(const ExperimentRow& row);

enum class GapFamily { lemma4, ola, pitch3_wild };
GapFamily parse_family(std::string_view name);
std::string_view to_string(GapFamily f);

struct GapConfig {
  Rational eps = Rational(1, 8);  ///< lemma4 cost of y
  std::size_t k = 2;              ///< ola point parameter and pitch bound
};

/// The cut configuration each family is run with.
CutLoopConfig prescribed_config(GapFamily family, const GapConfig& cfg);

/// One row per n. Failures are recorded in the row and the run continues.
std::vector<ExperimentRow> experiment_gap_table(GapFamily family, const std::vector<long>& ns,
                                                const GapConfig& cfg);

}  // namespace minknap::gaplab
