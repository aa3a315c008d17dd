#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "ldlab/linear_part.hpp"
#include "ldlab/presentation.hpp"
#include "ldlab/tor_ladder.hpp"

namespace ldlab {

struct Flags {
  bool sega_mismatch = false;
  bool corollary_violation = false;
  bool proposition_violation = false;
  bool theorem71_violation = false;
  bool remark_mismatch = false;
  bool bridge_mismatch = false;
  bool structure_violation = false;
  // Informational, not violations.
  bool silence_tail = false;
  bool index_set_difference = false;

  bool any_violation() const {
    return sega_mismatch || corollary_violation || proposition_violation || theorem71_violation || remark_mismatch ||
           bridge_mismatch || structure_violation;
  }
};

// Everything full_check learns about the residue field of one algebra.
struct AlgebraReport {
  std::string presentation;  // empty for algebras read from a table
  std::string field;
  std::size_t dim = 0;
  std::size_t top_level = 0;
  std::vector<std::size_t> filtration;  // dim m^j for j = 0..t+1
  std::vector<std::size_t> hilbert;     // dim m^j / m^{j+1} for j = 0..t
  bool graded = false;
  std::size_t horizon = 0;
  std::vector<std::size_t> betti;  // b_0..b_N
  DefectProfile lin;
  DefectProfile sega;
  // Nonzero (internal degree, dim) pairs of H_n(lin) for n = 0..N.
  std::vector<std::vector<std::pair<int, std::size_t>>> homology;
  std::vector<std::vector<std::size_t>> upsilon_ranks;  // [i][n - 1], n = 1..t
  std::vector<std::vector<std::size_t>> tor_dims;       // [i][n], n = 0..t+1
  std::vector<bool> remark;                             // remark_condition(k, i), i = 0..N
  std::vector<bool> corollary;                          // m* Z_n in B_n, n = 0..N
  std::vector<bool> proposition;                        // m* Z_d = m* B_d, d = 1..N
  std::optional<std::vector<ImplicationOutcome>> theorem71;
  bool classifications_agree = true;
  bool index_sets_agree = true;
  std::size_t tail_length = 0;
  Flags flags;
  std::vector<std::string> findings;

  std::string classification() const { return lin.classification(); }
};

struct CheckOptions {
  ResolveOptions resolve;
  std::size_t silence_tail_min = 2;
};

// Resolves k through N + 1 and runs every check on H_0..H_N and the
// upsilon ladder at i = 0..N.
template <ExactField F>
AlgebraReport full_check(std::shared_ptr<const FiniteLocalAlgebra<F>> algebra, std::size_t horizon,
                         const CheckOptions& opts = {}) {
  if (horizon < 1) throw InvalidInput("full check needs a horizon of at least 1");
  const auto& a = *algebra;
  AlgebraReport r;
  r.field = a.field().spec().name();
  r.dim = a.dim();
  r.top_level = a.top_level();
  r.filtration = a.power_dims();
  for (std::size_t j = 0; j <= a.top_level(); ++j) r.hilbert.push_back(a.level_dim(j));
  r.graded = a.is_graded();
  r.horizon = horizon;

  const auto res = resolve(residue_field(algebra), horizon + 1, opts.resolve);
  r.betti.assign(res.betti.begin(), res.betti.begin() + horizon + 1);

  const auto structure = verify_resolution(res, opts.resolve);
  for (const auto& msg : structure.failures) r.findings.push_back("resolution: " + msg);
  r.flags.structure_violation = !structure.ok();

  const auto lin = linear_part(res);
  if (!squares_to_zero(lin)) {
    r.flags.structure_violation = true;
    r.findings.push_back("linear part: d* d* != 0");
  }
  const auto profile = linearity_defect_profile(lin, horizon);
  r.lin = profile.profile;
  if (!euler_characteristics_agree(lin, profile.homology)) {
    r.flags.structure_violation = true;
    r.findings.push_back("linear part: Euler characteristics of chains and homology differ");
  }
  for (const auto& h : profile.homology) {
    std::vector<std::pair<int, std::size_t>> nz;
    for (std::size_t k = 0; k < h.degrees.size(); ++k)
      if (h.dims[k] != 0) nz.emplace_back(h.degrees[k], h.dims[k]);
    r.homology.push_back(std::move(nz));
  }

  const auto ladder = upsilon_ladder(res, horizon, opts.resolve);
  r.sega = sega_defect(ladder);
  for (std::size_t i = 0; i <= horizon; ++i) {
    std::vector<std::size_t> ranks;
    for (std::size_t n = 1; n <= ladder.powers; ++n) ranks.push_back(ladder.rank(i, n));
    r.upsilon_ranks.push_back(std::move(ranks));
    r.tor_dims.push_back(ladder.tor_dims[i]);
    if (ladder.tor_dims[i].size() > 1 && ladder.tor_dims[i][1] != r.betti[i]) {
      r.flags.structure_violation = true;
      r.findings.push_back("dim Tor_" + std::to_string(i) + "(k,k) differs from b_" + std::to_string(i));
    }
  }

  // Two defect oracles.
  r.classifications_agree = r.lin.classification() == r.sega.classification();
  r.index_sets_agree = r.lin.nonzero_indices() == r.sega.nonzero_indices();
  r.flags.sega_mismatch = !r.classifications_agree;
  r.flags.index_set_difference = !r.index_sets_agree;
  if (!r.classifications_agree) {
    r.findings.push_back("defect oracles disagree: lin says '" + r.lin.classification() + "', upsilon says '" +
                         r.sega.classification() + "'");
  } else if (!r.index_sets_agree) {
    r.findings.push_back("defect oracles agree on the classification but not on the nonzero index sets");
  }

  // Remark condition against upsilon^1, and its shadow in lin: a homology
  // class in internal degree i at index i.
  for (std::size_t i = 0; i <= horizon; ++i) {
    const bool cond = remark_condition(res, i, opts.resolve);
    r.remark.push_back(cond);
    const bool u1_zero = ladder.rank(i, 1) == 0;
    if (cond != u1_zero) {
      r.flags.remark_mismatch = true;
      r.findings.push_back("remark condition at i=" + std::to_string(i) + " disagrees with upsilon^1");
    }
    const bool degree_i_class = profile.homology[i].dim_in_degree(static_cast<int>(i)) != 0;
    if (degree_i_class == u1_zero) {
      r.flags.bridge_mismatch = true;
      r.findings.push_back("H_" + std::to_string(i) + "(lin) in internal degree " + std::to_string(i) +
                           " disagrees with upsilon^1");
    }
  }

  for (std::size_t n = 0; n <= horizon; ++n) {
    const auto cert = mstar_annihilation_check(lin, profile.homology[n]);
    r.corollary.push_back(!cert);
    if (cert) {
      r.flags.corollary_violation = true;
      r.findings.push_back("m* H_" + std::to_string(n) + " != 0: a cycle of internal degree " +
                           std::to_string(cert->degree) + " times degree-one element " +
                           std::to_string(cert->generator) + " is not a boundary");
    }
  }

  // Proposition: asserted only when nothing is visible up to the horizon;
  // otherwise its hypothesis ld <= d is unknown and the result is logged.
  const bool ld_zero = !r.lin.last_nonzero().has_value();
  for (std::size_t d = 1; d <= horizon; ++d) {
    const bool ok = proposition_equality_check(lin, profile.homology[d]);
    r.proposition.push_back(ok);
    if (ld_zero && (!ok || ladder.rank(d, 1) != 0)) {
      r.flags.proposition_violation = true;
      r.findings.push_back("proposition fails at d=" + std::to_string(d) + " although ld=0 up to the horizon");
    }
  }
  if (ld_zero) {
    for (std::size_t i = 1; i <= horizon; ++i)
      for (std::size_t n = 1; n <= ladder.powers; ++n)
        if (ladder.rank(i, n) != 0) {
          r.flags.proposition_violation = true;
          r.findings.push_back("upsilon^" + std::to_string(n) + "_" + std::to_string(i) +
                               " != 0 although ld=0 up to the horizon");
        }
  }

  if (a.top_level() <= 3) {
    r.theorem71 = theorem71_implication(ladder);
    for (const auto& o : *r.theorem71)
      if (o.violated()) {
        r.flags.theorem71_violation = true;
        r.findings.push_back("upsilon^1_" + std::to_string(o.index) + " = 0 but upsilon^2_" +
                             std::to_string(o.index) + " != 0");
      }
  }

  r.tail_length = r.lin.tail_length();
  r.flags.silence_tail = silence_tail(r.lin, opts.silence_tail_min);
  return r;
}

nlohmann::json report_to_json(const AlgebraReport& r);
std::string report_to_text(const AlgebraReport& r);

// Random algebras k[x_1..x_n] / (random forms + all degree-c monomials).
struct ScanConfig {
  std::size_t variables = 2;        // 1..4
  std::uint32_t characteristic = 101;
  std::size_t nilpotency = 4;       // c: m^c = 0
  std::size_t extra_min = 1;        // random forms per sample
  std::size_t extra_max = 3;
  std::size_t degree_min = 2;       // degrees of the random forms
  std::size_t degree_max = 3;
  std::size_t horizon = 6;
  std::size_t count = 50;
  std::uint64_t seed = 1;
  std::size_t max_dim = 20;         // resample above this dim R
  std::size_t max_attempts = 1000;  // per sample
  bool timestamp = false;           // wall-clock field in records

  void validate() const;
  nlohmann::json to_json() const;
};

// Identifies the sample stream so other implementations can replay it.
inline constexpr const char* kRngAlgorithm = "mt19937_64(splitmix64(seed, index, attempt)); coeff = next() % p";

struct RandomAlgebra {
  RingPresentation presentation;
  std::shared_ptr<const FiniteLocalAlgebra<PrimeField>> algebra;
  std::size_t attempts = 1;  // 1 + number of resamples
};

RandomAlgebra random_algebra(const ScanConfig& cfg, std::size_t index);

struct ScanSummary {
  std::size_t samples = 0;
  std::size_t completed = 0;
  std::size_t resource_limited = 0;
  std::size_t resampled = 0;
  std::size_t violations = 0;  // samples with any violation flag
  std::map<std::string, std::size_t> classifications;
  std::map<std::string, std::size_t> flags;

  nlohmann::json to_json(const ScanConfig& cfg) const;
};

// One JSON line per sample to `out`. `on_report` (optional) sees every
// completed report, e.g. for acceptance bookkeeping.
ScanSummary scan(const ScanConfig& cfg, std::ostream& out, const CheckOptions& opts = {},
                 const std::function<void(std::size_t, const RandomAlgebra&, const AlgebraReport&)>& on_report = {});

}  // namespace ldlab
