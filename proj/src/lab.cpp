#include "ldlab/lab.hpp"

#include <chrono>
#include <sstream>

namespace ldlab {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t index, std::size_t attempt) {
  return splitmix64(splitmix64(splitmix64(seed) + index) + attempt);
}

// Exponent vectors of total degree `degree` in n variables, lex descending.
void monomials_of_degree(std::size_t n, std::size_t degree, std::vector<std::uint32_t>& prefix,
                         std::vector<Monomial>& out) {
  if (prefix.size() + 1 == n) {
    prefix.push_back(static_cast<std::uint32_t>(degree));
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::size_t e = degree + 1; e-- > 0;) {
    prefix.push_back(static_cast<std::uint32_t>(e));
    monomials_of_degree(n, degree - e, prefix, out);
    prefix.pop_back();
  }
}

std::vector<Monomial> monomials_of_degree(std::size_t n, std::size_t degree) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> prefix;
  monomials_of_degree(n, degree, prefix, out);
  return out;
}

const char* const kVariableNames[] = {"x", "y", "z", "w"};

nlohmann::json flags_json(const Flags& f) {
  return {{"sega-mismatch", f.sega_mismatch},
          {"corollary-violation", f.corollary_violation},
          {"proposition-violation", f.proposition_violation},
          {"theorem71-violation", f.theorem71_violation},
          {"remark-mismatch", f.remark_mismatch},
          {"bridge-mismatch", f.bridge_mismatch},
          {"structure-violation", f.structure_violation},
          {"silence-tail", f.silence_tail},
          {"index-set-difference", f.index_set_difference}};
}

template <typename T>
std::string join(const std::vector<T>& v, const char* sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

}  // namespace

nlohmann::json report_to_json(const AlgebraReport& r) {
  nlohmann::json j;
  j["presentation"] = r.presentation.empty() ? nlohmann::json() : nlohmann::json(r.presentation);
  j["field"] = r.field;
  j["dim"] = r.dim;
  j["top_level"] = r.top_level;
  j["filtration"] = r.filtration;
  j["hilbert"] = r.hilbert;
  j["graded"] = r.graded;
  j["horizon"] = r.horizon;
  j["betti"] = r.betti;
  nlohmann::json by_degree = nlohmann::json::array();
  for (const auto& h : r.homology) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& [deg, dim] : h) row.push_back({deg, dim});
    by_degree.push_back(std::move(row));
  }
  j["homology"] = {{"h", r.lin.values}, {"by_degree", std::move(by_degree)}};
  j["upsilon"] = {{"ranks", r.upsilon_ranks}, {"tor_dims", r.tor_dims}, {"profile", r.sega.values}};
  j["classification"] = r.lin.classification();
  j["upsilon_classification"] = r.sega.classification();
  j["classifications_agree"] = r.classifications_agree;
  j["index_sets_agree"] = r.index_sets_agree;
  j["tail_length"] = r.tail_length;
  j["remark"] = r.remark;
  j["corollary"] = r.corollary;
  j["proposition"] = r.proposition;
  if (r.theorem71) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& o : *r.theorem71)
      t.push_back({{"i", o.index}, {"upsilon1_zero", o.antecedent}, {"upsilon2_zero", o.consequent}});
    j["theorem71"] = std::move(t);
  } else {
    j["theorem71"] = nullptr;
  }
  j["flags"] = flags_json(r.flags);
  j["findings"] = r.findings;
  return j;
}

std::string report_to_text(const AlgebraReport& r) {
  std::ostringstream os;
  if (!r.presentation.empty()) os << r.presentation;
  os << "field            " << r.field << "\n";
  os << "dim R            " << r.dim << (r.graded ? " (graded)" : "") << "\n";
  os << "dim m^j          " << join(r.filtration) << "\n";
  os << "hilbert gr(R)    " << join(r.hilbert) << "\n";
  os << "betti b_0..b_" << r.horizon << "   " << join(r.betti) << "\n";
  os << "lin homology     h_1..h_" << r.horizon << " = " << join(r.lin.values) << "\n";
  for (std::size_t n = 0; n < r.homology.size(); ++n) {
    if (r.homology[n].empty()) continue;
    os << "  H_" << n << ":";
    for (const auto& [deg, dim] : r.homology[n]) os << " degree " << deg << " dim " << dim << ";";
    os << "\n";
  }
  os << "upsilon ranks    (rows i = 0.." << r.horizon << ", columns n = 1.."
     << (r.upsilon_ranks.empty() ? 0 : r.upsilon_ranks[0].size()) << ")\n";
  for (std::size_t i = 0; i < r.upsilon_ranks.size(); ++i)
    os << "  i=" << i << ": " << join(r.upsilon_ranks[i]) << (r.remark[i] ? "" : "   (remark condition fails)")
       << "\n";
  os << "classification   " << r.lin.classification() << "\n";
  os << "upsilon oracle   " << r.sega.classification() << (r.index_sets_agree ? "" : " (index sets differ)")
     << "\n";
  os << "flags           ";
  bool any = false;
  const auto flags = flags_json(r.flags);
  for (const auto& [name, value] : flags.items())
    if (value.get<bool>()) {
      os << " " << name;
      any = true;
    }
  os << (any ? "" : " none") << "\n";
  for (const auto& f : r.findings) os << "  finding: " << f << "\n";
  return os.str();
}

void ScanConfig::validate() const {
  if (variables < 1 || variables > 4) throw InvalidInput("--vars must be between 1 and 4");
  if (!is_prime(characteristic)) throw InvalidInput("--char must be a prime below 2^31");
  if (nilpotency < 3 || nilpotency > 5) throw InvalidInput("--nilpotency must be 3, 4 or 5");
  if (extra_min > extra_max) throw InvalidInput("extra generator range is empty");
  if (degree_min < 2 || degree_min > degree_max) throw InvalidInput("form degrees must satisfy 2 <= min <= max");
  if (degree_min >= nilpotency) throw InvalidInput("form degrees must lie below the nilpotency target");
  if (horizon < 1) throw InvalidInput("--horizon must be at least 1");
  if (max_attempts < 1) throw InvalidInput("max_attempts must be positive");
}

nlohmann::json ScanConfig::to_json() const {
  return {{"vars", variables},       {"char", characteristic},    {"nilpotency", nilpotency},
          {"extra_min", extra_min},  {"extra_max", extra_max},    {"degree_min", degree_min},
          {"degree_max", degree_max}, {"horizon", horizon},       {"count", count},
          {"seed", seed},            {"max_dim", max_dim},        {"rng", kRngAlgorithm}};
}

RandomAlgebra random_algebra(const ScanConfig& cfg, std::size_t index) {
  cfg.validate();
  const std::size_t n = cfg.variables;
  const std::uint32_t p = cfg.characteristic;
  const PrimeField field(p);
  const std::size_t top_degree = std::min(cfg.degree_max, cfg.nilpotency - 1);
  const auto power = monomials_of_degree(n, cfg.nilpotency);

  for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    std::mt19937_64 rng(sample_seed(cfg.seed, index, attempt));
    RingPresentation pres;
    pres.field = FieldSpec::prime(p);
    for (std::size_t v = 0; v < n; ++v) pres.variables.emplace_back(kVariableNames[v]);

    const std::size_t forms = cfg.extra_min + rng() % (cfg.extra_max - cfg.extra_min + 1);
    for (std::size_t k = 0; k < forms; ++k) {
      const std::size_t degree = cfg.degree_min + rng() % (top_degree - cfg.degree_min + 1);
      RawPolynomial f;
      while (f.terms.empty()) {
        for (const auto& m : monomials_of_degree(n, degree)) {
          const std::uint64_t c = rng() % p;
          if (c != 0) f.terms.emplace_back(m, mpq_class(static_cast<unsigned long>(c)));
        }
      }
      pres.generators.push_back(std::move(f));
    }
    for (const auto& m : power) pres.generators.push_back(RawPolynomial{{{m, mpq_class(1)}}});

    auto algebra = build_algebra(pres, field);
    // Degenerate: k itself, or a variable lost to a linear relation.
    if (algebra->dim() <= 1 || algebra->embedding_dim() < n) continue;
    if (algebra->dim() > cfg.max_dim) continue;
    return RandomAlgebra{std::move(pres), std::move(algebra), attempt + 1};
  }
  throw ResourceLimit("no admissible algebra for sample " + std::to_string(index) + " within " +
                      std::to_string(cfg.max_attempts) + " attempts");
}

nlohmann::json ScanSummary::to_json(const ScanConfig& cfg) const {
  nlohmann::json j;
  j["schema"] = 1;
  j["config"] = cfg.to_json();
  j["samples"] = samples;
  j["completed"] = completed;
  j["resource_limited"] = resource_limited;
  j["resampled"] = resampled;
  j["violations"] = violations;
  j["classifications"] = classifications;
  j["flags"] = flags;
  j["exploratory"] = cfg.nilpotency >= 5;
  return j;
}

ScanSummary scan(const ScanConfig& cfg, std::ostream& out, const CheckOptions& opts,
                 const std::function<void(std::size_t, const RandomAlgebra&, const AlgebraReport&)>& on_report) {
  cfg.validate();
  ScanSummary summary;
  const auto no_flags = flags_json(Flags{});
  for (const auto& [name, value] : no_flags.items()) summary.flags[name] = 0;
  for (std::size_t index = 0; index < cfg.count; ++index) {
    ++summary.samples;
    nlohmann::json record;
    record["schema"] = 1;
    record["sample"] = index;
    record["seed"] = cfg.seed;
    if (cfg.timestamp) {
      const auto now = std::chrono::system_clock::now().time_since_epoch();
      record["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
    } else {
      record["timestamp"] = nullptr;
    }
    try {
      const auto sample = random_algebra(cfg, index);
      summary.resampled += sample.attempts - 1;
      record["attempts"] = sample.attempts;
      record["presentation"] = sample.presentation.to_text();
      auto report = full_check(sample.algebra, cfg.horizon, opts);
      report.presentation = sample.presentation.to_text();
      record["status"] = "ok";
      record.update(report_to_json(report));
      ++summary.completed;
      ++summary.classifications[report.classification()];
      const auto flags = flags_json(report.flags);
      for (const auto& [name, value] : flags.items())
        if (value.get<bool>()) ++summary.flags[name];
      if (report.flags.any_violation()) ++summary.violations;
      if (on_report) on_report(index, sample, report);
    } catch (const ResourceLimit& e) {
      ++summary.resource_limited;
      record["status"] = "resource_limit";
      record["message"] = e.what();
    }
    out << record.dump() << '\n';
    out.flush();
    if (!out) throw Error("failed writing scan results");
  }
  return summary;
}

}  // namespace ldlab
