#include "orbitforge/qr_checks.hpp"

#include <cmath>

#include "orbitforge/error.hpp"

namespace orbitforge {

namespace {

void require_zero_tending(const OrbitSequence& seq) {
  if (seq.tail.kind == TailInfo::Kind::TendsToZero) return;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (seq.modulus(i) < seq.modulus(i + 1))
      fail(Errc::invalid_sequence,
           "sequence must tend to zero (declare a tends-to-zero tail or "
           "supply a non-increasing prefix); moduli grow at index " +
               std::to_string(i));
  }
}

std::vector<BigFloat> log_moduli(const OrbitSequence& seq) {
  std::vector<BigFloat> logs;
  logs.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    BigFloat m = seq.modulus(i);
    if (m.is_zero())
      fail(Errc::zero_modulus, "zero modulus at index " + std::to_string(i));
    logs.push_back(log(m));
  }
  return logs;
}

enum class RowScope { TwoSided, OneSided };

QRConditionReport run_ratio_check(const OrbitSequence& seq,
                                  const QRParams& params, RowScope scope) {
  seq.validate();
  params.validate();
  require_zero_tending(seq);

  const Precision prec = seq.precision_bits;
  const std::vector<BigFloat> l = log_moduli(seq);
  const BigFloat mu(params.mu, prec);
  const BigFloat nu(params.nu, prec);
  const BigFloat two_log_C = params.two_log_C(prec);
  const BigFloat zero(0.0, prec);

  QRConditionReport report;
  for (std::size_t n = params.n0; n + 2 < seq.size(); ++n) {
    ++report.checked;
    BigFloat r = l[n] - l[n + 1];
    BigFloat s = l[n + 1] - l[n + 2];
    if (r >= zero) {
      BigFloat lower = mu * r - two_log_C;
      BigFloat upper = nu * r + two_log_C;
      if (scope == RowScope::TwoSided && !(lower <= s)) {
        report.down_ok = false;
        report.witnesses.push_back(
            {n, "down-lower", lower.to_double(), s.to_double()});
      }
      if (!(s <= upper)) {
        report.down_ok = false;
        report.witnesses.push_back(
            {n, "down-upper", s.to_double(), upper.to_double()});
      }
    } else {
      BigFloat u = -r;
      BigFloat t = -s;
      BigFloat lower = mu * u - two_log_C;
      BigFloat upper = nu * u + two_log_C;
      if (!(lower <= t)) {
        report.up_ok = false;
        report.witnesses.push_back(
            {n, "up-lower", lower.to_double(), t.to_double()});
      }
      if (scope == RowScope::TwoSided && !(t <= upper)) {
        report.up_ok = false;
        report.witnesses.push_back(
            {n, "up-upper", t.to_double(), upper.to_double()});
      }
    }
  }
  return report;
}

}  // namespace

BigFloat QRParams::C(Precision prec) const {
  return exp2(BigFloat(log2_C, prec));
}

BigFloat QRParams::two_log_C(Precision prec) const {
  return BigFloat(2.0 * log2_C, prec) * BigFloat::ln2(prec);
}

void QRParams::validate() const {
  if (!(mu > 0.0) || !(nu > 0.0))
    fail(Errc::invalid_sequence, "mu and nu must be strictly positive");
  if (log2_C < 0.0)
    fail(Errc::invalid_sequence, "C must be at least 1");
}

nlohmann::json QRParams::to_json() const {
  return {{"mu", mu}, {"nu", nu}, {"log2_C", log2_C}, {"n0", n0}};
}

nlohmann::json IneqWitness::to_json() const {
  return {{"n", n}, {"side", side}, {"lhs", lhs}, {"rhs", rhs}};
}

nlohmann::json QRConditionReport::to_json() const {
  nlohmann::json j;
  j["verdict"] = pass() ? "pass" : "fail";
  j["down_ok"] = down_ok;
  j["up_ok"] = up_ok;
  j["checked"] = checked;
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : witnesses) ws.push_back(w.to_json());
  j["witnesses"] = ws;
  return j;
}

QRConditionReport check_necessary(const OrbitSequence& seq,
                                  const QRParams& params) {
  return run_ratio_check(seq, params, RowScope::TwoSided);
}

QRConditionReport check_one_sided(const OrbitSequence& seq,
                                  const QRParams& params) {
  return run_ratio_check(seq, params, RowScope::OneSided);
}

ParamGrid ParamGrid::defaults() {
  ParamGrid grid;
  for (int i = 1; i <= 32; ++i) grid.mu.push_back(0.25 * i);
  grid.nu = grid.mu;
  grid.log2_C = {0.01, 0.1, 0.5, 1.0, 2.0, 5.0};
  return grid;
}

void ParamGrid::validate() const {
  if (mu.empty() || nu.empty() || log2_C.empty())
    fail(Errc::empty_selection, "parameter grid has an empty axis");
}

std::optional<QRParams> search_params(const OrbitSequence& seq,
                                      const ParamGrid& grid) {
  seq.validate();
  grid.validate();
  require_zero_tending(seq);

  const std::vector<BigFloat> logs = log_moduli(seq);
  std::vector<double> l(logs.size());
  double scale = 1.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    l[i] = logs[i].to_double();
    scale = std::max(scale, std::abs(l[i]));
  }
  const double slack = 1e-9 * scale;
  const double ln2 = std::log(2.0);

  for (double mu : grid.mu) {
    for (double nu : grid.nu) {
      for (double log2_C : grid.log2_C) {
        const double two_log_C = 2.0 * log2_C * ln2;
        bool plausible = true;
        for (std::size_t n = 0; n + 2 < l.size() && plausible; ++n) {
          double r = l[n] - l[n + 1];
          double s = l[n + 1] - l[n + 2];
          if (r < 0) {
            r = -r;
            s = -s;
          }
          if (mu * r - two_log_C > s + slack) plausible = false;
          if (s > nu * r + two_log_C + slack) plausible = false;
        }
        if (!plausible) continue;
        QRParams candidate{mu, nu, log2_C, 0};
        if (check_necessary(seq, candidate).pass()) return candidate;
      }
    }
  }
  return std::nullopt;
}

nlohmann::json HolderExponents::to_json() const {
  return {{"alpha", alpha}, {"beta", beta}, {"N", N}};
}

HolderExponents derive_holder(const QRParams& params,
                              const OrbitSequence& seq) {
  QRConditionReport hyp = check_one_sided(seq, params);
  if (!hyp.pass()) {
    const auto& w = hyp.witnesses.front();
    fail(Errc::hypothesis_violated,
         "one-sided ratio conditions fail at index " + std::to_string(w.n) +
             " (" + w.side + ")");
  }

  HolderExponents exps;
  exps.alpha = params.mu + 2.0 + std::max(params.mu, params.nu);
  exps.beta = params.mu / (2.0 * (params.mu + 1.0));

  // First index from which every modulus stays below min(1, C^(-4/mu)).
  const Precision prec = seq.precision_bits;
  const std::vector<BigFloat> l = log_moduli(seq);
  BigFloat threshold =
      min(BigFloat(0.0, prec),
          BigFloat(-4.0 / params.mu, prec) * BigFloat(params.log2_C, prec) *
              BigFloat::ln2(prec));
  std::size_t first_good = seq.size();
  for (std::size_t i = seq.size(); i-- > 0;) {
    if (l[i] < threshold) first_good = i;
    else break;
  }
  if (first_good == seq.size())
    fail(Errc::out_of_range,
         "no index within the prefix satisfies the start condition");
  exps.N = std::max(first_good, params.n0);
  return exps;
}

nlohmann::json HolderReport::to_json() const {
  nlohmann::json j;
  j["verdict"] = pass ? "pass" : "fail";
  j["checked"] = checked;
  j["start"] = start;
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : violations) vs.push_back(v.to_json());
  j["violations"] = vs;
  return j;
}

HolderReport verify_holder(const OrbitSequence& seq,
                           const HolderExponents& exps) {
  seq.validate();
  const Precision prec = seq.precision_bits;
  const std::vector<BigFloat> l = log_moduli(seq);
  const BigFloat alpha(exps.alpha, prec);
  const BigFloat beta(exps.beta, prec);

  HolderReport report;
  report.start = exps.N;
  for (std::size_t n = exps.N; n + 1 < seq.size(); ++n) {
    ++report.checked;
    BigFloat lower = alpha * l[n];  // log of x_n^alpha
    BigFloat upper = beta * l[n];
    if (!(lower <= l[n + 1])) {
      report.pass = false;
      report.violations.push_back(
          {n, "alpha", lower.to_double(), l[n + 1].to_double()});
    }
    if (!(l[n + 1] <= upper)) {
      report.pass = false;
      report.violations.push_back(
          {n, "beta", l[n + 1].to_double(), upper.to_double()});
    }
  }
  return report;
}

PairSelector pair_selector_from_string(const std::string& name) {
  if (name == "three-stride") return PairSelector::ThreeStride;
  if (name == "adjacent") return PairSelector::Adjacent;
  if (name == "all-pairs") return PairSelector::AllPairs;
  fail(Errc::parse_error, "unknown pair selector '" + name + "'");
}

const char* pair_selector_name(PairSelector s) {
  switch (s) {
    case PairSelector::ThreeStride: return "three-stride";
    case PairSelector::Adjacent: return "adjacent";
    case PairSelector::AllPairs: return "all-pairs";
  }
  return "adjacent";
}

nlohmann::json HolderViolationWitness::to_json() const {
  return {{"alpha", alpha}, {"log2_C", log2_C}, {"i", i},
          {"j", j},         {"log_lhs", log_lhs}, {"log_rhs", log_rhs}};
}

nlohmann::json HolderScanResult::to_json() const {
  nlohmann::json j;
  j["grid_points"] = grid_points;
  j["all_witnessed"] = all_witnessed;
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : witnesses) ws.push_back(w.to_json());
  j["witnesses"] = ws;
  return j;
}

BigFloat default_scan_disc(Precision prec) { return BigFloat(1e-3, prec); }

HolderScanResult holder_violation_scan(const OrbitSequence& seq,
                                       const std::vector<double>& alpha_grid,
                                       const std::vector<double>& log2_C_grid,
                                       PairSelector selector,
                                       const BigFloat& disc_radius) {
  seq.validate();
  if (alpha_grid.empty() || log2_C_grid.empty())
    fail(Errc::empty_selection, "empty exponent or constant grid");

  const Precision prec = seq.precision_bits;
  const std::size_t len = seq.size();

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto admit = [&](std::size_t i, std::size_t j) {
    if (j + 1 >= len) return;
    if (!(seq.modulus(i) < disc_radius) || !(seq.modulus(j) < disc_radius))
      return;
    pairs.emplace_back(i, j);
  };
  switch (selector) {
    case PairSelector::ThreeStride:
      for (std::size_t m = 0; 3 * m + 2 < len; ++m) admit(3 * m, 3 * m + 1);
      break;
    case PairSelector::Adjacent:
      for (std::size_t n = 0; n + 2 < len; ++n) admit(n, n + 1);
      break;
    case PairSelector::AllPairs:
      for (std::size_t i = 0; i + 1 < len; ++i)
        for (std::size_t j = i + 1; j + 1 < len; ++j) admit(i, j);
      break;
  }
  if (pairs.empty())
    fail(Errc::empty_selection, "no index pairs inside the disc");

  struct PairLogs {
    std::size_t i, j;
    BigFloat log_pre, log_img;
  };
  std::vector<PairLogs> rows;
  for (auto [i, j] : pairs) {
    BigFloat pre = distance(seq.at(i), seq.at(j));
    BigFloat img = distance(seq.at(i + 1), seq.at(j + 1));
    if (pre.is_zero() || img.is_zero()) continue;  // cannot witness
    rows.push_back({i, j, log(pre), log(img)});
  }

  HolderScanResult result;
  result.grid_points = alpha_grid.size() * log2_C_grid.size();
  const BigFloat ln2 = BigFloat::ln2(prec);
  std::size_t hits = 0;
  for (double alpha : alpha_grid) {
    for (double log2_C : log2_C_grid) {
      BigFloat log_C = BigFloat(log2_C, prec) * ln2;
      BigFloat a(alpha, prec);
      for (const auto& row : rows) {
        BigFloat rhs = log_C + a * row.log_pre;
        if (row.log_img > rhs) {
          result.witnesses.push_back({alpha, log2_C, row.i, row.j,
                                      row.log_img.to_double(),
                                      rhs.to_double()});
          ++hits;
          break;
        }
      }
    }
  }
  result.all_witnessed = hits == result.grid_points;
  return result;
}

}  // namespace orbitforge
