#include "qfock/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace qfock {

using nlohmann::json;

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string mixing_csv(const std::vector<ResultRow>& rows) {
  std::string out = "n,term,partial_sum,ratio\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n) + "," + format_double(row.term) + "," +
           format_double(row.partial_sum) + ",";
    if (row.ratio) out += format_double(*row.ratio);
    out += "\n";
  }
  return out;
}

std::string decay_csv(const std::vector<ResultRow>& rows, double q_max) {
  std::string out = "n,value,qmax_pow_n\n";
  for (const auto& row : rows) {
    const double value = row.zeta_norm_ratio.value_or(0.0);
    out += std::to_string(row.n) + "," + format_double(value) + "," +
           format_double(std::pow(q_max, row.n)) + "\n";
  }
  return out;
}

std::string lemma3_csv(const std::vector<Lemma3Row>& rows) {
  std::string out = "n,value,qmax_pow_n\n";
  for (const auto& row : rows)
    out += std::to_string(row.degree) + "," + format_double(row.ratio) + "," +
           format_double(row.q_max_pow) + "\n";
  return out;
}

std::string gram_csv(const std::vector<GramRow>& rows) {
  std::string out = "n,dim,min_eig,max_eig,cond\n";
  for (const auto& row : rows)
    out += std::to_string(row.n) + "," + std::to_string(row.dim) + "," +
           format_double(row.min_eig) + "," + format_double(row.max_eig) + "," +
           format_double(row.cond) + "\n";
  return out;
}

std::string fit_summary(const DecayFit& fit, std::optional<double> tail_bound) {
  std::ostringstream os;
  if (fit.exact_zero) {
    os << "fit: exact-zero window [" << fit.window_lo << "," << fit.window_hi
       << "] (rate 0 by convention)";
  } else {
    os << "fit: rate=" << format_double(fit.fitted_rate) << " C_hat=" << format_double(fit.c_hat)
       << " window=[" << fit.window_lo << "," << fit.window_hi << "] points=" << fit.points_used;
  }
  if (tail_bound) os << " tail_bound=" << format_double(*tail_bound) << " (empirical)";
  return os.str();
}

namespace {

json row_to_json(const ResultRow& row) {
  json j;
  j["n"] = row.n;
  j["term"] = row.term;
  j["partial_sum"] = row.partial_sum;
  if (row.ratio) j["ratio"] = *row.ratio;
  if (row.zeta_norm_ratio) j["zeta_norm_ratio"] = *row.zeta_norm_ratio;
  return j;
}

json fit_to_json(const DecayFit& fit) {
  json j;
  j["fitted_rate"] = fit.fitted_rate;
  j["c_hat"] = fit.c_hat;
  j["window"] = json::array({fit.window_lo, fit.window_hi});
  j["points_used"] = fit.points_used;
  j["exact_zero"] = fit.exact_zero;
  return j;
}

}  // namespace

std::string RunReport::to_json_text() const {
  json j;
  j["config"] = config_json.empty() ? json(nullptr) : json::parse(config_json);
  j["environment"] = {{"precision", "ieee754-binary64"},
                      {"seed", seed},
                      {"memory_budget_bytes", memory_budget_bytes}};
  json inv = json::array();
  for (const auto& r : invariants) {
    json e;
    e["name"] = r.name;
    e["residual"] = r.residual;
    e["tolerance"] = r.tolerance;
    e["pass"] = r.pass;
    if (!r.note.empty()) e["note"] = r.note;
    inv.push_back(e);
  }
  j["invariants"] = inv;
  json exps = json::array();
  for (const auto& er : experiments) {
    json e;
    e["name"] = er.name;
    switch (er.mode) {
      case ExperimentSpec::Mode::mixing_sum: e["mode"] = "mixing_sum"; break;
      case ExperimentSpec::Mode::zeta_probe: e["mode"] = "zeta_probe"; break;
      case ExperimentSpec::Mode::lemma3_probe: e["mode"] = "lemma3_probe"; break;
    }
    json rows = json::array();
    for (const auto& row : er.rows) rows.push_back(row_to_json(row));
    for (const auto& row : er.lemma3_rows) {
      json r;
      r["n"] = row.degree;
      r["value"] = row.ratio;
      r["qmax_pow_n"] = row.q_max_pow;
      rows.push_back(r);
    }
    e["rows"] = rows;
    if (er.fit) e["fit"] = fit_to_json(*er.fit);
    if (er.tail_bound) e["tail_bound"] = *er.tail_bound;
    if (er.total) e["total"] = *er.total;
    if (er.zeta_identically_zero) e["zeta_identically_zero"] = true;
    if (er.lost_mass2 > 0.0) e["lost_mass2"] = er.lost_mass2;
    exps.push_back(e);
  }
  j["experiments"] = exps;
  if (!gram_rows.empty()) {
    json rows = json::array();
    for (const auto& row : gram_rows) {
      json r;
      r["n"] = row.n;
      r["dim"] = row.dim;
      r["min_eig"] = row.min_eig;
      r["max_eig"] = row.max_eig;
      r["cond"] = row.cond;
      rows.push_back(r);
    }
    j["gram"] = rows;
  }
  return j.dump(2);
}

}  // namespace qfock
