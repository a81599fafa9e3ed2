#include "qfock/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qfock {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* name : allowed)
      if (it.key() == name) known = true;
    if (!known) throw ConfigError("unknown field '" + it.key() + "' in " + where);
  }
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + " must be an integer");
  return j.get<int>();
}

Eigen::VectorXd as_vector(const json& j, int n_letters, const std::string& where) {
  // A bare integer means the basis letter, an array explicit coefficients.
  if (j.is_number_integer()) {
    const int letter = j.get<int>();
    if (letter < 1 || letter > n_letters)
      throw ConfigError(where + ": letter " + std::to_string(letter) + " out of range [1.." +
                        std::to_string(n_letters) + "]");
    return Eigen::VectorXd::Unit(n_letters, letter - 1);
  }
  if (!j.is_array() || static_cast<int>(j.size()) != n_letters)
    throw ConfigError(where + " must be a letter or an array of " +
                      std::to_string(n_letters) + " reals");
  Eigen::VectorXd v(n_letters);
  for (int k = 0; k < n_letters; ++k) v(k) = as_number(j[k], where);
  return v;
}

LadderWord as_ladder(const json& j, const std::string& where) {
  if (j.is_string()) return LadderWord::parse(j.get<std::string>());
  if (j.is_array()) {
    std::string joined;
    for (const auto& tok : j) {
      if (!tok.is_string()) throw ConfigError(where + " must be a string or string array");
      if (!joined.empty()) joined += " ";
      joined += tok.get<std::string>();
    }
    return LadderWord::parse(joined);
  }
  throw ConfigError(where + " must be a string or string array");
}

ExperimentSpec parse_experiment(const json& j, const RunConfig& config) {
  if (!j.is_object()) throw ConfigError("experiments entries must be objects");
  reject_unknown(j,
                 {"name", "mode", "x_word", "y_word", "ladder", "a_word", "b_word", "n_min",
                  "n_max", "fit_window"},
                 "experiment");
  ExperimentSpec spec;
  spec.name = j.value("name", std::string("experiment"));
  const std::string mode = j.value("mode", std::string());
  const std::string where = "experiment '" + spec.name + "'";
  if (mode == "mixing_sum")
    spec.mode = ExperimentSpec::Mode::mixing_sum;
  else if (mode == "zeta_probe")
    spec.mode = ExperimentSpec::Mode::zeta_probe;
  else if (mode == "lemma3_probe")
    spec.mode = ExperimentSpec::Mode::lemma3_probe;
  else
    throw ConfigError(where + ": mode must be mixing_sum, zeta_probe or lemma3_probe");

  const int n_letters = config.q.n_letters();
  for (const char* field : {"x_word", "y_word"}) {
    if (!j.contains(field)) continue;
    if (spec.mode != ExperimentSpec::Mode::mixing_sum)
      throw ConfigError(where + ": " + field + " only applies to mixing_sum");
    auto& target = std::string(field) == "x_word" ? spec.x_word : spec.y_word;
    if (!j[field].is_array()) throw ConfigError(where + ": " + field + " must be an array");
    for (const auto& entry : j[field])
      target.push_back(as_vector(entry, n_letters, where + " " + field));
  }
  if (j.contains("ladder")) {
    if (spec.mode != ExperimentSpec::Mode::zeta_probe)
      throw ConfigError(where + ": ladder only applies to zeta_probe");
    spec.ladder = as_ladder(j["ladder"], where + " ladder");
  }
  for (const char* field : {"a_word", "b_word"}) {
    if (!j.contains(field)) continue;
    if (spec.mode != ExperimentSpec::Mode::lemma3_probe)
      throw ConfigError(where + ": " + field + " only applies to lemma3_probe");
    (std::string(field) == "a_word" ? spec.a_word : spec.b_word) =
        as_ladder(j[field], where + " " + field);
  }
  if (spec.mode == ExperimentSpec::Mode::zeta_probe && spec.ladder.symbols.empty())
    throw ConfigError(where + ": zeta_probe needs a ladder word");
  if (spec.mode == ExperimentSpec::Mode::lemma3_probe && spec.a_word.symbols.empty())
    throw ConfigError(where + ": lemma3_probe needs a_word");

  if (!j.contains("n_max")) throw ConfigError(where + ": n_max is required");
  spec.n_min = j.contains("n_min") ? as_int(j["n_min"], where + " n_min") : 0;
  spec.n_max = as_int(j["n_max"], where + " n_max");
  if (j.contains("fit_window")) {
    const auto& w = j["fit_window"];
    if (!w.is_array() || w.size() != 2)
      throw ConfigError(where + ": fit_window must be [lo, hi]");
    spec.fit_lo = as_int(w[0], where + " fit_window");
    spec.fit_hi = as_int(w[1], where + " fit_window");
  }
  spec.xi0 = config.xi0;
  spec.max_degree = config.max_degree;
  return spec;
}

std::size_t env_budget_or_default() {
  if (const char* env = std::getenv("QFOCK_MEMORY_BUDGET")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && parsed > 0) return static_cast<std::size_t>(parsed);
  }
  return kDefaultMemoryBudget;
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tols = {
      {"braid_relation", 1e-12},
      {"symmetrizer_oracle", 1e-10},
      {"reduced_word_independence", 1e-12},
      {"degree_orthogonality", 0.0},
      {"inner_symmetry", 1e-13},
      {"positivity_min_eig", 1e-12},
      {"adjoint_duality", 1e-10},
      {"commutant_seed_slack", 1e-8},
      {"commutator_bound_slack", 1e-8},
      {"wick_vacuum", 1e-11},
      {"wick_commutant", 1e-9},
      {"wick_adjoint", 1e-10},
      {"two_norm_identity", 1e-9},
      {"projection_laws", 1e-11},
      {"ce_trace", 1e-12},
      {"route_agreement", 1e-9},
      {"rate_margin", 0.05},
      {"member_term_zero", 1e-18},
  };
  return tols;
}

RunConfig::RunConfig()
    : memory_budget_bytes(env_budget_or_default()), tolerances(default_tolerances()) {
  xi0 = Eigen::VectorXd::Unit(1, 0);
}

double RunConfig::tol(const std::string& name) const {
  auto it = tolerances.find(name);
  if (it == tolerances.end()) throw ConfigError("unknown tolerance '" + name + "'");
  return it->second;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(j,
                 {"q_matrix", "max_degree", "xi0", "seed", "memory_budget_bytes",
                  "output_path", "gram_cache_path", "tolerances", "experiments"},
                 "config");
  RunConfig config;

  if (!j.contains("q_matrix")) throw ConfigError("q_matrix is required");
  const auto& qm = j["q_matrix"];
  if (!qm.is_array() || qm.empty()) throw ConfigError("q_matrix must be a nonempty array of rows");
  const int n = static_cast<int>(qm.size());
  Eigen::MatrixXd entries(n, n);
  for (int r = 0; r < n; ++r) {
    if (!qm[r].is_array() || static_cast<int>(qm[r].size()) != n)
      throw ConfigError("q_matrix must be square");
    for (int c = 0; c < n; ++c) entries(r, c) = as_number(qm[r][c], "q_matrix entry");
  }
  try {
    config.q = QSpec(entries);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("q_matrix rejected: ") + e.what());
  }

  if (!j.contains("max_degree")) throw ConfigError("max_degree is required");
  config.max_degree = as_int(j["max_degree"], "max_degree");
  if (config.max_degree < 0) throw ConfigError("max_degree must be >= 0");

  if (!j.contains("xi0")) throw ConfigError("xi0 is required");
  config.xi0 = as_vector(j["xi0"], config.q.n_letters(), "xi0");
  const double norm = config.xi0.norm();
  if (!(norm > 0.0)) throw ConfigError("xi0 must be nonzero");
  config.xi0 /= norm;  // normalized on ingestion

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw ConfigError("seed must be an integer");
    config.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("memory_budget_bytes")) {
    if (!j["memory_budget_bytes"].is_number_unsigned() &&
        !j["memory_budget_bytes"].is_number_integer())
      throw ConfigError("memory_budget_bytes must be an integer");
    const auto b = j["memory_budget_bytes"].get<long long>();
    if (b <= 0) throw ConfigError("memory_budget_bytes must be positive");
    config.memory_budget_bytes = static_cast<std::size_t>(b);
  }
  if (j.contains("output_path")) config.output_path = j["output_path"].get<std::string>();
  if (j.contains("gram_cache_path"))
    config.gram_cache_path = j["gram_cache_path"].get<std::string>();

  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) throw ConfigError("tolerances must be an object");
    for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
      if (config.tolerances.find(it.key()) == config.tolerances.end())
        throw ConfigError("unknown tolerance '" + it.key() + "'");
      config.tolerances[it.key()] = as_number(it.value(), "tolerance " + it.key());
    }
  }

  if (j.contains("experiments")) {
    if (!j["experiments"].is_array()) throw ConfigError("experiments must be an array");
    for (const auto& e : j["experiments"])
      config.experiments.push_back(parse_experiment(e, config));
  }
  return config;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

RunConfig RunConfig::default_free_case() {
  return from_json_text(R"({
    "q_matrix": [[0.0, 0.0], [0.0, 0.0]],
    "max_degree": 8,
    "xi0": 1,
    "seed": 12345,
    "experiments": [
      {"name": "free-mixing", "mode": "mixing_sum", "x_word": [2], "y_word": [2],
       "n_min": 0, "n_max": 6},
      {"name": "free-zeta", "mode": "zeta_probe", "ladder": "l2* r2",
       "n_min": 0, "n_max": 6},
      {"name": "free-lemma3", "mode": "lemma3_probe", "a_word": "l2*", "b_word": "r2",
       "n_min": 0, "n_max": 6}
    ]
  })");
}

void RunConfig::validate(bool strict) {
  if (xi0.size() != q.n_letters()) throw ConfigError("xi0 dimension does not match q_matrix");
  for (auto& spec : experiments) {
    spec.max_degree = max_degree;
    try {
      spec.validate(q, strict);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
}

std::string RunConfig::to_json_text() const {
  json j;
  json qm = json::array();
  for (int r = 0; r < q.n_letters(); ++r) {
    json row = json::array();
    for (int c = 0; c < q.n_letters(); ++c) row.push_back(q.entries()(r, c));
    qm.push_back(row);
  }
  j["q_matrix"] = qm;
  j["max_degree"] = max_degree;
  j["xi0"] = std::vector<double>(xi0.data(), xi0.data() + xi0.size());
  j["seed"] = seed;
  j["memory_budget_bytes"] = memory_budget_bytes;
  if (!output_path.empty()) j["output_path"] = output_path;
  if (!gram_cache_path.empty()) j["gram_cache_path"] = gram_cache_path;
  j["tolerances"] = tolerances;
  json exps = json::array();
  for (const auto& spec : experiments) {
    json e;
    e["name"] = spec.name;
    switch (spec.mode) {
      case ExperimentSpec::Mode::mixing_sum: {
        e["mode"] = "mixing_sum";
        auto dump_word = [](const std::vector<Eigen::VectorXd>& word) {
          json arr = json::array();
          for (const auto& v : word)
            arr.push_back(std::vector<double>(v.data(), v.data() + v.size()));
          return arr;
        };
        e["x_word"] = dump_word(spec.x_word);
        e["y_word"] = dump_word(spec.y_word);
        break;
      }
      case ExperimentSpec::Mode::zeta_probe:
        e["mode"] = "zeta_probe";
        e["ladder"] = spec.ladder.str();
        break;
      case ExperimentSpec::Mode::lemma3_probe:
        e["mode"] = "lemma3_probe";
        e["a_word"] = spec.a_word.str();
        e["b_word"] = spec.b_word.str();
        break;
    }
    e["n_min"] = spec.n_min;
    e["n_max"] = spec.n_max;
    if (spec.fit_lo && spec.fit_hi)
      e["fit_window"] = json::array({*spec.fit_lo, *spec.fit_hi});
    exps.push_back(e);
  }
  j["experiments"] = exps;
  return j.dump(2);
}

}  // namespace qfock
