#include "offsim/estimate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace offsim::estimate {

namespace {

const double kLog2FourThirds = std::log2(4.0 / 3.0);

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

}  // namespace

std::string to_string(TimeConvention c) {
  switch (c) {
    case TimeConvention::grover_iterations: return "grover-iterations";
    case TimeConvention::cipher_calls_2x: return "cipher-calls-2x";
    case TimeConvention::gates_cubic: return "gates-cubic";
  }
  return "?";
}

TimeConvention convention_from_string(std::string_view s) {
  if (s == "grover-iterations") return TimeConvention::grover_iterations;
  if (s == "cipher-calls-2x") return TimeConvention::cipher_calls_2x;
  if (s == "gates-cubic") return TimeConvention::gates_cubic;
  throw std::invalid_argument("unknown time convention '" + std::string(s) + "'");
}

std::string to_string(Model m) { return m == Model::q1 ? "Q1" : "Q2"; }

double c_precise(int m, int n) {
  return (m + 3 + 2 * std::log2(std::numbers::pi)) / (n * kLog2FourThirds);
}

double c_rounded(int m, int n) { return m / (n * kLog2FourThirds); }

int query_count(int m) { return static_cast<int>(std::ceil(m / kLog2FourThirds - 1e-9)); }

nlohmann::json Estimate::to_json() const {
  nlohmann::json j{{"target", params.target},
                   {"model", to_string(params.model)},
                   {"n", params.n},
                   {"m", params.m},
                   {"convention", to_string(params.convention)},
                   {"c_precise", round3(c_precise)},
                   {"c_rounded", round3(c_rounded)},
                   {"queries", queries},
                   {"log2_D", round3(log2_data)},
                   {"log2_iterations", round3(log2_iterations)},
                   {"log2_T", round3(log2_time)},
                   {"Q", qubits},
                   {"log2_M", round3(log2_memory)}};
  if (params.model == Model::q1) j["u"] = params.data;
  if (security_floor) j["log2_security_floor"] = round3(*security_floor);
  if (!note.empty()) j["note"] = note;
  return j;
}

Estimate estimate_costs(const Params& p) {
  if (p.n <= 0 || p.m < 0) throw std::invalid_argument("estimate needs n > 0 and m >= 0");
  Estimate e;
  e.params = p;
  // Q1 runs Simon on the u data bits, Q2 on all n.
  const int simon_n = p.model == Model::q1 ? p.data : p.n;
  const int search = p.model == Model::q1 ? p.n + p.m - p.data : p.m;
  if (p.model == Model::q1 && (p.data <= 0 || p.data > p.n)) {
    throw std::invalid_argument("Q1 estimate needs 0 < u <= n");
  }
  e.c_precise = c_precise(search, simon_n);
  e.c_rounded = c_rounded(search, simon_n);
  // c n copies of the database with the rounded c, i.e. search / log2(4/3).
  e.queries = query_count(search);
  e.log2_iterations = search / 2.0;
  e.qubits = search + e.queries * (simon_n + p.n) + 1;
  if (p.model == Model::q1) {
    e.log2_data = p.data;
    e.log2_memory = p.data;
  }
  switch (p.convention) {
    case TimeConvention::grover_iterations: e.log2_time = e.log2_iterations; break;
    case TimeConvention::cipher_calls_2x: e.log2_time = e.log2_iterations + 1; break;
    case TimeConvention::gates_cubic: {
      const int dim = p.model == Model::q1 ? p.n - p.data : p.n;
      e.log2_time = e.log2_iterations + 3 * std::log2(std::max(dim, 1));
      break;
    }
  }
  return e;
}

std::vector<std::string> preset_names() {
  return {"desx", "prince", "pride", "chaskey", "beetle-light", "beetle-secure", "saturnin16"};
}

Estimate preset(std::string_view name, std::optional<TimeConvention> convention) {
  Params p;
  p.target = std::string(name);
  std::optional<double> floor;
  std::string note;
  if (name == "desx") {
    p.n = 64, p.m = 56, p.model = Model::q2;
    p.convention = TimeConvention::cipher_calls_2x;
  } else if (name == "prince" || name == "pride") {
    p.n = 64, p.m = 64, p.model = Model::q2;
    p.convention = TimeConvention::cipher_calls_2x;
  } else if (name == "chaskey") {
    // 128-bit state, 2^48 tagged messages; the linear system left after the
    // known data bits has dimension 128 - 48 = 80.
    p.n = 128, p.m = 0, p.data = 48, p.model = Model::q1;
    p.convention = TimeConvention::gates_cubic;
    note = "time in gates: (n-u)^3 per iteration";
  } else if (name == "beetle-light") {
    // rate 64, capacity 80, 48-bit nonce counter
    p.n = 64, p.m = 80, p.data = 48, p.model = Model::q1;
    p.convention = TimeConvention::grover_iterations;
  } else if (name == "beetle-secure") {
    p.n = 128, p.m = 128, p.model = Model::q1;
    p.data = (p.n + p.m) / 3;
    p.convention = TimeConvention::grover_iterations;
    floor = std::floor((p.n + p.m) / 3.0);
  } else if (name == "saturnin16") {
    // related-key: 256-bit key split n/3 | 2n/3
    p.n = 256, p.m = 0, p.model = Model::q1;
    p.data = 256 / 3;
    p.convention = TimeConvention::grover_iterations;
    floor = std::floor(256 / 3.0);
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  if (convention) p.convention = *convention;
  auto e = estimate_costs(p);
  e.security_floor = floor;
  e.note = note;
  return e;
}

std::vector<TradeoffRow> em_tradeoffs(int n) {
  std::vector<TradeoffRow> rows;
  for (int u = 1; u <= n; ++u) {
    const double t = (n - u) / 2.0;
    rows.push_back({u, double(u), t, u + 2 * t});
  }
  return rows;
}

std::vector<TradeoffRow> fx_tradeoffs(int n, int m) {
  std::vector<TradeoffRow> rows;
  for (int u = 1; u <= n; ++u) {
    const double t = (n + m - u) / 2.0;
    rows.push_back({u, double(u), t, u + 2 * t});
  }
  return rows;
}

std::string table1_csv(std::optional<TimeConvention> convention) {
  std::ostringstream os;
  os << "Target,Model,Queries,Time,Q-memory,C-memory,Convention\n";
  for (const auto& name : preset_names()) {
    const auto e = preset(name, convention);
    const double q = e.params.model == Model::q2 ? std::log2(e.queries) : e.log2_data;
    os << name << ',' << to_string(e.params.model) << ",2^" << round3(q) << ",2^" << round3(e.log2_time)
       << ',' << e.qubits << ",2^" << round3(e.log2_memory) << ',' << to_string(e.params.convention)
       << '\n';
  }
  return os.str();
}

std::string tradeoff_csv(const std::vector<TradeoffRow>& rows) {
  std::ostringstream os;
  os << "u,log2_D,log2_T,log2_DT2\n";
  for (const auto& r : rows) os << r.u << ',' << r.log2_data << ',' << r.log2_time << ',' << r.log2_dt2 << '\n';
  return os.str();
}

}  // namespace offsim::estimate
