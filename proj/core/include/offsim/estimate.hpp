#pragma once

// Closed-form cost estimates for cryptographic-scale parameters and the
// tradeoff rows for the EM and FX Q1 attacks. Nothing here is executed.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace offsim::estimate {

// How the offline time column is expressed. The query count does not depend
// on it.
enum class TimeConvention {
  grover_iterations,  // log2 of the Grover iteration count
  cipher_calls_2x,    // two cipher evaluations per iteration
  gates_cubic,        // iterations times (n - data)^3 gates for the linear algebra
};
std::string to_string(TimeConvention c);
TimeConvention convention_from_string(std::string_view s);

enum class Model { q1, q2 };
std::string to_string(Model m);

struct Params {
  std::string target = "custom";
  Model model = Model::q2;
  int n = 0;     // block / Simon width
  int m = 0;     // Grover search width (key bits)
  int data = 0;  // log2 of classical data for Q1 (u); ignored for Q2
  TimeConvention convention = TimeConvention::cipher_calls_2x;
};

struct Estimate {
  Params params;
  double c_precise = 0;
  double c_rounded = 0;
  int queries = 0;             // quantum queries ~ c n for Q2
  double log2_data = 0;        // D
  double log2_iterations = 0;  // Grover iterations
  double log2_time = 0;        // T under params.convention
  int qubits = 0;              // Q: logical qubits of the search circuit
  double log2_memory = 0;      // M: classical words
  std::optional<double> security_floor;  // log2, for presets that quote one
  std::string note;

  nlohmann::json to_json() const;
};

// c in both forms, as functions of search width m and Simon width n.
double c_precise(int m, int n);
double c_rounded(int m, int n);
// ceil(m / log2(4/3)): the quantum query count c n with the rounded c.
int query_count(int m);

Estimate estimate_costs(const Params& p);

std::vector<std::string> preset_names();
// Throws std::invalid_argument for an unknown name. Without a convention the
// preset uses the one its quoted figure is stated in.
Estimate preset(std::string_view name, std::optional<TimeConvention> convention = std::nullopt);

struct TradeoffRow {
  int u = 0;
  double log2_data = 0;
  double log2_time = 0;
  double log2_dt2 = 0;
};

// D = 2^u, T = 2^((n - u)/2): D T^2 = 2^n.
std::vector<TradeoffRow> em_tradeoffs(int n);
// D = 2^u, T = 2^((n + m - u)/2): D T^2 = 2^(n+m).
std::vector<TradeoffRow> fx_tradeoffs(int n, int m);

std::string table1_csv(std::optional<TimeConvention> convention = std::nullopt);
std::string tradeoff_csv(const std::vector<TradeoffRow>& rows);

}  // namespace offsim::estimate
