#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hallforge/double_algebra.hpp"

namespace hallforge {

inline constexpr int kSchemaVersion = 1;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string quiver = "a2";  ///< fixture name or path to a quiver JSON file
  int q = 2;
  int max_total_dim = 2;
  int kgrid = 2;
  std::vector<std::string> suites;
  std::uint64_t budget = EnumerationBudget::kDefault;
  std::optional<std::filesystem::path> cache_dir;
  std::string output;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

const std::vector<std::string>& known_suites();

/// Throws UsageError.  `require_suites` applies to verify.
void validate(const RunConfig& config, bool require_suites);

/// Everything one run needs, built from a RunConfig.
class Workspace {
 public:
  /// Throws UsageError for an unknown fixture, unreadable quiver file or unsupported q.
  explicit Workspace(const RunConfig& config, std::shared_ptr<CountStore> store = nullptr);

  const RunConfig& config() const noexcept { return config_; }
  const QuiverCategory& category() const noexcept { return *cat_; }
  const HallAlgebra& hall() const noexcept { return *hall_; }
  const ComplexCategory& complexes() const noexcept { return *cx_; }
  const DoubleAlgebra& dh() const noexcept { return *dh_; }
  const std::shared_ptr<CountStore>& store() const noexcept { return store_; }

  /// The deterministic "config" block of a report.
  nlohmann::json config_json() const;

 private:
  RunConfig config_;
  std::shared_ptr<CountStore> store_;
  std::unique_ptr<QuiverCategory> cat_;
  std::unique_ptr<HallAlgebra> hall_;
  std::unique_ptr<ComplexCategory> cx_;
  std::unique_ptr<DoubleAlgebra> dh_;
};

struct CheckResult {
  std::string name;
  bool gating = true;  ///< informational checks never fail a suite
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<nlohmann::json> counterexamples;
  nlohmann::json info;

  bool passed() const { return failures == 0; }
  void fail(nlohmann::json example);
  nlohmann::json to_json() const;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  std::optional<std::string> aborted;  ///< budget message when cut short

  bool passed() const;
  nlohmann::json to_json() const;
};

enum class RunStatus { pass, fail, budget_exceeded };

struct VerifyOutcome {
  RunStatus status = RunStatus::pass;
  nlohmann::json report;
};

/// Runs one suite.  A budget overrun ends it early with `aborted` set.
SuiteResult run_suite(const Workspace& ws, const std::string& suite);

/// Runs all configured suites and assembles the report.  A suite that exceeds
/// the budget is recorded as aborted and later suites are skipped.
VerifyOutcome run_verify(const Workspace& ws);

/// Runs fn(i) for i in [0, n) on a bounded pool.  Rethrows the first exception
/// (by index) after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Complexes C_A ⊕ C_B* ⊕ K_P ⊕ K_Q* with |A| + |B| + |P| + |Q| <= bound
/// (|P| counts indecomposable summands).
std::vector<DecompositionWitness> enumerate_witnesses(const ComplexCategory& cx, int bound);

/// Multiplicity vectors with entry sum <= bound, in lexicographic order.
std::vector<std::vector<long long>> multiplicity_vectors(std::size_t n, int bound);

}  // namespace hallforge
