#pragma once

// Exact checks of the counting identities over enumerated tables. Every
// check records each instance it looked at; failing instances double as
// witnesses.

#include <optional>
#include <string>
#include <vector>

#include "meander/enumerate.hpp"
#include "meander/formulas.hpp"
#include "meander/structure.hpp"

namespace meander {

enum class Status { pass, fail, documented_mismatch };
std::string to_string(Status s);

struct Instance {
  std::string label;  // e.g. "n=4,k=3"
  std::string lhs;
  std::string rhs;
  bool holds = true;
};

struct VerificationReport {
  std::string name;
  int max_total = 0;
  Status status = Status::pass;
  std::vector<Instance> instances;
  std::vector<Instance> witnesses;  // failing instances
  std::vector<Diagnostic> diagnostics;
};

// Computes census tables on first use and keeps them. Tables can also be
// injected, e.g. after re-importing an exported CSV.
class TableCache {
 public:
  explicit TableCache(int max_total, SearchOptions opts = {})
      : max_total_(max_total), opts_(opts) {}

  int max_total() const noexcept { return max_total_; }
  const SearchOptions& options() const noexcept { return opts_; }

  const CountTable& open();
  const CountTable& closed();
  const ClassifiedCensus& classified();

  void set_open(CountTable t) { open_ = std::move(t); }
  void set_closed(CountTable t) { closed_ = std::move(t); }
  void set_classified(ClassifiedCensus c) { classified_ = std::move(c); }

 private:
  int max_total_;
  SearchOptions opts_;
  std::optional<CountTable> open_;
  std::optional<CountTable> closed_;
  std::optional<ClassifiedCensus> classified_;
};

const std::vector<std::string>& identity_names();

// RangeError on an unknown name; IncompleteTable when injected tables are
// shorter than max_total.
VerificationReport verify_identity(const std::string& name, TableCache& tables);

VerificationReport verify_thm21(int max_total, const CountTable& open, const CountTable& closed);
VerificationReport verify_thm22(int max_total, const CountTable& open);
VerificationReport verify_cor24(int max_total, const CountTable& irreducible);
VerificationReport verify_divisibility(int max_total, const CountTable& open,
                                       const CountTable& irreducible);
VerificationReport verify_remark23(int max_total, const CountTable& open);
VerificationReport verify_partition(int max_total, const SearchOptions& opts = {});
VerificationReport verify_action_period(int max_total, const SearchOptions& opts = {});
VerificationReport verify_orbit_census(int max_total, const CountTable& open,
                                       const SearchOptions& opts = {});
VerificationReport verify_eq1(int max_total, const ClassifiedCensus& census);
VerificationReport verify_thm34_literal(int truncation, const ClassifiedCensus* census);

}  // namespace meander
