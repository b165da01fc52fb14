#pragma once

#include <map>
#include <string>
#include <vector>

#include "nfc/gform.hpp"
#include "nfc/graded_op.hpp"

namespace nfc {

// L^(t1) ... L^(tm) D^dpow; an empty derivs list is the word D^dpow.
struct StdWord {
  std::vector<long> derivs;
  long dpow = 0;

  long multiple_index() const { return static_cast<long>(derivs.size()); }
  long pdeg() const;
  friend bool operator==(const StdWord&, const StdWord&) = default;
};

// Higher D power first, then larger multiple index, then lexicographic derivs.
struct StdWordOrder {
  bool operator()(const StdWord& a, const StdWord& b) const;
};

struct StdFormExpansion {
  std::map<StdWord, Rational, StdWordOrder> terms;

  void add(const StdWord& w, const Rational& c);
  friend bool operator==(const StdFormExpansion&, const StdFormExpansion&) = default;
};

Integer g_value(const std::vector<long>& t);
StdFormExpansion t_block(long i, long j, long k);
StdFormExpansion expand_power(long k);

inline constexpr long kOracleCap = 8;
StdFormExpansion expand_power_oracle(long k, long cap = kOracleCap);

GradedOp specialize(const StdFormExpansion& e, const GradedOp& d, const GradedOp& l);
HcpSeries specialize(const StdFormExpansion& e, const HcpSeries& d, const HcpSeries& l);

std::string to_string(const StdFormExpansion& e);

}  // namespace nfc
