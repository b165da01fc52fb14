#pragma once

#include "nfc/gform.hpp"
#include "nfc/graded_op.hpp"

namespace nfc {

struct SchurOptions {
  long xcap = 0;       // x-degree cap of S components; 0 picks one from depth
  Rational gauge = 0;  // free eigenvalue of S_{-1} at n = 0 (0 is the minimal gauge)
};

struct SchurPair {
  GradedOp S;
  GradedOp Sinv;
  long q = 0;
  long depth = 0;  // orders below q on which Sinv Q S = d^q was verified
};

SchurPair schur_operator(const GradedOp& Q, long depth, const SchurOptions& opt = {});
GradedOp invert_unit(const GradedOp& S);

struct NormalFormOptions {
  long margin = 8;
  long xcap = 0;  // 0: sized from p, q and the fitting bounds
  Rational gauge = 0;
};

struct NormalForm {
  HcpSeries series;
  GradedOp conjugated;  // Sinv P S before fitting
  SchurPair schur;
};

NormalForm normal_form_detailed(const GradedOp& P, const GradedOp& Q, long depth,
                                const NormalFormOptions& opt = {});
HcpSeries normal_form(const GradedOp& P, const GradedOp& Q, long depth);

}  // namespace nfc
