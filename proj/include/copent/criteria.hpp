#pragma once

#include <cmath>
#include <string>

#include "copent/error.hpp"

namespace copent {

// Log-likelihood, free-parameter count and sample size of an externally fitted model.
struct FitSummary {
  double log_likelihood = 0.0;
  long n_params = 1;
  long n_obs = 1;

  void validate() const {
    if (n_params < 1) throw ArgumentError("FitSummary: n_params must be >= 1");
    if (n_obs < 1) throw ArgumentError("FitSummary: n_obs must be >= 1");
  }
};

inline double aic(const FitSummary& fit) {
  fit.validate();
  return -2.0 * fit.log_likelihood + 2.0 * static_cast<double>(fit.n_params);
}

// Natural log of the sample size.
inline double bic(const FitSummary& fit) {
  fit.validate();
  return -2.0 * fit.log_likelihood +
         static_cast<double>(fit.n_params) * std::log(static_cast<double>(fit.n_obs));
}

}  // namespace copent
