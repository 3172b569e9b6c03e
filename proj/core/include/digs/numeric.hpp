#pragma once

#include <cstdint>
#include <vector>

namespace digs {

// log(sum_i exp(v[i])) with the usual max subtraction; -inf for an empty
// input.
double log_sum_exp(const std::vector<double>& v);

// log(n!) via lgamma.
double log_factorial(int64_t n);

// Survival function of the chi-square distribution with `dof` degrees of
// freedom, i.e. the p-value of an observed statistic.  dof == 0 returns 1.
double chi_square_survival(double stat, int64_t dof);

// Regularized upper incomplete gamma Q(a, x) (series for x < a+1,
// continued fraction otherwise).
double gamma_q(double a, double x);

}  // namespace digs
