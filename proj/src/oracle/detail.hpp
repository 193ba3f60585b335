#pragma once

#include <functional>

#include "dgldpc/oracle.hpp"
#include "dgldpc/wef/log_eval.hpp"

namespace dgldpc::oracle::detail {

// Root of an increasing function by bracketing and bisection.
double monotone_root(const std::function<double(double)>& f, double target);

// Minimizer of log B - xi log x - theta log y over the monomial table.
LemmaLimit solve_bivariate(const wef::MonomialTable& table, double xi,
                           double theta);

}  // namespace dgldpc::oracle::detail
