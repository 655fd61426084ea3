// Copyright 2026 The FairLens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace fairlens::dist {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double x, double a, double b);

// Regularized incomplete gamma: lower P(a, x) and upper Q(a, x) = 1 - P.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

double normal_cdf(double z);
double normal_sf(double z);

// Inverse standard normal CDF (Wichura's PPND16); p in (0, 1).
double normal_quantile(double p);

// Two-sided Student t p-value for |t| with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

// Upper tails.
double f_sf(double f, double df1, double df2);
double chi_squared_sf(double x, double df);

}  // namespace fairlens::dist
