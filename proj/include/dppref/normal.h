// Copyright 2026 The dppref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPPREF_NORMAL_H_
#define DPPREF_NORMAL_H_

namespace dppref {

// Standard normal CDF, Phi(s) = erfc(-s / sqrt(2)) / 2.
double StdNormalCdf(double s);

// Standard normal density.
double StdNormalPdf(double s);

// ln Phi(z). Below z = -6 the value comes from the Mills-ratio continued
// fraction so it stays accurate where Phi itself underflows.
double LogStdNormalCdf(double z);

// phi(z) / Phi(z), the derivative of ln Phi(z).
double LogStdNormalCdfDerivative(double z);

}  // namespace dppref

#endif  // DPPREF_NORMAL_H_
