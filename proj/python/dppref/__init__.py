# Copyright 2026 The dppref Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Differentially private aggregation of pairwise-choice preference vectors."""

from dppref._dppref import (
    accuracy,
    aggregate_mean,
    assign_privacy_groups,
    centralized_sensitivity,
    fit_voter,
    functional_sensitivity_bound,
    generate_corpus,
    log_likelihood,
    log_likelihood_gradient,
    log_std_normal_cdf,
    preprocess,
    project_l1_ball,
    rldp_release,
    run_sweep,
    sample_laplace,
    std_normal_cdf,
    taylor_coefficients,
    utility_bound_alpha,
    vldp_release,
    vlcp_release,
    voter_sensitivity,
)

__all__ = [
    "accuracy",
    "aggregate_mean",
    "assign_privacy_groups",
    "centralized_sensitivity",
    "fit_voter",
    "functional_sensitivity_bound",
    "generate_corpus",
    "log_likelihood",
    "log_likelihood_gradient",
    "log_std_normal_cdf",
    "preprocess",
    "project_l1_ball",
    "rldp_release",
    "run_sweep",
    "sample_laplace",
    "std_normal_cdf",
    "taylor_coefficients",
    "utility_bound_alpha",
    "vldp_release",
    "vlcp_release",
    "voter_sensitivity",
]
