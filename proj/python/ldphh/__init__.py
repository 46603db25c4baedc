# Copyright 2026 The ldphh Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Locally private heavy hitters and succinct histograms."""

import json

from ._ldphh import (
    Code,
    Error,
    FoParams,
    HhParams,
    InvalidArgument,
    MetricsRecord,
    Prf,
    WireError,
    amplified_epsilon,
    audit_degraded,
    audit_randomizer,
    build_code,
    c_eps,
    decode_frame,
    derive_fo_params,
    derive_hh_params,
    encode_report_frame,
    gen_dataset,
    randomize,
    report_distribution,
    run_experiment,
)

__all__ = [
    "Code",
    "Error",
    "FoParams",
    "HhParams",
    "InvalidArgument",
    "MetricsRecord",
    "Prf",
    "WireError",
    "amplified_epsilon",
    "audit_degraded",
    "audit_randomizer",
    "build_code",
    "c_eps",
    "decode_frame",
    "derive_fo_params",
    "derive_hh_params",
    "encode_report_frame",
    "gen_dataset",
    "manifest",
    "randomize",
    "report_distribution",
    "run_experiment",
]


def manifest(record):
    """Returns the run manifest of a MetricsRecord as a dict."""
    return json.loads(record.manifest_json())
