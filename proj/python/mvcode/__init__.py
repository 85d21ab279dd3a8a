# Copyright 2026 The mvcode Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python bindings for the mvcode multi-version coding library."""

import json
from fractions import Fraction

from . import _mvcode
from ._mvcode import (
    BudgetError,
    Params,
    RegimeError,
    ServerStore,
    allocate,
    complete_versions,
    decode,
    encode,
    latest_complete,
    lb_no_side_info_bits,
    local_candidate,
    neighborhood,
    quorum_fixture_params,
    random_state,
)

__all__ = [
    "BudgetError", "Params", "RegimeError", "ServerStore", "allocate",
    "complete_versions", "compare_report", "cost", "decode", "encode",
    "fixture", "latest_complete", "lb_no_side_info_bits", "local_candidate",
    "make_params", "neighborhood", "oracle_min_cost", "quorum_fixture_params",
    "random_state", "verify",
]


def make_params(n=6, cw=None, cr=None, nu=2, h=None, K=1024):
    """Params with the ring defaults c_W = c_R = n-1 and h = n/2-1."""
    return Params(n=n, cw=n - 1 if cw is None else cw,
                  cr=n - 1 if cr is None else cr, nu=nu,
                  h=n // 2 - 1 if h is None else h, K=K)


def verify(params, scheme="c1", mode="exhaustive", samples=100_000, seed=1,
           layer="both", jobs=1, budget=100_000_000):
    """Run the verifier and return the report as a dict."""
    if layer not in ("both", "counting", "bitexact"):
        raise ValueError(f"unknown layer {layer!r}")
    return json.loads(_mvcode.verify_json(
        params, scheme, mode, samples, seed, layer != "bitexact",
        layer != "counting", jobs, budget))


def compare_report(c_first, c_last, nu=2, K=1024):
    return json.loads(_mvcode.compare_report_json(c_first, c_last, nu, K))


def fixture(which, params):
    return json.loads(_mvcode.fixture_json(which, params))


def oracle_min_cost(params, G, node_budget=20_000_000):
    return json.loads(_mvcode.oracle_json(params, G, node_budget))


_COSTS = {
    "c1": lambda nu, c: _mvcode.cost_split(c),
    "c2": _mvcode.cost_latest_only,
    "central": lambda nu, c: _mvcode.cost_central(c),
    "baseline": _mvcode.cost_baseline,
    "lb_thm3": lambda nu, c: _mvcode.lb_neighbor_blind(c),
    "lb_thm4": lambda nu, c: _mvcode.lb_far_quorum(c),
}


def cost(name, c, nu=2):
    """Closed-form cost or bound as a Fraction of K."""
    return Fraction(*_COSTS[name](nu, c))
