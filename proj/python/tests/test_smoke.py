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

import math

import pytest

import ldphh


def test_fo_params_match_closed_form():
    p = ldphh.derive_fo_params(1024, 100000, 1.0, 0.1)
    gamma = math.sqrt(math.log(2 * 1024 / 0.1) / 100000)
    assert p.gamma == pytest.approx(gamma, rel=1e-12)
    assert p.m_fo == math.ceil(math.log(1025) * math.log(20) / gamma**2)


def test_hh_params_and_vacuous_rejection():
    p = ldphh.derive_hh_params(1024, 100000, 2.0, 0.5, k=1000000)
    assert p.T == 3
    assert p.eps_channel == pytest.approx(2.0 / 7)
    assert p.isolation_bound is not None and p.isolation_bound <= 0.5 / 3
    with pytest.raises(ValueError, match="vacuous"):
        ldphh.derive_hh_params(1024, 10, 0.1, 0.5)


def test_prf_vector():
    assert ldphh.Prf.from_seed(0).key_hex == (
        "f77e6f155f29bad95110e56df4858a9c058f9aab4cc5df55e04ad6261e005c60"
    )
    assert ldphh.Prf.from_seed(0).word(2, 1, 2, 9) == 0xF0BE69408EA7009C


def test_randomizer_unbiased_and_private():
    signs = [1, -1, -1, 1]
    eps = 0.7
    dist = ldphh.report_distribution(signs, eps)
    assert sum(dist) == pytest.approx(1.0)
    scale = ldphh.c_eps(eps) * math.sqrt(len(signs))
    for j, s in enumerate(signs):
        mean = scale * (dist[2 * j] - dist[2 * j + 1])
        assert mean == pytest.approx(s / math.sqrt(len(signs)), abs=1e-12)
    vertices = [[1 if (p >> j) & 1 else -1 for j in range(3)] for p in range(8)]
    assert ldphh.audit_randomizer(vertices, 3, eps) == pytest.approx(eps, abs=1e-9)
    position, sign = ldphh.randomize(signs, eps, seed=3)
    assert 0 <= position < 4 and sign in (-1, 1)


def test_degrading_channel_amplification():
    vertices = [[1 if (p >> j) & 1 else -1 for j in range(4)] for p in range(16)]
    for eta in (0.0, 0.5, 1.0):
        eps_obs, mi = ldphh.audit_degraded(vertices, 1.0, eta)
        assert eps_obs <= ldphh.amplified_epsilon(1.0, eta) + 1e-9
        assert 0.0 <= mi <= math.log(16) + 1e-12


def test_code_roundtrip_with_errors():
    code = ldphh.build_code(1 << 16)
    word = code.encode(12345)
    assert len(word) == code.m
    budget = math.ceil(code.m * code.zeta_eff / 2) - 1
    noisy = [-s if j < budget else s for j, s in enumerate(word)]
    assert code.decode(noisy) == 12345
    assert ldphh.build_code(64, "reference").decode(ldphh.build_code(64, "reference").encode(9)) == 9


def test_dataset_counts():
    items = ldphh.gen_dataset("promise:0.2@9", 16, 10, seed=1)
    assert items.count(9) == 2 and items.count(None) == 8


def test_histogram_run_is_deterministic():
    kwargs = dict(d=256, n=20000, eps=4.0, beta=0.5, k=4, seed=5, dataset="planted:3=0.5",
                  mode="faithful")
    a = ldphh.run_experiment("hist", **kwargs)
    b = ldphh.run_experiment("hist", **kwargs)
    assert a.csv == b.csv
    assert dict(a.histogram).get(3) == pytest.approx(0.5, abs=0.05)
    doc = ldphh.manifest(a)
    assert doc["schema"] == "ldphh-manifest-v1"
    assert doc["derived"]["hh"]["K"] == 4


def test_promise_protocol():
    r = ldphh.run_experiment("pp", d=1 << 12, n=20000, eps=2.0, dataset="promise:1@77", seed=3)
    assert r.pp_item == 77
    assert r.pp_f_hat == pytest.approx(1.0, abs=0.1)


def test_wire_golden_frame():
    frame = ldphh.encode_report_frame(True, 7, 0, 0, 3, +1)
    assert frame.hex() == "4c4450480100130000000700000000000000000000000000030000" "0001"
    msg_type, payload, used = ldphh.decode_frame(frame + b"\xee")
    assert (msg_type, len(payload), used) == (0, 19, len(frame))
    with pytest.raises(ValueError):
        ldphh.decode_frame(frame[:-1])
