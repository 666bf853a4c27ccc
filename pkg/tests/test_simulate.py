from __future__ import annotations

import random
from fractions import Fraction

import pytest

from cpda.analysis import rate_from_array
from cpda.construct import c1p, c1pp, c2, mn_pda
from cpda.model import STAR
from cpda.simulate import (
    Library,
    decode_all,
    default_demands,
    execute,
    make_library,
    measure_rates,
    min_file_bytes,
    place,
    plan_delivery,
    simulate,
    split_lcm,
)
from cpda.validate import InvalidArrayError

from conftest import EX1_DELIVERY


def test_min_file_bytes(worked_ex1):
    assert split_lcm(worked_ex1) == 2
    assert min_file_bytes(worked_ex1) == 10
    assert min_file_bytes(c2(5, 2, 2, 1)) == 20  # w = 1 everywhere


def test_make_library_seeded(worked_ex1):
    a = make_library(worked_ex1, 3, seed=1, unit=1)
    b = make_library(worked_ex1, 3, seed=1, unit=1)
    c = make_library(worked_ex1, 3, seed=2, unit=1)
    assert a == b and a != c
    assert a.n == 3 and a.e_bytes == 10
    assert make_library(worked_ex1, 1, unit=64).e_bytes == 640


def test_library_rejects_mixed_sizes():
    with pytest.raises(ValueError):
        Library((b"abc", b"de"))
    with pytest.raises(ValueError):
        Library(())


def test_place_golden_cache_contents(worked_ex1):
    lib = make_library(worked_ex1, 10, unit=1)
    caches = place(worked_ex1, lib)
    got = caches[(1, 2, 3)]
    assert set(got) == {(n, j) for n in range(1, 11) for j in (4, 5)}
    assert all(len(v) == 2 for v in got.values())  # packet = E/F = 2 bytes
    # every user caches Z*N packets
    assert all(len(c) == 2 * 10 for c in caches.values())


def test_place_rejects_indivisible_file_size(worked_ex1):
    with pytest.raises(ValueError):
        place(worked_ex1, Library((bytes(7),) * 2))


def test_plan_matches_delivery_table(worked_ex1):
    plan = plan_delivery(worked_ex1, tuple(range(1, 11)))
    assert len(plan.signals) == 10
    for sig in plan.signals:
        terms, relays = EX1_DELIVERY[sig.symbol]
        assert tuple((fid, pid) for _, _, fid, pid in sig.terms) == terms
        assert sig.relays == relays


def test_plan_rejects_unroutable_and_bad_demands(worked_ex1):
    with pytest.raises(InvalidArrayError):
        plan_delivery(mn_pda(4, 2), (1, 2, 3, 4))
    with pytest.raises(ValueError):
        plan_delivery(worked_ex1, (1, 2))
    with pytest.raises(ValueError):
        plan_delivery(worked_ex1, (0,) * 10)


def test_execute_golden_loads(worked_ex1):
    lib = make_library(worked_ex1, 10, unit=1)
    plan = plan_delivery(worked_ex1, tuple(range(1, 11)))
    log, received = execute(worked_ex1, plan, lib)
    # each relay carries 4 half-packet pieces of 1 byte
    assert all(n == 4 for n in log.relay_bytes.values())
    assert all(len(parts) == 4 for parts in log.relay_parts.values())
    assert sum(log.relay_bytes.values()) == 10 * 2  # S * packet
    assert measure_rates(log) == {h: Fraction(2, 5) for h in range(1, 6)}
    # user 1-2-3 sees both halves of 3 signals and one half of 6
    assert log.user_bytes[(1, 2, 3)] == 3 * 2 + 6 * 1
    assert len(received[(1, 2, 3)]) == 12


def test_decode_golden(worked_ex1):
    lib = make_library(worked_ex1, 10, seed=3, unit=1)
    caches = place(worked_ex1, lib)
    demands = tuple(range(1, 11))
    plan = plan_delivery(worked_ex1, demands)
    _, received = execute(worked_ex1, plan, lib)
    result = decode_all(worked_ex1, plan, caches, received, lib)
    assert result.ok and result.failures == ()
    for j, label in enumerate(worked_ex1.col_labels):
        assert result.files[label] == lib.files[demands[j] - 1]


def test_decode_detects_corruption(worked_ex1):
    lib = make_library(worked_ex1, 2, seed=4, unit=1)
    caches = place(worked_ex1, lib)
    plan = plan_delivery(worked_ex1, default_demands(10, 2))
    _, received = execute(worked_ex1, plan, lib)
    # flip a byte one user received for one sub-signal
    key = next(iter(received[(1, 2, 3)]))
    chunk = received[(1, 2, 3)][key]
    received[(1, 2, 3)][key] = bytes(b ^ 0xFF for b in chunk)
    result = decode_all(worked_ex1, plan, caches, received, lib)
    assert not result.ok
    assert all(label == (1, 2, 3) for label, _pid in result.failures)


def test_execute_checks_divisibility(worked_ex1):
    plan = plan_delivery(worked_ex1, (1,) * 10)
    with pytest.raises(ValueError):
        execute(worked_ex1, plan, Library((bytes(7),)))
    # divisible by F=5 but packet of 1 byte cannot split into w=2 parts
    with pytest.raises(ValueError):
        execute(worked_ex1, plan, Library((bytes(5),)))
    greedy = plan_delivery(worked_ex1, tuple(range(1, 11)))
    with pytest.raises(ValueError):
        execute(worked_ex1, greedy, Library((bytes(10),)))  # demand 10 > N = 1


def test_zero_library_decodes_structurally(worked_ex1):
    lib = Library((bytes(10),))
    caches = place(worked_ex1, lib)
    plan = plan_delivery(worked_ex1, (1,) * 10)
    _, received = execute(worked_ex1, plan, lib)
    assert all(set(v) == {0} or v == b"" for user in received.values() for v in user.values())
    assert decode_all(worked_ex1, plan, caches, received, lib).ok


def test_single_occurrence_signals_are_uncoded():
    arr = c1p(5, 3, 1, 1)
    plan = plan_delivery(arr, (1,) * arr.k)
    for sig in plan.signals:
        assert len(sig.terms) == 1
        assert sig.relays == sig.terms[0][1]  # routed via all of the user's relays


def test_unsplit_signals():
    arr = c2(5, 2, 2, 1)
    rep = simulate(arr, n_files=1, demands=(1,) * arr.k, unit=1)
    assert rep.ok
    assert all(len(sig.relays) == 1 for sig in rep.plan.signals)
    assert rep.f_eff == rep.f_rows == 20


def test_simulate_report_golden(worked_ex1):
    rep = simulate(worked_ex1, unit=1)
    assert rep.ok
    assert rep.demands == tuple(range(1, 11))
    assert rep.e_bytes == 10 and rep.f_rows == 5 and rep.f_eff == 10
    assert rep.w_histogram == {2: 10}
    assert set(rep.rates.values()) == {Fraction(2, 5)}


def test_simulate_refuses_unroutable():
    with pytest.raises(InvalidArrayError):
        simulate(mn_pda(4, 2))


def test_seeded_random_rounds_decode():
    arrays = [c1pp(6, 3, 2, 1), c2(5, 2, 2, 1), c1p(5, 3, 1, 1), c1pp(5, 3, 2, 2)]
    rng = random.Random(99)
    for arr in arrays:
        expected = rate_from_array(arr)
        for seed in range(10):
            n = rng.randint(1, 4)
            demands = tuple(rng.randint(1, n) for _ in range(arr.k))
            rep = simulate(arr, n_files=n, demands=demands, seed=seed, unit=1)
            assert rep.ok, (arr.h, arr.r, seed)
            assert rep.rates == expected


def test_rates_independent_of_demands(worked_ex1):
    a = simulate(worked_ex1, demands=(1,) * 10, n_files=1, unit=1)
    b = simulate(worked_ex1, demands=tuple(range(1, 11)), unit=1)
    assert a.rates == b.rates
