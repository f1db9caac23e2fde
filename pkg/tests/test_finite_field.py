from __future__ import annotations

import numpy as np
import pytest

from leemetrics.finite_field import affine_group, field_of_order, is_prime, make_field, prime_power
from leemetrics.group_core import GroupError, center, is_cyclic, order_profile

PRIME_POWERS = [
    q for q in range(2, 257) if any(q == p ** k for p in range(2, q + 1) if is_prime(p) for k in range(1, 9))
]


def test_prime_power_list_is_sane():
    assert PRIME_POWERS[:10] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    assert 256 in PRIME_POWERS and 6 not in PRIME_POWERS and 243 in PRIME_POWERS


@pytest.mark.parametrize("q", [q for q in PRIME_POWERS if q <= 64] + [81, 125, 128, 243, 256])
def test_field_axioms_exhaustive(q):
    F = field_of_order(q)
    A = np.asarray(F.add_table)
    M = np.asarray(F.mul_table)
    ids = np.arange(q)
    for T in (A, M):
        assert np.array_equal(T, T.T)
    # associativity over all triples
    assert np.array_equal(A[A[:, :, None], ids], A[ids[:, None, None], A[None, :, :]])
    assert np.array_equal(M[M[:, :, None], ids], M[ids[:, None, None], M[None, :, :]])
    # a(b + c) == ab + ac
    assert np.array_equal(M[ids[:, None, None], A[None, :, :]], A[M[:, :, None], M[:, None, :]])
    assert np.array_equal(A[0], ids) and np.array_equal(M[1], ids)
    # additive and multiplicative inverses
    assert all((A[a] == 0).sum() == 1 for a in range(q))
    assert all((M[a] == 1).sum() == 1 for a in range(1, q))
    assert np.all(M[0] == 0)


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_generator_has_full_order(q):
    F = field_of_order(q)
    assert F.mult_order(F.generator) == q - 1 if q > 2 else F.generator == 1
    powers = {F.power(F.generator, k) for k in range(q - 1)}
    assert powers == set(range(1, q))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 251])
def test_prime_field_is_modular_arithmetic(p):
    F = make_field(p)
    for a in range(0, p, max(1, p // 17)):
        for b in range(0, p, max(1, p // 13)):
            assert F.add(a, b) == (a + b) % p
            assert F.mul(a, b) == (a * b) % p


def test_small_fields():
    F = make_field(2, 1)
    assert F.q == 2
    F9 = make_field(3, 2)
    assert F9.q == 9 and F9.mult_order(F9.generator) == 8
    F4 = make_field(2, 2)
    assert F4.modulus == (1, 1, 1)  # x^2 + x + 1 is the only irreducible quadratic over F2


def test_modulus_is_lexicographically_smallest():
    # over F3, x^2 + 1 (coefficients 1,0,1) is irreducible and precedes every other candidate
    assert make_field(3, 2).modulus == (1, 0, 1)
    # over F2, read low to high: x^3+1 is reducible and x^3+x^2+1 (1,0,1) precedes x^3+x+1 (1,1,0)
    assert make_field(2, 3).modulus == (1, 0, 1, 1)


@pytest.mark.parametrize("args", [(4, 1), (2, 9), (3, 6), (1, 1)])
def test_make_field_rejects(args):
    with pytest.raises(GroupError):
        make_field(*args)


def test_prime_power_rejects_composites():
    assert prime_power(243) == (3, 5)
    with pytest.raises(GroupError):
        prime_power(12)


@pytest.mark.parametrize("q,h", [(q, h) for q in PRIME_POWERS if q <= 32 for h in range(1, q) if (q - 1) % h == 0])
def test_affine_group_order_and_center(q, h):
    G = affine_group(field_of_order(q), h)
    assert G.n == q * h
    if h > 1:
        assert center(G) == {G.identity}


def test_named_affine_groups():
    assert is_cyclic(affine_group(make_field(2), 1)) and affine_group(make_field(2), 1).n == 2
    D3 = affine_group(make_field(3), 2)
    assert D3.n == 6 and order_profile(D3) == {1: 1, 2: 3, 3: 2}
    A4 = affine_group(make_field(2, 2), 3)
    assert A4.n == 12 and order_profile(A4) == {1: 1, 2: 3, 3: 8}
    G = affine_group(make_field(3, 2), 8)
    assert G.n == 72 and center(G) == {G.identity}


def test_affine_product_is_map_composition():
    F = field_of_order(7)
    G = affine_group(F, 6)
    # (b, a) acts as x -> a x + b; the product applies the left factor first
    maps = [tuple(int(t) for t in lab.strip("()").split(",")) for lab in G.labels]

    def act(m, x):
        b, a = m
        return (a * x + b) % 7

    for i in range(0, G.n, 5):
        for j in range(0, G.n, 7):
            k = G.rows[i][j]
            assert all(act(maps[k], x) == act(maps[j], act(maps[i], x)) for x in range(7))


def test_affine_rejects_bad_h():
    with pytest.raises(Exception):
        affine_group(field_of_order(9), 3 * 5)
