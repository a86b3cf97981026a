import random

import pytest

from hamwit.ball import (
    Ball, RestrictedVerifier, Universe, ball_prefix_count, ball_rank_upto, ball_universe_count,
    phi_apply, phi_inverse, rank, restrict_verifier, unrank,
)
from hamwit.core import BitString
from hamwit.testkit import ball_members_bruteforce, enumerate_witnesses
from hamwit.verifier import PredicateVerifier, SetVerifier


def bs(s):
    return BitString.from_str(s)


def prefix_bruteforce(n_u, a, d, s):
    return sum(
        1 for x in range(1 << n_u)
        if (x >> (n_u - s.length)) == s.value and bin(x ^ a.value).count("1") <= d
    )


class TestUniverse:
    def test_bit_length(self):
        assert Universe(1).n_u == 0
        assert Universe(2).n_u == 1
        assert Universe(6).n_u == 3
        assert Universe(8).n_u == 3
        assert Universe(9).n_u == 4

    def test_invariants(self):
        for u in range(1, 300):
            univ = Universe(u)
            assert u <= 1 << univ.n_u
            if univ.n_u >= 1:
                assert u > 1 << (univ.n_u - 1)

    def test_membership(self):
        univ = Universe(6)
        assert bs("101") in univ
        assert bs("110") not in univ
        assert bs("01") not in univ
        assert [str(w) for w in univ.members()] == ["000", "001", "010", "011", "100", "101"]

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Universe(0)


class TestPrefixCount:
    def test_examples(self):
        assert ball_prefix_count(3, bs("101"), 1, bs("1")) == 3
        assert ball_prefix_count(3, bs("101"), 3, bs("")) == 8
        assert ball_prefix_count(3, bs("101"), 0, bs("0")) == 0

    def test_prefix_too_long(self):
        with pytest.raises(ValueError):
            ball_prefix_count(3, bs("101"), 1, bs("1010"))

    def test_matches_enumeration(self):
        rng = random.Random(11)
        for _ in range(400):
            n = rng.randint(0, 10)
            a = BitString(rng.getrandbits(n) if n else 0, n)
            d = rng.randint(0, n)
            k = rng.randint(0, n)
            s = BitString(rng.getrandbits(k) if k else 0, k)
            assert ball_prefix_count(n, a, d, s) == prefix_bruteforce(n, a, d, s)


class TestUniverseCount:
    def test_examples(self):
        assert ball_universe_count(Universe(6), Ball(bs("000"), 1)) == 4
        assert ball_universe_count(Universe(8), Ball(bs("000"), 1)) == 4
        for n in range(6):
            assert ball_universe_count(Universe(1 << n), Ball(BitString.zeros(n), n)) == 1 << n

    def test_prefix_identity(self):
        # u' = N("0") + N("10") for u = 6 = 110b around 000 with d = 1
        a = bs("000")
        assert ball_prefix_count(3, a, 1, bs("0")) + ball_prefix_count(3, a, 1, bs("10")) == 4

    def test_center_length_checked(self):
        with pytest.raises(ValueError):
            ball_universe_count(Universe(6), Ball(bs("00"), 1))

    @pytest.mark.parametrize("n_u", range(0, 13))
    def test_oracle_equivalence(self, n_u):
        rng = random.Random(1000 + n_u)
        for _ in range(100):
            u = rng.randint((1 << (n_u - 1)) + 1, 1 << n_u) if n_u else 1
            a = BitString(rng.getrandbits(n_u) if n_u else 0, n_u)
            d = rng.randint(0, n_u)
            members = ball_members_bruteforce(n_u, a, d, u)
            assert ball_universe_count(Universe(u), Ball(a, d)) == len(members)


class TestRankUpto:
    def test_examples(self):
        assert ball_rank_upto(Universe(8), Ball(bs("000"), 1), bs("010")) == 3
        assert ball_rank_upto(Universe(8), Ball(bs("000"), 0), bs("000")) == 1
        for n in range(1, 7):
            assert ball_rank_upto(Universe(1 << n), Ball(BitString.zeros(n), n), BitString.ones(n)) == 1 << n

    def test_telescoping(self):
        rng = random.Random(4)
        for _ in range(300):
            n = rng.randint(1, 10)
            u = rng.randint((1 << (n - 1)) + 1, 1 << n)
            ball = Ball(BitString(rng.getrandbits(n), n), rng.randint(0, n))
            univ = Universe(u)
            assert ball_rank_upto(univ, ball, BitString(u - 1, n)) == ball_universe_count(univ, ball)

    def test_matches_enumeration(self):
        rng = random.Random(7)
        for _ in range(300):
            n = rng.randint(1, 10)
            a = BitString(rng.getrandbits(n), n)
            d = rng.randint(0, n)
            z = BitString(rng.getrandbits(n), n)
            expected = len(ball_members_bruteforce(n, a, d, z.value + 1))
            assert ball_rank_upto(Universe(1 << n), Ball(a, d), z) == expected


class TestUnrank:
    def test_examples(self):
        univ, ball = Universe(6), Ball(bs("000"), 1)
        assert str(unrank(univ, ball, 4)) == "100"
        assert str(unrank(univ, ball, 1)) == "000"

    def test_out_of_bounds(self):
        univ, ball = Universe(6), Ball(bs("000"), 1)
        with pytest.raises(IndexError, match="rank out of bounds"):
            unrank(univ, ball, 0)
        with pytest.raises(IndexError, match="rank out of bounds"):
            unrank(univ, ball, 5)

    def test_roundtrip_and_monotone_small(self):
        for n in range(0, 8):
            for u in range((1 << (n - 1)) + 1 if n else 1, (1 << n) + 1):
                univ = Universe(u)
                for a_val in range(0, 1 << n, max(1, (1 << n) // 4)):
                    for d in range(n + 1):
                        ball = Ball(BitString(a_val, n), d)
                        members = ball_members_bruteforce(n, ball.center, d, u)
                        got = [unrank(univ, ball, i) for i in range(1, len(members) + 1)]
                        assert got == members
                        assert all(rank(univ, ball, w) == i for i, w in enumerate(got, 1))

    def test_rank_requires_membership(self):
        with pytest.raises(ValueError):
            rank(Universe(6), Ball(bs("000"), 1), bs("011"))


class TestRestriction:
    def example(self, accepted):
        inner = SetVerifier(3, accepted)
        return restrict_verifier(inner, Universe(6), Ball(bs("000"), 1))

    def test_phi(self):
        rv = self.example(["100"])
        assert rv.child.u == 4 and rv.witness_length == 2
        assert str(phi_apply(rv, bs("11"))) == "100"
        assert str(phi_apply(rv, bs("00"))) == "000"
        assert str(phi_inverse(rv, bs("100"))) == "11"

    def test_phi_rejects_nonmembers(self):
        # radius 2 around 111 inside [6] drops only 000, so the child universe is [5] over 3 bits
        rv = restrict_verifier(SetVerifier(3, []), Universe(6), Ball(bs("111"), 2))
        assert rv.child.u == 5 and rv.child.n_u == 3
        with pytest.raises(ValueError, match="not a member"):
            phi_apply(rv, bs("101"))
        with pytest.raises(ValueError, match="not a member"):
            phi_apply(rv, bs("00"))

    def test_accepts_only_preimage(self):
        rv = self.example(["100"])
        assert [str(w) for w in enumerate_witnesses(rv)] == ["11"]

    def test_empty_preserved(self):
        rv = self.example([])
        assert enumerate_witnesses(rv) == []

    def test_identity_restriction(self):
        n = 4
        inner = PredicateVerifier(n, lambda w: True)
        rv = restrict_verifier(inner, Universe(1 << n), Ball(BitString.zeros(n), n))
        assert rv.child.u == 1 << n
        assert len(enumerate_witnesses(rv)) == 1 << n
        assert all(phi_apply(rv, w) == w for w in Universe(1 << n).members())

    def test_empty_restriction_rejected(self):
        # u = 5 allows 000..100; nothing within distance 0 of 111
        with pytest.raises(ValueError, match="empty restriction"):
            restrict_verifier(SetVerifier(3, []), Universe(5), Ball(bs("111"), 0))

    def test_witness_preservation_exhaustive(self):
        rng = random.Random(21)
        for n in range(1, 9):
            for _ in range(12):
                u = rng.randint((1 << (n - 1)) + 1, 1 << n)
                univ = Universe(u)
                ball = Ball(BitString(rng.getrandbits(n), n), rng.randint(0, n))
                region = ball_members_bruteforce(n, ball.center, ball.radius, u)
                if not region:
                    continue
                accepted = rng.sample(region, rng.randint(0, len(region)))
                rv = restrict_verifier(SetVerifier(n, accepted), univ, ball)
                found = enumerate_witnesses(rv)
                assert len(found) == len(accepted)
                assert sorted(phi_apply(rv, w) for w in found) == sorted(accepted)

    def test_chains_nest(self):
        n = 8
        target = bs("10110011")
        v = SetVerifier(n, [target])
        univ = Universe(1 << n)
        rng = random.Random(2)
        image = target
        for _ in range(5):
            center = image.flip(rng.sample(range(univ.n_u), min(2, univ.n_u)))
            ball = Ball(center, max(univ.n_u - 2, 0))
            new = restrict_verifier(v, univ, ball)
            image = phi_inverse(new, image)
            v, univ = new, new.child
        assert isinstance(v, RestrictedVerifier) and v.depth == 5
        assert enumerate_witnesses(v) == [image]
        w = image
        for level in reversed(v.chain()):
            w = phi_apply(level, w)
        assert w == target
