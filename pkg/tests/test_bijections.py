import pytest

from numsemi import bijections as bj
from numsemi.counting import PG, PM, a_bar, b
from numsemi.errors import DomainError
from numsemi.numset import partition_is_semigroup
from numsemi.partition import Partition

P = Partition


def clean(bid, **params):
    res = bj.audit(bj.make_spec(bid, **params))
    assert res.ok, [r.to_dict() for r in res.failures[:3]]
    return res


def test_genus_main_examples():
    assert bj.genus_main_forward(P((2, 2, 1, 1)), 6, 4) == (1, 1)
    assert bj.genus_main_forward(P((3, 1, 1, 1)), 6, 4) == (2,)
    assert bj.genus_main_backward(P(()), 5, 5) == (1, 1, 1, 1, 1)
    with pytest.raises(DomainError):
        bj.genus_main_forward(P((3, 3)), 6, 2)


@pytest.mark.parametrize("n", range(2, 13))
def test_genus_main_audit(n):
    for g in range(-(-2 * n // 3), n + 1):
        clean("GENUS_MAIN", n=n, g=g)


def test_genus_shift_examples():
    n = 6
    assert bj.genus_shift_family(1, P((1,) * n), n) == P((2,) * n + (1,) * (n - 1))
    assert bj.genus_shift_family(1, P((1,) * n), n) in bj.genus_shift_exceptions(1, n)
    img = bj.genus_shift_family(2, P((2,) + (1,) * (n - 2)), n)
    assert img == P((3,) + (2,) * (n - 2) + (1,) * (n - 1))
    assert img in bj.genus_shift_exceptions(2, n)
    img = bj.genus_shift_family(3, P((2, 2) + (1,) * (n - 4)), n)
    assert img == P((3, 3) + (2,) * (n - 4) + (1,) * (n - 1))
    assert img not in bj.genus_shift_exceptions(3, n) and partition_is_semigroup(img)
    assert [len(bj.genus_shift_exceptions(i, n)) for i in (1, 2, 3)] == [1, 2, 2]
    with pytest.raises(DomainError):
        bj.genus_shift_family(4, P((1,)), 3)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_genus_shift_audit(i):
    for n in range(3, 10):
        clean("GENUS_3N", i=i, n=n)


def test_boxed_listed_sizes():
    assert [len(bj.boxed_exceptional_set(8, k)) for k in (0, 1, 2)] == [2, 3, 4]
    assert len(bj.boxed_excluded(8, 0)) == 2


def test_boxed_actual_count():
    # the excluded pair is itself made of semigroup partitions, so the map
    # accounts for b(n) - |E| + 2 elements; with the true E this is b(n) - k
    # (below n = 6 the pair and E both shift, and the count still holds)
    for k in (0, 1, 2):
        for n in range(4, 13):
            assert PG(3 * n + 2 - k, 2 * n - k) == b(n) - k
            if n >= 6:
                assert all(partition_is_semigroup(x) for x in bj.boxed_excluded(n, k))


def test_boxed_k1_table_row_is_wrong():
    n = 7
    res = bj.audit(bj.make_spec("GENUS_BOXED_K", k=1, n=n))
    bad = {tuple(r.input) for r in res.failures}
    assert bad == {(3,) + (1,) * (n - 1), (2, 2) + (1,) * (n - 2)}
    assert clean_k(0, n) and clean_k(2, n)


def clean_k(k, n):
    return bj.audit(bj.make_spec("GENUS_BOXED_K", k=k, n=n)).ok


@pytest.mark.parametrize("j", range(0, 4))
def test_genus_recurrence(j):
    for n in range(j + 5, j + 8):
        res = clean("GENUS_REC_J", j=j, n=n)
        for r in res.records:
            if r.direction == "forward" and r.output.branch == "NEW":
                assert 1 not in r.output.partition


def test_onehook():
    assert len(bj.frob_onehook(5)) == 3
    assert bj.frob_onehook(1) == [P((1,))]
    good = set(bj.frob_onehook(6))
    for h in bj.hooks(6):
        assert partition_is_semigroup(h) == (h in good)
    for n in range(1, 30):
        clean("FROB_ONEHOOK", n=n)


def test_nesting_examples():
    n = 6
    assert bj.frob_nest(2, P((1,) * (2 * n - 2)), P((2,))) is None
    # the failure is classified from the closure witness
    res = bj.frob_nest(2, P((n,) + (1,) * (n - 2)), P((1, 1)))
    assert res is not None and not res.semigroup and res.reason == "m+k = F"
    res = bj.frob_nest(2, P((n - 1,) + (1,) * (n - 1)), P((2,)))
    assert res is not None and not res.semigroup and res.reason == "2m = F"
    assert bj.frob_unnest(P((6, 3, 2, 1))) == (P((6, 1, 1, 1)), P((2, 1)))
    with pytest.raises(DomainError):
        bj.frob_nest(1, P((3, 2)), P((1,)))


@pytest.mark.parametrize("j", [1, 2, 3])
def test_nesting_audit(j):
    for size in range(j + 1, 16):
        clean("FROB_NEST", j=j, n=size)


def test_frob_recurrence():
    assert bj.frob_recurrence(0, "forward", P((1,) * 7), 7) == ("B", ())
    for k in range(0, 3):
        for n in range(4 * k + 3, 4 * k + 9):
            res = clean("FROB_REC_K", k=k, n=n)
            assert sum(1 for r in res.records if r.direction == "backward" and r.input.branch == "B") > 0
    lam = bj.frob_recurrence_backward(2, bj.Tagged("B", P((2,))), 11)
    assert partition_is_semigroup(lam) and lam[0] == lam[1] == 3


def test_mult_shift():
    j = 4
    assert bj.mult_shift(j, "forward", P((2,) + (1,) * (j - 1)), j + 1) == P((3,) + (1,) * j)
    with pytest.raises(DomainError):
        bj.mult_shift(j, "backward", P((3, 3) + (1,) * j), 4 + j)
    with pytest.raises(DomainError):
        bj.mult_shift(2, "forward", P((3, 1)), 7)


@pytest.mark.parametrize("j", range(1, 7))
def test_mult_shift_audit_and_flags(j):
    for n in range(0, 3 * j + 1):
        clean("MULT_SHIFT", j=j, n=n)
        assert bj.mult_shift_flag_violations(j, n) == []


def test_mult_half_tables():
    n = 9
    assert [len(bj.mult_half_exceptional_set(n, i)) for i in range(4)] == [0, 1, 2, 5]
    starred = bj.mult_half_starred(n, 2)
    assert starred == [P((n - 1, 2) + (1,) * (n - 3))]
    assert partition_is_semigroup(starred[0])
    assert starred[0] not in bj.mult_half_exceptional_set(n, 2)
    assert all(not partition_is_semigroup(x) for i in range(4) for x in bj.mult_half_exceptional_set(n, i))


@pytest.mark.parametrize("i", range(4))
def test_mult_half_audit(i):
    for n in range(7, 12):
        clean("MULT_HALF_I", i=i, n=n)


def test_mult_half_small_n_defect():
    res = bj.audit(bj.make_spec("MULT_HALF_I", i=3, n=5))
    assert [tuple(r.input) for r in res.failures] == [(2, 2, 2)]


@pytest.mark.parametrize("j", range(0, 4))
def test_mult_recurrence(j):
    for n in range(2 * j + 2, 2 * j + 8):
        res = clean("MULT_REC_J", j=j, n=n)
        for r in res.records:
            if r.direction == "forward" and r.output.branch == "NEW":
                mu = r.output.partition
                assert 1 not in mu and len(mu) >= 2 and mu[0] == mu[1]


@pytest.mark.parametrize("j", range(4, 9))
def test_mult_boundaries(j):
    fam = bj.mult_3j2_excluded_family(j)
    assert len(fam) == j
    for mu in fam:
        lam = bj.mult_3j2_backward(j, bj.Tagged("NEW", mu))
        assert lam.count(1) == j and lam[0] + len(lam) - 1 == 2 * (j + 1)
        assert not partition_is_semigroup(lam)
    clean("MULT_3J2", j=j)
    clean("MULT_3J", j=j)
    assert bj.mult_3j_excluded(j) == P((3,) + (2,) * (j - 1) + (1,) * (j - 1))
    assert PM(3 * j + 2, j + 1) - PM(3 * j, j) == a_bar(2 * j + 2) - j


def test_mult_3j_branches():
    j = 5
    # F_mu = j + 1 branch of the backward map
    mu = P((4, 4, 3))
    assert bj.mult_3j_backward(j, bj.Tagged("NEW", mu)) == P((5, 4, 2) + (1,) * (j - 1))
    # (j+1, j, 1^(j-1)) goes through the last branch
    lam = P((j + 1, j) + (1,) * (j - 1))
    assert bj.mult_3j_forward(j, lam).branch == "REC"
    with pytest.raises(DomainError):
        bj.mult_3j_forward(j, bj.mult_3j_excluded(j))


def test_claim2_discrepancies_flagged():
    for j in range(4, 9):
        rows = bj.mult_3j_claim2_discrepancies(j)
        assert rows
        for lam, image, alt in rows:
            assert bj.mult_3j_forward(j, lam) == ("NEW", image)
            assert sum(alt) == sum(image) - 1


def test_sampled_audit_reproducible():
    spec = bj.make_spec("FROB_REC_K", k=2, n=20)
    a1 = bj.audit(spec, sample=10, seed=3)
    a2 = bj.audit(spec, sample=10, seed=3)
    assert [r.to_dict() for r in a1.records] == [r.to_dict() for r in a2.records]
    assert a1.sampled and a1.domain_size == bj.audit(spec).domain_size


def test_make_spec_errors():
    with pytest.raises(DomainError):
        bj.make_spec("NOPE", n=3)
    with pytest.raises(DomainError):
        bj.make_spec("MULT_REC_J", j=2)
    with pytest.raises(DomainError):
        bj.make_spec("MULT_SHIFT", j=1, n=9)
    assert bj.make_spec("GENUS_3N2", n=4).params == (("i", 2), ("n", 4))
