import itertools

import pytest

import oracles
from conftest import idx, jsls_upto
from omodular.errors import InvalidWitness, NotALattice
from omodular.omod import (
    OModWitness,
    check_omodular,
    is_lattice,
    modular_law_check,
    to_proof_labels,
    verify_witness,
)
from omodular.order import builtin


def named(S, w):
    return {k: S.names[getattr(w, k)] for k in "abcxy"}


@pytest.mark.parametrize("name", ["m2", "m4"])
def test_builtin_witnesses(name):
    S = builtin(name)
    w = check_omodular(S)
    assert named(S, w) == {"a": "c", "b": "b", "c": "a", "x": "c", "y": "a"}
    assert verify_witness(S, w)
    pl = to_proof_labels(w, S)
    assert named(S, pl) == {"a": "a", "b": "b", "c": "c", "x": "c", "y": "a"}
    assert w.render(S) == "witness(def): a=c b=b c=a x=c y=a"


@pytest.mark.parametrize("name", ["chain:1", "chain:5", "m3", "antichain-top:3"])
def test_omodular_builtins(name):
    assert check_omodular(builtin(name)) is None


def test_verify_witness_rejects_bad_quintuples(m2):
    w = check_omodular(m2)
    a = m2.index("a")
    assert not verify_witness(m2, OModWitness(w.a, w.b, w.c, a, w.y))
    assert not verify_witness(m2, OModWitness(w.a, w.b, w.c, w.x, 99))
    chain = builtin("chain:3")
    assert not any(
        verify_witness(chain, OModWitness(*q)) for q in itertools.product(range(3), repeat=5)
    )


def test_to_proof_labels_rejects_equal_a_c(m2):
    with pytest.raises(InvalidWitness):
        to_proof_labels(OModWitness(1, 3, 1, 1, 0))


def test_to_proof_labels_checks_facts_when_given_structure(m2):
    bad = OModWitness(*idx(m2, "c", "b", "a", "a", "a"))
    pl = to_proof_labels(bad)  # no structure: only the swap
    assert (pl.a, pl.c) == (bad.c, bad.a)
    with pytest.raises(InvalidWitness, match=r"\(vi\)"):
        to_proof_labels(bad, m2)


def test_witness_is_lexicographically_least(m4u):
    # the reported triple is the first failing one in (a, b, c) order
    w = check_omodular(m4u)
    for a, b, c in itertools.product(range(m4u.n), repeat=3):
        if (a, b, c) >= (w.a, w.b, w.c):
            break
        if not m4u.leq[c][a]:
            continue
        assert not any(
            verify_witness(m4u, OModWitness(a, b, c, x, y))
            for x in range(m4u.n) for y in range(m4u.n)
        )


def test_every_witness_verifies_and_relabels():
    for S in jsls_upto(7):
        w = check_omodular(S)
        if w is None:
            continue
        assert verify_witness(S, w)
        assert w.c != w.a and S.lt(w.c, w.a)
        pl = to_proof_labels(w, S)
        assert all(ok for _, _, ok in pl.facts(S))


def test_agrees_with_definition_oracle():
    for S in jsls_upto(6):
        expect = oracles.omodular_by_definition(oracles.leq_table(S))
        assert (check_omodular(S) is None) == expect
        assert oracles.has_proof_quintuple(oracles.leq_table(S)) == (not expect)


def test_modular_law_examples(m4):
    assert modular_law_check(m4) == tuple(idx(m4, "c", "b", "a"))
    assert modular_law_check(builtin("m3")) is None
    assert modular_law_check(builtin("chain:4")) is None


def test_modular_law_needs_a_lattice(m2):
    assert not is_lattice(m2)
    with pytest.raises(NotALattice):
        modular_law_check(m2)


def test_lattice_agreement_small():
    checked = 0
    for S in jsls_upto(6):
        if not is_lattice(S):
            continue
        checked += 1
        assert (check_omodular(S) is None) == (modular_law_check(S) is None)
    assert checked > 20
