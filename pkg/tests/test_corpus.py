from __future__ import annotations

import pytest

from appl.logic import check_script

from conftest import CORPUS, read_corpus

POSITIVE = sorted(p.name for p in CORPUS.glob("*.appl"))
NEGATIVE = sorted(p.name for p in (CORPUS / "negative").glob("*.appl"))


def test_corpus_is_populated():
    assert len(POSITIVE) >= 11 and len(NEGATIVE) >= 2


@pytest.mark.parametrize("name", POSITIVE)
def test_accepted(name):
    rep = check_script(read_corpus(name))
    assert rep.accepted, (rep.path, rep.condition, rep.witnesses)


@pytest.mark.parametrize("name", NEGATIVE)
def test_negative_rejected_for_density(name):
    rep = check_script(read_corpus(f"negative/{name}"))
    assert not rep.accepted
    assert (rep.path, rep.condition) == ("proof/join", "density")


def test_reach_mutation_breaks_choice():
    text = read_corpus("incorrectness_reach.appl").replace("(:h {1,998,1000})", "(:h {1,5,998,1000})")
    rep = check_script(text)
    assert not rep.accepted
    assert rep.path.startswith("proof/iter/0.choice")


def test_product_tail_mutation_rejected():
    text = read_corpus("product_reach.appl").replace("(:h <{} | [0,1000]>)", "(:h <{} | [0,999]>)")
    assert not check_script(text).accepted


def test_bca_cover_mutation_rejected():
    text = read_corpus("bca_hole.appl").replace("<{-1,0,1} | [0,0]>", "<{-1,0,1} | [1,1]>", 1)
    assert not check_script(text).accepted


def test_rec_inv_mutation_rejected():
    text = read_corpus("intervals_rec_inv.appl").replace("(inv :kp [4,+inf)", "(inv :kp [1,+inf)")
    rep = check_script(text)
    assert not rep.accepted and rep.condition == "inv-invariant"


def test_downclosed_invariant_mutation_rejected():
    text = read_corpus("downclosed_parity.appl").replace("(inv :kp down{prog(2k+2)}", "(inv :kp down{[0,+inf)}")
    assert not check_script(text).accepted
