import pytest

from lbk import fixtures as fx
from lbk.diagram import crossing_change, mirror
from lbk.invariants import jones, linking_matrix
from lbk.simplify import NONTRIVIAL, simplify, triviality
from lbk.twist import (TwistError, TwistSite, apply_twist, detect_twist_site, full_twist_word, twist_component,
                       twist_with_bundle)
from acceptance_support import WHITEHEAD_FRAMING, collapse_undo, encircled_braid

CASES = [(m, w) for m in (1, 2, 3, 4) for w in ((), (1, 1), (1, -2, 1, 1, -2, -1)) if not w or max(map(abs, w)) < m]


def test_full_twist_word():
    letters, undo = full_twist_word(3, 1)
    assert letters == [1, 1, 2, 1, 1, 2]
    assert [letters[i] for i in undo] == [1, 1, 2]
    neg, undo_neg = full_twist_word(3, -2)
    assert neg == [-g for g in letters] * 2 and len(undo_neg) == 6
    assert full_twist_word(1, 3) == ([], [])
    assert full_twist_word(4, 0) == ([], [])


def test_borromean_sites():
    sites = {c: detect_twist_site(fx.BORROMEAN, c) for c in (1, 2, 3)}
    assert sites[1].m == 2 and sites[2].m == 4 and sites[3].m == 2
    assert sites[3].pairs() == [(6, 5), (8, 7)]
    assert sites[3].describe() == "component 3: m=2 passages (6,5) (8,7)"
    assert len(sites[3].piercing) == 4


def test_sites_absent_or_empty():
    assert detect_twist_site(fx.TREFOIL, 1) is None
    s = detect_twist_site(fx.unlink(2), 1)
    assert s == TwistSite(1, ()) and s.m == 0
    with pytest.raises(TwistError):
        detect_twist_site(fx.BORROMEAN, 4)
    with pytest.raises(TwistError):
        twist_component(fx.TREFOIL, 1, 1)


def test_borromean_to_whitehead():
    D, undo, site = twist_component(fx.BORROMEAN, 3, WHITEHEAD_FRAMING)
    assert D.n_components == 2 and len(undo) == 1
    assert jones(D) == jones(fx.WHITEHEAD)
    D2, _, _ = twist_component(fx.BORROMEAN, 3, -WHITEHEAD_FRAMING)
    assert jones(D2) == jones(mirror(fx.WHITEHEAD))
    assert linking_matrix(D) == [[0, 0], [0, 0]]
    assert triviality(D).status == NONTRIVIAL


def test_zero_framing_just_deletes():
    site = detect_twist_site(fx.BORROMEAN, 3)
    D0, undo = apply_twist(fx.BORROMEAN, site, 0)
    assert not undo and D0.n_components == 2 and D0.n_crossings == fx.BORROMEAN.n_crossings - 4
    with pytest.raises(TwistError):
        apply_twist(fx.BORROMEAN, site, 1.5)


@pytest.mark.parametrize("m,word", CASES)
@pytest.mark.parametrize("f", [-2, -1, 1, 2])
def test_twist_counts_and_undo(m, word, f):
    D = encircled_braid(m, word)
    site = detect_twist_site(D, D.n_components)
    assert site is not None and site.m == m
    D0, _ = apply_twist(D, site, 0)
    D2, undo = apply_twist(D, site, f)
    assert D2.n_crossings == D.n_crossings - 2 * m + abs(f) * m * (m - 1)
    assert len(undo) == abs(f) * m * (m - 1) // 2
    assert set(D.crossing_ids) - {c for p in site.pairs() for c in p} <= set(D2.crossing_ids)
    # changing the undo set lets the twist collapse by R2 moves among new crossings
    assert str(collapse_undo(D2, undo, set(D.crossing_ids))) == str(D0)
    r, trace = simplify(crossing_change(D2, undo))
    assert r.n_crossings <= D0.n_crossings


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("f", [-1, 1, 2])
def test_stacked_twist_cancels(m, f):
    D = encircled_braid(m, (1, 1) if m == 2 else (1, -2, 1, 1, -2, -1))
    site = detect_twist_site(D, D.n_components)
    D0, _ = apply_twist(D, site, 0)
    D2, _, bundle = twist_with_bundle(D, site, f)
    assert bundle is not None and bundle.component is None and bundle.m == m
    D3, _ = apply_twist(D2, bundle, -f)
    assert jones(D3) == jones(D0)


def test_bad_site_rejected():
    site = detect_twist_site(fx.BORROMEAN, 3)
    fake = TwistSite(3, (((1, 0), (2, 0)),))
    with pytest.raises(TwistError):
        apply_twist(fx.BORROMEAN, fake, 1)
    own = TwistSite(2, site.chords)  # both chords run along component 2
    with pytest.raises(TwistError):
        apply_twist(fx.BORROMEAN, own, 1)
