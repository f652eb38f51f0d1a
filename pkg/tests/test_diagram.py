import json

import pytest
from hypothesis import given, settings, strategies as st

from lbk import fixtures as fx
from lbk.diagram import (ComponentSelector, DiagramError, crossing_change, delete_components, from_json, mirror,
                         parse_pd, permute_components, recolor, relabel_crossings, serialize, sublink, to_json)
from lbk.invariants import jones
from lbk.simplify import TRIVIAL, simplify, triviality
from oracles import closed_braid

ALL = dict(fx.NAMED, unlink3=fx.unlink(3), unlink3r2=fx.UNLINK3_R2, commutator3=fx.commutator(3))

words = st.tuples(st.integers(2, 4), st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=2, max_size=9))


def braid_diagram(mw):
    m, w = mw
    w = [g for g in w if abs(g) < m]
    return closed_braid(m, w)


def test_parse_hopf():
    D = fx.HOPF
    assert D.n_crossings == 2 and D.n_components == 2
    assert D.signs == {1: 1, 2: 1}


def test_parse_unknot():
    D = parse_pd("O(1)")
    assert D.n_crossings == 0 and D.n_components == 1
    assert D.zero_crossing_unknots == {1: 1}


@pytest.mark.parametrize("text", [
    "X(1,3,2,5)",                  # each label once
    "X(1,2,3,4) X(1,2,3,4",        # syntax
    "X(1,2,3,4) X(5,6,7,8)",          # labels used once
    "component 1 kind=circle color=2 arcs=1,2\nX(1,2,2,1)\ncolors 1",
])
def test_parse_errors(text):
    with pytest.raises(DiagramError):
        parse_pd(text)


def test_nonplanar_rejected():
    # every label rule holds but the faces do not close up on a sphere
    for text in ("X(1,2,3,4) X(3,4,1,2)", "X(1,3,2,4) X(2,4,1,3)"):
        with pytest.raises(DiagramError, match="planarity"):
            parse_pd(text)


def test_comments_and_headers():
    text = "# Hopf\ncomponent 1 kind=circle color=1 arcs=1,2\ncomponent 2 kind=circle color=2 arcs=3,4\n" \
           "X(1,3,2,4) X(3,1,4,2)  # two crossings\n"
    assert serialize(parse_pd(text)) == serialize(fx.HOPF)


def test_crossing_change_examples():
    assert crossing_change(fx.HOPF, ()) == fx.HOPF
    D = crossing_change(fx.HOPF, {1})
    assert triviality(D).status == TRIVIAL
    r, trace = simplify(D)
    assert r.n_crossings == 0 and [m.kind for m in trace] == ["R2"]
    with pytest.raises(DiagramError):
        crossing_change(fx.HOPF, {999})


@pytest.mark.parametrize("name", sorted(ALL))
def test_round_trips(name):
    D = ALL[name]
    assert parse_pd(serialize(D)) == D
    assert from_json(json.loads(json.dumps(to_json(D)))) == D
    assert mirror(mirror(D)) == D


@pytest.mark.parametrize("name", sorted(ALL))
def test_crossing_change_involutive_and_additive(name):
    D = ALL[name]
    ids = list(D.crossing_ids)
    A, B = set(ids[::2]), set(ids[1::2])
    assert crossing_change(crossing_change(D, A), A) == D
    assert crossing_change(crossing_change(D, A), B) == crossing_change(D, A | B)
    assert crossing_change(D, ids) == mirror(D)


def test_mirror_flips_jones():
    assert jones(mirror(fx.TREFOIL)) == jones(fx.TREFOIL).substitute_inverse()
    assert mirror(fx.UNKNOT) == fx.UNKNOT


def test_delete_components():
    D = delete_components(fx.BORROMEAN, {3})
    assert D.n_components == 2 and triviality(D).status == TRIVIAL
    assert delete_components(fx.BORROMEAN, set()) == fx.BORROMEAN
    assert delete_components(fx.BORROMEAN, {1, 2, 3}).n_components == 0
    with pytest.raises(DiagramError):
        delete_components(fx.BORROMEAN, {4})
    # colors and order of the survivors are kept
    assert delete_components(fx.BORROMEAN, {2}).colors == (1, 3)


def test_delete_by_color():
    D = delete_components(fx.DOUBLED_BORROMEAN, ComponentSelector.colors(1))
    assert D.n_components == 2 and D.colors == (2, 3)
    with pytest.raises(DiagramError):
        delete_components(fx.DOUBLED_BORROMEAN, ComponentSelector.colors(7))


def test_relabel_after_delete_is_compact():
    D = delete_components(fx.BORROMEAN, {1})
    labels = sorted(a for c in D.components for a in c.arcs)
    assert labels == list(range(1, len(labels) + 1))


def test_delete_commutes_with_untouched_changes():
    D = fx.DOUBLED_BORROMEAN
    touched = {cid for cid in D.crossing_ids if 4 in (D.under_component(cid), D.over_component(cid))}
    keep = set(D.crossing_ids) - touched
    a = delete_components(crossing_change(D, keep), {4})
    b = crossing_change(delete_components(D, {4}), keep)
    assert a == b


def test_colors_must_be_used():
    with pytest.raises(DiagramError):
        parse_pd("colors 3\nO(1) O(2)")


def test_permute_recolor_relabel():
    D = permute_components(fx.BORROMEAN, [3, 1, 2])
    assert D.colors == (3, 1, 2)
    assert jones(D) == jones(fx.BORROMEAN)
    R = recolor(fx.BORROMEAN, [1, 1, 2])
    assert R.n_colors == 2
    S = relabel_crossings(fx.HOPF, {1: 10, 2: 20})
    assert S.crossing_ids == (10, 20)
    assert parse_pd(serialize(S)) == S


def test_sublink():
    assert sublink(fx.BORROMEAN, {1, 2}) == delete_components(fx.BORROMEAN, {3})


@settings(max_examples=40, deadline=None)
@given(words)
def test_random_braid_closures_round_trip(mw):
    D = braid_diagram(mw)
    if D is None:
        return
    assert parse_pd(serialize(D)) == D
    k = D.n_components
    for i in range(1, k + 1):
        assert delete_components(D, {i}).n_components == k - 1
