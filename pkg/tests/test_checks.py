import pytest

from czfkit import hf
from czfkit.checks import (
    ElementarityReport, EmbeddingMap, RegularityLevel, check_critical_point,
    check_elementary, check_regular,
)
from czfkit.hf import EMPTY, hfset, kpair


ONE = hfset(EMPTY)
TWO = hfset(EMPTY, ONE)
V3 = hf.v_stage(3)


def test_regular_requires_transitive():
    with pytest.raises(ValueError):
        check_regular(hfset(ONE), RegularityLevel.REGULAR)


def test_regular_small_sets():
    assert check_regular(EMPTY, RegularityLevel.REGULAR).ok
    assert check_regular(ONE, RegularityLevel.REGULAR).ok


def test_regular_counterexample():
    # R = {<0,1>} from the member 1 has no image inside {0,1}
    report = check_regular(TWO, RegularityLevel.REGULAR)
    assert not report.ok
    assert any("regularity" in msg for msg in report.failures)


def test_bcst_level():
    # the empty set misses the empty-set clause; inhabited sets break
    # pairing closure, which would force infinitely many members
    report = check_regular(EMPTY, RegularityLevel.BCST)
    assert not report.ok
    assert any("empty set" in msg for msg in report.failures)
    report = check_regular(ONE, RegularityLevel.BCST)
    assert not report.ok
    assert any("pair" in msg for msg in report.failures)


def test_inaccessible_omega_clause_always_reported():
    for a in [EMPTY, ONE]:
        report = check_regular(a, RegularityLevel.INACCESSIBLE)
        assert not report.ok
        assert any("omega" in msg for msg in report.failures)


def test_embedding_validation():
    with pytest.raises(ValueError):
        EmbeddingMap(source=hfset(ONE), target=TWO, graph={ONE: ONE})
    with pytest.raises(ValueError):
        EmbeddingMap(source=TWO, target=TWO, graph={EMPTY: EMPTY})
    with pytest.raises(ValueError):
        EmbeddingMap(source=ONE, target=ONE, graph={EMPTY: ONE})


def test_elementary_identity():
    j = EmbeddingMap(source=TWO, target=TWO,
                     graph={EMPTY: EMPTY, ONE: ONE})
    report = check_elementary(j, depth=2, limit=60)
    assert report.ok
    assert report.checked > 0


def test_elementary_into_larger_target():
    j = EmbeddingMap(source=ONE, target=TWO, graph={EMPTY: EMPTY})
    assert check_elementary(j, depth=2, limit=60).ok


def test_elementary_failure_has_witness():
    # sending the empty set to an inhabited set breaks a bounded existential
    j = EmbeddingMap(source=ONE, target=TWO, graph={EMPTY: ONE})
    report = check_elementary(j, depth=2, limit=120)
    assert not report.ok
    assert report.formula is not None
    assert report.arguments == (EMPTY,)


def test_critical_point_identity_fails():
    j = EmbeddingMap(source=TWO, target=TWO,
                     graph={EMPTY: EMPTY, ONE: ONE})
    assert not check_critical_point(j, ONE)


def test_critical_point_positive():
    j = EmbeddingMap(source=TWO, target=V3, graph={EMPTY: EMPTY, ONE: TWO})
    assert check_critical_point(j, ONE)


def test_critical_point_moved_member_fails():
    j = EmbeddingMap(source=TWO, target=V3, graph={EMPTY: ONE, ONE: TWO})
    assert not check_critical_point(j, ONE)


def test_critical_point_outside_source():
    j = EmbeddingMap(source=ONE, target=ONE, graph={EMPTY: EMPTY})
    with pytest.raises(ValueError):
        check_critical_point(j, ONE)
