import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from smartmap.datasets import make_two_rings
from smartmap.estimator import SurvivableMapper
from smartmap.topology import TopologyError


def test_params_round_trip():
    est = SurvivableMapper(k=2, seed=4)
    params = est.get_params()
    assert params["k"] == 2 and params["seed"] == 4
    assert clone(est).get_params() == params
    est.set_params(k=1)
    assert est.k == 1


def test_fit_and_predict():
    physical, logical = make_two_rings()
    est = SurvivableMapper(k=1).fit(physical, logical)
    assert est.converged_ and est.proven_
    assert est.mapping_.domain == set(logical.edges)
    assert est.predict([["pa"], ["pb"], []]) == [True, True, True]
    assert est.predict([["pa", "pe"]])[0] in (True, False)
    assert est.score([[p] for p in physical.edge_ids]) == 1.0


def test_exact_mode_refutes():
    physical, logical = make_two_rings(drop_bridge=True)
    est = SurvivableMapper(k=1, exact=True).fit(physical, logical)
    assert not est.converged_ and not est.proven_
    assert est.decision_.status == "refuted"
    assert set(est.remaining_.graph.edges) == {"d", "e"}
    # the unmapped joining links count as up, so single failures look harmless
    assert est.score([["ph"]]) == 1.0


def test_not_fitted():
    with pytest.raises(NotFittedError):
        SurvivableMapper().predict([[]])


def test_validation():
    physical, logical = make_two_rings()
    with pytest.raises(TopologyError):
        SurvivableMapper().fit(logical, logical)
    with pytest.raises(TypeError):
        SurvivableMapper(k=1.5).fit(physical, logical)
    with pytest.raises(ValueError):
        SurvivableMapper(k=1).fit(physical, logical).predict([["nope"]])
