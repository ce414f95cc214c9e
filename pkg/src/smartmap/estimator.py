"""scikit-learn style front end to k-SMART."""
from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .oracle import DEFAULT_MAX_COMBINATIONS, DEFAULT_MAX_PATHS
from .smart import PROVEN, Strategy, decide_existence, run
from .validation import check_instance, check_k


class SurvivableMapper(BaseEstimator):
    """Find a k-survivable mapping of a logical topology onto a physical one.

    Parameters
    ----------
    k : int
        Number of simultaneous physical link failures to survive.
    strategy : {"cycles", "k2", "exhaustive"} or None
        Candidate-subgraph family; ``None`` picks one from ``k``.
    exact : bool
        If True, escalate to the exhaustive oracle when k-SMART stalls so the
        fitted result is a proof either way.

    Attributes
    ----------
    outcome_ : SmartOutcome
    mapping_ : Mapping
        Total when ``converged_``; otherwise the piecewise survivable part.
    remaining_ : ContractedTopology
    converged_ : bool
    decision_ : Decision or None
        Only set when ``exact=True``.
    """

    def __init__(self, k=1, strategy=None, seed=0, max_candidates=2000, max_paths=16,
                 max_combinations=5000, exact=False, oracle_max_paths=DEFAULT_MAX_PATHS,
                 oracle_max_combinations=DEFAULT_MAX_COMBINATIONS, verify=True):
        self.k = k
        self.strategy = strategy
        self.seed = seed
        self.max_candidates = max_candidates
        self.max_paths = max_paths
        self.max_combinations = max_combinations
        self.exact = exact
        self.oracle_max_paths = oracle_max_paths
        self.oracle_max_combinations = oracle_max_combinations
        self.verify = verify

    def _strategy(self, k):
        budget = dict(max_candidates=self.max_candidates, max_paths=self.max_paths,
                      max_combinations=self.max_combinations, seed=self.seed)
        if self.strategy is None:
            return Strategy.for_k(k, **budget)
        return Strategy(kind=self.strategy, **budget)

    def fit(self, physical, logical):
        physical, logical = check_instance(physical, logical)
        k = check_k(self.k)
        strategy = self._strategy(k)
        if self.exact:
            self.decision_ = decide_existence(
                physical, logical, k, strategy, self.oracle_max_paths,
                self.oracle_max_combinations, self.verify)
            self.outcome_ = self.decision_.outcome
        else:
            self.decision_ = None
            self.outcome_ = run(physical, logical, k, strategy, self.verify)
        self.physical_ = physical
        self.logical_ = logical
        self.mapping_ = self.outcome_.mapping
        self.remaining_ = self.outcome_.remaining
        self.converged_ = self.outcome_.converged
        self.n_iter_ = len(self.outcome_.iterations)
        return self

    @property
    def proven_(self):
        check_is_fitted(self, "outcome_")
        if self.decision_ is None:
            return self.converged_
        return self.decision_.status == PROVEN

    def predict(self, failures):
        """For each set of failed physical links, whether the logical topology stays connected.

        Links outside the fitted mapping's domain count as up.
        """
        check_is_fitted(self, "outcome_")
        out = []
        for failed in failures:
            failed = self.physical_.check_edges(failed)
            dead = [e for e in self.mapping_ if not failed.isdisjoint(self.mapping_[e].edges)]
            out.append(len(self.logical_.components(dead)) == 1)
        return out

    def score(self, failures):
        """Fraction of the given failure scenarios the fitted mapping survives."""
        verdicts = self.predict(failures)
        return sum(verdicts) / len(verdicts) if verdicts else 1.0
