"""scikit-learn style wrappers around the solvers and kernelizations.

Solvers are estimators: ``fit(X)`` solves the instance ``X`` and exposes
``solution_`` and ``cost_``.  Kernelizations are transformers:
``transform(X)`` returns the kernel instance and ``inverse_transform``
lifts a kernel solution back to the instance seen in ``fit``.

``X`` may be an :class:`~minpac.graph.Instance`, an ``(n, arcs)`` pair or a
networkx-style directed graph whose nodes are ``0..n-1`` and whose edges
carry a ``weight`` attribute.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin, clone
from sklearn.exceptions import NotFittedError

from .bounds import LOWER_BOUNDS
from .exceptions import InvalidInstance
from .fpt import DEFAULT_CAP_C
from .graph import Instance, Solution
from .kernel_fes import kernelize_fes, lift_solution_fes
from .kernel_vc import kernelize_vc, lift_solution_vc
from .oracle import DEFAULT_COMBINATION_CAP
from .solver import ALGORITHMS, solve


def check_instance(X) -> Instance:
    """Coerce ``X`` into an :class:`Instance` or raise :class:`InvalidInstance`."""
    if isinstance(X, Instance):
        return X
    if isinstance(X, tuple) and len(X) == 2:
        n, arcs = X
        return Instance(n, arcs)
    if hasattr(X, "nodes") and hasattr(X, "edges") and hasattr(X, "is_directed"):
        if not X.is_directed():
            raise InvalidInstance("graph must be directed")
        nodes = sorted(X.nodes)
        if nodes != list(range(len(nodes))):
            raise InvalidInstance("graph nodes must be the integers 0..n-1")
        arcs = []
        for u, v, data in X.edges(data=True):
            if "weight" not in data:
                raise InvalidInstance(f"edge {u}->{v} has no 'weight' attribute")
            arcs.append((u, v, data["weight"]))
        return Instance(len(nodes), arcs)
    raise InvalidInstance(f"cannot interpret {type(X).__name__} as a MinPAC instance")


def check_solution(solution) -> Solution:
    if isinstance(solution, Solution):
        return solution
    raise InvalidInstance("expected a Solution")


def _check_fitted(est, attr):
    if not hasattr(est, attr):
        raise NotFittedError(f"{type(est).__name__} is not fitted yet; call fit first")


class MinPACSolver(BaseEstimator):
    """Exact MinPAC solver.

    Parameters
    ----------
    algo : {'fpt', 'oracle', 'auto'}
    lower_bound : {'trivial', 'unique-in', 'both'}
        Vertex lower bound used to build the obligatory subgraph.
    cap_c, cap_combinations : int
        Resource caps of the SCC-based solver and of the oracle.

    Attributes
    ----------
    solution_, cost_, n_components_, report_
    """

    def __init__(self, algo="fpt", lower_bound="both", cap_c=DEFAULT_CAP_C,
                 cap_combinations=DEFAULT_COMBINATION_CAP):
        self.algo = algo
        self.lower_bound = lower_bound
        self.cap_c = cap_c
        self.cap_combinations = cap_combinations

    def fit(self, X, y=None):
        if self.algo not in ALGORITHMS:
            raise ValueError(f"algo must be one of {ALGORITHMS}, got {self.algo!r}")
        if self.lower_bound not in LOWER_BOUNDS:
            raise ValueError(f"lower_bound must be one of {LOWER_BOUNDS}, got {self.lower_bound!r}")
        self.instance_ = check_instance(X)
        self.report_ = solve(self.instance_, self.algo, self.lower_bound,
                             cap_c=self.cap_c, cap_combinations=self.cap_combinations)
        self.solution_ = self.report_.solution
        self.cost_ = self.solution_.cost
        self.n_components_ = self.report_.c
        return self

    def predict(self, X):
        """Optimal solution of ``X`` (refits)."""
        return self.fit(X).solution_

    def fit_predict(self, X, y=None):
        return self.fit(X).solution_


class _Kernelizer(TransformerMixin, BaseEstimator):
    def _kernelize(self, instance):
        raise NotImplementedError

    def _lift(self, journal, solution):
        raise NotImplementedError

    def fit(self, X, y=None):
        self.instance_ = check_instance(X)
        self.kernel_, self.journal_ = self._kernelize(self.instance_)
        self.offset_ = self.journal_.d
        return self

    def transform(self, X):
        """Kernel of ``X``; reuses the fitted kernel when ``X`` is the fitted instance."""
        _check_fitted(self, "kernel_")
        instance = check_instance(X)
        if instance == self.instance_:
            return self.kernel_
        return self._kernelize(instance)[0]

    def inverse_transform(self, X):
        """Lift a solution of the fitted kernel to the fitted instance."""
        _check_fitted(self, "journal_")
        return self._lift(self.journal_, check_solution(X))


class FESKernelizer(_Kernelizer):
    """Kernel whose size depends only on the feedback edge number."""

    def _kernelize(self, instance):
        return kernelize_fes(instance)

    def _lift(self, journal, solution):
        return lift_solution_fes(journal, solution)


class VCKernelizer(_Kernelizer):
    """Twin-removal kernel with respect to a vertex cover.

    Parameters
    ----------
    cover : sequence of int or None
        Vertex cover to use; a greedy matching cover when ``None``.
    size_guard : bool
        Leave instances that already meet the size bound untouched.
    """

    def __init__(self, cover=None, size_guard=False):
        self.cover = cover
        self.size_guard = size_guard

    def _kernelize(self, instance):
        return kernelize_vc(instance, self.cover, size_guard=self.size_guard)

    def _lift(self, journal, solution):
        return lift_solution_vc(journal, solution)


class KernelizedSolver(BaseEstimator):
    """Kernelize, solve the kernel, lift the result.

    ``kernelizer`` and ``solver`` are cloned before use.
    """

    def __init__(self, kernelizer=None, solver=None):
        self.kernelizer = kernelizer
        self.solver = solver

    def fit(self, X, y=None):
        instance = check_instance(X)
        self.kernelizer_ = clone(self.kernelizer) if self.kernelizer is not None else FESKernelizer()
        self.solver_ = clone(self.solver) if self.solver is not None else MinPACSolver()
        kernel = self.kernelizer_.fit(instance).transform(instance)
        self.kernel_solution_ = self.solver_.fit(kernel).solution_
        self.solution_ = self.kernelizer_.inverse_transform(self.kernel_solution_)
        self.cost_ = self.solution_.cost
        return self

    def predict(self, X):
        return self.fit(X).solution_

    def fit_predict(self, X, y=None):
        return self.fit(X).solution_


__all__ = [
    "FESKernelizer",
    "KernelizedSolver",
    "MinPACSolver",
    "VCKernelizer",
    "check_instance",
    "check_solution",
]
