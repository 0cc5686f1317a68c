"""
Front door for μ[σ, π]: try every theorem-backed shortcut before the recursive oracle.

Inner values requested by a shortcut come back through the same dispatcher, so family
rules apply at every level of a recursion. The top-level rule is reported as the method.
"""
from typing import Optional, Sequence, Tuple, Union

from src import config
from src.balloons import as_wedge, balloon_2413_mobius, is_2413_balloon, wedge_mobius
from src.contributing import contributing_set
from src.decomposable import bjjs_decomposable
from src.families import increasing_oscillation, recognize_oscillation
from src.mobius_engines import MemoStore, empty_lower_value, make_result, mobius_recursive, run_engine
from src.oscillation import SHAPE_OF_TYPE, inc_osc_mobius, shape_contains, sigma_shape
from src.perm_core import Permutation, contains, make, reverse, sum_components
from src.schemas import MobiusResult, OscillationDescriptor
from src.zeros import boolean_inflation_mobius, boolean_inflation_parts, sigma_zero_test, zero_test

Operand = Union[Sequence[int], OscillationDescriptor]
METHODS = ("auto",) + config.ENGINES

ONE = make((1,))


def _materialize(x: Operand) -> Permutation:
    if isinstance(x, OscillationDescriptor):
        return increasing_oscillation(x)
    return make(x)


class MobiusDispatcher:
    def __init__(self, memo: Optional[MemoStore] = None) -> None:
        self.memo = memo if memo is not None else MemoStore()
        self.calls = 0

    def compute(self, sigma: Operand, pi: Operand, method: str = "auto") -> MobiusResult:
        if method not in METHODS:
            raise ValueError(f"Unknown method {method!r}; expected one of {', '.join(METHODS)}")
        if method != "auto":
            return run_engine(method, _materialize(sigma), _materialize(pi), self.memo)
        calls_before, hits_before = self.calls, self.memo.hits
        if isinstance(pi, OscillationDescriptor):
            value, rule = self._descriptor(sigma, pi)
        else:
            value, rule = self._solve(_materialize(sigma), make(pi))
        return make_result(
            value,
            rule,
            {"dispatch_calls": self.calls - calls_before, "memo_hits": self.memo.hits - hits_before},
        )

    def value(self, lower: Sequence[int], upper: Sequence[int]) -> int:
        """Callback handed to the fast paths for their inner values."""
        return self._solve(make(lower), make(upper))[0]

    def _descriptor(self, sigma: Operand, pi: OscillationDescriptor) -> Tuple[int, str]:
        self.calls += 1
        if not isinstance(sigma, OscillationDescriptor):
            lo = make(sigma)
            if len(lo) == 0:
                return (-1 if pi.n == 1 else 0), "empty_lower"
            if len(sum_components(lo)) > 1:
                # decomposable lower bounds need the permutation itself
                return self._solve(lo, increasing_oscillation(pi))
        sig = sigma_shape(sigma)
        if sig is None or not shape_contains(sig, (SHAPE_OF_TYPE[pi.shape], pi.n)):
            return 0, "not_contained"
        if pi.n < 4:
            return self._solve(_materialize(sigma), increasing_oscillation(pi))
        return inc_osc_mobius(sigma, pi), "inc_osc"

    def _solve(self, lo: Permutation, hi: Permutation) -> Tuple[int, str]:
        self.calls += 1
        if lo == hi:
            return 1, "equal"
        if len(lo) == 0:
            return empty_lower_value(hi), "empty_lower"
        if not contains(lo, hi):
            return 0, "not_contained"
        if len(hi) == len(lo) + 1:
            return -1, "cover"
        cached = self.memo.get(lo, hi)
        if cached is not None:
            return cached, "memo"
        value, rule = self._rules(lo, hi)
        self.memo.put(lo, hi, value)
        return value, rule

    def _rules(self, lo: Permutation, hi: Permutation) -> Tuple[int, str]:
        indecomposable = len(sum_components(lo)) == 1

        cert = zero_test(hi) if lo == ONE else sigma_zero_test(lo, hi)
        if cert is not None:
            return 0, cert.rule

        if indecomposable and len(hi) >= 4:
            d = recognize_oscillation(hi)
            if d is not None:
                return inc_osc_mobius(lo, d), "inc_osc"

        if lo == ONE:
            beta = is_2413_balloon(hi)
            if beta is not None:
                return balloon_2413_mobius(beta, self.value), "balloon_2413"

        parts = boolean_inflation_parts(lo, hi)
        if parts is not None:
            return boolean_inflation_mobius(lo, parts), "boolean_inflation"

        if lo == ONE:
            spec = as_wedge(hi)
            if spec is not None and len(spec.alpha) <= config.reduction_cap():
                return wedge_mobius(spec, self.value), "wedge"

        value = bjjs_decomposable(lo, hi, self.value)
        if value is not None:
            return value, "bjjs"

        if len(hi) > 3:
            if indecomposable:
                return contributing_set(lo, hi, self.value).value, "contributing_set"
            # a sum-decomposable σ is skew indecomposable, and reversal swaps the two
            return contributing_set(reverse(lo), reverse(hi), self.value).value, "contributing_set"

        return mobius_recursive(lo, hi, self.memo).value, "recursive"


def compute(sigma: Operand, pi: Operand, method: str = "auto", memo: Optional[MemoStore] = None) -> MobiusResult:
    return MobiusDispatcher(memo).compute(sigma, pi, method)
