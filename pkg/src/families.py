"""
Named permutation families: increasing oscillations, balloons, wedges, the π⁽ⁿ⁾ sequence,
κ_n, wedge simples, nearly exceptional simples and parallel alternations.

Oscillations stay symbolic (OscillationDescriptor) until someone asks for the values;
materializing W_n or M_n is a linear fold.
"""
from typing import Callable, List, Optional, Sequence, Union

from src import config
from src.errors import SizeGuardError
from src.perm_core import Permutation, make, parse_permutation
from src.schemas import BalloonSpec, OscillationDescriptor, WedgeSpec

FAMILY_NAMES = ("wosc", "mosc", "balloon2413", "balloon", "wedge", "pi", "kappa", "w1", "w2", "e1", "e2", "o", "paralt")


# --- Increasing oscillations ---

def oscillation_blocks(d: OscillationDescriptor) -> List[int]:
    """Block lengths (2 for 21, 1 for 1) folded left to right by interleave."""
    m, odd = divmod(d.n, 2)
    if d.shape == "W":
        return [2] * m + ([1] if odd else [])
    if odd:
        return [1] + [2] * m
    return [1] + [2] * (m - 1) + [1]


def increasing_oscillation(d: OscillationDescriptor) -> Permutation:
    cap = config.oscillation_cap()
    if d.n > cap:
        raise SizeGuardError(f"Refusing to materialize an oscillation of length {d.n} (PERMMOB_OSC_CAP={cap})")
    blocks = oscillation_blocks(d)
    out: List[int] = [2, 1] if blocks[0] == 2 else [1]
    pos_of_max = 0
    for block in blocks[1:]:
        size = len(out)
        if block == 2:
            out.extend((size + 2, size + 1))
            out[pos_of_max] = size + 1
            out[size + 1] = size
            pos_of_max = size
        else:
            out.append(size + 1)
            out[pos_of_max] = size + 1
            out[size] = size
    return make(out)


def wosc(n: int) -> Permutation:
    return increasing_oscillation(OscillationDescriptor(shape="W", n=n))


def mosc(n: int) -> Permutation:
    return increasing_oscillation(OscillationDescriptor(shape="M", n=n))


def recognize_oscillation(p: Sequence[int]) -> Optional[OscillationDescriptor]:
    """Descriptor whose materialization equals p, W preferred when both match."""
    n = len(p)
    if n == 0 or n > config.oscillation_cap():
        return None
    for shape in ("W", "M"):
        d = OscillationDescriptor(shape=shape, n=n)
        if tuple(increasing_oscillation(d)) == tuple(p):
            return d
    return None


# --- Balloons and wedges ---

def balloon(spec: BalloonSpec) -> Permutation:
    alpha, beta, i, j = spec.alpha, spec.beta, spec.i, spec.j
    b = len(beta)

    def lift(v: int) -> int:
        return v if v <= j else v + b

    out = [lift(v) for v in alpha[:i]]
    out.extend(v + j for v in beta)
    out.extend(lift(v) for v in alpha[i:])
    return make(out)


def balloon_2413(beta: Sequence[int]) -> Permutation:
    if len(beta) == 0:
        raise ValueError("a 2413-balloon needs a non-empty beta")
    return balloon(BalloonSpec(alpha=make((2, 4, 1, 3)), beta=make(beta), i=2, j=2))


def wedge(spec: WedgeSpec) -> Permutation:
    return balloon(spec.as_balloon())


def pi_sequence(n: int) -> Permutation:
    """1, 12, 132, 2413 for n <= 4; above that, the 2413-balloon of the term four back."""
    if n < 1:
        raise ValueError(f"pi_sequence needs n >= 1, got {n}")
    bases = {1: (1,), 2: (1, 2), 3: (1, 3, 2), 0: (2, 4, 1, 3)}
    depth, rem = divmod(n - 1, 4)
    p = make(bases[(rem + 1) % 4])
    for _ in range(depth):
        p = balloon_2413(p)
    return p


def kappa(n: int) -> Permutation:
    if n < 2:
        raise ValueError(f"kappa needs n >= 2, got {n}")
    head = list(range(n + 1, 3 * n, 2))
    middle: List[int] = []
    for i in range(1, n + 1):
        middle.extend((i, 3 * n + i))
    tail = list(range(n + 2, 3 * n + 1, 2))
    return make(head + middle + tail)


# --- Named simple families ---

def wedge_simple(kind: int, n: int) -> Permutation:
    """Type 1 or type 2 wedge simple of length n > 3."""
    if n <= 3:
        raise ValueError(f"wedge simples need n > 3, got {n}")
    if kind == 1:
        if n % 2 == 0:
            return make(list(range(3, n, 2)) + [1, n] + list(range(n - 2, 1, -2)))
        return make(list(range(3, n + 1, 2)) + [1] + list(range(n - 1, 1, -2)))
    if kind == 2:
        if n % 2 == 0:
            return make(list(range(2, n - 1, 2)) + [n] + list(range(n - 3, 0, -2)) + [n - 1])
        return make(list(range(2, n - 2, 2)) + [n] + list(range(n - 2, 0, -2)) + [n - 1])
    raise ValueError(f"wedge simple type must be 1 or 2, got {kind}")


def _half(length: int, kind: str) -> int:
    if length % 2:
        raise ValueError(f"{kind} needs an even length, got {length}")
    return length // 2


def e1(length: int, k: int) -> Permutation:
    n = _half(length, "E1")
    if not 1 <= k <= n - 2:
        raise ValueError(f"E1({length}, k) needs 1 <= k <= {n - 2}, got k={k}")
    out: List[int] = []
    for i in range(1, k + 1):
        out.extend((n + i, i))
    for top, bottom in zip(range(n + k + 1, 2 * n + 1), range(n, k, -1)):
        out.extend((top, bottom))
    return make(out)


def e2(length: int) -> Permutation:
    n = _half(length, "E2")
    if n < 3:
        raise ValueError(f"E2 needs length >= 6, got {length}")
    out: List[int] = []
    for i in range(1, n - 1):
        out.extend((n + i - 1, i))
    out.extend((2 * n - 2, 2 * n, n - 1, 2 * n - 1))
    return make(out)


def odd_exceptional(length: int, k: int) -> Permutation:
    """O(2n+1, k)."""
    if length % 2 == 0:
        raise ValueError(f"O needs an odd length, got {length}")
    n = length // 2
    if not 1 <= k <= n - 1:
        raise ValueError(f"O({length}, k) needs 1 <= k <= {n - 1}, got k={k}")
    out: List[int] = []
    for i in range(1, k + 1):
        out.extend((n - k + i, 2 * n + 2 - i))
    out.append(n + 1)
    for j in range(1, n - k + 1):
        out.extend((n - k - j + 1, n + 1 + j))
    return make(out)


def nearly_exceptional(kind: str, length: int, k: int = 0) -> Permutation:
    kind = kind.upper()
    if kind == "E1":
        return e1(length, k)
    if kind == "E2":
        return e2(length)
    if kind == "O":
        return odd_exceptional(length, k)
    raise ValueError(f"nearly exceptional kind must be E1, E2 or O, got {kind!r}")


def parallel_alternation(n: int) -> Permutation:
    if n < 4 or n % 2:
        raise ValueError(f"simple parallel alternations need an even n >= 4, got {n}")
    return make(list(range(2, n + 1, 2)) + list(range(1, n, 2)))


# --- CLI-facing lookup ---

Family = Union[Permutation, OscillationDescriptor]


def _ints(args: Sequence[str], count: int, name: str) -> List[int]:
    if len(args) != count:
        raise ValueError(f"family {name} takes {count} integer parameter(s), got {len(args)}")
    try:
        return [int(a) for a in args]
    except ValueError:
        raise ValueError(f"family {name} parameters must be integers, got {list(args)}") from None


def build_family(name: str, args: Sequence[str]) -> Family:
    """Resolve a family name and its text parameters; oscillations stay symbolic."""
    builders: dict[str, Callable[[Sequence[str]], Family]] = {
        "wosc": lambda a: OscillationDescriptor(shape="W", n=_ints(a, 1, "wosc")[0]),
        "mosc": lambda a: OscillationDescriptor(shape="M", n=_ints(a, 1, "mosc")[0]),
        "balloon2413": lambda a: balloon_2413(parse_permutation(a[0])),
        "balloon": lambda a: balloon(
            BalloonSpec(alpha=parse_permutation(a[0]), beta=parse_permutation(a[1]), i=int(a[2]), j=int(a[3]))
        ),
        "wedge": lambda a: wedge(WedgeSpec(alpha=parse_permutation(a[0]), beta=parse_permutation(a[1]), k=int(a[2]))),
        "pi": lambda a: pi_sequence(*_ints(a, 1, "pi")),
        "kappa": lambda a: kappa(*_ints(a, 1, "kappa")),
        "w1": lambda a: wedge_simple(1, *_ints(a, 1, "w1")),
        "w2": lambda a: wedge_simple(2, *_ints(a, 1, "w2")),
        "e1": lambda a: e1(*_ints(a, 2, "e1")),
        "e2": lambda a: e2(*_ints(a, 1, "e2")),
        "o": lambda a: odd_exceptional(*_ints(a, 2, "o")),
        "paralt": lambda a: parallel_alternation(*_ints(a, 1, "paralt")),
    }
    if name not in builders:
        raise ValueError(f"Unknown family {name!r}; expected one of {', '.join(FAMILY_NAMES)}")
    arity = {"balloon2413": 1, "balloon": 4, "wedge": 3}
    if name in arity and len(args) != arity[name]:
        raise ValueError(f"family {name} takes {arity[name]} parameter(s), got {len(args)}")
    return builders[name](args)
