"""
Zero certificates and the Boolean-inflation shortcut.

zero_test covers the principal case σ = 1; sigma_zero_test covers general σ with the two
rules that stay sound there. Rules run cheapest first. A missing certificate says nothing
about μ.
"""
from typing import Iterator, List, Optional, Sequence, Tuple

from src.perm_core import (
    Permutation,
    adjacency_report,
    apply_symmetry,
    contains,
    direct_sum,
    format_permutation,
    interval_copies,
    long_corner,
    make,
    orbit,
    parse_permutation,
    skew_components,
    skew_sum,
    standardize,
    sum_components,
    SYMMETRY_NAMES,
)
from src.schemas import ZeroCertificate

NAMED_ANNIHILATORS = tuple(parse_permutation(t) for t in ("215463", "236145", "214653"))
ANNIHILATOR_PAIRS = tuple(
    (parse_permutation(a), parse_permutation(b))
    for a, b in (("213", "2431"), ("2143", "2431"), ("312", "23514"), ("25134", "23514"))
)
BOOLEAN_PARTS = {(1,), (1, 2), (2, 1)}

_NAMED_IMAGES = sorted({img for base in NAMED_ANNIHILATORS for img in orbit(base)})
_PAIR_IMAGES = sorted(
    {(apply_symmetry(s, a), apply_symmetry(s, b)) for a, b in ANNIHILATOR_PAIRS for s in SYMMETRY_NAMES}
)
_SYM_1243 = orbit(parse_permutation("1243"))


def _fold(parts: Sequence[Permutation], kind: str) -> Permutation:
    combine = direct_sum if kind == "direct" else skew_sum
    out = make(())
    for part in parts:
        out = combine(out, part)
    return out


def _longest_monotone(p: Sequence[int]) -> Tuple[int, int]:
    """(1-based start, length) of the first longest run of consecutive +1 or -1 steps."""
    best_start, best_len = 1, 1 if p else 0
    start, length, direction = 0, 1, 0
    for i in range(len(p) - 1):
        step = p[i + 1] - p[i]
        if step in (1, -1) and step == direction:
            length += 1
        elif step in (1, -1):
            start, length, direction = i, 2, step
        else:
            start, length, direction = i + 1, 1, 0
        if length > best_len:
            best_start, best_len = start + 1, length
    return best_start, best_len


def interval_windows(p: Sequence[int], min_length: int = 2) -> Iterator[Tuple[int, int]]:
    """Every (0-based start, length) window with contiguous values, the whole of p included."""
    n = len(p)
    for start in range(n):
        lo = hi = p[start]
        for end in range(start + 1, n):
            lo = min(lo, p[end])
            hi = max(hi, p[end])
            length = end - start + 1
            if length >= min_length and hi - lo == length - 1:
                yield start, length


def singleton_splits(w: Sequence[int], kind: str) -> List[Tuple[Permutation, Permutation]]:
    """Every way to read w as α⊕1⊕β (or α⊖1⊖β) with α, β non-empty."""
    comps = sum_components(w) if kind == "direct" else skew_components(w)
    return [
        (_fold(comps[:idx], kind), _fold(comps[idx + 1 :], kind))
        for idx in range(1, len(comps) - 1)
        if len(comps[idx]) == 1
    ]


def _disjoint(start_a: int, len_a: int, start_b: int, len_b: int) -> bool:
    return start_a + len_a <= start_b or start_b + len_b <= start_a


# --- Principal zero test ---

def _cheap_rules(p: Permutation) -> Optional[ZeroCertificate]:
    corner = long_corner(p)
    if corner is not None:
        return ZeroCertificate(rule="long_corner", witness={"template": corner})
    start, length = _longest_monotone(p)
    if length == 3:
        return ZeroCertificate(rule="triple_adjacency", witness={"start": start, "length": length})
    if length >= 4:
        return ZeroCertificate(rule="monotone_interval", witness={"start": start, "length": length})
    report = adjacency_report(p)
    if report.has_opposing:
        return ZeroCertificate(
            rule="opposing_adjacencies",
            witness={"up": report.up_positions[0], "down": report.down_positions[0]},
        )
    return None


def _sum_plus_one(p: Permutation) -> Optional[ZeroCertificate]:
    for start, length in interval_windows(p, min_length=3):
        window = standardize(p[start : start + length])
        for kind in ("direct", "skew"):
            splits = singleton_splits(window, kind)
            if splits:
                alpha, beta = splits[0]
                return ZeroCertificate(
                    rule="sum_plus_one_annihilator",
                    witness={
                        "start": start + 1,
                        "length": length,
                        "kind": kind,
                        "alpha": format_permutation(alpha),
                        "beta": format_permutation(beta),
                    },
                )
    return None


def _named(p: Permutation) -> Optional[ZeroCertificate]:
    for image in _NAMED_IMAGES:
        starts = interval_copies(image, p)
        if starts:
            return ZeroCertificate(
                rule="named_annihilator",
                witness={"annihilator": format_permutation(image), "start": starts[0]},
            )
    return None


def _pairs(p: Permutation) -> Optional[ZeroCertificate]:
    for first, second in _PAIR_IMAGES:
        if len(first) + len(second) > len(p):
            continue
        first_starts = interval_copies(first, p)
        if not first_starts:
            continue
        for s2 in interval_copies(second, p):
            for s1 in first_starts:
                if _disjoint(s1, len(first), s2, len(second)):
                    return ZeroCertificate(
                        rule="annihilator_pair",
                        witness={
                            "first": format_permutation(first),
                            "first_start": s1,
                            "second": format_permutation(second),
                            "second_start": s2,
                        },
                    )
    return None


def zero_test(p: Sequence[int]) -> Optional[ZeroCertificate]:
    """First rule proving μ[1, p] = 0, or None."""
    perm = make(p)
    if len(perm) == 0:
        raise ValueError("zero_test needs a non-empty permutation")
    for rule in (_cheap_rules, _sum_plus_one, _named, _pairs):
        cert = rule(perm)
        if cert is not None:
            return cert
    return None


# --- Zero test for general lower bounds ---

def _sigma_has_split_below(sigma: Permutation, alpha: Permutation, beta: Permutation, kind: str) -> bool:
    """True iff some interval window of sigma is γ⊕δ (γ⊖δ for skew) with 1 <= γ <= α, 1 <= δ <= β."""
    for start, length in interval_windows(sigma):
        window = standardize(sigma[start : start + length])
        for cut in range(1, length):
            gamma, delta = window[:cut], window[cut:]
            if kind == "direct" and max(gamma) != cut:
                continue
            if kind == "skew" and min(gamma) != length - cut + 1:
                continue
            if contains(standardize(gamma), alpha) and contains(standardize(delta), beta):
                return True
    return False


def sigma_zero_test(sigma: Sequence[int], p: Sequence[int]) -> Optional[ZeroCertificate]:
    lo, hi = make(sigma), make(p)
    if len(lo) == 0:
        return None
    for start, length in interval_windows(hi, min_length=3):
        window = standardize(hi[start : start + length])
        for kind in ("direct", "skew"):
            for alpha, beta in singleton_splits(window, kind):
                if not _sigma_has_split_below(lo, alpha, beta, kind):
                    return ZeroCertificate(
                        rule="sigma_annihilator",
                        witness={
                            "start": start + 1,
                            "length": length,
                            "kind": kind,
                            "alpha": format_permutation(alpha),
                            "beta": format_permutation(beta),
                        },
                    )
    if adjacency_report(lo).adjacency_free:
        for image in _SYM_1243:
            starts = interval_copies(image, hi)
            if starts:
                return ZeroCertificate(
                    rule="symmetry_1243_interval",
                    witness={"pattern": format_permutation(image), "start": starts[0]},
                )
    return None


# --- Certificate re-verification ---

def verify_certificate(p: Sequence[int], cert: ZeroCertificate, sigma: Optional[Sequence[int]] = None) -> bool:
    """Re-check a certificate's witness against p with the perm_core detectors."""
    perm = make(p)
    w = cert.witness
    if cert.rule == "long_corner":
        return long_corner(perm) == w.get("template")
    if cert.rule in ("triple_adjacency", "monotone_interval"):
        start, length = w["start"] - 1, w["length"]
        run = perm[start : start + length]
        steps = {run[i + 1] - run[i] for i in range(len(run) - 1)}
        return len(run) == length and steps in ({1}, {-1}) and (length == 3) == (cert.rule == "triple_adjacency")
    if cert.rule == "opposing_adjacencies":
        up, down = w["up"] - 1, w["down"] - 1
        return perm[up + 1] - perm[up] == 1 and perm[down + 1] - perm[down] == -1
    if cert.rule in ("sum_plus_one_annihilator", "sigma_annihilator"):
        start, length = w["start"] - 1, w["length"]
        raw = perm[start : start + length]
        if len(raw) != length or max(raw) - min(raw) != length - 1:
            return False
        window = standardize(raw)
        alpha, beta = parse_permutation(w["alpha"]), parse_permutation(w["beta"])
        combine = direct_sum if w["kind"] == "direct" else skew_sum
        if tuple(window) != tuple(combine(combine(alpha, (1,)), beta)):
            return False
        if cert.rule == "sigma_annihilator":
            return sigma is not None and not _sigma_has_split_below(make(sigma), alpha, beta, w["kind"])
        return True
    if cert.rule == "named_annihilator":
        image = parse_permutation(w["annihilator"])
        return image in _NAMED_IMAGES and w["start"] in interval_copies(image, perm)
    if cert.rule == "annihilator_pair":
        first, second = parse_permutation(w["first"]), parse_permutation(w["second"])
        return (
            (first, second) in _PAIR_IMAGES
            and w["first_start"] in interval_copies(first, perm)
            and w["second_start"] in interval_copies(second, perm)
            and _disjoint(w["first_start"], len(first), w["second_start"], len(second))
        )
    if cert.rule == "symmetry_1243_interval":
        image = parse_permutation(w["pattern"])
        return (
            sigma is not None
            and adjacency_report(make(sigma)).adjacency_free
            and image in _SYM_1243
            and w["start"] in interval_copies(image, perm)
        )
    return False


# --- Boolean inflations ---

def boolean_inflation_mobius(sigma: Sequence[int], parts: Sequence[Sequence[int]]) -> int:
    """μ[σ, inflate(σ, parts)] for adjacency-free σ and parts in {1, 12, 21}, not all 1."""
    lo = make(sigma)
    if len(parts) != len(lo):
        raise ValueError(f"expected {len(lo)} parts, got {len(parts)}")
    if not adjacency_report(lo).adjacency_free:
        raise ValueError(f"{format_permutation(lo)} has an adjacency; the Boolean-inflation rule needs none")
    if any(tuple(part) not in BOOLEAN_PARTS for part in parts):
        raise ValueError("every part must be one of 1, 12, 21")
    if all(len(part) == 1 for part in parts):
        raise ValueError("at least one part must be 12 or 21")
    extra = sum(len(part) for part in parts) - len(lo)
    return -1 if extra % 2 else 1


def boolean_inflation_parts(sigma: Sequence[int], p: Sequence[int]) -> Optional[List[Permutation]]:
    """Parts in {1, 12, 21} with p = inflate(σ, parts), if σ is adjacency-free and such parts exist."""
    lo, hi = make(sigma), make(p)
    if len(hi) <= len(lo) or len(hi) > 2 * len(lo):
        return None
    if not adjacency_report(lo).adjacency_free:
        return None
    parts: List[Permutation] = []
    heads: List[int] = []
    i = 0
    while i < len(hi):
        if i + 1 < len(hi) and abs(hi[i + 1] - hi[i]) == 1:
            if i + 2 < len(hi) and abs(hi[i + 2] - hi[i + 1]) == 1:
                return None
            parts.append(make((1, 2)) if hi[i + 1] > hi[i] else make((2, 1)))
            heads.append(hi[i])
            i += 2
        else:
            parts.append(make((1,)))
            heads.append(hi[i])
            i += 1
    if tuple(standardize(heads)) != tuple(lo):
        return None
    return parts
