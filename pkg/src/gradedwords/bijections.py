"""Constructive bijections between word classes.

Two constructions:

* The weight-shift map: a bijection from class(P, n, r=p) to
  class(P, n, r=p+1), for p >= n.z and P = p + q + n.z with q >= 1.  A word
  w splits at its weight-p prefix as w = u'.x.y.v' where x is a suffix of u
  (possibly empty) and y a nonempty prefix of v with ||x|| = ||y|| - 1,
  chosen of minimal length; the image is w' = u'.rev(y).rev(x).v'.  The
  minimal pair is unique because prefix and suffix weights are strictly
  increasing, which also gives the inverse: the mirrored search on the
  weight-(p+1) cut swaps the pair back.

* The overshoot factorization: split w in class(P, n) at the unique minimal
  prefix u with ||u|| >= p.  Either ||u|| = p exactly (w has a weight-p
  prefix) or u overshoots to p + j through its final letter, which must be
  some b_i with 1 <= j <= z_i.  Both cases invert, which decomposes the
  whole class as the weight-p prefix subclass plus a disjoint union of
  products of smaller classes.

All searches run in one pass over the strictly increasing prefix/suffix
weight sequences.  The module-level verify_* functions replay a construction
over an entire class by enumeration and report the tallies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .arith import MultiIndex, dot, multinomial, norm, unit, vec_sub, box
from .errors import LemmaViolationError, PreconditionError
from .reports import VERDICT_FAIL, VERDICT_PASS, EvalReport
from .words import GradedAlphabet, Word, _iter_class, count_prefix_class, count_words

__all__ = [
    "BalancedPair",
    "PrefixCase",
    "Overshoot",
    "RaneyFactorization",
    "find_equal_prefixes",
    "find_balanced_pair",
    "shift_up",
    "shift_down",
    "shift_by",
    "raney_factorize",
    "raney_unfactorize",
    "verify_shift_bijection",
    "verify_raney_decomposition",
]


@dataclass(frozen=True)
class BalancedPair:
    """The minimal (suffix x of u, prefix y of v) with ||x|| = ||y|| - 1.

    u_cut is the length of u minus |x| (where x starts in u), v_cut the
    length of y.  x may be empty; y never is.
    """

    x: Word
    y: Word
    u_cut: int
    v_cut: int


@dataclass(frozen=True)
class PrefixCase:
    """Factorization w = u.v with ||u|| hitting the target weight exactly."""

    u: Word
    v: Word


@dataclass(frozen=True)
class Overshoot:
    """Factorization w = u_prime . b_i . v where the minimal prefix of
    weight >= p overshoots to p + j, 1 <= j <= z_i."""

    i: int
    j: int
    u_prime: Word
    v: Word


RaneyFactorization = Union[PrefixCase, Overshoot]


# ---------------------------------------------------------------------------
# tuple-level core (hot path for whole-class verification)
# ---------------------------------------------------------------------------


def _prefix_cut(lw: tuple[int, ...], letters: tuple[int, ...], target: int) -> Optional[int]:
    """Length of the prefix of weight target, or None.  target 0 cuts at 0."""
    if target == 0:
        return 0
    acc = 0
    for i, c in enumerate(letters):
        acc += lw[c]
        if acc == target:
            return i + 1
        if acc > target:
            return None
    return None


def _prefix_weight_table(lw: tuple[int, ...], letters: tuple[int, ...]) -> dict[int, int]:
    """Map weight -> prefix length, over nonempty prefixes."""
    out: dict[int, int] = {}
    acc = 0
    for i, c in enumerate(letters):
        acc += lw[c]
        out[acc] = i + 1
    return out


def _balanced_cut(
    lw: tuple[int, ...], u: tuple[int, ...], v: tuple[int, ...]
) -> tuple[int, int]:
    """Lengths (|x|, |y|) of the minimal suffix x of u and prefix y of v
    with ||x|| + 1 = ||y||.  Walks suffix weights of u in increasing order.
    """
    pw = _prefix_weight_table(lw, v)
    t = 0
    a = 0
    while True:
        y_len = pw.get(t + 1)
        if y_len is not None:
            return a, y_len
        if a == len(u):
            raise LemmaViolationError(
                f"no balanced pair for u={u!r}, v={v!r}: this contradicts the "
                "prefix-weight pigeonhole and would be a counterexample"
            )
        a += 1
        t += lw[u[len(u) - a]]


def _shift_up(lw: tuple[int, ...], letters: tuple[int, ...], p: int) -> tuple[int, ...]:
    cut = _prefix_cut(lw, letters, p)
    if cut is None:
        raise PreconditionError(f"word has no prefix of weight {p}")
    u, v = letters[:cut], letters[cut:]
    x_len, y_len = _balanced_cut(lw, u, v)
    split = len(u) - x_len
    return u[:split] + v[:y_len][::-1] + u[split:][::-1] + v[y_len:]


def _shift_down(lw: tuple[int, ...], letters: tuple[int, ...], p: int) -> tuple[int, ...]:
    cut = _prefix_cut(lw, letters, p + 1)
    if cut is None:
        raise PreconditionError(f"word has no prefix of weight {p + 1}")
    big_u, big_v = letters[:cut], letters[cut:]
    # mirrored search: minimal (prefix xbar of V, suffix ybar of U) with
    # ||xbar|| + 1 = ||ybar||
    sw: dict[int, int] = {}
    acc = 0
    for a in range(1, len(big_u) + 1):
        acc += lw[big_u[len(big_u) - a]]
        sw[acc] = a
    s = 0
    b = 0
    while True:
        y_len = sw.get(s + 1)
        if y_len is not None:
            x_len = b
            break
        if b == len(big_v):
            raise LemmaViolationError(
                f"no balanced pair for the inverse shift on {letters!r} at p={p}"
            )
        b += 1
        s += lw[big_v[b - 1]]
    split = len(big_u) - y_len
    return (
        big_u[:split]
        + big_v[:x_len][::-1]
        + big_u[split:][::-1]
        + big_v[x_len:]
    )


def _raney_cut(lw: tuple[int, ...], letters: tuple[int, ...], p: int) -> tuple[int, int]:
    """(cut length, achieved weight) of the minimal prefix of weight >= p."""
    acc = 0
    if acc >= p:
        return 0, 0
    for i, c in enumerate(letters):
        acc += lw[c]
        if acc >= p:
            return i + 1, acc
    raise PreconditionError(f"word weight {acc} is below the split target {p}")


# ---------------------------------------------------------------------------
# public word-level operations
# ---------------------------------------------------------------------------


def _class_params(w: Word, p: int) -> tuple[MultiIndex, int, int]:
    """(n, n.z, q) of the class w lives in relative to the split weight p."""
    n = w.counts
    nz = dot(n, w.alphabet.z)
    q = w.weight - p - nz
    return n, nz, q


def find_equal_prefixes(u: Word, v: Word, n: MultiIndex) -> tuple[Word, Word]:
    """Nonempty prefixes x of u and y of v with ||x|| = ||y||, minimal.

    Requires ||u||, ||v|| >= n.z + 1 where n counts the b letters of u.v;
    under that bound the two prefix-weight sequences cannot avoid each other
    (each b_i skips at most z_i values, and the skips of u and v together
    miss at most n.z of the n.z + 1 values available to both words).
    """
    if u.alphabet != v.alphabet:
        raise PreconditionError("u and v must share an alphabet")
    if (u + v).counts != tuple(n):
        raise PreconditionError(
            f"n must equal the letter counts of u.v, got {n} vs {(u + v).counts}"
        )
    bound = dot(n, u.alphabet.z) + 1
    if u.weight < bound or v.weight < bound:
        raise PreconditionError(
            f"requires ||u|| >= n.z + 1 and ||v|| >= n.z + 1 (= {bound})"
        )
    pu = u.prefix_weight_list()
    pv = v.prefix_weight_list()
    i = j = 0
    while i < len(pu) and j < len(pv):
        if pu[i] == pv[j]:
            return u.prefix(i + 1), v.prefix(j + 1)
        if pu[i] < pv[j]:
            i += 1
        else:
            j += 1
    raise LemmaViolationError(
        f"no equal-weight prefixes for u={u}, v={v}: counterexample to the "
        "prefix-weight pigeonhole"
    )


def find_balanced_pair(u: Word, v: Word) -> BalancedPair:
    """The unique minimal (suffix x of u, prefix y of v) with ||x|| = ||y|| - 1.

    Equivalently: the smallest t >= 0 that is a suffix weight of u (0 for the
    empty suffix) such that t + 1 is a prefix weight of v.  Requires
    ||u|| >= n.z and ||v|| >= n.z + 1 for n the letter counts of u.v, which
    guarantees existence.
    """
    if u.alphabet != v.alphabet:
        raise PreconditionError("u and v must share an alphabet")
    n = (u + v).counts
    nz = dot(n, u.alphabet.z)
    if u.weight < nz or v.weight < nz + 1:
        raise PreconditionError(
            f"requires ||u|| >= n.z and ||v|| >= n.z + 1 (n.z = {nz})"
        )
    lw = u.alphabet.letter_weights()
    x_len, y_len = _balanced_cut(lw, u.letters, v.letters)
    return BalancedPair(
        x=u.suffix(x_len), y=v.prefix(y_len), u_cut=len(u) - x_len, v_cut=y_len
    )


def _check_shift_preconditions(w: Word, p: int, r: int = 1) -> None:
    n, nz, q = _class_params(w, p)
    if p < nz:
        raise PreconditionError(f"requires p >= n.z (p={p}, n.z={nz})")
    if q < r:
        raise PreconditionError(
            f"requires q >= r >= 1 (q={q}, r={r}); q is the word weight minus p + n.z"
        )


def shift_up(w: Word, p: int) -> Word:
    """Send a word with a weight-p prefix to one with a weight-(p+1) prefix,
    preserving weight and letter counts.  Bijective on the prefix class."""
    _check_shift_preconditions(w, p)
    if not w.has_prefix_of_weight(p):
        raise PreconditionError(f"word {w} has no prefix of weight {p}")
    lw = w.alphabet.letter_weights()
    return Word(w.alphabet, _shift_up(lw, w.letters, p))


def shift_down(w: Word, p: int) -> Word:
    """Inverse of shift_up(., p): takes the word with a weight-(p+1) prefix
    back to the unique preimage with a weight-p prefix."""
    _check_shift_preconditions(w, p)
    if not w.has_prefix_of_weight(p + 1):
        raise PreconditionError(f"word {w} has no prefix of weight {p + 1}")
    lw = w.alphabet.letter_weights()
    return Word(w.alphabet, _shift_down(lw, w.letters, p))


def shift_by(w: Word, p: int, r: int) -> Word:
    """r-fold composition of unit shifts: prefix weight p to prefix weight
    p + r.  Requires q >= r >= 1."""
    if r < 1:
        raise PreconditionError(f"requires r >= 1, got {r}")
    _check_shift_preconditions(w, p, r)
    if not w.has_prefix_of_weight(p):
        raise PreconditionError(f"word {w} has no prefix of weight {p}")
    lw = w.alphabet.letter_weights()
    letters = w.letters
    for step in range(r):
        letters = _shift_up(lw, letters, p + step)
    return Word(w.alphabet, letters)


def raney_factorize(w: Word, p: int) -> RaneyFactorization:
    """Split w at the minimal prefix u with ||u|| >= p.

    PrefixCase(u, v) when ||u|| = p; otherwise the prefix overshoots through
    its final letter b_i by j = ||u|| - p with 1 <= j <= z_i, giving
    Overshoot(i, j, u_prime, v) where u = u_prime . b_i.  Requires every
    z_i >= 1, p >= n.z and q >= 1.
    """
    alphabet = w.alphabet
    if any(e < 1 for e in alphabet.z):
        raise PreconditionError(
            f"requires z_i >= 1 for every i, got z={alphabet.z}"
        )
    n, nz, q = _class_params(w, p)
    if p < nz:
        raise PreconditionError(f"requires p >= n.z (p={p}, n.z={nz})")
    if q < 1:
        raise PreconditionError(f"requires q >= 1 (q={q})")
    lw = alphabet.letter_weights()
    cut, achieved = _raney_cut(lw, w.letters, p)
    u, v = w.prefix(cut), Word(alphabet, w.letters[cut:])
    if achieved == p:
        return PrefixCase(u=u, v=v)
    i = w.letters[cut - 1]
    # an exact hit is forced when the last letter weighs 1, so code > 0 here
    j = achieved - p
    return Overshoot(i=i, j=j, u_prime=w.prefix(cut - 1), v=v)


def raney_unfactorize(f: RaneyFactorization, p: int) -> Word:
    """Reassemble the word whose factorization at p is f."""
    if isinstance(f, PrefixCase):
        if f.u.weight != p:
            raise PreconditionError(
                f"inconsistent factorization: ||u|| = {f.u.weight}, expected {p}"
            )
        return f.u + f.v
    alphabet = f.u_prime.alphabet
    if not 1 <= f.i <= alphabet.m:
        raise PreconditionError(f"letter index {f.i} out of range 1..{alphabet.m}")
    z_i = alphabet.z[f.i - 1]
    if not 1 <= f.j <= z_i:
        raise PreconditionError(f"overshoot j={f.j} out of range 1..{z_i}")
    if f.u_prime.weight != p + f.j - z_i - 1:
        raise PreconditionError(
            f"inconsistent factorization: ||u_prime|| = {f.u_prime.weight}, "
            f"expected p + j - z_i - 1 = {p + f.j - z_i - 1}"
        )
    return f.u_prime + Word(alphabet, (f.i,)) + f.v


# ---------------------------------------------------------------------------
# whole-class verification
# ---------------------------------------------------------------------------


def _check_class_args(p: int, q: int, n: MultiIndex, alphabet: GradedAlphabet) -> int:
    if len(n) != alphabet.m:
        raise PreconditionError(
            f"counts length {len(n)} vs alphabet dimension {alphabet.m}"
        )
    if any(e < 0 for e in n):
        raise PreconditionError(f"letter counts must be >= 0, got {n}")
    nz = dot(n, alphabet.z)
    if p < nz:
        raise PreconditionError(f"requires p >= n.z (p={p}, n.z={nz})")
    if q < 1:
        raise PreconditionError(f"requires q >= 1 (q={q})")
    return nz


def verify_shift_bijection(
    p: int, q: int, n: MultiIndex, alphabet: GradedAlphabet, r: int = 1
) -> EvalReport:
    """Replay the r-fold weight shift over the whole class and check it is a
    bijection from the prefix-weight-p subclass onto the prefix-weight-(p+r)
    subclass, inverted word-for-word by the downward shifts."""
    nz = _check_class_args(p, q, n, alphabet)
    if not 1 <= r <= q:
        raise PreconditionError(f"requires q >= r >= 1 (q={q}, r={r})")
    total_weight = p + q + nz
    z = alphabet.z
    lw = alphabet.letter_weights()
    params = {"p": p, "q": q, "n": list(n), "z": list(z), "r": r}

    source = list(_iter_class(z, total_weight, n, r=p))
    target = set(_iter_class(z, total_weight, n, r=p + r))
    report = EvalReport(check="shift-bijection", params=params)

    def fail(reason: str, **ctx: object) -> EvalReport:
        report.verdict = VERDICT_FAIL
        report.counterexample = {"reason": reason, **ctx}
        return report

    if len(source) != len(target):
        return fail(
            "class sizes differ", source_size=len(source), target_size=len(target)
        )
    images = set()
    for letters in source:
        current = letters
        for step in range(r):
            current = _shift_up(lw, current, p + step)
        if current not in target:
            return fail(
                "image escapes the target class",
                word=_render(alphabet, letters),
                image=_render(alphabet, current),
            )
        if current in images:
            return fail(
                "shift is not injective",
                word=_render(alphabet, letters),
                image=_render(alphabet, current),
            )
        images.add(current)
        back = current
        for step in range(r - 1, -1, -1):
            back = _shift_down(lw, back, p + step)
        if back != letters:
            return fail(
                "inverse does not round-trip",
                word=_render(alphabet, letters),
                image=_render(alphabet, current),
                back=_render(alphabet, back),
            )
    if images != target:
        missing = sorted(target - images)[:3]
        return fail(
            "shift is not surjective",
            missing=[_render(alphabet, w) for w in missing],
        )
    report.verdict = VERDICT_PASS
    report.details = {
        "class_size": len(source),
        "round_trips": len(source),
    }
    return report


def verify_raney_decomposition(
    p: int, q: int, n: MultiIndex, alphabet: GradedAlphabet
) -> EvalReport:
    """Factorize every word of class(p + q + n.z, n) at weight p and check
    the case tallies against the closed-form and enumerated counts of each
    piece, with every factorization round-tripped."""
    if any(e < 1 for e in alphabet.z):
        raise PreconditionError(
            f"requires z_i >= 1 for every i, got z={alphabet.z}"
        )
    nz = _check_class_args(p, q, n, alphabet)
    z = alphabet.z
    m = alphabet.m
    lw = alphabet.letter_weights()
    total_weight = p + q + nz
    params = {"p": p, "q": q, "n": list(n), "z": list(z)}
    report = EvalReport(check="raney-decomposition", params=params)

    def fail(reason: str, **ctx: object) -> EvalReport:
        report.verdict = VERDICT_FAIL
        report.counterexample = {"reason": reason, **ctx}
        return report

    prefix_tally = 0
    overshoot_tally: dict[tuple[int, int, MultiIndex], int] = {}
    total = 0
    for letters in _iter_class(z, total_weight, n):
        total += 1
        cut, achieved = _raney_cut(lw, letters, p)
        if achieved == p:
            prefix_tally += 1
            reassembled = letters
        else:
            i = letters[cut - 1]
            j = achieved - p
            if not 1 <= j <= z[i - 1]:
                return fail(
                    "overshoot outside 1..z_i",
                    word=_render(alphabet, letters),
                    i=i,
                    j=j,
                )
            counts_u = [0] * m
            for c in letters[:cut]:
                if c:
                    counts_u[c - 1] += 1
            key = (i, j, tuple(counts_u))
            overshoot_tally[key] = overshoot_tally.get(key, 0) + 1
            reassembled = letters[: cut - 1] + (i,) + letters[cut:]
        if reassembled != letters:
            return fail("factorization does not reassemble", word=_render(alphabet, letters))

    # the weight-p prefix subclass, both routes
    prefix_enumerated = sum(1 for _ in _iter_class(z, total_weight, n, r=p))
    prefix_formula = count_prefix_class(p, q + nz, n, alphabet)
    if not prefix_tally == prefix_enumerated == prefix_formula:
        return fail(
            "prefix-case tally disagrees",
            tally=prefix_tally,
            enumerated=prefix_enumerated,
            formula=str(prefix_formula),
        )

    # each overshoot cell is a product of two smaller classes, both routes
    rhs_total = prefix_tally
    for i in range(1, m + 1):
        for j in range(1, z[i - 1] + 1):
            for k in box(n):
                ku = vec_sub(k, unit(m, i))
                head_p = p + j - z[i - 1] - 1
                tail_p = q + nz - j
                formula = count_words(head_p, ku, alphabet) * count_words(
                    tail_p, vec_sub(n, k), alphabet
                ) if all(e >= 0 for e in ku) and head_p >= 0 and tail_p >= 0 else 0
                tally = overshoot_tally.get((i, j, k), 0)
                if formula != tally:
                    return fail(
                        "overshoot cell tally disagrees with the closed form",
                        i=i,
                        j=j,
                        k=list(k),
                        tally=tally,
                        formula=str(formula),
                    )
                if tally:
                    head_count = sum(1 for _ in _iter_class(z, head_p, ku))
                    tail_count = sum(
                        1 for _ in _iter_class(z, tail_p, vec_sub(n, k))
                    )
                    if head_count * tail_count != tally:
                        return fail(
                            "overshoot cell tally disagrees with enumeration",
                            i=i,
                            j=j,
                            k=list(k),
                            tally=tally,
                            enumerated=head_count * tail_count,
                        )
                rhs_total += tally
    if rhs_total != total:
        return fail("cases do not partition the class", total=total, sum_of_cases=rhs_total)
    closed_total = multinomial(p + q, n)
    if closed_total != total:
        return fail(
            "class size disagrees with C(p+q, n)",
            total=total,
            formula=str(closed_total),
        )

    report.verdict = VERDICT_PASS
    report.details = {
        "total": total,
        "prefix_case": prefix_tally,
        "overshoot": total - prefix_tally,
        "overshoot_cells": {
            f"i={i},j={j},k={','.join(map(str, k))}": c
            for (i, j, k), c in sorted(overshoot_tally.items())
        },
    }
    return report


def _render(alphabet: GradedAlphabet, letters: tuple[int, ...]) -> str:
    return str(Word(alphabet, letters))
