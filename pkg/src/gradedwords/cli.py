"""Batch command-line front end.

Subcommands: count, enumerate, bijection (shift|raney), verify,
series (solve|check1|check2), suite.  Reports are JSON by default
(deterministic: sorted keys, fixed enumeration order); --format text prints
a human summary of the same structure.

Exit codes: 0 all checks passed; 1 a mathematical mismatch (a would-be
counterexample, printed with full reproduction context); 2 invalid
configuration or violated precondition; 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence, Union

from .arith import MultiIndex, dot, format_scalar, parse_scalar
from .bijections import (
    Overshoot,
    PrefixCase,
    raney_factorize,
    raney_unfactorize,
    shift_by,
    _shift_down,
    verify_raney_decomposition,
    verify_shift_bijection,
)
from .errors import LemmaViolationError, PreconditionError
from .identities import (
    IdentitySpec,
    catalog_names,
    verify_identity_at_point,
    verify_identity_on_grid,
)
from .reports import (
    VERDICT_EQUAL,
    VERDICT_FAIL,
    VERDICT_MISMATCH,
    VERDICT_PASS,
    EvalReport,
)
from .series import (
    check_generating_function_1,
    check_generating_function_2,
    functional_equation_residual,
    solve_functional_equation,
)
from .words import (
    GradedAlphabet,
    WordClassSpec,
    count_prefix_class,
    count_words,
    enumerate_words,
)

__all__ = ["main", "default_manifest", "run_suite"]

EXIT_PASS = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_CONFIG = 2
EXIT_INTERNAL = 3

Payload = Union[EvalReport, dict]


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def _parse_nat_csv(text: str, flag: str) -> MultiIndex:
    try:
        values = tuple(int(part) for part in str(text).split(","))
    except ValueError:
        raise PreconditionError(f"{flag} expects comma-separated integers, got {text!r}")
    if any(v < 0 for v in values):
        raise PreconditionError(f"{flag} entries must be >= 0, got {text!r}")
    return values


def _parse_grid_range(text: str) -> tuple[int, int]:
    head, sep, tail = str(text).partition("..")
    if not sep:
        raise PreconditionError(f"--grid-range expects A..B, got {text!r}")
    try:
        lo, hi = int(head), int(tail)
    except ValueError:
        raise PreconditionError(f"--grid-range expects integers A..B, got {text!r}")
    return lo, hi


def _parse_point(text: str) -> dict[str, Fraction]:
    point: dict[str, Fraction] = {}
    for piece in str(text).split(","):
        name, sep, value = piece.partition("=")
        if not sep:
            raise PreconditionError(f"--point expects var=value pairs, got {piece!r}")
        try:
            point[name.strip()] = parse_scalar(value)
        except (ValueError, ZeroDivisionError):
            raise PreconditionError(f"--point value {value!r} is not an exact scalar")
    return point


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise PreconditionError(message)


def _alphabet(z: MultiIndex) -> GradedAlphabet:
    return GradedAlphabet(z=tuple(z))


# ---------------------------------------------------------------------------
# subcommand handlers (shared by CLI flags and manifest members)
# ---------------------------------------------------------------------------


def do_count(
    z: MultiIndex,
    p: int,
    k: Optional[MultiIndex] = None,
    q: Optional[int] = None,
    n: Optional[MultiIndex] = None,
) -> EvalReport:
    """Closed-form count vs enumeration, for a word class or a prefix class."""
    alphabet = _alphabet(z)
    if n is not None:
        _require(q is not None, "prefix-class count needs --q along with --n")
        formula = count_prefix_class(p, q, n, alphabet)
        enumerated = sum(
            1 for _ in enumerate_words(WordClassSpec(p=p + q, k=n, r=p), alphabet)
        )
        report = EvalReport(
            check="count-prefix-class",
            params={"p": p, "q": q, "n": list(n), "z": list(z)},
        )
    else:
        _require(k is not None, "count needs --k (word class) or --n with --q (prefix class)")
        _require(q is None, "--q only applies to the prefix-class form (with --n)")
        formula = count_words(p, k, alphabet)
        enumerated = sum(1 for _ in enumerate_words(WordClassSpec(p=p, k=k), alphabet))
        report = EvalReport(check="count", params={"p": p, "k": list(k), "z": list(z)})
    report.details = {"formula": int(formula), "enumerated": enumerated}
    report.verdict = VERDICT_EQUAL if formula == enumerated else VERDICT_MISMATCH
    if not report.ok:
        report.counterexample = {
            "formula": int(formula),
            "enumerated": enumerated,
            "params": report.params,
        }
    return report


def do_enumerate(
    z: MultiIndex, p: int, k: MultiIndex, r: Optional[int] = None
) -> dict:
    """List a word class in lexicographic order."""
    alphabet = _alphabet(z)
    words = [
        str(w) for w in enumerate_words(WordClassSpec(p=p, k=k, r=r), alphabet)
    ]
    params: dict[str, object] = {"p": p, "k": list(k), "z": list(z)}
    if r is not None:
        params["r"] = r
    return {"check": "enumerate", "params": params, "count": len(words), "words": words}


def do_bijection(
    kind: str,
    z: MultiIndex,
    p: int,
    q: Optional[int] = None,
    n: Optional[MultiIndex] = None,
    r: Optional[int] = None,
    word: Optional[str] = None,
) -> EvalReport:
    """Apply a bijection to one word, or verify it over a whole class."""
    _require(kind in ("shift", "raney"), f"bijection kind must be shift or raney, got {kind!r}")
    alphabet = _alphabet(z)
    if word is not None:
        w = alphabet.parse_word(word)
        if n is not None:
            _require(
                w.counts == tuple(n),
                f"word has letter counts {list(w.counts)}, not the given n = {list(n)}",
            )
        if q is not None:
            expected = p + q + dot(w.counts, alphabet.z)
            _require(
                w.weight == expected,
                f"word has weight {w.weight}, but p + q + n.z = {expected}",
            )
        if kind == "shift":
            steps = 1 if r is None else r
            image = shift_by(w, p, steps)
            lw = alphabet.letter_weights()
            back = image.letters
            for step in range(steps - 1, -1, -1):
                back = _shift_down(lw, back, p + step)
            report = EvalReport(
                check="shift-word",
                params={"p": p, "z": list(z), "r": steps},
                details={"word": str(w), "image": str(image)},
            )
            report.verdict = VERDICT_PASS if back == w.letters else VERDICT_FAIL
            if not report.ok:
                report.counterexample = {
                    "word": str(w),
                    "image": str(image),
                    "back": str(alphabet.word(back)),
                }
            return report
        _require(r is None, "bijection raney does not take --r")
        f = raney_factorize(w, p)
        if isinstance(f, PrefixCase):
            case = {"case": "prefix", "u": str(f.u), "v": str(f.v)}
        else:
            case = {
                "case": "overshoot",
                "i": f.i,
                "j": f.j,
                "u_prime": str(f.u_prime),
                "v": str(f.v),
            }
        back_word = raney_unfactorize(f, p)
        report = EvalReport(
            check="raney-word",
            params={"p": p, "z": list(z)},
            details={"word": str(w), **case},
        )
        report.verdict = VERDICT_PASS if back_word == w else VERDICT_FAIL
        if not report.ok:
            report.counterexample = {"word": str(w), "back": str(back_word)}
        return report
    _require(q is not None and n is not None, f"bijection {kind} over a class needs --q and --n")
    if kind == "shift":
        return verify_shift_bijection(p, q, n, alphabet, r=1 if r is None else r)
    _require(r is None, "bijection raney does not take --r")
    return verify_raney_decomposition(p, q, n, alphabet)


def do_verify(
    identity: str,
    z: MultiIndex,
    n: Optional[MultiIndex] = None,
    k: Optional[MultiIndex] = None,
    i: Optional[int] = None,
    j: Optional[int] = None,
    grid_range: Optional[tuple[int, int]] = None,
    point: Optional[dict[str, Fraction]] = None,
) -> EvalReport:
    """Check one catalog identity on a grid or at a single point."""
    _require(
        not (n is not None and k is not None),
        "give the multi-index as --n or --k, not both",
    )
    slot = n if n is not None else k
    _require(slot is not None, f"verify {identity} needs --n (or --k for absorption)")
    spec = IdentitySpec(
        identity=identity,
        n=tuple(slot),
        z=tuple(z),
        i=i,
        j=j,
        grid_range=grid_range,
    )
    if point is not None:
        return verify_identity_at_point(spec, point)
    return verify_identity_on_grid(spec)


def do_series_solve(
    z: MultiIndex,
    order: int,
    expect_coefficients: Optional[dict[str, str]] = None,
) -> EvalReport:
    """Solve the functional equation and report the coefficients, checking
    the residual, coefficient naturality, and any expected values."""
    v = solve_functional_equation(tuple(z), order)
    residual_zero = functional_equation_residual(v, tuple(z)).is_zero()
    natural = all(c.denominator == 1 and c >= 0 for c in v.coeffs.values())
    report = EvalReport(
        check="series-solve",
        params={"z": list(z), "order": order},
        details={
            "coefficients": {
                ",".join(map(str, e)): format_scalar(c)
                for e, c in sorted(v.coeffs.items())
            },
            "residual_zero": residual_zero,
            "natural_coefficients": natural,
        },
    )
    report.verdict = VERDICT_PASS if residual_zero and natural else VERDICT_FAIL
    if not report.ok:
        report.counterexample = {
            "residual_zero": residual_zero,
            "natural_coefficients": natural,
        }
        return report
    if expect_coefficients:
        for key, value in expect_coefficients.items():
            exponent = _parse_nat_csv(key, "expected-coefficient exponent")
            expected = parse_scalar(str(value))
            actual = v.coefficient(exponent)
            if actual != expected:
                report.verdict = VERDICT_MISMATCH
                report.counterexample = {
                    "exponent": list(exponent),
                    "expected": format_scalar(expected),
                    "actual": format_scalar(actual),
                }
                return report
        report.details["expected_coefficients_checked"] = len(expect_coefficients)
    return report


def do_series_check(which: int, x: int, z: MultiIndex, order: int) -> EvalReport:
    if which == 1:
        return check_generating_function_1(x, tuple(z), order)
    return check_generating_function_2(x, tuple(z), order)


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------

_MEMBER_KEYS = {
    "count": {"z", "p", "k", "q", "n"},
    "enumerate": {"z", "p", "k", "r"},
    "bijection": {"kind", "z", "p", "q", "n", "r", "word"},
    "verify": {"identity", "n", "k", "z", "i", "j", "grid_range", "point"},
    "series-solve": {"z", "order", "expect_coefficients"},
    "series-check1": {"x", "z", "order"},
    "series-check2": {"x", "z", "order"},
}


def _member_label(config: dict) -> str:
    command = config.get("command", "?")
    extra = config.get("identity") or config.get("kind") or ""
    bits = [command]
    if extra:
        bits.append(str(extra))
    for key in ("n", "k", "z"):
        if key in config:
            bits.append(f"{key}={','.join(map(str, config[key]))}")
    return " ".join(bits)


def _multi(config: dict, key: str) -> Optional[MultiIndex]:
    if key not in config or config[key] is None:
        return None
    value = config[key]
    if isinstance(value, (list, tuple)):
        out = tuple(value)
        for e in out:
            if not isinstance(e, int) or isinstance(e, bool) or e < 0:
                raise PreconditionError(f"member key {key!r} must hold naturals, got {value!r}")
        return out
    return _parse_nat_csv(str(value), key)


def run_member(config: dict) -> Payload:
    """Execute one manifest member; raises on invalid configuration."""
    if not isinstance(config, dict):
        raise PreconditionError(f"manifest member must be an object, got {type(config).__name__}")
    command = config.get("command")
    if command not in _MEMBER_KEYS:
        known = ", ".join(sorted(_MEMBER_KEYS))
        raise PreconditionError(f"unknown member command {command!r}; known: {known}")
    allowed = _MEMBER_KEYS[command] | {"command", "label"}
    extra = sorted(set(config) - allowed)
    if extra:
        raise PreconditionError(f"member {command!r} has unknown keys: {', '.join(extra)}")
    z = _multi(config, "z")
    _require(z is not None, f"member {command!r} needs z")
    if command == "count":
        return do_count(z, config["p"], _multi(config, "k"), config.get("q"), _multi(config, "n"))
    if command == "enumerate":
        return do_enumerate(z, config["p"], _multi(config, "k"), config.get("r"))
    if command == "bijection":
        return do_bijection(
            config.get("kind", ""),
            z,
            config["p"],
            config.get("q"),
            _multi(config, "n"),
            config.get("r"),
            config.get("word"),
        )
    if command == "verify":
        grid_range = config.get("grid_range")
        if grid_range is not None:
            grid_range = (int(grid_range[0]), int(grid_range[1]))
        point = config.get("point")
        if point is not None:
            point = {name: parse_scalar(str(value)) for name, value in point.items()}
        return do_verify(
            config["identity"],
            z,
            _multi(config, "n"),
            _multi(config, "k"),
            config.get("i"),
            config.get("j"),
            grid_range,
            point,
        )
    if command == "series-solve":
        return do_series_solve(z, config["order"], config.get("expect_coefficients"))
    which = 1 if command == "series-check1" else 2
    return do_series_check(which, config["x"], z, config["order"])


def _payload_exit_code(payload: Payload) -> int:
    if isinstance(payload, EvalReport):
        return EXIT_PASS if payload.ok else EXIT_COUNTEREXAMPLE
    return EXIT_PASS


def run_suite(manifest: list, jobs: int) -> tuple[dict, int]:
    """Run every member, isolating failures; verdict pass iff all pass."""
    if not isinstance(manifest, list):
        raise PreconditionError("manifest must be a JSON list of config objects")

    def run_one(item: tuple[int, dict]) -> dict:
        index, config = item
        label = (
            config.get("label", _member_label(config))
            if isinstance(config, dict)
            else f"member {index}"
        )
        entry: dict = {"index": index, "label": label}
        try:
            payload = run_member(config)
            entry["exit_code"] = _payload_exit_code(payload)
            entry["report"] = payload.to_dict() if isinstance(payload, EvalReport) else payload
        except LemmaViolationError as exc:
            entry["exit_code"] = EXIT_COUNTEREXAMPLE
            entry["error"] = f"counterexample: {exc}"
        except PreconditionError as exc:
            entry["exit_code"] = EXIT_CONFIG
            entry["error"] = f"invalid configuration: {exc}"
        except Exception as exc:  # noqa: BLE001 - member isolation
            entry["exit_code"] = EXIT_INTERNAL
            entry["error"] = f"internal error: {type(exc).__name__}: {exc}"
        return entry

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        members = list(pool.map(run_one, enumerate(manifest)))
    codes = [m["exit_code"] for m in members]
    suite_code = EXIT_PASS
    for level in (EXIT_COUNTEREXAMPLE, EXIT_CONFIG, EXIT_INTERNAL):
        if level in codes:
            suite_code = level
            break
    payload = {
        "check": "suite",
        "total": len(members),
        "passed": sum(1 for c in codes if c == EXIT_PASS),
        "failed": sum(1 for c in codes if c != EXIT_PASS),
        "verdict": "pass" if suite_code == EXIT_PASS else "fail",
        "members": members,
    }
    if not members:
        payload["warning"] = "empty manifest: zero checks run"
    return payload, suite_code


def default_manifest() -> list[dict]:
    """The shipped suite: at least one member per acceptance concern —
    counting, prefix classes, both bijections (including r-fold shifts),
    every identity in the catalog, the m = 1 coherence checks, and the
    generating-function machinery with frozen Catalan expectations."""
    members: list[dict] = [
        # counting formula vs enumeration
        {"command": "count", "z": [1], "p": 3, "k": [1]},
        {"command": "count", "z": [0], "p": 5, "k": [3]},
        {"command": "count", "z": [2, 3], "p": 4, "k": [1, 1]},
        {"command": "count", "z": [1, 2], "p": 9, "k": [2, 2]},
        # prefix-class counts
        {"command": "count", "z": [1], "p": 2, "q": 2, "n": [1]},
        {"command": "count", "z": [1, 2], "p": 4, "q": 5, "n": [1, 1]},
        # the weight-shift bijection, including r-fold composites
        {"command": "bijection", "kind": "shift", "z": [1], "p": 1, "q": 1, "n": [1]},
        {"command": "bijection", "kind": "shift", "z": [1], "p": 2, "q": 2, "n": [2]},
        {"command": "bijection", "kind": "shift", "z": [1, 2], "p": 4, "q": 2, "n": [1, 1]},
        {"command": "bijection", "kind": "shift", "z": [1], "p": 2, "q": 3, "n": [2], "r": 2},
        {"command": "bijection", "kind": "shift", "z": [2], "p": 3, "q": 3, "n": [1], "r": 3},
        # the overshoot factorization
        {"command": "bijection", "kind": "raney", "z": [1], "p": 1, "q": 1, "n": [1]},
        {"command": "bijection", "kind": "raney", "z": [2], "p": 4, "q": 3, "n": [2]},
        {"command": "bijection", "kind": "raney", "z": [1, 2], "p": 3, "q": 2, "n": [1, 1]},
        # the identity catalog
        {"command": "verify", "identity": "abel-1", "n": [3], "z": [2]},
        {"command": "verify", "identity": "abel-2", "n": [3], "z": [2]},
        {"command": "verify", "identity": "rothe-1", "n": [3], "z": [2]},
        {"command": "verify", "identity": "rothe-1", "n": [3], "z": [0]},
        {"command": "verify", "identity": "rothe-2", "n": [3], "z": [2]},
        {"command": "verify", "identity": "gould", "n": [2], "z": [1]},
        {"command": "verify", "identity": "jensen", "n": [3], "z": [2]},
        {"command": "verify", "identity": "raney-mohanty-1", "n": [3], "z": [2]},
        {"command": "verify", "identity": "raney-mohanty-2", "n": [1, 2], "z": [1, 2]},
        {"command": "verify", "identity": "mohanty-handa", "n": [1, 2], "z": [1, 2]},
        {"command": "verify", "identity": "gould-mohanty", "n": [1, 1], "z": [1, 2]},
        {"command": "verify", "identity": "gmh-special", "n": [1, 1], "z": [1, 2]},
        {"command": "verify", "identity": "kmx", "n": [1, 2], "z": [1, 2]},
        {"command": "verify", "identity": "kmpink", "n": [1, 1], "z": [1, 2], "i": 1, "j": 1},
        {"command": "verify", "identity": "kmpink", "n": [1, 1], "z": [1, 2], "i": 2, "j": 2},
        {"command": "verify", "identity": "pkroth", "n": [1, 2], "z": [1, 2]},
        {"command": "verify", "identity": "absorption", "k": [2, 1], "z": [1, 2], "i": 1},
        {"command": "verify", "identity": "absorption", "k": [2, 1], "z": [1, 2], "i": 2},
        {"command": "verify", "identity": "rm2-decomposition", "n": [1, 2], "z": [1, 2]},
        {"command": "verify", "identity": "mh-expansion", "n": [1, 2], "z": [1, 2]},
        # m = 1 coherence with the classical forms
        {"command": "verify", "identity": "gould-mohanty-vs-gould", "n": [3], "z": [2]},
        {"command": "verify", "identity": "raney-mohanty-1-vs-rothe-1", "n": [3], "z": [2]},
        {"command": "verify", "identity": "mohanty-handa-vs-jensen", "n": [3], "z": [2]},
        # generating functions; Catalan values frozen from the independent
        # recurrence C_0 = 1, C_{t+1} = sum C_s C_{t-s}
        {
            "command": "series-solve",
            "z": [2],
            "order": 8,
            "expect_coefficients": {
                "0": "1",
                "1": "1",
                "2": "2",
                "3": "5",
                "4": "14",
                "5": "42",
                "6": "132",
                "7": "429",
                "8": "1430",
            },
        },
        {"command": "series-solve", "z": [1, 2], "order": 6},
        {"command": "series-check1", "x": 1, "z": [1], "order": 8},
        {"command": "series-check1", "x": 2, "z": [2], "order": 8},
        {"command": "series-check1", "x": 3, "z": [1, 2], "order": 8},
        {"command": "series-check2", "x": 1, "z": [1], "order": 8},
        {"command": "series-check2", "x": 2, "z": [2], "order": 8},
        {"command": "series-check2", "x": 4, "z": [3, 1], "order": 8},
    ]
    return members


# ---------------------------------------------------------------------------
# rendering and entry point
# ---------------------------------------------------------------------------


def _render_json(payload: Payload) -> str:
    if isinstance(payload, EvalReport):
        return payload.to_json()
    return json.dumps(payload, indent=2, sort_keys=True)


def _render_text(payload: Payload) -> str:
    if isinstance(payload, EvalReport):
        if payload.check == "shift-word" and payload.ok:
            return payload.details["image"]
        if payload.check == "raney-word" and payload.ok:
            d = payload.details
            if d["case"] == "prefix":
                return f"prefix: u = \"{d['u']}\", v = \"{d['v']}\""
            return (
                f"overshoot: i = {d['i']}, j = {d['j']}, "
                f"u' = \"{d['u_prime']}\", v = \"{d['v']}\""
            )
        lines = [payload.summary()]
        if payload.check in ("count", "count-prefix-class"):
            lines[0] += (
                f"  formula={payload.details['formula']}"
                f" enumerated={payload.details['enumerated']}"
            )
        if payload.check == "series-solve" and payload.ok:
            lines.extend(
                f"  [{exponent}] {value}"
                for exponent, value in payload.details["coefficients"].items()
            )
        if payload.counterexample is not None:
            lines.append(f"counterexample: {json.dumps(payload.counterexample, sort_keys=True)}")
        return "\n".join(lines)
    if payload.get("check") == "enumerate":
        return "\n".join(payload["words"])
    if payload.get("check") == "suite":
        lines = []
        for member in payload["members"]:
            status = "pass" if member["exit_code"] == EXIT_PASS else f"FAIL({member['exit_code']})"
            note = member.get("error", "")
            lines.append(f"[{member['index']:3d}] {status:8s} {member['label']}" + (f" — {note}" if note else ""))
        lines.append(f"suite: {payload['verdict']} ({payload['passed']}/{payload['total']} passed)")
        return "\n".join(lines)
    return json.dumps(payload, indent=2, sort_keys=True)


def _emit(payload: Payload, args: argparse.Namespace) -> None:
    text = _render_json(payload) if args.format == "json" else _render_text(payload)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _default_jobs() -> int:
    env = os.environ.get("GRADEDWORDS_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise PreconditionError(f"GRADEDWORDS_JOBS must be an integer, got {env!r}")
    return min(8, os.cpu_count() or 1)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json",
                        help="report rendering (default json)")
    common.add_argument("--output", metavar="PATH", help="write the report to a file")

    parser = argparse.ArgumentParser(
        prog="gradedwords",
        description="Exact verification of graded-word bijections and convolution identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", parents=[common],
                             help="closed-form count vs enumeration")
    p_count.add_argument("--z", required=True, help="grading, comma-separated naturals")
    p_count.add_argument("--p", required=True, type=int, help="word weight")
    p_count.add_argument("--k", help="letter counts (word-class form)")
    p_count.add_argument("--q", type=int, help="suffix weight (prefix-class form)")
    p_count.add_argument("--n", help="letter counts (prefix-class form, with --q)")

    p_enum = sub.add_parser("enumerate", parents=[common], help="list a word class")
    p_enum.add_argument("--z", required=True)
    p_enum.add_argument("--p", required=True, type=int)
    p_enum.add_argument("--k", required=True)
    p_enum.add_argument("--r", type=int, help="require a prefix of this weight")

    p_bij = sub.add_parser("bijection", parents=[common],
                           help="apply or verify a bijection")
    p_bij.add_argument("kind", choices=("shift", "raney"))
    p_bij.add_argument("--z", required=True)
    p_bij.add_argument("--p", required=True, type=int)
    p_bij.add_argument("--q", type=int)
    p_bij.add_argument("--n")
    p_bij.add_argument("--r", type=int, help="shift distance (shift only, default 1)")
    p_bij.add_argument("--word", help="apply to this word instead of the whole class")

    p_verify = sub.add_parser("verify", parents=[common], help="check an identity")
    p_verify.add_argument("identity", metavar="identity",
                          help=f"one of: {', '.join(catalog_names())}")
    p_verify.add_argument("--n")
    p_verify.add_argument("--k", help="multi-index for absorption (alias of --n)")
    p_verify.add_argument("--z", required=True)
    p_verify.add_argument("--i", type=int)
    p_verify.add_argument("--j", type=int)
    p_verify.add_argument("--grid-range", metavar="A..B",
                          help="draw grid candidates from this inclusive range")
    p_verify.add_argument("--point", metavar="VAR=VALUE,...",
                          help="evaluate at one exact point instead of a grid")

    p_series = sub.add_parser("series", parents=[common],
                              help="functional-equation series checks")
    p_series.add_argument("action", choices=("solve", "check1", "check2"))
    p_series.add_argument("--z", required=True)
    p_series.add_argument("--order", required=True, type=int, help="truncation order N")
    p_series.add_argument("--x", type=int, help="exponent for check1/check2")

    p_suite = sub.add_parser("suite", parents=[common], help="run a manifest of checks")
    p_suite.add_argument("--manifest", metavar="PATH",
                         help="JSON list of member configs (default: built-in suite)")
    p_suite.add_argument("--jobs", type=int,
                         help="parallel members (default: GRADEDWORDS_JOBS or cpu count)")

    return parser


def _dispatch(args: argparse.Namespace) -> tuple[Payload, int]:
    if args.command == "count":
        report = do_count(
            _parse_nat_csv(args.z, "--z"),
            args.p,
            _parse_nat_csv(args.k, "--k") if args.k else None,
            args.q,
            _parse_nat_csv(args.n, "--n") if args.n else None,
        )
        return report, _payload_exit_code(report)
    if args.command == "enumerate":
        payload = do_enumerate(
            _parse_nat_csv(args.z, "--z"), args.p, _parse_nat_csv(args.k, "--k"), args.r
        )
        return payload, EXIT_PASS
    if args.command == "bijection":
        report = do_bijection(
            args.kind,
            _parse_nat_csv(args.z, "--z"),
            args.p,
            args.q,
            _parse_nat_csv(args.n, "--n") if args.n else None,
            args.r,
            args.word,
        )
        return report, _payload_exit_code(report)
    if args.command == "verify":
        report = do_verify(
            args.identity,
            _parse_nat_csv(args.z, "--z"),
            _parse_nat_csv(args.n, "--n") if args.n else None,
            _parse_nat_csv(args.k, "--k") if args.k else None,
            args.i,
            args.j,
            _parse_grid_range(args.grid_range) if args.grid_range else None,
            _parse_point(args.point) if args.point else None,
        )
        return report, _payload_exit_code(report)
    if args.command == "series":
        z = _parse_nat_csv(args.z, "--z")
        if args.action == "solve":
            report = do_series_solve(z, args.order)
        else:
            _require(args.x is not None, f"series {args.action} needs --x")
            report = do_series_check(1 if args.action == "check1" else 2, args.x, z, args.order)
        return report, _payload_exit_code(report)
    # suite
    if args.manifest:
        try:
            with open(args.manifest, encoding="utf-8") as handle:
                manifest = json.load(handle)
        except FileNotFoundError:
            raise PreconditionError(f"manifest file not found: {args.manifest}")
        except json.JSONDecodeError as exc:
            raise PreconditionError(
                f"manifest parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            )
    else:
        manifest = default_manifest()
    jobs = args.jobs if args.jobs else _default_jobs()
    return run_suite(manifest, jobs)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = _dispatch(args)
    except LemmaViolationError as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    except PreconditionError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - last-resort exit code mapping
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(payload, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
